//! A small expression language for lattices, e.g. `U^2 + U(3) + E8(-1)^2 + A2(-1)`.
//!
//! Terms are joined by `+` (or `⊕`). A term is an atom optionally followed by a scale
//! `(k)` and a power `^n`. Atoms are `U`, `An`, `Dn`, `En`, `Kp`, `Hp`/`hp`, `[k]`,
//! `E6*` (only as `E6*(3)` or `E6*(-3)`), `0`, or any exact name accepted by
//! [`make_named`] such as `OG10` or `L17`. Note that `K3` is the K3 lattice, not `K_p` at p = 3.

use super::{direct_sum, make_named, Lattice};
use crate::error::{Error, Result};

const EXACT_NAMES: &[&str] = &[
    "E6star3", "L17", "N69", "N15", "ExA", "ExB", "OG10", "Lambda", "F", "K3", "H4cubic", "U",
];

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_plus(&mut self) -> bool {
        if self.eat(b'+') {
            return true;
        }
        // ⊕ is U+2295, e2 8a 95 in UTF-8
        if self.s[self.pos..].starts_with("⊕".as_bytes()) {
            self.pos += 3;
            return true;
        }
        false
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        // unicode minus
        let mut neg = false;
        if self.s[self.pos..].starts_with("−".as_bytes()) {
            self.pos += 3;
            neg = true;
        }
        let digits_start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .replace('−', "");
        let v: i64 = txt.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.s.get(self.pos) == Some(&b'*') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected lattice name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Lattice> {
        if self.eat(b'[') {
            let k = self.int()?;
            if !self.eat(b']') {
                return Err(self.err("expected `]`"));
            }
            return make_named("[k]", &[k]);
        }
        let id = self.ident()?;
        if id == "0" {
            return Ok(Lattice::zero());
        }
        if id == "E6*" {
            // the printed dual-type lattice always carries an explicit scale ±3
            if !self.eat(b'(') {
                return Err(self.err("E6* needs a scale (3) or (-3)"));
            }
            let k = self.int()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            let base = make_named("E6star3", &[])?;
            return match k {
                3 => Ok(base),
                -3 => Ok(base.neg().with_label("E6*(-3)")),
                _ => Err(self.err("E6* scale must be 3 or -3")),
            };
        }
        if EXACT_NAMES.contains(&id.as_str()) {
            return make_named(&id, &[]);
        }
        let split = id
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::UnknownName(id.clone()))?;
        let (head, tail) = id.split_at(split);
        let n: i64 = tail.parse().map_err(|_| Error::UnknownName(id.clone()))?;
        let family = match head {
            "A" => "A_n",
            "D" => "D_n",
            "E" => "E_n",
            "K" => "K_p",
            "H" | "h" => "H_p",
            _ => return Err(Error::UnknownName(id)),
        };
        make_named(family, &[n])
    }

    fn term(&mut self) -> Result<Lattice> {
        let mut l = self.atom()?;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let k = self.int()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            l = l.rescale(k)?;
        }
        if self.eat(b'^') {
            let n = self.int()?;
            if n < 1 {
                return Err(self.err("power must be positive"));
            }
            let label = l.label().map(|s| format!("{s}^{n}"));
            l = direct_sum(&vec![l; n as usize])?;
            if let Some(s) = label {
                l = l.with_label(s);
            }
        }
        Ok(l)
    }

    fn expr(&mut self) -> Result<Lattice> {
        let mut parts = vec![self.term()?];
        while self.eat_plus() {
            parts.push(self.term()?);
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        let parts: Vec<Lattice> = parts.into_iter().filter(|l| l.rank() > 0).collect();
        if parts.is_empty() {
            return Ok(Lattice::zero());
        }
        if parts.len() == 1 {
            return Ok(parts.into_iter().next().unwrap());
        }
        direct_sum(&parts)
    }
}

/// Parse a lattice expression. The resulting label is the input text, trimmed.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let l = p.expr()?;
    let label = if l.rank() == 0 {
        "0".to_string()
    } else {
        text.trim().to_string()
    };
    Ok(l.with_label(label))
}
