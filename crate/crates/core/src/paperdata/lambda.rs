use rayon::prelude::*;

use super::tables::{LambdaRow, LAMBDA_P, LSV};
use super::{RowVerdict, VerdictReport};
use crate::discform::{
    discriminant_form, forms_isomorphic, forms_isomorphic_with_limit, FiniteQuadraticForm,
};
use crate::error::Result;
use crate::glue::complement_genera;
use crate::lattice::{parse_lattice, Lattice};

fn sig(l: &Lattice) -> (usize, usize) {
    if l.rank() == 0 {
        (0, 0)
    } else {
        l.signature()
    }
}

fn disc(l: &Lattice) -> Result<FiniteQuadraticForm> {
    if l.rank() == 0 {
        return Ok(FiniteQuadraticForm::trivial());
    }
    Ok(discriminant_form(l)?.0)
}

fn verify_row(r: &LambdaRow) -> RowVerdict {
    let mut v = RowVerdict::new(r.no);
    if let Some(reading) = &r.reading {
        v.note(format!(
            "checked as 𝚲_G = {}, 𝚲^G = {} ({})",
            reading.coinvariant, reading.invariant, reading.note
        ));
    }
    let (ce, ie) = r.checked();
    let (coinv, inv) = match (parse_lattice(ce), parse_lattice(ie)) {
        (Ok(c), Ok(i)) => (c, i),
        (c, i) => {
            let err = c.err().or(i.err()).expect("one failed");
            v.check("parse", false, err.to_string());
            return v;
        }
    };
    let (rc, ri) = (coinv.rank(), inv.rank());
    v.check(
        "rank_invariant",
        ri == r.rank_invariant,
        format!("{ri} (printed {})", r.rank_invariant),
    );
    v.check(
        "rank_sum",
        rc + ri == 26,
        format!("{ri} + {rc} = {}", ri + rc),
    );
    let (sc, si) = (sig(&coinv), sig(&inv));
    let pattern = sc == r.sig_coinvariant && sc.0 == 2 && sc.1 + 2 == rc;
    v.check(
        "signature_coinvariant",
        pattern,
        format!("{sc:?} (printed {:?})", r.sig_coinvariant),
    );
    let total = (sc.0 + si.0, sc.1 + si.1);
    v.check("signature_sum", total == (5, 21), format!("{total:?}"));
    let step = r.p as usize - 1;
    v.check(
        "rank_divisible",
        rc % step == 0,
        format!("{rc} mod {step} = {}", rc % step),
    );
    let (lc, li) = (coinv.p_elementary_length(r.p), inv.p_elementary_length(r.p));
    v.check(
        "p_elementary_length",
        lc == Some(r.a) && li == Some(r.a),
        format!("coinvariant {lc:?}, invariant {li:?} (a = {})", r.a),
    );
    let anti = disc(&inv)
        .and_then(|fi| Ok((fi, disc(&coinv)?)))
        .and_then(|(fi, fc)| forms_isomorphic(&fi, &fc.negated()));
    match anti {
        Ok(b) => v.check(
            "disc_anti_isometric",
            b,
            if b {
                "A(𝚲^G) ≅ A(𝚲_G)(−1)"
            } else {
                "forms differ"
            },
        ),
        Err(e) => v.check("disc_anti_isometric", false, e.to_string()),
    }
    v
}

/// Consistency checks for an arbitrary list of rows (used for the embedded table and for
/// corrupted copies).
pub fn verify_lambda_p_rows(rows: &[LambdaRow]) -> VerdictReport {
    let rows: Vec<RowVerdict> = rows.par_iter().map(verify_row).collect();
    VerdictReport {
        table: "lambda_p".into(),
        rows,
    }
}

pub fn verify_lambda_p() -> VerdictReport {
    verify_lambda_p_rows(LAMBDA_P)
}

/// Candidate genera for the invariant lattice of an order-three group on `𝐋` obtained as the
/// complement of `A₂` in `𝚲^G`.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub row: &'static str,
    pub coinvariant: &'static str,
    pub candidates: Vec<((usize, usize), FiniteQuadraticForm)>,
    /// Order-three rows of the induced-automorphism table whose `(𝐋_G, 𝐋^G)` land here.
    pub lsv_matches: Vec<&'static str>,
}

const CANDIDATE_LIMIT: u64 = 100_000;

fn same_genus(a: &Lattice, b: &Lattice) -> Result<bool> {
    if a.rank() != b.rank() || sig(a) != sig(b) || a.is_even() != b.is_even() {
        return Ok(false);
    }
    forms_isomorphic_with_limit(&disc(a)?, &disc(b)?, CANDIDATE_LIMIT)
}

/// For every `p = 3` row, the genera of `A₂^⊥ ⊂ 𝚲^G` over all gluing choices, each cross-checked
/// against the order-three rows of the induced-automorphism table with the same coinvariant.
pub fn derive_og10_order3_candidates() -> Result<Vec<CandidateSet>> {
    let a2 = parse_lattice("A2")?;
    let order3: Vec<_> = LSV.iter().filter(|r| r.p == 3).collect();
    LAMBDA_P
        .par_iter()
        .filter(|r| r.p == 3)
        .map(|r| {
            let (ce, ie) = r.checked();
            let inv = parse_lattice(ie)?;
            let coinv = parse_lattice(ce)?;
            let candidates = match complement_genera(&disc(&inv)?, sig(&inv), &a2, CANDIDATE_LIMIT)
            {
                Ok(c) => c,
                Err(crate::Error::InfeasibleSignature { .. }) => vec![],
                Err(e) => return Err(e),
            };
            let mut lsv_matches = Vec::new();
            for t in &order3 {
                let lg = parse_lattice(t.coinvariant_reading.unwrap_or(t.coinvariant))?;
                if !same_genus(&lg, &coinv)? {
                    continue;
                }
                let linv = parse_lattice(t.invariant)?;
                let fl = disc(&linv)?;
                for (s, f) in &candidates {
                    if *s == sig(&linv) && forms_isomorphic_with_limit(f, &fl, CANDIDATE_LIMIT)? {
                        lsv_matches.push(t.id);
                        break;
                    }
                }
            }
            Ok(CandidateSet {
                row: r.no,
                coinvariant: ce,
                candidates,
                lsv_matches,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_one_and_row_52_pass() {
        let rep = verify_lambda_p_rows(&[LAMBDA_P[0], *LAMBDA_P.last().unwrap()]);
        assert!(rep.all_pass(), "{}", rep.to_text());
        assert_eq!(rep.rows[1].get("rank_sum").unwrap().value, "4 + 22 = 26");
    }

    #[test]
    fn corrupted_length_fails_only_that_check() {
        let mut r = LAMBDA_P[0];
        r.a += 1;
        let rep = verify_lambda_p_rows(&[r]);
        let row = &rep.rows[0];
        assert!(!row.get("p_elementary_length").unwrap().pass);
        assert!(row.checks.iter().filter(|c| !c.pass).count() == 1);
    }

    #[test]
    fn printed_sign_errata_are_detected() {
        // the printed rows with K_p signs flipped fail the signature pattern
        let printed: Vec<LambdaRow> = LAMBDA_P
            .iter()
            .filter(|r| r.reading.is_some())
            .map(|r| LambdaRow {
                reading: None,
                ..*r
            })
            .collect();
        let rep = verify_lambda_p_rows(&printed);
        assert_eq!(rep.passed(), 0, "{}", rep.to_text());
    }
}
