use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latticeforge::discform::{discriminant_form, milgram_signature};
use latticeforge::enumerate::{count_vectors_with, root_report, EnumOptions, EnumQuery};
use latticeforge::glue::{primitive_extension, GlueData};
use latticeforge::isom::{
    discriminant_action, extend_to_lambda, invariant_coinvariant, spinor_norm, ActionKind, Isometry,
};
use latticeforge::lattice::{lattice_from_json, lattice_to_json, matrix_to_json, Lattice, Vector};
use latticeforge::paperdata::{self, VerdictReport};
use num_bigint::BigInt;
use serde_json::{json, Value};

const GLUE_LIMIT: u64 = 100_000;

#[derive(Parser)]
#[command(
    name = "latticeforge",
    version,
    about = "Exact computations with integral lattices"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest rank accepted by vector enumeration.
    #[arg(long, global = true)]
    rank_cap: Option<usize>,
    /// Worker threads (LATTICEFORGE_JOBS takes precedence).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank, signature, determinant, discriminant form.
    Info { lattice: String },
    /// Count (or list) vectors of a given norm in a definite lattice.
    Enum {
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        /// Pairing constraint `name=k`, where `name` is `eta`, `e<i>` or `c1,c2,…`.
        #[arg(long, allow_hyphen_values = true)]
        dot: Vec<String>,
        #[arg(long)]
        div: Option<i64>,
        #[arg(long)]
        list: bool,
    },
    /// Short roots (v² = 2) and long roots (v² = 6, div 3) of a definite lattice.
    Roots { lattice: String },
    /// Glue two lattices along a full anti-isometry of their discriminant forms.
    Glue { left: String, right: String },
    /// Operations on an isometry stored as JSON `{"lattice": …, "matrix": …}`.
    Isom {
        #[arg(value_enum)]
        op: IsomOp,
        file: String,
    },
    /// Saturated rank-two sublattices containing a marked vector, by discriminant.
    Labeling {
        lattice: String,
        #[arg(long, default_value = "eta")]
        eta: String,
        #[arg(long, default_value_t = 60)]
        dmax: u64,
    },
    /// Whether T(−1) embeds primitively in the K3 lattice (fixture genera only).
    K3 { lattice: String },
    /// Re-check the embedded tables.
    Verify {
        #[arg(value_enum)]
        table: Table,
    },
    /// Print every fixture table as JSON.
    ExportFixtures {
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IsomOp {
    Invariant,
    Coinvariant,
    Order,
    Spin,
    DiscAction,
    ExtendLambda,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    #[value(name = "lambda_p")]
    LambdaP,
    Cubic,
    Lsv,
    Candidates,
    All,
}

/// Exit status 1 (a check failed) or 2 (bad input).
enum Failure {
    Check(String),
    Input(String),
}

impl From<latticeforge::Error> for Failure {
    fn from(e: latticeforge::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Out = Result<(String, bool), Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// A builtin name, a lattice expression, or a path to a JSON lattice file.
fn load_lattice(r: &str) -> Result<(Lattice, String), Failure> {
    let p = Path::new(r);
    if p.extension().is_some_and(|e| e == "json") || p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| input(format!("{r}: {e}")))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| input(format!("{r}: {e}")))?;
        let l = lattice_from_json(&v)?;
        let name = l.label().unwrap_or(r).to_string();
        return Ok((l, name));
    }
    Ok((paperdata::builtin(r)?, r.to_string()))
}

fn load_isometry(r: &str) -> Result<Isometry, Failure> {
    let text = std::fs::read_to_string(r).map_err(|e| input(format!("{r}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| input(format!("{r}: {e}")))?;
    Ok(Isometry::from_json(&v)?)
}

fn vector_ref(l: &Lattice, lname: &str, s: &str) -> Result<Vector, Failure> {
    if s.contains(',') || s.parse::<i64>().is_ok() {
        let v: Vector = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| input(format!("bad coordinate in `{s}`")))
            })
            .collect::<Result<_, _>>()?;
        if v.len() != l.rank() {
            return Err(input(format!(
                "vector `{s}` has {} coordinates, lattice rank is {}",
                v.len(),
                l.rank()
            )));
        }
        return Ok(v);
    }
    Ok(paperdata::builtin_vector(l, lname, s)?)
}

fn json_out(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_info(fmt: Format, r: &str) -> Out {
    let (l, name) = load_lattice(r)?;
    let inv = l.invariants();
    let form = if l.rank() == 0 {
        None
    } else {
        Some(discriminant_form(&l)?.0)
    };
    let milgram = match &form {
        Some(f) if l.is_even() => Some(milgram_signature(f)?),
        _ => None,
    };
    let disc = form
        .as_ref()
        .map(|f| f.to_string())
        .unwrap_or_else(|| "0 (trivial)".into());
    Ok((
        match fmt {
            Format::Json => {
                let mut v = lattice_to_json(&l);
                v["name"] = json!(name);
                v["invariants"] = serde_json::to_value(&inv).expect("serializable");
                v["discriminant_form"] = json!(disc);
                v["milgram_signature"] = json!(milgram);
                json_out(v)
            }
            Format::Csv => {
                let mut s = csv_line(
                    &["name", "rank", "sig_pos", "sig_neg", "det", "even", "disc"]
                        .map(String::from),
                );
                let row = [
                    name,
                    inv.rank.to_string(),
                    inv.signature.0.to_string(),
                    inv.signature.1.to_string(),
                    inv.determinant.to_string(),
                    inv.even.to_string(),
                    disc,
                ];
                s.push('\n');
                s.push_str(&csv_line(&row));
                s
            }
            Format::Text => {
                let mut s = format!("{name}\n{inv}\ndiscriminant form: {disc}");
                if let Some(m) = milgram {
                    let _ = write!(s, "\nMilgram signature: {m} mod 8");
                }
                if inv.disc_group_orders.is_empty() {
                    s.push_str("\nunimodular");
                }
                s
            }
        },
        true,
    ))
}

fn cmd_enum(
    fmt: Format,
    rank_cap: Option<usize>,
    r: &str,
    norm: i64,
    dots: &[String],
    div: Option<i64>,
    list: bool,
) -> Out {
    let (l, name) = load_lattice(r)?;
    if !l.is_definite() {
        return Err(input(format!("{name} is indefinite")));
    }
    let mut q = EnumQuery::new(l.clone(), norm);
    for d in dots {
        let (vn, k) = d
            .split_once('=')
            .ok_or_else(|| input(format!("--dot expects name=k, got `{d}`")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| input(format!("bad pairing value in `{d}`")))?;
        q = q.dot(vector_ref(&l, &name, vn.trim())?, k);
    }
    if let Some(d) = div {
        q = q.div(d);
    }
    let mut opts = EnumOptions {
        list,
        ..Default::default()
    };
    if let Some(c) = rank_cap {
        opts.rank_cap = c;
    }
    let res = count_vectors_with(&q, opts)?;
    let vecs: Vec<Vec<String>> = res
        .vectors
        .iter()
        .flatten()
        .map(|v| v.iter().map(|c| c.to_string()).collect())
        .collect();
    Ok((
        match fmt {
            Format::Json => json_out(
                json!({"lattice": name, "norm": norm, "count": res.count, "vectors": res.vectors.as_ref().map(|_| &vecs)}),
            ),
            Format::Csv => {
                let mut s = String::new();
                if list {
                    for v in &vecs {
                        s.push_str(&csv_line(v));
                        s.push('\n');
                    }
                } else {
                    let _ = write!(
                        s,
                        "lattice,norm,count\n{},{norm},{}",
                        csv_line(&[name]),
                        res.count
                    );
                }
                s.trim_end().to_string()
            }
            Format::Text => {
                let mut s = res.count.to_string();
                for v in &vecs {
                    let _ = write!(s, "\n({})", v.join(", "));
                }
                s
            }
        },
        true,
    ))
}

fn cmd_roots(fmt: Format, r: &str) -> Out {
    let (l, name) = load_lattice(r)?;
    let rr = root_report(&l, None)?;
    Ok((
        match fmt {
            Format::Json => json_out(
                json!({"lattice": name, "short_roots": rr.short_roots, "long_roots": rr.long_roots}),
            ),
            Format::Csv => format!(
                "lattice,short_roots,long_roots\n{},{},{}",
                csv_line(&[name]),
                rr.short_roots,
                rr.long_roots
            ),
            Format::Text => format!(
                "short roots {}, long roots {}",
                rr.short_roots, rr.long_roots
            ),
        },
        true,
    ))
}

fn cmd_glue(fmt: Format, a: &str, b: &str) -> Out {
    let (la, _) = load_lattice(a)?;
    let (lb, _) = load_lattice(b)?;
    let Some(g) = GlueData::full(la, lb, GLUE_LIMIT)? else {
        return Err(Failure::Check(
            "discriminant forms are not anti-isometric".into(),
        ));
    };
    let ext = primitive_extension(&g)?;
    let inv = ext.lattice.invariants();
    Ok((
        match fmt {
            Format::Json => {
                let mut v = lattice_to_json(&ext.lattice);
                v["index"] = json!(ext.index().to_string());
                v["invariants"] = serde_json::to_value(&inv).expect("serializable");
                json_out(v)
            }
            Format::Csv => format!(
                "index,rank,sig_pos,sig_neg,det,even\n{},{},{},{},{},{}",
                ext.index(),
                inv.rank,
                inv.signature.0,
                inv.signature.1,
                inv.determinant,
                inv.even
            ),
            Format::Text => format!("glue index {}\n{inv}\n{}", ext.index(), ext.lattice.gram()),
        },
        true,
    ))
}

fn cmd_isom(fmt: Format, op: IsomOp, file: &str) -> Out {
    let f = load_isometry(file)?;
    let text = |s: String, v: Value| if fmt == Format::Json { json_out(v) } else { s };
    let out = match op {
        IsomOp::Order => {
            let o = f.order();
            let s = o.map_or("infinite".to_string(), |o| o.to_string());
            text(s.clone(), json!({"order": o}))
        }
        IsomOp::Spin => {
            let sn = spinor_norm(&f);
            text(
                if sn > 0 { "+1".into() } else { "-1".into() },
                json!({"spinor_norm": sn}),
            )
        }
        IsomOp::Invariant | IsomOp::Coinvariant => {
            let p = invariant_coinvariant(&f)?;
            let sub = if op == IsomOp::Invariant {
                &p.invariant
            } else {
                &p.coinvariant
            };
            let l = if sub.rank() == 0 {
                Lattice::zero()
            } else {
                sub.lattice()?
            };
            let mut v = lattice_to_json(&l);
            v["basis"] = matrix_to_json(&sub.basis);
            v["glue_a"] = json!(p.glue_a);
            let s = if sub.rank() == 0 {
                "rank 0".to_string()
            } else {
                format!(
                    "{}\nbasis:\n{}\ngram:\n{}",
                    l.invariants(),
                    sub.basis,
                    l.gram()
                )
            };
            text(s, v)
        }
        IsomOp::DiscAction => {
            let a = discriminant_action(&f)?;
            let kind = match a.kind {
                ActionKind::Identity => "id",
                ActionKind::MinusIdentity => "-id",
                ActionKind::Other => "other",
            };
            let images: Vec<String> = a.images.iter().map(|x| format!("{x:?}")).collect();
            text(
                format!(
                    "A = {}\naction: {kind}\ngenerator images: {}",
                    a.form,
                    images.join(" ")
                ),
                json!({"form": a.form.to_string(), "kind": kind, "images": a.images}),
            )
        }
        IsomOp::ExtendLambda => {
            let e = extend_to_lambda(&f)?;
            text(format!("{}", e.matrix()), e.to_json())
        }
    };
    Ok((out, true))
}

fn cmd_labeling(fmt: Format, r: &str, eta: &str, dmax: u64) -> Out {
    let (l, name) = load_lattice(r)?;
    let eta = vector_ref(&l, &name, eta)?;
    let labs = paperdata::labeling_search(&l, &eta, dmax)?;
    Ok((
        match fmt {
            Format::Json => json_out(serde_json::to_value(&labs).expect("serializable")),
            Format::Csv => {
                let mut s = "d,admissible,witnesses".to_string();
                for x in &labs {
                    let _ = write!(s, "\n{},{},{}", x.d, x.admissible, x.witnesses.len());
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                for x in &labs {
                    let w: Vec<String> = x.witnesses[0].iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(
                        s,
                        "d = {}{}: {} sublattice(s), e.g. v = ({})",
                        x.d,
                        if x.admissible { " (admissible)" } else { "" },
                        x.witnesses.len(),
                        w.join(", ")
                    );
                }
                if labs.is_empty() {
                    s.push_str("none");
                }
                s.trim_end().to_string()
            }
        },
        true,
    ))
}

fn cmd_k3(fmt: Format, r: &str) -> Out {
    let (l, name) = load_lattice(r)?;
    let v = paperdata::k3_association_verdict(&l)?;
    Ok((
        match fmt {
            Format::Json => json_out(
                json!({"lattice": name, "associated": v.associated, "reason": v.reason, "complement": v.complement}),
            ),
            Format::Csv => format!(
                "lattice,associated,reason\n{}",
                csv_line(&[name, v.associated.to_string(), v.reason])
            ),
            Format::Text => format!("{}: {}", if v.associated { "Yes" } else { "No" }, v.reason),
        },
        true,
    ))
}

fn report_out(fmt: Format, reps: &[VerdictReport]) -> String {
    match fmt {
        Format::Json => json_out(Value::Array(
            reps.iter().map(VerdictReport::to_json).collect(),
        )),
        Format::Csv => {
            let mut s = "table,row,check,pass,value".to_string();
            for r in reps {
                for row in &r.rows {
                    for c in &row.checks {
                        let _ = write!(
                            s,
                            "\n{}",
                            csv_line(&[
                                r.table.clone(),
                                row.row.clone(),
                                c.name.clone(),
                                c.pass.to_string(),
                                c.value.clone()
                            ])
                        );
                    }
                }
            }
            s
        }
        Format::Text => reps
            .iter()
            .map(VerdictReport::to_text)
            .collect::<Vec<_>>()
            .join("\n")
            .trim_end()
            .to_string(),
    }
}

fn candidates_out(fmt: Format) -> Out {
    let sets = paperdata::derive_og10_order3_candidates()?;
    let expected: Vec<&str> = paperdata::tables::LSV
        .iter()
        .filter(|r| r.p == 3)
        .map(|r| r.id)
        .collect();
    let matched: Vec<&str> = sets
        .iter()
        .flat_map(|c| c.lsv_matches.iter().copied())
        .collect();
    let ok = expected.iter().all(|id| matched.contains(id));
    let out = match fmt {
        Format::Json => json_out(Value::Array(
            sets.iter()
                .map(|c| {
                    json!({
                        "row": c.row,
                        "coinvariant": c.coinvariant,
                        "candidates": c.candidates.iter().map(|(s, f)| json!({"signature": s, "form": f.to_string()})).collect::<Vec<_>>(),
                        "lsv_matches": c.lsv_matches,
                    })
                })
                .collect(),
        )),
        Format::Csv => {
            let mut s = "row,signature,form".to_string();
            for c in &sets {
                for (sg, f) in &c.candidates {
                    let _ = write!(s, "\n{}", csv_line(&[c.row.to_string(), format!("{sg:?}"), f.to_string()]));
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &sets {
                let _ = writeln!(s, "row {}: {} candidate genera; LSV matches {:?}", c.row, c.candidates.len(), c.lsv_matches);
                for (sg, f) in &c.candidates {
                    let _ = writeln!(s, "    sig {sg:?}, {f}");
                }
            }
            let _ = write!(s, "order-three rows matched: {}/{}", expected.iter().filter(|id| matched.contains(id)).count(), expected.len());
            s
        }
    };
    Ok((out, ok))
}

fn cmd_verify(fmt: Format, t: Table) -> Out {
    if t == Table::Candidates {
        return candidates_out(fmt);
    }
    let reps: Vec<VerdictReport> = match t {
        Table::LambdaP => vec![paperdata::verify_lambda_p()],
        Table::Cubic => vec![paperdata::verify_cubic_tables()],
        Table::Lsv => vec![paperdata::verify_lsv_table()],
        _ => vec![
            paperdata::verify_lambda_p(),
            paperdata::verify_cubic_tables(),
            paperdata::verify_lsv_table(),
        ],
    };
    let ok = reps.iter().all(VerdictReport::all_pass);
    let mut out = report_out(fmt, &reps);
    if t == Table::All {
        let (c, cok) = candidates_out(fmt)?;
        if fmt == Format::Text {
            out = format!("{out}\n\n{c}");
        }
        return Ok((out, ok && cok));
    }
    Ok((out, ok))
}

fn cmd_export(out: Option<&str>) -> Out {
    let s = json_out(paperdata::fixtures_json());
    match out {
        Some(p) => {
            std::fs::write(p, &s).map_err(|e| input(format!("{p}: {e}")))?;
            Ok((format!("wrote {p}"), true))
        }
        None => Ok((s, true)),
    }
}

fn jobs(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var("LATTICEFORGE_JOBS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                input(format!(
                    "LATTICEFORGE_JOBS must be a positive integer, got `{v}`"
                ))
            }),
        _ => match flag {
            Some(0) => Err(input("--jobs must be positive")),
            j => Ok(j),
        },
    }
}

fn run(cli: Cli) -> Out {
    if let Some(n) = jobs(cli.jobs)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input(e.to_string()))?;
    }
    if cli.rank_cap == Some(0) {
        return Err(input("--rank-cap must be positive"));
    }
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Info { lattice } => cmd_info(fmt, lattice),
        Cmd::Enum {
            lattice,
            norm,
            dot,
            div,
            list,
        } => cmd_enum(fmt, cli.rank_cap, lattice, *norm, dot, *div, *list),
        Cmd::Roots { lattice } => cmd_roots(fmt, lattice),
        Cmd::Glue { left, right } => cmd_glue(fmt, left, right),
        Cmd::Isom { op, file } => cmd_isom(fmt, *op, file),
        Cmd::Labeling { lattice, eta, dmax } => cmd_labeling(fmt, lattice, eta, *dmax),
        Cmd::K3 { lattice } => cmd_k3(fmt, lattice),
        Cmd::Verify { table } => cmd_verify(fmt, *table),
        Cmd::ExportFixtures { out } => cmd_export(out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((s, ok)) => {
            // a closed pipe (`| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{s}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Check(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
