//! Command-line surface. Every subcommand writes line-delimited JSON.

pub mod table;

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::charcalc::{irr_dim, Characteristic, DimResult};
use crate::checker::{branch_p0, scan_candidates, verify_entry, BranchReport, ClassificationEntry, Finding, Verdict};
use crate::embeddings::{build_embedding, Embedding, GeomFamily};
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, Family, LieType, Weight};
use crate::weylgroup::{orbit_enumerate, orbit_size, weyl_group_order};

use table::TableFile;

#[derive(Parser, Debug)]
#[command(
    name = "weylbranch",
    about = "Weights, dimensions and branching for classical groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Family letter: A, B, C or D.
    #[arg(value_name = "TYPE")]
    pub letter: String,
    pub rank: usize,
}

impl TypeArgs {
    fn lie_type(&self) -> Result<LieType> {
        let mut c = self.letter.chars();
        let f = c
            .next()
            .filter(|_| c.as_str().is_empty())
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown family '{}'", self.letter),
            })?;
        LieType::new(f, self.rank)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of L(λ) in characteristic p.
    Dim {
        #[command(flatten)]
        ty: TypeArgs,
        /// Comma-separated coefficients in Bourbaki order.
        lambda: String,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Composition factors of L(λ) restricted to H⁰ at p = 0.
    Branch {
        #[command(flatten)]
        ty: TypeArgs,
        lambda: String,
        /// Family spec such as c1:Dn, c2:l=1,t=2 or c4ii:Cl,l=1,t=3.
        family: String,
    },
    /// Verify classification table rows.
    Verify {
        /// Table files; `builtin:NAME` selects a shipped table.
        #[arg(required = true)]
        tables: Vec<String>,
        /// Characteristics, comma-separated.
        #[arg(long, default_value = "0", value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long, default_value_t = 8)]
        rank_cap: usize,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Add wall-clock timings to each record.
        #[arg(long)]
        timings: bool,
    },
    /// Classify candidate highest weights for one subgroup.
    Scan {
        #[command(flatten)]
        ty: TypeArgs,
        family: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        p: u64,
        /// Compare the irreducible set with the shipped main table.
        #[arg(long)]
        assert: bool,
    },
    /// Cartan matrix, positive roots, ρ and |W|.
    RootsysInfo {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Weyl group orbit of a weight.
    Orbit {
        #[command(flatten)]
        ty: TypeArgs,
        lambda: String,
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
    },
}

fn parse_weight(s: &str, t: LieType) -> Result<Weight> {
    let w = Weight::parse(s)?;
    if w.rank() != t.rank {
        return Err(Error::LengthMismatch {
            expected: t.rank,
            got: w.rank(),
        });
    }
    Ok(w)
}

fn dim_json(d: &DimResult) -> (Value, Value) {
    match d {
        DimResult::Exact { value, rule } => (json!(value.to_string()), json!(rule)),
        DimResult::WeylAtP0(value) => (json!(value.to_string()), json!("weyl")),
        DimResult::Unknown => (Value::Null, json!("unknown")),
    }
}

fn finding_json(f: &Finding) -> Value {
    serde_json::to_value(f).expect("finding serializes")
}

fn opt_str<T: ToString>(x: &Option<T>) -> Value {
    x.as_ref().map_or(Value::Null, |v| json!(v.to_string()))
}

/// The stable report record of a branch or verification.
pub fn report_json(r: &BranchReport, e: &Embedding, p: Option<u64>) -> Value {
    let factors: Vec<Value> = r
        .factors
        .iter()
        .map(|(hw, m)| {
            json!({
                "weight": e.format_h0(hw),
                "coords": hw,
                "mult": m.to_string(),
                "dim": opt_str(&r.dims.get(hw).cloned().flatten()),
            })
        })
        .collect();
    let mut v = json!({
        "entry_id": r.entry_id,
        "verdict": r.verdict,
        "kappa_expected": r.kappa_expected,
        "kappa_found": r.kappa_found,
        "dim_lhs": opt_str(&r.dim_lhs),
        "dim_rhs": opt_str(&r.dim_rhs),
        "reasons": r.reasons.iter().map(finding_json).collect::<Vec<_>>(),
        "ambient": r.ambient.to_string(),
        "subgroup": r.subgroup,
        "lambda": r.lambda.coeffs,
        "restriction": e.format_h0(&r.restriction),
        "factors": factors,
        "irreducible": r.irreducible,
    });
    if let Some(p) = p {
        v["p"] = json!(p);
    }
    v
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{v}").map_err(|e| Error::Precondition(format!("write failed: {e}")))
}

fn load_table(spec: &str) -> Result<TableFile> {
    let text = match spec.strip_prefix("builtin:") {
        Some(name) => table::builtin(name)
            .ok_or_else(|| Error::Precondition(format!("no shipped table '{name}'")))?
            .to_string(),
        None => std::fs::read_to_string(spec).map_err(|e| Error::Precondition(format!("{spec}: {e}")))?,
    };
    TableFile::parse(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse {
            line,
            msg: format!("{spec}: {msg}"),
        },
        other => other,
    })
}

/// Run `f` over `items` on `jobs` threads, returning results in input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

#[derive(Serialize, Default)]
struct Summary {
    pass: usize,
    fail: usize,
    inconclusive: usize,
    error: usize,
}

/// Verify every row of the given tables. Returns true when no row failed.
pub fn run_verify(
    tables: &[String],
    ps: &[u64],
    rank_cap: usize,
    jobs: usize,
    timings: bool,
    out: &mut dyn Write,
) -> Result<bool> {
    let mut work: Vec<(ClassificationEntry, Characteristic)> = Vec::new();
    for spec in tables {
        let t = load_table(spec)?;
        for &p in ps {
            let chi = Characteristic::new(p)?;
            for e in t.instantiate(rank_cap, chi)? {
                work.push((e, chi));
            }
        }
    }
    let results = parallel_map(&work, jobs, |(entry, chi)| {
        let start = Instant::now();
        let r = verify_entry(entry, *chi).and_then(|r| Ok((r, build_embedding(entry.ambient, entry.family)?)));
        (r, start.elapsed())
    });
    let mut summary = Summary::default();
    for ((entry, chi), (r, elapsed)) in work.iter().zip(results) {
        let mut v = match r {
            Ok((rep, e)) => {
                match rep.verdict {
                    Verdict::Pass => summary.pass += 1,
                    Verdict::Fail => summary.fail += 1,
                    Verdict::Inconclusive => summary.inconclusive += 1,
                }
                report_json(&rep, &e, Some(chi.p))
            }
            Err(err) => {
                summary.error += 1;
                json!({"entry_id": entry.id, "verdict": "ERROR", "p": chi.p, "reasons": [{"kind": "error", "message": err.to_string(), "witness": []}]})
            }
        };
        if timings {
            v["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1000.0);
        }
        emit(out, &v)?;
    }
    emit(out, &json!({ "summary": summary }))?;
    Ok(summary.fail == 0 && summary.error == 0)
}

/// Scan candidates and optionally compare with the main table. Returns
/// false when an assertion fails.
pub fn run_scan(t: LieType, family: &str, bound: i64, p: u64, assert: bool, out: &mut dyn Write) -> Result<bool> {
    let chi = Characteristic::new(p)?;
    let fam = GeomFamily::parse(family, t)?;
    let e = build_embedding(t, fam)?;
    let recs = scan_candidates(t, &e, chi, bound)?;
    let mut found = Vec::new();
    for r in &recs {
        let mut v = json!({
            "lambda": r.lambda.coeffs,
            "verdict": r.verdict,
            "reasons": r.reasons.iter().map(finding_json).collect::<Vec<_>>(),
        });
        if let Some(b) = &r.branch {
            v["factors"] = json!(b.factors.keys().map(|k| e.format_h0(k)).collect::<Vec<_>>());
        }
        emit(out, &v)?;
        if r.verdict == crate::checker::ScanVerdict::Irreducible {
            found.push(r.lambda.clone());
        }
    }
    let mut ok = true;
    let mut summary = json!({
        "ambient": t.to_string(),
        "subgroup": e.label,
        "p": p,
        "bound": bound,
        "irreducible": found.iter().map(|w| w.coeffs.clone()).collect::<Vec<_>>(),
    });
    if assert {
        if p != 0 {
            return Err(Error::Precondition("--assert needs p = 0".into()));
        }
        if !e.existence.holds_at(p) || !e.existence.maximal {
            summary["assert"] = json!("skipped: subgroup not maximal at this p");
        } else {
            let expected = table::main_table()?.expected_weights(t, &fam, chi, bound)?;
            let got: std::collections::BTreeSet<Weight> = found.into_iter().collect();
            ok = expected == got;
            summary["expected"] = json!(expected.iter().map(|w| w.coeffs.clone()).collect::<Vec<_>>());
            summary["assert"] = json!(if ok { "pass" } else { "fail" });
        }
    }
    emit(out, &json!({ "summary": summary }))?;
    Ok(ok)
}

/// Execute a parsed command. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Dim { ty, lambda, p } => {
            let t = ty.lie_type()?;
            let w = parse_weight(&lambda, t)?;
            let chi = Characteristic::new(p)?;
            let d = irr_dim(&build_root_system(t), &w, chi)?;
            let (value, rule) = dim_json(&d);
            emit(
                out,
                &json!({"type": t.to_string(), "lambda": w.coeffs, "p": p, "dim": value, "rule": rule}),
            )?;
            Ok(0)
        }
        Command::Branch { ty, lambda, family } => {
            let t = ty.lie_type()?;
            let w = parse_weight(&lambda, t)?;
            let fam = GeomFamily::parse(&family, t)?;
            let e = build_embedding(t, fam)?;
            let r = branch_p0(&build_root_system(t), &w, &e)?;
            let mut v = report_json(&r, &e, Some(0));
            let terms: Vec<String> = r
                .factors
                .iter()
                .map(|(hw, m)| {
                    let d = r.dims[hw].as_ref().map_or("?".into(), |d| d.to_string());
                    if m == &num_bigint::BigUint::from(1u32) {
                        d
                    } else {
                        format!("{m}*{d}")
                    }
                })
                .collect();
            v["conservation"] = json!(format!(
                "{} = {}",
                opt_str(&r.dim_lhs).as_str().unwrap_or("?"),
                terms.join(" + ")
            ));
            emit(out, &v)?;
            Ok(0)
        }
        Command::Verify {
            tables,
            p,
            rank_cap,
            jobs,
            timings,
        } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let ok = run_verify(&tables, &p, rank_cap, jobs, timings, out)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Scan {
            ty,
            family,
            bound,
            p,
            assert,
        } => {
            let ok = run_scan(ty.lie_type()?, &family, bound, p, assert, out)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::RootsysInfo { ty } => {
            let t = ty.lie_type()?;
            let rs = build_root_system(t);
            emit(
                out,
                &json!({
                    "type": t.to_string(),
                    "cartan": rs.cartan,
                    "root_lengths": rs.root_lengths,
                    "positive_roots": rs.positive_roots_int(),
                    "rho": rs.rho.coeffs,
                    "weyl_order": weyl_group_order(&rs).to_string(),
                }),
            )?;
            Ok(0)
        }
        Command::Orbit { ty, lambda, cap } => {
            let t = ty.lie_type()?;
            let w = parse_weight(&lambda, t)?;
            let rs = build_root_system(t);
            let s = orbit_size(&rs, &w);
            let orbit = orbit_enumerate(&rs, &w, cap)?;
            emit(
                out,
                &json!({
                    "type": t.to_string(),
                    "dominant": s.dominant_rep.coeffs,
                    "size": s.orbit_size.to_string(),
                    "stabilizer": s.stabilizer_type.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "orbit": orbit.iter().map(|x| x.coeffs.clone()).collect::<Vec<_>>(),
                }),
            )?;
            Ok(0)
        }
    }
}

/// Parse arguments, run, and map errors to a diagnostic with exit code 2.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
