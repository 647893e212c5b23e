mod rows;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use supersylow::families::{construct, FamilySpec};
use supersylow::liesuper::{algebra_from_json, algebra_to_json};
use supersylow::report::{Verdict, VerificationReport};
use supersylow::structure::{is_oddly_generated, is_zero_superalgebra, root_decomposition, split_torus};
use supersylow::sylow::{verify_normalizer_row, verify_sylow_row, verify_weyl_row};
use supersylow::{Subalgebra, SuperAlgebra};

#[derive(Parser)]
#[command(name = "supersylow", version, about = "Verify Sylow subalgebra tables of Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report one verdict per row.
    Verify(VerifyArgs),
    /// Print structural data of a superalgebra given as JSON.
    Analyze {
        file: PathBuf,
        /// Also print the root decomposition with respect to a split torus.
        #[arg(long)]
        roots: bool,
    },
    /// Write a family member as JSON, e.g. `gl(2|3)` or `psq(4)`.
    Export {
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Sylow,
    Normalizers,
    Weyl,
    ZeroClassification,
    Counterexample,
    Ds,
    Ext,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(clap::Args)]
struct VerifyArgs {
    suite: Suite,
    /// Largest family parameter included in table suites.
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(rows::FAMILIES))]
    family: Option<String>,
    /// Table index: n for gl(m|n), sl(m|n), psl(n|n) and osp(m|2n), n/2 for
    /// pe(n), spe(n) and psq(n); the size for the counterexample suite.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, env = "SUPERSYLOW_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory receiving one JSON report per row and `summary.md`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall-clock time per row in `runtime_ms`.
    #[arg(long)]
    timings: bool,
}

/// Exit status 2: usage, schema or I/O errors.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(&args),
        Command::Analyze { file, roots } => analyze(&file, roots).map(|_| true),
        Command::Export { family, out } => export(&family, out.as_deref()).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn error_report(target: String, seed: u64, e: supersylow::Error) -> VerificationReport {
    let mut rep = VerificationReport::new(target, seed);
    rep.check("error", None, json!(e.to_string()), "");
    rep
}

fn timed<F>(timings: bool, target: String, seed: u64, f: F) -> Vec<VerificationReport>
where
    F: FnOnce() -> supersylow::Result<Vec<VerificationReport>>,
{
    let start = Instant::now();
    let mut reps = f().unwrap_or_else(|e| vec![error_report(target, seed, e)]);
    if timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut reps {
            r.runtime_ms = ms;
        }
    }
    reps
}

fn run_suite(args: &VerifyArgs) -> Result<Vec<VerificationReport>, UsageError> {
    let seed = args.seed;
    let table = |f: fn(&FamilySpec, u64) -> supersylow::Result<VerificationReport>, kind: &str| {
        let rank = rows::rank_for(args.n, args.max_rank);
        let specs = rows::select(rank, args.family.as_deref(), args.n);
        specs
            .par_iter()
            .flat_map(|s| timed(args.timings, format!("{kind} {s}"), seed, || f(s, seed).map(|r| vec![r])))
            .collect::<Vec<_>>()
    };
    let reps = match args.suite {
        Suite::Sylow => table(verify_sylow_row, "sylow"),
        Suite::Normalizers => table(verify_normalizer_row, "normalizer"),
        Suite::Weyl => table(verify_weyl_row, "weyl"),
        Suite::ZeroClassification => {
            timed(args.timings, "zero-classification".into(), seed, || suites::zero_classification(seed))
        }
        Suite::Counterexample => {
            let n = args.n.unwrap_or(2);
            if n < 2 {
                return Err(UsageError("the counterexample needs --n at least 2".into()));
            }
            timed(args.timings, format!("counterexample({n})"), seed, || Ok(vec![suites::counterexample(n, seed)?]))
        }
        Suite::Ds => timed(args.timings, "ds".into(), seed, || suites::ds_suite(seed)),
        Suite::Ext => timed(args.timings, "ext".into(), seed, || suites::ext_suite(seed)),
    };
    if reps.is_empty() {
        return Err(UsageError("no rows match the selection".into()));
    }
    Ok(reps)
}

fn verify(args: &VerifyArgs) -> Result<bool, UsageError> {
    eprintln!("seed: {}", args.seed);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.jobs.unwrap_or(0)).build()?;
    let reps = pool.install(|| run_suite(args))?;
    let summary = summary_md(&reps);
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        for r in &reps {
            fs::write(dir.join(format!("{}.json", file_stem(&r.target))), r.to_json())?;
        }
        fs::write(dir.join("summary.md"), &summary)?;
    }
    match args.format {
        Format::Json => {
            let all: Vec<Value> = reps.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
            println!("{}", serde_json::to_string_pretty(&all)?);
        }
        Format::Md => print!("{summary}"),
    }
    Ok(reps.iter().all(VerificationReport::passed))
}

fn file_stem(target: &str) -> String {
    let mut s = String::new();
    for c in target.chars() {
        match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' => s.push(c),
            '|' => s.push('-'),
            '(' | ' ' | ',' => s.push('_'),
            _ => {}
        }
    }
    s.trim_matches('_').to_string()
}

fn cell(v: Option<&Value>) -> String {
    match v {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Array(a)) if a.len() == 2 && a.iter().all(Value::is_u64) => format!("({}|{})", a[0], a[1]),
        Some(v) => v.to_string(),
        None => String::new(),
    }
}

/// Markdown table with one line per report. The middle columns come from the
/// dimension or class-count check, else from the first check with an expected value.
fn summary_md(reps: &[VerificationReport]) -> String {
    let mut s = String::from("| row | expected | computed | verdict |\n|---|---|---|---|\n");
    for r in reps {
        let headline = r.checks.iter().find(|c| c.name == "dimensions" || c.name == "sylow_classes");
        let details = headline
            .or_else(|| r.checks.iter().find(|c| c.details.get("expected").is_some()))
            .map(|c| &c.details);
        let (expected, found) = match details {
            Some(d) => {
                let named = cell(d.get("named"));
                let exp = cell(d.get("expected"));
                (if named.is_empty() { exp } else { format!("{named} {exp}") }, cell(d.get("found")))
            }
            None => (String::new(), String::new()),
        };
        let verdict = match r.verdict {
            Verdict::Pass => "pass".to_string(),
            v => format!("{} ({})", serde_json::to_value(v).expect("serializable").as_str().unwrap_or(""), r.failed_checks().join(", ")),
        };
        s.push_str(&format!("| {} | {} | {} | {} |\n", r.target, expected, found, verdict));
    }
    s
}

fn dims(d: (usize, usize)) -> Value {
    json!([d.0, d.1])
}

fn analyze(file: &Path, roots: bool) -> Result<(), UsageError> {
    let text = fs::read_to_string(file)?;
    let a = algebra_from_json(&text)?;
    let cert = is_zero_superalgebra(&a)?;
    let mut out = json!({
        "dims": dims(a.dims()),
        "center": dims(a.center().dims()),
        "derived": dims(a.derived_subalgebra().dims()),
        "oddly_generated": is_oddly_generated(&a),
        "zero_certificate": cert.to_json(),
    });
    if roots {
        out["roots"] = root_data(&a)?;
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn root_data(a: &SuperAlgebra) -> Result<Value, UsageError> {
    let t = Subalgebra::new(a, split_torus(a))?;
    let rd = root_decomposition(a, &t)?;
    let fmt = |w: &[supersylow::Rat]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let list: Vec<Value> = rd
        .roots
        .iter()
        .map(|w| json!({ "weight": fmt(w), "dims": dims(rd.root_dims(a, w).unwrap_or((0, 0))) }))
        .collect();
    let z = rd.zero_space.basis().iter().filter(|v| a.is_even_vec(v)).count();
    Ok(json!({
        "torus_dim": rd.torus.len(),
        "zero_space": dims((z, rd.zero_space.dim() - z)),
        "roots": list,
    }))
}

fn export(family: &str, out: Option<&Path>) -> Result<(), UsageError> {
    let spec: FamilySpec = family.parse()?;
    let text = algebra_to_json(&construct(&spec)?);
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
