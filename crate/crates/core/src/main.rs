use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use trefl::api::{self, QuadricsOutcome};
use trefl::classify::{CertifyOptions, ClassificationReport, GRegularityReport, Verdict};
use trefl::field::FieldSpec;
use trefl::io::{ProblemFile, Report};
use trefl::{Error, Result};

#[derive(Parser)]
#[command(name = "trefl", version, about = "Splitting certificates and G-regularity checks for Artinian quotients of Gorenstein algebras")]
struct Cli {
    /// Coefficient field: `q` or `p:N` (overrides the problem file).
    #[arg(long, global = true, env = "TREFL_FIELD")]
    field: Option<String>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sampling (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify `R = S/J` by the invariants of `K = (0 : J)`.
    Analyze {
        /// Problem file, or `-` for standard input.
        file: String,
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// Build the splitting certificate and the test-module evidence.
    Certify {
        file: String,
        #[arg(long)]
        truncate: Option<usize>,
        /// Seed for the sampled falsifier.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random non-free modules probed.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Largest Tor index probed (default `2·top + 2`).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Minimal free resolution of the canonical module `K` over `R`.
    Resolve {
        file: String,
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Checks the Gorenstein duality identities on random pairs of ideals.
    DualitySelftest {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 8)]
        max_socle: usize,
    },
    /// Checks the Pfaffian complex of the five canonical quadrics and the
    /// linear system behind the homotopy table.
    QuadricsVerify {
        /// Units `u1,u2,u3` of the canonical quadrics.
        #[arg(long, default_value = "1,1,1")]
        units: String,
    },
    /// Prints the built-in problem for a classification case.
    Fixture {
        /// Case letter `a`..`i`.
        case: char,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_problem(path: &str) -> Result<ProblemFile> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Config(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Config(format!("reading {path}: {e}")))?
    };
    ProblemFile::parse(&text)
}

fn emit<T: Serialize>(json: bool, command: &str, field: &FieldSpec, result: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    if json {
        println!("{}", Report::new(command, field, result).to_json()?);
    } else {
        print!("{}", text(result));
    }
    Ok(())
}

fn analyze_text(r: &ClassificationReport) -> String {
    format!(
        "case {} ({} path)\nk = {}, colength = {}, v = {} (needs {}: {})\nS/K: hilbert {:?}, socle dim {}, max generator degree {}\napplicable cases: {}\n",
        r.case,
        r.path,
        r.k,
        r.colength,
        r.v,
        r.required_v,
        if r.threshold_met { "met" } else { "not met" },
        r.quotient_hilbert,
        r.socle_dim,
        r.max_generator_degree,
        r.applicable.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
    )
}

fn certify_text(r: &GRegularityReport) -> String {
    let mut out = format!(
        "{}\ncase {} via {} path; certificate {}\n",
        r.verdict,
        r.classification.case,
        r.certificate.path,
        if r.certificate.valid { "VALID" } else { "INVALID" }
    );
    for c in &r.certificate.checks.0 {
        out.push_str(&format!("  [{}] {}\n", if c.passed { "ok" } else { "FAIL" }, c.name));
    }
    out.push_str(&format!("summand hilbert {:?}\n", r.certificate.summand_hilbert));
    let fz = &r.test_module.falsifier;
    out.push_str(&format!(
        "test module {}: caught {}/{} non-free modules (Tor bound {}){}\n",
        r.test_module.module,
        fz.caught,
        fz.samples,
        fz.bound,
        if r.test_module.statement_level { ", sampled evidence only" } else { "" }
    ));
    if let Some(m) = &r.missing {
        out.push_str(&format!("missing: {m}\n"));
    }
    out
}

fn quadrics_text(o: &QuadricsOutcome) -> String {
    format!(
        "alpha system: {} unknowns, {} equations, kernel dim {} (reference {}), kernel null-homotopic: {}, table solves: {}\nP/B' twists {:?}\nP/B'^2 twists {:?}\nB'^2 = m^4: {}\n",
        o.alpha.unknowns,
        o.alpha.equations,
        o.alpha.kernel_dim,
        o.alpha_reference_kernel_dim,
        o.alpha.kernel_is_null_homotopic,
        o.alpha.table_solves,
        o.quotient_twists,
        o.square_quotient_twists,
        o.square_is_fourth_power
    )
}

/// Runs the command; returns the process exit code.
fn run(cli: &Cli, field: Option<FieldSpec>) -> Result<u8> {
    let json = cli.json;
    let load = |file: &str, truncate: &Option<usize>| -> Result<ProblemFile> {
        let mut p = read_problem(file)?;
        if let Some(f) = field {
            p.field = f;
        }
        if truncate.is_some() {
            p.truncate = *truncate;
        }
        Ok(p)
    };
    let spec = field.unwrap_or(FieldSpec::Prime(101));
    match &cli.command {
        Command::Analyze { file, truncate } => {
            let p = load(file, truncate)?;
            emit(json, "analyze", &p.field, &api::analyze(&p)?, analyze_text)?;
            Ok(0)
        }
        Command::Certify { file, truncate, seed, samples, bound } => {
            let p = load(file, truncate)?;
            let rep = api::certify(&p, &CertifyOptions { samples: *samples, seed: *seed, bound: *bound })?;
            emit(json, "certify", &p.field, &rep, certify_text)?;
            Ok(if rep.verdict == Verdict::GRegular { 0 } else { 1 })
        }
        Command::Resolve { file, truncate, steps } => {
            let p = load(file, truncate)?;
            emit(json, "resolve", &p.field, &api::resolve(&p, *steps)?, |r| r.betti_text.clone())?;
            Ok(0)
        }
        Command::DualitySelftest { samples, seed, max_vars, max_socle } => {
            let rep = api::duality(spec, *samples, *max_vars, *max_socle, *seed)?;
            emit(json, "duality-selftest", &spec, &rep, |r| {
                format!("{}/{} random pairs satisfy all five identities; failures {:?}\n", r.passed, r.samples, r.failures)
            })?;
            Ok(if rep.failures.is_empty() { 0 } else { 1 })
        }
        Command::QuadricsVerify { units } => {
            let out = api::quadrics_verify(spec, units)?;
            emit(json, "quadrics-verify", &spec, &out, quadrics_text)?;
            Ok(if out.passed() { 0 } else { 1 })
        }
        Command::Fixture { case, seed } => {
            let p = api::fixture_problem(spec, *case, *seed)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&p.to_json()).map_err(|e| Error::Invariant(e.to_string()))?);
            } else {
                print!("{}", p.to_text());
            }
            Ok(0)
        }
    }
}

fn main_inner(cli: &Cli) -> Result<u8> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }
    let field = cli.field.as_deref().map(FieldSpec::parse).transpose()?;
    run(cli, field)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
