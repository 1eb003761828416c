use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amalgam_core::amalg::spectrum_transfer;
use amalgam_core::catalog::{eval_with, DEFAULT_CATALOG};
use amalgam_core::spectrum::spectrum;
use amalgam_core::theorems::theorem_ids;
use amalgam_core::{classify, parse_spec, run_catalog, Budget, Catalog, SpecFile, SuiteConfig, Value};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Exact computations on finite commutative rings and amalgamated algebras.
#[derive(Parser)]
#[command(name = "amalgam", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a ring against the Prüfer-like hierarchy.
    Classify {
        /// Entry name from the spec file, or a construction expression.
        target: String,
        #[command(flatten)]
        common: Common,
        /// Degree bound for the bounded Gauss oracle.
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Build a catalog, classify every ring and run the theorem checks.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated check ids (default: all).
        #[arg(long, value_delimiter = ',')]
        theorems: Option<Vec<String>>,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare the direct and transferred spectra of an amalgamation.
    Spectrum {
        /// Amalgamation entry name.
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the built-in catalog.
    Catalog,
    /// List the theorem check ids.
    Theorems,
}

#[derive(Args)]
struct Common {
    /// Spec file (default: the built-in catalog).
    #[arg(long, short)]
    spec: Option<PathBuf>,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    max_ring: Option<usize>,
    #[arg(long)]
    max_lattice: Option<usize>,
    #[arg(long)]
    max_ideals: Option<usize>,
    #[arg(long)]
    max_iso_nodes: Option<u64>,
    #[arg(long)]
    gauss_pairs: Option<u64>,
    #[arg(long)]
    gauss_refutation_pairs: Option<u64>,
    #[arg(long)]
    subgroup_oracle_max: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::DEFAULT;
        Budget {
            max_ring: self.max_ring.unwrap_or(d.max_ring),
            max_lattice: self.max_lattice.unwrap_or(d.max_lattice),
            max_ideals: self.max_ideals.unwrap_or(d.max_ideals),
            max_iso_nodes: self.max_iso_nodes.unwrap_or(d.max_iso_nodes),
            gauss_pairs: self.gauss_pairs.unwrap_or(d.gauss_pairs),
            gauss_refutation_pairs: self.gauss_refutation_pairs.unwrap_or(d.gauss_refutation_pairs),
            subgroup_oracle_max: self.subgroup_oracle_max.unwrap_or(d.subgroup_oracle_max),
        }
    }
}

/// A command's failure and its exit status.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn failed(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

fn read_spec(path: Option<&Path>) -> Result<(String, SpecFile), Failure> {
    let (label, text) = match path {
        None => ("<built-in>".to_string(), DEFAULT_CATALOG.to_string()),
        Some(p) => (
            p.display().to_string(),
            std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        ),
    };
    match parse_spec(&text) {
        Ok(spec) => Ok((label, spec)),
        Err(errors) => {
            let mut msg = String::new();
            for e in errors {
                let _ = writeln!(msg, "{label}:{e}");
            }
            Err(usage(msg.trim_end()))
        }
    }
}

/// Prints `summary`, or the JSON instead when `--out -` is given.
fn emit(out: Option<&Path>, summary: &str, json: &str) -> Result<(), Failure> {
    match out {
        Some(p) if p == Path::new("-") => println!("{json}"),
        Some(p) => {
            std::fs::write(p, format!("{json}\n")).map_err(|e| failed(format!("{}: {e}", p.display())))?;
            print!("{summary}");
        }
        None => print!("{summary}"),
    }
    Ok(())
}

fn cmd_classify(target: &str, common: &Common, degree: usize) -> Result<(), Failure> {
    let budget = common.budget.budget();
    let (_, spec) = read_spec(common.spec.as_deref())?;
    let value = if target.trim_start().starts_with('(') {
        eval_with(&spec, target, &budget).map_err(failed)?
    } else {
        if spec.definition(target).is_none() {
            return Err(usage(format!("no entry named {target}")));
        }
        eval_with(&spec, target, &budget).map_err(|e| failed(format!("{target}: {e}")))?
    };
    let ring = value
        .ring()
        .ok_or_else(|| usage(format!("{target} is a {}, not a ring", value.kind())))?;
    let report = classify(ring, degree, &budget).map_err(|e| failed(e.to_string()))?;

    let mut s = format!(
        "{target}: {} elements, {} maximal ideal(s){}\n",
        report.size,
        report.maximal_ideals.len(),
        if report.zero_ring { ", zero ring (verdicts vacuous)" } else { "" }
    );
    for (name, v) in report.verdicts.named() {
        let _ = write!(s, "  {name:<24} {:<5}", v.value);
        if v.vacuous {
            s.push_str(" vacuous");
        }
        if let Some(w) = &v.witness {
            let _ = write!(s, " witness {} [{}]: {}", w.kind, w.items.join(", "), w.note);
        }
        s.push('\n');
    }
    let json = json!({ "target": target, "classification": report });
    emit(common.out.as_deref(), &s, &serde_json::to_string_pretty(&json).expect("serializable"))
}

fn cmd_verify(
    common: &Common,
    theorems: Option<Vec<String>>,
    degree: usize,
    jobs: Option<usize>,
) -> Result<(), Failure> {
    if let Some(ts) = &theorems {
        let known = theorem_ids();
        if let Some(bad) = ts.iter().find(|t| !known.contains(&t.as_str())) {
            return Err(usage(format!("unknown theorem id {bad}; known: {}", known.join(", "))));
        }
    }
    if jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let budget = common.budget.budget();
    let (_, spec) = read_spec(common.spec.as_deref())?;
    let catalog = Catalog::build(&spec, &budget);
    let config = SuiteConfig {
        budget,
        degree,
        theorems,
        jobs,
    };
    let report = run_catalog(&catalog, &config).map_err(|e| failed(e.to_string()))?;
    emit(common.out.as_deref(), &report.summary_text(), &report.to_json())?;
    if report.summary.passed {
        Ok(())
    } else {
        Err(failed(format!("{} failure(s)", report.summary.failures)))
    }
}

fn cmd_spectrum(target: &str, common: &Common) -> Result<(), Failure> {
    let budget = common.budget.budget();
    let (_, spec) = read_spec(common.spec.as_deref())?;
    if spec.definition(target).is_none() {
        return Err(usage(format!("no entry named {target}")));
    }
    let am = match eval_with(&spec, target, &budget).map_err(|e| failed(format!("{target}: {e}")))? {
        Value::Amalgamation(am) => am,
        v => return Err(usage(format!("{target} is a {}, not an amalgamation", v.kind()))),
    };
    let t = spectrum_transfer(&am, &budget).map_err(|e| failed(e.to_string()))?;
    let direct = spectrum(&am.carrier, &budget).map_err(|e| failed(e.to_string()))?;

    let mut s = format!("{target}: {} elements\n", am.carrier.size());
    let _ = writeln!(s, "direct spectrum ({} primes):", direct.primes.len());
    for p in &direct.primes {
        let max = direct.maximals.contains(p);
        let _ = writeln!(s, "  {p}{}", if max { "  max" } else { "" });
    }
    let _ = writeln!(s, "transferred:");
    for (p, q) in &t.lifts {
        let _ = writeln!(s, "  lift {p} -> {q}");
    }
    for (p, q) in &t.bars {
        let _ = writeln!(s, "  bar  {p} -> {q}");
    }
    let _ = writeln!(s, "Max partition: lift {}, bar {}", t.max_lifts, t.max_bars);
    for c in t.checks.iter().filter(|c| !c.ok) {
        let _ = writeln!(s, "FAIL {}: {}", c.name, c.detail);
    }
    let _ = writeln!(s, "match: {}", if t.ok() { "yes" } else { "no" });

    let names = |v: &[amalgam_core::Ideal]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>();
    let pairs = |v: &[(amalgam_core::Ideal, amalgam_core::Ideal)]| {
        v.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>()
    };
    let json = json!({
        "target": target,
        "size": am.carrier.size(),
        "direct": { "primes": names(&direct.primes), "maximals": names(&direct.maximals) },
        "lifts": pairs(&t.lifts),
        "bars": pairs(&t.bars),
        "max_partition": { "lift": t.max_lifts, "bar": t.max_bars },
        "match": t.ok(),
        "checks": t.checks,
    });
    emit(common.out.as_deref(), &s, &serde_json::to_string_pretty(&json).expect("serializable"))?;
    if t.ok() {
        Ok(())
    } else {
        Err(failed("spectra differ"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { target, common, degree } => cmd_classify(&target, &common, degree),
        Command::Verify {
            common,
            theorems,
            degree,
            jobs,
        } => cmd_verify(&common, theorems, degree, jobs),
        Command::Spectrum { target, common } => cmd_spectrum(&target, &common),
        Command::Catalog => {
            print!("{DEFAULT_CATALOG}");
            Ok(())
        }
        Command::Theorems => {
            for id in theorem_ids() {
                println!("{id}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("amalgam: {msg}");
            ExitCode::from(code)
        }
    }
}
