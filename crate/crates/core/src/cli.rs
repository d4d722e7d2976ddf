//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cech::{hodge_table, CechComplex, CechNerve};
use crate::cellular::{cohomology_cells, homology_cells};
use crate::checks;
use crate::complex::{parse_complex, ComplexSummary, SimplicialComplex};
use crate::corpus;
use crate::error::{Error, Result};
use crate::kernel::{build_kernel, parse_point, validate, PolyFunction, QuadratureSpec};
use crate::linalg::Coefficients;
use crate::resolvent::{build_resolvent, pair_resolvent};
use crate::rk::{cohomology_rk_with, FaultInjection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mac-hodge",
    version,
    about = "Bigraded cohomology, Hodge filtration and integral kernels for coordinate subspace arrangement complements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a complex and print its facets, minimal non-faces and face counts.
    Complex { path: PathBuf },
    /// Bigraded cohomology table from one model.
    Cohomology {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Rk)]
        model: Model,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Run all three models and compare their tables.
    Compare {
        #[arg(required_unless_present = "corpus")]
        path: Option<PathBuf>,
        /// Compare over the built-in corpus instead of a file.
        #[arg(long, conflicts_with = "path")]
        corpus: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Hodge numbers and the filtration F^k H^s.
    Hodge { path: PathBuf },
    /// Resolvent of a homology generator of type (p, q).
    Resolvent {
        path: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Kernel data for F^n H^s.
    Kernel {
        path: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Evaluate the integral representation of a polynomial at a point.
    VerifyKernel {
        path: PathBuf,
        #[arg(long)]
        s: usize,
        /// Polynomial such as "1+z1^2*z2^3".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Comma-separated complex coordinates such as "0.3,-0.4+0.1i".
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, default_value_t = 128)]
        nodes: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Rk,
    Cell,
    Cech,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Z,
    Q,
}

impl From<Coeff> for Coefficients {
    fn from(c: Coeff) -> Self {
        match c {
            Coeff::Z => Coefficients::Integers,
            Coeff::Q => Coefficients::Rationals,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// What a command produced. Wall-clock time is kept out of the JSON so that
/// identical invocations give identical files; it goes to stderr instead.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub artifacts: Map<String, Value>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl RunReport {
    fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            input_sha256: None,
            artifacts: Map::new(),
            checks: Vec::new(),
            error: None,
            exit_code: EXIT_OK,
            elapsed_ms: 0,
        }
    }

    fn artifact(&mut self, key: &str, v: Value) {
        self.artifacts.insert(key.to_string(), v);
    }

    fn check(&mut self, name: impl Into<String>, outcome: checks::Check) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        self.checks.push(CheckRecord {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Exit code for a library error.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NonzeroComposition(_) | Error::Resolvent(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

fn load(path: &Path, report: &mut RunReport) -> Result<SimplicialComplex> {
    let bytes = std::fs::read(path)?;
    report.input_sha256 = Some(hex::encode(Sha256::digest(&bytes)));
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    parse_complex(&text)
}

/// Parses `args` (including the program name), runs the command, prints the
/// human-readable result and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let report = execute(&cli.command, echo);
    eprintln!("elapsed: {} ms", report.elapsed_ms);
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json_string()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    report.exit_code
}

/// Runs a command and returns its report without touching the filesystem
/// beyond reading the input.
pub fn execute(command: &Command, echo: Vec<String>) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new(echo);
    let outcome = dispatch(command, &mut report);
    report.exit_code = match outcome {
        Err(e) => {
            report.error = Some(e.to_string());
            exit_code_for(&e)
        }
        Ok(()) if report.all_passed() => EXIT_OK,
        Ok(()) => EXIT_CHECK_FAILED,
    };
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

fn fault(inject: bool) -> FaultInjection {
    if inject {
        FaultInjection::FlipFirstSign
    } else {
        FaultInjection::None
    }
}

fn dispatch(command: &Command, report: &mut RunReport) -> Result<()> {
    match command {
        Command::Complex { path } => {
            let k = load(path, report)?;
            let summary = ComplexSummary::from(&k);
            println!("{}", serde_json::to_string_pretty(&summary)?);
            report.artifact("complex", serde_json::to_value(&summary)?);
        }
        Command::Cohomology {
            path,
            model,
            coeff,
            inject_fault,
        } => {
            let k = load(path, report)?;
            let coeff = Coefficients::from(*coeff);
            let table = match model {
                Model::Rk => cohomology_rk_with(&k, coeff, fault(*inject_fault))?,
                Model::Cell => cohomology_cells(&k, coeff)?,
                Model::Cech if coeff == Coefficients::Integers => {
                    return Err(Error::Precondition(
                        "the log-Čech model has rational coefficients; use --coeff q".into(),
                    ))
                }
                Model::Cech => CechComplex::new(&k, CechNerve::Flags)?.cohomology(),
            };
            print!("{table}");
            report.artifact("table", table.to_json());
        }
        Command::Compare {
            path,
            corpus: use_corpus,
            inject_fault,
        } => {
            let entries = match path {
                Some(p) => vec![corpus::CorpusEntry {
                    name: p.display().to_string(),
                    complex: load(p, report)?,
                }],
                None if *use_corpus => corpus::corpus(),
                None => return Err(Error::Precondition("no input".into())),
            };
            let mut results = Vec::new();
            for e in &entries {
                let outcome = checks::models_agree_with(&e.complex, fault(*inject_fault));
                match &outcome {
                    Ok(()) => println!("agree     {}", e.name),
                    Err(d) => println!("DISAGREE  {}: {d}", e.name),
                }
                results.push(json!({ "name": e.name, "agree": outcome.is_ok() }));
                report.check(format!("{}: models agree", e.name), outcome);
            }
            report.artifact("complexes", Value::Array(results));
        }
        Command::Hodge { path } => {
            let k = load(path, report)?;
            let h = hodge_table(&k)?;
            print!("{h}");
            report.artifact("hodge", h.to_json());
            report.check("filtration from ranks", checks::hodge_two_ways(&k));
        }
        Command::Resolvent { path, p, q, index } => {
            let k = load(path, report)?;
            let h = homology_cells(&k, Coefficients::Rationals)?;
            let cycles = h.cycles(*p, *q);
            let cycle = cycles.get(*index).ok_or(Error::ClassIndex {
                p: *p,
                q: *q,
                index: *index,
                rank: cycles.len(),
            })?;
            let r = build_resolvent(&k, cycle)?;
            report.check("resolvent identities", Ok(()));
            let cocycles = CechComplex::new(&k, CechNerve::Flags)?.cocycles(*p, *q)?;
            let pairings = cocycles
                .iter()
                .map(|w| pair_resolvent(w, &r).map(|x| x.to_json()))
                .collect::<Result<Vec<_>>>()?;
            println!("cycle: {cycle}");
            for (j, g) in r.pieces.iter().enumerate() {
                println!("piece {j}: {} tuples", g.values().count());
            }
            report.artifact("resolvent", r.to_json());
            report.artifact("pairings", Value::Array(pairings));
        }
        Command::Kernel { path, s } => {
            let k = load(path, report)?;
            let kd = build_kernel(&k, *s)?;
            let c = kd.normalization();
            println!("raw pairing: {}", kd.raw);
            println!("scale: {}", kd.scale);
            println!("normalization: {c}");
            report.check(
                "normalized pairing is 1",
                if c.tau_power() == 0 && c.coeff() == &num_rational::BigRational::from_integer(1.into()) {
                    Ok(())
                } else {
                    Err(format!("got {c}"))
                },
            );
            report.artifact("kernel", kd.to_json());
        }
        Command::VerifyKernel {
            path,
            s,
            f,
            zeta,
            nodes,
            tolerance,
        } => {
            let k = load(path, report)?;
            let spec = QuadratureSpec::new(*nodes)?;
            let f = PolyFunction::parse(f, k.n())?;
            let zeta = parse_point(zeta)?;
            let kd = build_kernel(&k, *s)?;
            let rec = validate(&kd, &f, &zeta, spec)?;
            println!(
                "expected {:+.15e} {:+.15e}i\ncomputed {:+.15e} {:+.15e}i\nabs error {:.3e} (N = {})",
                rec.expected[0], rec.expected[1], rec.computed[0], rec.computed[1], rec.abs_error, rec.nodes
            );
            report.check(
                format!("|computed - f(zeta)| <= {tolerance:e}"),
                if rec.abs_error <= *tolerance {
                    Ok(())
                } else {
                    Err(format!("error {:e}", rec.abs_error))
                },
            );
            report.artifact("validation", serde_json::to_value(&rec)?);
        }
    }
    Ok(())
}
