use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use lietori::classify::{
    decide_isomorphic, exceptional_lookup, run_tables, Bounds, ClosedFormInput, ExceptionalFilter,
};
use lietori::invariants::{invariant_tuple, DEFAULT_COSET_BUDGET};
use lietori::io::{check_limits, parse_delta, parse_quantum, to_sorted_json, ModelFile};
use lietori::lietorus::{verify_axioms, ConstructionParams, LieTorusModel};

#[derive(Debug, Error)]
enum CliError {
    /// Bad flags, unreadable files, malformed input, inadmissible parameters.
    #[error("{0}")]
    Usage(String),
    /// A check ran and failed.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Failure(_) => 1,
            Self::Usage(_) => 2,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sl,
    Su,
    Sp,
    O,
}

#[derive(Debug, Parser)]
#[command(name = "lietori", version, about = "Classical centreless Lie tori: construction, invariants, classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate parameters and write a model file.
    Build {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        r: usize,
        /// Quantum factor Q(ζ_M^e) as `M:e`; repeatable (sl only).
        #[arg(long)]
        quantum: Vec<String>,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<u8>,
        /// Number of diagonal entries (su only); must match --delta.
        #[arg(long)]
        m: Option<usize>,
        /// Hermitian degrees `v1;v2;…`, each a comma-separated vector (su only).
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the invariant tuple of a model.
    Invariants { path: PathBuf },
    /// Check the Lie torus axioms on a degree box; exit 1 on any failure.
    Verify {
        path: PathBuf,
        #[arg(long = "box", default_value_t = 2)]
        box_radius: i64,
    },
    /// Run the closed-form reproduction harness and disjointness scan.
    Tables {
        /// Scan bounds as `key=value` pairs, e.g. `r=3,q=1`.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Decide isomorphism of two model files where the invariants allow it.
    DecideIso { a: PathBuf, b: PathBuf },
    /// Print rows of the exceptional table.
    Exceptional {
        #[arg(long, conflicts_with = "root_type")]
        id: Option<usize>,
        #[arg(long = "type")]
        root_type: Option<String>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LIETORI_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("LIETORI_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(usage)
}

fn load(path: &Path) -> Result<ConstructionParams, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let file = ModelFile::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    file.params().map_err(usage)
}

fn load_model(path: &Path) -> Result<LieTorusModel, CliError> {
    LieTorusModel::construct(load(path)?).map_err(usage)
}

fn emit<T: serde::Serialize>(value: &T) {
    println!("{}", to_sorted_json(value));
}

#[allow(clippy::too_many_arguments)]
fn build_params(
    family: FamilyArg,
    r: usize,
    quantum: &[String],
    q: usize,
    k: Option<usize>,
    p: Option<u8>,
    m: Option<usize>,
    delta: Option<&str>,
) -> Result<ConstructionParams, CliError> {
    let reject = |flag: &str, fam: &str| usage(format!("--{flag} does not apply to family {fam}"));
    if !quantum.is_empty() && !matches!(family, FamilyArg::Sl) {
        return Err(reject("quantum", "other than sl"));
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required")));
    let params = match family {
        FamilyArg::Sl => {
            if k.is_some() || p.is_some() || m.is_some() || delta.is_some() {
                return Err(reject("k/--p/--m/--delta", "sl"));
            }
            let quantum = quantum.iter().map(|s| parse_quantum(s)).collect::<Result<_, _>>().map_err(usage)?;
            ConstructionParams::Sl { r, quantum, q }
        }
        FamilyArg::O => {
            if k.is_some() || p.is_some() || m.is_some() || delta.is_some() {
                return Err(reject("k/--p/--m/--delta", "o"));
            }
            ConstructionParams::O { r, q }
        }
        FamilyArg::Sp => {
            if m.is_some() || delta.is_some() {
                return Err(reject("m/--delta", "sp"));
            }
            ConstructionParams::Sp { r, k: need(k, "k")?, p: p.ok_or_else(|| usage("--p is required"))?, q }
        }
        FamilyArg::Su => {
            let k = need(k, "k")?;
            let p = p.ok_or_else(|| usage("--p is required"))?;
            let rank = 2 * k + p as usize + q;
            let delta = match delta {
                Some(s) => parse_delta(s).map_err(usage)?,
                // a single zero vector is the only choice with m = 1
                None if m == Some(1) => vec![vec![0; rank]],
                None => return Err(usage("--delta is required unless --m 1")),
            };
            if let Some(m) = m {
                if m != delta.len() {
                    return Err(usage(format!("--m {m} but --delta lists {} vectors", delta.len())));
                }
            }
            ConstructionParams::Su { r, k, p, q, delta }
        }
    };
    Ok(params)
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Build { family, r, quantum, q, k, p, m, delta, out } => {
            let params = build_params(family, r, &quantum, q, k, p, m, delta.as_deref())?;
            check_limits(&params).map_err(usage)?;
            let model = LieTorusModel::construct(params).map_err(usage)?;
            let file = ModelFile::new(&model);
            fs::write(&out, file.to_json() + "\n").map_err(|e| usage(format!("{}: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
        }
        Command::Invariants { path } => {
            let model = load_model(&path)?;
            let tuple = invariant_tuple(&model, DEFAULT_COSET_BUDGET).map_err(usage)?;
            emit(&tuple);
        }
        Command::Verify { path, box_radius } => {
            if box_radius < 0 {
                return Err(usage("--box must be non-negative"));
            }
            let model = load_model(&path)?;
            let report = verify_axioms(&model, box_radius);
            emit(&report);
            if !report.passed() {
                return Err(CliError::Failure("axiom verification failed".into()));
            }
            eprintln!("all checks passed");
        }
        Command::Tables { bounds } => {
            let bounds: Bounds = match bounds {
                Some(s) => s.parse().map_err(usage)?,
                None => Bounds::default(),
            };
            let report = run_tables(&bounds).map_err(usage)?;
            emit(&report);
            let matched = report.rows.iter().filter(|r| r.matches).count();
            eprintln!("{matched}/{} rows match; disjointness passed: {}", report.rows.len(), report.disjointness.passed);
            if !report.all_match || !report.disjointness.passed || !report.f_injectivity.passed {
                return Err(CliError::Failure("reproduction harness reported a mismatch".into()));
            }
        }
        Command::DecideIso { a, b } => {
            let a = ClosedFormInput::new(load(&a)?).map_err(usage)?;
            let b = ClosedFormInput::new(load(&b)?).map_err(usage)?;
            emit(&decide_isomorphic(&a, &b).map_err(usage)?);
        }
        Command::Exceptional { id, root_type } => {
            let root_type = root_type.map(|t| t.parse()).transpose().map_err(usage)?;
            let rows = exceptional_lookup(&ExceptionalFilter { id, root_type, crk: None });
            if rows.is_empty() && id.is_some() {
                return Err(usage(format!("no exceptional row with id {}", id.unwrap_or_default())));
            }
            emit(&rows);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, matching the contract
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
