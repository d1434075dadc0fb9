//! `ardehali` command-line front end.
//!
//! Exit codes: 0 success (or CERTIFIED), 2 invalid input, 3 NOT_MAXIMAL,
//! 4 CONDITIONS_VIOLATED.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ardehali::characterization::random_rotated_ghz;
use ardehali::io::{
    Certificate, OptimizeOutput, ReportRow, SettingsFile, StateFile, UnitariesFile,
};
use ardehali::tolerances::{CERTIFY_DEFAULT, LHV_ENUMERATION_CAP};
use ardehali::{
    canonical_settings, certify_maximal_violation, ghz_state, see_saw, w_state, Config,
    OptimizationConfig, StateVector, Verdict,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_MAXIMAL: u8 = 3;
const EXIT_CONDITIONS_VIOLATED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ardehali",
    version,
    about = "Bell-Ardehali bounds, optimization and GHZ certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical and quantum bounds with the GHZ value and violation factor.
    Bounds {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 10)]
        to: usize,
        /// Emit a JSON array of rows instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a state maximally violates the inequality and, if so,
    /// recover local unitaries that map GHZ onto it.
    Certify {
        #[arg(long)]
        state: PathBuf,
        #[arg(
            long,
            conflicts_with = "canonical",
            required_unless_present = "canonical"
        )]
        settings: Option<PathBuf>,
        #[arg(long)]
        canonical: bool,
        #[arg(long, default_value_t = CERTIFY_DEFAULT)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// See-saw search for settings that maximize the expectation on a state.
    Optimize {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        max_sweeps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a state file.
    MakeState {
        #[command(flatten)]
        kind: StateKind,
        /// Seed for --random-lu-ghz.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; --random-lu-ghz also writes `<stem>.unitaries.json`
        /// and `<stem>.settings.json` next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateKind {
    #[arg(long, value_name = "N")]
    ghz: Option<usize>,
    #[arg(long, value_name = "N")]
    w: Option<usize>,
    #[arg(long, value_name = "N")]
    random_lu_ghz: Option<usize>,
}

struct Invalid(String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

type CliResult = std::result::Result<u8, Invalid>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
    };
    ExitCode::from(code)
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Bounds { from, to, json } => cmd_bounds(from, to, json),
        Command::Certify {
            state,
            settings,
            canonical: _,
            tol,
            out,
        } => cmd_certify(&state, settings.as_deref(), tol, out.as_deref()),
        Command::Optimize {
            state,
            restarts,
            seed,
            max_sweeps,
            out,
        } => {
            let cfg = OptimizationConfig {
                restarts,
                seed,
                max_sweeps,
                ..Default::default()
            };
            cmd_optimize(&state, &cfg, out.as_deref())
        }
        Command::MakeState { kind, seed, out } => cmd_make_state(kind, seed, out.as_deref()),
    }
}

fn cmd_bounds(from: usize, to: usize, json: bool) -> CliResult {
    if from < 2 || to > LHV_ENUMERATION_CAP || from > to {
        return Err(Invalid(format!(
            "invalid range {from}..={to}: n must satisfy 2 <= n <= {LHV_ENUMERATION_CAP} \
             (exhaustive LHV enumeration cap is {LHV_ENUMERATION_CAP})"
        )));
    }
    let rows = (from..=to)
        .map(ReportRow::compute)
        .collect::<ardehali::Result<Vec<_>>>()?;
    if json {
        emit(&rows, None)?;
        return Ok(0);
    }
    println!(
        "{:>3}  {:>10} {:>9} {:>4}  {:>12} {:>10}  {:>12}  {:>10} {:>9}",
        "n", "classical", "", "lhv", "quantum", "", "ghz", "factor", ""
    );
    for r in &rows {
        println!(
            "{:>3}  {:>10.6} {:>9} {:>4}  {:>12.6} {:>10}  {:>12.6}  {:>10.6} {:>9}",
            r.n,
            r.classical_bound,
            r.classical_bound_exact,
            if r.lhv_confirmed { "ok" } else { "FAIL" },
            r.quantum_bound,
            r.quantum_bound_exact,
            r.ghz_value,
            r.violation_factor,
            r.violation_factor_exact
        );
    }
    Ok(0)
}

fn cmd_certify(state: &Path, settings: Option<&Path>, tol: f64, out: Option<&Path>) -> CliResult {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Invalid(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let state = load_state(state)?;
    let settings = match settings {
        Some(path) => read_json::<SettingsFile>(path)?.to_settings()?,
        None => canonical_settings(state.n())?,
    };
    let report = certify_maximal_violation(&state, &settings, tol)?;
    emit(&Certificate::from(&report), out)?;
    Ok(match report.verdict {
        Verdict::Certified => 0,
        Verdict::NotMaximal => EXIT_NOT_MAXIMAL,
        Verdict::ConditionsViolated => EXIT_CONDITIONS_VIOLATED,
    })
}

fn cmd_optimize(state: &Path, cfg: &OptimizationConfig, out: Option<&Path>) -> CliResult {
    if cfg.restarts == 0 || cfg.max_sweeps == 0 {
        return Err(Invalid(
            "--restarts and --max-sweeps must be positive".into(),
        ));
    }
    let state = load_state(state)?;
    let result = see_saw(&state, cfg)?;
    if out.is_some() {
        eprintln!("best value {:.12}", result.best_value);
    }
    emit(&OptimizeOutput::new(&result, cfg.restarts, cfg.seed), out)?;
    Ok(0)
}

fn cmd_make_state(kind: StateKind, seed: Option<u64>, out: Option<&Path>) -> CliResult {
    let guard = |n: usize| -> std::result::Result<usize, Invalid> {
        if n < 2 {
            return Err(Invalid(format!("need at least 2 qubits, got {n}")));
        }
        // state vectors are far cheaper than dense operators; allow twice the cap
        let cap = 2 * Config::from_env().dense_qubit_cap;
        if n > cap {
            return Err(Invalid(format!(
                "{n} qubits exceeds the state cap of {cap}"
            )));
        }
        Ok(n)
    };
    if seed.is_some() && kind.random_lu_ghz.is_none() {
        return Err(Invalid("--seed only applies to --random-lu-ghz".into()));
    }
    let state = match kind {
        StateKind { ghz: Some(n), .. } => ghz_state(guard(n)?)?,
        StateKind { w: Some(n), .. } => w_state(guard(n)?)?,
        StateKind {
            random_lu_ghz: Some(n),
            ..
        } => {
            let seed = seed.ok_or_else(|| Invalid("--random-lu-ghz needs --seed".into()))?;
            let out = out.ok_or_else(|| Invalid("--random-lu-ghz needs --out".into()))?;
            let rotated = random_rotated_ghz(guard(n)?, &mut ChaCha8Rng::seed_from_u64(seed))?;
            emit(
                &UnitariesFile::from_unitaries(&rotated.unitaries),
                Some(&companion(out, "unitaries")),
            )?;
            emit(
                &SettingsFile::from_settings(&rotated.settings),
                Some(&companion(out, "settings")),
            )?;
            rotated.state
        }
        _ => unreachable!("clap enforces exactly one state kind"),
    };
    emit(&StateFile::from_state(&state), out)?;
    Ok(0)
}

/// `dir/ghz.json` -> `dir/ghz.<tag>.json`.
fn companion(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("state");
    path.with_file_name(format!("{stem}.{tag}.json"))
}

fn load_state(path: &Path) -> std::result::Result<StateVector, Invalid> {
    Ok(read_json::<StateFile>(path)?.to_state()?)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, Invalid> {
    let text = fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

/// Pretty JSON to `out` (atomically, via a sibling temp file) or stdout.
fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> std::result::Result<(), Invalid> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path)
                .map_err(|e| Invalid(e.error.to_string()))?;
        }
    }
    Ok(())
}
