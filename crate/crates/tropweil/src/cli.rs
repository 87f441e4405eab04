//! Argument parsing, exit codes and the report envelope.
//!
//! Exit codes: 0 every claim holds (or none was made), 10 some claim is
//! contradicted, 1 input or IO error, 2 usage error, 3 internal failure
//! (a panic or a certificate that fails re-verification).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::commands::{self, Outcome};
use crate::report::{verdict_of, Certificate, Report, Timing, Verdict, TOOL, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_CONTRADICTS: i32 = 10;

#[derive(Parser, Debug)]
#[command(name = "tropweil", version, about = "Exact checks of the lambda-ansatz for tropical Weil classes")]
pub struct Cli {
    /// Seed for randomized verbs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, env = "TROPWEIL_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// No summary on standard error.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verb")]
pub enum Command {
    /// θ, w1, w2 in H^{2,2} and their expansions in T, with the index tables.
    Classes {
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// The Hodge kernel and membership of θ, w1, w2.
    Hodge {
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// Chain utilities.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Solve the lambda system, on the nose or modulo a sublattice.
    Solve {
        #[arg(long, default_value_t = 1)]
        d: i64,
        /// `w`, `theta`, `0` or a sublattice JSON file.
        #[arg(long = "mod")]
        modulus: Option<String>,
        /// Let the descent rows carry residuals too.
        #[arg(long)]
        slack_descent: bool,
        /// Write the lambda of a solution here.
        #[arg(long)]
        lambda_out: Option<PathBuf>,
    },
    /// Decide every proper sublattice of W.
    Scan {
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// Check a candidate lambda against chains.
    Verify {
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long = "mod", default_value = "w")]
        modulus: String,
        #[arg(long)]
        chains: PathBuf,
    },
    /// Randomized internal invariants.
    Selftest {
        #[arg(long, default_value_t = 64)]
        cases: u64,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "action")]
pub enum ChainCommand {
    /// Balancing, α and vol of a chain file.
    Check { file: PathBuf },
    /// Subdivide a polygon loop into cells.
    Subdivide {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classes { .. } => "classes",
            Command::Hodge { .. } => "hodge",
            Command::Chain(ChainCommand::Check { .. }) => "chain check",
            Command::Chain(ChainCommand::Subdivide { .. }) => "chain subdivide",
            Command::Solve { .. } => "solve",
            Command::Scan { .. } => "scan",
            Command::Verify { .. } => "verify",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn check_d(d: i64) -> anyhow::Result<()> {
    if d < 1 {
        anyhow::bail!("d must be a positive integer, got {d}");
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Classes { d } => check_d(*d).and_then(|_| commands::classes::classes(*d)),
        Command::Hodge { d } => check_d(*d).and_then(|_| commands::hodge::hodge(*d)),
        Command::Chain(ChainCommand::Check { file }) => commands::chain::check(file),
        Command::Chain(ChainCommand::Subdivide { file, out }) => commands::chain::subdivide(file, out.as_deref()),
        Command::Solve { d, modulus, slack_descent, lambda_out } => {
            check_d(*d)?;
            commands::obstruction::solve(&commands::obstruction::SolveArgs {
                d: *d,
                modulus: modulus.as_deref(),
                slack_descent: *slack_descent,
                lambda_out: lambda_out.as_deref(),
            })
        }
        Command::Scan { d } => check_d(*d).and_then(|_| commands::obstruction::scan(*d)),
        Command::Verify { lambda, modulus, chains } => commands::obstruction::verify(lambda, modulus, chains),
        Command::Selftest { cases } => commands::selftest::selftest(cli.seed, *cases),
    }
}

fn millis_since_epoch() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_ERROR;
        }
    };
    let start = Instant::now();
    let outcome = pool.install(|| catch_unwind(AssertUnwindSafe(|| dispatch(&cli))));
    let outcome = match outcome {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            return EXIT_ERROR;
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            let _ = writeln!(err, "internal error: {msg}");
            return EXIT_INTERNAL;
        }
    };

    let verdict = verdict_of(&outcome.claims);
    let exit_code = if outcome.internal_failure.is_some() {
        EXIT_INTERNAL
    } else if verdict == Verdict::Contradicts {
        EXIT_CONTRADICTS
    } else {
        EXIT_OK
    };
    let certificates: BTreeMap<_, _> =
        outcome.certificates.into_iter().map(|(k, v)| (k, Certificate::new(v))).collect();
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: cli.command.name().to_string(),
        args: serde_json::to_value(&cli.command).unwrap_or_default(),
        d: outcome.d,
        seed: cli.seed,
        threads: pool.current_num_threads(),
        verdict,
        exit_code,
        claims: outcome.claims,
        result: outcome.result,
        certificates,
        timing: Timing { elapsed_ms: start.elapsed().as_millis(), finished_unix_ms: millis_since_epoch() },
    };
    let text = match serde_json::to_string_pretty(&report) {
        Ok(t) => t + "\n",
        Err(e) => {
            let _ = writeln!(err, "internal error: cannot serialize report: {e}");
            return EXIT_INTERNAL;
        }
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_ERROR;
    }
    if !cli.quiet {
        let _ = writeln!(err, "{}", outcome.summary);
        for c in report.claims.iter().filter(|c| !c.holds()) {
            let _ = writeln!(err, "contradicted: {} ({})", c.id, c.statement);
        }
        if let Some(f) = &outcome.internal_failure {
            let _ = writeln!(err, "internal failure: {f}");
        }
    }
    exit_code
}
