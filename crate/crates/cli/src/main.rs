use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclic_quiver::wreath::Representation;
use cyclic_quiver_cli::commands::{self, SampleKind};
use cyclic_quiver_cli::config::{DEFAULT_MAX_DEGREE, DEFAULT_TOL, DEFAULT_TRIALS};
use cyclic_quiver_cli::{InputError, Report, RunConfig};

#[derive(Parser)]
#[command(
    name = "cyclic-quiver",
    version,
    about = "Verify restriction theorems for the cyclic quiver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Restriction to the diagonal slice for the single quiver.
    VerifyChevalley(Common),
    /// Restriction to pairs of diagonal points for the doubled quiver.
    VerifyDouble(Common),
    /// Canonical form of a point read from --input.
    NormalForm(Common),
    /// Molien series of the wreath group on L or L x L.
    Molien {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Rep::L)]
        rep: Rep,
    },
    /// Degree-by-degree generation of the invariant ring.
    Generation {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Rep::Ll)]
        rep: Rep,
        /// Largest generator degree; defaults to the degree being checked.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Jacobian of the quotient map against the product formula.
    Jacobian(Common),
    /// Seeded random points as JSON.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SampleKind::Rep)]
        kind: SampleKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    L,
    Ll,
}

impl From<Rep> for Representation {
    fn from(r: Rep) -> Self {
        match r {
            Rep::L => Representation::L,
            Rep::Ll => Representation::LL,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Leave wall time out of the report so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

impl Common {
    fn read_input(&self) -> Result<Option<String>, InputError> {
        self.input
            .as_ref()
            .map(|path| {
                std::fs::read_to_string(path)
                    .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
            })
            .transpose()
    }

    fn config(&self) -> RunConfig {
        RunConfig {
            n: self.n,
            m: self.m,
            trials: self.trials,
            seed: self.seed,
            tol: self.tol,
            max_degree: self.max_degree,
        }
    }
}

enum Output {
    Report(Report),
    Json(serde_json::Value),
}

fn run(command: &Command) -> Result<Output, InputError> {
    Ok(match command {
        Command::VerifyChevalley(c) => Output::Report(commands::verify_chevalley(
            &c.config(),
            c.read_input()?.as_deref(),
        )?),
        Command::VerifyDouble(c) => Output::Report(commands::verify_double(
            &c.config(),
            c.read_input()?.as_deref(),
        )?),
        Command::NormalForm(c) => {
            let text = c
                .read_input()?
                .ok_or_else(|| InputError("normal-form needs --input".into()))?;
            Output::Report(commands::normal_form(&text, &c.config())?)
        }
        Command::Molien { common, rep } => {
            Output::Report(commands::molien(&common.config(), (*rep).into())?)
        }
        Command::Generation {
            common,
            rep,
            cutoff,
        } => Output::Report(commands::generation(
            &common.config(),
            (*rep).into(),
            *cutoff,
        )?),
        Command::Jacobian(c) => Output::Report(commands::jacobian(&c.config())?),
        Command::Sample { common, kind } => {
            Output::Json(commands::sample(&common.config(), *kind)?)
        }
    })
}

fn common(command: &Command) -> &Common {
    match command {
        Command::VerifyChevalley(c)
        | Command::VerifyDouble(c)
        | Command::NormalForm(c)
        | Command::Jacobian(c) => c,
        Command::Molien { common, .. }
        | Command::Generation { common, .. }
        | Command::Sample { common, .. } => common,
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), InputError> {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(InputError(format!("cannot write to stdout: {e}")));
        }
    }
    if let Some(path) = path {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = common(&cli.command);
    let start = Instant::now();
    let outcome = run(&cli.command).and_then(|out| match out {
        Output::Report(mut report) => {
            if !opts.no_timing {
                report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            emit(&report.to_json(), opts.json_out.as_deref())?;
            for check in report.checks.iter().filter(|c| !c.passed) {
                eprintln!(
                    "FAIL {}: residual {:?}, margin {:?}",
                    check.name, check.residual, check.margin
                );
            }
            Ok(report.pass)
        }
        Output::Json(value) => {
            emit(
                &serde_json::to_string_pretty(&value).expect("serializes"),
                opts.json_out.as_deref(),
            )?;
            Ok(true)
        }
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
