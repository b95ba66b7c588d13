use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hslab::suite::{embedded_fixtures, load_fixtures, run_suite, Context, Suite};
use hslab::table::{build_table, ehrhart_report, EhrhartMode, Family};

const MAX_N: usize = 6;
const MAX_R: usize = 4;

#[derive(Parser)]
#[command(
    name = "hslab",
    version,
    about = "Lattice points of hypercube slices and colored permutation statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "flag-eulerian")]
    FlagEulerian,
}

#[derive(Clone, Copy, ValueEnum)]
enum SliceArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Interpolate,
    ClosedForm,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Bijections,
    Lattice,
    Closedform,
    Series,
    Tableaux,
    Permstats,
}

#[derive(Subcommand)]
enum Command {
    /// Table of A- or B-slice polynomials, or of flag Eulerian numbers.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity checks; exit 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        /// Directory of golden table fixtures replacing the built-in ones.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ehrhart polynomial or series of a single slice.
    Ehrhart {
        #[arg(long, value_enum)]
        family: SliceArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "interpolate")]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Usage(String);

fn check_limits(n: usize, r: usize) -> Result<(), Usage> {
    if n > MAX_N {
        return Err(Usage(format!("n = {n} exceeds the limit {MAX_N}")));
    }
    if r == 0 || r > MAX_R {
        return Err(Usage(format!("r = {r} must lie in 1..={MAX_R}")));
    }
    Ok(())
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Usage> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn threads() -> Result<Option<usize>, Usage> {
    match std::env::var("HSLAB_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Usage(format!(
                "HSLAB_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    match cli.command {
        Command::Table {
            family,
            n,
            r,
            format,
            out,
        } => {
            check_limits(n, r)?;
            let family = match family {
                FamilyArg::A => Family::A,
                FamilyArg::B => Family::B,
                FamilyArg::FlagEulerian => Family::FlagEulerian,
            };
            let table = build_table(family, n, r).map_err(|e| Usage(e.to_string()))?;
            let text = match format {
                Format::Json => table.to_json(),
                Format::Csv => table.to_csv(),
            };
            emit(&text, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ehrhart {
            family,
            n,
            r,
            k,
            mode,
            out,
        } => {
            check_limits(n, r)?;
            let family = match family {
                SliceArg::A => Family::A,
                SliceArg::B => Family::B,
            };
            let mode = match mode {
                ModeArg::Interpolate => EhrhartMode::Interpolate,
                ModeArg::ClosedForm => EhrhartMode::ClosedForm,
                ModeArg::Series => EhrhartMode::Series,
            };
            let report = ehrhart_report(family, n, r, k, mode).map_err(|e| Usage(e.to_string()))?;
            emit(&report.to_json(), out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_n,
            max_r,
            fixtures,
            out,
        } => {
            check_limits(max_n, max_r)?;
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Bijections => Suite::Bijections,
                SuiteArg::Lattice => Suite::Lattice,
                SuiteArg::Closedform => Suite::Closedform,
                SuiteArg::Series => Suite::Series,
                SuiteArg::Tableaux => Suite::Tableaux,
                SuiteArg::Permstats => Suite::Permstats,
            };
            let fixtures = match fixtures {
                Some(dir) => load_fixtures(&dir).map_err(|e| Usage(e.to_string()))?,
                None => embedded_fixtures(),
            };
            let ctx = Context {
                max_n,
                max_r,
                fixtures,
            };
            let report = run_suite(suite, &ctx, threads()?).map_err(|e| Usage(e.to_string()))?;
            emit(&report.to_json(), out)?;
            for failure in report.failures() {
                let witness = failure
                    .witness
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                eprintln!("FAILED {}: {witness}", failure.identity);
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
