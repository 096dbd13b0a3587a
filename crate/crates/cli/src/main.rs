use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fpdim_cli::commands::{self, parse_list, SearchArgs};
use fpdim_cli::dsl::FieldChoice;
use fpdim_cli::recheck::recheck_file;
use fpdim_cli::report::{write_atomic, Report};
use fpdim_cli::suites::{self, SUITES};
use fpdim_cli::{CliError, Outcome};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fpdim", version, about = "Bricks, Ext and Frobenius-Perron dimensions of bound quiver algebras")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print a short plain-text summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility of the ideal and, with loops, the commutativity condition.
    Check {
        file: PathBuf,
        #[arg(long, value_parser = FieldChoice::parse)]
        field: Option<FieldChoice>,
        /// Longest path length examined.
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// List bricks below a dimension cap.
    Bricks {
        file: PathBuf,
        /// Per-vertex dimension cap, e.g. 2,2,1.
        #[arg(long)]
        cap: String,
        #[arg(long, value_parser = FieldChoice::parse)]
        field: Option<FieldChoice>,
        /// Search-tree nodes allowed per dimension vector.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Largest spectral radius of an Ext adjacency matrix over brick sets.
    Fpdim {
        file: PathBuf,
        #[arg(long)]
        cap: String,
        #[arg(long, default_value_t = 4)]
        max_set: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_parser = FieldChoice::parse)]
        field: Option<FieldChoice>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare bricks, Hom and Ext with and without the loops.
    Loopcheck {
        file: PathBuf,
        /// Dimension cap for bricks (default all ones).
        #[arg(long)]
        cap: Option<String>,
        /// Dimension cap for the module pairs compared on Ext (default all ones).
        #[arg(long)]
        module_cap: Option<String>,
        #[arg(long, value_parser = FieldChoice::parse)]
        field: Option<FieldChoice>,
    },
    /// Evaluate closed forms.
    Formula {
        #[command(subcommand)]
        which: Formula,
    },
    /// Ext between one-dimensional modules of a polynomial ring.
    Polyext {
        #[arg(long)]
        r: usize,
        /// Comma-separated point, e.g. 1,0.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, value_parser = FieldChoice::parse, default_value = "Q")]
        field: FieldChoice,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// Recompute the numbers in a report from its certificate.
    Recheck { report: PathBuf },
}

#[derive(Subcommand)]
enum Formula {
    /// (n + √(n² + 4)) / 2.
    Case2 {
        #[arg(long)]
        nmax: u32,
    },
    /// The loop run of length s on one arm.
    Case3 {
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        s: u32,
    },
    /// Largest root of f(x) - 1 for f given as ROOT:MULT factors.
    Root {
        #[arg(long)]
        factors: String,
    },
}

fn cap_arg(s: &Option<String>) -> Result<Option<Vec<usize>>, CliError> {
    s.as_deref().map(|c| parse_list(c, "cap")).transpose()
}

fn verify(name: &str) -> Result<Outcome, CliError> {
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(CliError::Input(format!("unknown suite {name:?}; choose one of {SUITES:?} or all")));
    };
    let outcomes: Vec<_> = names.iter().filter_map(|n| suites::run(n)).collect();
    let passed = outcomes.iter().all(|o| o.passed);
    let mut report = Report::new("verify", json!({ "suite": name }), json!({ "passed": passed, "suites": outcomes }));
    for o in &outcomes {
        report.summary.push(format!(
            "{} {} ({:.1} s)",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.seconds
        ));
        report.summary.extend(o.lines.iter().map(|l| format!("  {l}")));
        report.summary.extend(o.failures.iter().map(|l| format!("  failure: {l}")));
    }
    Ok(Outcome::new(report, passed))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { file, field, max_len } => commands::check(file, *field, *max_len),
        Command::Bricks { file, cap, field, budget } => {
            let args = SearchArgs {
                cap: parse_list(cap, "cap")?,
                field: *field,
                budget: *budget,
            };
            commands::bricks(file, &args)
        }
        Command::Fpdim {
            file,
            cap,
            max_set,
            tol,
            field,
            budget,
        } => {
            let args = SearchArgs {
                cap: parse_list(cap, "cap")?,
                field: *field,
                budget: *budget,
            };
            commands::fpdim(file, &args, *max_set, *tol)
        }
        Command::Loopcheck {
            file,
            cap,
            module_cap,
            field,
        } => commands::loopcheck(file, cap_arg(cap)?, cap_arg(module_cap)?, *field),
        Command::Formula { which } => match which {
            Formula::Case2 { nmax } => commands::formula_case2(*nmax),
            Formula::Case3 { nmax, s } => commands::formula_case3(*nmax, *s),
            Formula::Root { factors } => commands::formula_root(factors),
        },
        Command::Polyext { r, lambda, mu, field } => commands::polyext(*r, lambda, mu, *field),
        Command::Verify { suite } => verify(suite),
        Command::Recheck { report } => recheck_file(report),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("fpdim: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let rendered = if cli.text {
        outcome.report.summary.join("\n") + "\n"
    } else {
        outcome.report.to_json() + "\n"
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &rendered) {
                eprintln!("fpdim: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{rendered}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(outcome.failure_code)
    }
}
