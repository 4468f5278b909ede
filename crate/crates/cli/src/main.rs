use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopftwist::catalog::{list_examples, load_definition, run_tasks, verify_example, RunOptions, RunReport};
use hopftwist::Error;

/// Checks twisted coordinate algebras of unipotent groups.
#[derive(Parser)]
#[command(name = "hopftwist", version)]
struct Cli {
    /// Default enumeration degree for tasks that do not set their own.
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,

    /// Cap on the number of terms of an exponential twist series.
    #[arg(long, global = true, default_value_t = 64)]
    max_order: usize,

    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs the tasks of a definition file.
    Check { file: PathBuf },
    /// Runs a built-in example.
    VerifyExample { key: String },
    /// Lists the built-in examples.
    ListExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Machine,
}

fn print(report: &RunReport, format: ReportFormat) -> ExitCode {
    match format {
        ReportFormat::Text => print!("{}", report.render_text()),
        ReportFormat::Machine => print!("{}", report.render_machine()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn input_error(e: Error) -> ExitCode {
    eprintln!("hopftwist: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let opts = RunOptions {
        degree: cli.degree,
        max_order: cli.max_order,
    };
    match cli.command {
        Command::ListExamples => {
            for key in list_examples() {
                println!("{key}");
            }
            ExitCode::SUCCESS
        }
        Command::VerifyExample { key } => match verify_example(&key, &opts) {
            Ok(r) => print(&r, cli.report),
            Err(e) => input_error(e),
        },
        Command::Check { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return input_error(Error::Input(format!("cannot read {}: {e}", file.display()))),
            };
            match load_definition(&text, &opts) {
                Ok(def) => print(&run_tasks(&def, &opts), cli.report),
                Err(e) => input_error(e),
            }
        }
    }
}
