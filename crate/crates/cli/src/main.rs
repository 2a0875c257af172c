use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use hilres::io::{run_job, Command, Format, JobSpec};
use hilres::pipeline::Mode;

/// Exact minimal free resolutions and Betti numbers of graded modules.
///
/// Exit status is 0 when every certificate passes, 1 when one fails, and 2 on
/// any other error.
#[derive(Parser, Debug)]
#[command(name = "hilres", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Truncation degree for Hilbert modules built by the job.
    #[arg(long, global = true, env = "HILRES_MAX_DEGREE", default_value_t = hilres::io::DEFAULT_MAX_DEGREE)]
    max_degree: i64,

    /// analytic, algebraic or both.
    #[arg(long, global = true, default_value = "both")]
    mode: Mode,

    /// table or json.
    #[arg(long, global = true, default_value = "table")]
    format: Format,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Presentation or Hilbert module JSON; `-` reads stdin.
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Resolve a module and report Betti data, generator degrees and certificates.
    Resolve(InputArg),
    /// Betti table only.
    Betti(InputArg),
    /// Minimal free cover of a Hilbert module and its certificates.
    Cover(InputArg),
    /// Defect space of a Hilbert module.
    Defect(InputArg),
    /// Built-in examples.
    #[command(subcommand)]
    Example(Example),
    /// Noncommutative construction with unbounded defect.
    NcDemo {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        start: i64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Example {
    /// H² in d variables with r extra variables acting by zero.
    Zeros {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
    },
    /// H² under the tuple of powers z_k^{n_k}.
    Powers {
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u32>,
    },
}

fn read_input(arg: &InputArg) -> anyhow::Result<String> {
    let mut text = String::new();
    if arg.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
    } else {
        text = std::fs::read_to_string(&arg.input).with_context(|| format!("reading {}", arg.input.display()))?;
    }
    Ok(text)
}

fn command(verb: &Verb) -> anyhow::Result<Command> {
    Ok(match verb {
        Verb::Resolve(a) => Command::Resolve { input: read_input(a)? },
        Verb::Betti(a) => Command::Betti { input: read_input(a)? },
        Verb::Cover(a) => Command::Cover { input: read_input(a)? },
        Verb::Defect(a) => Command::Defect { input: read_input(a)? },
        Verb::Example(Example::Zeros { d, r }) => Command::ExampleZeros { d: *d, r: *r },
        Verb::Example(Example::Powers { n }) => Command::ExamplePowers { ns: n.clone() },
        Verb::NcDemo { d, start, steps } => Command::NcDemo { d: *d, start: *start, steps: *steps },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match command(&cli.verb) {
        Ok(command) => JobSpec { command, max_degree: cli.max_degree, mode: cli.mode, format: cli.format },
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match run_job(&job) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ (hilres::Error::Certificate(_) | hilres::Error::ModeMismatch { .. })) => {
            eprintln!("certificate failure: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
