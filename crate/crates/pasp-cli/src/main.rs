mod commands;
mod grid;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Solver for possibilistic answer set programs (.pasp files).
#[derive(Debug, Parser)]
#[command(name = "pasp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Weight-attenuating reduct with fixpoint check, searched over the grid.
    Direct,
    /// Compilation to a classical program over scaled atoms.
    Translate,
    /// Possibility-distribution search (desk-scale reference).
    Semantic,
    /// Prior semantics: weights attached to classical answer sets.
    Baseline,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Translate => "translate",
            Method::Semantic => "semantic",
            Method::Baseline => "baseline",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the possibilistic answer sets of a program.
    Solve {
        /// Input .pasp file.
        file: String,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        /// Certainty grid: `auto`, `uniform:K` or `list:v1,v2,...`.
        #[arg(long, default_value = "auto")]
        grid: String,
        /// Report at most this many answer sets (0 = all).
        #[arg(long, default_value_t = 0)]
        max_models: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Override the method's resource-guard limit.
        #[arg(long)]
        guard_limit: Option<u128>,
        /// Partition the guess space across worker threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Compile a program into a classical one over scaled atoms.
    Compile {
        /// Input .pasp file.
        file: String,
        /// Certainty scale: `auto` or a comma-separated list of degrees.
        #[arg(long, default_value = "auto")]
        scale: String,
        /// Write the classical program here (stdout when omitted); the
        /// atom mapping goes to the same path with `.map` appended.
        #[arg(short, long)]
        output: Option<String>,
        /// Write the atom mapping to this path instead.
        #[arg(long)]
        map_output: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check whether a valuation is an answer set, showing the reduct and
    /// its fixpoint.
    Check {
        /// Input .pasp file.
        file: String,
        /// Valuation literal, e.g. `cb=1,ld=0.8,can=0.2`.
        valuation: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run all methods and report their agreement.
    Compare {
        /// Input .pasp file.
        file: String,
        /// Certainty grid: `auto`, `uniform:K` or `list:v1,v2,...`.
        #[arg(long, default_value = "auto")]
        grid: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Override every method's resource-guard limit.
        #[arg(long)]
        guard_limit: Option<u128>,
        /// Partition the guess spaces across worker threads.
        #[arg(long)]
        parallel: bool,
    },
}

/// Exit codes: 0 success / answer sets found / methods agree, 1 no answer
/// set (or disagreement for `compare`), 2 usage or input error, 3 resource
/// guard tripped.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            file,
            method,
            grid,
            max_models,
            format,
            guard_limit,
            parallel,
        } => commands::solve(&file, method, &grid, max_models, format, guard_limit, parallel),
        Command::Compile {
            file,
            scale,
            output,
            map_output,
            format,
        } => commands::compile(&file, &scale, output.as_deref(), map_output.as_deref(), format),
        Command::Check {
            file,
            valuation,
            format,
        } => commands::check(&file, &valuation, format),
        Command::Compare {
            file,
            grid,
            format,
            guard_limit,
            parallel,
        } => commands::compare(&file, &grid, format, guard_limit, parallel),
    };
    match outcome {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            let guard = error
                .chain()
                .any(|e| matches!(e.downcast_ref::<pasp::Error>(), Some(pasp::Error::GuardExceeded { .. })));
            if guard {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
