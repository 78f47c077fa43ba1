mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "mwk", version, about = "Quadratic forms, Witt rings and Milnor-Witt K-groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Also write the report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Extra eta levels kept in K-group presentations.
    #[arg(long, global = true, default_value_t = mwk_core::symbolic::DEFAULT_ETA_MAX)]
    pub eta_max: u32,
    /// Indented output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadratic forms: `diag(a,b,...)@FIELD`, `pfister(a,...)@FIELD` or a Gram matrix `[[a,b],[b,c]]@FIELD`.
    #[command(subcommand)]
    Qf(QfCommand),
    /// Pfister forms `pfister(a,...)@FIELD`.
    #[command(subcommand)]
    Pfister(PfisterCommand),
    /// Chain equivalence of Pfister tuples `pfister(a,...)@FIELD`.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Presented K-groups of finite prime fields.
    #[command(subcommand)]
    Kgroup(KgroupCommand),
    /// Residue maps at discrete places of `QQ` and `GF(p)(t)`.
    #[command(subcommand)]
    Residue(ResidueCommand),
    /// Smith normal form of an integer matrix given as JSON rows.
    Snf { matrix: String },
    /// Built-in acceptance checks.
    Selftest {
        #[arg(value_parser = ["quick", "full"], default_value = "quick")]
        profile: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum QfCommand {
    Diag { form: String },
    Isometric { a: String, b: String },
    Isotropic { form: String },
    Witt { form: String },
    Represents { form: String, value: String },
}

#[derive(Subcommand, Debug)]
pub enum PfisterCommand {
    Expand { form: String },
    Pure { form: String },
}

#[derive(Subcommand, Debug)]
pub enum ChainCommand {
    Find {
        a: String,
        b: String,
        /// Extra square classes for the search over `QQ`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        support: Vec<String>,
    },
    Verify {
        a: String,
        b: String,
        /// JSON step list, or `@FILE`.
        certificate: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long, allow_hyphen_values = true)]
    pub degree: i64,
}

#[derive(Subcommand, Debug)]
pub enum KgroupCommand {
    Compute {
        #[arg(long)]
        theory: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    VerifyPullback {
        #[command(flatten)]
        group: GroupArgs,
    },
    VerifyExact {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// `W` for degree 0, `I^n` for degree n.
    VerifyPresentation {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ResidueCommand {
    /// Residue of a form `diag(...)@F` or a KM/MWK symbol expression.
    At {
        element: String,
        #[arg(long)]
        place: String,
        /// Uniformizer at the place; defaults to the canonical one.
        #[arg(long, allow_hyphen_values = true)]
        uniformizer: Option<String>,
    },
    Unramified {
        element: String,
        /// Places to check; defaults to the support.
        #[arg(long, value_delimiter = ',')]
        places: Vec<String>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let start = Instant::now();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let outcome = Outcome::usage(e.to_string().trim_end());
            return finish(&argv, None, outcome, start);
        }
    };
    let outcome = commands::run(&cli);
    finish(&argv, Some(&cli.global), outcome, start)
}

fn finish(argv: &[String], global: Option<&Global>, outcome: Outcome, start: Instant) -> ExitCode {
    let code = outcome.exit_code();
    let report = Report::new(argv, outcome, start.elapsed().as_secs_f64());
    let pretty = global.is_some_and(|g| g.pretty);
    let text = report.render(pretty);
    println!("{text}");
    if let Some(path) = global.and_then(|g| g.output.as_ref()) {
        if let Err(e) = report::write_atomic(path, &text) {
            eprintln!("mwk: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
