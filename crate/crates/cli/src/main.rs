use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bunchctl::commands::{load, load_script};
use bunchctl::{cmd_analyze, cmd_compare, cmd_gitfan, cmd_modify, cmd_reduce, CliError, Options, ReportDocument};
use clap::{Args, Parser, Subcommand};

/// Varieties from bunched rings: invariants, GIT fans and modifications.
#[derive(Parser)]
#[command(name = "bunchctl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input document (JSON).
    file: PathBuf,
    /// Emit the JSON report (default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable report.
    #[arg(long)]
    text: bool,
    /// Refuse inputs with more variables than this.
    #[arg(long, default_value_t = bunch_core::bunch::DEFAULT_MAX_VARS)]
    max_vars: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Divisor cones, Picard group, singularities and canonical class.
    Analyze(Common),
    /// Chambers of the GIT fan of the total coordinate space or its ambient.
    Gitfan {
        #[command(flatten)]
        common: Common,
        /// GIT fan of the total coordinate space (default).
        #[arg(long, conflicts_with = "toric")]
        ring: bool,
        /// GIT fan of the ambient affine space.
        #[arg(long)]
        toric: bool,
    },
    /// Run a modification script.
    Modify {
        #[command(flatten)]
        common: Common,
        /// Script file; defaults to the script inside the document.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Contract down to a combinatorially minimal model.
    Reduce(Common),
    /// Compare two documents up to change of basis.
    Compare {
        #[command(flatten)]
        common: Common,
        other: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<(ReportDocument, bool), CliError> {
    let (common, rep) = match &cli.command {
        Command::Analyze(c) => (c, cmd_analyze(&load(&c.file)?, &opts(c))?),
        Command::Gitfan { common, toric, .. } => (common, cmd_gitfan(&load(&common.file)?, *toric, &opts(common))?),
        Command::Modify { common, script } => {
            let steps = script.as_deref().map(load_script).transpose()?;
            (
                common,
                cmd_modify(&load(&common.file)?, steps.as_deref(), &opts(common))?,
            )
        }
        Command::Reduce(c) => (c, cmd_reduce(&load(&c.file)?, &opts(c))?),
        Command::Compare { common, other } => {
            (common, cmd_compare(&load(&common.file)?, &load(other)?, &opts(common))?)
        }
    };
    Ok((rep, common.text))
}

fn opts(c: &Common) -> Options {
    Options { max_vars: c.max_vars }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("BUNCHCTL_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let text = match &cli.command {
        Command::Analyze(c) | Command::Reduce(c) => c.text,
        Command::Gitfan { common, .. } | Command::Modify { common, .. } | Command::Compare { common, .. } => {
            common.text
        }
    };
    match run(&cli) {
        Ok((rep, as_text)) => {
            let body = if as_text { rep.to_text() } else { rep.to_json() + "\n" };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if text {
                eprintln!("{e}");
            } else {
                let body = serde_json::json!({ "error": e });
                eprintln!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
