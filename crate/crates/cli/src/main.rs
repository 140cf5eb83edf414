//! `anosov`: command-line front end for geometric types, foliation types
//! and block gluings.
//!
//! Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for
//! unreadable or malformed input.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Format;

#[derive(Parser)]
#[command(name = "anosov", version, about = "Geometric types of Markov partitions and block gluings")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a .gtype, .ctype, .bftype or .summary file.
    Validate { path: PathBuf },
    /// Symbolic dynamics of a geometric type.
    Analyze {
        path: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
    },
    /// Topology of one boundary surface of the model block.
    Surface {
        path: PathBuf,
        #[arg(long, default_value = "stable")]
        side: String,
        /// Also write an SVG drawing to this file.
        #[arg(long)]
        render: Option<PathBuf>,
    },
    /// Decide whether the type is realized by a filled model block.
    Realize { path: PathBuf },
    /// Glue blocks according to a gluespec file.
    Glue { spec: PathBuf },
    /// Draw one boundary surface as SVG.
    Render {
        path: PathBuf,
        #[arg(long, default_value = "stable")]
        side: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn env_color() -> Option<bool> {
    match std::env::var("ANOSOV_COLOR").as_deref() {
        Ok("1") => Some(true),
        Ok("0") => Some(false),
        _ => None,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let color = env_color();
    let svg_color = color.unwrap_or(true);
    let report = match &cli.command {
        Command::Validate { path } => commands::validate(path)?,
        Command::Analyze { path, max_period } => commands::analyze(path, *max_period)?,
        Command::Surface { path, side, render } => {
            let kind = commands::side_kind(side)?;
            commands::surface(path, kind, render.as_deref().map(|p| (p, svg_color)))?
        }
        Command::Realize { path } => commands::realize(path)?,
        Command::Glue { spec } => commands::glue_cmd(spec)?,
        Command::Render { path, side, output } => {
            let svg = commands::render(path, commands::side_kind(side)?, svg_color)?;
            match output {
                Some(out) => std::fs::write(out, svg)?,
                None => std::io::stdout().write_all(svg.as_bytes())?,
            }
            return Ok(0);
        }
    };
    print!("{}", report.render(cli.format, color.unwrap_or(false)));
    Ok(report.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
