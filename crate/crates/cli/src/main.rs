use std::io::Write as _;
use std::path::PathBuf;
use std::process;

use clap::{CommandFactory, Parser, Subcommand};

use skillrel_core::dataset::{Gender, Group};
use skillrel_core::econometrics::Transform;

mod commands;

/// Skill-relevance contract model and wage-differential regressions.
#[derive(Debug, Parser)]
#[command(name = "skillrel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the contract game in closed form, optionally checking it by
    /// backward induction.
    Spne {
        #[arg(long)]
        s0: f64,
        #[arg(long)]
        s1: f64,
        /// Sending-nation piece-rate wage (only 0 has an equilibrium).
        #[arg(long, default_value_t = 0.0)]
        w0: f64,
        /// Moving cost.
        #[arg(long, default_value_t = 0.0)]
        m: f64,
        /// Also solve numerically and print the discrepancy.
        #[arg(long)]
        numeric: bool,
    },
    /// Check the comparative statics against central differences.
    Statics {
        #[arg(long)]
        s0: f64,
        #[arg(long)]
        s1: f64,
        /// Finite-difference step [default: 1e-5·min(s1, s0 - s1)].
        #[arg(long)]
        step: Option<f64>,
    },
    /// Validate a nations CSV and echo the normalized records.
    Ingest {
        #[arg(long)]
        data: PathBuf,
        /// Also write the normalized CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the host×sender wage-differential regressions.
    Regress {
        /// Nations CSV [default: embedded canonical data].
        #[arg(long)]
        data: Option<PathBuf>,
        /// ALL, NAOC, WE, NE, SE or EA [default: every group].
        #[arg(long)]
        group: Option<Group>,
        /// total, male or female [default: every gender].
        #[arg(long)]
        gender: Option<Gender>,
        /// none, ln or log10, applied to the dependent variable.
        #[arg(long, default_value = "none")]
        transform: Transform,
        #[arg(long, default_value = "table2.csv")]
        out: PathBuf,
        /// Evaluate the three hypotheses and emit them as JSON.
        #[arg(long)]
        hypotheses: bool,
        /// Hypotheses JSON path [default: hypotheses.json beside --out].
        #[arg(long)]
        hypotheses_out: Option<PathBuf>,
    },
    /// Write an SVG scatter plot with its trendline, plus the points CSV.
    Plot {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value = "ALL")]
        group: Group,
        #[arg(long, default_value = "total")]
        gender: Gender,
        #[arg(long)]
        out: PathBuf,
        /// Points CSV path [default: <stem>_points.csv beside --out].
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spne { .. } => "spne",
            Command::Statics { .. } => "statics",
            Command::Ingest { .. } => "ingest",
            Command::Regress { .. } => "regress",
            Command::Plot { .. } => "plot",
        }
    }

    fn run(&self) -> anyhow::Result<String> {
        match self {
            Command::Spne { s0, s1, w0, m, numeric } => commands::spne(*s0, *s1, *w0, *m, *numeric),
            Command::Statics { s0, s1, step } => commands::statics(*s0, *s1, *step),
            Command::Ingest { data, out } => {
                let (normalized, summary) = commands::ingest(data, out.as_deref())?;
                eprintln!("{summary}");
                Ok(normalized)
            }
            Command::Regress { data, group, gender, transform, out, hypotheses, hypotheses_out } => {
                commands::regress(&commands::RegressArgs {
                    data: data.as_deref(),
                    group: *group,
                    gender: *gender,
                    transform: *transform,
                    out,
                    hypotheses: *hypotheses,
                    hypotheses_out: hypotheses_out.as_deref(),
                })
            }
            Command::Plot { data, group, gender, out, points, width, height } => commands::plot(&commands::PlotArgs {
                data: data.as_deref(),
                group: *group,
                gender: *gender,
                out,
                points: points.as_deref(),
                width: *width,
                height: *height,
            }),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match cli.command.run() {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let name = cli.command.name();
            let mut cmd = Cli::command();
            cmd.build();
            if let Some(sub) = cmd.find_subcommand_mut(name) {
                eprintln!("\n{}", sub.render_usage());
            }
            process::exit(1);
        }
    }
}
