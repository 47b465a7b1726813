use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quadcover::OffsetPolicy;
use quadcover_cli::commands::{
    cmd_homography, cmd_plan, cmd_render, cmd_verify, OutputFormat, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use quadcover_cli::render::RenderMode;
use quadcover_cli::scenario::parse_offset_policy;
use quadcover_cli::CliError;

/// Plan UAV coverage of a convex quadrilateral with tangent elliptical footprints.
#[derive(Parser)]
#[command(name = "quadcover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute placements and write a CSV or JSON table.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// toward_centroid, away_from_centroid, positive or negative.
        #[arg(long)]
        offset_policy: Option<String>,
    },
    /// Draw the plan as an SVG figure.
    Render {
        #[arg(long)]
        scenario: PathBuf,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// footprints, packing_pair or pose3d.
        #[arg(long, default_value = "footprints")]
        mode: String,
        #[arg(long)]
        offset_policy: Option<String>,
    },
    /// Print the homography from the unit square to a quadrilateral.
    Homography {
        /// x1 y1 x2 y2 x3 y3 x4 y4
        #[arg(num_args = 8, value_names = ["X1", "Y1", "X2", "Y2", "X3", "Y3", "X4", "Y4"], allow_negative_numbers = true)]
        coords: Vec<f64>,
    },
    /// Run the oracle checks against a plan; exit 4 if any fails.
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        offset_policy: Option<String>,
    },
}

fn policy(s: Option<String>) -> Result<Option<OffsetPolicy>, CliError> {
    s.map(|s| parse_offset_policy(&s)).transpose()
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Plan { scenario, out, format, offset_policy } => {
            let format = OutputFormat::parse(&format)
                .ok_or_else(|| CliError::Input(format!("unknown format {format:?}; expected csv or json")))?;
            cmd_plan(&scenario, format, out.as_deref(), policy(offset_policy)?, &mut stdout)
        }
        Command::Render { scenario, out, mode, offset_policy } => {
            let mode = RenderMode::parse(&mode).ok_or_else(|| {
                CliError::Input(format!("unknown mode {mode:?}; expected footprints, packing_pair or pose3d"))
            })?;
            cmd_render(&scenario, out.as_deref(), mode, policy(offset_policy)?, &mut stdout)
        }
        Command::Homography { coords } => {
            let coords: [f64; 8] = coords.try_into().map_err(|_| CliError::Input("expected 8 coordinates".into()))?;
            cmd_homography(&coords, &mut stdout)
        }
        Command::Verify { scenario, samples, seed, offset_policy } => {
            cmd_verify(&scenario, samples, seed, policy(offset_policy)?, &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    // clap reports usage errors with exit code 2, matching the input-error code
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quadcover: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
