//! The four subcommands. Each writes its primary output to `stdout` (or a
//! file) and returns a [`CliError`] whose exit code the binary reports.

use std::io::Write;
use std::path::Path;

use quadcover::verify::verify_plan;
use quadcover::{plan, plan_with, Homography, OffsetPolicy, Plan, Quadrilateral, Scenario, Validation, VanishingPoint};

use crate::render::{render, RenderMode};
use crate::report::{clean_rows, sig6, to_csv, to_json};
use crate::scenario::{load_scenario, PackingCheck};
use crate::CliError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            _ => None,
        }
    }
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

/// Output is fully built before the file is created, so a failed run never
/// leaves a partial file behind.
fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(stdout_err),
    }
}

pub fn plan_scenario(path: &Path, policy: Option<OffsetPolicy>) -> Result<(Scenario, Plan), CliError> {
    let scenario = load_scenario(path, PackingCheck::Validate, policy)?;
    let plan = plan(&scenario)?;
    Ok((scenario, plan))
}

pub fn cmd_plan(
    scenario: &Path,
    format: OutputFormat,
    out: Option<&Path>,
    policy: Option<OffsetPolicy>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (s, p) = plan_scenario(scenario, policy)?;
    let text = match format {
        OutputFormat::Csv => to_csv(&s, &p),
        OutputFormat::Json => to_json(&s, &p),
    };
    emit(&text, out, stdout)
}

pub fn cmd_render(
    scenario: &Path,
    out: Option<&Path>,
    mode: RenderMode,
    policy: Option<OffsetPolicy>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (s, p) = plan_scenario(scenario, policy)?;
    let title = format!("{} UAVs, {}, {} GHz", p.placements.len(), s.env.name, s.frequency_hz / 1e9);
    emit(&render(&p, mode, &title), out, stdout)
}

/// Prints the homography taking the unit square onto the quadrilateral
/// `(x1, y1, …, x4, y4)`, followed by its vanishing points.
pub fn cmd_homography(coords: &[f64; 8], stdout: &mut dyn Write) -> Result<(), CliError> {
    let quad = Quadrilateral::from_coords([
        [coords[0], coords[1]],
        [coords[2], coords[3]],
        [coords[4], coords[5]],
        [coords[6], coords[7]],
    ])
    .map_err(|e| CliError::Input(format!("quad: {e}")))?;
    let h = Homography::solve(&Quadrilateral::unit_square(), &quad).map_err(|e| CliError::Input(e.to_string()))?;

    let mut text = String::new();
    for row in clean_rows(h.rows()) {
        text.push_str(&format!("{} {} {}\n", sig6(row[0]), sig6(row[1]), sig6(row[2])));
    }
    let (vx, vy) = h.vanishing_points();
    for (name, vp) in [("vanishing_point_x", vx), ("vanishing_point_y", vy)] {
        match vp {
            VanishingPoint::Finite(p) => text.push_str(&format!("{name}: {} {}\n", sig6(p.x), sig6(p.y))),
            VanishingPoint::AtInfinity => text.push_str(&format!("{name}: at_infinity\n")),
        }
    }
    stdout.write_all(text.as_bytes()).map_err(stdout_err)
}

/// Runs the oracle checks and prints one line per check plus a summary line
/// `verify: checks=N passed=P failed=F samples=S seed=K result=PASS|FAIL`.
///
/// The plan is built without enforcing containment and non-overlap, and
/// packing files are not validated, so broken inputs surface as failed
/// checks (exit 4) instead of planning errors.
pub fn cmd_verify(
    scenario: &Path,
    samples: usize,
    seed: u64,
    policy: Option<OffsetPolicy>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if samples < MIN_SAMPLES {
        return Err(CliError::Input(format!("--samples must be at least {MIN_SAMPLES}, got {samples}")));
    }
    let s = load_scenario(scenario, PackingCheck::Lenient, policy)?;
    let p = plan_with(&s, Validation::Skip)?;
    let checks = verify_plan(&p, samples, seed);

    let mut text = String::new();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("[{tag}] {}: {}\n", c.name, c.detail));
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    text.push_str(&format!(
        "verify: checks={} passed={} failed={} samples={samples} seed={seed} result={}\n",
        checks.len(),
        checks.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { "PASS" } else { "FAIL" }
    ));
    stdout.write_all(text.as_bytes()).map_err(stdout_err)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}
