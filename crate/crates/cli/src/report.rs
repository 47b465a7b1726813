//! Placement tables: CSV with a trailing `#` summary block, or JSON.

use std::fmt::Write as _;

use quadcover::{Plan, Scenario};
use serde::Serialize;

pub const CSV_HEADER: &str =
    "uav_id,center_x,center_y,a_m,b_m,phi_deg,h_opt_m,proj_x,proj_y,theta_deg,psi_deg,pl_max_db";

/// One output row per UAV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlacementRecord {
    pub uav_id: usize,
    pub center_x: f64,
    pub center_y: f64,
    pub a_m: f64,
    pub b_m: f64,
    pub phi_deg: f64,
    pub h_opt_m: f64,
    pub proj_x: f64,
    pub proj_y: f64,
    pub theta_deg: f64,
    pub psi_deg: f64,
    pub pl_max_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub m: usize,
    pub environment: String,
    pub frequency_hz: f64,
    pub quad_area_m2: f64,
    pub region_area_m2: f64,
    pub footprint_area_sum_m2: f64,
    pub coverage_fraction: f64,
    pub region_coverage_fraction: f64,
    pub homography: [[f64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanReport {
    pub placements: Vec<PlacementRecord>,
    pub summary: Summary,
}

pub fn records(plan: &Plan) -> Vec<PlacementRecord> {
    plan.placements
        .iter()
        .map(|p| PlacementRecord {
            uav_id: p.footprint.index,
            center_x: p.footprint.center.x,
            center_y: p.footprint.center.y,
            a_m: p.footprint.a,
            b_m: p.footprint.b,
            phi_deg: p.footprint.phi.to_degrees(),
            h_opt_m: p.h_opt,
            proj_x: p.proj.x,
            proj_y: p.proj.y,
            theta_deg: p.theta,
            psi_deg: p.psi,
            pl_max_db: p.pl_max_db,
        })
        .collect()
}

pub fn summary(scenario: &Scenario, plan: &Plan) -> Summary {
    Summary {
        m: plan.placements.len(),
        environment: scenario.env.name.clone(),
        frequency_hz: scenario.frequency_hz,
        quad_area_m2: plan.quad_area,
        region_area_m2: plan.region_area,
        footprint_area_sum_m2: plan.footprint_area_sum,
        coverage_fraction: plan.coverage_fraction,
        region_coverage_fraction: plan.region_coverage_fraction,
        homography: plan.homography.rows(),
    }
}

pub fn to_csv(scenario: &Scenario, plan: &Plan) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records(plan) {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.uav_id,
            fixed(r.center_x, 3),
            fixed(r.center_y, 3),
            fixed(r.a_m, 3),
            fixed(r.b_m, 3),
            fixed(r.phi_deg, 1),
            fixed(r.h_opt_m, 3),
            fixed(r.proj_x, 3),
            fixed(r.proj_y, 3),
            fixed(r.theta_deg, 1),
            fixed(r.psi_deg, 1),
            fixed(r.pl_max_db, 3)
        )
        .unwrap();
    }
    let s = summary(scenario, plan);
    writeln!(out, "# m,{}", s.m).unwrap();
    writeln!(out, "# environment,{}", s.environment).unwrap();
    writeln!(out, "# frequency_hz,{}", s.frequency_hz).unwrap();
    writeln!(out, "# quad_area_m2,{:.3}", s.quad_area_m2).unwrap();
    writeln!(out, "# region_area_m2,{:.3}", s.region_area_m2).unwrap();
    writeln!(out, "# footprint_area_sum_m2,{:.3}", s.footprint_area_sum_m2).unwrap();
    writeln!(out, "# coverage_fraction,{:.6}", s.coverage_fraction).unwrap();
    writeln!(out, "# region_coverage_fraction,{:.6}", s.region_coverage_fraction).unwrap();
    for (k, row) in clean_rows(s.homography).iter().enumerate() {
        writeln!(out, "# h_row{},{},{},{}", k + 1, sig6(row[0]), sig6(row[1]), sig6(row[2])).unwrap();
    }
    out
}

pub fn to_json(scenario: &Scenario, plan: &Plan) -> String {
    let report = PlanReport { placements: records(plan), summary: summary(scenario, plan) };
    let mut s = serde_json::to_string_pretty(&report).expect("plan report serializes");
    s.push('\n');
    s
}

/// Fixed-point with `decimals` places, '.' separator, and no "-0.0".
pub fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Zeroes entries below 1e-12 of the largest magnitude (solver round-off).
pub fn clean_rows(rows: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let scale = rows.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    rows.map(|row| row.map(|v| if v.abs() < 1e-12 * scale { 0.0 } else { v }))
}

/// Formats `x` with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        format!("{:.*}", (5 - exp).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}
