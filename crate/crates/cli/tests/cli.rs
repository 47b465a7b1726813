//! End-to-end runs of the `quadcover` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const CASE_STUDY_QUAD: &str = "[[-100, -100], [200, -300], [1500, 250], [50, 400]]";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadcover"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn plan_json(name: &str) -> Value {
    let o = run(&["plan", "--scenario", &scenario(name), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn attr(tag: &str, name: &str) -> f64 {
    let key = format!(" {name}=\"");
    let start = tag.find(&key).unwrap_or_else(|| panic!("{name} missing in {tag}")) + key.len();
    let end = start + tag[start..].find('"').unwrap();
    tag[start..end].parse().unwrap()
}

fn same_to_6_digits(x: f64, y: f64) -> bool {
    (x - y).abs() <= 5e-6 * x.abs().max(y.abs()).max(1.0)
}

#[test]
fn plan_csv_has_one_row_per_uav_and_a_summary() {
    let o = run(&["plan", "--scenario", &scenario("case_study_m4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(quadcover_cli::report::CSV_HEADER));
    let rows: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.split(',').count() == 12));
    assert!(text.contains("# quad_area_m2,586250.000"));
    assert!(text.contains("# coverage_fraction,0.756"));
}

#[test]
fn plan_json_parses_and_matches_csv_ids() {
    let v = plan_json("case_study_m9.json");
    let placements = v["placements"].as_array().unwrap();
    assert_eq!(placements.len(), 9);
    let ids: Vec<u64> = placements.iter().map(|p| p["uav_id"].as_u64().unwrap()).collect();
    assert_eq!(ids, (1..=9).collect::<Vec<_>>());
    assert_eq!(v["summary"]["m"], 9);
    assert_eq!(v["summary"]["quad_area_m2"], 586250.0);
}

#[test]
fn every_shipped_scenario_plans() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let o = run(&["plan", "--scenario", path.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&o.stderr));
        }
    }
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan.csv");
    let o = run(&["plan", "--scenario", &scenario("case_study_m4.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = run(&["plan", "--scenario", &scenario("case_study_m4.json")]);
    assert_eq!(std::fs::read(&out).unwrap(), direct.stdout);
}

#[test]
fn offset_policy_flag_moves_projections() {
    let base = plan_json("case_study_m4.json");
    let o = run(&[
        "plan",
        "--scenario",
        &scenario("case_study_m4.json"),
        "--format",
        "json",
        "--offset-policy",
        "away_from_centroid",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let away: Value = serde_json::from_slice(&o.stdout).unwrap();
    for (p, q) in base["placements"].as_array().unwrap().iter().zip(away["placements"].as_array().unwrap()) {
        assert_eq!(p["h_opt_m"], q["h_opt_m"]);
        let (cx, cy) = (p["center_x"].as_f64().unwrap(), p["center_y"].as_f64().unwrap());
        // mirrored through the footprint center
        let mx = 2.0 * cx - p["proj_x"].as_f64().unwrap();
        let my = 2.0 * cy - p["proj_y"].as_f64().unwrap();
        assert!((mx - q["proj_x"].as_f64().unwrap()).abs() < 1e-9 && (my - q["proj_y"].as_f64().unwrap()).abs() < 1e-9);
    }
    let bad = run(&["plan", "--scenario", &scenario("case_study_m4.json"), "--offset-policy", "sideways"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn missing_scenario_is_an_io_error() {
    let o = run(&["plan", "--scenario", "/nonexistent/scenario.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/scenario.json"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let o = run(&["plan", "--scenario", &scenario("case_study_m4.json"), "--out", "/nonexistent/dir/plan.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_scenario_is_an_input_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan.csv");
    for (name, text) in [
        ("truncated.json", "{\"quad\": [[0, 0], [1, 0]"),
        ("unknown_key.json", &format!("{{\"quad\": {CASE_STUDY_QUAD}, \"m\": 4, \"frequency_hz\": 2e9, \"environment\": \"suburban\", \"tilt\": 3}}")),
        ("bad_env.json", &format!("{{\"quad\": {CASE_STUDY_QUAD}, \"m\": 4, \"frequency_hz\": 2e9, \"environment\": \"rural\"}}")),
        ("zero_m.json", &format!("{{\"quad\": {CASE_STUDY_QUAD}, \"m\": 0, \"frequency_hz\": 2e9, \"environment\": \"suburban\"}}")),
        ("big_m.json", &format!("{{\"quad\": {CASE_STUDY_QUAD}, \"m\": 17, \"frequency_hz\": 2e9, \"environment\": \"suburban\"}}")),
    ] {
        let path = write(dir.path(), name, text);
        let o = run(&["plan", "--scenario", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(!out.exists(), "{name} left an output file");
    }
}

#[test]
fn degenerate_quad_is_rejected_before_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "flat.json",
        r#"{"quad": [[0, 0], [100, 0], [200, 0], [50, 100]], "m": 4, "frequency_hz": 2e9, "environment": "suburban"}"#,
    );
    let out = dir.path().join("fig.svg");
    let o = run(&["render", "--scenario", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn unsolvable_altitude_is_a_planning_error() {
    let dir = tempfile::tempdir().unwrap();
    // footprints well under a meter put the optimum below the lowest altitude
    let path = write(
        dir.path(),
        "tiny.json",
        r#"{"quad": [[0, 0], [1, 0], [1, 1], [0, 1]], "m": 4, "frequency_hz": 2e9, "environment": "suburban"}"#,
    );
    let o = run(&["plan", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_format_mode_and_subcommand_are_input_errors() {
    assert_eq!(run(&["plan", "--scenario", &scenario("case_study_m4.json"), "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--scenario", &scenario("case_study_m4.json"), "--mode", "3d"]).status.code(), Some(2));
    assert_eq!(run(&["launch"]).status.code(), Some(2));
    assert_eq!(run(&["plan"]).status.code(), Some(2));
}

#[test]
fn rendered_ellipses_match_the_plan() {
    for (name, m) in [("case_study_m4.json", 4), ("case_study_m9.json", 9)] {
        let o = run(&["render", "--scenario", &scenario(name)]);
        assert_eq!(o.status.code(), Some(0));
        let svg = stdout(&o);
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
        let tags: Vec<&str> = svg.lines().filter(|l| l.contains("<ellipse id=\"footprint-")).collect();
        assert_eq!(tags.len(), m, "{name}");

        let plan = plan_json(name);
        for (tag, p) in tags.iter().zip(plan["placements"].as_array().unwrap()) {
            let want = |k: &str| p[k].as_f64().unwrap();
            assert!(same_to_6_digits(attr(tag, "cx"), want("center_x")), "{tag}");
            assert!(same_to_6_digits(attr(tag, "cy"), want("center_y")), "{tag}");
            assert!(same_to_6_digits(attr(tag, "rx"), want("a_m")), "{tag}");
            assert!(same_to_6_digits(attr(tag, "ry"), want("b_m")), "{tag}");
            let rotate = tag.split("rotate(").nth(1).unwrap();
            let phi: f64 = rotate.split_whitespace().next().unwrap().parse().unwrap();
            assert!(same_to_6_digits(phi, want("phi_deg")), "{tag}");
        }
    }
}

#[test]
fn every_render_mode_produces_svg() {
    let dir = tempfile::tempdir().unwrap();
    for mode in ["footprints", "packing_pair", "pose3d"] {
        let out = dir.path().join(format!("{mode}.svg"));
        let o = run(&[
            "render",
            "--scenario",
            &scenario("case_study_m9.json"),
            "--mode",
            mode,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{mode}");
        let svg = std::fs::read_to_string(&out).unwrap();
        assert!(svg.trim_end().ends_with("</svg>"), "{mode}");
    }
}

#[test]
fn homography_of_the_unit_square_is_scaled_identity() {
    let o = run(&["homography", "0", "0", "1", "0", "1", "1", "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "0.577350 0 0\n0 0.577350 0\n0 0 0.577350\nvanishing_point_x: at_infinity\nvanishing_point_y: at_infinity\n"
    );
}

#[test]
fn homography_accepts_negative_coordinates() {
    let o = run(&["homography", "-100", "-100", "200", "-300", "1500", "250", "50", "400"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first: Vec<f64> = text.lines().next().unwrap().split(' ').map(|s| s.parse().unwrap()).collect();
    assert!((first[0] - 0.5796).abs() < 5e-4 && (first[1] - 0.2807).abs() < 5e-4);
    assert!(text.contains("vanishing_point_x: ") && !text.contains("at_infinity"));
}

#[test]
fn collinear_homography_input_is_rejected() {
    assert_eq!(run(&["homography", "0", "0", "1", "0", "2", "0", "0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["homography", "0", "0", "1"]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_the_case_study() {
    let o = run(&["verify", "--scenario", &scenario("case_study_m4.json"), "--samples", "200000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 5);
    assert!(text.ends_with("verify: checks=5 passed=5 failed=0 samples=200000 seed=7 result=PASS\n"));
}

#[test]
fn verify_reports_an_overlapping_packing() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "overlap.txt", "2 0.3\n0.3 0.5\n0.7 0.5\n");
    let path = write(
        dir.path(),
        "overlap.json",
        &format!(
            "{{\"quad\": {CASE_STUDY_QUAD}, \"m\": 2, \"frequency_hz\": 2e9, \"environment\": \"suburban\", \"packing_file\": \"overlap.txt\"}}"
        ),
    );
    let o = run(&["verify", "--scenario", path.to_str().unwrap(), "--samples", "20000"]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    assert!(text.contains("[FAIL] tangency"));
    assert!(text.lines().last().unwrap().ends_with("result=FAIL"));

    // planning the same file refuses the packing outright
    assert_eq!(run(&["plan", "--scenario", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_rejects_too_few_samples() {
    let o = run(&["verify", "--scenario", &scenario("case_study_m4.json"), "--samples", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_packing_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "s.json",
        &format!(
            "{{\"quad\": {CASE_STUDY_QUAD}, \"m\": 2, \"frequency_hz\": 2e9, \"environment\": \"suburban\", \"packing_file\": \"nope.txt\"}}"
        ),
    );
    assert_eq!(run(&["plan", "--scenario", path.to_str().unwrap()]).status.code(), Some(1));
}
