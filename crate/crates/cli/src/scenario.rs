//! JSON scenario files.
//!
//! ```json
//! {
//!   "quad": [[-100, -100], [200, -300], [1500, 250], [50, 400]],
//!   "m": 4,
//!   "frequency_hz": 2e9,
//!   "environment": "suburban",
//!   "packing_file": "packings/m4.txt",
//!   "offset_policy": "toward_centroid",
//!   "homography_decimals": 4
//! }
//! ```
//!
//! `environment` is a preset name or an object with `xi_los`, `xi_nlos`,
//! `eta`, `kappa` (and an optional `name`). A relative `packing_file` is
//! resolved against the scenario file's directory.

use std::path::{Path, PathBuf};

use quadcover::packing::{load_packing_file_unchecked, MAX_CATALOG_COUNT};
use quadcover::{load_packing_file, Environment, OffsetPolicy, PackingError, Quadrilateral, Scenario};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub quad: [[f64; 2]; 4],
    pub m: usize,
    pub frequency_hz: f64,
    pub environment: EnvironmentSpec,
    #[serde(default)]
    pub packing_file: Option<PathBuf>,
    #[serde(default)]
    pub offset_policy: Option<String>,
    /// Round the homography to this many decimals before mapping.
    #[serde(default)]
    pub homography_decimals: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum EnvironmentSpec {
    Preset(String),
    Custom(CustomEnvironment),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomEnvironment {
    #[serde(default)]
    pub name: Option<String>,
    pub xi_los: f64,
    pub xi_nlos: f64,
    pub eta: f64,
    pub kappa: f64,
}

/// How strictly an external packing file is checked on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackingCheck {
    Validate,
    /// Accept overlapping or protruding circles so `verify` can report them.
    Lenient,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("scenario: {e}")))
    }

    /// Builds the planner input. `base_dir` anchors a relative packing path.
    pub fn to_scenario(
        &self,
        base_dir: &Path,
        check: PackingCheck,
        policy_override: Option<OffsetPolicy>,
    ) -> Result<Scenario, CliError> {
        let quad = Quadrilateral::from_coords(self.quad).map_err(|e| CliError::Input(format!("quad: {e}")))?;
        if !(self.frequency_hz > 0.0 && self.frequency_hz.is_finite()) {
            return Err(CliError::Input(format!("frequency_hz must be positive, got {}", self.frequency_hz)));
        }
        if self.m == 0 {
            return Err(CliError::Input("m must be at least 1".into()));
        }
        let env = match &self.environment {
            EnvironmentSpec::Preset(name) => Environment::preset(name).ok_or_else(|| {
                CliError::Input(format!("unknown environment {name:?}; expected suburban, urban or dense_urban"))
            })?,
            EnvironmentSpec::Custom(c) => {
                Environment::new(c.name.clone().unwrap_or_else(|| "custom".into()), c.xi_los, c.xi_nlos, c.eta, c.kappa)
                    .map_err(|e| CliError::Input(e.to_string()))?
            }
        };
        let policy = match (policy_override, &self.offset_policy) {
            (Some(p), _) => p,
            (None, Some(s)) => parse_offset_policy(s)?,
            (None, None) => OffsetPolicy::default(),
        };

        let mut scenario = Scenario::new(quad, self.m, self.frequency_hz, env)
            .with_offset_policy(policy)
            .with_homography_decimals(self.homography_decimals);

        match &self.packing_file {
            Some(rel) => {
                let path = base_dir.join(rel);
                let loaded = match check {
                    PackingCheck::Validate => load_packing_file(&path),
                    PackingCheck::Lenient => load_packing_file_unchecked(&path),
                };
                let packing = loaded.map_err(|e| match e {
                    PackingError::Io(msg) => CliError::Io { path: path.clone(), source: std::io::Error::other(msg) },
                    other => CliError::Input(format!("packing file {}: {other}", path.display())),
                })?;
                if packing.m() != self.m {
                    return Err(CliError::Input(format!(
                        "m = {} but {} holds {} circles",
                        self.m,
                        path.display(),
                        packing.m()
                    )));
                }
                scenario = scenario.with_packing(packing);
            }
            None if self.m > MAX_CATALOG_COUNT => {
                return Err(CliError::Input(format!(
                    "no embedded packing for m = {}; supply packing_file (embedded: 1..={MAX_CATALOG_COUNT})",
                    self.m
                )));
            }
            None => {}
        }
        Ok(scenario)
    }
}

pub fn parse_offset_policy(s: &str) -> Result<OffsetPolicy, CliError> {
    OffsetPolicy::parse(s).ok_or_else(|| {
        CliError::Input(format!(
            "unknown offset policy {s:?}; expected toward_centroid, away_from_centroid, positive or negative"
        ))
    })
}

/// Reads and converts a scenario file.
pub fn load_scenario(
    path: &Path,
    check: PackingCheck,
    policy_override: Option<OffsetPolicy>,
) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file = ScenarioFile::parse(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    file.to_scenario(base, check, policy_override)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CASE_STUDY: &str = r#"{
        "quad": [[-100, -100], [200, -300], [1500, 250], [50, 400]],
        "m": 4, "frequency_hz": 2e9, "environment": "suburban"
    }"#;

    #[test]
    fn parses_preset_scenario() {
        let f = ScenarioFile::parse(CASE_STUDY).unwrap();
        let s = f.to_scenario(Path::new("."), PackingCheck::Validate, None).unwrap();
        assert_eq!(s.m, 4);
        assert_eq!(s.env, Environment::suburban());
        assert_eq!(s.offset_policy, OffsetPolicy::TowardCentroid);
        assert_eq!(s.quad.shoelace_area(), 586_250.0);
    }

    #[test]
    fn parses_custom_environment() {
        let text =
            CASE_STUDY.replace(r#""suburban""#, r#"{"xi_los": 1.0, "xi_nlos": 20.0, "eta": 9.61, "kappa": 0.16}"#);
        let s = ScenarioFile::parse(&text).unwrap().to_scenario(Path::new("."), PackingCheck::Validate, None).unwrap();
        assert_eq!(s.env.xi_nlos, 20.0);
        assert_eq!(s.env.name, "custom");
    }

    #[test]
    fn rejects_bad_inputs() {
        let cases = [
            CASE_STUDY.replace(r#""suburban""#, r#""rural""#),
            CASE_STUDY.replace("[1500, 250]", "[0, 0]"),
            CASE_STUDY.replace(r#""m": 4"#, r#""m": 0"#),
            CASE_STUDY.replace(r#""m": 4"#, r#""m": 40"#),
            CASE_STUDY.replace("2e9", "-1"),
            CASE_STUDY.replace(r#""m": 4"#, r#""m": 4, "colour": "red""#),
            CASE_STUDY.replace(r#""m": 4"#, r#""m": 4, "offset_policy": "sideways""#),
        ];
        for text in cases {
            let err = ScenarioFile::parse(&text)
                .and_then(|f| f.to_scenario(Path::new("."), PackingCheck::Validate, None))
                .unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}: {err}");
        }
    }

    #[test]
    fn override_beats_file_policy() {
        let text = CASE_STUDY.replace(r#""m": 4"#, r#""m": 4, "offset_policy": "positive""#);
        let f = ScenarioFile::parse(&text).unwrap();
        let s = f.to_scenario(Path::new("."), PackingCheck::Validate, Some(OffsetPolicy::AwayFromCentroid)).unwrap();
        assert_eq!(s.offset_policy, OffsetPolicy::AwayFromCentroid);
    }

    #[test]
    fn relative_packing_file_and_missing_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("two.txt"), "2 0.25\n0.25 0.25\n0.75 0.75\n").unwrap();
        let text = CASE_STUDY.replace(r#""m": 4"#, r#""m": 2, "packing_file": "two.txt""#);
        let s = ScenarioFile::parse(&text).unwrap().to_scenario(dir.path(), PackingCheck::Validate, None).unwrap();
        assert_eq!(s.packing.unwrap().radius, 0.25);

        let text = CASE_STUDY.replace(r#""m": 4"#, r#""m": 2, "packing_file": "absent.txt""#);
        let err =
            ScenarioFile::parse(&text).unwrap().to_scenario(dir.path(), PackingCheck::Validate, None).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn lenient_check_admits_overlap() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("bad.txt"), "2 0.25\n0.3 0.5\n0.6 0.5\n").unwrap();
        let text = CASE_STUDY.replace(r#""m": 4"#, r#""m": 2, "packing_file": "bad.txt""#);
        let f = ScenarioFile::parse(&text).unwrap();
        assert_eq!(f.to_scenario(dir.path(), PackingCheck::Validate, None).unwrap_err().exit_code(), 2);
        assert!(f.to_scenario(dir.path(), PackingCheck::Lenient, None).is_ok());
    }
}
