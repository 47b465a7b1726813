//! Air-to-ground path loss with an elevation-dependent line-of-sight probability.
//!
//! The LoS probability is the sigmoid `1 / (1 + η·exp(−κ(θ − η)))` with the
//! elevation angle θ in **degrees**; the environment constants below are
//! degree-domain fits, and feeding radians makes P(LoS) vanish at every
//! altitude.

use std::f64::consts::PI;

use thiserror::Error;

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("invalid environment {name}: {reason}")]
    InvalidEnvironment { name: String, reason: String },
    #[error("invalid link geometry: {0}")]
    InvalidGeometry(String),
}

/// Propagation environment `(ξ_LoS, ξ_NLoS, η, κ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    pub name: String,
    /// Excess loss under line of sight (dB).
    pub xi_los: f64,
    /// Excess loss without line of sight (dB).
    pub xi_nlos: f64,
    pub eta: f64,
    /// Sigmoid slope (per degree).
    pub kappa: f64,
}

impl Environment {
    pub fn new(name: impl Into<String>, xi_los: f64, xi_nlos: f64, eta: f64, kappa: f64) -> Result<Self, ChannelError> {
        let env = Self { name: name.into(), xi_los, xi_nlos, eta, kappa };
        let fail =
            |reason: &str| Err(ChannelError::InvalidEnvironment { name: env.name.clone(), reason: reason.into() });
        if ![xi_los, xi_nlos, eta, kappa].iter().all(|v| v.is_finite()) {
            return fail("parameters must be finite");
        }
        if !(xi_los >= 0.0 && xi_nlos > xi_los) {
            return fail("need xi_nlos > xi_los >= 0");
        }
        if !(eta > 0.0 && kappa > 0.0) {
            return fail("need eta > 0 and kappa > 0");
        }
        Ok(env)
    }

    pub fn suburban() -> Self {
        Self::new("suburban", 0.1, 21.0, 4.88, 0.43).expect("valid preset")
    }

    pub fn urban() -> Self {
        Self::new("urban", 1.0, 20.0, 9.61, 0.16).expect("valid preset")
    }

    pub fn dense_urban() -> Self {
        Self::new("dense_urban", 1.6, 23.0, 12.08, 0.11).expect("valid preset")
    }

    /// Looks up `suburban`, `urban` or `dense_urban`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "suburban" => Some(Self::suburban()),
            "urban" => Some(Self::urban()),
            "dense_urban" => Some(Self::dense_urban()),
            _ => None,
        }
    }

    pub fn presets() -> [Self; 3] {
        [Self::suburban(), Self::urban(), Self::dense_urban()]
    }
}

/// Footprint semi-axes, UAV altitude and carrier frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub a: f64,
    pub b: f64,
    pub h: f64,
    pub f: f64,
}

impl LinkGeometry {
    pub fn new(a: f64, b: f64, h: f64, f: f64) -> Result<Self, ChannelError> {
        if !(b > 0.0 && a >= b && a.is_finite()) {
            return Err(ChannelError::InvalidGeometry(format!("need a >= b > 0, got a={a}, b={b}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(ChannelError::InvalidGeometry(format!("altitude must be positive, got {h}")));
        }
        if !(f > 0.0 && f.is_finite()) {
            return Err(ChannelError::InvalidGeometry(format!("frequency must be positive, got {f}")));
        }
        Ok(Self { a, b, h, f })
    }

    /// Ground distance from the UAV projection to the farthest footprint point, 𝒲/b.
    pub fn farthest_ground_distance(&self) -> f64 {
        w_factor(self) / self.b
    }

    /// Elevation angle (degrees) of the UAV seen from the farthest footprint point.
    pub fn worst_elevation_deg(&self) -> f64 {
        (self.h * self.b / w_factor(self)).atan().to_degrees()
    }
}

/// `𝒲 = ab + √((b² + h²)(a² − b²))`.
pub fn w_factor(g: &LinkGeometry) -> f64 {
    let LinkGeometry { a, b, h, .. } = *g;
    a * b + ((b * b + h * h) * (a * a - b * b)).sqrt()
}

/// Probability of line of sight at elevation `elevation_deg` (degrees).
pub fn p_los(env: &Environment, elevation_deg: f64) -> f64 {
    1.0 / (1.0 + env.eta * (-env.kappa * (elevation_deg - env.eta)).exp())
}

/// Free-space term `20·log₁₀(4πf/c)` (dB).
pub fn fspl_constant_db(f: f64) -> f64 {
    20.0 * (4.0 * PI * f / SPEED_OF_LIGHT).log10()
}

/// Maximum path loss over the footprint boundary (dB).
pub fn pl_max(env: &Environment, g: &LinkGeometry) -> f64 {
    let horizontal = g.farthest_ground_distance();
    let los = p_los(env, g.worst_elevation_deg());
    (env.xi_los - env.xi_nlos) * los
        + 10.0 * (g.h * g.h + horizontal * horizontal).log10()
        + fspl_constant_db(g.f)
        + env.xi_nlos
}
