//! Per-UAV pose: optimal altitude, antenna tilt and half-angle, and the
//! ground projection offset along the footprint's major axis.
//!
//! A tilted cone with apex at height `h`, tilt `ψ` from vertical and
//! half-angle `θ` cuts the ground in an ellipse whose far and near vertices
//! lie at `h·tan(ψ+θ)` and `h·tan(ψ−θ)` from the UAV's ground projection. The
//! center is therefore offset from the projection by
//! `d = √((a²−b²)(b²+h²))/b`, and `d + a = 𝒲/b`.

use thiserror::Error;

use crate::channel::{pl_max, Environment, LinkGeometry};
use crate::conic::EllipseFootprint;
use crate::geometry::Point2;
use crate::search::golden_section;

/// Altitude search interval (m).
pub const H_MIN: f64 = 1.0;
pub const H_MAX: f64 = 10_000.0;

/// Absolute altitude tolerance of the search (m).
pub const ALTITUDE_TOL: f64 = 1e-6;

/// Log-spaced scan points used to bracket the minimum.
const SCAN_POINTS: usize = 400;

/// `a − b` below this fraction of `a` is treated as a circular footprint.
const CIRCULAR_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlacementError {
    #[error("path loss minimum at the search boundary h = {h} m")]
    NoInteriorMinimum { h: f64 },
    #[error(transparent)]
    Channel(#[from] crate::channel::ChannelError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AltitudeOptimum {
    pub h: f64,
    pub pl: f64,
}

/// Which end of the major axis the ground projection is moved toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetSign {
    /// Along `+û`, `û = (cos φ, sin φ)`.
    Plus,
    /// Along `−û`.
    Minus,
}

impl OffsetSign {
    pub fn factor(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavPlacement {
    pub footprint: EllipseFootprint,
    pub h_opt: f64,
    pub pl_max_db: f64,
    /// Tilt from vertical (degrees).
    pub psi: f64,
    /// Semi-apex angle (degrees).
    pub theta: f64,
    /// Signed offset from the footprint center to `proj` along `û` (m).
    pub offset: f64,
    pub proj: Point2,
    pub position: Position3,
}

impl UavPlacement {
    /// Signed distance from `proj` to the far and near footprint vertices
    /// along the tilt direction.
    pub fn vertex_distances(&self) -> (f64, f64) {
        let d = self.offset.abs();
        (d + self.footprint.a, d - self.footprint.a)
    }
}

/// Minimizes `pl_max` over the altitude.
pub fn optimize_altitude(env: &Environment, a: f64, b: f64, f: f64) -> Result<AltitudeOptimum, PlacementError> {
    // validate once; the closures below reuse the checked values
    LinkGeometry::new(a, b, H_MIN, f)?;
    let pl = |h: f64| pl_max(env, &LinkGeometry { a, b, h, f });

    let ratio = (H_MAX / H_MIN).ln();
    let grid: Vec<f64> =
        (0..SCAN_POINTS).map(|k| H_MIN * (ratio * k as f64 / (SCAN_POINTS - 1) as f64).exp()).collect();
    let (best, _) = grid.iter().map(|&h| pl(h)).enumerate().min_by(|x, y| x.1.total_cmp(&y.1)).expect("nonempty grid");
    if best == 0 || best == SCAN_POINTS - 1 {
        return Err(PlacementError::NoInteriorMinimum { h: grid[best] });
    }

    let (h, v) = golden_section(pl, grid[best - 1], grid[best + 1], ALTITUDE_TOL);
    Ok(AltitudeOptimum { h, pl: v })
}

/// Tilt `ψ` and semi-apex `θ`, in degrees.
pub fn antenna_angles(a: f64, b: f64, h: f64) -> (f64, f64) {
    let b2 = b * b;
    if a - b < CIRCULAR_REL_TOL * a {
        return (0.0, (b / h).atan().to_degrees());
    }
    let denom = (a * a * h * h + b2 * b2).sqrt();
    let psi = ((b2 * h * h + b2 * b2).sqrt() / denom).min(1.0).acos();
    let theta = (b2 / denom).asin();
    (psi.to_degrees(), theta.to_degrees())
}

/// Distance from the footprint center to the UAV ground projection.
pub fn projection_offset(a: f64, b: f64, h: f64) -> f64 {
    if a - b < CIRCULAR_REL_TOL * a {
        return 0.0;
    }
    ((a * a - b * b) * (b * b + h * h)).sqrt() / b
}

pub fn assemble_placement(
    env: &Environment,
    footprint: &EllipseFootprint,
    f: f64,
    sign: OffsetSign,
) -> Result<UavPlacement, PlacementError> {
    let (a, b) = (footprint.a, footprint.b);
    let opt = optimize_altitude(env, a, b, f)?;
    let (psi, theta) = antenna_angles(a, b, opt.h);
    let offset = sign.factor() * projection_offset(a, b, opt.h);
    let proj = footprint.center + footprint.major_axis() * offset;
    Ok(UavPlacement {
        footprint: *footprint,
        h_opt: opt.h,
        pl_max_db: opt.pl,
        psi,
        theta,
        offset,
        proj,
        position: Position3 { x: proj.x, y: proj.y, z: opt.h },
    })
}
