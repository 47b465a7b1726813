//! End-to-end coverage planning and the packing-density comparisons.
//!
//! Pipeline: pack the unit square with `m` equal circles, solve the
//! homography onto the target quadrilateral, map every circle to an
//! ellipse, then place one UAV per ellipse.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::channel::Environment;
use crate::conic::{
    extract_ellipse, map_circle, tangency_check, Circle, Conic, ConicError, EllipseFootprint, Relation,
};
use crate::geometry::{GeometryError, Point2, Quadrilateral};
use crate::homography::{Homography, HomographyError};
use crate::packing::{get_packing, grid_packing, PackingConfig, PackingError};
use crate::placement::{assemble_placement, OffsetSign, PlacementError, UavPlacement};

/// Boundary samples per footprint for the containment check.
pub const CONTAINMENT_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OffsetPolicy {
    /// Ground projection on the side of the footprint center nearer the
    /// region centroid.
    #[default]
    TowardCentroid,
    AwayFromCentroid,
    Fixed(OffsetSign),
}

impl OffsetPolicy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "toward_centroid" => Some(Self::TowardCentroid),
            "away_from_centroid" => Some(Self::AwayFromCentroid),
            "positive" => Some(Self::Fixed(OffsetSign::Plus)),
            "negative" => Some(Self::Fixed(OffsetSign::Minus)),
            _ => None,
        }
    }

    fn sign_for(self, footprint: &EllipseFootprint, centroid: Point2) -> OffsetSign {
        let toward = if footprint.major_axis().dot(centroid - footprint.center) >= 0.0 {
            OffsetSign::Plus
        } else {
            OffsetSign::Minus
        };
        match (self, toward) {
            (Self::TowardCentroid, s) => s,
            (Self::AwayFromCentroid, OffsetSign::Plus) => OffsetSign::Minus,
            (Self::AwayFromCentroid, OffsetSign::Minus) => OffsetSign::Plus,
            (Self::Fixed(s), _) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub quad: Quadrilateral,
    pub m: usize,
    pub frequency_hz: f64,
    pub env: Environment,
    /// External packing; `None` uses the embedded catalog.
    pub packing: Option<PackingConfig>,
    pub offset_policy: OffsetPolicy,
    /// Round the normalized homography to this many decimals before mapping.
    pub homography_decimals: Option<u32>,
}

impl Scenario {
    pub fn new(quad: Quadrilateral, m: usize, frequency_hz: f64, env: Environment) -> Self {
        Self {
            quad,
            m,
            frequency_hz,
            env,
            packing: None,
            offset_policy: OffsetPolicy::default(),
            homography_decimals: None,
        }
    }

    pub fn with_packing(mut self, packing: PackingConfig) -> Self {
        self.packing = Some(packing);
        self
    }

    pub fn with_offset_policy(mut self, policy: OffsetPolicy) -> Self {
        self.offset_policy = policy;
        self
    }

    pub fn with_homography_decimals(mut self, decimals: Option<u32>) -> Self {
        self.homography_decimals = decimals;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UavFailure {
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Placement(#[from] PlacementError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Homography(#[from] HomographyError),
    #[error("mapped region is not a valid quadrilateral: {0}")]
    Region(#[from] GeometryError),
    #[error("UAV {index} (circle at {} r={}): {source}; conic {conic:?}", circle.center, circle.radius)]
    Uav { index: usize, circle: Circle, conic: Option<Box<Conic>>, source: UavFailure },
    #[error("UAV {index}: footprint leaves the region")]
    Containment { index: usize },
    #[error("UAVs {i} and {j}: footprints overlap")]
    Overlap { i: usize, j: usize },
}

/// Whether [`plan_with`] enforces the containment/non-overlap invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    Enforce,
    Skip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub homography: Homography,
    /// The input quadrilateral.
    pub quad: Quadrilateral,
    /// Image of the unit square under `homography`; equals `quad` unless the
    /// homography was rounded.
    pub region: Quadrilateral,
    pub packing: PackingConfig,
    pub conics: Vec<Conic>,
    /// One per circle, ids `1..=m` in packing order.
    pub placements: Vec<UavPlacement>,
    pub quad_area: f64,
    pub region_area: f64,
    pub footprint_area_sum: f64,
    /// `footprint_area_sum / quad_area`.
    pub coverage_fraction: f64,
    /// `footprint_area_sum / region_area`.
    pub region_coverage_fraction: f64,
}

impl Plan {
    pub fn footprints(&self) -> impl Iterator<Item = &EllipseFootprint> {
        self.placements.iter().map(|p| &p.footprint)
    }

    /// Relation of every footprint pair `(i, j)` with zero-based indices.
    pub fn footprint_relations(&self) -> Vec<(usize, usize, Relation)> {
        let fps: Vec<&EllipseFootprint> = self.footprints().collect();
        let mut out = Vec::new();
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                out.push((i, j, tangency_check(fps[i], fps[j])));
            }
        }
        out
    }
}

pub fn plan(s: &Scenario) -> Result<Plan, PlanError> {
    plan_with(s, Validation::Enforce)
}

pub fn plan_with(s: &Scenario, validation: Validation) -> Result<Plan, PlanError> {
    if !(s.frequency_hz > 0.0 && s.frequency_hz.is_finite()) {
        return Err(PlanError::InvalidScenario(format!("frequency {} Hz", s.frequency_hz)));
    }
    let packing = match &s.packing {
        Some(p) if p.m() != s.m => {
            return Err(PlanError::InvalidScenario(format!(
                "scenario asks for {} UAVs but the packing has {} circles",
                s.m,
                p.m()
            )))
        }
        Some(p) => p.clone(),
        None => get_packing(s.m)?,
    };

    let exact = Homography::solve(&Quadrilateral::unit_square(), &s.quad)?;
    let homography = match s.homography_decimals {
        Some(d) => exact.rounded(d)?,
        None => exact,
    };
    let region = Quadrilateral::new(homography.map_quad(&Quadrilateral::unit_square())?)?;
    let centroid = region.centroid();

    let results: Vec<Result<(Conic, UavPlacement), PlanError>> = packing
        .circles()
        .par_iter()
        .enumerate()
        .map(|(k, circle)| {
            let index = k + 1;
            let fail = |conic: Option<Conic>, source| PlanError::Uav {
                index,
                circle: *circle,
                conic: conic.map(Box::new),
                source,
            };
            let conic = map_circle(&homography, circle).map_err(|e| fail(None, e.into()))?;
            let footprint = extract_ellipse(&conic, index).map_err(|e| fail(Some(conic), e.into()))?;
            let sign = s.offset_policy.sign_for(&footprint, centroid);
            let placement = assemble_placement(&s.env, &footprint, s.frequency_hz, sign)
                .map_err(|e| fail(Some(conic), e.into()))?;
            Ok((conic, placement))
        })
        .collect();

    let mut conics = Vec::with_capacity(results.len());
    let mut placements = Vec::with_capacity(results.len());
    for r in results {
        let (c, p) = r?;
        conics.push(c);
        placements.push(p);
    }

    let quad_area = s.quad.shoelace_area();
    let region_area = region.shoelace_area();
    let footprint_area_sum: f64 = placements.iter().map(|p| p.footprint.area()).sum();
    let plan = Plan {
        homography,
        quad: s.quad,
        region,
        packing,
        conics,
        placements,
        quad_area,
        region_area,
        footprint_area_sum,
        coverage_fraction: footprint_area_sum / quad_area,
        region_coverage_fraction: footprint_area_sum / region_area,
    };

    if validation == Validation::Enforce {
        for p in &plan.placements {
            if !p.footprint.inside(&plan.region, CONTAINMENT_SAMPLES) {
                return Err(PlanError::Containment { index: p.footprint.index });
            }
        }
        if let Some((i, j, _)) = plan.footprint_relations().into_iter().find(|(_, _, r)| *r == Relation::Overlapping) {
            return Err(PlanError::Overlap { i: i + 1, j: j + 1 });
        }
    }
    Ok(plan)
}

/// Monte Carlo estimate of the fraction of `plan.region` covered by the
/// footprints, from `samples` uniform points accepted by rejection sampling.
pub fn coverage_fraction_mc(plan: &Plan, samples: usize, seed: u64) -> f64 {
    coverage_mc(&plan.region, &plan.placements.iter().map(|p| p.footprint).collect::<Vec<_>>(), samples, seed)
}

/// Fraction of `samples` uniform points in `region` that fall in any footprint.
pub fn coverage_mc(region: &Quadrilateral, footprints: &[EllipseFootprint], samples: usize, seed: u64) -> f64 {
    if footprints.is_empty() || samples == 0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = region.bbox();
    let mut accepted = 0usize;
    let mut hits = 0usize;
    while accepted < samples {
        let p = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if region.inset_distance(p) < 0.0 {
            continue;
        }
        accepted += 1;
        if footprints.iter().any(|e| e.contains(p)) {
            hits += 1;
        }
    }
    hits as f64 / samples as f64
}

/// Binomial standard error of a fraction `p` estimated from `n` samples.
pub fn binomial_sigma(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Total area of the images of `packing`'s circles under `h`.
pub fn packed_ellipse_area(h: &Homography, packing: &PackingConfig) -> Result<f64, PlanError> {
    packing
        .circles()
        .iter()
        .enumerate()
        .map(|(k, circle)| {
            let fail = |conic: Option<Conic>, source| PlanError::Uav {
                index: k + 1,
                circle: *circle,
                conic: conic.map(Box::new),
                source,
            };
            let conic = map_circle(h, circle).map_err(|e| fail(None, e.into()))?;
            let e = extract_ellipse(&conic, k + 1).map_err(|e| fail(Some(conic), e.into()))?;
            Ok(e.area())
        })
        .sum()
}

/// Coverage fraction of `n²` grid circles mapped onto the `u × v` rectangle.
pub fn rectangle_comparison(u: f64, v: f64, n: usize) -> Result<f64, PlanError> {
    if n == 0 {
        return Err(PlanError::InvalidScenario("grid size must be at least 1".into()));
    }
    let rect = Quadrilateral::rectangle(u, v)?;
    let h = Homography::solve(&Quadrilateral::unit_square(), &rect)?;
    Ok(packed_ellipse_area(&h, &grid_packing(n))? / rect.shoelace_area())
}

/// Vertex correspondence between the unit square and a target quadrilateral.
///
/// `rotation` shifts which target vertex receives the square's `(0,0)`;
/// `reflected` traverses the target clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Correspondence {
    pub rotation: usize,
    pub reflected: bool,
}

impl Correspondence {
    pub fn all() -> Vec<Self> {
        (0..4).flat_map(|rotation| [false, true].map(|reflected| Self { rotation, reflected })).collect()
    }

    pub fn arrange(self, q: &Quadrilateral) -> [Point2; 4] {
        let v = q.vertices();
        std::array::from_fn(|i| {
            let k = if self.reflected { 4 - i } else { i };
            v[(k + self.rotation) % 4]
        })
    }
}

/// Splits a regular hexagon with the given side length along the diagonal
/// through two opposite vertices.
///
/// Each half is listed counter-clockwise starting with its long side, so the
/// default correspondence sends the square's bottom edge onto it.
pub fn hexagon_halves(side: f64) -> Result<[Quadrilateral; 2], GeometryError> {
    let v: Vec<Point2> = (0..6)
        .map(|k| {
            let t = PI / 3.0 * k as f64;
            Point2::new(side * t.cos(), side * t.sin())
        })
        .collect();
    Ok([Quadrilateral::new([v[3], v[0], v[1], v[2]])?, Quadrilateral::new([v[0], v[3], v[4], v[5]])?])
}

/// Ellipse coverage of a regular hexagon of the given side, with four
/// mapped grid circles in each trapezoidal half.
pub fn hexagon_comparison_with(side: f64, corr: Correspondence) -> Result<f64, PlanError> {
    let halves = hexagon_halves(side)?;
    let packing = grid_packing(2);
    let square = *Quadrilateral::unit_square().vertices();
    let mut covered = 0.0;
    for half in &halves {
        let h = Homography::solve_points(&square, &corr.arrange(half))?;
        covered += packed_ellipse_area(&h, &packing)?;
    }
    let hexagon_area = 1.5 * 3f64.sqrt() * side * side;
    Ok(covered / hexagon_area)
}

/// [`hexagon_comparison_with`] for a unit hexagon and the default correspondence.
pub fn hexagon_comparison() -> f64 {
    hexagon_comparison_with(1.0, Correspondence::default()).expect("regular hexagon halves are valid")
}
