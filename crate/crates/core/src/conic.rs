//! Circles mapped through a homography, conic classification, and ellipse
//! parameter extraction.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::geometry::{Point2, Quadrilateral};
use crate::homography::Homography;

/// Tolerance on the canonical implicit value used by [`tangency_check`].
pub const TOL_TANGENT: f64 = 1e-6;

/// Relative tolerance on `4AC − B²` below which a conic is a parabola.
const PARABOLA_REL_TOL: f64 = 1e-10;

/// A conic is degenerate when the quantity that separates it from a point or
/// line pair (value at the center, or the 3×3 determinant for parabolas) is
/// below this fraction of the magnitudes summed to compute it. Measuring
/// against the summands keeps the test independent of where the world
/// origin is.
const DEGENERATE_REL_TOL: f64 = 1e-12;

/// Relative gap between semi-axes below which the orientation is pinned to 0.
const ROUND_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConicError {
    #[error("conic is a {0:?}, not a bounded ellipse")]
    NotBounded(ConicKind),
    #[error("conic is a {0:?}, not an ellipse")]
    NotAnEllipse(ConicKind),
    #[error("all quadratic coefficients are zero")]
    NotQuadratic,
    #[error("invalid ellipse parameters: {0}")]
    InvalidEllipse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
    Degenerate,
}

/// Pairwise relation between two closed curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Relation {
    Disjoint,
    Tangent,
    Overlapping,
}

/// `a·x² + b·xy + c·y² + d·x + e·y + f = 0`.
///
/// Coefficients are scaled so the largest magnitude is 1 and `a + c > 0`
/// (when `a + c` vanishes, the first nonzero coefficient is positive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Conic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self, ConicError> {
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(ConicError::NotQuadratic);
        }
        let coeffs = [a, b, c, d, e, f];
        let max = coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let sign_ref = if a + c != 0.0 { a + c } else { *coeffs.iter().find(|v| **v != 0.0).expect("nonzero") };
        let k = sign_ref.signum() / max;
        Ok(Self { a: a * k, b: b * k, c: c * k, d: d * k, e: e * k, f: f * k })
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// The conic multiplied by `lambda` and renormalized.
    pub fn scaled(&self, lambda: f64) -> Result<Self, ConicError> {
        let [a, b, c, d, e, f] = self.coefficients().map(|v| v * lambda);
        Self::new(a, b, c, d, e, f)
    }

    pub fn value(&self, p: Point2) -> f64 {
        let (x, y) = (p.x, p.y);
        self.a * x * x + self.b * x * y + self.c * y * y + self.d * x + self.e * y + self.f
    }

    /// `4AC − B²`.
    pub fn discriminant(&self) -> f64 {
        4.0 * self.a * self.c - self.b * self.b
    }

    /// `CD² + AE² − BDE − 4ACF + B²F`, which is `−4·det` of the conic matrix.
    pub fn ellipse_condition(&self) -> f64 {
        let Self { a, b, c, d, e, f } = *self;
        c * d * d + a * e * e - b * d * e - 4.0 * a * c * f + b * b * f
    }

    pub fn classify(&self) -> ConicKind {
        classify(self)
    }
}

/// A circle in the unit-square frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Self {
        Self { center, radius }
    }

    /// Coefficients `(A, D, E, F)` of `A(x² + y²) + Dx + Ey + F = 0` with `A = 1`.
    pub fn general_form(&self) -> (f64, f64, f64, f64) {
        let Point2 { x, y } = self.center;
        (1.0, -2.0 * x, -2.0 * y, x * x + y * y - self.radius * self.radius)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.center + Point2::new(t.cos(), t.sin()) * self.radius
    }

    /// Exact relation between two circles with a relative tangency tolerance.
    pub fn relation(&self, other: &Circle, rel_tol: f64) -> Relation {
        let dist = self.center.distance(other.center);
        let outer = self.radius + other.radius;
        let inner = (self.radius - other.radius).abs();
        let tol = rel_tol * outer;
        if (dist - outer).abs() <= tol || (dist - inner).abs() <= tol && dist > tol {
            Relation::Tangent
        } else if dist > outer {
            Relation::Disjoint
        } else {
            Relation::Overlapping
        }
    }
}

/// An elliptical footprint in the world frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseFootprint {
    pub center: Point2,
    /// Major semi-axis (m).
    pub a: f64,
    /// Minor semi-axis (m).
    pub b: f64,
    /// Major-axis orientation, counter-clockwise from +x, in `(−π/2, π/2]`.
    pub phi: f64,
    pub index: usize,
}

impl EllipseFootprint {
    pub fn new(center: Point2, a: f64, b: f64, phi: f64, index: usize) -> Result<Self, ConicError> {
        if !(center.is_finite() && a.is_finite() && b.is_finite() && phi.is_finite()) {
            return Err(ConicError::InvalidEllipse("non-finite parameter".into()));
        }
        if !(b > 0.0 && a >= b) {
            return Err(ConicError::InvalidEllipse(format!("need a >= b > 0, got a={a}, b={b}")));
        }
        Ok(Self { center, a, b, phi: wrap_half_turn(phi), index })
    }

    /// Unit vector along the major axis.
    pub fn major_axis(&self) -> Point2 {
        Point2::new(self.phi.cos(), self.phi.sin())
    }

    pub fn minor_axis(&self) -> Point2 {
        Point2::new(-self.phi.sin(), self.phi.cos())
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.center + self.major_axis() * (self.a * t.cos()) + self.minor_axis() * (self.b * t.sin())
    }

    /// `n` boundary points at equally spaced parameter values.
    pub fn boundary_samples(&self, n: usize) -> Vec<Point2> {
        (0..n).map(|k| self.point_at(2.0 * PI * k as f64 / n as f64)).collect()
    }

    /// `(u/a)² + (v/b)² − 1` in the ellipse's own frame: negative inside,
    /// zero on the boundary, scale-free.
    pub fn implicit_value(&self, p: Point2) -> f64 {
        let r = p - self.center;
        let u = r.dot(self.major_axis()) / self.a;
        let v = r.dot(self.minor_axis()) / self.b;
        u * u + v * v - 1.0
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.implicit_value(p) <= 0.0
    }

    pub fn area(&self) -> f64 {
        ellipse_area(self)
    }

    /// True iff every one of `samples` boundary points lies in `quad`.
    pub fn inside(&self, quad: &Quadrilateral, samples: usize) -> bool {
        self.boundary_samples(samples).into_iter().all(|p| quad.contains_point(p))
    }
}

/// Image of a circle under `h`, via the inverse-map coefficients.
pub fn map_circle(h: &Homography, circle: &Circle) -> Result<Conic, ConicError> {
    let inv = h.inverse_coefficients();
    let g = |r, c| inv.at(r, c);
    let (a, d, e, f) = circle.general_form();

    let a_p = a * (g(1, 1).powi(2) + g(2, 1).powi(2)) + g(3, 1) * (d * g(1, 1) + e * g(2, 1)) + f * g(3, 1).powi(2);
    let b_p = g(1, 1) * (2.0 * a * g(1, 2) + d * g(3, 2))
        + g(2, 1) * (2.0 * a * g(2, 2) + e * g(3, 2))
        + g(3, 1) * (d * g(1, 2) + e * g(2, 2) + 2.0 * f * g(3, 2));
    let c_p = a * (g(1, 2).powi(2) + g(2, 2).powi(2)) + g(3, 2) * (d * g(1, 2) + e * g(2, 2)) + f * g(3, 2).powi(2);
    let d_p = g(1, 1) * (2.0 * a * g(1, 3) + d * g(3, 3))
        + g(2, 1) * (2.0 * a * g(2, 3) + e * g(3, 3))
        + g(3, 1) * (d * g(1, 3) + e * g(2, 3) + 2.0 * f * g(3, 3));
    let e_p = g(1, 2) * (2.0 * a * g(1, 3) + d * g(3, 3))
        + g(2, 2) * (2.0 * a * g(2, 3) + e * g(3, 3))
        + g(3, 2) * (d * g(1, 3) + e * g(2, 3) + 2.0 * f * g(3, 3));
    let f_p = a * (g(1, 3).powi(2) + g(2, 3).powi(2)) + g(3, 3) * (d * g(1, 3) + e * g(2, 3)) + f * g(3, 3).powi(2);

    let conic = Conic::new(a_p, b_p, c_p, d_p, e_p, f_p)?;
    match conic.classify() {
        ConicKind::Ellipse => Ok(conic),
        kind => Err(ConicError::NotBounded(kind)),
    }
}

pub fn classify(c: &Conic) -> ConicKind {
    let Conic { a, b, c: cc, d, e, f } = *c;
    let quad_scale = a * a + b * b + cc * cc;
    let disc = c.discriminant();

    if disc.abs() <= PARABOLA_REL_TOL * quad_scale {
        let terms = [cc * d * d, a * e * e, b * d * e, 4.0 * a * cc * f, b * b * f];
        let size: f64 = terms.iter().map(|t| t.abs()).sum();
        return if c.ellipse_condition().abs() <= DEGENERATE_REL_TOL * size {
            ConicKind::Degenerate
        } else {
            ConicKind::Parabola
        };
    }

    let x0 = (b * e - 2.0 * cc * d) / disc;
    let y0 = (b * d - 2.0 * a * e) / disc;
    let at_center = f + 0.5 * (d * x0 + e * y0);
    let size = f.abs() + 0.5 * ((d * x0).abs() + (e * y0).abs());
    if at_center.abs() <= DEGENERATE_REL_TOL * size {
        ConicKind::Degenerate
    } else if disc < 0.0 {
        ConicKind::Hyperbola
    } else if at_center * (a + cc) < 0.0 {
        // same sign test as CD² + AE² − BDE − 4ACF + B²F > 0
        ConicKind::Ellipse
    } else {
        // imaginary ellipse: no real points
        ConicKind::Degenerate
    }
}

/// Center, semi-axes and orientation of an ellipse conic.
pub fn extract_ellipse(c: &Conic, index: usize) -> Result<EllipseFootprint, ConicError> {
    let kind = classify(c);
    if kind != ConicKind::Ellipse {
        return Err(ConicError::NotAnEllipse(kind));
    }
    let Conic { a, b, c: cc, d, e, .. } = *c;

    let delta2 = 4.0 * a * cc - b * b;
    let delta1 = c.ellipse_condition();
    let mu = 4.0 * delta1 / (delta2 * delta2);
    let root = ((a - cc).powi(2) + b * b).sqrt();
    let plus = a + cc + root;
    // a + c − root, rewritten to avoid cancellation for elongated ellipses
    let minus = delta2 / plus;
    let major = (mu / 2.0 * plus).sqrt();
    let minor = (mu / 2.0 * minus).sqrt();

    let center = Point2::new((b * e - 2.0 * cc * d) / delta2, (b * d - 2.0 * a * e) / delta2);

    let phi = if major - minor <= ROUND_REL_TOL * major {
        0.0
    } else {
        // ½·atan2(B, A − C) points along the minor axis
        0.5 * b.atan2(a - cc) + FRAC_PI_2
    };
    EllipseFootprint::new(center, major, minor, phi, index)
}

/// Relation between two ellipses, decided from the sign of each ellipse's
/// canonical implicit function along the other's boundary.
pub fn tangency_check(e1: &EllipseFootprint, e2: &EllipseFootprint) -> Relation {
    let m = min_implicit_on_boundary(e1, e2).min(min_implicit_on_boundary(e2, e1));
    if m < -TOL_TANGENT {
        Relation::Overlapping
    } else if m <= TOL_TANGENT {
        Relation::Tangent
    } else {
        Relation::Disjoint
    }
}

/// Minimum over `t` of `target.implicit_value(curve.point_at(t))`.
fn min_implicit_on_boundary(curve: &EllipseFootprint, target: &EllipseFootprint) -> f64 {
    const SAMPLES: usize = 720;
    let step = 2.0 * PI / SAMPLES as f64;
    let g = |t: f64| target.implicit_value(curve.point_at(t));
    let values: Vec<f64> = (0..SAMPLES).map(|k| g(k as f64 * step)).collect();

    let mut best = values.iter().copied().fold(f64::INFINITY, f64::min);
    for k in 0..SAMPLES {
        let prev = values[(k + SAMPLES - 1) % SAMPLES];
        let next = values[(k + 1) % SAMPLES];
        if values[k] <= prev && values[k] <= next {
            let t0 = k as f64 * step;
            let (_, v) = crate::search::golden_section(g, t0 - step, t0 + step, 1e-12);
            best = best.min(v);
        }
    }
    best
}

pub fn ellipse_area(e: &EllipseFootprint) -> f64 {
    PI * e.a * e.b
}

fn wrap_half_turn(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(PI);
    if p > FRAC_PI_2 {
        p -= PI;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;

    fn case_study_h() -> Homography {
        let q =
            Quadrilateral::from_coords([[-100.0, -100.0], [200.0, -300.0], [1500.0, 250.0], [50.0, 400.0]]).unwrap();
        Homography::solve(&Quadrilateral::unit_square(), &q).unwrap()
    }

    #[test]
    fn identity_maps_unit_circle_to_itself() {
        let c = map_circle(&Homography::identity(), &Circle::new(Point2::default(), 1.0)).unwrap();
        assert!((c.a - c.c).abs() < 1e-15 && c.b.abs() < 1e-15);
        assert!((c.f / c.a + 1.0).abs() < 1e-15);
    }

    #[test]
    fn axis_scaling_maps_circle_to_ellipse() {
        let h = Homography::from_rows([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let c = map_circle(&h, &Circle::new(Point2::default(), 1.0)).unwrap();
        // x²/4 + y² − 1 = 0 up to scale
        let k = c.c;
        assert!((c.a / k - 0.25).abs() < 1e-14);
        assert!((c.f / k + 1.0).abs() < 1e-14);
        assert!(c.b.abs() < 1e-15 && c.d.abs() < 1e-15 && c.e.abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap().classify(), ConicKind::Ellipse);
        assert_eq!(Conic::new(1.0, 0.0, 0.0, 0.0, -1.0, 0.0).unwrap().classify(), ConicKind::Parabola);
        assert_eq!(Conic::new(0.0, 1.0, 0.0, 0.0, 0.0, -1.0).unwrap().classify(), ConicKind::Hyperbola);
        // x² + y² = 0 is a single point
        assert_eq!(Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, 0.0).unwrap().classify(), ConicKind::Degenerate);
        // x² + y² + 1 = 0 has no real points
        assert_eq!(Conic::new(1.0, 0.0, 1.0, 0.0, 0.0, 1.0).unwrap().classify(), ConicKind::Degenerate);
        // negated circle is still an ellipse after normalization
        assert_eq!(Conic::new(-1.0, 0.0, -1.0, 0.0, 0.0, 1.0).unwrap().classify(), ConicKind::Ellipse);
        assert_eq!(Conic::new(0.0, 0.0, 0.0, 1.0, 1.0, 1.0), Err(ConicError::NotQuadratic));
        // line pairs: crossing, parallel
        assert_eq!(Conic::new(1.0, 0.0, -1.0, 0.0, 0.0, 0.0).unwrap().classify(), ConicKind::Degenerate);
        assert_eq!(Conic::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0).unwrap().classify(), ConicKind::Degenerate);
    }

    #[test]
    fn classification_ignores_translation() {
        // (x − x0)² + (y − y0)² = r², expanded far from the origin
        let circle = |x0: f64, y0: f64, r: f64| {
            Conic::new(1.0, 0.0, 1.0, -2.0 * x0, -2.0 * y0, x0 * x0 + y0 * y0 - r * r).unwrap()
        };
        for (x0, y0) in [(0.0, 0.0), (2500.0, -1800.0), (1e5, 3e4)] {
            assert_eq!(circle(x0, y0, 0.5).classify(), ConicKind::Ellipse, "({x0}, {y0})");
            assert_eq!(circle(x0, y0, 0.0).classify(), ConicKind::Degenerate, "({x0}, {y0})");
        }
    }

    #[test]
    fn extract_axis_aligned() {
        let e = extract_ellipse(&Conic::new(0.25, 0.0, 1.0, 0.0, 0.0, -1.0).unwrap(), 7).unwrap();
        assert!((e.a - 2.0).abs() < 1e-14 && (e.b - 1.0).abs() < 1e-14);
        assert!(e.center.norm() < 1e-15);
        assert!(e.phi.abs() < 1e-15);
        assert_eq!(e.index, 7);
    }

    #[test]
    fn extract_rotated_matches_eigen_oracle() {
        let conic = Conic::new(5.0, -6.0, 5.0, 0.0, 0.0, -8.0).unwrap();
        // oracle: eigen-decomposition of the quadratic form
        let q = Matrix2::<f64>::new(5.0, -3.0, -3.0, 5.0);
        let eig = q.symmetric_eigen();
        let (imin, imax) = if eig.eigenvalues[0] < eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
        let a_ref = (8.0 / eig.eigenvalues[imin]).sqrt();
        let b_ref = (8.0 / eig.eigenvalues[imax]).sqrt();
        let dir = eig.eigenvectors.column(imin);
        let phi_ref = wrap_half_turn(dir[1].atan2(dir[0]));

        let e = extract_ellipse(&conic, 0).unwrap();
        assert!((e.a - a_ref).abs() < 1e-12 && (a_ref - 2.0).abs() < 1e-12);
        assert!((e.b - b_ref).abs() < 1e-12 && (b_ref - 1.0).abs() < 1e-12);
        assert!((e.phi - phi_ref).abs() < 1e-12);
        assert!((e.phi - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn extract_shifted_circle() {
        // (x−3)² + (y+2)² − 4 = 0
        let conic = Conic::new(1.0, 0.0, 1.0, -6.0, 4.0, 9.0).unwrap();
        let e = extract_ellipse(&conic, 0).unwrap();
        assert!((e.a - 2.0).abs() < 1e-12 && (e.b - 2.0).abs() < 1e-12);
        assert!(e.center.distance(Point2::new(3.0, -2.0)) < 1e-12);
        assert_eq!(e.phi, 0.0);
    }

    #[test]
    fn extract_rejects_non_ellipse() {
        let hyperbola = Conic::new(0.0, 1.0, 0.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(extract_ellipse(&hyperbola, 0), Err(ConicError::NotAnEllipse(ConicKind::Hyperbola)));
    }

    #[test]
    fn case_study_footprint_near_first_corner() {
        // With the exact DLT solution; the printed 4-decimal matrix gives 93.8 × 83.0.
        let h = case_study_h();
        let c = map_circle(&h, &Circle::new(Point2::new(0.25, 0.25), 0.25)).unwrap();
        let e = extract_ellipse(&c, 0).unwrap();
        assert!((e.a - 92.86).abs() < 0.01 && (e.b - 82.35).abs() < 0.01, "{e:?}");

        let hr = h.rounded(4).unwrap();
        let e = extract_ellipse(&map_circle(&hr, &Circle::new(Point2::new(0.25, 0.25), 0.25)).unwrap(), 0).unwrap();
        assert!((e.a - 93.8).abs() < 0.1 && (e.b - 83.0).abs() < 0.1, "{e:?}");
    }

    #[test]
    fn case_study_image_is_not_a_circle() {
        let c = map_circle(&case_study_h(), &Circle::new(Point2::new(0.5, 0.5), 0.5)).unwrap();
        assert!((c.a - c.c).abs() > 1e-6 || c.b.abs() > 1e-6);
    }

    #[test]
    fn mapped_boundary_satisfies_conic() {
        let h = case_study_h();
        let circle = Circle::new(Point2::new(0.75, 0.25), 0.25);
        let conic = map_circle(&h, &circle).unwrap();
        let e = extract_ellipse(&conic, 0).unwrap();
        for p in e.boundary_samples(64) {
            assert!(conic.value(p).abs() < 1e-6);
        }
        // and the image of the circle's own points lies on the ellipse
        for k in 0..16 {
            let p = h.apply(circle.point_at(k as f64 * 0.4)).unwrap();
            assert!(e.implicit_value(p).abs() < 1e-9);
        }
    }

    #[test]
    fn tangency_examples() {
        let unit = |x: f64| EllipseFootprint::new(Point2::new(x, 0.0), 1.0, 1.0, 0.0, 0).unwrap();
        assert_eq!(tangency_check(&unit(0.0), &unit(2.0)), Relation::Tangent);
        assert_eq!(tangency_check(&unit(0.0), &unit(3.0)), Relation::Disjoint);
        assert_eq!(tangency_check(&unit(0.0), &unit(1.5)), Relation::Overlapping);
        let big = EllipseFootprint::new(Point2::default(), 5.0, 4.0, 0.3, 1).unwrap();
        assert_eq!(tangency_check(&big, &unit(0.5)), Relation::Overlapping);
        assert_eq!(tangency_check(&unit(0.5), &big), Relation::Overlapping);
    }

    #[test]
    fn case_study_adjacent_footprints_are_tangent() {
        let h = case_study_h();
        let c1 = Circle::new(Point2::new(0.25, 0.25), 0.25);
        let c2 = Circle::new(Point2::new(0.75, 0.25), 0.25);
        let e1 = extract_ellipse(&map_circle(&h, &c1).unwrap(), 0).unwrap();
        let e2 = extract_ellipse(&map_circle(&h, &c2).unwrap(), 1).unwrap();
        let touch = h.apply(Point2::new(0.5, 0.25)).unwrap();
        assert!(e1.implicit_value(touch).abs() < 1e-9);
        assert!(e2.implicit_value(touch).abs() < 1e-9);
        assert_eq!(tangency_check(&e1, &e2), Relation::Tangent);
    }

    #[test]
    fn ellipse_area_example() {
        let e = EllipseFootprint::new(Point2::default(), 2.0, 1.0, 0.0, 0).unwrap();
        assert!((ellipse_area(&e) - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn footprint_rejects_bad_axes() {
        assert!(EllipseFootprint::new(Point2::default(), 1.0, 2.0, 0.0, 0).is_err());
        assert!(EllipseFootprint::new(Point2::default(), 1.0, 0.0, 0.0, 0).is_err());
    }

    #[test]
    fn circle_relations() {
        let a = Circle::new(Point2::new(0.25, 0.25), 0.25);
        let b = Circle::new(Point2::new(0.75, 0.25), 0.25);
        let c = Circle::new(Point2::new(0.75, 0.75), 0.25);
        let d = Circle::new(Point2::new(0.6, 0.25), 0.25);
        assert_eq!(a.relation(&b, 1e-9), Relation::Tangent);
        assert_eq!(a.relation(&c, 1e-9), Relation::Disjoint);
        assert_eq!(a.relation(&d, 1e-9), Relation::Overlapping);
    }
}
