//! Planar primitives: points, convex quadrilaterals, area and containment.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// A point (or vector) in the plane.
///
/// World-frame points are in meters; unit-square points are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vertex {index} is not finite")]
    NonFinite { index: usize },
    #[error("vertices {0:?} are collinear")]
    DegenerateQuad([usize; 3]),
    #[error("quadrilateral edges cross each other")]
    SelfIntersecting,
    #[error("quadrilateral is not convex")]
    NonConvex,
}

/// Relative tolerance used when deciding that three vertices are collinear.
const COLLINEAR_REL_TOL: f64 = 1e-12;

/// Boundary tolerance for containment, as a fraction of the bounding-box diagonal.
pub const CONTAINMENT_REL_TOL: f64 = 1e-9;

/// A strictly convex quadrilateral with vertices stored counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrilateral {
    vertices: [Point2; 4],
}

impl Quadrilateral {
    /// Validates four vertices and normalizes them to counter-clockwise order.
    ///
    /// A clockwise input is reversed as a whole (`[v3, v2, v1, v0]`), so reversing
    /// the input order never changes the normalized result.
    pub fn new(vertices: [Point2; 4]) -> Result<Self, GeometryError> {
        if let Some(index) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }

        let scale = bbox_diagonal(&vertices);
        let tol = COLLINEAR_REL_TOL * scale * scale;
        for triple in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            let [i, j, k] = triple;
            let c = (vertices[j] - vertices[i]).cross(vertices[k] - vertices[i]);
            if c.abs() <= tol {
                return Err(GeometryError::DegenerateQuad(triple));
            }
        }

        if segments_cross(vertices[0], vertices[1], vertices[2], vertices[3])
            || segments_cross(vertices[1], vertices[2], vertices[3], vertices[0])
        {
            return Err(GeometryError::SelfIntersecting);
        }

        let turns: Vec<f64> = (0..4)
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % 4];
                let c = vertices[(i + 2) % 4];
                (b - a).cross(c - b)
            })
            .collect();
        let all_pos = turns.iter().all(|&t| t > 0.0);
        let all_neg = turns.iter().all(|&t| t < 0.0);
        if !all_pos && !all_neg {
            return Err(GeometryError::NonConvex);
        }

        let mut vertices = vertices;
        if all_neg {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn from_coords(coords: [[f64; 2]; 4]) -> Result<Self, GeometryError> {
        Self::new(coords.map(Point2::from))
    }

    /// The unit square `(0,0), (1,0), (1,1), (0,1)`.
    pub fn unit_square() -> Self {
        Self { vertices: [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)] }
    }

    /// Axis-aligned rectangle `[0,u] × [0,v]`.
    pub fn rectangle(u: f64, v: f64) -> Result<Self, GeometryError> {
        Self::from_coords([[0.0, 0.0], [u, 0.0], [u, v], [0.0, v]])
    }

    pub fn vertices(&self) -> &[Point2; 4] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % 4]
    }

    /// Polygon area by the shoelace formula.
    pub fn shoelace_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Mean of the four vertices.
    pub fn centroid(&self) -> Point2 {
        let s = self.vertices.iter().fold(Point2::default(), |acc, &v| acc + v);
        s * 0.25
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        bbox(&self.vertices)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        bbox_diagonal(&self.vertices)
    }

    /// Signed distance from `p` to the nearest edge line, positive inside.
    ///
    /// For a convex polygon the point is inside iff this is non-negative.
    pub fn inset_distance(&self, p: Point2) -> f64 {
        (0..4)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % 4];
                let edge = b - a;
                edge.cross(p - a) / edge.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// True iff `p` is inside or on the boundary, within
    /// [`CONTAINMENT_REL_TOL`] times the bounding-box diagonal.
    pub fn contains_point(&self, p: Point2) -> bool {
        self.inset_distance(p) >= -CONTAINMENT_REL_TOL * self.bbox_diagonal()
    }
}

/// Signed area of a closed polygon; positive for counter-clockwise order.
pub fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n).map(|i| vertices[i].cross(vertices[(i + 1) % n])).sum();
    0.5 * twice
}

fn bbox(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

fn bbox_diagonal(points: &[Point2]) -> f64 {
    let (lo, hi) = bbox(points);
    lo.distance(hi)
}

/// Proper crossing test for segments `ab` and `cd` (shared endpoints excluded).
fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = (b - a).cross(c - a);
    let d2 = (b - a).cross(d - a);
    let d3 = (d - c).cross(a - c);
    let d4 = (d - c).cross(b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}
