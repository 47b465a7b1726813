//! Four-point projective homography between quadrilaterals.
//!
//! The matrix is recovered as the null vector of the 8×9 direct linear
//! transform (DLT) system built from the four vertex correspondences, scaled
//! to unit Frobenius norm with a fixed sign.

use nalgebra::{Matrix3, SMatrix, SVector, Vector3};
use thiserror::Error;

use crate::geometry::{Point2, Quadrilateral};

/// The 8×9 DLT system matrix.
pub type DltMatrix = SMatrix<f64, 8, 9>;

/// Ratio σ₈/σ₁ of the DLT matrix below which the correspondence is degenerate.
pub const DEGENERACY_RATIO: f64 = 1e-12;

/// Smallest admissible |denominator| of the rational map.
pub const LINE_AT_INFINITY_TOL: f64 = 1e-14;

/// |h₃ₓ| below which a vanishing point is reported at infinity.
pub const VANISHING_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomographyError {
    #[error("degenerate point configuration (sigma ratio {ratio:e})")]
    DegenerateConfiguration { ratio: f64 },
    #[error("point ({x}, {y}) maps to the line at infinity")]
    LineAtInfinity { x: f64, y: f64 },
    #[error("matrix is singular or not finite")]
    Singular,
}

/// A normalized planar homography: Σ hᵢⱼ² = 1 and `h33 ≥ 0`.
///
/// When `h33` is zero the first nonzero entry in row-major order is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homography {
    h: Matrix3<f64>,
}

/// Adjugate of `H`: maps world points back to the unit square up to scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseCoefficients {
    pub hhat: Matrix3<f64>,
}

/// Result of intersecting the images of a parallel line family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VanishingPoint {
    Finite(Point2),
    AtInfinity,
}

/// Builds the standard DLT rows for four correspondences `src[i] → dst[i]`.
pub fn build_dlt_matrix(src: &Quadrilateral, dst: &Quadrilateral) -> DltMatrix {
    dlt_rows(src.vertices(), dst.vertices())
}

fn dlt_rows(src: &[Point2; 4], dst: &[Point2; 4]) -> DltMatrix {
    let mut b = DltMatrix::zeros();
    for i in 0..4 {
        let p = src[i];
        let q = dst[i];
        let (x, y, xp, yp) = (p.x, p.y, q.x, q.y);
        let r = 2 * i;
        let row_x = [-x, -y, -1.0, 0.0, 0.0, 0.0, xp * x, xp * y, xp];
        let row_y = [0.0, 0.0, 0.0, -x, -y, -1.0, yp * x, yp * y, yp];
        for c in 0..9 {
            b[(r, c)] = row_x[c];
            b[(r + 1, c)] = row_y[c];
        }
    }
    b
}

/// Singular values of the DLT matrix in descending order.
pub fn dlt_singular_values(b: &DltMatrix) -> [f64; 8] {
    let sv = b.singular_values();
    let mut out: Vec<f64> = sv.iter().copied().collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out.try_into().expect("8 singular values")
}

impl Homography {
    /// Solves for the homography mapping each vertex of `src` to the
    /// corresponding vertex of `dst`.
    pub fn solve(src: &Quadrilateral, dst: &Quadrilateral) -> Result<Self, HomographyError> {
        Self::solve_points(src.vertices(), dst.vertices())
    }

    /// Same as [`Homography::solve`] for raw, unvalidated correspondences.
    pub fn solve_points(src: &[Point2; 4], dst: &[Point2; 4]) -> Result<Self, HomographyError> {
        let b = dlt_rows(src, dst);
        let sv = dlt_singular_values(&b);
        let ratio = sv[7] / sv[0];
        if ratio.is_nan() || ratio < DEGENERACY_RATIO {
            return Err(HomographyError::DegenerateConfiguration { ratio });
        }

        // Pad to 9×9 so the SVD returns the full right-singular basis; the
        // direction with the smallest singular value spans the null space.
        let mut padded = SMatrix::<f64, 9, 9>::zeros();
        padded.fixed_rows_mut::<8>(0).copy_from(&b);
        let svd = padded.svd(false, true);
        let v_t = svd.v_t.ok_or(HomographyError::Singular)?;
        let (k, _) = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty");
        let null: SVector<f64, 9> = v_t.row(k).transpose();
        let m = Matrix3::from_row_slice(null.as_slice());
        Self::from_matrix(m)
    }

    /// Normalizes an arbitrary nonsingular matrix.
    pub fn from_matrix(m: Matrix3<f64>) -> Result<Self, HomographyError> {
        if !m.iter().all(|v| v.is_finite()) {
            return Err(HomographyError::Singular);
        }
        let norm = m.norm();
        if norm == 0.0 {
            return Err(HomographyError::Singular);
        }
        let mut h = m / norm;
        let pivot = if h[(2, 2)] != 0.0 {
            h[(2, 2)]
        } else {
            (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).map(|rc| h[rc]).find(|v| *v != 0.0).unwrap_or(0.0)
        };
        if pivot < 0.0 {
            h = -h;
        }
        if h.determinant().abs() <= 1e-12 {
            return Err(HomographyError::Singular);
        }
        Ok(Self { h })
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self, HomographyError> {
        Self::from_matrix(Matrix3::from_fn(|r, c| rows[r][c]))
    }

    pub fn identity() -> Self {
        Self::from_matrix(Matrix3::identity()).expect("identity is nonsingular")
    }

    /// Rounds every normalized entry to `decimals` places and renormalizes.
    ///
    /// The rational map is scale-free, so this is the transform described by
    /// a coefficient table printed to that many decimals.
    pub fn rounded(&self, decimals: u32) -> Result<Self, HomographyError> {
        let k = 10f64.powi(decimals as i32);
        Self::from_matrix(self.h.map(|v| (v * k).round() / k))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.h
    }

    /// Entry `h_{r+1, c+1}` with zero-based indices.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.h[(r, c)]
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let h = &self.h;
        [[h[(0, 0)], h[(0, 1)], h[(0, 2)]], [h[(1, 0)], h[(1, 1)], h[(1, 2)]], [h[(2, 0)], h[(2, 1)], h[(2, 2)]]]
    }

    pub fn determinant(&self) -> f64 {
        self.h.determinant()
    }

    pub fn inverse_coefficients(&self) -> InverseCoefficients {
        let h = |r: usize, c: usize| self.h[(r - 1, c - 1)];
        // Cofactor transpose written out entry by entry.
        let hhat = Matrix3::new(
            h(2, 2) * h(3, 3) - h(2, 3) * h(3, 2),
            h(1, 3) * h(3, 2) - h(1, 2) * h(3, 3),
            h(1, 2) * h(2, 3) - h(1, 3) * h(2, 2),
            h(2, 3) * h(3, 1) - h(2, 1) * h(3, 3),
            h(1, 1) * h(3, 3) - h(1, 3) * h(3, 1),
            h(1, 3) * h(2, 1) - h(1, 1) * h(2, 3),
            h(2, 1) * h(3, 2) - h(2, 2) * h(3, 1),
            h(1, 2) * h(3, 1) - h(1, 1) * h(3, 2),
            h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1),
        );
        InverseCoefficients { hhat }
    }

    /// Forward rational map.
    pub fn apply(&self, p: Point2) -> Result<Point2, HomographyError> {
        project(&self.h, p)
    }

    /// Inverse rational map through the adjugate.
    pub fn apply_inverse(&self, p: Point2) -> Result<Point2, HomographyError> {
        project(&self.inverse_coefficients().hhat, p)
    }

    /// Image of a quadrilateral, vertex by vertex.
    pub fn map_quad(&self, q: &Quadrilateral) -> Result<[Point2; 4], HomographyError> {
        let v = q.vertices();
        Ok([self.apply(v[0])?, self.apply(v[1])?, self.apply(v[2])?, self.apply(v[3])?])
    }

    /// Vanishing points of the horizontal (`y = const`) and vertical
    /// (`x = const`) line families.
    pub fn vanishing_points(&self) -> (VanishingPoint, VanishingPoint) {
        let h = &self.h;
        let vp = |col: usize| {
            let w = h[(2, col)];
            if w.abs() < VANISHING_TOL {
                VanishingPoint::AtInfinity
            } else {
                VanishingPoint::Finite(Point2::new(h[(0, col)] / w, h[(1, col)] / w))
            }
        };
        (vp(0), vp(1))
    }

    /// Determinant of the Jacobian of the rational map at `p`.
    pub fn jacobian_det(&self, p: Point2) -> Result<f64, HomographyError> {
        let h = |r: usize, c: usize| self.h[(r - 1, c - 1)];
        let w = h(3, 3) + h(3, 1) * p.x + h(3, 2) * p.y;
        if w.abs() < LINE_AT_INFINITY_TOL {
            return Err(HomographyError::LineAtInfinity { x: p.x, y: p.y });
        }
        let numerator = h(3, 1) * (h(1, 2) * h(2, 3) - h(1, 3) * h(2, 2))
            + h(3, 2) * (h(1, 3) * h(2, 1) - h(1, 1) * h(2, 3))
            + h(3, 3) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1));
        Ok(numerator / (w * w * w))
    }
}

impl InverseCoefficients {
    /// Entry `ĥ_{r,c}` with one-based indices.
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.hhat[(r - 1, c - 1)]
    }
}

fn project(m: &Matrix3<f64>, p: Point2) -> Result<Point2, HomographyError> {
    let v = m * Vector3::new(p.x, p.y, 1.0);
    if v.z.abs() < LINE_AT_INFINITY_TOL {
        return Err(HomographyError::LineAtInfinity { x: p.x, y: p.y });
    }
    Ok(Point2::new(v.x / v.z, v.y / v.z))
}
