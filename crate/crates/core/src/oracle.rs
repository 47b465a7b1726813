//! Independent numerical checks used by `verify` and the test suites.
//!
//! Nothing here calls the closed-form placement or conic-extraction code.

use nalgebra::{Matrix2, SMatrix, Vector2};

/// Ellipse traced on the ground by a tilted cone, in the cone's own frame:
/// the UAV projection at the origin, the tilt toward +x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracedFootprint {
    pub a: f64,
    pub b: f64,
    /// x-coordinate of the ellipse center.
    pub center_offset: f64,
    /// Residual y-coordinate of the center; zero up to round-off.
    pub center_y: f64,
}

const RAYS: usize = 24;

/// Casts rays along a cone with apex `(0, 0, h)`, axis tilted `psi_deg` from
/// the downward vertical toward +x and half-angle `theta_deg`, intersects
/// them with `z = 0`, and fits a conic through the hits.
///
/// Returns `None` if some ray misses the ground (`ψ + θ ≥ 90°`).
pub fn trace_cone_footprint(h: f64, psi_deg: f64, theta_deg: f64) -> Option<TracedFootprint> {
    let (psi, theta) = (psi_deg.to_radians(), theta_deg.to_radians());
    let axis = [psi.sin(), 0.0, -psi.cos()];
    let e1 = [psi.cos(), 0.0, psi.sin()];

    // Hits are scaled by 1/h to keep the fit well conditioned.
    let mut design = SMatrix::<f64, RAYS, 6>::zeros();
    for k in 0..RAYS {
        // offset start so no ray sits exactly on an axis of symmetry
        let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / RAYS as f64;
        let (c, s) = (phi.cos(), phi.sin());
        let dir = [
            theta.cos() * axis[0] + theta.sin() * c * e1[0],
            theta.sin() * s,
            theta.cos() * axis[2] + theta.sin() * c * e1[2],
        ];
        if dir[2] >= 0.0 {
            return None;
        }
        let t = 1.0 / -dir[2];
        let (x, y) = (t * dir[0], t * dir[1]);
        let row = [x * x, x * y, y * y, x, y, 1.0];
        for (j, v) in row.iter().enumerate() {
            design[(k, j)] = *v;
        }
    }

    let svd = design.svd(false, true);
    let v_t = svd.v_t?;
    let (k, _) = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?;
    let q = v_t.row(k);
    let (qa, qb, qc, qd, qe, qf) = (q[0], q[1], q[2], q[3], q[4], q[5]);

    let form = Matrix2::new(qa, qb / 2.0, qb / 2.0, qc);
    let center = -(form.try_inverse()? * Vector2::new(qd, qe)) / 2.0;
    let value_at_center = qf + 0.5 * (qd * center.x + qe * center.y);
    let eig = form.symmetric_eigenvalues();
    let axes: Vec<f64> = eig.iter().map(|l| (-value_at_center / l).sqrt()).collect();
    if axes.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let (a, b) = (axes[0].max(axes[1]), axes[0].min(axes[1]));
    Some(TracedFootprint { a: a * h, b: b * h, center_offset: center.x * h, center_y: center.y * h })
}
