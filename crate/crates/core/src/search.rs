//! One-dimensional minimization.

/// Inverse golden ratio, (√5 − 1)/2.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns `(x, f(x))` once the bracket is narrower than `tol`. Assumes `f`
/// is unimodal on the bracket; otherwise a local minimum is returned.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        // stalls once the bracket is at the floating-point spacing of x
        if x1 >= x2 {
            break;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    if f1 < fx && f1 <= f2 {
        (x1, f1)
    } else if f2 < fx {
        (x2, f2)
    } else {
        (x, fx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_vertex() {
        // a flat minimum is only resolvable to about √ε
        let (x, fx) = golden_section(|x| (x - 1.3).powi(2) + 2.0, -5.0, 5.0, 1e-10);
        assert!((x - 1.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reversed_bracket() {
        let (x, _) = golden_section(|x| (x + 0.5).abs(), 3.0, -3.0, 1e-9);
        assert!((x + 0.5).abs() < 1e-8);
    }

    #[test]
    fn monotone_function_goes_to_edge() {
        let (x, _) = golden_section(|x| x, 2.0, 4.0, 1e-9);
        assert!((x - 2.0).abs() < 1e-8);
    }
}
