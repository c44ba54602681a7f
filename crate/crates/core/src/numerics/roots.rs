//! Polynomial roots by Aberth–Ehrlich iteration with Newton polishing.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Evaluate p and p′ at x; `coeffs[k]` multiplies xᵏ.
fn horner(coeffs: &[C64], x: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

fn coeff_norm(coeffs: &[C64]) -> f64 {
    coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

/// All complex roots of Σ coeffs[k] xᵏ (ascending order), with multiplicity.
pub fn poly_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::Domain("polynomial of degree 0 has no roots".into()));
    }
    let lead = coeffs[n];
    if lead == C64::new(0.0, 0.0) || !lead.is_finite() {
        return Err(Error::Domain("leading coefficient is zero".into()));
    }
    if n == 1 {
        return Ok(vec![-coeffs[0] / lead]);
    }
    let monic: Vec<C64> = coeffs.iter().map(|a| a / lead).collect();

    // Cauchy bound for the initial circle, slightly rotated to avoid symmetry.
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let r0 = radius.min(1e8) * 0.5 + 0.1;
    let mut z: Vec<C64> =
        (0..n).map(|k| C64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();

    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p == C64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d != C64::new(0.0, 0.0) {
                        s += 1.0 / d;
                    }
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // Newton polish; keep a step only if it lowers the residual.
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = horner(&monic, *zi);
            if dp == C64::new(0.0, 0.0) {
                break;
            }
            let cand = *zi - p / dp;
            if horner(&monic, cand).0.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    Ok(z)
}

/// |p(x)| relative to the coefficient sup-norm.
pub fn relative_residual(coeffs: &[C64], x: C64) -> f64 {
    horner(coeffs, x).0.norm() / coeff_norm(coeffs).max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn contains(roots: &[C64], x: C64, tol: f64) -> bool {
        roots.iter().any(|r| (r - x).norm() < tol)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let r = poly_roots(&[c(-1., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap();
        for w in [c(1., 0.), c(-1., 0.), c(0., 1.), c(0., -1.)] {
            assert!(contains(&r, w, 1e-14));
        }
    }

    #[test]
    fn double_root_multiset() {
        // (x−2)²(x−3)(x+1) = x⁴ − 6x³ + 9x² + 4x − 12
        let r = poly_roots(&[c(-12., 0.), c(4., 0.), c(9., 0.), c(-6., 0.), c(1., 0.)]).unwrap();
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [-1.0, 2.0, 2.0, 3.0];
        for (a, b) in re.iter().zip(want) {
            assert!((a - b).abs() < 1e-6, "{re:?}");
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(poly_roots(&[c(1., 0.)]).is_err());
        assert!(poly_roots(&[c(1., 0.), c(0., 0.)]).is_err());
    }
}
