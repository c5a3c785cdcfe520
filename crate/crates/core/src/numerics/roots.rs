//! Simultaneous root finding by the Aberth–Ehrlich method.

use super::NumericsError;
use crate::polycore::UniComplexPoly;
use num_complex::Complex64;

/// All roots of a polynomial, with multiplicity, plus diagnostics.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Absolute residuals `|p(root)|` against the input polynomial.
    pub residuals: Vec<f64>,
    /// Size of the near-coincident cluster each root belongs to; 1 for a
    /// well-separated simple root.
    pub multiplicity_hint: Vec<usize>,
    pub iterations: usize,
}

/// Finds all complex roots with the default tolerance (1e-12) and iteration
/// cap (200).
pub fn roots(p: &UniComplexPoly) -> Result<RootSet, NumericsError> {
    roots_with(p, 1e-12, 200)
}

/// Aberth–Ehrlich iteration from a perturbed circle of radius given by the
/// Cauchy bound, followed by a short Newton polish per root.  Convergence is
/// judged on the relative backward error `|p(z)| / Σ|c_k| max(1,|z|)^k`, so
/// large integer coefficients do not skew the test.
pub fn roots_with(p: &UniComplexPoly, tol: f64, max_iter: usize) -> Result<RootSet, NumericsError> {
    if p.is_zero() {
        return Err(NumericsError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(NumericsError::DegreeZero);
    }
    // Scale coefficients to unit leading coefficient for the iteration;
    // roots are unchanged and the ratios p/p' are scale free anyway.
    let lead = p.leading();
    let mut coeffs: Vec<Complex64> = p.coeffs.iter().map(|&c| c / lead).collect();

    // Exact zero constant terms correspond to exact roots at the origin.
    let mut zero_roots = 0usize;
    while coeffs.len() > 1 && coeffs[0].norm_sqr() == 0.0 {
        coeffs.remove(0);
        zero_roots += 1;
    }
    let work = UniComplexPoly::new(coeffs);
    let n = work.degree();
    let mut zs: Vec<Complex64> = Vec::with_capacity(n);
    let mut iterations = 0usize;

    if n > 0 {
        let cauchy = 1.0
            + work.coeffs[..n]
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
        let radius = cauchy.min(1e6);
        for j in 0..n {
            // Irrational angular offset breaks symmetry so no two starting
            // points straddle a root constellation symmetrically.
            let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / n as f64 + 0.736;
            zs.push(Complex64::from_polar(radius, th));
        }
        let deriv = work.derivative();
        let mut converged = false;
        while iterations < max_iter {
            iterations += 1;
            let mut worst = 0.0f64;
            for j in 0..n {
                let z = zs[j];
                let pv = work.eval(z);
                let dv = deriv.eval(z);
                let newton = if dv.norm_sqr() == 0.0 {
                    // Stationary point: nudge instead of dividing by zero.
                    Complex64::new(1e-8, 1e-8)
                } else {
                    pv / dv
                };
                let mut s = Complex64::new(0.0, 0.0);
                for (k, &zk) in zs.iter().enumerate() {
                    if k != j {
                        let d = z - zk;
                        if d.norm_sqr() > 0.0 {
                            s += d.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * s;
                let step = if denom.norm_sqr() == 0.0 { newton } else { newton / denom };
                zs[j] = z - step;
                let rel = step.norm() / (1.0 + zs[j].norm());
                worst = worst.max(rel);
            }
            if worst < tol {
                converged = true;
                break;
            }
        }
        // Newton polish sharpens simple roots to machine precision.
        for z in zs.iter_mut() {
            for _ in 0..3 {
                let dv = deriv.eval(*z);
                if dv.norm_sqr() == 0.0 {
                    break;
                }
                let step = work.eval(*z) / dv;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                *z -= step;
            }
        }
        let worst_rel = zs
            .iter()
            .map(|&z| work.eval(z).norm() / work.eval_magnitude_bound(z).max(f64::MIN_POSITIVE))
            .fold(0.0f64, f64::max);
        // Multiple roots converge only linearly in the residual; accept a
        // ulp-scaled slack above the requested tolerance before failing.
        if !converged && worst_rel > tol.max(1e-10) {
            return Err(NumericsError::RootsNonConvergence {
                iterations,
                residual: worst_rel,
            });
        }
    }
    for _ in 0..zero_roots {
        zs.push(Complex64::new(0.0, 0.0));
    }

    let residuals: Vec<f64> = zs.iter().map(|&z| p.eval(z).norm()).collect();
    let multiplicity_hint = cluster_sizes(&zs);
    Ok(RootSet {
        roots: zs,
        residuals,
        multiplicity_hint,
        iterations,
    })
}

fn cluster_sizes(zs: &[Complex64]) -> Vec<usize> {
    zs.iter()
        .map(|&z| {
            let r = 1e-6 * (1.0 + z.norm());
            zs.iter().filter(|&&w| (w - z).norm() <= r).count()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sort_key(z: &Complex64) -> (i64, i64) {
        ((z.re * 1e9) as i64, (z.im * 1e9) as i64)
    }

    #[test]
    fn quadratic_with_imaginary_pair() {
        let p = UniComplexPoly::from_reals(&[1.0, 0.0, 1.0]); // z^2 + 1
        let rs = roots(&p).unwrap();
        let mut got = rs.roots.clone();
        got.sort_by_key(sort_key);
        assert!((got[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((got[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(rs.residuals.iter().all(|&r| r < 1e-12));
    }

    #[test]
    fn expanded_product_recovers_roots() {
        // (z-1)(z-2)(z-3) = z^3 - 6z^2 + 11z - 6
        let p = UniComplexPoly::from_reals(&[-6.0, 11.0, -6.0, 1.0]);
        let rs = roots(&p).unwrap();
        let mut got = rs.roots.clone();
        got.sort_by_key(sort_key);
        for (r, want) in got.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - Complex64::new(want, 0.0)).norm() < 1e-10);
        }
        assert_eq!(rs.multiplicity_hint, vec![1, 1, 1]);
    }

    #[test]
    fn double_root_flagged_by_multiplicity_hint() {
        // (z-1)^2 (z+2) = z^3 - 3z + 2
        let p = UniComplexPoly::from_reals(&[2.0, -3.0, 0.0, 1.0]);
        let rs = roots(&p).unwrap();
        let near_one: Vec<_> = rs
            .roots
            .iter()
            .zip(&rs.multiplicity_hint)
            .filter(|(z, _)| (*z - Complex64::new(1.0, 0.0)).norm() < 1e-4)
            .collect();
        assert_eq!(near_one.len(), 2);
        assert!(near_one.iter().all(|(_, &m)| m == 2));
    }

    #[test]
    fn zero_roots_are_exact() {
        // z^3 + z^2 = z^2 (z + 1)
        let p = UniComplexPoly::from_reals(&[0.0, 0.0, 1.0, 1.0]);
        let rs = roots(&p).unwrap();
        let zeros = rs.roots.iter().filter(|z| z.norm_sqr() == 0.0).count();
        assert_eq!(zeros, 2);
        assert!(rs.roots.iter().any(|z| (z + Complex64::new(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn constant_polynomial_is_rejected() {
        let p = UniComplexPoly::from_reals(&[4.0]);
        assert!(matches!(roots(&p), Err(NumericsError::DegreeZero)));
        let z = UniComplexPoly::from_reals(&[0.0]);
        assert!(matches!(roots(&z), Err(NumericsError::ZeroPolynomial)));
    }

    #[test]
    fn root_count_matches_degree_with_multiplicity() {
        for coeffs in [
            vec![1.0, 4.0, 1.0, -3.0, 2.0],
            vec![5.0, 0.0, 0.0, 1.0],
            vec![-1.0, 1.0],
        ] {
            let p = UniComplexPoly::from_reals(&coeffs);
            let rs = roots(&p).unwrap();
            assert_eq!(rs.roots.len(), p.degree());
        }
    }
}
