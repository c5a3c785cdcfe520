//! Damped Newton iteration for small square systems over ℂ.

use super::NumericsError;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub solution: Vec<Complex64>,
    /// Sup-norm of the residual at the solution.
    pub residual_norm: f64,
    pub iterations: usize,
}

fn sup_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Gaussian elimination with partial pivoting; `None` on a (numerically)
/// singular matrix.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for k in 0..n {
        let (pivot_row, pivot_norm) = (k..n)
            .map(|r| (r, a[r][k].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pivot_norm < 1e-250 {
            return None;
        }
        a.swap(k, pivot_row);
        b.swap(k, pivot_row);
        for r in k + 1..n {
            let factor = a[r][k] / a[k][k];
            for c in k..n {
                let v = a[k][c];
                a[r][c] -= factor * v;
            }
            let bk = b[k];
            b[r] -= factor * bk;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut acc = b[k];
        for c in k + 1..n {
            acc -= a[k][c] * x[c];
        }
        x[k] = acc / a[k][k];
    }
    Some(x)
}

/// Solves `residual(z) = 0` for square systems by Newton's method with step
/// halving (at most 20 halvings per iteration).  Convergence is declared
/// when the residual sup-norm drops below `tol`.
///
/// With debug assertions enabled, the supplied Jacobian is checked against
/// central finite differences at the starting point; the residuals used in
/// this crate are analytic, so a real-axis step recovers the full complex
/// derivative.
pub fn newton_solve(
    residual: &dyn Fn(&[Complex64]) -> Vec<Complex64>,
    jacobian: &dyn Fn(&[Complex64]) -> Vec<Vec<Complex64>>,
    init: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> Result<NewtonOutcome, NumericsError> {
    #[cfg(debug_assertions)]
    validate_jacobian(residual, jacobian, init);

    let mut z: Vec<Complex64> = init.to_vec();
    let mut f = residual(&z);
    let mut fnorm = sup_norm(&f);
    for iter in 0..max_iter {
        if fnorm < tol {
            return Ok(NewtonOutcome {
                solution: z,
                residual_norm: fnorm,
                iterations: iter,
            });
        }
        let j = jacobian(&z);
        let rhs: Vec<Complex64> = f.iter().map(|&v| -v).collect();
        let step = solve_linear(j, rhs).ok_or(NumericsError::SingularJacobian(iter))?;
        let mut lambda = 1.0f64;
        let mut accepted = false;
        for _ in 0..=20 {
            let trial: Vec<Complex64> = z
                .iter()
                .zip(&step)
                .map(|(&zi, &si)| zi + lambda * si)
                .collect();
            let ft = residual(&trial);
            let ftn = sup_norm(&ft);
            if ftn < fnorm {
                z = trial;
                f = ft;
                fnorm = ftn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(NumericsError::NewtonNonConvergence {
                iterations: iter,
                residual: fnorm,
            });
        }
    }
    if fnorm < tol {
        return Ok(NewtonOutcome {
            solution: z,
            residual_norm: fnorm,
            iterations: max_iter,
        });
    }
    Err(NumericsError::NewtonNonConvergence {
        iterations: max_iter,
        residual: fnorm,
    })
}

#[cfg(debug_assertions)]
fn validate_jacobian(
    residual: &dyn Fn(&[Complex64]) -> Vec<Complex64>,
    jacobian: &dyn Fn(&[Complex64]) -> Vec<Vec<Complex64>>,
    at: &[Complex64],
) {
    let j = jacobian(at);
    let n = at.len();
    let h = 1e-6;
    let mut scale = 0.0f64;
    for row in &j {
        for e in row {
            scale = scale.max(e.norm());
        }
    }
    for col in 0..n {
        let mut plus = at.to_vec();
        let mut minus = at.to_vec();
        plus[col] += Complex64::new(h, 0.0);
        minus[col] -= Complex64::new(h, 0.0);
        let fp = residual(&plus);
        let fm = residual(&minus);
        for row in 0..n {
            let fd = (fp[row] - fm[row]) / (2.0 * h);
            let err = (fd - j[row][col]).norm();
            debug_assert!(
                err <= 1e-4 * (1.0 + scale),
                "Jacobian entry ({row}, {col}) disagrees with finite differences: {:?} vs {:?}",
                j[row][col],
                fd
            );
        }
    }
}
