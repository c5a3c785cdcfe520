//! Logarithmic Mahler measures of integer Laurent polynomials.
//!
//! The measure of `P` is the mean of `ln|P|` over the unit torus.  For one
//! variable Jensen's formula turns that integral into
//! `ln|lead| + Σ ln⁺|root|`, which we evaluate from a computed root set.
//! For two variables there are two evaluators:
//!
//! * [`mahler_bivariate_sliced`] — write the measure as the univariate
//!   measure of the leading-coefficient polynomial plus the integral over
//!   the fixed variable's circle of `Σ ln⁺|root of the slice|`, and feed
//!   that integrand to adaptive quadrature.  The integrand has kinks where
//!   slice roots cross the unit circle, so the crossing angles are located
//!   first and passed down as panel boundaries.
//! * [`mahler_bivariate_grid`] — the plain `N×N` torus mean of `ln|P|`,
//!   with the even-index subgrid reused as an `N/2` estimate to report an
//!   empirical error.  Slow but nearly assumption-free; useful as a check
//!   on the sliced evaluator.
//!
//! The measure of a cyclotomic factor is zero, so the leading-coefficient
//! term is skipped when a cyclotomic test certifies it.

use crate::numerics::{integrate_adaptive, roots_with, NumericsError};
use crate::polycore::{specialize_slice, MultiPoly, PolyError, UniComplexPoly};
use num_traits::ToPrimitive;
use std::cell::RefCell;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum MahlerError {
    #[error("the zero polynomial has no Mahler measure")]
    ZeroPolynomial,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("quadrature stalled at error estimate {estimate:.3e} (target {target:.3e})")]
    QuadratureBudget { estimate: f64, target: f64 },
    #[error("grid size must be at least 4, got {0}")]
    GridTooSmall(usize),
    #[error("thread count must be at least 1")]
    NoThreads,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MahlerMethod {
    Univariate,
    Sliced,
    Grid,
}

impl MahlerMethod {
    pub fn name(self) -> &'static str {
        match self {
            MahlerMethod::Univariate => "univariate",
            MahlerMethod::Sliced => "sliced",
            MahlerMethod::Grid => "grid",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MahlerResult {
    pub value: f64,
    /// Claimed absolute error: quadrature estimate plus root-residual
    /// propagation for the sliced path, grid half-resolution difference for
    /// the grid path.
    pub error_estimate: f64,
    pub evaluations: u64,
    pub method: MahlerMethod,
    /// Variable held on the circle by the sliced evaluator.
    pub fixed_var: Option<String>,
    /// Grid nodes where `P` vanished exactly and was left out of the mean.
    pub skipped_samples: u64,
}

impl MahlerResult {
    fn new(value: f64, error: f64, evals: u64, method: MahlerMethod) -> Self {
        MahlerResult {
            value,
            error_estimate: error,
            evaluations: evals,
            method,
            fixed_var: None,
            skipped_samples: 0,
        }
    }
}

/// Jensen evaluation for a complex univariate polynomial:
/// `ln|lead| + Σ ln max(1, |root|)`.
pub fn mahler_univariate(p: &UniComplexPoly) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let deg = p.degree();
    if deg == 0 {
        let v = p.coeffs[0].norm().ln();
        return Ok(MahlerResult::new(v, 1e-15, 0, MahlerMethod::Univariate));
    }
    let rs = roots_with(p, 1e-13, 400)?;
    let lead = p.leading().norm();
    let mut value = lead.ln();
    let mut err = 1e-14 * (deg as f64 + 1.0);
    let dp = p.derivative();
    for (r, res) in rs.roots.iter().zip(&rs.residuals) {
        let m = r.norm();
        if m > 1.0 {
            value += m.ln();
        }
        // A root error |Δr| ≈ residual / |p'(r)| moves ln|r| by |Δr| / |r|.
        if m > 0.99 {
            let d = dp.eval(*r).norm().max(1e-8);
            err += res / (d * m.max(1.0));
        }
    }
    Ok(MahlerResult::new(
        value,
        err,
        rs.iterations as u64 * deg as u64,
        MahlerMethod::Univariate,
    ))
}

/// Jensen evaluation for an integer polynomial that is univariate up to a
/// monomial factor (monomials carry measure zero, so Laurent inputs are
/// fine).
pub fn mahler_integer_univariate(p: &MultiPoly) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let q = to_unit_poly(p)?;
    mahler_univariate(&q)
}

/// Strips the monomial/sign content of an integer polynomial with at most
/// one effective variable and returns its dense complex coefficient form.
fn to_unit_poly(p: &MultiPoly) -> Result<UniComplexPoly, MahlerError> {
    let eff = effective_vars(p);
    if eff.len() > 1 {
        return Err(MahlerError::Poly(PolyError::NotBivariate));
    }
    if eff.is_empty() {
        let c = p.terms()[0].1.to_f64().unwrap_or(f64::NAN);
        return Ok(UniComplexPoly::from_reals(&[c]));
    }
    let var = &p.vars()[eff[0]];
    let lo = p.min_exponent_in(var)?.unwrap();
    let hi = p.degree_in(var)?.unwrap();
    let mut coeffs = vec![0.0; (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        coeffs[(e[eff[0]] - lo) as usize] += c.to_f64().unwrap_or(f64::NAN);
    }
    Ok(UniComplexPoly::from_reals(&coeffs))
}

fn effective_vars(p: &MultiPoly) -> Vec<usize> {
    (0..p.vars().len())
        .filter(|&i| p.terms().iter().any(|(e, _)| e[i] != 0))
        .collect()
}

/// True when `P` is, up to sign and a monomial factor, a product of
/// cyclotomic polynomials: unit leading coefficient and every root within
/// `1e-8` of the unit circle.  Such factors contribute nothing to a Mahler
/// measure.  Constants pass exactly when they are `±1`.
pub fn cyclotomic_test(p: &MultiPoly) -> Result<bool, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let q = to_unit_poly(p)?;
    let deg = q.degree();
    if deg == 0 {
        return Ok((q.coeffs[0].norm() - 1.0).abs() < 1e-12);
    }
    if (q.leading().norm() - 1.0).abs() > 1e-12 {
        return Ok(false);
    }
    // Strip exact roots at the origin (the monomial part of a Laurent input).
    let rs = roots_with(&q, 1e-13, 400)?;
    for r in &rs.roots {
        let m = r.norm();
        if m == 0.0 {
            continue;
        }
        if (m - 1.0).abs() > 1e-8 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partial sums of `Σ χ(n)/n^s` for the quadratic character mod 3
/// (`χ(1) = 1`, `χ(2) = -1`, `χ(3) = 0`), grouped in consecutive pairs so
/// the truncation error is bounded by the first omitted pair.  Summation is
/// compensated, so rounding stays far below the truncation target even when
/// millions of pairs are needed.  Requires `s > 1`.
pub fn dirichlet_l_chi3(s: f64, tol: f64) -> f64 {
    assert!(s > 1.0, "the series is only summed for s > 1");
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut k = 0u64;
    loop {
        let a = (3 * k + 1) as f64;
        let b = (3 * k + 2) as f64;
        let term = a.powf(-s) - b.powf(-s);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        k += 1;
        // Remaining pairs are bounded by (3k - 2)^(-s) / 3.
        let tail = (3.0 * k as f64 - 2.0).powf(-s) / 3.0;
        if tail < tol * 0.5 || k > 200_000_000 {
            break;
        }
    }
    sum
}

/// Outcome of checking the two-variable measure of `1 + x + y` against its
/// closed form `(3√3 / 4π) · L(χ₋₃, 2)`.
#[derive(Debug, Clone)]
pub struct SmythCheck {
    pub measured: f64,
    pub expected: f64,
    pub difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn verify_smyth(tol: f64) -> Result<SmythCheck, MahlerError> {
    let p = crate::polycore::parse_poly("1 + x + y", &["x", "y"])?;
    let measured = mahler_bivariate_sliced(&p, (tol * 0.1).max(1e-10))?.value;
    let expected = 3.0 * 3.0_f64.sqrt() / (4.0 * PI) * dirichlet_l_chi3(2.0, 1e-14);
    let difference = (measured - expected).abs();
    Ok(SmythCheck {
        measured,
        expected,
        difference,
        tolerance: tol,
        pass: difference < tol,
    })
}

/// Chooses which of the two effective variables to hold on the circle.
/// Slices are cheapest to integrate when the leading coefficient of the
/// free variable rarely vanishes on the circle, so the orientation whose
/// leading-coefficient polynomial has fewer unit-circle roots wins; ties
/// keep the second variable fixed.
fn choose_orientation(p: &MultiPoly) -> Result<(String, String, Vec<f64>), MahlerError> {
    let eff = effective_vars(p);
    if eff.len() != 2 {
        return Err(MahlerError::Poly(PolyError::NotBivariate));
    }
    let v0 = p.vars()[eff[0]].clone();
    let v1 = p.vars()[eff[1]].clone();
    let mut best: Option<(String, String, Vec<f64>, usize)> = None;
    for (free, fixed) in [(v0.clone(), v1.clone()), (v1, v0)] {
        let d = p.degree_in(&free)?.unwrap();
        let lead = p.coeff_of(&free, d)?;
        let angles = unit_root_angles(&lead)?;
        let n = angles.len();
        match &best {
            Some((_, _, _, m)) if *m <= n => {}
            _ => best = Some((free, fixed, angles, n)),
        }
    }
    let (free, fixed, angles, _) = best.unwrap();
    Ok((free, fixed, angles))
}

/// Angles `θ ∈ [0, 1)` at which a one-variable integer polynomial vanishes
/// on the unit circle, within `1e-6` of it.
fn unit_root_angles(p: &MultiPoly) -> Result<Vec<f64>, MahlerError> {
    let q = to_unit_poly(p)?;
    if q.degree() == 0 {
        return Ok(Vec::new());
    }
    let rs = roots_with(&q, 1e-13, 400)?;
    let mut out = Vec::new();
    for r in &rs.roots {
        if (r.norm() - 1.0).abs() < 1e-6 {
            out.push((r.arg() / (2.0 * PI)).rem_euclid(1.0));
        }
    }
    Ok(out)
}

/// Measure of a two-variable polynomial via Jensen on every slice:
/// `m(P) = m(a_d) + ∫₀¹ Σ ln⁺|root of P(·, e^(2πiθ))| dθ` where `a_d` is the
/// leading coefficient of the free variable.  `tol` is the absolute target
/// for the quadrature term.
pub fn mahler_bivariate_sliced(p: &MultiPoly, tol: f64) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let (free, fixed, mut hints) = choose_orientation(p)?;
    let d = p.degree_in(&free)?.unwrap();
    let lead = p.coeff_of(&free, d)?;
    let lead_term = if cyclotomic_test(&lead)? {
        MahlerResult::new(0.0, 0.0, 0, MahlerMethod::Univariate)
    } else {
        mahler_integer_univariate(&lead)?
    };

    let failure: RefCell<Option<NumericsError>> = RefCell::new(None);
    let root_err = RefCell::new(0.0f64);
    let mut integrand = |theta: f64| -> f64 {
        slice_log_plus_sum(p, &fixed, theta, &failure, &root_err)
    };

    // Panel boundaries: degree-drop angles plus circle-crossing angles of
    // the slice roots, located by bisecting on the outside-root count.
    hints.extend(crossing_angles(p, &fixed));
    hints.retain(|t| t.is_finite());
    hints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    hints.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let quad = integrate_adaptive(&mut integrand, 0.0, 1.0, tol * 0.5, &hints);
    if let Some(e) = failure.into_inner() {
        return Err(MahlerError::Numerics(e));
    }
    if !quad.converged {
        return Err(MahlerError::QuadratureBudget {
            estimate: quad.error_estimate,
            target: tol * 0.5,
        });
    }
    let mut out = MahlerResult::new(
        lead_term.value + quad.value,
        lead_term.error_estimate + quad.error_estimate + *root_err.borrow(),
        lead_term.evaluations + quad.evaluations as u64,
        MahlerMethod::Sliced,
    );
    out.fixed_var = Some(fixed);
    Ok(out)
}

/// `Σ ln max(1, |root|)` of the slice at angle `theta`, recording the first
/// root-finding failure and accumulating propagated root error.
fn slice_log_plus_sum(
    p: &MultiPoly,
    fixed: &str,
    theta: f64,
    failure: &RefCell<Option<NumericsError>>,
    root_err: &RefCell<f64>,
) -> f64 {
    let slice = match specialize_slice(p, fixed, theta) {
        Ok(s) => s,
        Err(_) => return 0.0,
    };
    if slice.poly.degree() == 0 {
        return 0.0;
    }
    match roots_with(&slice.poly, 1e-12, 300) {
        Ok(rs) => {
            let dp = slice.poly.derivative();
            let mut s = 0.0;
            for (r, res) in rs.roots.iter().zip(&rs.residuals) {
                let m = r.norm();
                if m > 1.0 {
                    s += m.ln();
                    let d = dp.eval(*r).norm().max(1e-8);
                    *root_err.borrow_mut() += (res / (d * m)).min(1e-10);
                }
            }
            s
        }
        Err(e) => {
            let mut f = failure.borrow_mut();
            if f.is_none() {
                *f = Some(e);
            }
            0.0
        }
    }
}

/// Scans the circle for changes in the number of slice roots outside the
/// unit circle and bisects each change to an angle where a root crosses.
/// The integrand is continuous there but not smooth, so quadrature panels
/// should break at those angles.
fn crossing_angles(p: &MultiPoly, fixed: &str) -> Vec<f64> {
    let count = |theta: f64| -> Option<usize> {
        let slice = specialize_slice(p, fixed, theta).ok()?;
        if slice.poly.degree() == 0 {
            return Some(0);
        }
        let rs = roots_with(&slice.poly, 1e-12, 300).ok()?;
        Some(rs.roots.iter().filter(|r| r.norm() > 1.0).count())
    };
    const SCAN: usize = 256;
    let grid: Vec<Option<usize>> = (0..=SCAN)
        .map(|i| count(i as f64 / SCAN as f64))
        .collect();
    let mut out = Vec::new();
    for i in 0..SCAN {
        let (Some(a), Some(b)) = (grid[i], grid[i + 1]) else {
            continue;
        };
        if a == b {
            continue;
        }
        let mut lo = i as f64 / SCAN as f64;
        let mut hi = (i + 1) as f64 / SCAN as f64;
        for _ in 0..45 {
            let mid = 0.5 * (lo + hi);
            match count(mid) {
                Some(c) if c == a => lo = mid,
                Some(_) => hi = mid,
                None => break,
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

/// Plain torus mean of `ln|P|` on an `N×N` grid (odd `N` is rounded up so
/// the even-index subgrid is exactly the `N/2` grid).  Returns the mean,
/// the difference against the `N/2` estimate as the error claim, and the
/// count of exact zeros skipped.
pub fn mahler_bivariate_grid(p: &MultiPoly, n: usize) -> Result<MahlerResult, MahlerError> {
    mahler_bivariate_grid_threads(p, n, 1)
}

/// Grid evaluator with the rows split round-robin over `threads` workers.
pub fn mahler_bivariate_grid_threads(
    p: &MultiPoly,
    n: usize,
    threads: usize,
) -> Result<MahlerResult, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if threads == 0 {
        return Err(MahlerError::NoThreads);
    }
    let eff = effective_vars(p);
    if eff.len() != 2 {
        return Err(MahlerError::Poly(PolyError::NotBivariate));
    }
    if n < 4 {
        return Err(MahlerError::GridTooSmall(n));
    }
    let n = n + n % 2;
    let fixed = p.vars()[eff[1]].clone();

    #[derive(Default, Clone, Copy)]
    struct Acc {
        sum: f64,
        sub: f64,
        skip: u64,
        sub_skip: u64,
    }

    let row_job = |j: usize| -> Result<Acc, MahlerError> {
        let mut acc = Acc::default();
        let slice = specialize_slice(p, &fixed, j as f64 / n as f64)?;
        for i in 0..n {
            let x = num_complex::Complex64::from_polar(1.0, 2.0 * PI * i as f64 / n as f64);
            let v = slice.poly.eval(x).norm();
            let in_sub = j % 2 == 0 && i % 2 == 0;
            if v == 0.0 {
                acc.skip += 1;
                if in_sub {
                    acc.sub_skip += 1;
                }
                continue;
            }
            let l = v.ln();
            acc.sum += l;
            if in_sub {
                acc.sub += l;
            }
        }
        Ok(acc)
    };

    let total = if threads == 1 {
        let mut t = Acc::default();
        for j in 0..n {
            let a = row_job(j)?;
            t.sum += a.sum;
            t.sub += a.sub;
            t.skip += a.skip;
            t.sub_skip += a.sub_skip;
        }
        t
    } else {
        let results: Vec<Result<Acc, MahlerError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let row_job = &row_job;
                    scope.spawn(move || {
                        let mut acc = Acc::default();
                        let mut j = t;
                        while j < n {
                            let a = row_job(j)?;
                            acc.sum += a.sum;
                            acc.sub += a.sub;
                            acc.skip += a.skip;
                            acc.sub_skip += a.sub_skip;
                            j += threads;
                        }
                        Ok(acc)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut t = Acc::default();
        for r in results {
            let a = r?;
            t.sum += a.sum;
            t.sub += a.sub;
            t.skip += a.skip;
            t.sub_skip += a.sub_skip;
        }
        t
    };

    let full_n = (n * n) as u64 - total.skip;
    let sub_n = (n / 2 * (n / 2)) as u64 - total.sub_skip;
    let mean = total.sum / full_n as f64;
    let sub_mean = total.sub / sub_n.max(1) as f64;
    let err = (mean - sub_mean).abs().max(4.0 * f64::EPSILON * (1.0 + mean.abs()));
    let mut out = MahlerResult::new(mean, err, (n * n) as u64, MahlerMethod::Grid);
    out.fixed_var = Some(fixed);
    out.skipped_samples = total.skip;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly_auto;

    const LN_GOLDEN: f64 = 0.4812118250596034; // ln((1 + sqrt 5) / 2)
    const SMYTH: f64 = 0.3230659472194505; // (3 sqrt 3 / 4 pi) L(chi_-3, 2)
    const L_CHI3_2: f64 = 0.7813024128964863;

    fn q(text: &str) -> MultiPoly {
        parse_poly_auto(text).unwrap()
    }

    #[test]
    fn univariate_closed_forms() {
        let cases = [
            ("x - 2", 2.0_f64.ln()),
            ("2*x - 1", 2.0_f64.ln()),
            ("x^2 - x - 1", LN_GOLDEN),
            ("x + 1", 0.0),
            ("x^2 - 5*x + 6", 6.0_f64.ln()),
            ("-7", 7.0_f64.ln()),
        ];
        for (text, want) in cases {
            let m = mahler_integer_univariate(&q(text)).unwrap();
            assert!(
                (m.value - want).abs() < 1e-12,
                "m({text}) = {} != {want}",
                m.value
            );
        }
    }

    #[test]
    fn univariate_laurent_shift_is_free() {
        // x + 1 - x^-1 is a unit times x^2 + x - 1, whose measure is ln phi.
        let m = mahler_integer_univariate(&q("x + 1 - x^-1")).unwrap();
        assert!((m.value - LN_GOLDEN).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_series_value() {
        let l = dirichlet_l_chi3(2.0, 1e-13);
        assert!((l - L_CHI3_2).abs() < 1e-12, "L = {l}");
    }

    #[test]
    fn cyclotomic_recognition() {
        assert!(cyclotomic_test(&q("x + 1")).unwrap());
        assert!(cyclotomic_test(&q("x^2 + x + 1")).unwrap());
        assert!(cyclotomic_test(&q("x^5")).unwrap());
        assert!(cyclotomic_test(&q("-1")).unwrap());
        assert!(!cyclotomic_test(&q("x^2 - x - 1")).unwrap());
        assert!(!cyclotomic_test(&q("2*x + 1")).unwrap());
        assert!(!cyclotomic_test(&q("3")).unwrap());
    }

    #[test]
    fn smyth_identity_holds() {
        let check = verify_smyth(1e-6).unwrap();
        assert!(check.pass, "difference {}", check.difference);
        assert!((check.measured - SMYTH).abs() < 1e-7);
        assert!((check.expected - SMYTH).abs() < 1e-14);
    }

    #[test]
    fn sliced_handles_effectively_univariate_factor() {
        // m((x - 2) y^2 + (x - 2)) = m(x - 2) + m(y^2 + 1) = ln 2.
        let p = q("x*y^2 - 2*y^2 + x - 2");
        let m = mahler_bivariate_sliced(&p, 1e-9).unwrap();
        assert!((m.value - 2.0_f64.ln()).abs() < 1e-8, "m = {}", m.value);
    }

    #[test]
    fn sliced_is_additive_over_products() {
        let p = q("1 + x + y").mul(&q("x - 2"));
        let m = mahler_bivariate_sliced(&p, 1e-8).unwrap();
        assert!(
            (m.value - (SMYTH + 2.0_f64.ln())).abs() < 1e-7,
            "m = {}",
            m.value
        );
    }

    #[test]
    fn orientation_avoids_unit_circle_lead_roots() {
        // Fixing x leaves leading coefficient x - 2 (no unit roots); fixing
        // y leaves y^2 + 1 (two unit roots).  The first must win.
        let p = q("x*y^2 - 2*y^2 + x + 1");
        let m = mahler_bivariate_sliced(&p, 1e-8).unwrap();
        assert_eq!(m.fixed_var.as_deref(), Some("x"));
    }

    #[test]
    fn grid_matches_sliced_on_smyth_polynomial() {
        let p = q("1 + x + y");
        let g = mahler_bivariate_grid(&p, 512).unwrap();
        assert!((g.value - SMYTH).abs() < 5e-3, "grid = {}", g.value);
        assert!(g.error_estimate < 5e-2);
        assert_eq!(g.evaluations, 512 * 512);
    }

    #[test]
    fn grid_skips_exact_zeros() {
        // The knot polynomial vanishes at (1, 1), which every grid contains
        // as the (0, 0) node with exact floating-point arguments.
        let h = crate::polycore::fig8_h_polynomial();
        let g = mahler_bivariate_grid(&h, 48).unwrap();
        assert_eq!(g.skipped_samples, 1);
    }

    #[test]
    fn grid_threading_is_consistent() {
        let p = q("1 + x + y + x*y^-1");
        let a = mahler_bivariate_grid_threads(&p, 64, 1).unwrap();
        let b = mahler_bivariate_grid_threads(&p, 64, 3).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
        assert_eq!(a.skipped_samples, b.skipped_samples);
    }

    #[test]
    fn rejects_zero_and_wrong_arity() {
        assert!(mahler_integer_univariate(&MultiPoly::zero(&["x"])).is_err());
        assert!(mahler_bivariate_sliced(&q("x + 1"), 1e-6).is_err());
        assert!(mahler_bivariate_grid(&q("x*y*z + 1"), 64).is_err());
        assert!(mahler_bivariate_grid(&q("x + y"), 2).is_err());
        assert!(mahler_bivariate_grid_threads(&q("x + y"), 64, 0).is_err());
    }
}
