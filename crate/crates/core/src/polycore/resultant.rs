//! Resultants of multivariate polynomials with respect to one variable.
//!
//! Two independent engines share the classical sign convention
//! `Res(f, g) = lc(f)^{deg g} · Π g(α)` over the roots of `f`:
//!
//! * fraction-free Bareiss elimination of the Sylvester matrix, used when
//!   the eliminated degrees are modest (≤ 12), and
//! * a subresultant polynomial remainder sequence for higher degrees,
//!   which avoids the quadratic blowup of the matrix determinant.
//!
//! Every interior division in either engine is exact in the polynomial
//! ring; a failed division would indicate a bug, not bad input.

use super::{MultiPoly, PolyError};

const BAREISS_DEGREE_LIMIT: i32 = 12;

/// Resultant of `p` and `q` with respect to `var`.
///
/// Both operands must be nonzero with nonnegative exponents in `var`, and at
/// least one must have positive degree in it.  The result no longer involves
/// `var`.  A zero result signals a common factor involving `var` (a
/// positive-dimensional intersection when used for elimination).
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroOperand);
    }
    let (vars, a, b) = align_with_var(p, q, var)?;
    let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    if a.min_exponent_in(var).unwrap().unwrap_or(0) < 0
        || b.min_exponent_in(var).unwrap().unwrap_or(0) < 0
    {
        return Err(PolyError::LaurentResultant(var.to_string()));
    }
    let dp = a.degree_in(var).unwrap().unwrap_or(0);
    let dq = b.degree_in(var).unwrap().unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(PolyError::ConstantResultant(var.to_string()));
    }
    if dp == 0 {
        return Ok(a.pow(dq as u32));
    }
    if dq == 0 {
        return Ok(b.pow(dp as u32));
    }
    let ca = coeff_vector(&a, var, dp);
    let cb = coeff_vector(&b, var, dq);
    if dp.max(dq) <= BAREISS_DEGREE_LIMIT {
        Ok(sylvester_bareiss(&ca, &cb, &vref))
    } else {
        Ok(subresultant_prs(ca, cb, &vref))
    }
}

fn align_with_var(
    p: &MultiPoly,
    q: &MultiPoly,
    var: &str,
) -> Result<(Vec<String>, MultiPoly, MultiPoly), PolyError> {
    // Union the universes through an add; cheap relative to the elimination.
    let sum = p.add(q);
    if !sum.vars().iter().any(|v| v == var) {
        return Err(PolyError::NoSuchVariable(var.to_string()));
    }
    let vars: Vec<String> = sum.vars().to_vec();
    let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let zero = MultiPoly::zero(&vref);
    Ok((vars.clone(), p.add(&zero), q.add(&zero)))
}

/// Coefficients of `p` in `var`, ascending, as polynomials in the remaining
/// variables (the `var` column zeroed).
fn coeff_vector(p: &MultiPoly, var: &str, deg: i32) -> Vec<MultiPoly> {
    (0..=deg)
        .map(|k| p.coeff_of(var, k).expect("var checked by caller"))
        .collect()
}

fn exact_div(num: &MultiPoly, den: &MultiPoly) -> MultiPoly {
    num.divides_exactly(den)
        .expect("fraction-free elimination divides exactly")
}

/// Determinant of the Sylvester matrix by Bareiss's fraction-free algorithm
/// with row pivoting; division by the previous pivot is always exact.
fn sylvester_bareiss(ca: &[MultiPoly], cb: &[MultiPoly], vars: &[&str]) -> MultiPoly {
    let dp = ca.len() - 1;
    let dq = cb.len() - 1;
    let n = dp + dq;
    let zero = MultiPoly::zero(vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    for i in 0..dq {
        for (k, c) in ca.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..dp {
        for (k, c) in cb.iter().rev().enumerate() {
            m[dq + i][i + k] = c.clone();
        }
    }
    let mut sign = 1i8;
    let mut prev = MultiPoly::constant(vars, 1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = if prev.is_one() {
                    num
                } else {
                    exact_div(&num, &prev)
                };
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Dense univariate polynomial in the eliminated variable whose coefficients
/// are polynomials in the remaining variables.
#[derive(Clone)]
struct VPoly {
    coeffs: Vec<MultiPoly>,
}

impl VPoly {
    fn new(mut coeffs: Vec<MultiPoly>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        VPoly { coeffs }
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &MultiPoly {
        self.coeffs.last().expect("vpoly never empty")
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn scale(&self, c: &MultiPoly) -> VPoly {
        VPoly::new(self.coeffs.iter().map(|k| k.mul(c)).collect())
    }

    /// `self - c · x^shift · other`
    fn sub_shifted_mul(&self, other: &VPoly, c: &MultiPoly, shift: usize) -> VPoly {
        let n = self.coeffs.len().max(other.coeffs.len() + shift);
        let zero = MultiPoly::zero(
            &self
                .coeffs[0]
                .vars()
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>(),
        );
        let mut out = vec![zero; n];
        for (i, k) in self.coeffs.iter().enumerate() {
            out[i] = k.clone();
        }
        for (i, k) in other.coeffs.iter().enumerate() {
            out[i + shift] = out[i + shift].sub(&k.mul(c));
        }
        VPoly::new(out)
    }

    fn div_exact(&self, c: &MultiPoly) -> VPoly {
        VPoly::new(self.coeffs.iter().map(|k| exact_div(k, c)).collect())
    }
}

/// Classical pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a  mod  b`.
fn prem(a: &VPoly, b: &VPoly) -> VPoly {
    let d = b.lc().clone();
    let delta = a.deg() - b.deg();
    let mut r = a.clone();
    let mut remaining = delta as i64 + 1;
    while !r.is_zero() && r.deg() >= b.deg() {
        let shift = r.deg() - b.deg();
        let lead = r.lc().clone();
        let prev_deg = r.deg();
        // d·r - lc(r)·x^shift·b: the leading terms cancel exactly.
        r = r.scale(&d).sub_shifted_mul(b, &lead, shift);
        debug_assert!(r.is_zero() || r.deg() < prev_deg, "pseudo-division must reduce degree");
        remaining -= 1;
    }
    // Pad the scaling so the total factor is lc(b)^(delta + 1).
    let mut out = r;
    while remaining > 0 {
        out = out.scale(&d);
        remaining -= 1;
    }
    out
}

/// Resultant through the subresultant polynomial remainder sequence
/// (fraction-free; interior divisions exact).
fn subresultant_prs(ca: Vec<MultiPoly>, cb: Vec<MultiPoly>, vars: &[&str]) -> MultiPoly {
    let one = MultiPoly::constant(vars, 1);
    let zero = MultiPoly::zero(vars);
    let mut a = VPoly::new(ca);
    let mut b = VPoly::new(cb);
    let mut sign = 1i8;
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        let r = b.lc().pow(a.deg() as u32);
        return if sign < 0 { r.neg() } else { r };
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let r = prem(&a, &b);
        if r.is_zero() {
            // Positive-degree common factor: the resultant vanishes.
            return zero;
        }
        a = b;
        let denom = g.mul(&h.pow(delta as u32));
        b = r.div_exact(&denom);
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            exact_div(&g.pow(delta as u32), &h.pow(delta as u32 - 1))
        };
        if b.deg() == 0 {
            let res = exact_div(&b.lc().pow(a.deg() as u32), &h.pow(a.deg() as u32 - 1));
            return if sign < 0 { res.neg() } else { res };
        }
    }
}
