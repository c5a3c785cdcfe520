//! Integer-coefficient multivariate Laurent polynomials.
//!
//! A [`MultiPoly`] is a sparse sum of terms `c * x1^e1 * ... * xk^ek` with
//! `c` an arbitrary-precision integer and the exponents signed 32-bit
//! integers.  Terms are kept in graded-lexicographic order (total signed
//! degree first, then lexicographic on the exponent vector), duplicates are
//! merged, and zero coefficients are dropped, so two equal polynomials have
//! identical term lists.  The zero polynomial is the empty term list.
//!
//! Binary operations take the union of the two variable universes, so a
//! polynomial in `(x, y)` and one in `(y, z)` combine over `(x, y, z)`.
//! Equality is semantic: it compares canonical forms over the union.

mod parse;
mod polygon;
mod resultant;
mod unipoly;

pub use parse::{parse_poly, parse_poly_auto};
pub use polygon::{boundary_slopes, newton_polygon, BoundarySlopes, NewtonPolygon};
pub use resultant::resultant;
pub use unipoly::UniComplexPoly;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector, aligned with a polynomial's variable list.
pub type Exponents = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at byte {pos} does not fit in a 32-bit integer")]
    ExponentOverflow { pos: usize },
    #[error("variable `{0}` is not in this polynomial's universe")]
    NoSuchVariable(String),
    #[error("substitution into negative powers of `{0}` requires an invertible monomial (single term, coefficient ±1)")]
    NotInvertible(String),
    #[error("evaluation at zero is undefined: `{0}` appears with a negative exponent")]
    EvalAtPole(String),
    #[error("resultant in `{0}` requires nonnegative exponents of `{0}`; clear denominators first")]
    LaurentResultant(String),
    #[error("resultant in `{0}` needs at least one operand of positive degree")]
    ConstantResultant(String),
    #[error("resultant of a zero polynomial is undefined")]
    ZeroOperand,
    #[error("Newton polygon requires a nonzero polynomial in exactly two variables")]
    NotBivariate,
}

/// Graded-lexicographic order on exponent vectors: compare total signed
/// degree first, then lexicographically.  This is a term order compatible
/// with multiplication, which the exact-division routine relies on.
pub(crate) fn grlex(a: &[i32], b: &[i32]) -> Ordering {
    let sa: i64 = a.iter().map(|&e| e as i64).sum();
    let sb: i64 = b.iter().map(|&e| e as i64).sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            i32::try_from(x as i64 + y as i64).expect("exponent overflow in polynomial product")
        })
        .collect()
}

/// Sparse multivariate Laurent polynomial over the integers.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: Vec<(Exponents, BigInt)>,
}

impl MultiPoly {
    /// The zero polynomial over the given variables.
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: Vec::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(vec![0; vars.len()], c)]
        };
        MultiPoly { vars, terms }
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let mut exps = vec![0; vars.len()];
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| PolyError::NoSuchVariable(name.to_string()))?;
        exps[i] = 1;
        Ok(Self::from_terms(
            vars,
            std::iter::once((exps, BigInt::one())),
        ))
    }

    /// A single term `c * vars^exps`.
    pub fn monomial(vars: &[&str], exps: Exponents, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        Self::from_terms(vars, std::iter::once((exps, c.into())))
    }

    /// Builds a polynomial from arbitrary (exponents, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Exponents, BigInt)>,
    ) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let n = vars.len();
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length mismatch");
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        let mut out: Vec<(Exponents, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| grlex(&a.0, &b.0));
        MultiPoly { vars, terms: out }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in graded-lexicographic ascending order.
    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn var_index(&self, var: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| PolyError::NoSuchVariable(var.to_string()))
    }

    /// Highest exponent of `var`, or `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Result<Option<i32>, PolyError> {
        let i = self.var_index(var)?;
        Ok(self.terms.iter().map(|(e, _)| e[i]).max())
    }

    /// Lowest exponent of `var`, or `None` for the zero polynomial.
    pub fn min_exponent_in(&self, var: &str) -> Result<Option<i32>, PolyError> {
        let i = self.var_index(var)?;
        Ok(self.terms.iter().map(|(e, _)| e[i]).min())
    }

    /// Coefficient of `var^k`, as a polynomial with the same universe
    /// (the `var` column of the result is identically zero).
    pub fn coeff_of(&self, var: &str, k: i32) -> Result<MultiPoly, PolyError> {
        let i = self.var_index(var)?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] = 0;
                (e, c.clone())
            })
            .collect::<Vec<_>>();
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        Ok(Self::from_terms(&vars, terms))
    }

    /// Largest term in graded-lex order, if any.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.last().map(|(e, c)| (e, c))
    }

    fn same_universe(&self, other: &MultiPoly) -> bool {
        self.vars == other.vars
    }

    /// Rewrites both operands over the union of their variable lists
    /// (left universe order first, then unseen right variables).
    fn aligned(&self, other: &MultiPoly) -> (Vec<String>, MultiPoly, MultiPoly) {
        if self.same_universe(other) {
            return (self.vars.clone(), self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let a = self.remapped(&vars);
        let b = other.remapped(&vars);
        (vars, a, b)
    }

    fn remapped(&self, vars: &[String]) -> MultiPoly {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("universe is a superset"))
            .collect();
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; vars.len()];
            for (k, &ek) in e.iter().enumerate() {
                ne[idx[k]] = ek;
            }
            (ne, c.clone())
        });
        let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        Self::from_terms(&vref, terms)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (vars, a, b) = self.aligned(other);
        let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        Self::from_terms(&vref, a.terms.into_iter().chain(b.terms))
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (vars, a, b) = self.aligned(other);
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                *acc.entry(add_exps(ea, eb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        Self::from_terms(&vref, acc)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: Vec::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let vref: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = MultiPoly::constant(&vref, 1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Raises to a possibly negative power; negative powers are only defined
    /// for invertible monomials (single term with coefficient ±1).
    fn pow_signed(&self, k: i32) -> Result<MultiPoly, PolyError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        if self.terms.len() != 1 || !self.terms[0].1.abs().is_one() {
            return Err(PolyError::NotInvertible(format!("{}", self)));
        }
        let (e, c) = &self.terms[0];
        let exps: Exponents = e
            .iter()
            .map(|&x| {
                i32::try_from(x as i64 * k as i64).expect("exponent overflow in monomial power")
            })
            .collect();
        let coeff = if c.is_negative() && k % 2 != 0 {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let vref: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        Ok(MultiPoly::monomial(&vref, exps, coeff))
    }

    /// Replaces `var` by `rep` and recanonicalizes.  When `var` occurs with
    /// negative exponents, `rep` must be an invertible monomial so the result
    /// stays a Laurent polynomial over the integers.
    pub fn substitute_var(&self, var: &str, rep: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.var_index(var)?;
        let (vars, a, rep) = self.aligned(rep);
        let vi = vars.iter().position(|v| v == var).unwrap();
        let min_e = a.terms.iter().map(|(e, _)| e[vi]).min().unwrap_or(0);
        if min_e < 0 && (rep.terms.len() != 1 || !rep.terms[0].1.abs().is_one()) {
            return Err(PolyError::NotInvertible(var.to_string()));
        }
        let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let mut powers: HashMap<i32, MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(&vref);
        for (e, c) in &a.terms {
            let k = e[vi];
            let pw = match powers.get(&k) {
                Some(p) => p.clone(),
                None => {
                    let p = rep.pow_signed(k)?;
                    powers.insert(k, p.clone());
                    p
                }
            };
            let mut base_e = e.clone();
            base_e[vi] = 0;
            let base = MultiPoly::monomial(&vref, base_e, c.clone());
            out = out.add(&base.mul(&pw));
        }
        Ok(out)
    }

    /// Evaluates at the given values (aligned with `self.vars()`), using
    /// double-precision arithmetic on exact coefficients.
    pub fn eval(&self, values: &[Complex64]) -> Result<Complex64, PolyError> {
        assert_eq!(values.len(), self.vars.len(), "value vector length mismatch");
        let mut caches: Vec<HashMap<i32, Complex64>> = vec![HashMap::new(); values.len()];
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k < 0 && values[i].norm_sqr() == 0.0 {
                    return Err(PolyError::EvalAtPole(self.vars[i].clone()));
                }
                let p = *caches[i]
                    .entry(k)
                    .or_insert_with(|| cpowi(values[i], k));
                t *= p;
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Evaluates with values given per variable name.
    pub fn eval_map(&self, assignment: &HashMap<String, Complex64>) -> Result<Complex64, PolyError> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .copied()
                    .ok_or_else(|| PolyError::NoSuchVariable(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.eval(&values)
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Per-variable minimum exponent over the support.
    pub fn min_exponents(&self) -> Option<Exponents> {
        if self.terms.is_empty() {
            return None;
        }
        let mut m = self.terms[0].0.clone();
        for (e, _) in &self.terms[1..] {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(ei);
            }
        }
        Some(m)
    }

    /// Splits `self = content · x^shift · primitive` where `primitive` has
    /// coefficient gcd 1 and minimum exponent 0 in every variable.  The zero
    /// polynomial returns itself with content 0 and zero shift.
    pub fn primitive_laurent(&self) -> (MultiPoly, BigInt, Exponents) {
        if self.terms.is_empty() {
            return (self.clone(), BigInt::zero(), vec![0; self.vars.len()]);
        }
        let content = self.integer_content();
        let shift = self.min_exponents().unwrap();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let ne: Exponents = e.iter().zip(&shift).map(|(&x, &s)| x - s).collect();
                (ne, c / &content)
            })
            .collect();
        (
            MultiPoly {
                vars: self.vars.clone(),
                terms,
            },
            content,
            shift,
        )
    }

    /// Flips the overall sign if the graded-lex leading coefficient is
    /// negative; returns the normalized polynomial and the sign applied.
    pub fn normalize_sign(&self) -> (MultiPoly, i8) {
        match self.terms.last() {
            Some((_, c)) if c.is_negative() => (self.neg(), -1),
            _ => (self.clone(), 1),
        }
    }

    /// Exact division in the Laurent ring: returns `Q` with `self = d · Q`
    /// if such an integer Laurent polynomial exists.  Both operands are
    /// normalized by their monomial and integer content first, so the test
    /// is insensitive to monomial-unit factors.
    pub fn divides_exactly(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        let (vars, a, b) = self.aligned(d);
        let vref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        if a.is_zero() {
            return Some(MultiPoly::zero(&vref));
        }
        let (pa, ca, sa) = a.primitive_laurent();
        let (pb, cb, sb) = b.primitive_laurent();
        let (q, r) = ca.div_rem(&cb);
        if !r.is_zero() {
            return None;
        }
        let qt = divide_nonneg(&pa, &pb)?;
        let shift: Exponents = sa
            .iter()
            .zip(&sb)
            .map(|(&x, &y)| {
                i32::try_from(x as i64 - y as i64).expect("exponent overflow in quotient monomial")
            })
            .collect();
        Some(qt.mul(&MultiPoly::monomial(&vref, shift, q)))
    }

    /// True when the polynomial is unchanged, up to sign and a monomial
    /// factor, by inverting every variable.
    pub fn reciprocity_check(&self) -> bool {
        let flipped = MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let ne: Exponents = e
                        .iter()
                        .map(|&x| x.checked_neg().expect("exponent overflow in reciprocal"))
                        .collect();
                    (ne, c.clone())
                })
                .collect(),
        };
        let vref: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let flipped = MultiPoly::from_terms(&vref, flipped.terms);
        let (a, _, _) = self.primitive_laurent();
        let (b, _, _) = flipped.primitive_laurent();
        a == b || a == b.neg()
    }
}

/// A univariate complex specialization of a two-variable polynomial, with
/// the monomial clearing applied to it recorded.
#[derive(Debug, Clone)]
pub struct Slice {
    pub poly: UniComplexPoly,
    /// Power of the free variable the slice was multiplied by to clear
    /// negative exponents; on the unit circle this does not change |P|.
    pub cleared_power: i32,
    pub free_var: String,
}

/// Fixes `fix` at `e^(2πiθ)` and returns the resulting univariate polynomial
/// in the one remaining effective variable, with negative powers of that
/// variable cleared by a monomial factor.
pub fn specialize_slice(p: &MultiPoly, fix: &str, theta: f64) -> Result<Slice, PolyError> {
    let fi = p.var_index(fix)?;
    let mut free: Option<usize> = None;
    for (i, _) in p.vars.iter().enumerate() {
        if i == fi {
            continue;
        }
        if p.terms.iter().any(|(e, _)| e[i] != 0) {
            if free.is_some() {
                return Err(PolyError::NotBivariate);
            }
            free = Some(i);
        }
    }
    let free = free.ok_or(PolyError::NotBivariate)?;
    let min_e = p
        .terms
        .iter()
        .map(|(e, _)| e[free])
        .min()
        .unwrap_or(0)
        .min(0);
    let max_e = p.terms.iter().map(|(e, _)| e[free]).max().unwrap_or(0);
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (max_e - min_e + 1) as usize];
    for (e, c) in &p.terms {
        let k = (e[free] - min_e) as usize;
        coeffs[k] += Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0) * cpowi(w, e[fi]);
    }
    Ok(Slice {
        poly: UniComplexPoly::new(coeffs),
        cleared_power: -min_e,
        free_var: p.vars[free].clone(),
    })
}

/// Exact division of polynomials with nonnegative exponents, content 1 not
/// required.  Returns the quotient when the division leaves no remainder.
///
/// Relies on graded-lex being multiplicative: at every step the leading term
/// of the remainder must be divisible by the leading term of the divisor,
/// otherwise the division fails.
fn divide_nonneg(p: &MultiPoly, d: &MultiPoly) -> Option<MultiPoly> {
    let vref: Vec<&str> = p.vars.iter().map(|s| s.as_str()).collect();
    let (de, dc) = d.leading_term()?;
    let de = de.clone();
    let dc = dc.clone();
    let mut r = p.clone();
    let mut q_terms: Vec<(Exponents, BigInt)> = Vec::new();
    while let Some((re, rc)) = r.leading_term() {
        let qe: Exponents = re
            .iter()
            .zip(&de)
            .map(|(&x, &y)| x - y)
            .collect();
        if qe.iter().any(|&e| e < 0) {
            return None;
        }
        let (qc, rem) = rc.div_rem(&dc);
        if !rem.is_zero() {
            return None;
        }
        let t = MultiPoly::monomial(&vref, qe.clone(), qc.clone());
        r = r.sub(&t.mul(d));
        q_terms.push((qe, qc));
    }
    Some(MultiPoly::from_terms(&vref, q_terms))
}

/// Integer power of a complex number by squaring; negative exponents invert.
pub(crate) fn cpowi(z: Complex64, k: i32) -> Complex64 {
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let (mut base, mut n) = if k < 0 {
        (z.inv(), (k as i64).unsigned_abs())
    } else {
        (z, k as u64)
    };
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.same_universe(other) {
            return self.terms == other.terms;
        }
        let (_, a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e != 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{}^{}", v, e) })
                .collect();
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", a, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A-polynomial of the figure-eight knot in the holonomy variables `(M, L)`
/// (meridian and longitude eigenvalue squares), geometric and abelian
/// components included as printed in the standard tables.
pub fn fig8_a_polynomial() -> MultiPoly {
    parse_poly("-M^4 + L*(1 - M^2 - 2*M^4 - M^6 + M^8) - L^2*M^4", &["M", "L"])
        .expect("built-in polynomial parses")
}

/// The two-variable polynomial `H(x, y)` whose Mahler measure, scaled by π,
/// matches the hyperbolic volume of the figure-eight knot complement.  It is
/// the elimination of the shape variables from the figure-eight gluing and
/// cusp equations, written in the cusp holonomy coordinates `(x, y)`.
pub fn fig8_h_polynomial() -> MultiPoly {
    parse_poly("y*(x^4 - x^3 - 2*x^2 - x + 1) + y^2*x^2 + x^2", &["x", "y"])
        .expect("built-in polynomial parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, vars: &[&str]) -> MultiPoly {
        parse_poly(text, vars).unwrap()
    }

    #[test]
    fn canonical_form_merges_and_sorts() {
        let a = MultiPoly::from_terms(
            &["x", "y"],
            vec![
                (vec![1, 0], BigInt::from(2)),
                (vec![0, 1], BigInt::from(3)),
                (vec![1, 0], BigInt::from(-2)),
            ],
        );
        assert_eq!(a.term_count(), 1);
        assert_eq!(a, p("3*y", &["x", "y"]));
    }

    #[test]
    fn universes_union_automatically() {
        let a = p("1 + x", &["x"]);
        let b = p("y - 1", &["y"]);
        let s = a.add(&b);
        assert_eq!(s, p("x + y", &["x", "y"]));
        let prod = a.mul(&b);
        assert_eq!(prod, p("x*y + y - x - 1", &["x", "y"]));
    }

    #[test]
    fn semantic_equality_ignores_variable_order() {
        let a = p("x + y", &["x", "y"]);
        let b = p("x + y", &["y", "x"]);
        assert_eq!(a, b);
    }

    #[test]
    fn substitute_monomial_into_laurent() {
        // t^-1 with t -> -s: (-s)^-1 = -s^-1
        let a = p("t^-1", &["t"]);
        let rep = p("-s", &["s"]);
        let got = a.substitute_var("t", &rep).unwrap();
        assert_eq!(got, p("-s^-1", &["t", "s"]));
    }

    #[test]
    fn substitute_rejects_noninvertible_into_negative_power() {
        let a = p("t^-1", &["t"]);
        let rep = p("1 + s", &["s"]);
        assert!(matches!(
            a.substitute_var("t", &rep),
            Err(PolyError::NotInvertible(_))
        ));
        let rep2 = p("2*s", &["s"]);
        assert!(a.substitute_var("t", &rep2).is_err());
    }

    #[test]
    fn slice_of_h_at_angle_zero() {
        let h = fig8_h_polynomial();
        let s = specialize_slice(&h, "y", 0.0).unwrap();
        assert_eq!(s.free_var, "x");
        assert_eq!(s.cleared_power, 0);
        // y = 1 collapses H to x^4 - x^3 - x + 1; the x^2 column cancels.
        assert_eq!(s.poly.degree(), 4);
        let expect = [1.0, -1.0, 0.0, -1.0, 1.0];
        for (c, e) in s.poly.coeffs.iter().zip(expect) {
            assert!((c.re - e).abs() < 1e-12 && c.im.abs() < 1e-12);
        }
    }

    #[test]
    fn slice_clears_negative_powers_and_keeps_positive_shift() {
        let m = p("x*y^-1", &["x", "y"]);
        let s = specialize_slice(&m, "y", 0.5).unwrap();
        // e^(2*pi*i/2) = -1, so the slice is -x; the positive power of x stays.
        assert_eq!(s.cleared_power, 0);
        assert_eq!(s.poly.degree(), 1);
        assert!((s.poly.coeffs[1].re + 1.0).abs() < 1e-15);
        assert!(s.poly.coeffs[0].norm() == 0.0);

        let inv = p("x^-1*y + 2", &["x", "y"]);
        let s = specialize_slice(&inv, "y", 0.0).unwrap();
        assert_eq!(s.cleared_power, 1);
        assert_eq!(s.poly.degree(), 1);
    }

    #[test]
    fn slice_rejects_second_free_variable() {
        let q = p("x*y*z + 1", &["x", "y", "z"]);
        assert!(specialize_slice(&q, "z", 0.0).is_err());
    }

    #[test]
    fn substitution_example_h_of_m_squared() {
        // H(M^2, -L) recovers the negated A-polynomial.
        let h = fig8_h_polynomial();
        let m2 = p("M^2", &["M"]);
        let ml = p("-L", &["L"]);
        let s = h
            .substitute_var("x", &m2)
            .unwrap()
            .substitute_var("y", &ml)
            .unwrap();
        assert_eq!(s, fig8_a_polynomial().neg());
    }

    #[test]
    fn divides_product_recovers_factor() {
        let a = p("2*x - 7*y^3 + 1", &["x", "y"]);
        let d = p("3*x^2*y - y + 5", &["x", "y"]);
        let q = a.mul(&d).divides_exactly(&d).unwrap();
        assert_eq!(q, a);
    }

    #[test]
    fn divides_handles_laurent_monomial_factors() {
        let h = fig8_h_polynomial();
        let shifted = h.mul(&p("-3*x^-2*y^5", &["x", "y"]));
        let q = shifted.divides_exactly(&h).unwrap();
        assert_eq!(q, p("-3*x^-2*y^5", &["x", "y"]));
    }

    #[test]
    fn non_divisibility_detected() {
        let a = p("1 + x + y", &["x", "y"]);
        let d = p("1 + x", &["x", "y"]);
        assert!(a.divides_exactly(&d).is_none());
    }

    #[test]
    fn eval_exact_coefficients() {
        let a = fig8_a_polynomial();
        let v = a
            .eval(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!((v - Complex64::new(-4.0, 0.0)).norm() < 1e-14);
        let h = fig8_h_polynomial();
        let v = h
            .eval(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn eval_pole_reported() {
        let a = p("x^-2", &["x"]);
        assert!(matches!(
            a.eval(&[Complex64::new(0.0, 0.0)]),
            Err(PolyError::EvalAtPole(_))
        ));
    }

    #[test]
    fn reciprocity_of_fig8_a_polynomial() {
        assert!(fig8_a_polynomial().reciprocity_check());
        assert!(!p("1 + x + y", &["x", "y"]).reciprocity_check());
        assert!(p("5*x^3*y^-2", &["x", "y"]).reciprocity_check());
    }

    #[test]
    fn display_reparses_to_identical_form() {
        for (text, vars) in [
            ("-M^4 + L*(1 - M^2 - 2*M^4 - M^6 + M^8) - L^2*M^4", vec!["M", "L"]),
            ("y*(x^4 - x^3 - 2*x^2 - x + 1) + y^2*x^2 + x^2", vec!["x", "y"]),
            ("x^-3 - 7", vec!["x"]),
            ("0", vec!["x"]),
        ] {
            let a = p(text, &vars);
            let round = parse_poly(&a.to_string(), &vars).unwrap();
            assert_eq!(a, round, "round-trip failed for {}", a);
        }
    }

    #[test]
    fn pow_signed_monomials() {
        let m = p("-x*y^2", &["x", "y"]);
        assert_eq!(m.pow_signed(-3).unwrap(), p("-x^-3*y^-6", &["x", "y"]));
        assert_eq!(m.pow_signed(2).unwrap(), p("x^2*y^4", &["x", "y"]));
    }
}
