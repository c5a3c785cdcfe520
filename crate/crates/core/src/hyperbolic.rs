//! Ideal triangulations: shape equations, hyperbolic volume, and the
//! holonomy curve.
//!
//! A [`Triangulation`] stores exponent data for equations of the shape
//! `Π zᵢ^{aᵢ} (1−zᵢ)^{bᵢ} = rhs`: gluing rows whose right-hand side is
//! `±1`, and two cusp rows whose right-hand sides are the meridian and
//! longitude holonomies `x` and `y`.  Fixing `(x, y)` and solving for the
//! shapes `zᵢ` is a square Newton problem; the hyperbolic volume of a
//! solution is the sum of Bloch–Wigner dilogarithms of the shapes.
//!
//! Eliminating the shapes from the equation system by iterated resultants
//! leaves a single integer polynomial `H(x, y)` that cuts out the curve of
//! holonomies admitting a solution.  The elimination works over cleared
//! (denominator-free) forms of the equations, strips integer and monomial
//! content after every resultant, and retries other variable orders when a
//! resultant collapses to zero.

use crate::numerics::{bloch_wigner, newton_solve, NumericsError};
use crate::polycore::{cpowi, resultant, MultiPoly, PolyError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Step size used when walking shapes along the meridian circle.
pub const CONTINUATION_STEP: f64 = 1e-3;
/// Largest shape movement accepted between neighbouring continuation steps.
pub const BRANCH_JUMP_LIMIT: f64 = 0.1;

#[derive(Debug, thiserror::Error)]
pub enum HypError {
    #[error("triangulation invalid: {0}")]
    Validation(String),
    #[error("shape {index} is degenerate (too close to 0 or 1)")]
    DegenerateShape { index: usize },
    #[error("holonomy components must be nonzero")]
    ZeroHolonomy,
    #[error("system has fewer equations than shapes; cannot solve")]
    Underdetermined,
    #[error("solution does not satisfy the remaining constraints (residual {residual:.3e})")]
    InconsistentTarget { residual: f64 },
    #[error("continuation detected a branch jump near t = {t:.6}")]
    BranchJump { t: f64 },
    #[error("continuation points must be positive and strictly increasing")]
    BadPath,
    #[error("elimination supports at most 4 tetrahedra, got {0}")]
    ScaleGuard(usize),
    #[error("no equation involves any shape variable; nothing to eliminate")]
    NothingToEliminate,
    #[error("every elimination order hit a zero resultant or left extra factors")]
    EliminationFailed,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingRow {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub sign: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspX {
    pub e: Vec<i32>,
    pub f: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspY {
    pub c: Vec<i32>,
    pub d: Vec<i32>,
}

/// Exponent data for one cusped manifold: `n` tetrahedron shapes, gluing
/// rows `Π z^a (1−z)^b = sign`, and the two cusp rows giving the meridian
/// and longitude holonomies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub label: String,
    pub n: usize,
    pub gluing: Vec<GluingRow>,
    pub cusp_x: CuspX,
    pub cusp_y: CuspY,
}

impl Triangulation {
    pub fn validate(&self) -> Result<(), HypError> {
        if self.n == 0 {
            return Err(HypError::Validation("n must be at least 1".into()));
        }
        if self.gluing.len() > self.n {
            return Err(HypError::Validation(format!(
                "{} gluing rows for {} tetrahedra",
                self.gluing.len(),
                self.n
            )));
        }
        for (i, row) in self.gluing.iter().enumerate() {
            if row.a.len() != self.n || row.b.len() != self.n {
                return Err(HypError::Validation(format!(
                    "gluing row {i} has wrong exponent vector length"
                )));
            }
            if row.sign != 1 && row.sign != -1 {
                return Err(HypError::Validation(format!(
                    "gluing row {i} sign must be +1 or -1, got {}",
                    row.sign
                )));
            }
        }
        if self.cusp_x.e.len() != self.n || self.cusp_x.f.len() != self.n {
            return Err(HypError::Validation("cusp_x vectors have wrong length".into()));
        }
        if self.cusp_y.c.len() != self.n || self.cusp_y.d.len() != self.n {
            return Err(HypError::Validation("cusp_y vectors have wrong length".into()));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self, HypError> {
        let t: Triangulation = serde_json::from_str(text)?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangulation serializes")
    }
}

/// The two-tetrahedron figure-eight knot complement: gluing row
/// `z₁(1−z₁)z₂(1−z₂) = 1` (the second row of the census is dependent and
/// omitted), longitude row `z₁(1−z₁) = y`, meridian row `z₂(1−z₁) = x`.
pub fn builtin_fig8() -> Triangulation {
    Triangulation {
        label: "figure-eight knot complement".to_string(),
        n: 2,
        gluing: vec![GluingRow {
            a: vec![1, 1],
            b: vec![1, 1],
            sign: 1,
        }],
        cusp_x: CuspX {
            e: vec![0, 1],
            f: vec![1, 0],
        },
        cusp_y: CuspY {
            c: vec![1, 0],
            d: vec![1, 0],
        },
    }
}

/// Tetrahedron shape parameters; valid shapes stay away from 0 and 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeVector {
    pub z: Vec<Complex64>,
}

impl ShapeVector {
    pub fn new(z: Vec<Complex64>) -> Result<Self, HypError> {
        for (i, v) in z.iter().enumerate() {
            if v.norm() < 1e-12 || (Complex64::new(1.0, 0.0) - v).norm() < 1e-12 {
                return Err(HypError::DegenerateShape { index: i });
            }
        }
        Ok(ShapeVector { z })
    }

    /// Every shape in the upper half plane: the solution describes a
    /// positively oriented geometric structure.
    pub fn geometric(&self) -> bool {
        self.z.iter().all(|v| v.im > 0.0)
    }

    /// The regular-ideal starting guess `e^(iπ/3)` for every shape.
    pub fn default_init(n: usize) -> Self {
        ShapeVector {
            z: vec![Complex64::from_polar(1.0, PI / 3.0); n],
        }
    }

    pub fn conjugate(&self) -> Self {
        ShapeVector {
            z: self.z.iter().map(|v| v.conj()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomyPoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl HolonomyPoint {
    pub fn new(x: Complex64, y: Complex64) -> Result<Self, HypError> {
        if x.norm() == 0.0 || y.norm() == 0.0 {
            return Err(HypError::ZeroHolonomy);
        }
        Ok(HolonomyPoint { x, y })
    }

    pub fn complete() -> Self {
        HolonomyPoint {
            x: Complex64::new(1.0, 0.0),
            y: Complex64::new(1.0, 0.0),
        }
    }
}

fn product_row(z: &[Complex64], a: &[i32], b: &[i32]) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut p = one;
    for i in 0..z.len() {
        if a[i] != 0 {
            p *= cpowi(z[i], a[i]);
        }
        if b[i] != 0 {
            p *= cpowi(one - z[i], b[i]);
        }
    }
    p
}

fn principal_mod_2pi(r: Complex64) -> Complex64 {
    let k = (r.im / (2.0 * PI)).round();
    Complex64::new(r.re, r.im - 2.0 * PI * k)
}

fn check_shapes(z: &[Complex64], tol: f64) -> Result<(), HypError> {
    for (i, v) in z.iter().enumerate() {
        if v.norm() < tol || (Complex64::new(1.0, 0.0) - v).norm() < tol {
            return Err(HypError::DegenerateShape { index: i });
        }
    }
    Ok(())
}

/// Log-form residuals of every row at the given shapes: gluing rows first,
/// then (when a target is supplied) the meridian and longitude rows.  Each
/// residual is `Σ aᵢ log zᵢ + bᵢ log(1−zᵢ) − log(rhs)` with the imaginary
/// part reduced to `(−π, π]`, so a row counts as satisfied even when the
/// logarithms land on different branches.
pub fn residuals(
    t: &Triangulation,
    s: &ShapeVector,
    target: Option<HolonomyPoint>,
) -> Result<Vec<Complex64>, HypError> {
    t.validate()?;
    check_shapes(&s.z, 1e-12)?;
    let one = Complex64::new(1.0, 0.0);
    let log_row = |a: &[i32], b: &[i32], rhs: Complex64| -> Complex64 {
        let mut r = -rhs.ln();
        for i in 0..s.z.len() {
            r += a[i] as f64 * s.z[i].ln() + b[i] as f64 * (one - s.z[i]).ln();
        }
        principal_mod_2pi(r)
    };
    let mut out = Vec::new();
    for row in &t.gluing {
        let rhs = Complex64::new(row.sign as f64, 0.0);
        out.push(log_row(&row.a, &row.b, rhs));
    }
    if let Some(h) = target {
        out.push(log_row(&t.cusp_x.e, &t.cusp_x.f, h.x));
        out.push(log_row(&t.cusp_y.c, &t.cusp_y.d, h.y));
    }
    Ok(out)
}

/// Multiplicative residuals `Π z^a (1−z)^b − rhs`, same row order as
/// [`residuals`].  This is the form the Newton solver differentiates.
pub fn residuals_mult(
    t: &Triangulation,
    s: &ShapeVector,
    target: Option<HolonomyPoint>,
) -> Result<Vec<Complex64>, HypError> {
    t.validate()?;
    check_shapes(&s.z, 1e-12)?;
    let mut out = Vec::new();
    for row in &t.gluing {
        let rhs = Complex64::new(row.sign as f64, 0.0);
        out.push(product_row(&s.z, &row.a, &row.b) - rhs);
    }
    if let Some(h) = target {
        out.push(product_row(&s.z, &t.cusp_x.e, &t.cusp_x.f) - h.x);
        out.push(product_row(&s.z, &t.cusp_y.c, &t.cusp_y.d) - h.y);
    }
    Ok(out)
}

/// Holonomy pair `(x, y)` read off from the cusp rows at the given shapes.
pub fn holonomy(t: &Triangulation, s: &ShapeVector) -> Result<HolonomyPoint, HypError> {
    t.validate()?;
    check_shapes(&s.z, 1e-12)?;
    Ok(HolonomyPoint {
        x: product_row(&s.z, &t.cusp_x.e, &t.cusp_x.f),
        y: product_row(&s.z, &t.cusp_y.c, &t.cusp_y.d),
    })
}

/// Hyperbolic volume of a shape assignment: `Σ D(zᵢ)` with `D` the
/// Bloch–Wigner dilogarithm.
pub fn volume(s: &ShapeVector) -> f64 {
    s.z.iter().map(|&z| bloch_wigner(z)).sum()
}

struct EqRow {
    a: Vec<i32>,
    b: Vec<i32>,
    rhs: Complex64,
}

/// Newton on the multiplicative residuals of a square row selection.
fn newton_on_rows(rows: &[EqRow], init: &[Complex64]) -> Result<(Vec<Complex64>, usize), HypError> {
    let n = init.len();
    assert_eq!(rows.len(), n, "square system expected");
    let one = Complex64::new(1.0, 0.0);
    let residual = |z: &[Complex64]| -> Vec<Complex64> {
        rows.iter()
            .map(|r| product_row(z, &r.a, &r.b) - r.rhs)
            .collect()
    };
    let jacobian = |z: &[Complex64]| -> Vec<Vec<Complex64>> {
        rows.iter()
            .map(|r| {
                let p = product_row(z, &r.a, &r.b);
                (0..n)
                    .map(|j| {
                        let mut d = Complex64::new(0.0, 0.0);
                        if r.a[j] != 0 {
                            d += Complex64::new(r.a[j] as f64, 0.0) / z[j];
                        }
                        if r.b[j] != 0 {
                            d -= Complex64::new(r.b[j] as f64, 0.0) / (one - z[j]);
                        }
                        p * d
                    })
                    .collect()
            })
            .collect()
    };
    let out = newton_solve(&residual, &jacobian, init, 1e-12, 100)?;
    Ok((out.solution, out.iterations))
}

/// Builds the square system: gluing rows (at most `n − 1` of them), then
/// the meridian row, then — only if still short — the longitude row.
fn square_rows(
    t: &Triangulation,
    x: Complex64,
    y: Option<Complex64>,
) -> Result<Vec<EqRow>, HypError> {
    let n = t.n;
    let mut rows = Vec::new();
    for row in t.gluing.iter().take(n.saturating_sub(1)) {
        rows.push(EqRow {
            a: row.a.clone(),
            b: row.b.clone(),
            rhs: Complex64::new(row.sign as f64, 0.0),
        });
    }
    if rows.len() < n {
        rows.push(EqRow {
            a: t.cusp_x.e.clone(),
            b: t.cusp_x.f.clone(),
            rhs: x,
        });
    }
    if rows.len() < n {
        if let Some(y) = y {
            rows.push(EqRow {
                a: t.cusp_y.c.clone(),
                b: t.cusp_y.d.clone(),
                rhs: y,
            });
        }
    }
    if rows.len() < n {
        return Err(HypError::Underdetermined);
    }
    rows.truncate(n);
    Ok(rows)
}

/// Solves the shape equations for a full holonomy target.  A square subset
/// of the rows drives Newton; afterwards every row — including any left
/// out — is checked against the target, so an off-curve target is reported
/// as inconsistent rather than silently projected.
pub fn solve_shapes(
    t: &Triangulation,
    target: HolonomyPoint,
    init: Option<&ShapeVector>,
) -> Result<ShapeVector, HypError> {
    t.validate()?;
    let default = ShapeVector::default_init(t.n);
    let init = init.unwrap_or(&default);
    if init.z.len() != t.n {
        return Err(HypError::Validation("init has wrong shape count".into()));
    }
    let rows = square_rows(t, target.x, Some(target.y))?;
    let (z, _) = newton_on_rows(&rows, &init.z)?;
    check_shapes(&z, 1e-9)?;
    let s = ShapeVector { z };
    let worst = residuals_mult(t, &s, Some(target))?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    if worst > 1e-9 {
        return Err(HypError::InconsistentTarget { residual: worst });
    }
    Ok(s)
}

/// Solves with only the meridian holonomy pinned and reads the longitude
/// off the solution.  This is the workhorse for walking the holonomy curve.
pub fn solve_meridian(
    t: &Triangulation,
    x: Complex64,
    init: Option<&ShapeVector>,
) -> Result<(ShapeVector, HolonomyPoint), HypError> {
    t.validate()?;
    let default = ShapeVector::default_init(t.n);
    let init = init.unwrap_or(&default);
    if init.z.len() != t.n {
        return Err(HypError::Validation("init has wrong shape count".into()));
    }
    let rows = square_rows(t, x, None)?;
    let (z, _) = newton_on_rows(&rows, &init.z)?;
    check_shapes(&z, 1e-9)?;
    let s = ShapeVector { z };
    let worst = residuals_mult(t, &s, None)?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    if worst > 1e-9 {
        return Err(HypError::InconsistentTarget { residual: worst });
    }
    let h = holonomy(t, &s)?;
    Ok((s, h))
}

/// Solves shapes at meridian angles `x = e^(it)` for each requested `t`
/// (strictly increasing), walking in small steps from the first point so
/// the returned solutions stay on one branch.  A shape moving more than
/// [`BRANCH_JUMP_LIMIT`] in a single step aborts the walk.
pub fn solve_along_meridian(
    t: &Triangulation,
    ts: &[f64],
) -> Result<Vec<(ShapeVector, HolonomyPoint)>, HypError> {
    if ts.is_empty() || ts.windows(2).any(|w| w[0] >= w[1]) || ts[0] <= 0.0 {
        return Err(HypError::BadPath);
    }
    let x_at = |t_val: f64| Complex64::from_polar(1.0, t_val);
    let mut out = Vec::with_capacity(ts.len());
    let (mut cur, h0) = solve_meridian(t, x_at(ts[0]), None)?;
    out.push((cur.clone(), h0));
    let mut cur_t = ts[0];
    for &target_t in &ts[1..] {
        while cur_t < target_t {
            let next_t = (cur_t + CONTINUATION_STEP).min(target_t);
            let (next, _) = solve_meridian(t, x_at(next_t), Some(&cur))?;
            let jump = cur
                .z
                .iter()
                .zip(&next.z)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0, f64::max);
            if jump > BRANCH_JUMP_LIMIT {
                return Err(HypError::BranchJump { t: next_t });
            }
            cur = next;
            cur_t = next_t;
        }
        let h = holonomy(t, &cur)?;
        out.push((cur.clone(), h));
    }
    Ok(out)
}

/// Report of the volume-derivative experiment along `x = e^(it)`.
#[derive(Debug, Clone)]
pub struct DvolReport {
    pub t0: f64,
    pub h: f64,
    /// Central difference `(Vol(t0+h) − Vol(t0−h)) / 2h`.
    pub finite_diff: f64,
    pub ln_abs_y: f64,
    /// `finite_diff / ln_abs_y`; absent when `|y(t0)| = 1` and the ratio is
    /// undefined.
    pub ratio: Option<f64>,
}

/// Measures the proportionality between the volume derivative along the
/// meridian circle and `ln|y|` at `t0`, using a second-order central
/// difference with step `h`.
pub fn dvol_check(t: &Triangulation, t0: f64, h: f64) -> Result<DvolReport, HypError> {
    if !(h > 0.0) || !(t0 > h) {
        return Err(HypError::BadPath);
    }
    let pts = solve_along_meridian(t, &[t0 - h, t0, t0 + h])?;
    let v_minus = volume(&pts[0].0);
    let v_plus = volume(&pts[2].0);
    let finite_diff = (v_plus - v_minus) / (2.0 * h);
    let ln_abs_y = pts[1].1.y.norm().ln();
    let ratio = if ln_abs_y.abs() < 1e-12 {
        None
    } else {
        Some(finite_diff / ln_abs_y)
    };
    Ok(DvolReport {
        t0,
        h,
        finite_diff,
        ln_abs_y,
        ratio,
    })
}

// ---------------------------------------------------------------------
// Elimination of the shape variables.

fn shape_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

/// Clears one equation `Π z^g (1−z)^h = rhs` to an integer polynomial by
/// splitting exponents by sign: positive powers multiply the left side,
/// negative powers multiply the right side along with `rhs`.
fn row_polynomial(
    universe: &[&str],
    zvars: &[String],
    g: &[i32],
    h: &[i32],
    rhs: &MultiPoly,
) -> MultiPoly {
    let mut lhs = MultiPoly::constant(universe, 1);
    let mut rhs_side = rhs.clone();
    for i in 0..zvars.len() {
        let z = MultiPoly::var(universe, &zvars[i]).expect("universe contains shape var");
        let w = MultiPoly::constant(universe, 1).sub(&z);
        if g[i] > 0 {
            lhs = lhs.mul(&z.pow(g[i] as u32));
        } else if g[i] < 0 {
            rhs_side = rhs_side.mul(&z.pow((-g[i]) as u32));
        }
        if h[i] > 0 {
            lhs = lhs.mul(&w.pow(h[i] as u32));
        } else if h[i] < 0 {
            rhs_side = rhs_side.mul(&w.pow((-h[i]) as u32));
        }
    }
    lhs.sub(&rhs_side)
}

fn degree_or_zero(p: &MultiPoly, v: &str) -> i32 {
    p.degree_in(v).ok().flatten().unwrap_or(0).max(0)
}

fn contains_var(p: &MultiPoly, v: &str) -> bool {
    match p.vars().iter().position(|w| w == v) {
        Some(i) => p.terms().iter().any(|(e, _)| e[i] != 0),
        None => false,
    }
}

/// Eliminates the shapes in the given variable order; `None` when a
/// resultant collapses to zero or more than one polynomial survives.
fn eliminate_in_order(polys: &[MultiPoly], order: &[String]) -> Option<MultiPoly> {
    let mut polys: Vec<MultiPoly> = polys.to_vec();
    for v in order {
        let (with_v, without): (Vec<MultiPoly>, Vec<MultiPoly>) =
            polys.into_iter().partition(|p| contains_var(p, v));
        if with_v.is_empty() {
            polys = without;
            continue;
        }
        if with_v.len() == 1 {
            // The variable appears in a single equation; projection just
            // forgets that equation's constraint on it.
            polys = without;
            continue;
        }
        let pivot = with_v
            .iter()
            .min_by_key(|p| (degree_or_zero(p, v), p.term_count()))
            .cloned()
            .unwrap();
        let mut next = without;
        for p in with_v.iter().filter(|p| **p != pivot) {
            let r = resultant(p, &pivot, v).ok()?;
            if r.is_zero() {
                return None;
            }
            let (prim, _, _) = r.primitive_laurent();
            next.push(prim);
        }
        // Two identical copies of the pivot would both be skipped above;
        // keep one resultant per distinct partner.
        polys = next;
    }
    if polys.len() != 1 {
        return None;
    }
    let out = polys.pop().unwrap();
    if out.is_zero() || out.term_count() == 0 {
        return None;
    }
    Some(out)
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Eliminates the shape variables from the gluing and cusp equations,
/// returning the primitive sign-normalized polynomial in `(x, y)` that
/// vanishes on the holonomy curve.  The variable eliminated first is the
/// one of lowest total degree across the equations; orders are retried on
/// failure.  The result can still contain extraneous factors introduced by
/// the resultants — callers needing a specific factor should test
/// divisibility.
pub fn eliminate_h(t: &Triangulation) -> Result<MultiPoly, HypError> {
    t.validate()?;
    if t.n > 4 {
        return Err(HypError::ScaleGuard(t.n));
    }
    let zvars = shape_var_names(t.n);
    let mut universe: Vec<&str> = zvars.iter().map(|s| s.as_str()).collect();
    universe.push("x");
    universe.push("y");

    let mut polys: Vec<MultiPoly> = Vec::new();
    for row in t.gluing.iter().take(t.n.saturating_sub(1)) {
        let rhs = MultiPoly::constant(&universe, row.sign);
        polys.push(row_polynomial(&universe, &zvars, &row.a, &row.b, &rhs));
    }
    let x = MultiPoly::var(&universe, "x").unwrap();
    let y = MultiPoly::var(&universe, "y").unwrap();
    polys.push(row_polynomial(
        &universe,
        &zvars,
        &t.cusp_x.e,
        &t.cusp_x.f,
        &x,
    ));
    polys.push(row_polynomial(
        &universe,
        &zvars,
        &t.cusp_y.c,
        &t.cusp_y.d,
        &y,
    ));
    polys.retain(|p| !p.is_zero());
    if !zvars.iter().any(|v| polys.iter().any(|p| contains_var(p, v))) {
        return Err(HypError::NothingToEliminate);
    }

    // Heuristic first: eliminate lowest total degree first.
    let mut by_degree = zvars.clone();
    by_degree.sort_by_key(|v| polys.iter().map(|p| degree_or_zero(p, v)).sum::<i32>());
    let mut orders = vec![by_degree.clone()];
    for perm in permutations(&zvars) {
        if perm != by_degree {
            orders.push(perm);
        }
    }
    for order in &orders {
        if let Some(result) = eliminate_in_order(&polys, order) {
            let (prim, _, _) = result.primitive_laurent();
            let (normal, _) = prim.normalize_sign();
            // Every shape variable has been eliminated; re-express the
            // survivor over (x, y) alone.
            let terms: Vec<(Vec<i32>, _)> = normal
                .terms()
                .iter()
                .map(|(e, c)| {
                    debug_assert!(e[..t.n].iter().all(|&k| k == 0));
                    (vec![e[t.n], e[t.n + 1]], c.clone())
                })
                .collect();
            return Ok(MultiPoly::from_terms(&["x", "y"], terms));
        }
    }
    Err(HypError::EliminationFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{fig8_h_polynomial, parse_poly};

    const VOL_FIG8: f64 = 2.029_883_212_819_307_2;

    fn complete_shapes() -> ShapeVector {
        ShapeVector::default_init(2)
    }

    fn toy_n1() -> Triangulation {
        Triangulation {
            label: "toy".into(),
            n: 1,
            gluing: vec![],
            cusp_x: CuspX {
                e: vec![1],
                f: vec![0],
            },
            cusp_y: CuspY {
                c: vec![0],
                d: vec![1],
            },
        }
    }

    #[test]
    fn builtin_has_expected_row_counts() {
        let t = builtin_fig8();
        t.validate().unwrap();
        assert_eq!(t.n, 2);
        assert_eq!(t.gluing.len(), t.n - 1);
        assert_eq!(t.gluing[0].a, vec![1, 1]);
        assert_eq!(t.gluing[0].b, vec![1, 1]);
        assert_eq!(t.gluing[0].sign, 1);
    }

    #[test]
    fn residuals_vanish_at_complete_structure() {
        let t = builtin_fig8();
        let r = residuals(&t, &complete_shapes(), Some(HolonomyPoint::complete())).unwrap();
        assert_eq!(r.len(), 3);
        for v in r {
            assert!(v.norm() < 1e-12, "residual {v}");
        }
        let m = residuals_mult(&t, &complete_shapes(), Some(HolonomyPoint::complete())).unwrap();
        for v in m {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn residual_matches_direct_log_evaluation() {
        let t = builtin_fig8();
        let z = Complex64::new(0.0, 2.0);
        let s = ShapeVector::new(vec![z, z]).unwrap();
        let r = residuals(&t, &s, None).unwrap();
        assert_eq!(r.len(), 1);
        let one = Complex64::new(1.0, 0.0);
        let direct = 2.0 * (z.ln() + (one - z).ln());
        let reduced = principal_mod_2pi(direct);
        assert!((r[0] - reduced).norm() < 1e-12);
    }

    #[test]
    fn empty_gluing_rows_give_empty_residual_vector() {
        let t = toy_n1();
        let s = ShapeVector::new(vec![Complex64::new(0.0, 2.0)]).unwrap();
        assert!(residuals(&t, &s, None).unwrap().is_empty());
    }

    #[test]
    fn solve_complete_structure_from_default_init() {
        let t = builtin_fig8();
        let s = solve_shapes(&t, HolonomyPoint::complete(), None).unwrap();
        let want = Complex64::new(0.5, 3.0_f64.sqrt() / 2.0);
        for z in &s.z {
            assert!((z - want).norm() < 1e-10, "shape {z}");
        }
        assert!(s.geometric());
        let r = residuals(&t, &s, Some(HolonomyPoint::complete())).unwrap();
        assert!(r.iter().all(|v| v.norm() < 1e-10));
    }

    #[test]
    fn conjugate_init_finds_conjugate_solution() {
        let t = builtin_fig8();
        let init = complete_shapes().conjugate();
        let s = solve_shapes(&t, HolonomyPoint::complete(), Some(&init)).unwrap();
        assert!(!s.geometric());
        let want = Complex64::new(0.5, -(3.0_f64.sqrt()) / 2.0);
        for z in &s.z {
            assert!((z - want).norm() < 1e-10);
        }
        assert!((volume(&s) + VOL_FIG8).abs() < 1e-12);
    }

    #[test]
    fn volume_of_complete_structure() {
        assert!((volume(&complete_shapes()) - VOL_FIG8).abs() < 1e-12);
    }

    #[test]
    fn volume_vanishes_on_real_shapes() {
        let s = ShapeVector::new(vec![Complex64::new(0.5, 0.0), Complex64::new(2.0, 0.0)])
            .unwrap();
        assert_eq!(volume(&s), 0.0);
    }

    #[test]
    fn holonomy_at_complete_is_one_one() {
        let t = builtin_fig8();
        let h = holonomy(&t, &complete_shapes()).unwrap();
        assert!((h.x - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((h.y - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_exponent_rows_give_trivial_holonomy() {
        let t = Triangulation {
            label: "trivial cusps".into(),
            n: 1,
            gluing: vec![],
            cusp_x: CuspX {
                e: vec![0],
                f: vec![0],
            },
            cusp_y: CuspY {
                c: vec![0],
                d: vec![0],
            },
        };
        let s = ShapeVector::new(vec![Complex64::new(0.3, 1.4)]).unwrap();
        let h = holonomy(&t, &s).unwrap();
        assert_eq!(h.x, Complex64::new(1.0, 0.0));
        assert_eq!(h.y, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn meridian_solution_lands_on_h_curve() {
        let t = builtin_fig8();
        let x = Complex64::from_polar(1.0, 0.3);
        let (_, h) = solve_meridian(&t, x, None).unwrap();
        let hp = fig8_h_polynomial();
        let v = hp.eval(&[h.x, h.y]).unwrap();
        assert!(v.norm() < 1e-9, "H(x, y) = {v}");
    }

    #[test]
    fn off_curve_target_is_rejected() {
        let t = builtin_fig8();
        let target = HolonomyPoint::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.5, 0.0),
        )
        .unwrap();
        match solve_shapes(&t, target, None) {
            Err(HypError::InconsistentTarget { .. }) | Err(HypError::Numerics(_)) => {}
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn elimination_recovers_toy_line() {
        let out = eliminate_h(&toy_n1()).unwrap();
        let want = parse_poly("x + y - 1", &["x", "y"]).unwrap();
        assert_eq!(out, want);
    }

    #[test]
    fn elimination_output_divisible_by_h() {
        let out = eliminate_h(&builtin_fig8()).unwrap();
        let h = fig8_h_polynomial();
        let q = out.divides_exactly(&h);
        assert!(q.is_some(), "H does not divide the elimination output {out}");
    }

    #[test]
    fn elimination_scale_guard() {
        let mut t = builtin_fig8();
        t.n = 5;
        t.gluing[0].a = vec![1, 1, 0, 0, 0];
        t.gluing[0].b = vec![1, 1, 0, 0, 0];
        t.cusp_x.e = vec![0, 1, 0, 0, 0];
        t.cusp_x.f = vec![1, 0, 0, 0, 0];
        t.cusp_y.c = vec![1, 0, 0, 0, 0];
        t.cusp_y.d = vec![1, 0, 0, 0, 0];
        assert!(matches!(eliminate_h(&t), Err(HypError::ScaleGuard(5))));
    }

    #[test]
    fn dvol_ratio_defined_off_complete() {
        let t = builtin_fig8();
        let rep = dvol_check(&t, 0.15, 1e-4).unwrap();
        assert!(rep.ln_abs_y.abs() > 1e-6, "ln|y| = {}", rep.ln_abs_y);
        assert!(rep.ratio.is_some());
    }

    #[test]
    fn dvol_finite_difference_is_second_order() {
        let t = builtin_fig8();
        let f1 = dvol_check(&t, 0.15, 4e-3).unwrap().finite_diff;
        let f2 = dvol_check(&t, 0.15, 2e-3).unwrap().finite_diff;
        let f3 = dvol_check(&t, 0.15, 1e-3).unwrap().finite_diff;
        let r = (f1 - f2) / (f2 - f3);
        assert!(
            (r - 4.0).abs() < 1.2,
            "halving h should quarter the error, got ratio {r}"
        );
    }

    #[test]
    fn json_round_trip_and_validation() {
        let t = builtin_fig8();
        let text = t.to_json_string();
        let back = Triangulation::from_json_str(&text).unwrap();
        assert_eq!(t, back);

        let bad_sign = text.replace("\"sign\": 1", "\"sign\": 3");
        assert!(Triangulation::from_json_str(&bad_sign).is_err());

        let bad = r#"{"label":"broken","n":0,"gluing":[],"cusp_x":{"e":[],"f":[]},"cusp_y":{"c":[],"d":[]}}"#;
        assert!(Triangulation::from_json_str(bad).is_err());

        let wrong_len =
            r#"{"label":"broken","n":2,"gluing":[],"cusp_x":{"e":[1],"f":[0]},"cusp_y":{"c":[1,0],"d":[1,0]}}"#;
        assert!(Triangulation::from_json_str(wrong_len).is_err());
    }

    #[test]
    fn degenerate_shapes_are_rejected() {
        assert!(ShapeVector::new(vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(ShapeVector::new(vec![Complex64::new(0.0, 0.0)]).is_err());
        let s = ShapeVector {
            z: vec![Complex64::new(1e-13, 0.0), Complex64::new(0.0, 2.0)],
        };
        assert!(residuals(&builtin_fig8(), &s, None).is_err());
    }
}
