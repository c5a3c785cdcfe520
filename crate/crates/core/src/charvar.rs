//! Symbolic 2×2 matrices over integer Laurent-polynomial rings, and the
//! representation-variety bookkeeping built on them.
//!
//! A [`PolyMatrix2`] multiplies and traces exactly.  Inverses are only
//! formal: for a determinant-one matrix the adjugate *is* the inverse, so
//! words in a group presentation are evaluated by substituting the adjugate
//! for every inverse letter.  Away from the determinant-one locus the
//! substitution is still well-defined polynomial arithmetic — the resulting
//! equations simply carry `det − 1 = 0` alongside, which is exactly how a
//! presentation with `n` generators and `k` relators becomes `4k + n`
//! polynomial equations in the `4n` matrix entries.
//!
//! The module also carries a small set of exact identity checks used by the
//! verification suite: a two-generator parabolic/upper-triangular family
//! whose commutation defect factors through one curve polynomial, the
//! change-of-variable identity putting that curve in Weierstrass form, the
//! trace product rule, and the trace degeneration for reducible pairs.

use crate::polycore::{MultiPoly, PolyError};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum CharvarError {
    #[error("matrix is not tagged unimodular; formal inverse unavailable")]
    NotUnimodular,
    #[error("determinant is not the constant 1")]
    DeterminantNotOne,
    #[error("word is empty")]
    EmptyWord,
    #[error("word refers to generator {0}, but only {1} are assigned")]
    UnassignedIndex(i32, usize),
    #[error("presentations are limited to 4 generators, got {0}")]
    ScaleGuard(usize),
    #[error("bad presentation text: {0}")]
    BadPresentation(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// 2×2 matrix of integer Laurent polynomials.  The unimodular tag records
/// that the determinant is exactly the constant 1, which is what licenses
/// the adjugate as a true inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix2 {
    pub p11: MultiPoly,
    pub p12: MultiPoly,
    pub p21: MultiPoly,
    pub p22: MultiPoly,
    unimodular: bool,
}

impl PolyMatrix2 {
    pub fn new(p11: MultiPoly, p12: MultiPoly, p21: MultiPoly, p22: MultiPoly) -> Self {
        PolyMatrix2 {
            p11,
            p12,
            p21,
            p22,
            unimodular: false,
        }
    }

    /// Constructs a matrix and verifies `det = 1` exactly.
    pub fn new_unimodular(
        p11: MultiPoly,
        p12: MultiPoly,
        p21: MultiPoly,
        p22: MultiPoly,
    ) -> Result<Self, CharvarError> {
        let m = PolyMatrix2::new(p11, p12, p21, p22);
        if !m.det().is_one() {
            return Err(CharvarError::DeterminantNotOne);
        }
        Ok(PolyMatrix2 {
            unimodular: true,
            ..m
        })
    }

    pub fn identity(vars: &[&str]) -> Self {
        let one = MultiPoly::constant(vars, 1);
        let zero = MultiPoly::zero(vars);
        PolyMatrix2 {
            p11: one.clone(),
            p12: zero.clone(),
            p21: zero,
            p22: one,
            unimodular: true,
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn det(&self) -> MultiPoly {
        self.p11.mul(&self.p22).sub(&self.p12.mul(&self.p21))
    }

    pub fn trace(&self) -> MultiPoly {
        self.p11.add(&self.p22)
    }

    pub fn mul(&self, rhs: &PolyMatrix2) -> PolyMatrix2 {
        PolyMatrix2 {
            p11: self.p11.mul(&rhs.p11).add(&self.p12.mul(&rhs.p21)),
            p12: self.p11.mul(&rhs.p12).add(&self.p12.mul(&rhs.p22)),
            p21: self.p21.mul(&rhs.p11).add(&self.p22.mul(&rhs.p21)),
            p22: self.p21.mul(&rhs.p12).add(&self.p22.mul(&rhs.p22)),
            unimodular: self.unimodular && rhs.unimodular,
        }
    }

    pub fn sub(&self, rhs: &PolyMatrix2) -> PolyMatrix2 {
        PolyMatrix2 {
            p11: self.p11.sub(&rhs.p11),
            p12: self.p12.sub(&rhs.p12),
            p21: self.p21.sub(&rhs.p21),
            p22: self.p22.sub(&rhs.p22),
            unimodular: false,
        }
    }

    /// The adjugate `[[d, −b], [−c, a]]`; multiplying by it recovers
    /// `det · I`, so on a determinant-one matrix it is the inverse.
    pub fn adjugate(&self) -> PolyMatrix2 {
        PolyMatrix2 {
            p11: self.p22.clone(),
            p12: self.p12.neg(),
            p21: self.p21.neg(),
            p22: self.p11.clone(),
            unimodular: self.unimodular,
        }
    }

    /// True inverse, available only for matrices verified unimodular.
    pub fn inverse_unimodular(&self) -> Result<PolyMatrix2, CharvarError> {
        if !self.unimodular {
            return Err(CharvarError::NotUnimodular);
        }
        Ok(self.adjugate())
    }
}

/// Evaluates a word of signed generator indices (`+k` for the k-th matrix,
/// `−k` for its adjugate) as a left-to-right product.
pub fn eval_word(word: &[i32], assign: &[PolyMatrix2]) -> Result<PolyMatrix2, CharvarError> {
    if word.is_empty() {
        return Err(CharvarError::EmptyWord);
    }
    let factor = |idx: i32| -> Result<PolyMatrix2, CharvarError> {
        let k = idx.unsigned_abs() as usize;
        if idx == 0 || k > assign.len() {
            return Err(CharvarError::UnassignedIndex(idx, assign.len()));
        }
        let m = &assign[k - 1];
        Ok(if idx > 0 { m.clone() } else { m.adjugate() })
    };
    let mut acc = factor(word[0])?;
    for &idx in &word[1..] {
        acc = acc.mul(&factor(idx)?);
    }
    Ok(acc)
}

/// A finitely presented group: relators are words of signed generator
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub n_generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn validate(&self) -> Result<(), CharvarError> {
        if self.n_generators == 0 {
            return Err(CharvarError::BadPresentation(
                "at least one generator required".into(),
            ));
        }
        for w in &self.relators {
            if w.is_empty() {
                return Err(CharvarError::EmptyWord);
            }
            for &idx in w {
                if idx == 0 || idx.unsigned_abs() as usize > self.n_generators {
                    return Err(CharvarError::UnassignedIndex(idx, self.n_generators));
                }
            }
        }
        Ok(())
    }

    /// Parses comma-separated relator words: lowercase letters are
    /// generators (`a` = 1, `b` = 2, …), uppercase letters their inverses.
    /// The generator count is the largest letter mentioned.
    pub fn parse(text: &str) -> Result<Self, CharvarError> {
        let mut relators = Vec::new();
        let mut n = 0usize;
        for chunk in text.split(',') {
            let word: Result<Vec<i32>, CharvarError> = chunk
                .trim()
                .chars()
                .map(|c| match c {
                    'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
                    'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
                    other => Err(CharvarError::BadPresentation(format!(
                        "unexpected character {other:?}"
                    ))),
                })
                .collect();
            let word = word?;
            if word.is_empty() {
                return Err(CharvarError::BadPresentation(
                    "empty relator word".into(),
                ));
            }
            n = n.max(word.iter().map(|i| i.unsigned_abs() as usize).max().unwrap());
            relators.push(word);
        }
        let p = GroupPresentation {
            n_generators: n,
            relators,
        };
        p.validate()?;
        Ok(p)
    }
}

/// The knot group of the figure-eight knot: two generators with the single
/// relator `w a w⁻¹ b⁻¹` where `w = a⁻¹ b a b⁻¹`.
pub fn fig8_presentation() -> GroupPresentation {
    let w = [-1, 2, 1, -2];
    let w_inv = [2, -1, -2, 1];
    let mut relator = Vec::new();
    relator.extend_from_slice(&w);
    relator.push(1);
    relator.extend_from_slice(&w_inv);
    relator.push(-2);
    GroupPresentation {
        n_generators: 2,
        relators: vec![relator],
    }
}

/// Compiles a presentation to the defining equations of its representation
/// variety in the `4n` matrix entries `a_i, b_i, c_i, d_i`: one
/// `det − 1` polynomial per generator and four entry polynomials
/// `(relator product − identity)` per relator — `4k + n` in total.
pub fn presentation_to_equations(p: &GroupPresentation) -> Result<Vec<MultiPoly>, CharvarError> {
    p.validate()?;
    if p.n_generators > 4 {
        return Err(CharvarError::ScaleGuard(p.n_generators));
    }
    let names: Vec<String> = (1..=p.n_generators)
        .flat_map(|i| ["a", "b", "c", "d"].map(|s| format!("{s}{i}")))
        .collect();
    let universe: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let v = |name: &str| MultiPoly::var(&universe, name).expect("entry var");

    let mut mats = Vec::new();
    let mut equations = Vec::new();
    for i in 1..=p.n_generators {
        let m = PolyMatrix2::new(
            v(&format!("a{i}")),
            v(&format!("b{i}")),
            v(&format!("c{i}")),
            v(&format!("d{i}")),
        );
        equations.push(m.det().sub(&MultiPoly::constant(&universe, 1)));
        mats.push(m);
    }
    let id = PolyMatrix2::identity(&universe);
    for w in &p.relators {
        let prod = eval_word(w, &mats)?;
        let diff = prod.sub(&id);
        equations.push(diff.p11);
        equations.push(diff.p12);
        equations.push(diff.p21);
        equations.push(diff.p22);
    }
    Ok(equations)
}

/// The curve polynomial `Z = (x² − 2)(1 − u) + 1 − u + u²` controlling the
/// two-generator family below, in the trace coordinate `x`.
pub fn curve_z() -> MultiPoly {
    let vars = ["x", "u"];
    let x = MultiPoly::var(&vars, "x").unwrap();
    let u = MultiPoly::var(&vars, "u").unwrap();
    let one = MultiPoly::constant(&vars, 1);
    let two = MultiPoly::constant(&vars, 2);
    x.pow(2)
        .sub(&two)
        .mul(&one.sub(&u))
        .add(&one.sub(&u))
        .add(&u.pow(2))
}

/// `Z` with `x ↦ t + t⁻¹`, as a Laurent polynomial in `(t, u)`.
pub fn curve_z_in_t() -> MultiPoly {
    let vars = ["t", "u"];
    let one = MultiPoly::constant(&vars, 1);
    let t2 = MultiPoly::monomial(&vars, vec![2, 0], 1);
    let tm2 = MultiPoly::monomial(&vars, vec![-2, 0], 1);
    let u = MultiPoly::var(&vars, "u").unwrap();
    // (t + 1/t)² − 2 = t² + t⁻².
    t2.add(&tm2)
        .mul(&one.sub(&u))
        .add(&one.sub(&u))
        .add(&u.pow(2))
}

#[derive(Debug, Clone, Copy)]
pub struct DefectVerdict {
    pub diagonal_zero: bool,
    /// Top-right entry is a unit monomial multiple of the curve polynomial.
    pub top_right_unit_z: bool,
    /// Bottom-left entry is `(u − 2)` times a unit monomial multiple of it.
    pub bottom_left_u2_z: bool,
    pub pass: bool,
}

fn is_unit_monomial(p: &MultiPoly) -> bool {
    if p.term_count() != 1 {
        return false;
    }
    let (_, c) = &p.terms()[0];
    c == &BigInt::from(1) || c == &BigInt::from(-1)
}

/// Commutation defect `ρ(w)ρ(a) − ρ(b)ρ(w)` for the two-generator family
/// `ρ(a) = [[t, 1], [0, t⁻¹]]`, `ρ(b) = [[t, 0], [2−u, t⁻¹]]`,
/// `w = a⁻¹ b a b⁻¹`, computed exactly over `ℤ[t^{±1}, u]`.  The verdict
/// certifies that the defect vanishes exactly on the curve `Z = 0`.
pub fn fig8_defect() -> (PolyMatrix2, DefectVerdict) {
    let vars = ["t", "u"];
    let t = MultiPoly::var(&vars, "t").unwrap();
    let t_inv = MultiPoly::monomial(&vars, vec![-1, 0], 1);
    let u = MultiPoly::var(&vars, "u").unwrap();
    let one = MultiPoly::constant(&vars, 1);
    let zero = MultiPoly::zero(&vars);
    let two = MultiPoly::constant(&vars, 2);

    let a = PolyMatrix2::new_unimodular(t.clone(), one.clone(), zero.clone(), t_inv.clone())
        .expect("det = 1");
    let b = PolyMatrix2::new_unimodular(t, zero, two.sub(&u), t_inv).expect("det = 1");
    let w = eval_word(&[-1, 2, 1, -2], &[a.clone(), b.clone()]).unwrap();
    let defect = w.mul(&a).sub(&b.mul(&w));

    let z = curve_z_in_t();
    let diagonal_zero = defect.p11.is_zero() && defect.p22.is_zero();
    let top_right_unit_z = defect
        .p12
        .divides_exactly(&z)
        .map(|q| is_unit_monomial(&q))
        .unwrap_or(false);
    let u_minus_2 = {
        let vars = ["t", "u"];
        MultiPoly::var(&vars, "u")
            .unwrap()
            .sub(&MultiPoly::constant(&vars, 2))
    };
    let bottom_left_u2_z = defect
        .p21
        .divides_exactly(&z)
        .map(|q| {
            q.divides_exactly(&u_minus_2)
                .map(|q2| is_unit_monomial(&q2))
                .unwrap_or(false)
        })
        .unwrap_or(false);
    let pass = diagonal_zero && top_right_unit_z && bottom_left_u2_z;
    (
        defect,
        DefectVerdict {
            diagonal_zero,
            top_right_unit_z,
            bottom_left_u2_z,
            pass,
        },
    )
}

/// Exact check of the change-of-variable identity
/// `x²(u−1)² − (u³ − 2u + 1) + (u−1)·Z = 0`, which puts the curve `Z = 0`
/// in short Weierstrass form `z² = u³ − 2u + 1` with `z = x(u−1)`.
pub fn elliptic_identity_check() -> bool {
    let vars = ["x", "u"];
    let x = MultiPoly::var(&vars, "x").unwrap();
    let u = MultiPoly::var(&vars, "u").unwrap();
    let one = MultiPoly::constant(&vars, 1);
    let um1 = u.sub(&one);
    let cubic = u
        .pow(3)
        .sub(&u.scale(&BigInt::from(2)))
        .add(&one);
    let lhs = x
        .pow(2)
        .mul(&um1.pow(2))
        .sub(&cubic)
        .add(&um1.mul(&curve_z()));
    lhs.is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct IntMat {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl IntMat {
    const I: IntMat = IntMat {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    fn mul(self, r: IntMat) -> IntMat {
        IntMat {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
    }

    fn adj(self) -> IntMat {
        IntMat {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn tr(self) -> i128 {
        self.a + self.d
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> IntMat {
    let len = rng.gen_range(1..=12);
    let mut m = IntMat::I;
    for _ in 0..len {
        let k = loop {
            let k = rng.gen_range(-3i128..=3);
            if k != 0 {
                break k;
            }
        };
        let e = if rng.gen_bool(0.5) {
            IntMat {
                a: 1,
                b: k,
                c: 0,
                d: 1,
            }
        } else {
            IntMat {
                a: 1,
                b: 0,
                c: k,
                d: 1,
            }
        };
        m = m.mul(e);
    }
    m
}

/// Checks `tr(AB) + tr(AB⁻¹) = tr(A)·tr(B)` on `samples` random pairs of
/// integer determinant-one matrices, and once symbolically on fully generic
/// entries (in the symbolic form the inverse is the adjugate, for which the
/// identity holds with no determinant assumption).
pub fn trace_identity_check(samples: usize) -> bool {
    trace_identity_check_seeded(0x5eed_cafe, samples)
}

/// Same as [`trace_identity_check`] with a caller-chosen seed for the
/// random-pair phase.
pub fn trace_identity_check_seeded(seed: u64, samples: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_unimodular(&mut rng);
        let b = random_unimodular(&mut rng);
        debug_assert_eq!(a.a * a.d - a.b * a.c, 1);
        let lhs = a.mul(b).tr() + a.mul(b.adj()).tr();
        if lhs != a.tr() * b.tr() {
            return false;
        }
    }
    // Symbolic form: tr(A·B) + tr(A·adj B) − tr A · tr B is the zero
    // polynomial in the eight generic entries.
    let names = ["a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"];
    let v = |n: &str| MultiPoly::var(&names, n).unwrap();
    let a = PolyMatrix2::new(v("a1"), v("b1"), v("c1"), v("d1"));
    let b = PolyMatrix2::new(v("a2"), v("b2"), v("c2"), v("d2"));
    let sym = a
        .mul(&b)
        .trace()
        .add(&a.mul(&b.adjugate()).trace())
        .sub(&a.trace().mul(&b.trace()));
    sym.is_zero()
}

/// For the reducible (common-eigenvector) pair
/// `ρ(a) = [[m, s₁], [0, m⁻¹]]`, `ρ(b) = [[m, s₂], [0, m⁻¹]]` the trace of
/// `ρ(a)ρ(b)⁻¹` collapses to the constant 2, while `ρ(a)ρ(b)` keeps the
/// diagonal `(m², m⁻²)`.  Both are verified as exact polynomial statements.
pub fn reducible_trace_check() -> bool {
    let vars = ["m", "s1", "s2"];
    let m = MultiPoly::var(&vars, "m").unwrap();
    let m_inv = MultiPoly::monomial(&vars, vec![-1, 0, 0], 1);
    let s1 = MultiPoly::var(&vars, "s1").unwrap();
    let s2 = MultiPoly::var(&vars, "s2").unwrap();
    let zero = MultiPoly::zero(&vars);
    let two = MultiPoly::constant(&vars, 2);

    let ra = PolyMatrix2::new_unimodular(m.clone(), s1, zero.clone(), m_inv.clone())
        .expect("det = 1");
    let rb = PolyMatrix2::new_unimodular(m.clone(), s2, zero, m_inv).expect("det = 1");

    let ab_inv_trace_is_2 = ra
        .mul(&rb.inverse_unimodular().unwrap())
        .trace()
        .eq(&two);

    let ab = ra.mul(&rb);
    let m2 = MultiPoly::monomial(&vars, vec![2, 0, 0], 1);
    let m_minus2 = MultiPoly::monomial(&vars, vec![-2, 0, 0], 1);
    let diagonal_ok = ab.p11 == m2 && ab.p22 == m_minus2 && ab.p21.is_zero();
    let trace_ok = ab.trace() == m2.add(&m_minus2);

    ab_inv_trace_is_2 && diagonal_ok && trace_ok
}
