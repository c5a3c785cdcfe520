//! Property tests for the exact polynomial layer: canonical forms, ring
//! axioms, text round-trips, exact division, Newton polygons against a
//! brute-force hull, and resultants against independent oracles.

use apml_core::polycore::{
    boundary_slopes, newton_polygon, parse_poly, resultant, MultiPoly, UniComplexPoly,
};
use apml_core::{BigInt, Complex64};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

const XY: [&str; 2] = ["x", "y"];

fn poly_from_triples(triples: &[(i32, i32, i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        &XY,
        triples
            .iter()
            .filter(|&&(_, _, c)| c != 0)
            .map(|&(ex, ey, c)| (vec![ex, ey], BigInt::from(c))),
    )
}

/// Random small Laurent polynomial in x and y (possibly zero).
fn small_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((-3..=3i32, -3..=3i32, -9..=9i64), 0..6)
        .prop_map(|ts| poly_from_triples(&ts))
}

/// Random small nonzero Laurent polynomial.
fn small_nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    /// Rebuilding a polynomial from its own term list reproduces it exactly:
    /// the canonical form is a fixed point.
    #[test]
    fn canonical_form_is_idempotent(p in small_poly()) {
        let rebuilt = MultiPoly::from_terms(
            &XY,
            p.terms().iter().map(|(e, c)| (e.clone(), c.clone())),
        );
        prop_assert_eq!(&rebuilt, &p);
        // No stored zero coefficients, and terms strictly ordered.
        prop_assert!(p.terms().iter().all(|(_, c)| !c.eq(&BigInt::from(0))));
        for w in p.terms().windows(2) {
            prop_assert!(w[0].0 != w[1].0);
        }
    }

    #[test]
    fn addition_commutes_and_associates(
        a in small_poly(), b in small_poly(), c in small_poly()
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn multiplication_commutes_and_associates(
        a in small_poly(), b in small_poly(), c in small_poly()
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in small_poly(), b in small_poly(), c in small_poly()
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    /// Printing and re-parsing over the same variable universe is lossless.
    #[test]
    fn display_then_parse_round_trips(p in small_poly()) {
        let text = p.to_string();
        let back = parse_poly(&text, &XY).unwrap();
        prop_assert_eq!(back, p);
    }

    /// Dividing a product by one factor recovers the other exactly.
    #[test]
    fn exact_division_inverts_multiplication(
        p in small_poly(), d in small_nonzero_poly()
    ) {
        let prod = p.mul(&d);
        prop_assert_eq!(prod.divides_exactly(&d), Some(p));
    }

    /// A polynomial that is not an exact multiple is rejected: adding a
    /// lone monomial outside the product's support breaks divisibility
    /// unless the divisor is itself a monomial times a unit.
    #[test]
    fn non_multiples_are_rejected(
        p in small_nonzero_poly(), d in small_nonzero_poly()
    ) {
        prop_assume!(d.term_count() > 1);
        // 1 + max total degree of the product keeps the probe monomial
        // outside the support of p * d.
        let prod = p.mul(&d);
        let top = prod
            .terms()
            .iter()
            .map(|(e, _)| e[0].abs() + e[1].abs())
            .max()
            .unwrap();
        let probe = MultiPoly::monomial(&XY, vec![top + 1, top + 1], 1);
        prop_assert_eq!(prod.add(&probe).divides_exactly(&d), None);
    }
}

// ---------------------------------------------------------------------------
// Newton polygon against a brute-force convex hull.
// ---------------------------------------------------------------------------

fn cross_i64(o: (i32, i32), a: (i32, i32), b: (i32, i32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

fn on_segment(a: (i32, i32), b: (i32, i32), q: (i32, i32)) -> bool {
    cross_i64(a, b, q) == 0
        && q.0 >= a.0.min(b.0)
        && q.0 <= a.0.max(b.0)
        && q.1 >= a.1.min(b.1)
        && q.1 <= a.1.max(b.1)
}

fn in_triangle(a: (i32, i32), b: (i32, i32), c: (i32, i32), q: (i32, i32)) -> bool {
    if cross_i64(a, b, c) == 0 {
        return on_segment(a, b, q) || on_segment(b, c, q) || on_segment(a, c, q);
    }
    let d1 = cross_i64(q, a, b);
    let d2 = cross_i64(q, b, c);
    let d3 = cross_i64(q, c, a);
    let has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    let has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(has_neg && has_pos)
}

/// `q` lies in the convex hull of `others`, by exhaustive triangle and
/// segment membership (O(n^3), fine for tiny supports).
fn in_hull_of(others: &[(i32, i32)], q: (i32, i32)) -> bool {
    match others.len() {
        0 => false,
        1 => others[0] == q,
        _ => {
            for i in 0..others.len() {
                for j in (i + 1)..others.len() {
                    if on_segment(others[i], others[j], q) {
                        return true;
                    }
                    for k in (j + 1)..others.len() {
                        if in_triangle(others[i], others[j], others[k], q) {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
}

fn brute_hull_vertices(pts: &[(i32, i32)]) -> BTreeSet<(i32, i32)> {
    pts.iter()
        .copied()
        .filter(|&q| {
            let others: Vec<(i32, i32)> = pts.iter().copied().filter(|&p| p != q).collect();
            !in_hull_of(&others, q)
        })
        .collect()
}

proptest! {
    /// The monotone-chain polygon returns exactly the brute-force hull
    /// vertices, counterclockwise, strictly convex, starting at the
    /// lexicographically smallest vertex.
    #[test]
    fn newton_polygon_matches_brute_force_hull(
        support in proptest::collection::btree_set((-5..=5i32, -5..=5i32), 1..9)
    ) {
        let pts: Vec<(i32, i32)> = support.iter().copied().collect();
        let poly = MultiPoly::from_terms(
            &XY,
            pts.iter().map(|&(a, b)| (vec![a, b], BigInt::from(1))),
        );
        let np = newton_polygon(&poly).unwrap();
        let got: BTreeSet<(i32, i32)> = np.vertices.iter().copied().collect();
        prop_assert_eq!(&got, &brute_hull_vertices(&pts));
        prop_assert_eq!(got.len(), np.vertices.len(), "no repeated vertices");
        prop_assert_eq!(np.vertices[0], pts[0], "starts at lexicographic minimum");
        let v = &np.vertices;
        if v.len() >= 3 {
            for i in 0..v.len() {
                let turn = cross_i64(v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]);
                prop_assert!(turn > 0, "counterclockwise and strictly convex");
            }
        }
        // Slope tally covers every side exactly once.
        let bs = boundary_slopes(&np);
        let sides = match v.len() { 1 => 0, 2 => 1, n => n };
        prop_assert!(bs.slopes.len() + bs.horizontal_sides + bs.vertical_sides <= sides);
    }
}

// ---------------------------------------------------------------------------
// Resultant oracles.
// ---------------------------------------------------------------------------

fn rng_poly(
    rng: &mut ChaCha8Rng,
    x_range: std::ops::RangeInclusive<i32>,
    y_range: std::ops::RangeInclusive<i32>,
    terms: usize,
) -> MultiPoly {
    let triples: Vec<(i32, i32, i64)> = (0..terms)
        .map(|_| {
            (
                rng.gen_range(x_range.clone()),
                rng.gen_range(y_range.clone()),
                rng.gen_range(-5..=5i64),
            )
        })
        .collect();
    poly_from_triples(&triples)
}

fn constant_at(p: &MultiPoly, y0: i64) -> BigInt {
    let y0 = MultiPoly::constant(&XY, y0);
    let c = p.substitute_var("y", &y0).unwrap();
    assert!(c.term_count() <= 1, "substitution must leave a constant");
    c.terms()
        .first()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| BigInt::from(0))
}

/// When both inputs share a factor of positive degree in the eliminated
/// variable, the resultant is identically zero.
#[test]
fn resultant_detects_designed_common_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for case in 0..20 {
        let f = rng_poly(&mut rng, 1..=2, 0..=2, 3).add(&MultiPoly::constant(&XY, 1));
        let a = rng_poly(&mut rng, 0..=2, 0..=2, 3).add(&MultiPoly::constant(&XY, 1));
        let b = rng_poly(&mut rng, 0..=2, 0..=2, 3).add(&MultiPoly::constant(&XY, 1));
        let r = resultant(&f.mul(&a), &f.mul(&b), "x").unwrap();
        assert!(r.is_zero(), "case {case}: shared factor must kill the resultant");
    }
}

/// Polynomials built to share a root at a chosen point (x0, y0), with
/// constant leading coefficients in x so specialization commutes with the
/// resultant: the resultant must vanish at y = y0 exactly.
#[test]
fn resultant_vanishes_at_designed_intersection() {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut nonzero_resultants = 0;
    for case in 0..50 {
        let x0 = rng.gen_range(-3..=3i64);
        let y0 = rng.gen_range(-3..=3i64);
        let build = |rng: &mut ChaCha8Rng| {
            let d = rng.gen_range(1..=3i32);
            let c = rng.gen_range(1..=3i64);
            // c * (x^d - x0^d) + (y - y0) * g, zero at (x0, y0) by design.
            let xd = MultiPoly::monomial(&XY, vec![d, 0], c);
            let shift = MultiPoly::constant(&XY, c * x0.pow(d as u32));
            let y_minus = parse_poly(&format!("y - {y0}"), &XY)
                .unwrap_or_else(|_| parse_poly(&format!("y + {}", -y0), &XY).unwrap());
            let g = rng_poly(rng, 0..=(d - 1).max(0), 0..=2, 3);
            xd.sub(&shift).add(&y_minus.mul(&g))
        };
        let p = build(&mut rng);
        let q = build(&mut rng);
        let r = resultant(&p, &q, "x").unwrap();
        if !r.is_zero() {
            nonzero_resultants += 1;
        }
        let at_y0 = constant_at(&r, y0);
        assert!(
            at_y0 == BigInt::from(0),
            "case {case}: resultant({p}, {q}) is {at_y0} at y = {y0}"
        );
    }
    assert!(
        nonzero_resultants >= 40,
        "construction should usually give a nonzero resultant, got {nonzero_resultants}"
    );
}

/// The exact resultant specialized at integer points agrees with the
/// numeric root-product formula lc(p)^deg(q) * prod q(root of p).
#[test]
fn resultant_matches_numeric_root_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    let mut checked = 0;
    for _ in 0..25 {
        let build = |rng: &mut ChaCha8Rng| {
            let d = rng.gen_range(1..=3i32);
            let lead = MultiPoly::monomial(&XY, vec![d, 0], rng.gen_range(1..=4i64));
            lead.add(&rng_poly(rng, 0..=(d - 1).max(0), 0..=2, 4))
        };
        let p = build(&mut rng);
        let q = build(&mut rng);
        let y0 = rng.gen_range(-3..=3i64);
        let r = resultant(&p, &q, "x").unwrap();
        let exact = constant_at(&r, y0).to_f64().unwrap();

        let specialize = |m: &MultiPoly| -> UniComplexPoly {
            let d = m.degree_in("x").unwrap().unwrap();
            let coeffs: Vec<f64> = (0..=d)
                .map(|k| {
                    constant_at(&m.coeff_of("x", k).unwrap(), y0)
                        .to_f64()
                        .unwrap()
                })
                .collect();
            UniComplexPoly::from_reals(&coeffs)
        };
        let pu = specialize(&p);
        let qu = specialize(&q);
        let root_set = match apml_core::numerics::roots_with(&pu, 1e-12, 500) {
            Ok(rs) => rs,
            Err(_) => continue, // clustered roots; skip rather than weaken the bound
        };
        let mut numeric = Complex64::new(1.0, 0.0);
        for _ in 0..qu.degree() {
            numeric *= pu.leading();
        }
        for root in &root_set.roots {
            numeric *= qu.eval(*root);
        }
        let scale = exact.abs().max(numeric.norm()).max(1.0);
        assert!(
            (exact - numeric.re).abs() <= 1e-6 * scale && numeric.im.abs() <= 1e-6 * scale,
            "exact {exact} vs numeric {numeric} for p = {p}, q = {q}, y0 = {y0}"
        );
        checked += 1;
    }
    assert!(checked >= 20, "too many skipped cases: only {checked} checked");
}
