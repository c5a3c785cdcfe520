//! Newton polygons of two-variable polynomials and the slopes of their sides.

use super::{MultiPoly, PolyError};
use num_rational::Rational64;
use std::collections::BTreeSet;

/// Convex hull of the support of a two-variable polynomial.
///
/// Vertices are listed counterclockwise, are strictly convex (no three
/// collinear), and start at the lexicographically smallest point.  A
/// polynomial supported on a segment yields the two endpoints; a monomial
/// yields a single vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i32, i32)>,
}

/// Slopes of the sides of a Newton polygon, with the first exponent axis as
/// numerator: a side from `(m0, l0)` to `(m1, l1)` contributes the reduced
/// fraction `(m1 - m0) / (l1 - l0)`.
///
/// Sides parallel to the axes are tallied rather than folded into the slope
/// set: `horizontal_sides` counts sides with no change in the second
/// exponent, `vertical_sides` those with no change in the first.  With this
/// convention the figure-eight A-polynomial yields exactly `{-4, 4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySlopes {
    pub slopes: Vec<Rational64>,
    pub horizontal_sides: usize,
    pub vertical_sides: usize,
}

fn cross(o: (i32, i32), a: (i32, i32), b: (i32, i32)) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Computes the Newton polygon via Andrew's monotone chain, dropping
/// collinear boundary points so the vertex list is strictly convex.
pub fn newton_polygon(p: &MultiPoly) -> Result<NewtonPolygon, PolyError> {
    if p.vars().len() != 2 || p.is_zero() {
        return Err(PolyError::NotBivariate);
    }
    let mut pts: Vec<(i32, i32)> = p.terms().iter().map(|(e, _)| (e[0], e[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(NewtonPolygon { vertices: pts });
    }
    let mut lower: Vec<(i32, i32)> = Vec::new();
    for &q in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i32, i32)> = Vec::new();
    for &q in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    let vertices: Vec<(i32, i32)> = lower.into_iter().chain(upper).collect();
    Ok(NewtonPolygon { vertices })
}

pub fn boundary_slopes(np: &NewtonPolygon) -> BoundarySlopes {
    let v = &np.vertices;
    let mut slopes: BTreeSet<Rational64> = BTreeSet::new();
    let mut horizontal = 0;
    let mut vertical = 0;
    let sides: Vec<((i32, i32), (i32, i32))> = match v.len() {
        0 | 1 => Vec::new(),
        // A degenerate polygon (segment) has a single side, not two.
        2 => vec![(v[0], v[1])],
        n => (0..n).map(|i| (v[i], v[(i + 1) % n])).collect(),
    };
    for (a, b) in sides {
        let dm = (b.0 - a.0) as i64;
        let dl = (b.1 - a.1) as i64;
        if dl == 0 {
            horizontal += 1;
        } else if dm == 0 {
            vertical += 1;
        } else {
            slopes.insert(Rational64::new(dm, dl));
        }
    }
    BoundarySlopes {
        slopes: slopes.into_iter().collect(),
        horizontal_sides: horizontal,
        vertical_sides: vertical,
    }
}
