//! The named verification bundles behind `apml verify`.
//!
//! Each suite appends named checks to a report: `smyth` compares the
//! two-variable measure of `1 + x + y` with its Dirichlet L-value closed
//! form; `fig8` ties the figure-eight knot complement together (complete
//! shapes, volume against the dilogarithm, π·m(H) against the volume, the
//! H/A-polynomial bridge, boundary slopes, and the volume-derivative
//! proportionality); `charvar` runs the exact character-variety identities.

use crate::report::{fmt15, fmt_complex, ReportBuilder};
use crate::CliError;
use apml_core::charvar::{
    elliptic_identity_check, fig8_defect, fig8_presentation, presentation_to_equations,
    reducible_trace_check, trace_identity_check_seeded, GroupPresentation,
};
use apml_core::hyperbolic::{
    builtin_fig8, dvol_check, residuals_mult, solve_shapes, volume, HolonomyPoint,
};
use apml_core::mahler::{mahler_bivariate_sliced, verify_smyth};
use apml_core::numerics::bloch_wigner;
use apml_core::polycore::{
    boundary_slopes, fig8_a_polynomial, fig8_h_polynomial, newton_polygon, MultiPoly,
};
use apml_core::{BigInt, Complex64};
use std::f64::consts::PI;

pub const DEFAULT_SMYTH_TOL: f64 = 1e-6;
pub const DEFAULT_FIG8_TOL: f64 = 1e-5;
/// Allowed relative spread of the volume-derivative ratio across samples.
const DVOL_SPREAD: f64 = 0.02;

pub fn add_smyth(rb: &mut ReportBuilder, tol: f64) -> Result<(), CliError> {
    let check = verify_smyth(tol)?;
    rb.result_num("smyth_measured", check.measured);
    rb.result_num("smyth_expected", check.expected);
    rb.check_num("smyth-identity", check.measured, check.expected, tol);
    Ok(())
}

/// Substitutes `x ↦ M²`, `y ↦ −L` into a polynomial over `[x, y]`.
fn square_and_flip(p: &MultiPoly) -> MultiPoly {
    let terms = p
        .terms()
        .iter()
        .map(|(e, c)| {
            let sign_flip = e[1].rem_euclid(2) == 1;
            let c = if sign_flip { -c.clone() } else { c.clone() };
            (vec![2 * e[0], e[1]], c)
        })
        .collect::<Vec<(Vec<i32>, BigInt)>>();
    MultiPoly::from_terms(&["M", "L"], terms)
}

pub fn add_fig8(rb: &mut ReportBuilder, tol: f64) -> Result<(), CliError> {
    let t = builtin_fig8();

    // Complete structure: shapes, residual, volume.
    let s = solve_shapes(&t, HolonomyPoint::complete(), None)?;
    let worst = residuals_mult(&t, &s, Some(HolonomyPoint::complete()))?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max);
    for (i, z) in s.z.iter().enumerate() {
        rb.result(&format!("shape_z{}", i + 1), fmt_complex(*z));
    }
    rb.check_num("complete-structure-residual", worst, 0.0, 1e-10);
    let regular = Complex64::new(0.5, 3.0_f64.sqrt() / 2.0);
    let shape_dev = s
        .z
        .iter()
        .map(|z| (z - regular).norm())
        .fold(0.0, f64::max);
    rb.check_num("shapes-are-regular-ideal", shape_dev, 0.0, 1e-10);

    let vol = volume(&s);
    rb.result_num("volume", vol);
    let two_d = 2.0 * bloch_wigner(Complex64::from_polar(1.0, PI / 3.0));
    rb.check_num("volume-is-twice-max-dilog", vol, two_d, 1e-10);

    // π · m(H) against the volume.
    let h = fig8_h_polynomial();
    let quad_tol = (tol * 0.05).clamp(1e-9, 1e-6);
    let mh = mahler_bivariate_sliced(&h, quad_tol)?;
    rb.result_num("mahler_h", mh.value);
    rb.result_num("mahler_h_error_estimate", mh.error_estimate);
    rb.check_num("pi-mahler-h-equals-volume", PI * mh.value, vol, tol);

    // Bridge between H(x, y) and the catalogued A-polynomial.
    let a = fig8_a_polynomial();
    let bridged = square_and_flip(&h);
    let neg_a = a.neg();
    rb.result("bridge_sign", "-1");
    rb.check_exact(
        "h-of-m2-minus-l-is-minus-a",
        bridged == neg_a,
        bridged.to_string(),
        neg_a.to_string(),
    );
    rb.check_exact(
        "a-reciprocity",
        a.reciprocity_check(),
        "invariant under (M,L) -> (1/M,1/L)",
        "invariant under (M,L) -> (1/M,1/L)",
    );

    // Boundary slopes of the A-polynomial's Newton polygon.
    let bs = boundary_slopes(&newton_polygon(&a)?);
    let slopes: Vec<String> = bs.slopes.iter().map(|s| s.to_string()).collect();
    rb.check_exact(
        "boundary-slopes",
        slopes == ["-4", "4"] && bs.horizontal_sides == 0 && bs.vertical_sides == 0,
        format!("{{{}}}", slopes.join(", ")),
        "{-4, 4}",
    );

    // Volume derivative along the meridian circle is proportional to ln|y|.
    let mut ratios = Vec::new();
    for (i, t0) in [0.10, 0.15, 0.20].into_iter().enumerate() {
        let d = dvol_check(&t, t0, 1e-4)?;
        rb.result(&format!("dvol_ratio_{i}"), match d.ratio {
            Some(r) => fmt15(r),
            None => "undefined".to_string(),
        });
        if let Some(r) = d.ratio {
            ratios.push(r);
        }
    }
    let spread = if ratios.len() == 3 {
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / ratios[1].abs()
    } else {
        f64::INFINITY
    };
    rb.check_num("dvol-ratio-constancy", spread, 0.0, DVOL_SPREAD);

    Ok(())
}

pub fn add_charvar(rb: &mut ReportBuilder, seed: u64) -> Result<(), CliError> {
    let (_, verdict) = fig8_defect();
    rb.check_exact(
        "defect-diagonal-zero",
        verdict.diagonal_zero,
        "zero polynomial",
        "zero polynomial",
    );
    rb.check_exact(
        "defect-top-right-unit-multiple-of-z",
        verdict.top_right_unit_z,
        "unit * Z",
        "unit * Z",
    );
    rb.check_exact(
        "defect-bottom-left-(u-2)-multiple-of-z",
        verdict.bottom_left_u2_z,
        "(u-2) * Z",
        "(u-2) * Z",
    );
    rb.check_exact(
        "elliptic-identity",
        elliptic_identity_check(),
        "zero polynomial",
        "zero polynomial",
    );
    rb.check_exact(
        "reducible-pair-traces",
        reducible_trace_check(),
        "trace 2; diagonal (m^2, m^-2)",
        "trace 2; diagonal (m^2, m^-2)",
    );
    rb.input("seed", seed.to_string());
    rb.check_exact(
        "trace-identity-100-samples",
        trace_identity_check_seeded(seed, 100),
        "tr(AB) + tr(AB^-1) = tr(A) tr(B)",
        "tr(AB) + tr(AB^-1) = tr(A) tr(B)",
    );

    for (label, pres) in [
        ("torus", GroupPresentation::parse("abAB")?),
        ("fig8", fig8_presentation()),
    ] {
        let k = pres.relators.len();
        let n = pres.n_generators;
        let count = presentation_to_equations(&pres)?.len();
        rb.check_exact(
            &format!("equation-count-{label}"),
            count == 4 * k + n,
            count.to_string(),
            (4 * k + n).to_string(),
        );
    }
    Ok(())
}
