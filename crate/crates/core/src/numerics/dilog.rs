//! The complex dilogarithm and the Bloch–Wigner function.
//!
//! `li2` uses the principal branch (cut along [1, ∞)).  Arguments are first
//! reduced with the inversion and reflection functional equations into
//! `|z| ≤ 1, Re z ≤ 1/2`; inside the half-disk of radius 1/2 the Maclaurin
//! series applies directly.  The remaining crescent touches the unit circle
//! at exp(±iπ/3), where no Möbius rearrangement of {z, 1-z, 1/z, ...} leaves
//! the unit circle, so the series in u = -ln(1-z) (Bernoulli coefficients,
//! convergent for |u| < 2π) covers it instead; in the reduced region
//! |u| ≤ 1.72, far inside the disk of convergence.

use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;
const PI2_6: f64 = PI * PI / 6.0;

/// Coefficients `B_k / (k+1)!` of `Li2(z) = Σ c_k u^{k+1}`, `u = -ln(1-z)`.
/// Odd Bernoulli numbers beyond B_1 vanish, so after the first two entries
/// only even `k` appear (the table stores those, starting at k = 2).
const LN_SERIES: [f64; 20] = [
    0.027777777777777776,      // k = 2
    -2.7777777777777778e-4,    // k = 4
    4.724111866969009826e-6,   // k = 6
    -9.185773074661963551e-8,  // k = 8
    1.897886998897099907e-9,   // k = 10
    -4.064761645144225527e-11, // k = 12
    8.921691020456452555e-13,  // k = 14
    -1.993929586072107569e-14, // k = 16
    4.518980029619918192e-16,  // k = 18
    -1.035651761218124701e-17, // k = 20
    2.395218621026186746e-19,  // k = 22
    -5.581785874325009336e-21, // k = 24
    1.309150755418321286e-22,  // k = 26
    -3.087419802426740293e-24, // k = 28
    7.31597565270220342e-26,   // k = 30
    -1.740845657234000741e-27, // k = 32
    4.15763564461389972e-29,   // k = 34
    -9.962148488284622103e-31, // k = 36
    2.394034424896165301e-32,  // k = 38
    -5.768347355367390084e-34, // k = 40
];

fn li2_maclaurin(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = z;
    for n in 1..200 {
        let term = zk / ((n * n) as f64);
        sum += term;
        if term.norm_sqr() < 1e-40 * sum.norm_sqr().max(1e-60) {
            break;
        }
        zk *= z;
    }
    sum
}

fn li2_log_series(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    // Li2 = u + c_1 u^2 + Σ_{even k ≥ 2} c_k u^{k+1}
    let mut sum = u - 0.25 * u2;
    let mut upow = u * u2; // u^{k+1} starting at k = 2
    for c in LN_SERIES {
        sum += c * upow;
        upow *= u2;
    }
    sum
}

/// Principal-branch dilogarithm `Li2(z) = Σ z^n / n²` continued to ℂ.
pub fn li2(z: Complex64) -> Complex64 {
    if z.norm_sqr() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Complex64::new(PI2_6, 0.0);
    }
    let r2 = z.norm_sqr();
    if r2 > 1.0 {
        // Li2(z) = -Li2(1/z) - π²/6 - ln²(-z)/2
        let ln_neg = (-z).ln();
        return -li2(z.inv()) - PI2_6 - 0.5 * ln_neg * ln_neg;
    }
    if z.re > 0.5 {
        // Li2(z) = π²/6 - ln(z)·ln(1-z) - Li2(1-z)
        let w = Complex64::new(1.0, 0.0) - z;
        return Complex64::new(PI2_6, 0.0) - z.ln() * w.ln() - li2(w);
    }
    if r2 <= 0.25 {
        li2_maclaurin(z)
    } else {
        li2_log_series(z)
    }
}

/// Bloch–Wigner function `D(z) = Im Li2(z) + arg(1 - z) · ln|z|`.
///
/// Single-valued and real-analytic off {0, 1}, continuous everywhere,
/// vanishing on the real line, positive on the upper half plane.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    li2(z).im + (Complex64::new(1.0, 0.0) - z).arg() * z.norm().ln()
}
