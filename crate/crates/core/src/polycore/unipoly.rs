//! Dense univariate polynomials over double-precision complex numbers.

use num_complex::Complex64;

/// Coefficients ascending: `coeffs[k]` multiplies `z^k`.  Exact zeros at the
/// top are trimmed on construction, so `degree` equals the index of the
/// highest stored coefficient.  The zero polynomial keeps a single zero.
#[derive(Debug, Clone, PartialEq)]
pub struct UniComplexPoly {
    pub coeffs: Vec<Complex64>,
}

impl UniComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        UniComplexPoly { coeffs }
    }

    pub fn from_reals(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().expect("coeffs never empty")
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniComplexPoly {
        if self.degree() == 0 {
            return UniComplexPoly::new(vec![Complex64::new(0.0, 0.0)]);
        }
        UniComplexPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Sum of coefficient magnitudes scaled by `max(1, |z|)^k`; a cheap
    /// bound used for relative (backward-error style) residual tests.
    pub fn eval_magnitude_bound(&self, z: Complex64) -> f64 {
        let r = z.norm().max(1.0);
        let mut scale = 1.0;
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc += c.norm() * scale;
            scale *= r;
        }
        acc
    }
}
