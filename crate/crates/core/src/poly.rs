//! Dense complex polynomials in ascending coefficient order.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::constant(ZERO);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(ZERO);
        Poly::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::constant(ZERO);
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Evaluates the divided difference `(P(z) - P(t)) / (z - t)` without
    /// subtracting, so it stays exact as `z -> t` (where it equals `P'(t)`).
    pub fn divided_difference(&self, z: Complex64, t: Complex64) -> Complex64 {
        // Synthetic division of P by (x - t): quotient b_{k-1} = a_k + t b_k.
        let d = self.coeffs.len();
        if d <= 1 {
            return ZERO;
        }
        let mut b = ZERO;
        let mut acc = ZERO;
        for k in (1..d).rev() {
            b = self.coeffs[k] + t * b;
            // quotient coefficient of z^{k-1} is b; Horner over descending k
            acc = acc * z + b;
        }
        acc
    }

    /// All complex roots, by Durand-Kerner iteration followed by Newton polishing.
    pub fn roots(&self) -> Vec<Complex64> {
        let deg = self.degree();
        if deg == 0 || self.is_zero() {
            return Vec::new();
        }
        let lead = self.coeffs[deg];
        let monic: Vec<Complex64> = self.coeffs.iter().map(|c| c / lead).collect();
        if deg == 1 {
            return vec![-monic[0]];
        }
        let monic = Poly { coeffs: monic };
        let bound = 1.0
            + monic.coeffs[..deg]
                .iter()
                .map(|c| c.norm())
                .fold(0.0_f64, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..deg)
            .map(|k| seed.powu(k as u32) * (0.5 * bound))
            .collect();
        for _ in 0..2000 {
            let mut shift = 0.0_f64;
            for i in 0..deg {
                let zi = roots[i];
                let mut denom = Complex64::new(1.0, 0.0);
                for (j, zj) in roots.iter().enumerate() {
                    if i != j {
                        denom *= zi - zj;
                    }
                }
                if denom == ZERO {
                    denom = Complex64::new(1e-300, 0.0);
                }
                let step = monic.eval(zi) / denom;
                roots[i] = zi - step;
                shift = shift.max(step.norm());
            }
            if shift < 1e-15 * bound {
                break;
            }
        }
        let dp = self.derivative();
        for r in roots.iter_mut() {
            for _ in 0..3 {
                let d = dp.eval(*r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = self.eval(*r) / d;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                *r -= step;
            }
        }
        roots
    }
}
