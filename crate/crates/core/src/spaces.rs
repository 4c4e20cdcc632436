//! Analytic functions on `G` and their Smirnov `E^p` / Hardy means.
//!
//! Functions are stored symbolically and evaluated at a point of the closed
//! domain given by its disc parameter `z` together with `ζ = φ(z)`, so that
//! pulled-back series never need an inverse conformal map.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ConformalDomain;
use crate::numerics::{adaptive_integral, periodic_max, PeriodicGrid};
use crate::poly::Poly;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One term `coeff / (ζ − location)^order`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleTerm {
    pub location: Complex64,
    pub order: u32,
    pub coeff: Complex64,
}

/// `poly(ζ) + Σ coeff_j / (ζ − a_j)^{m_j}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Rational {
    pub poly: Poly,
    pub poles: Vec<PoleTerm>,
}

impl Rational {
    pub fn new(poly: Poly, poles: Vec<PoleTerm>) -> Self {
        Self { poly, poles }
    }

    /// `coeff / (ζ − location)^order`, no polynomial part.
    pub fn pole(location: Complex64, order: u32, coeff: Complex64) -> Self {
        Self { poly: Poly::constant(ZERO), poles: vec![PoleTerm { location, order, coeff }] }
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        self.poly.eval(zeta)
            + self
                .poles
                .iter()
                .map(|t| t.coeff / (zeta - t.location).powu(t.order))
                .sum::<Complex64>()
    }

    pub fn derivative(&self) -> Rational {
        Rational {
            poly: self.poly.derivative(),
            poles: self
                .poles
                .iter()
                .map(|t| PoleTerm { location: t.location, order: t.order + 1, coeff: -t.coeff * t.order as f64 })
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Rational {
        Rational {
            poly: self.poly.scale(s),
            poles: self.poles.iter().map(|t| PoleTerm { coeff: t.coeff * s, ..t.clone() }).collect(),
        }
    }

    /// Sum of two rationals (pole terms are concatenated).
    pub fn add(&self, other: &Rational) -> Rational {
        let mut poles = self.poles.clone();
        poles.extend(other.poles.iter().cloned());
        Rational { poly: self.poly.add(&other.poly), poles }
    }

    /// `(R(ζ) − R(η)) / (ζ − η)`, evaluated without cancellation.
    fn divided_difference(&self, zeta: Complex64, eta: Complex64) -> Complex64 {
        let mut acc = self.poly.divided_difference(zeta, eta);
        for t in &self.poles {
            let u = zeta - t.location;
            let v = eta - t.location;
            let m = t.order as i32;
            // (u^{-m} − v^{-m}) / (u − v) = −Σ_{j<m} u^{-(m−j)} v^{-(j+1)}
            let s: Complex64 = (0..m).map(|j| u.powi(-(m - j)) * v.powi(-(j + 1))).sum();
            acc -= t.coeff * s;
        }
        acc
    }
}

/// An analytic function on `G` (or, for test functions, on `G⁻`).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalyticFunction {
    /// `f(φ(z)) = Σ a_k z^k`.
    Pullback { coeffs: Poly },
    /// `f(φ(z)) = num(z) / den(z)` with `den` zero-free on the closed disc.
    /// Arises as the ζ-derivative of a pullback series on a non-trivial domain.
    PullbackRatio { num: Poly, den: Poly },
    /// A rational function of `ζ`.
    Rational(Rational),
    /// `F_η(ζ) = (f(ζ) − f(η)) / (ζ − η)` with `η = φ(e^{i eta_theta})`.
    DiffQuotient { base: Box<AnalyticFunction>, eta_theta: f64 },
}

impl AnalyticFunction {
    pub fn constant(c: Complex64) -> Self {
        Self::Pullback { coeffs: Poly::constant(c) }
    }

    /// `ζ^k` as a polynomial in `ζ`.
    pub fn zeta_power(k: usize) -> Self {
        Self::Rational(Rational::new(Poly::monomial(k), Vec::new()))
    }

    pub fn pullback(coeffs: Vec<Complex64>) -> Self {
        Self::Pullback { coeffs: Poly::new(coeffs) }
    }

    /// The difference quotient `F_η` of `base` at the boundary point `θ_η`.
    pub fn diff_quotient(base: &AnalyticFunction, eta_theta: f64) -> Result<Self> {
        if matches!(base, Self::DiffQuotient { .. }) {
            return Err(Error::InvalidFunction("difference quotient of a difference quotient".into()));
        }
        Ok(Self::DiffQuotient { base: Box::new(base.clone()), eta_theta: eta_theta.rem_euclid(TAU) })
    }

    /// Value at the point with disc parameter `z` and `zeta = φ(z)`.
    pub fn eval(&self, domain: &ConformalDomain, z: Complex64, zeta: Complex64) -> Complex64 {
        match self {
            Self::Pullback { coeffs } => coeffs.eval(z),
            Self::PullbackRatio { num, den } => num.eval(z) / den.eval(z),
            Self::Rational(r) => r.eval(zeta),
            Self::DiffQuotient { base, eta_theta } => {
                let t = Complex64::from_polar(1.0, *eta_theta);
                diff_quotient_value(base, domain, z, zeta, t)
            }
        }
    }

    /// Value at `φ(r e^{iθ})`.
    pub fn eval_polar(&self, domain: &ConformalDomain, r: f64, theta: f64) -> Complex64 {
        let z = Complex64::from_polar(r, theta);
        self.eval(domain, z, domain.phi(z))
    }

    /// The ζ-derivative, computed symbolically.
    pub fn derivative(&self, domain: &ConformalDomain) -> Result<AnalyticFunction> {
        let dphi = domain.dphi_poly();
        Ok(match self {
            Self::Pullback { coeffs } => {
                let d = coeffs.derivative();
                if dphi.degree() == 0 {
                    Self::Pullback { coeffs: d.scale(dphi.coeffs()[0].inv()) }
                } else {
                    Self::PullbackRatio { num: d, den: dphi.clone() }
                }
            }
            Self::PullbackRatio { num, den } => Self::PullbackRatio {
                num: num.derivative().mul(den).add(&num.mul(&den.derivative()).scale(Complex64::new(-1.0, 0.0))),
                den: den.mul(den).mul(dphi),
            },
            Self::Rational(r) => Self::Rational(r.derivative()),
            Self::DiffQuotient { .. } => {
                return Err(Error::InvalidFunction("derivative of a difference quotient".into()))
            }
        })
    }

    pub fn scaled(&self, s: Complex64) -> AnalyticFunction {
        match self {
            Self::Pullback { coeffs } => Self::Pullback { coeffs: coeffs.scale(s) },
            Self::PullbackRatio { num, den } => Self::PullbackRatio { num: num.scale(s), den: den.clone() },
            Self::Rational(r) => Self::Rational(r.scale(s)),
            Self::DiffQuotient { base, eta_theta } => {
                Self::DiffQuotient { base: Box::new(base.scaled(s)), eta_theta: *eta_theta }
            }
        }
    }

    /// `f + c`.
    pub fn shifted(&self, c: Complex64) -> AnalyticFunction {
        match self {
            Self::Pullback { coeffs } => Self::Pullback { coeffs: coeffs.add(&Poly::constant(c)) },
            Self::PullbackRatio { num, den } => Self::PullbackRatio { num: num.add(&den.scale(c)), den: den.clone() },
            Self::Rational(r) => Self::Rational(Rational { poly: r.poly.add(&Poly::constant(c)), poles: r.poles.clone() }),
            Self::DiffQuotient { base, eta_theta } => {
                Self::DiffQuotient { base: Box::new(base.shifted(c)), eta_theta: *eta_theta }
            }
        }
    }

    /// Checks that the function is analytic on a neighbourhood of the closed
    /// domain: rational poles lie outside `ℓ` and off it by `margin`,
    /// pulled-back denominators are zero-free on the closed disc.
    pub fn validate_interior(&self, domain: &ConformalDomain, margin: f64) -> Result<()> {
        match self {
            Self::Pullback { .. } => Ok(()),
            Self::PullbackRatio { den, .. } => {
                if let Some(z) = den.roots().into_iter().find(|z| z.norm() <= 1.0 + 1e-12) {
                    return Err(Error::InvalidFunction(format!("denominator vanishes at z = {z} in the closed disc")));
                }
                if den.is_zero() {
                    return Err(Error::InvalidFunction("zero denominator".into()));
                }
                Ok(())
            }
            Self::Rational(r) => {
                let n = domain.n_check().max(256);
                for t in &r.poles {
                    if domain.contains(t.location) || domain.boundary_distance(t.location, n) <= margin {
                        return Err(Error::InvalidFunction(format!(
                            "pole {} is not outside the closed domain",
                            t.location
                        )));
                    }
                }
                Ok(())
            }
            Self::DiffQuotient { base, .. } => base.validate_interior(domain, margin),
        }
    }

    /// Checks the exterior test-function shape: rational, no polynomial part
    /// (so `h(∞) = 0`), every pole strictly inside `ℓ`.
    pub fn validate_exterior(&self, domain: &ConformalDomain) -> Result<()> {
        let Self::Rational(r) = self else {
            return Err(Error::InvalidFunction("exterior test functions must be rational".into()));
        };
        if !r.poly.is_zero() {
            return Err(Error::InvalidFunction("exterior test function has a polynomial part".into()));
        }
        for t in &r.poles {
            if !domain.contains(t.location) {
                return Err(Error::InvalidFunction(format!("pole {} is not inside the domain", t.location)));
            }
        }
        Ok(())
    }
}

fn diff_quotient_value(
    base: &AnalyticFunction,
    domain: &ConformalDomain,
    z: Complex64,
    zeta: Complex64,
    t: Complex64,
) -> Complex64 {
    let phi = domain.phi_poly();
    match base {
        AnalyticFunction::Pullback { coeffs } => coeffs.divided_difference(z, t) / phi.divided_difference(z, t),
        AnalyticFunction::PullbackRatio { num, den } => {
            let (nt, dt) = (num.eval(t), den.eval(t));
            let top = dt * num.divided_difference(z, t) - nt * den.divided_difference(z, t);
            top / (den.eval(z) * dt) / phi.divided_difference(z, t)
        }
        AnalyticFunction::Rational(r) => r.divided_difference(zeta, phi.eval(t)),
        AnalyticFunction::DiffQuotient { .. } => Complex64::new(f64::NAN, f64::NAN),
    }
}

/// Whether a mean carries the `1/2π` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `(1/2π) ∫_{ℓ_r} |f|^p |dζ|`.
    Normalized,
    /// `∫_{ℓ_r} |f|^p |dζ|`.
    Unnormalized,
}

impl Normalization {
    fn factor(self) -> f64 {
        match self {
            Self::Normalized => 1.0 / TAU,
            Self::Unnormalized => 1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub p: f64,
    pub r_used: Vec<f64>,
    /// `p`-th power means at each radius.
    pub means: Vec<f64>,
    pub est_error: f64,
    pub normalized: bool,
    /// Means were nondecreasing along the schedule (up to tolerance).
    pub monotone: bool,
}

/// `(1/2π) ∫_{ℓ_r} |f(ζ)|^p |dζ|` on an `n`-node grid.
pub fn level_mean(domain: &ConformalDomain, f: &AnalyticFunction, p: f64, r: f64, n: usize) -> Result<f64> {
    check_p(p)?;
    let curve = domain.level_curve(r)?;
    let grid = PeriodicGrid::new(n, 0.0)?;
    let mut sum = 0.0;
    for theta in grid.nodes() {
        let z = curve.z(theta);
        let (zeta, dzeta) = curve.point(theta);
        let v = f.eval(domain, z, zeta).norm().powf(p) * dzeta.norm();
        if !v.is_finite() {
            return Err(Error::NonFinite { theta });
        }
        sum += v;
    }
    Ok(sum / n as f64)
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

fn adaptive_mean(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    p: f64,
    r: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let curve = domain.level_curve(r)?;
    let q = adaptive_integral(
        |theta| {
            let (zeta, dzeta) = curve.point(theta);
            Complex64::new(f.eval(domain, curve.z(theta), zeta).norm().powf(p) * dzeta.norm(), 0.0)
        },
        64,
        tol,
        1 << 17,
    )?;
    Ok((q.value.re, q.est_error))
}

/// `sup_r (mean_r)^{1/p}` over an increasing radius schedule.
pub fn ep_norm(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    p: f64,
    r_schedule: &[f64],
    normalization: Normalization,
    tol: f64,
) -> Result<NormReport> {
    check_p(p)?;
    if r_schedule.is_empty() || r_schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("radius schedule must be nonempty and increasing".into()));
    }
    let mut means = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let (m, _) = adaptive_mean(domain, f, p, r, tol)?;
        means.push(m * normalization.factor());
    }
    let monotone = means.windows(2).all(|w| w[1] >= w[0] - tol.max(1e-12 * w[0].abs()));
    let value = means.iter().copied().fold(0.0, f64::max).powf(1.0 / p);
    let est_error = match means.len() {
        1 => 0.0,
        k => (means[k - 1].powf(1.0 / p) - means[k - 2].powf(1.0 / p)).abs(),
    };
    Ok(NormReport {
        value,
        p,
        r_used: r_schedule.to_vec(),
        means,
        est_error,
        normalized: normalization == Normalization::Normalized,
        monotone,
    })
}

/// `max_ℓ |f|`: grid scan on `n` boundary nodes refined around the peaks.
pub fn einf_norm(domain: &ConformalDomain, f: &AnalyticFunction, n: usize) -> f64 {
    periodic_max(|theta| f.eval_polar(domain, 1.0, theta).norm(), n, 3).1
}

/// Level mean on `ℓ_r` computed twice: directly with the curve's `|dζ|` on an
/// `n` grid, and through the disc-side modulus `|f(φ(z))|^p |φ'(z)| r` on a
/// `2n` grid. The two agree to quadrature error.
pub fn pullback_consistency(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    p: f64,
    r: f64,
    n: usize,
) -> Result<(f64, f64)> {
    let direct = level_mean(domain, f, p, r, n)?;
    let grid = PeriodicGrid::new(2 * n, 0.0)?;
    let mut sum = 0.0;
    for theta in grid.nodes() {
        let z = Complex64::from_polar(r, theta);
        let pulled = f.eval(domain, z, domain.phi(z));
        // |F(z) φ'(z)^{1/p}|^p without choosing a branch of the root
        let v = pulled.norm().powf(p) * domain.dphi(z).norm() * r;
        if !v.is_finite() {
            return Err(Error::NonFinite { theta });
        }
        sum += v;
    }
    Ok((direct, sum / (2 * n) as f64))
}

/// `∫_{ℓ_r} log⁺|f| |dζ|` (no `1/2π`).
pub fn logplus_mean(domain: &ConformalDomain, f: &AnalyticFunction, r: f64, n: usize) -> Result<f64> {
    let curve = domain.level_curve(r)?;
    let grid = PeriodicGrid::new(n, 0.0)?;
    let sum: f64 = grid
        .nodes()
        .map(|theta| {
            let (zeta, dzeta) = curve.point(theta);
            f.eval(domain, curve.z(theta), zeta).norm().ln().max(0.0) * dzeta.norm()
        })
        .sum();
    Ok(sum * TAU / n as f64)
}

/// `log⁺` means along a radius schedule, as a diagnostic for Nevanlinna-type
/// growth. No class membership is inferred from it.
pub fn logplus_trend(domain: &ConformalDomain, f: &AnalyticFunction, r_schedule: &[f64], n: usize) -> Result<Vec<(f64, f64)>> {
    r_schedule.iter().map(|&r| Ok((r, logplus_mean(domain, f, r, n)?))).collect()
}
