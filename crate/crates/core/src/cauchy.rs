//! Cauchy–Stieltjes transforms of boundary measures and the `K(G)` duality.
//!
//! A measure `μ` on `ℓ` is a finite set of atoms plus a smooth density in the
//! boundary parameter. Its transform `K_μ(z) = ∫_ℓ dμ(ζ)/(ζ − z)` is analytic
//! in `G`. The `K(G)` norm of `K_μ` is bracketed between the best pairing
//!
//! ```text
//! P_r(h) = (1/2πi) ∮_{ℓ_r} h(ζ) K_μ(ζ) dζ
//! ```
//!
//! over a family of exterior test functions `h` (poles in `G`, `h(∞) = 0`,
//! `max_ℓ |h| = 1`) and the total variation `‖μ‖`. For such `h` with poles
//! inside `ℓ_r`, `P_r(h) = ∫_ℓ h dμ` exactly, independent of `r`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConformalDomain;
use crate::numerics::{adaptive_integral, periodic_max};
use crate::spaces::{AnalyticFunction, Rational};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// How a density is integrated against the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityFlavor {
    /// `dμ = d |dζ|`.
    Arclength,
    /// `dμ = d dζ`.
    ComplexLine,
}

impl DensityFlavor {
    fn name(self) -> &'static str {
        match self {
            Self::Arclength => "arclength",
            Self::ComplexLine => "complex-line",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Atom {
    pub theta: f64,
    pub weight: Complex64,
    /// Boundary point `φ(e^{iθ})`.
    pub zeta: Complex64,
}

/// `coeff · function` integrated with the given flavor.
#[derive(Clone, Debug, Serialize)]
pub struct DensityTerm {
    pub flavor: DensityFlavor,
    pub coeff: Complex64,
    pub function: AnalyticFunction,
}

/// A finite complex Borel measure on `ℓ`: atoms plus a density.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryMeasure {
    atoms: Vec<Atom>,
    densities: Vec<DensityTerm>,
    total_variation: f64,
}

impl BoundaryMeasure {
    /// `atoms` are `(θ, weight)` pairs; θ is reduced to `[0, 2π)`.
    pub fn new(domain: &ConformalDomain, atoms: Vec<(f64, Complex64)>, densities: Vec<DensityTerm>) -> Result<Self> {
        for d in &densities {
            if matches!(d.function, AnalyticFunction::DiffQuotient { .. }) {
                continue;
            }
            // the density only needs to be finite on ℓ
            let bad = (0..256).map(|j| TAU * j as f64 / 256.0).find(|&t| {
                let v = d.function.eval_polar(domain, 1.0, t);
                !(v.re.is_finite() && v.im.is_finite())
            });
            if let Some(theta) = bad {
                return Err(Error::NonFinite { theta });
            }
        }
        let atoms: Vec<Atom> = atoms
            .into_iter()
            .map(|(theta, weight)| {
                let theta = theta.rem_euclid(TAU);
                Atom { theta, weight, zeta: domain.boundary_point(1.0, theta).0 }
            })
            .collect();
        let mut m = Self { atoms, densities, total_variation: 0.0 };
        m.total_variation = m.compute_variation(domain)?;
        Ok(m)
    }

    pub fn zero() -> Self {
        Self { atoms: Vec::new(), densities: Vec::new(), total_variation: 0.0 }
    }

    /// `w δ_ζ` at `ζ = φ(e^{iθ})`.
    pub fn delta(domain: &ConformalDomain, theta: f64, weight: Complex64) -> Result<Self> {
        Self::new(domain, vec![(theta, weight)], Vec::new())
    }

    /// `dμ = f(ζ) dζ`.
    pub fn complex_line(domain: &ConformalDomain, f: AnalyticFunction) -> Result<Self> {
        Self::new(
            domain,
            Vec::new(),
            vec![DensityTerm { flavor: DensityFlavor::ComplexLine, coeff: Complex64::new(1.0, 0.0), function: f }],
        )
    }

    /// `dμ = dζ / 2πi`, whose transform is `1` on `G`.
    pub fn cauchy_line(domain: &ConformalDomain) -> Result<Self> {
        Self::complex_line(domain, AnalyticFunction::constant(Complex64::new(0.0, -1.0 / TAU)))
    }

    /// `α μ₁ + β μ₂`.
    pub fn combine(domain: &ConformalDomain, alpha: Complex64, a: &Self, beta: Complex64, b: &Self) -> Result<Self> {
        let atoms = a
            .atoms
            .iter()
            .map(|t| (t.theta, alpha * t.weight))
            .chain(b.atoms.iter().map(|t| (t.theta, beta * t.weight)))
            .collect();
        let densities = a
            .densities
            .iter()
            .map(|d| DensityTerm { coeff: alpha * d.coeff, ..d.clone() })
            .chain(b.densities.iter().map(|d| DensityTerm { coeff: beta * d.coeff, ..d.clone() }))
            .collect();
        Self::new(domain, atoms, densities)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn densities(&self) -> &[DensityTerm] {
        &self.densities
    }

    pub fn total_variation(&self) -> f64 {
        self.total_variation
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.weight == ZERO) && self.densities.iter().all(|d| d.coeff == ZERO)
    }

    /// `dμ/dθ` of the density part at boundary parameter `θ`.
    pub fn density_rate(&self, domain: &ConformalDomain, theta: f64) -> Complex64 {
        if self.densities.is_empty() {
            return ZERO;
        }
        let z = Complex64::from_polar(1.0, theta);
        let zeta = domain.phi(z);
        let dzeta = I * z * domain.dphi(z);
        self.densities
            .iter()
            .map(|d| {
                let w = match d.flavor {
                    DensityFlavor::Arclength => Complex64::new(dzeta.norm(), 0.0),
                    DensityFlavor::ComplexLine => dzeta,
                };
                d.coeff * d.function.eval(domain, z, zeta) * w
            })
            .sum()
    }

    fn compute_variation(&self, domain: &ConformalDomain) -> Result<f64> {
        let atoms: f64 = self.atoms.iter().map(|a| a.weight.norm()).sum();
        if self.densities.is_empty() {
            return Ok(atoms);
        }
        let q = adaptive_integral(
            |t| Complex64::new(self.density_rate(domain, t).norm(), 0.0),
            64,
            1e-13,
            1 << 18,
        )?;
        Ok(atoms + q.value.re)
    }

    /// Discretizes the density part on `m` boundary nodes: `(ζ_k, ω_k)` with
    /// `∫ g dμ_density ≈ Σ ω_k g(ζ_k)`.
    fn density_rule(&self, domain: &ConformalDomain, m: usize) -> Vec<(Complex64, Complex64)> {
        if self.densities.is_empty() {
            return Vec::new();
        }
        (0..m)
            .map(|k| {
                let t = TAU * k as f64 / m as f64;
                (domain.boundary_point(1.0, t).0, self.density_rate(domain, t) * (TAU / m as f64))
            })
            .collect()
    }
}

/// Boundary rule size for evaluating `K_μ` on `ℓ_r`: the Cauchy kernel has a
/// pole at distance `ln(1/r)` from the real θ axis, so the trapezoid error
/// decays like `r^m`.
fn rule_size_for_radius(r: f64, n: usize) -> usize {
    let need = (40.0 / (1.0 / r).ln()).ceil() as usize;
    need.max(n).max(256).next_power_of_two().min(1 << 16)
}

/// `K_μ(ζ₀) = ∫ dμ(ζ)/(ζ − ζ₀)` for `ζ₀` strictly inside `ℓ`.
pub fn cauchy_transform(domain: &ConformalDomain, mu: &BoundaryMeasure, zeta0: Complex64) -> Result<Complex64> {
    let margin = 1e-6 * domain.diameter();
    if !domain.contains(zeta0) || domain.boundary_distance(zeta0, domain.n_check().max(256)) <= margin {
        return Err(Error::NotInterior { point: zeta0 });
    }
    let atoms: Complex64 = mu.atoms.iter().map(|a| a.weight / (a.zeta - zeta0)).sum();
    if mu.densities.is_empty() {
        return Ok(atoms);
    }
    let q = adaptive_integral(
        |t| mu.density_rate(domain, t) / (domain.boundary_point(1.0, t).0 - zeta0),
        64,
        1e-14,
        1 << 20,
    )?;
    Ok(atoms + q.value)
}

/// Total variation `‖μ‖`.
pub fn variation_norm(mu: &BoundaryMeasure) -> f64 {
    mu.total_variation()
}

/// Discretized level curve `ℓ_r` carrying the pairing weights
/// `(1/2πi) dζ/dθ · 2π/n`.
#[derive(Clone, Debug)]
pub struct LevelGrid {
    pub r: f64,
    pub z: Vec<Complex64>,
    pub zeta: Vec<Complex64>,
    pub weight: Vec<Complex64>,
}

impl LevelGrid {
    pub fn new(domain: &ConformalDomain, r: f64, n: usize) -> Result<Self> {
        let curve = domain.level_curve(r)?;
        if r >= 1.0 || n < 8 {
            return Err(Error::InvalidArgument(format!("pairing needs 0 < r < 1 and n >= 8 (r = {r}, n = {n})")));
        }
        let mut z = Vec::with_capacity(n);
        let mut zeta = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for j in 0..n {
            let t = TAU * j as f64 / n as f64;
            let (p, dp) = curve.point(t);
            z.push(curve.z(t));
            zeta.push(p);
            weight.push(dp / (I * n as f64));
        }
        Ok(Self { r, z, zeta, weight })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `K_μ` at every grid point.
    pub fn transform(&self, domain: &ConformalDomain, mu: &BoundaryMeasure) -> Vec<Complex64> {
        let rule = mu.density_rule(domain, rule_size_for_radius(self.r, self.len()));
        self.zeta
            .par_iter()
            .map(|&p| {
                let a: Complex64 = mu.atoms.iter().map(|a| a.weight / (a.zeta - p)).sum();
                let d: Complex64 = rule.iter().map(|(q, w)| w / (q - p)).sum();
                a + d
            })
            .collect()
    }

    /// Function values at every grid point.
    pub fn values(&self, domain: &ConformalDomain, f: &AnalyticFunction) -> Result<Vec<Complex64>> {
        let v: Vec<Complex64> = self.z.iter().zip(&self.zeta).map(|(&z, &p)| f.eval(domain, z, p)).collect();
        if let Some(j) = v.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { theta: TAU * j as f64 / self.len() as f64 });
        }
        Ok(v)
    }

    /// `Σ_j weight_j Π_k factors_k[j]`.
    pub fn contract(&self, factors: &[&[Complex64]]) -> Complex64 {
        (0..self.len())
            .map(|j| factors.iter().fold(self.weight[j], |acc, f| acc * f[j]))
            .sum()
    }

    /// Smallest distance from `w` to the grid points.
    pub fn distance_to(&self, w: Complex64) -> f64 {
        self.zeta.iter().map(|p| (p - w).norm()).fold(f64::INFINITY, f64::min)
    }
}

/// A normalized exterior test function.
#[derive(Clone, Debug, Serialize)]
pub struct TestFunction {
    pub label: String,
    pub function: AnalyticFunction,
    /// Boundary parameter where `|h|` attains its maximum `1`.
    pub argmax_theta: f64,
    /// Largest preimage radius of the poles.
    pub pole_radius: f64,
}

impl TestFunction {
    /// Validates `h` as an exterior function and rescales it to `max_ℓ |h| = 1`
    /// (grid scan on `n_norm` nodes refined around the peaks).
    pub fn normalized(domain: &ConformalDomain, label: impl Into<String>, h: Rational, n_norm: usize) -> Result<Self> {
        let f = AnalyticFunction::Rational(h);
        f.validate_exterior(domain)?;
        let AnalyticFunction::Rational(h) = f else { unreachable!() };
        let (argmax_theta, max) = periodic_max(|t| h.eval(domain.boundary_point(1.0, t).0).norm(), n_norm, 4);
        if !(max > 0.0 && max.is_finite()) {
            return Err(Error::InvalidFunction("test function vanishes on the boundary".into()));
        }
        let pole_radius = h
            .poles
            .iter()
            .map(|t| domain.preimage(t.location).map_or(1.0, |z| z.norm()))
            .fold(0.0, f64::max);
        Ok(Self {
            label: label.into(),
            function: AnalyticFunction::Rational(h.scale(Complex64::new(1.0 / max, 0.0))),
            argmax_theta,
            pole_radius,
        })
    }

    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        match &self.function {
            AnalyticFunction::Rational(r) => r.eval(zeta),
            _ => unreachable!("test functions are rational"),
        }
    }

    fn rational(&self) -> &Rational {
        match &self.function {
            AnalyticFunction::Rational(r) => r,
            _ => unreachable!("test functions are rational"),
        }
    }
}

/// Generator parameters for a reproducible test-function family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct FamilySpec {
    /// Preimage radii of the pole rings; `0` places a single pole at `φ(0)`.
    pub rings: Vec<f64>,
    /// Poles per ring of positive radius.
    pub angles: usize,
    pub max_order: u32,
    /// Number of random convex combinations appended.
    pub combinations: usize,
    pub seed: u64,
    pub n_norm: usize,
}

impl Default for FamilySpec {
    fn default() -> Self {
        Self { rings: vec![0.0, 0.3, 0.6], angles: 8, max_order: 3, combinations: 8, seed: 20_260_414, n_norm: 1024 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TestFunctionFamily {
    members: Vec<TestFunction>,
}

impl TestFunctionFamily {
    pub fn from_members(members: Vec<TestFunction>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("test-function family is empty".into()));
        }
        Ok(Self { members })
    }

    /// Poles `φ(ρ e^{iα})` on the configured rings, orders `1..=max_order`,
    /// followed by seeded random convex combinations (renormalized).
    pub fn generate(domain: &ConformalDomain, spec: &FamilySpec) -> Result<Self> {
        let mut members = Vec::new();
        for &rho in &spec.rings {
            if !(0.0..1.0).contains(&rho) {
                return Err(Error::InvalidArgument(format!("ring radius {rho} not in [0, 1)")));
            }
            let count = if rho == 0.0 { 1 } else { spec.angles.max(1) };
            for k in 0..count {
                let alpha = TAU * k as f64 / count as f64;
                let pole = domain.phi(Complex64::from_polar(rho, alpha));
                for m in 1..=spec.max_order.max(1) {
                    let h = Rational::pole(pole, m, Complex64::new(1.0, 0.0));
                    members.push(TestFunction::normalized(
                        domain,
                        format!("pole(rho={rho},k={k},m={m})"),
                        h,
                        spec.n_norm,
                    )?);
                }
            }
        }
        let base = members.len();
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for c in 0..spec.combinations {
            if base < 2 {
                break;
            }
            let k = rng.gen_range(2..=base.min(4));
            let mut combo = Rational::default();
            let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            for w in weights {
                let idx = rng.gen_range(0..base);
                let phase = Complex64::from_polar(w, rng.gen_range(0.0..TAU));
                combo = combo.add(&members[idx].rational().scale(phase));
            }
            members.push(TestFunction::normalized(domain, format!("combo({c})"), combo, spec.n_norm)?);
        }
        Self::from_members(members)
    }

    pub fn members(&self) -> &[TestFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `(1/2πi) ∮_{ℓ_r} h K_μ dζ` on an `n`-node grid.
pub fn pairing(domain: &ConformalDomain, h: &TestFunction, mu: &BoundaryMeasure, r: f64, n: usize) -> Result<Complex64> {
    check_inside_level(domain, h, r)?;
    let grid = LevelGrid::new(domain, r, n)?;
    let hv: Vec<Complex64> = grid.zeta.iter().map(|&p| h.eval(p)).collect();
    let k = grid.transform(domain, mu);
    Ok(grid.contract(&[&hv, &k]))
}

pub(crate) fn check_inside_level(domain: &ConformalDomain, h: &TestFunction, r: f64) -> Result<()> {
    for t in &h.rational().poles {
        match domain.preimage(t.location) {
            Some(z) if z.norm() < r => {}
            _ => return Err(Error::PoleOutsideLevelCurve { pole: t.location, r }),
        }
    }
    Ok(())
}

/// Largest radius of `schedule` whose level curve keeps every atom at least
/// `cap_factor · 2π/n` away, as `(radius, capped)`; `capped` is set when some
/// larger radius was dropped.
pub fn capped_radius(domain: &ConformalDomain, atoms: &[Atom], schedule: &[f64], n: usize, cap_factor: f64) -> Result<(f64, bool)> {
    let min_dist = cap_factor * TAU / n as f64;
    let mut best = None;
    for &r in schedule {
        let grid = LevelGrid::new(domain, r, n)?;
        if atoms.iter().all(|a| grid.distance_to(a.zeta) >= min_dist) {
            best = Some(r);
        }
    }
    let top = schedule.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    match best {
        Some(r) => Ok((r, r < top)),
        None => Err(Error::InvalidArgument(format!(
            "no radius in the schedule keeps atoms {min_dist:.3e} away from the level curve"
        ))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KNormBracket {
    pub lower: f64,
    pub upper: f64,
    /// Index of the best test function.
    pub witness: Option<usize>,
    pub r_final: f64,
    /// `(r, best |P_r|)` for every admissible schedule radius.
    pub by_radius: Vec<(f64, f64)>,
    pub capped: bool,
    /// Members skipped because a pole lay outside `ℓ_{r_final}`.
    pub skipped: usize,
}

/// Options for [`knorm_bracket`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct BracketConfig {
    pub r_schedule: Vec<f64>,
    pub n: usize,
    /// Atom-to-curve clearance in units of the grid step `2π/n`.
    pub cap_factor: f64,
    pub tol: f64,
}

impl Default for BracketConfig {
    fn default() -> Self {
        Self { r_schedule: vec![0.7, 0.8, 0.9, 0.95, 0.99], n: 2048, cap_factor: 10.0, tol: 1e-9 }
    }
}

/// Brackets `‖K_μ‖_{K(G)}` between the family's best pairing and `‖μ‖`.
pub fn knorm_bracket(
    domain: &ConformalDomain,
    mu: &BoundaryMeasure,
    family: &TestFunctionFamily,
    cfg: &BracketConfig,
) -> Result<KNormBracket> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("test-function family is empty".into()));
    }
    let upper = mu.total_variation();
    let (r_final, capped) = capped_radius(domain, &mu.atoms, &cfg.r_schedule, cfg.n, cfg.cap_factor)?;
    let mut by_radius = Vec::new();
    let mut lower = 0.0;
    let mut witness = None;
    let mut skipped = 0;
    for &r in cfg.r_schedule.iter().filter(|&&r| r <= r_final) {
        let grid = LevelGrid::new(domain, r, cfg.n)?;
        let k = grid.transform(domain, mu);
        let eligible: Vec<usize> = (0..family.len()).filter(|&i| family.members[i].pole_radius < r).collect();
        let values: Vec<(usize, f64)> = eligible
            .par_iter()
            .map(|&i| {
                let h = &family.members[i];
                let hv: Vec<Complex64> = grid.zeta.iter().map(|&p| h.eval(p)).collect();
                (i, grid.contract(&[&hv, &k]).norm())
            })
            .collect();
        let best = values.iter().fold((None, 0.0_f64), |acc, &(i, v)| if v > acc.1 { (Some(i), v) } else { acc });
        by_radius.push((r, best.1));
        if r == r_final {
            lower = best.1;
            witness = best.0;
            skipped = family.len() - eligible.len();
        }
    }
    if lower > upper + cfg.tol {
        return Err(Error::BracketViolation { lower, upper, tol: cfg.tol });
    }
    Ok(KNormBracket { lower, upper, witness, r_final, by_radius, capped, skipped })
}

/// Moments `m_n = ∫_ℓ ζ^n dμ` for `n = −1, …, −count`; all vanish exactly
/// when `K_μ ≡ 0` on `G`.
pub fn exterior_moment_test(domain: &ConformalDomain, mu: &BoundaryMeasure, count: usize) -> Result<Vec<Complex64>> {
    if mu.densities.iter().any(|d| d.flavor == DensityFlavor::Arclength) {
        return Err(Error::UnsupportedFlavor(DensityFlavor::Arclength.name()));
    }
    (1..=count as i32)
        .map(|k| {
            let atoms: Complex64 = mu.atoms.iter().map(|a| a.weight * a.zeta.powi(-k)).sum();
            if mu.densities.is_empty() {
                return Ok(atoms);
            }
            let q = adaptive_integral(
                |t| domain.boundary_point(1.0, t).0.powi(-k) * mu.density_rate(domain, t),
                64,
                1e-14,
                1 << 18,
            )?;
            Ok(atoms + q.value)
        })
        .collect()
}

/// `max |K_μ|` over interior points.
pub fn knull_check(domain: &ConformalDomain, mu: &BoundaryMeasure, interior: &[Complex64]) -> Result<f64> {
    interior
        .iter()
        .map(|&p| cauchy_transform(domain, mu, p).map(|v| v.norm()))
        .try_fold(0.0_f64, |acc, v| v.map(|v| acc.max(v)))
}

/// The standard interior probe points `{0, 0.3, 0.5i}`.
pub fn standard_interior_grid() -> Vec<Complex64> {
    vec![ZERO, Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.5)]
}
