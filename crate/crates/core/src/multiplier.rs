//! The Havin functional, multiplier lower bounds and the two sufficient
//! multiplier criteria.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::{capped_radius, BoundaryMeasure, FamilySpec, LevelGrid, TestFunctionFamily};
use crate::error::{Error, Result};
use crate::geometry::ConformalDomain;
use crate::numerics::{adaptive_integral, golden_section_max, local_maxima};
use crate::spaces::{einf_norm, ep_norm, AnalyticFunction, Normalization};

/// Grid and tolerance settings for [`havin_lambda`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct LambdaConfig {
    pub n_eta: usize,
    pub n_zeta: usize,
    /// Stop doubling `n_zeta` once successive values differ by less than this.
    pub tol: f64,
    pub n_max: usize,
    /// ζ nodes on each side of η evaluated through the exact difference quotient.
    pub window: usize,
    /// Golden-section refinement of the coarse η maxima.
    pub refine: bool,
    /// Offset of the η grid.
    pub offset: f64,
}

impl Default for LambdaConfig {
    fn default() -> Self {
        Self { n_eta: 64, n_zeta: 1024, tol: 1e-8, n_max: 1 << 16, window: 3, refine: true, offset: 0.0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub lambda: f64,
    pub argmax_theta: f64,
    pub n_eta: usize,
    /// ζ grid size of the final doubling step.
    pub n_zeta: usize,
    pub est_error: f64,
    pub converged: bool,
    /// `(θ_η, I(η))` on the coarse η grid at the initial `n_zeta`.
    pub profile: Vec<(f64, f64)>,
}

/// `I(η) = ∫_ℓ |f(ζ) − f(η)| / |ζ − η| |dζ|` on `n` ζ nodes placed half a step
/// off `η`. Nodes within `window` steps of `η` use the exact difference
/// quotient to avoid cancellation.
fn eta_integral(domain: &ConformalDomain, f: &AnalyticFunction, dq: &AnalyticFunction, theta_eta: f64, n: usize, window: usize) -> f64 {
    let z_eta = Complex64::from_polar(1.0, theta_eta);
    let eta = domain.phi(z_eta);
    let f_eta = f.eval(domain, z_eta, eta);
    let h = TAU / n as f64;
    let terms: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta = theta_eta + (j as f64 + 0.5) * h;
            let z = Complex64::from_polar(1.0, theta);
            let (zeta, dzeta) = domain.boundary_point(1.0, theta);
            let q = if j < window || j + window >= n {
                dq.eval(domain, z, zeta)
            } else {
                (f.eval(domain, z, zeta) - f_eta) / (zeta - eta)
            };
            q.norm() * dzeta.norm()
        })
        .collect();
    terms.iter().sum::<f64>() * h
}

/// `Λ(f) = sup_{η∈ℓ} ∫_ℓ |f(ζ) − f(η)| / |ζ − η| |dζ|`.
///
/// The sup is a coarse η scan refined by golden section around the three
/// largest peaks; the winning η is then re-integrated with doubling ζ grids.
pub fn havin_lambda(domain: &ConformalDomain, f: &AnalyticFunction, cfg: &LambdaConfig) -> Result<LambdaReport> {
    if cfg.n_eta == 0 || cfg.n_zeta < 8 || cfg.n_zeta % cfg.n_eta != 0 {
        return Err(Error::InvalidArgument(format!(
            "n_zeta = {} must be a multiple of n_eta = {} and at least 8",
            cfg.n_zeta, cfg.n_eta
        )));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {} must be positive", cfg.tol)));
    }
    if 2 * cfg.window >= cfg.n_zeta {
        return Err(Error::InvalidArgument("diagonal window covers the whole grid".into()));
    }
    f.validate_interior(domain, 0.0)?;
    let integral = |theta: f64, n: usize| -> Result<f64> {
        let dq = AnalyticFunction::diff_quotient(f, theta)?;
        let v = eta_integral(domain, f, &dq, theta, n, cfg.window);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { theta })
        }
    };

    let step = TAU / cfg.n_eta as f64;
    let thetas: Vec<f64> = (0..cfg.n_eta).map(|k| (cfg.offset + k as f64 * step).rem_euclid(TAU)).collect();
    let values = thetas.iter().map(|&t| integral(t, cfg.n_zeta)).collect::<Result<Vec<f64>>>()?;
    let profile: Vec<(f64, f64)> = thetas.iter().copied().zip(values.iter().copied()).collect();

    let mut candidates: Vec<(f64, f64)> = local_maxima(&values, 3).into_iter().map(|k| profile[k]).collect();
    if cfg.refine {
        for c in candidates.iter_mut() {
            let (t, v) = golden_section_max(
                |t| integral(t, cfg.n_zeta).unwrap_or(f64::NEG_INFINITY),
                c.0 - step,
                c.0 + step,
                1e-7,
            );
            if v > c.1 {
                *c = (t.rem_euclid(TAU), v);
            }
        }
    }
    let (argmax_theta, _) = candidates.iter().copied().fold((profile[0].0, f64::NEG_INFINITY), |a, c| if c.1 > a.1 { c } else { a });

    let mut n = cfg.n_zeta;
    let mut value = integral(argmax_theta, n)?;
    let mut est_error = f64::INFINITY;
    let mut converged = false;
    while 2 * n <= cfg.n_max {
        n *= 2;
        let next = integral(argmax_theta, n)?;
        est_error = (next - value).abs();
        value = next;
        if est_error < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(LambdaReport { lambda: value, argmax_theta, n_eta: cfg.n_eta, n_zeta: n, est_error, converged, profile })
}

/// `F_η` for the boundary point `η = φ(e^{iθ})`.
pub fn diff_quotient(f: &AnalyticFunction, eta_theta: f64) -> Result<AnalyticFunction> {
    AnalyticFunction::diff_quotient(f, eta_theta)
}

#[derive(Clone, Debug, Serialize)]
pub struct SmirnovKotchineReport {
    /// `(θ_η, ∫_ℓ |F_η| |dζ|)`.
    pub values: Vec<(f64, f64)>,
    pub max: f64,
    pub converged: bool,
}

/// Boundary `E¹` integrals `∫_ℓ |F_η| |dζ|` of the difference quotients.
pub fn smirnov_kotchine_check(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    eta_thetas: &[f64],
    tol: f64,
    n_max: usize,
) -> Result<SmirnovKotchineReport> {
    f.validate_interior(domain, 0.0)?;
    let results = eta_thetas
        .iter()
        .map(|&theta| {
            let dq = diff_quotient(f, theta)?;
            let q = adaptive_integral(
                |t| {
                    let (zeta, dzeta) = domain.boundary_point(1.0, t);
                    Complex64::new(dq.eval(domain, Complex64::from_polar(1.0, t), zeta).norm() * dzeta.norm(), 0.0)
                },
                64,
                tol,
                n_max,
            )?;
            Ok((theta, q.value.re, q.converged))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = results.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(SmirnovKotchineReport {
        values: results.iter().map(|r| (r.0, r.1)).collect(),
        max,
        converged: results.iter().all(|r| r.2),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MultLowerBound {
    pub value: f64,
    /// `(measure index, test-function index)` of the best pair.
    pub witness: Option<(usize, usize)>,
}

/// `max |(1/2πi) ∮_{ℓ_r} f K_μ h dζ| / ‖μ‖` over measures and test functions.
/// Test functions with a pole outside `ℓ_r` are skipped.
pub fn multiplier_lower_bound(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    measures: &[BoundaryMeasure],
    family: &TestFunctionFamily,
    r: f64,
    n: usize,
) -> Result<MultLowerBound> {
    let grid = LevelGrid::new(domain, r, n)?;
    let fv = grid.values(domain, f)?;
    let hv: Vec<Option<Vec<Complex64>>> = family
        .members()
        .iter()
        .map(|h| (h.pole_radius < r).then(|| grid.zeta.iter().map(|&p| h.eval(p)).collect()))
        .collect();
    let mut best = MultLowerBound { value: 0.0, witness: None };
    for (mi, mu) in measures.iter().enumerate() {
        let tv = mu.total_variation();
        if tv <= 0.0 {
            return Err(Error::ZeroVariation);
        }
        let k = grid.transform(domain, mu);
        let fk: Vec<Complex64> = fv.iter().zip(&k).map(|(a, b)| a * b).collect();
        let values: Vec<(usize, f64)> = hv
            .par_iter()
            .enumerate()
            .filter_map(|(hi, h)| h.as_ref().map(|h| (hi, grid.contract(&[&fk, h]).norm() / tv)))
            .collect();
        for (hi, v) in values {
            if v > best.value {
                best = MultLowerBound { value: v, witness: Some((mi, hi)) };
            }
        }
    }
    Ok(best)
}

/// Search space for [`theorem1_check`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub family: FamilySpec,
    pub r_schedule: Vec<f64>,
    pub n: usize,
    /// Atom-to-curve clearance in grid steps.
    pub cap_factor: f64,
    /// Densities `ζ^k dζ/2πi` for `k < cauchy_powers` join the search.
    pub cauchy_powers: usize,
    /// Unit atoms at each test function's boundary maximum join the search.
    pub argmax_atoms: bool,
    pub n_einf: usize,
    pub lambda: LambdaConfig,
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            family: FamilySpec::default(),
            r_schedule: vec![0.8, 0.9, 0.95, 0.99],
            n: 2048,
            cap_factor: 10.0,
            cauchy_powers: 4,
            argmax_atoms: true,
            n_einf: 4096,
            lambda: LambdaConfig::default(),
            tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub measure: String,
    pub test_function: String,
    pub r: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplierVerdict {
    pub mult_lower: f64,
    pub einf: f64,
    pub lambda: f64,
    pub theorem1_upper: f64,
    pub slack: f64,
    pub witness: Option<Witness>,
    pub lambda_converged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub value: f64,
    pub witness: Option<Witness>,
    /// Number of measures tried.
    pub measures: usize,
}

/// Best lower bound on `‖f‖_𝔐` over `extra` measures, unit atoms at the test
/// functions' boundary maxima and the densities `ζ^k dζ/2πi`. Each measure is
/// paired on the largest schedule radius that keeps its atoms clear.
pub fn search_lower_bound(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    extra: &[(String, BoundaryMeasure)],
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    let family = TestFunctionFamily::generate(domain, &cfg.family)?;
    let mut measures: Vec<(String, BoundaryMeasure)> = extra.to_vec();
    if cfg.argmax_atoms {
        for h in family.members() {
            measures.push((format!("atom@{}", h.label), BoundaryMeasure::delta(domain, h.argmax_theta, Complex64::new(1.0, 0.0))?));
        }
    }
    for k in 0..cfg.cauchy_powers {
        let dens = AnalyticFunction::zeta_power(k).scaled(Complex64::new(0.0, -1.0 / TAU));
        measures.push((format!("zeta^{k} dzeta/2pi i"), BoundaryMeasure::complex_line(domain, dens)?));
    }

    let mut best = SearchResult { value: 0.0, witness: None, measures: measures.len() };
    for (label, mu) in &measures {
        if mu.total_variation() <= 0.0 {
            continue;
        }
        let (r, _) = capped_radius(domain, mu.atoms(), &cfg.r_schedule, cfg.n, cfg.cap_factor)?;
        let b = multiplier_lower_bound(domain, f, std::slice::from_ref(mu), &family, r, cfg.n)?;
        if b.value > best.value {
            best.value = b.value;
            best.witness = b.witness.map(|(_, hi)| Witness {
                measure: label.clone(),
                test_function: family.members()[hi].label.clone(),
                r,
            });
        }
    }
    Ok(best)
}

/// Checks `‖f‖_𝔐 ≤ ‖f‖_{E^∞} + Λ(f)` against [`search_lower_bound`].
pub fn theorem1_check(
    domain: &ConformalDomain,
    f: &AnalyticFunction,
    extra: &[(String, BoundaryMeasure)],
    cfg: &SearchConfig,
) -> Result<MultiplierVerdict> {
    let lower = search_lower_bound(domain, f, extra, cfg)?;
    let einf = einf_norm(domain, f, cfg.n_einf);
    let lam = havin_lambda(domain, f, &cfg.lambda)?;
    let upper = einf + lam.lambda;
    let slack = upper - lower.value;
    if slack < -cfg.tol {
        return Err(Error::TheoremViolation { lower: lower.value, upper, tol: cfg.tol });
    }
    Ok(MultiplierVerdict {
        mult_lower: lower.value,
        einf,
        lambda: lam.lambda,
        theorem1_upper: upper,
        slack,
        witness: lower.witness,
        lambda_converged: lam.converged,
    })
}

/// `C(p, s0, c0) = (1/c0) · p/(p−1) · 2^{1/p} · s0^{1−1/p}`.
pub fn theorem2_constant(p: f64, s0: f64, c0: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    if !(s0 > 0.0) || !(c0 > 0.0 && c0 <= 1.0) {
        return Err(Error::InvalidArgument(format!("need s0 > 0 and 0 < c0 <= 1 (s0 = {s0}, c0 = {c0})")));
    }
    Ok(p / (p - 1.0) * 2f64.powf(1.0 / p) * s0.powf(1.0 - 1.0 / p) / c0)
}

/// Settings for [`theorem2_check`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct Theorem2Config {
    pub r_schedule: Vec<f64>,
    pub tol: f64,
    pub lambda: LambdaConfig,
}

impl Default for Theorem2Config {
    fn default() -> Self {
        Self { r_schedule: vec![0.9, 0.99, 1.0], tol: 1e-10, lambda: LambdaConfig::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Report {
    pub p: f64,
    /// `(∫_ℓ |f'|^p |dζ|)^{1/p}`.
    pub fprime_ep: f64,
    pub fprime_ep_normalized: f64,
    pub constant: f64,
    pub bound: f64,
    pub lambda: f64,
    pub satisfied: bool,
}

/// Checks `Λ(f) ≤ C(p, s0, c0) ‖f'‖_{E^p}` with `f'` taken symbolically.
pub fn theorem2_check(domain: &ConformalDomain, f: &AnalyticFunction, p: f64, cfg: &Theorem2Config) -> Result<Theorem2Report> {
    let constant = theorem2_constant(p, domain.s0(), domain.c0())?;
    let fp = f.derivative(domain)?;
    let un = ep_norm(domain, &fp, p, &cfg.r_schedule, Normalization::Unnormalized, cfg.tol)?;
    let nm = ep_norm(domain, &fp, p, &cfg.r_schedule, Normalization::Normalized, cfg.tol)?;
    let lam = havin_lambda(domain, f, &cfg.lambda)?;
    let bound = constant * un.value;
    Ok(Theorem2Report {
        p,
        fprime_ep: un.value,
        fprime_ep_normalized: nm.value,
        constant,
        bound,
        lambda: lam.lambda,
        satisfied: lam.lambda <= bound + cfg.lambda.tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VinogradovReport {
    pub lambda: f64,
    /// Λ failed to settle within the largest grid.
    pub lambda_diverged: bool,
    /// `(n_zeta, Λ)` at each escalation step.
    pub escalation: Vec<(usize, f64)>,
    /// Normalized circle mean of `|f'|`.
    pub fprime_h1: f64,
}

/// Collects `Λ(f)` on escalating grids together with `‖f'‖_{H¹}` on the
/// disc. No inequality between them is asserted.
pub fn vinogradov_probe(domain: &ConformalDomain, f: &AnalyticFunction, grids: &[usize], cfg: &LambdaConfig) -> Result<VinogradovReport> {
    if !domain.is_disc() {
        return Err(Error::InvalidArgument("the p = 1 probe runs on the unit disc only".into()));
    }
    if grids.is_empty() {
        return Err(Error::InvalidArgument("no grid sizes given".into()));
    }
    let mut escalation = Vec::with_capacity(grids.len());
    let mut last = None;
    for &n in grids {
        let rep = havin_lambda(domain, f, &LambdaConfig { n_zeta: n, ..cfg.clone() })?;
        escalation.push((n, rep.lambda));
        last = Some(rep);
    }
    let last = last.expect("grids is nonempty");
    let fp = f.derivative(domain)?;
    let h1 = ep_norm(domain, &fp, 1.0, &[1.0], Normalization::Normalized, 1e-13)?;
    Ok(VinogradovReport { lambda: last.lambda, lambda_diverged: !last.converged, escalation, fprime_h1: h1.value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::TestFunction;
    use crate::spaces::Rational;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zp(k: usize) -> AnalyticFunction {
        AnalyticFunction::zeta_power(k)
    }

    #[test]
    fn lambda_examples() {
        let d = ConformalDomain::disc();
        let cfg = LambdaConfig::default();
        assert!(havin_lambda(&d, &AnalyticFunction::constant(c(3.0, 1.0)), &cfg).unwrap().lambda.abs() < 1e-12);
        assert!((havin_lambda(&d, &zp(1), &cfg).unwrap().lambda - TAU).abs() < 1e-8);
        let r = havin_lambda(&d, &zp(2), &cfg).unwrap();
        assert!((r.lambda - 8.0).abs() < 1e-6, "{}", r.lambda);
        assert!(r.converged);
    }

    #[test]
    fn lambda_rejects_bad_grid() {
        let d = ConformalDomain::disc();
        let cfg = LambdaConfig { n_eta: 60, ..LambdaConfig::default() };
        assert!(havin_lambda(&d, &zp(1), &cfg).is_err());
    }

    #[test]
    fn lambda_of_identity_is_perimeter() {
        let b = ConformalDomain::new(vec![c(1.0, 0.0), c(0.2, 0.0)], 512).unwrap();
        let f = AnalyticFunction::pullback(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.2, 0.0)]);
        let r = havin_lambda(&b, &f, &LambdaConfig::default()).unwrap();
        assert!((r.lambda - b.s0()).abs() < 1e-9);
    }

    #[test]
    fn diff_quotient_examples() {
        let d = ConformalDomain::disc();
        let one = c(1.0, 0.0);
        let f = diff_quotient(&zp(2), 0.0).unwrap();
        assert!((f.eval(&d, one, one) - c(2.0, 0.0)).norm() < 1e-15);
        assert!((f.eval(&d, c(0.3, 0.0), c(0.3, 0.0)) - c(1.3, 0.0)).norm() < 1e-15);
        let f = diff_quotient(&AnalyticFunction::constant(c(5.0, 0.0)), 1.0).unwrap();
        assert_eq!(f.eval(&d, one, one), c(0.0, 0.0));
        let f = diff_quotient(&zp(3), PI / 2.0).unwrap();
        assert!((f.eval(&d, c(0.0, 1.0), c(0.0, 1.0)) - c(-3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn smirnov_kotchine_examples() {
        let d = ConformalDomain::disc();
        let sk = smirnov_kotchine_check(&d, &zp(2), &[0.0], 1e-9, 1 << 18).unwrap();
        assert!((sk.max - 8.0).abs() < 1e-6, "{}", sk.max);
        let sk = smirnov_kotchine_check(&d, &zp(1), &[0.0, 1.0, 2.5], 1e-12, 1 << 12).unwrap();
        assert!(sk.values.iter().all(|v| (v.1 - TAU).abs() < 1e-12));
        let sk = smirnov_kotchine_check(&d, &AnalyticFunction::constant(c(1.0, 0.0)), &[0.3], 1e-12, 1 << 12).unwrap();
        assert_eq!(sk.max, 0.0);
    }

    fn single(d: &ConformalDomain, h: Rational) -> TestFunctionFamily {
        TestFunctionFamily::from_members(vec![TestFunction::normalized(d, "h", h, 1024).unwrap()]).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        let d = ConformalDomain::disc();
        let fam = single(&d, Rational::pole(c(0.0, 0.0), 1, c(1.0, 0.0)));
        let delta = vec![BoundaryMeasure::delta(&d, 0.0, c(1.0, 0.0)).unwrap()];
        let b = multiplier_lower_bound(&d, &AnalyticFunction::constant(c(2.0, 0.0)), &delta, &fam, 0.9, 2048).unwrap();
        assert!((b.value - 2.0).abs() < 1e-9);
        let b = multiplier_lower_bound(&d, &AnalyticFunction::constant(c(0.0, 0.0)), &delta, &fam, 0.9, 2048).unwrap();
        assert_eq!(b.value, 0.0);
        // fh = 1 is constant at infinity, so ζ · δ_1 pairs to 0 against 1/ζ
        let b = multiplier_lower_bound(&d, &zp(1), &delta, &fam, 0.9, 2048).unwrap();
        assert!(b.value < 1e-9);
        let line = vec![BoundaryMeasure::cauchy_line(&d).unwrap()];
        let fam2 = single(&d, Rational::pole(c(0.0, 0.0), 2, c(1.0, 0.0)));
        let b = multiplier_lower_bound(&d, &zp(1), &line, &fam2, 0.9, 1024).unwrap();
        assert!((b.value - 1.0).abs() < 1e-10);
        assert!(matches!(
            multiplier_lower_bound(&d, &zp(1), &[BoundaryMeasure::zero()], &fam, 0.9, 256),
            Err(Error::ZeroVariation)
        ));
    }

    #[test]
    fn theorem1_examples() {
        let d = ConformalDomain::disc();
        let cfg = SearchConfig::default();
        let v = theorem1_check(&d, &AnalyticFunction::constant(c(2.0, 0.0)), &[], &cfg).unwrap();
        assert!((v.mult_lower - 2.0).abs() < 1e-9 && (v.theorem1_upper - 2.0).abs() < 1e-9);
        let v = theorem1_check(&d, &zp(1), &[], &cfg).unwrap();
        assert!((v.theorem1_upper - 1.0 - TAU).abs() < 1e-8 && v.mult_lower >= 1.0 - 1e-9 && v.slack >= 0.0);
        let v = theorem1_check(&d, &zp(2), &[], &cfg).unwrap();
        assert!((v.theorem1_upper - 9.0).abs() < 1e-6 && v.mult_lower >= 1.0 - 1e-9 && v.slack >= 0.0);
    }

    #[test]
    fn theorem2_constant_examples() {
        let v = theorem2_constant(2.0, TAU, 2.0 / PI).unwrap();
        assert!((v - TAU * PI.sqrt()).abs() < 1e-12);
        assert!((theorem2_constant(2.0, 2.0, 1.0).unwrap() - 4.0).abs() < 1e-14);
        let big = theorem2_constant(100.0, TAU, 2.0 / PI).unwrap();
        assert!((big / (TAU * PI / 2.0) - 1.0).abs() < 0.05);
        assert!(matches!(theorem2_constant(1.0, TAU, 1.0), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn theorem2_examples() {
        let d = ConformalDomain::disc();
        let cfg = Theorem2Config::default();
        let r = theorem2_check(&d, &zp(1), 2.0, &cfg).unwrap();
        assert!((r.fprime_ep - TAU.sqrt()).abs() < 1e-10 && r.satisfied);
        let r = theorem2_check(&d, &zp(2), 2.0, &cfg).unwrap();
        assert!((r.fprime_ep - (8.0 * PI).sqrt()).abs() < 1e-10 && r.satisfied);
        assert!((r.lambda - 8.0).abs() < 1e-6);
    }

    #[test]
    fn vinogradov_examples() {
        let d = ConformalDomain::disc();
        let r = vinogradov_probe(&d, &zp(2), &[1024, 2048], &LambdaConfig::default()).unwrap();
        assert!((r.lambda - 8.0).abs() < 1e-6 && (r.fprime_h1 - 2.0).abs() < 1e-10);
        let r = vinogradov_probe(&d, &AnalyticFunction::constant(c(1.0, 0.0)), &[1024], &LambdaConfig::default()).unwrap();
        assert!(r.lambda.abs() < 1e-12 && r.fprime_h1 == 0.0);
        let b = ConformalDomain::new(vec![c(1.0, 0.0), c(0.2, 0.0)], 64).unwrap();
        assert!(vinogradov_probe(&b, &zp(2), &[1024], &LambdaConfig::default()).is_err());
    }
}
