//! JSON experiment configuration.
//!
//! Complex numbers are `[re, im]` pairs. Function and measure tables keep
//! their declaration order, which is also the report order.

use std::path::Path;

use indexmap::IndexMap;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cauchy::{BoundaryMeasure, BracketConfig, DensityFlavor, DensityTerm, FamilySpec};
use crate::error::{Error, Result};
use crate::geometry::ConformalDomain;
use crate::multiplier::{LambdaConfig, SearchConfig, Theorem2Config};
use crate::poly::Poly;
use crate::spaces::{AnalyticFunction, PoleTerm, Rational};

/// The configuration shipped with the crate (bump domain, suite functions).
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    /// Taylor coefficients `c_1, c_2, …` of `φ`.
    pub phi: Vec<Complex64>,
    #[serde(default = "default_n_check")]
    pub n_check: usize,
}

fn default_n_check() -> usize {
    512
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleSpec {
    pub a: Complex64,
    #[serde(default = "one")]
    pub order: u32,
    pub c: Complex64,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    /// `f(φ(z)) = Σ coeffs_k z^k`.
    Pullback { coeffs: Vec<Complex64> },
    /// `poly(ζ) + Σ c / (ζ − a)^order`.
    Rational {
        #[serde(default)]
        poly: Vec<Complex64>,
        #[serde(default)]
        poles: Vec<PoleSpec>,
    },
    /// Difference quotient of a named function at `φ(e^{i eta_theta})`.
    Diffquot { base: String, eta_theta: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub theta: f64,
    pub w: Complex64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySpec {
    pub flavor: DensityFlavor,
    #[serde(default = "unit")]
    pub coeff: Complex64,
    /// Name of a configured function.
    #[serde(rename = "fn")]
    pub function: String,
}

fn unit() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<AtomSpec>,
    #[serde(default)]
    pub densities: Vec<DensitySpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grids {
    pub n_eta: usize,
    pub n_zeta: usize,
    /// Level-curve grid for pairings.
    pub n: usize,
    pub r_schedule: Vec<f64>,
    pub n_max: usize,
    pub n_einf: usize,
    /// ζ grids escalated by the p = 1 probe.
    pub vinogradov: Vec<usize>,
}

impl Default for Grids {
    fn default() -> Self {
        Self {
            n_eta: 64,
            n_zeta: 1024,
            n: 2048,
            r_schedule: vec![0.8, 0.9, 0.95, 0.99],
            n_max: 1 << 16,
            n_einf: 4096,
            vinogradov: vec![1024, 2048, 4096],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub lambda: f64,
    pub theorem: f64,
    pub norm: f64,
    pub bracket: f64,
    /// Atom-to-curve clearance in grid steps.
    pub cap_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { lambda: 1e-8, theorem: 1e-6, norm: 1e-10, bracket: 1e-9, cap_factor: 10.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    DomainInfo,
    Lambda,
    Knorm,
    MultBound,
    Theorem1,
    Theorem2,
    Vinogradov,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DomainInfo => "domain-info",
            Self::Lambda => "lambda",
            Self::Knorm => "knorm",
            Self::MultBound => "mult-bound",
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::Vinogradov => "vinogradov",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub check: CheckKind,
    /// Function or measure name; unused by `domain-info`.
    #[serde(default)]
    pub target: String,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub expected: Option<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub domain: DomainSpec,
    #[serde(default)]
    pub functions: IndexMap<String, FunctionSpec>,
    #[serde(default)]
    pub measures: IndexMap<String, MeasureSpec>,
    #[serde(default)]
    pub family: FamilySpec,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Checks run by `batch`; when absent a default plan is derived.
    #[serde(default)]
    pub checks: Option<Vec<CheckSpec>>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl ExperimentConfig {
    /// Parses and validates; errors carry the JSON line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn shipped_default() -> Self {
        Self::from_json(DEFAULT_CONFIG).expect("shipped config is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, v) in [("lambda", t.lambda), ("theorem", t.theorem), ("norm", t.norm), ("bracket", t.bracket), ("cap_factor", t.cap_factor)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("tolerances.{name} = {v} must be positive")));
            }
        }
        let g = &self.grids;
        if g.r_schedule.is_empty() || g.r_schedule.iter().any(|&r| !(r > 0.0 && r < 1.0)) || g.r_schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("grids.r_schedule must be increasing within (0, 1)".into()));
        }
        for (name, spec) in &self.functions {
            if let FunctionSpec::Diffquot { base, .. } = spec {
                match self.functions.get(base) {
                    None => return Err(Error::Config(format!("functions.{name}.base: unknown function '{base}'"))),
                    Some(FunctionSpec::Diffquot { .. }) => {
                        return Err(Error::Config(format!("functions.{name}.base: nested difference quotient")))
                    }
                    Some(_) => {}
                }
            }
        }
        for (name, m) in &self.measures {
            for (k, d) in m.densities.iter().enumerate() {
                if !self.functions.contains_key(&d.function) {
                    return Err(Error::Config(format!("measures.{name}.densities[{k}].fn: unknown function '{}'", d.function)));
                }
            }
        }
        if let Some(checks) = &self.checks {
            for (k, c) in checks.iter().enumerate() {
                let known = match c.check {
                    CheckKind::DomainInfo => true,
                    CheckKind::Knorm => self.measures.contains_key(&c.target),
                    _ => self.functions.contains_key(&c.target),
                };
                if !known {
                    return Err(Error::Config(format!("checks[{k}].target: unknown name '{}'", c.target)));
                }
                if c.check == CheckKind::Theorem2 && c.p.is_none() {
                    return Err(Error::Config(format!("checks[{k}].p is required for theorem2")));
                }
                if c.tol.is_some_and(|t| !(t > 0.0)) {
                    return Err(Error::Config(format!("checks[{k}].tol must be positive")));
                }
            }
        }
        Ok(())
    }

    /// Overrides the ζ grid and the pairing grid.
    pub fn override_n(&mut self, n: usize) {
        self.grids.n_zeta = n;
        self.grids.n = n;
        self.grids.n_eta = self.grids.n_eta.min(n);
        while n % self.grids.n_eta != 0 {
            self.grids.n_eta -= 1;
        }
    }

    pub fn build_domain(&self) -> Result<ConformalDomain> {
        ConformalDomain::new(self.domain.phi.clone(), self.domain.n_check)
    }

    pub fn function(&self, name: &str) -> Result<AnalyticFunction> {
        let spec = self.functions.get(name).ok_or_else(|| Error::Config(format!("unknown function '{name}'")))?;
        Ok(match spec {
            FunctionSpec::Pullback { coeffs } => AnalyticFunction::pullback(coeffs.clone()),
            FunctionSpec::Rational { poly, poles } => AnalyticFunction::Rational(Rational::new(
                Poly::new(if poly.is_empty() { vec![Complex64::new(0.0, 0.0)] } else { poly.clone() }),
                poles.iter().map(|p| PoleTerm { location: p.a, order: p.order, coeff: p.c }).collect(),
            )),
            FunctionSpec::Diffquot { base, eta_theta } => AnalyticFunction::diff_quotient(&self.function(base)?, *eta_theta)?,
        })
    }

    pub fn measure(&self, domain: &ConformalDomain, name: &str) -> Result<BoundaryMeasure> {
        let spec = self.measures.get(name).ok_or_else(|| Error::Config(format!("unknown measure '{name}'")))?;
        let densities = spec
            .densities
            .iter()
            .map(|d| Ok(DensityTerm { flavor: d.flavor, coeff: d.coeff, function: self.function(&d.function)? }))
            .collect::<Result<Vec<_>>>()?;
        BoundaryMeasure::new(domain, spec.atoms.iter().map(|a| (a.theta, a.w)).collect(), densities)
    }

    pub fn lambda_config(&self) -> LambdaConfig {
        LambdaConfig {
            n_eta: self.grids.n_eta,
            n_zeta: self.grids.n_zeta,
            tol: self.tolerances.lambda,
            n_max: self.grids.n_max.max(self.grids.n_zeta),
            ..LambdaConfig::default()
        }
    }

    pub fn bracket_config(&self) -> BracketConfig {
        BracketConfig {
            r_schedule: self.grids.r_schedule.clone(),
            n: self.grids.n,
            cap_factor: self.tolerances.cap_factor,
            tol: self.tolerances.bracket,
        }
    }

    pub fn search_config(&self) -> SearchConfig {
        SearchConfig {
            family: self.family.clone(),
            r_schedule: self.grids.r_schedule.clone(),
            n: self.grids.n,
            cap_factor: self.tolerances.cap_factor,
            n_einf: self.grids.n_einf,
            lambda: self.lambda_config(),
            tol: self.tolerances.theorem,
            ..SearchConfig::default()
        }
    }

    pub fn theorem2_config(&self) -> Theorem2Config {
        let mut r_schedule = self.grids.r_schedule.clone();
        r_schedule.push(1.0);
        Theorem2Config { r_schedule, tol: self.tolerances.norm, lambda: self.lambda_config() }
    }

    /// The configured checks, or one `domain-info`, then `lambda`, `theorem1`
    /// and `theorem2` (p = 2) per function and `knorm` per measure.
    pub fn plan(&self) -> Vec<CheckSpec> {
        if let Some(c) = &self.checks {
            return c.clone();
        }
        let spec = |check, target: &str, p| CheckSpec { check, target: target.to_string(), p, expected: None, tol: None };
        let mut out = vec![spec(CheckKind::DomainInfo, "", None)];
        for name in self.functions.keys() {
            out.push(spec(CheckKind::Lambda, name, None));
            out.push(spec(CheckKind::Theorem1, name, None));
            out.push(spec(CheckKind::Theorem2, name, Some(2.0)));
        }
        for name in self.measures.keys() {
            out.push(spec(CheckKind::Knorm, name, None));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_config_parses() {
        let cfg = ExperimentConfig::shipped_default();
        let d = cfg.build_domain().unwrap();
        for name in cfg.functions.keys() {
            cfg.function(name).unwrap();
        }
        for name in cfg.measures.keys() {
            cfg.measure(&d, name).unwrap();
        }
        assert!(!cfg.plan().is_empty());
    }

    #[test]
    fn declaration_order_is_kept() {
        let cfg = ExperimentConfig::from_json(
            r#"{"domain":{"phi":[[1,0]]},"functions":{"z":{"kind":"pullback","coeffs":[[0,0],[1,0]]},"a":{"kind":"rational","poly":[[1,0]]}}}"#,
        )
        .unwrap();
        assert_eq!(cfg.functions.keys().collect::<Vec<_>>(), ["z", "a"]);
    }

    #[test]
    fn errors_name_the_field() {
        let e = ExperimentConfig::from_json(r#"{"domain":{"phi":[[1,0]]},"grids":{"n_zeta":"x"}}"#).unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        let e = ExperimentConfig::from_json(
            r#"{"domain":{"phi":[[1,0]]},"measures":{"m":{"densities":[{"flavor":"arclength","fn":"nope"}]}}}"#,
        )
        .unwrap_err();
        assert!(e.to_string().contains("measures.m.densities[0].fn"), "{e}");
        let e = ExperimentConfig::from_json(r#"{"domain":{"phi":[[1,0]]},"tolerances":{"lambda":0}}"#).unwrap_err();
        assert!(e.to_string().contains("tolerances.lambda"));
    }

    #[test]
    fn n_override_keeps_divisibility() {
        let mut cfg = ExperimentConfig::shipped_default();
        cfg.override_n(1000);
        assert_eq!(cfg.grids.n_zeta % cfg.grids.n_eta, 0);
    }
}
