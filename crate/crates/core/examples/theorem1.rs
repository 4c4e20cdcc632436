//! Multiplier-norm lower bounds against the sufficient upper bound
//! sup|f| + Lambda(f).

use csmult::geometry::ConformalDomain;
use csmult::multiplier::{theorem1_check, SearchConfig};
use csmult::spaces::{AnalyticFunction, Rational};
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    let domain = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let cfg = SearchConfig::default();
    let suite = [
        ("2", AnalyticFunction::constant(Complex64::new(2.0, 0.0))),
        ("zeta", AnalyticFunction::zeta_power(1)),
        ("zeta^2", AnalyticFunction::zeta_power(2)),
        ("1/(zeta - 2.5)", AnalyticFunction::Rational(Rational::pole(Complex64::new(2.5, 0.0), 1, Complex64::new(1.0, 0.0)))),
    ];
    println!("{:<16} {:>12} {:>12} {:>12}  witness", "f", "lower", "upper", "slack");
    for (name, f) in &suite {
        let v = theorem1_check(&domain, f, &[], &cfg)?;
        let w = v.witness.as_ref().map(|w| format!("{} / {}", w.measure, w.test_function)).unwrap_or_default();
        println!("{name:<16} {:>12.8} {:>12.8} {:>12.8}  {w}", v.mult_lower, v.theorem1_upper, v.slack);
    }
    Ok(())
}
