//! The smooth-curve bound Lambda(f) <= C(p, s0, c0) ||f'||_{E^p} for several
//! exponents.

use csmult::geometry::ConformalDomain;
use csmult::multiplier::{theorem2_check, theorem2_constant, Theorem2Config};
use csmult::spaces::AnalyticFunction;
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    println!("C(2, 2 pi, 2/pi) = {:.12}", theorem2_constant(2.0, std::f64::consts::TAU, 2.0 / std::f64::consts::PI)?);
    let domain = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let f = AnalyticFunction::pullback(vec![Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)]);
    for p in [1.5, 2.0, 4.0, 8.0] {
        let r = theorem2_check(&domain, &f, p, &Theorem2Config::default())?;
        println!(
            "p = {p:<4} ||f'||_Ep = {:.8}  C = {:.6}  bound = {:.6}  Lambda = {:.6}  satisfied = {}",
            r.fprime_ep, r.constant, r.bound, r.lambda, r.satisfied
        );
    }
    Ok(())
}
