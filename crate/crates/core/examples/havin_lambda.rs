//! The Havin functional of a few functions on the disc and on a bump domain,
//! cross-checked against the difference-quotient integrals.

use csmult::geometry::ConformalDomain;
use csmult::multiplier::{havin_lambda, smirnov_kotchine_check, LambdaConfig};
use csmult::spaces::AnalyticFunction;
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    let disc = ConformalDomain::disc();
    let bump = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let cfg = LambdaConfig::default();
    for (dname, d) in [("disc", &disc), ("bump", &bump)] {
        for k in 1..=3 {
            let f = AnalyticFunction::zeta_power(k);
            let lam = havin_lambda(d, &f, &cfg)?;
            let sk = smirnov_kotchine_check(d, &f, &[lam.argmax_theta], 1e-9, 1 << 18)?;
            println!(
                "{dname}: Lambda(zeta^{k}) = {:.10} at theta = {:.4} (n_zeta {}, converged {}), E1 of F_eta = {:.10}",
                lam.lambda, lam.argmax_theta, lam.n_zeta, lam.converged, sk.max
            );
        }
    }
    println!("bump boundary length: {:.10}", bump.s0());
    Ok(())
}
