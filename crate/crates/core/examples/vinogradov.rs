//! Data for the p = 1 case on the disc: Lambda(f) on escalating grids next to
//! the H1 norm of f'. Nothing is asserted about their relation.

use csmult::geometry::ConformalDomain;
use csmult::multiplier::{vinogradov_probe, LambdaConfig};
use csmult::spaces::AnalyticFunction;

fn main() -> csmult::Result<()> {
    let disc = ConformalDomain::disc();
    for k in [2, 3, 5] {
        let r = vinogradov_probe(&disc, &AnalyticFunction::zeta_power(k), &[1024, 2048, 4096], &LambdaConfig::default())?;
        let steps: Vec<String> = r.escalation.iter().map(|(n, l)| format!("{n}:{l:.10}")).collect();
        println!("zeta^{k}: ||f'||_H1 = {:.10}, Lambda = {:.10} [{}]", r.fprime_h1, r.lambda, steps.join(" "));
    }
    Ok(())
}
