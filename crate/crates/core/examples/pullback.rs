//! Smirnov E^p level means computed on the curve and through the disc
//! pullback, and the radius trend of the norm.

use csmult::geometry::ConformalDomain;
use csmult::spaces::{ep_norm, logplus_trend, pullback_consistency, AnalyticFunction, Normalization};
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    let domain = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let f = AnalyticFunction::zeta_power(2);
    for p in [1.0, 2.0, 4.0] {
        for r in [0.9, 0.99] {
            let (direct, pulled) = pullback_consistency(&domain, &f, p, r, 1024)?;
            println!("p = {p}, r = {r}: curve {direct:.14}  disc {pulled:.14}  diff {:.1e}", (direct - pulled).abs());
        }
    }
    let norm = ep_norm(&domain, &f, 2.0, &[0.5, 0.8, 0.95, 1.0], Normalization::Normalized, 1e-12)?;
    println!("E^2 means along r: {:?} -> norm {:.12} (monotone {})", norm.means, norm.value, norm.monotone);
    println!("log+ trend: {:?}", logplus_trend(&domain, &f, &[0.5, 0.9, 1.0], 1024)?);
    Ok(())
}
