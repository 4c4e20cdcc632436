//! Brackets the K(G) norm of a Cauchy transform between the best pairing
//! with normalized exterior test functions and the total variation.

use csmult::cauchy::{knorm_bracket, BoundaryMeasure, BracketConfig, FamilySpec, TestFunctionFamily};
use csmult::geometry::ConformalDomain;
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    let domain = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let family = TestFunctionFamily::generate(&domain, &FamilySpec::default())?;
    println!("{} test functions", family.len());

    let theta = family.members()[0].argmax_theta;
    let measures = [
        ("unit atom at the maximum of 1/zeta", BoundaryMeasure::delta(&domain, theta, Complex64::new(1.0, 0.0))?),
        ("dzeta / 2 pi i", BoundaryMeasure::cauchy_line(&domain)?),
        (
            "dipole",
            BoundaryMeasure::new(&domain, vec![(0.0, Complex64::new(1.0, 0.0)), (3.0, Complex64::new(-1.0, 0.0))], vec![])?,
        ),
    ];
    for (name, mu) in &measures {
        let br = knorm_bracket(&domain, mu, &family, &BracketConfig::default())?;
        let witness = br.witness.map(|i| family.members()[i].label.as_str()).unwrap_or("-");
        println!("{name:<36} {:.9} <= |K_mu| <= {:.9}  (r = {}, witness {witness})", br.lower, br.upper, br.r_final);
    }
    Ok(())
}
