//! Cauchy–Stieltjes transforms of atoms and densities, and the moment test
//! that detects measures with vanishing transform.

use csmult::cauchy::{cauchy_transform, exterior_moment_test, knull_check, standard_interior_grid, BoundaryMeasure};
use csmult::geometry::ConformalDomain;
use csmult::spaces::{AnalyticFunction, Rational};
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    let domain = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let line = BoundaryMeasure::cauchy_line(&domain)?;
    let delta = BoundaryMeasure::delta(&domain, 0.0, Complex64::new(1.0, 0.0))?;
    for p in [Complex64::new(0.0, 0.0), Complex64::new(0.3, 0.2), Complex64::new(-0.5, -0.4)] {
        println!(
            "z = {p:.2}: K[dzeta/2 pi i] = {:.14}, K[delta at 1.2] = {:.14}",
            cauchy_transform(&domain, &line, p)?,
            cauchy_transform(&domain, &delta, p)?
        );
    }

    // a density analytic outside the curve and zero at infinity is annihilated
    let g = AnalyticFunction::Rational(Rational::pole(Complex64::new(0.1, 0.2), 2, Complex64::new(1.0, -1.0)));
    let mu = BoundaryMeasure::complex_line(&domain, g)?;
    let moments = exterior_moment_test(&domain, &mu, 6)?;
    let worst = moments.iter().map(|m| m.norm()).fold(0.0, f64::max);
    println!("max |m_-k|, k = 1..6: {worst:.2e}");
    println!("max |K_mu| on the probe points: {:.2e}", knull_check(&domain, &mu, &standard_interior_grid())?);
    Ok(())
}
