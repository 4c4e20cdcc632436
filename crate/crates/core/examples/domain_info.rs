//! Boundary length, chord-arc constant and univalence diagnostics for a
//! polynomial map, plus the rejection of a non-univalent one.
//!
//! ```text
//! cargo run --example domain_info
//! ```

use csmult::geometry::ConformalDomain;
use num_complex::Complex64;

fn main() -> csmult::Result<()> {
    let domain = ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.0)], 512)?;
    let diag = domain.diagnostics();
    println!("phi(z) = z + 0.2 z^2");
    println!("  boundary length s0   = {:.15}", diag.s0);
    println!("  chord-arc constant   = {:.6}", diag.c0);
    println!("  min |phi'| on circle = {:.6}", diag.min_abs_dphi);
    println!("  winding number       = {}", diag.winding_number);

    let table = domain.arc_length_param(256)?;
    let quarter = table.theta_at(0.25 * table.total_length());
    println!("  theta at a quarter of the arc length = {quarter:.12}");

    match ConformalDomain::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.6, 0.0)], 512) {
        Ok(_) => println!("phi(z) = z + 0.6 z^2 unexpectedly accepted"),
        Err(e) => println!("phi(z) = z + 0.6 z^2 rejected: {e}"),
    }
    Ok(())
}
