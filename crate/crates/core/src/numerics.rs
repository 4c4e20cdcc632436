//! Periodic quadrature on equispaced circle grids.
//!
//! Every boundary and level-curve integral in the crate is pulled back to
//! `[0, 2π)` and integrated with the trapezoid rule, which converges
//! geometrically for analytic periodic integrands. Refinement doubles the
//! node count and reuses previous samples (the new nodes are the midpoints
//! of the old ones).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Node count above which integrand samples are evaluated in parallel.
const PAR_THRESHOLD: usize = 4096;

/// Equispaced nodes `offset + 2πj/n`, `j = 0..n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodicGrid {
    n: usize,
    offset: f64,
}

impl PeriodicGrid {
    pub fn new(n: usize, offset: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid needs at least one node".into()));
        }
        let step = TAU / n as f64;
        let offset = offset.rem_euclid(step);
        Ok(Self { n, offset })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn step(&self) -> f64 {
        TAU / self.n as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.offset + TAU * j as f64 / self.n as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.node(j))
    }

    /// Samples `f` at every node, in node order.
    pub fn sample<F>(&self, f: F) -> Vec<Complex64>
    where
        F: Fn(f64) -> Complex64 + Sync,
    {
        sample_nodes(self.n, |j| self.node(j), &f)
    }
}

fn sample_nodes<F, N>(n: usize, node: N, f: &F) -> Vec<Complex64>
where
    F: Fn(f64) -> Complex64 + Sync,
    N: Fn(usize) -> f64 + Sync,
{
    if n >= PAR_THRESHOLD {
        (0..n).into_par_iter().map(|j| f(node(j))).collect()
    } else {
        (0..n).map(|j| f(node(j))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub n_used: usize,
    /// Difference between the last two refinement levels.
    pub est_error: f64,
    pub converged: bool,
}

/// `(2π/n) Σ samples`, for samples taken on one period of an equispaced grid.
pub fn periodic_trapezoid(samples: &[Complex64]) -> Result<Complex64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let sum: Complex64 = samples.iter().sum();
    Ok(sum * (TAU / samples.len() as f64))
}

/// Doubles the grid from `n0` until two successive trapezoid values differ by
/// less than `tol`, or `n_max` nodes would be exceeded. On non-convergence the
/// last value is returned with `converged = false`.
pub fn adaptive_integral<F>(integrand: F, n0: usize, tol: f64, n_max: usize) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    if n0 < 8 {
        return Err(Error::InvalidArgument(format!("n0 = {n0} < 8")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol = {tol} must be positive")));
    }
    let mut n = n0;
    let mut sum: Complex64 = sample_nodes(n, |j| TAU * j as f64 / n as f64, &integrand)
        .into_iter()
        .sum();
    let mut value = sum * (TAU / n as f64);
    check_finite(value)?;
    let mut est_error = f64::INFINITY;
    while 2 * n <= n_max.max(n0) {
        let h = TAU / n as f64;
        let mid: Complex64 = sample_nodes(n, |j| (j as f64 + 0.5) * h, &integrand)
            .into_iter()
            .sum();
        sum += mid;
        n *= 2;
        let next = sum * (TAU / n as f64);
        check_finite(next)?;
        est_error = (next - value).norm();
        value = next;
        if est_error < tol {
            return Ok(QuadratureResult { value, n_used: n, est_error, converged: true });
        }
    }
    Ok(QuadratureResult { value, n_used: n, est_error, converged: false })
}

fn check_finite(v: Complex64) -> Result<()> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { theta: f64::NAN })
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum of a continuous periodic function: scan an `n`-node grid, then
/// refine the best local maxima by golden section within one grid step.
/// Returns `(theta, value)`; the value is never below the grid maximum.
pub fn periodic_max<F: Fn(f64) -> f64>(f: F, n: usize, candidates: usize) -> (f64, f64) {
    let h = TAU / n as f64;
    let values: Vec<f64> = (0..n).map(|j| f(j as f64 * h)).collect();
    let (grid_arg, grid_max) = argmax(&values);
    let mut best = (grid_arg as f64 * h, grid_max);
    for j in local_maxima(&values, candidates) {
        let center = j as f64 * h;
        let (t, v) = golden_section_max(&f, center - h, center + h, 1e-10);
        if v > best.1 {
            best = (t.rem_euclid(TAU), v);
        }
    }
    best
}

/// First index of the largest value (ties resolve to the smallest index).
pub fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (j, &v) in values.iter().enumerate() {
        if v > best.1 {
            best = (j, v);
        }
    }
    best
}

/// Indices of the `k` largest periodic local maxima, largest first.
pub fn local_maxima(values: &[f64], k: usize) -> Vec<usize> {
    let n = values.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&j| {
            let prev = values[(j + n - 1) % n];
            let next = values[(j + 1) % n];
            values[j] >= prev && values[j] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(k);
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ci(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    #[test]
    fn constant_integrand() {
        let v = periodic_trapezoid(&vec![Complex64::new(1.0, 0.0); 8]).unwrap();
        assert!((v.re - TAU).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn pure_harmonic_vanishes() {
        let grid = PeriodicGrid::new(16, 0.0).unwrap();
        let v = periodic_trapezoid(&grid.sample(ci)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn empty_samples_rejected() {
        assert!(matches!(periodic_trapezoid(&[]), Err(Error::EmptySamples)));
    }

    #[test]
    fn kinked_integrand_at_1024_nodes() {
        // |e^{iθ}+1| = 2|cos(θ/2)| has a derivative jump at θ = π, a grid node,
        // so the rule is only second order here: the sum is exactly
        // (4π/n) cot(π/(2n)) = 8 - 2π²/(3n²) + O(n^-4).
        let grid = PeriodicGrid::new(1024, 0.0).unwrap();
        let v = periodic_trapezoid(&grid.sample(|t| Complex64::new((ci(t) + 1.0).norm(), 0.0))).unwrap();
        let n = 1024.0_f64;
        let closed_form = 4.0 * std::f64::consts::PI / n / (std::f64::consts::PI / (2.0 * n)).tan();
        assert!((v.re - closed_form).abs() < 1e-12);
        assert!((v.re - 8.0).abs() < 1e-5);
    }

    #[test]
    fn adaptive_constant_converges_at_first_doubling() {
        let r = adaptive_integral(|_| Complex64::new(3.0, -1.0), 8, 1e-12, 1 << 12).unwrap();
        assert!(r.converged);
        assert_eq!(r.n_used, 16);
        assert!((r.value - Complex64::new(3.0, -1.0) * TAU).norm() < 1e-13);
    }

    #[test]
    fn adaptive_harmonic() {
        let r = adaptive_integral(ci, 8, 1e-12, 1 << 12).unwrap();
        assert!(r.converged && r.value.norm() < 1e-12);
    }

    #[test]
    fn adaptive_kinked_integrand() {
        let r = adaptive_integral(|t| Complex64::new((ci(t) + 1.0).norm(), 0.0), 8, 1e-9, 1 << 20).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 8.0).abs() < 1e-9, "{:?}", r);
    }

    #[test]
    fn adaptive_nonconvergence_is_flagged() {
        let r = adaptive_integral(|t| Complex64::new((ci(t) + 1.0).norm(), 0.0), 8, 1e-14, 64).unwrap();
        assert!(!r.converged);
        assert_eq!(r.n_used, 64);
    }

    #[test]
    fn adaptive_rejects_bad_args() {
        assert!(adaptive_integral(ci, 4, 1e-9, 64).is_err());
        assert!(adaptive_integral(ci, 8, 0.0, 64).is_err());
    }

    #[test]
    fn adaptive_value_equals_trapezoid_at_final_n() {
        let f = |t: f64| Complex64::new((2.0 + t.cos()).recip(), t.sin());
        let r = adaptive_integral(f, 8, 1e-12, 1 << 14).unwrap();
        let grid = PeriodicGrid::new(r.n_used, 0.0).unwrap();
        let direct = periodic_trapezoid(&grid.sample(f)).unwrap();
        assert!((r.value - direct).norm() < 1e-14);
        // halving the converged grid moves the value by less than 4 tol
        let half = PeriodicGrid::new(r.n_used / 2, 0.0).unwrap();
        let coarse = periodic_trapezoid(&half.sample(f)).unwrap();
        assert!((coarse - r.value).norm() < 4e-12);
    }

    #[test]
    fn grid_nodes_increasing() {
        let g = PeriodicGrid::new(10, 0.1).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes.len(), 10);
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(nodes.iter().all(|&t| (0.0..TAU + 0.1).contains(&t)));
    }

    #[test]
    fn periodic_max_refines_between_nodes() {
        let (t, v) = periodic_max(|t| (t - 1.0).cos(), 16, 3);
        assert!((t - 1.0).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn trapezoid_exact_on_trig_polynomials(
            coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..16),
        ) {
            // degree < n = 32: only the constant term survives
            let n = 32;
            let grid = PeriodicGrid::new(n, 0.3).unwrap();
            let samples = grid.sample(|t| {
                coeffs.iter().enumerate().map(|(k, &(a, b))| {
                    let k = k as f64 - 7.0;
                    Complex64::new(a, b) * Complex64::from_polar(1.0, k * t)
                }).sum()
            });
            let v = periodic_trapezoid(&samples).unwrap();
            let c0 = coeffs.get(7).map(|&(a, b)| Complex64::new(a, b)).unwrap_or_default();
            prop_assert!((v - c0 * TAU).norm() < 1e-13);
        }
    }
}
