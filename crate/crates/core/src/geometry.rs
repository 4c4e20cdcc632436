//! Jordan domains given as images of the unit disc under a polynomial map.
//!
//! A domain is `G = φ(D)` with `φ(z) = Σ_{k≥1} c_k z^k`, so `φ(0) = 0 ∈ G`.
//! The boundary `ℓ` is `θ ↦ φ(e^{iθ})` and the level curves `ℓ_r` are
//! `θ ↦ φ(r e^{iθ})`, all positively oriented.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::adaptive_integral;
use crate::poly::Poly;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Radii on which `φ'` is sampled during validation.
const CHECK_RADII: [f64; 4] = [0.5, 0.9, 0.99, 1.0];

/// A validated polynomial conformal image of the unit disc.
#[derive(Clone, Debug)]
pub struct ConformalDomain {
    coeffs: Vec<Complex64>,
    phi: Poly,
    dphi: Poly,
    n_check: usize,
    s0: f64,
    c0: f64,
    diameter: f64,
    arc: Arc<ArcLengthSeries>,
}

/// Construction diagnostics reported by `domain-info`.
#[derive(Clone, Debug, Serialize)]
pub struct DomainDiagnostics {
    pub s0: f64,
    pub c0: f64,
    pub n_check: usize,
    /// Smallest `|φ'|` over the validation circles.
    pub min_abs_dphi: f64,
    /// Zeros of `φ'` (all outside the closed disc for a valid domain).
    pub dphi_zeros: Vec<Complex64>,
    /// Smallest separation of non-adjacent boundary check nodes.
    pub min_node_separation: f64,
    pub winding_number: i64,
}

impl ConformalDomain {
    /// The unit disc, `φ(z) = z`.
    pub fn disc() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0)], 512).expect("identity map is univalent")
    }

    /// Builds and validates the domain for `φ(z) = Σ coeffs[k-1] z^k`.
    pub fn new(coeffs: Vec<Complex64>, n_check: usize) -> Result<Self> {
        if coeffs.is_empty() || coeffs[0].norm() == 0.0 {
            return Err(Error::DegenerateMap);
        }
        if n_check < 16 {
            return Err(Error::InvalidArgument(format!("n_check = {n_check} < 16")));
        }
        let mut full = vec![Complex64::new(0.0, 0.0)];
        full.extend_from_slice(&coeffs);
        let phi = Poly::new(full);
        let dphi = phi.derivative();

        if let Some(z) = dphi.roots().into_iter().find(|z| z.norm() <= 1.0 + 1e-12) {
            return Err(Error::DerivativeVanishes { z });
        }
        let scale = coeffs[0].norm();
        for &r in &CHECK_RADII {
            for j in 0..n_check {
                let z = Complex64::from_polar(r, TAU * j as f64 / n_check as f64);
                if dphi.eval(z).norm() <= 1e-12 * scale {
                    return Err(Error::DerivativeVanishes { z });
                }
            }
        }
        let boundary: Vec<Complex64> = (0..n_check)
            .map(|j| phi.eval(Complex64::from_polar(1.0, TAU * j as f64 / n_check as f64)))
            .collect();
        check_simple_polygon(&boundary)?;

        let arc = Arc::new(ArcLengthSeries::new(&dphi));
        let s0 = adaptive_integral(
            |t| Complex64::new(dphi.eval(Complex64::from_polar(1.0, t)).norm(), 0.0),
            64,
            1e-13,
            1 << 18,
        )?
        .value
        .re;
        let diameter = polygon_diameter(&boundary);
        let mut domain = Self { coeffs, phi, dphi, n_check, s0, c0: 1.0, diameter, arc };
        domain.c0 = domain.chord_arc_constant(n_check.max(64))?.c0;
        Ok(domain)
    }

    /// Coefficients `(c_1, …, c_m)` as supplied.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_disc(&self) -> bool {
        self.phi.degree() == 1 && self.coeffs[0] == Complex64::new(1.0, 0.0)
    }

    pub fn n_check(&self) -> usize {
        self.n_check
    }

    pub fn phi(&self, z: Complex64) -> Complex64 {
        self.phi.eval(z)
    }

    pub fn dphi(&self, z: Complex64) -> Complex64 {
        self.dphi.eval(z)
    }

    pub fn phi_poly(&self) -> &Poly {
        &self.phi
    }

    pub fn dphi_poly(&self) -> &Poly {
        &self.dphi
    }

    /// Arc length of `ℓ`.
    pub fn s0(&self) -> f64 {
        self.s0
    }

    /// Cached chord-arc constant estimate.
    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// `(ζ, dζ/dθ)` at `φ(r e^{iθ})`.
    pub fn boundary_point(&self, r: f64, theta: f64) -> (Complex64, Complex64) {
        let z = Complex64::from_polar(r, theta);
        (self.phi.eval(z), I * z * self.dphi.eval(z))
    }

    pub fn level_curve(&self, r: f64) -> Result<LevelCurve<'_>> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::InvalidArgument(format!("level radius r = {r} not in (0, 1]")));
        }
        Ok(LevelCurve { domain: self, r })
    }

    /// The unique `z` in the open disc with `φ(z) = w`, if `w ∈ G`; a point of
    /// the unit circle if `w ∈ ℓ`. Returns the root of smallest modulus when it
    /// lies in the closed disc.
    pub fn preimage(&self, w: Complex64) -> Option<Complex64> {
        let shifted = self.phi.add(&Poly::constant(-w));
        shifted
            .roots()
            .into_iter()
            .min_by(|a, b| a.norm().total_cmp(&b.norm()))
            .filter(|z| z.norm() <= 1.0 + 1e-12)
    }

    /// Whether `w` lies strictly inside `ℓ`.
    pub fn contains(&self, w: Complex64) -> bool {
        self.preimage(w).is_some_and(|z| z.norm() < 1.0 - 1e-12)
    }

    /// Winding number of the boundary polygon with `n` nodes about `w`.
    pub fn winding_number(&self, w: Complex64, n: usize) -> i64 {
        let pts: Vec<Complex64> = (0..n).map(|j| self.boundary_point(1.0, TAU * j as f64 / n as f64).0 - w).collect();
        let total: f64 = (0..n).map(|j| (pts[(j + 1) % n] / pts[j]).arg()).sum();
        (total / TAU).round() as i64
    }

    /// Smallest distance from `w` to the boundary, sampled on `n` nodes.
    pub fn boundary_distance(&self, w: Complex64, n: usize) -> f64 {
        (0..n)
            .map(|j| (self.boundary_point(1.0, TAU * j as f64 / n as f64).0 - w).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest distance between boundary check nodes.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Tabulated arc-length parametrization of `ℓ` on an `n`-node θ grid.
    pub fn arc_length_param(&self, n: usize) -> Result<ArcLengthParam> {
        if n < 64 {
            return Err(Error::InvalidArgument(format!("arc-length table needs n >= 64, got {n}")));
        }
        let thetas: Vec<f64> = (0..=n).map(|j| TAU * j as f64 / n as f64).collect();
        let s: Vec<f64> = thetas.iter().map(|&t| self.arc.s(t)).collect();
        Ok(ArcLengthParam { thetas, s, arc: Arc::clone(&self.arc), dphi: self.dphi.clone() })
    }

    /// Minimum of `|z(s_i) − z(s_j)| / d(s_i, s_j)` over pairs of `n` nodes
    /// equispaced in arc length, `d` the geodesic arc distance; clamped to `(0, 1]`.
    pub fn chord_arc_constant(&self, n: usize) -> Result<ChordArcReport> {
        let param = self.arc_length_param(n)?;
        let s0 = param.total_length();
        let pts: Vec<Complex64> = (0..n)
            .map(|i| self.boundary_point(1.0, param.theta_at(s0 * i as f64 / n as f64)).0)
            .collect();
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..n {
            for j in (i + 1)..n {
                let gap = (j - i).min(n - (j - i)) as f64 * s0 / n as f64;
                let ratio = (pts[i] - pts[j]).norm() / gap;
                if ratio < best.0 {
                    best = (ratio, i, j);
                }
            }
        }
        let (raw, i, j) = best;
        let degenerate = !(raw > f64::MIN_POSITIVE);
        Ok(ChordArcReport {
            c0: if degenerate { 0.0 } else { raw.min(1.0) },
            raw,
            argmin: (i, j),
            n,
            degenerate,
        })
    }

    pub fn diagnostics(&self) -> DomainDiagnostics {
        let n = self.n_check;
        let mut min_abs_dphi = f64::INFINITY;
        for &r in &CHECK_RADII {
            for j in 0..n {
                let z = Complex64::from_polar(r, TAU * j as f64 / n as f64);
                min_abs_dphi = min_abs_dphi.min(self.dphi.eval(z).norm());
            }
        }
        let pts: Vec<Complex64> = (0..n).map(|j| self.boundary_point(1.0, TAU * j as f64 / n as f64).0).collect();
        let mut sep = f64::INFINITY;
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                sep = sep.min((pts[i] - pts[j]).norm());
            }
        }
        DomainDiagnostics {
            s0: self.s0,
            c0: self.c0,
            n_check: n,
            min_abs_dphi,
            dphi_zeros: self.dphi.roots(),
            min_node_separation: sep,
            winding_number: self.winding_number(Complex64::new(0.0, 0.0), n),
        }
    }
}

/// The level curve `ℓ_r = φ(|z| = r)`.
#[derive(Clone, Copy, Debug)]
pub struct LevelCurve<'a> {
    domain: &'a ConformalDomain,
    r: f64,
}

impl LevelCurve<'_> {
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Disc parameter `r e^{iθ}`.
    pub fn z(&self, theta: f64) -> Complex64 {
        Complex64::from_polar(self.r, theta)
    }

    /// `(ζ(θ), dζ/dθ)`.
    pub fn point(&self, theta: f64) -> (Complex64, Complex64) {
        self.domain.boundary_point(self.r, theta)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChordArcReport {
    pub c0: f64,
    /// Unclamped minimum ratio.
    pub raw: f64,
    pub argmin: (usize, usize),
    pub n: usize,
    /// Set when the minimum ratio underflows.
    pub degenerate: bool,
}

/// Fourier-series antiderivative of `|φ'(e^{iθ})|`.
#[derive(Debug)]
struct ArcLengthSeries {
    mean: f64,
    /// `(k, c_k)` for `k ≥ 1`, the negative modes being the conjugates.
    modes: Vec<(f64, Complex64)>,
}

impl ArcLengthSeries {
    fn new(dphi: &Poly) -> Self {
        let mut m = 256;
        loop {
            let mut buf: Vec<Complex64> = (0..m)
                .map(|j| Complex64::new(dphi.eval(Complex64::from_polar(1.0, TAU * j as f64 / m as f64)).norm(), 0.0))
                .collect();
            FftPlanner::new().plan_fft_forward(m).process(&mut buf);
            let scale = 1.0 / m as f64;
            let mean = buf[0].re * scale;
            let tail = buf[m / 4..m / 2].iter().map(|c| c.norm() * scale).fold(0.0, f64::max);
            if tail < 1e-17 * mean || m >= 1 << 16 {
                let modes = buf[1..m / 2]
                    .iter()
                    .enumerate()
                    .map(|(k, c)| ((k + 1) as f64, c * scale))
                    .filter(|(_, c)| c.norm() > 1e-18 * mean)
                    .collect();
                return Self { mean, modes };
            }
            m *= 2;
        }
    }

    /// `∫_0^θ |φ'(e^{it})| dt`.
    fn s(&self, theta: f64) -> f64 {
        let osc: f64 = self
            .modes
            .iter()
            .map(|&(k, c)| 2.0 * (c * (Complex64::from_polar(1.0, k * theta) - 1.0) / (I * k)).re)
            .sum();
        self.mean * theta + osc
    }
}

/// Monotone table of `s(θ)` with its inverse `s ↦ θ`.
#[derive(Clone, Debug)]
pub struct ArcLengthParam {
    thetas: Vec<f64>,
    s: Vec<f64>,
    arc: Arc<ArcLengthSeries>,
    dphi: Poly,
}

impl ArcLengthParam {
    pub fn total_length(&self) -> f64 {
        *self.s.last().expect("table is nonempty")
    }

    /// Tabulated `(θ_j, s(θ_j))`, including the closing node `θ = 2π`.
    pub fn table(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.thetas.iter().copied().zip(self.s.iter().copied())
    }

    pub fn s_at(&self, theta: f64) -> f64 {
        self.arc.s(theta)
    }

    /// `θ(s)` for `s ∈ [0, s0]`: linear interpolation in the table followed by
    /// Newton polishing on the series.
    pub fn theta_at(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, self.total_length());
        let k = match self.s.binary_search_by(|v| v.total_cmp(&s)) {
            Ok(k) => return self.thetas[k],
            Err(k) => k.clamp(1, self.s.len() - 1),
        };
        let (s_lo, s_hi) = (self.s[k - 1], self.s[k]);
        let (t_lo, t_hi) = (self.thetas[k - 1], self.thetas[k]);
        let mut theta = t_lo + (t_hi - t_lo) * (s - s_lo) / (s_hi - s_lo);
        for _ in 0..4 {
            let speed = self.dphi.eval(Complex64::from_polar(1.0, theta)).norm();
            let step = (self.arc.s(theta) - s) / speed;
            theta = (theta - step).clamp(t_lo, t_hi);
            if step.abs() < 1e-15 {
                break;
            }
        }
        theta
    }
}

fn polygon_diameter(pts: &[Complex64]) -> f64 {
    let mut d = 0.0_f64;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

fn check_simple_polygon(pts: &[Complex64]) -> Result<()> {
    let n = pts.len();
    let cross = |a: Complex64, b: Complex64, c: Complex64| ((b - a).conj() * (c - a)).im;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if (a - c).norm() == 0.0 {
                return Err(Error::SelfIntersection { i, j });
            }
            let d1 = cross(a, b, c);
            let d2 = cross(a, b, d);
            let d3 = cross(c, d, a);
            let d4 = cross(c, d, b);
            if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                return Err(Error::SelfIntersection { i, j });
            }
        }
    }
    Ok(())
}
