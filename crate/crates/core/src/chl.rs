//! Constant-halving-length bodies built from an opening-angle profile θ(σ).
//!
//! For every direction σ the body has a halving arc of length `L` and opening
//! θ(σ) with terminal points
//!
//! ```text
//! x(σ) = m(σ) − g(θ)·(−sin(σ − θ/2), cos(σ − θ/2))
//! y(σ) = m(σ) + g(θ)·(−sin(σ + θ/2), cos(σ + θ/2))
//! ```
//!
//! where `m(σ) = ∫₀^σ M(s)(cos s, sin s) ds` and `M = h(θ)·θ′` with `h = f′`.

use crate::error::{FenceError, Result};
use crate::geometry::{CircularArc, ConvexBody, Point2};
use crate::numeric::{romberg, simpson_panel, tau_minus_sin};
use crate::reference;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

/// Below this |τ| the removable singularities switch to their Taylor series.
pub const SERIES_CUTOFF: f64 = 1e-4;
/// Largest admissible opening, √3.
pub const MAX_THETA: f64 = 1.732_050_807_568_877_2;
/// Default number of profile samples over `[−π, π)`.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Sample count of the rounded triangle: a multiple of 12 so its kinks sit on nodes.
pub const ROUNDED_TRIANGLE_SAMPLES: usize = 4104;
/// Harmonic pairs `2n + 1`, `n = 1..=FOURIER_TERMS`, used for the series area.
pub const FOURIER_TERMS: usize = 64;
/// Allowed mismatch of `∫₀^π M (cos, sin)` relative to `L`.
pub const CLOSURE_TOL: f64 = 1e-8;

const ROMBERG_TOL: f64 = 1e-13;

/// `g(τ) = (L/τ)·tan(τ/2)`, the distance from `m` to the arc terminals.
pub fn g_of(tau: f64, l: f64) -> Result<f64> {
    if !(tau.abs() < PI) {
        return Err(FenceError::AngleOutOfRange(tau));
    }
    Ok(g_unchecked(tau, l))
}

fn g_unchecked(tau: f64, l: f64) -> f64 {
    if tau.abs() < SERIES_CUTOFF {
        // L/2·(1 + τ²/12), next term O(τ⁴) < 1e-17.
        0.5 * l * (1.0 + tau * tau / 12.0)
    } else {
        l / tau * (0.5 * tau).tan()
    }
}

/// `h(τ) = f′(τ) = g′(τ)/sin(τ/2) = L(τ − sin τ) / (2τ² cos²(τ/2) sin(τ/2))`.
pub fn h_of(tau: f64, l: f64) -> f64 {
    if tau.abs() < SERIES_CUTOFF {
        // L/6·(1 + 29τ²/120), next term O(τ⁴).
        l / 6.0 * (1.0 + 29.0 * tau * tau / 120.0)
    } else {
        let (s, c) = (0.5 * tau).sin_cos();
        l * tau_minus_sin(tau) / (2.0 * tau * tau * c * c * s)
    }
}

/// `f(τ) = ∫₀^τ h(t) dt`, by Romberg integration.
pub fn f_of(tau: f64, l: f64) -> Result<f64> {
    if !(tau.abs() <= MAX_THETA + 1e-12) {
        return Err(FenceError::AngleOutOfRange(tau));
    }
    Ok(f_unchecked(tau, l))
}

fn f_unchecked(tau: f64, l: f64) -> f64 {
    if tau == 0.0 {
        return 0.0;
    }
    l * romberg(|t| h_of(t, 1.0), 0.0, tau, ROMBERG_TOL)
}

/// Opening-angle profile sampled at `σ_k = −π + 2πk/N`, extended linearly between nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaProfile {
    theta: Vec<f64>,
    l: f64,
    lipschitz_bound: f64,
}

#[derive(Deserialize)]
struct ProfileFile {
    sigma: Vec<f64>,
    theta: Vec<f64>,
    #[serde(rename = "L")]
    l: f64,
}

impl ThetaProfile {
    /// Validates antisymmetry `θ(σ − π) = −θ(σ)`, the bound `|θ| ≤ √3` and `L > 0`.
    pub fn new(theta: Vec<f64>, l: f64) -> Result<Self> {
        let n = theta.len();
        if n < 8 || !n.is_multiple_of(2) {
            return Err(FenceError::InvalidProfile(format!("need an even number (≥ 8) of samples, got {n}")));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(FenceError::InvalidProfile(format!("L must be positive, got {l}")));
        }
        if let Some(k) = theta.iter().position(|t| !t.is_finite() || t.abs() > MAX_THETA) {
            return Err(FenceError::InvalidProfile(format!("theta[{k}] = {} outside [−√3, √3]", theta[k])));
        }
        let half = n / 2;
        for k in half..n {
            if (theta[k - half] + theta[k]).abs() > 1e-12 {
                return Err(FenceError::InvalidProfile(format!("antisymmetry fails at sample {k}")));
            }
        }
        let h = TAU / n as f64;
        let lipschitz_bound = (0..n).map(|k| (theta[(k + 1) % n] - theta[k]).abs() / h).fold(0.0, f64::max);
        Ok(Self { theta, l, lipschitz_bound })
    }

    /// Samples `theta_half` on `[0, π)` and fills `[−π, 0)` by antisymmetry.
    pub fn from_fn(n: usize, l: f64, theta_half: impl Fn(f64) -> f64) -> Result<Self> {
        let n = n + n % 2;
        let half = n / 2;
        let h = TAU / n as f64;
        let mut theta = vec![0.0; n];
        for k in half..n {
            let t = theta_half(-PI + k as f64 * h);
            theta[k] = t;
            theta[k - half] = -t;
        }
        Self::new(theta, l)
    }

    /// θ ≡ 0: the disc of diameter `L`.
    pub fn disc(l: f64) -> Result<Self> {
        Self::new(vec![0.0; DEFAULT_SAMPLES], l)
    }

    /// The triangle wave `θ(σ) = (π − |2π − |6σ − 3π||)/3` on `[0, π)`.
    pub fn rounded_triangle(l: f64) -> Result<Self> {
        Self::from_fn(ROUNDED_TRIANGLE_SAMPLES, l, rounded_triangle_theta)
    }

    /// Parses `{"sigma": [...], "theta": [...], "L": v}` with `sigma` the uniform grid on `[−π, π)`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProfileFile = serde_json::from_str(text).map_err(|e| FenceError::InvalidInput(e.to_string()))?;
        let n = file.theta.len();
        if file.sigma.len() != n {
            return Err(FenceError::InvalidProfile("sigma and theta lengths differ".into()));
        }
        let h = TAU / n.max(1) as f64;
        if let Some(k) = (0..n).find(|&k| (file.sigma[k] - (-PI + k as f64 * h)).abs() > 1e-9) {
            return Err(FenceError::InvalidProfile(format!("sigma[{k}] is not on the uniform grid over [−π, π)")));
        }
        Self::new(file.theta, file.l)
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn halving_length(&self) -> f64 {
        self.l
    }

    pub fn lipschitz_bound(&self) -> f64 {
        self.lipschitz_bound
    }

    pub fn samples(&self) -> &[f64] {
        &self.theta
    }

    pub fn step(&self) -> f64 {
        TAU / self.len() as f64
    }

    pub fn sigma(&self, k: usize) -> f64 {
        -PI + k as f64 * self.step()
    }

    /// Nearest node index to `sigma` (any real, wrapped).
    pub fn node_of(&self, sigma: f64) -> usize {
        let n = self.len();
        (((sigma + PI).rem_euclid(TAU) / self.step()).round() as usize) % n
    }

    /// Slope of the cell starting at node `k`.
    fn cell_slope(&self, k: usize) -> f64 {
        let n = self.len();
        (self.theta[(k + 1) % n] - self.theta[k % n]) / self.step()
    }

    /// Cell index and fraction within it for `sigma`.
    fn locate(&self, sigma: f64) -> (usize, f64) {
        let u = (sigma + PI).rem_euclid(TAU) / self.step();
        let k = (u.floor() as usize).min(self.len() - 1);
        (k, u - k as f64)
    }

    /// Piecewise-linear value of θ at `sigma`.
    pub fn theta_at(&self, sigma: f64) -> f64 {
        let (k, t) = self.locate(sigma);
        let n = self.len();
        self.theta[k] + t * (self.theta[(k + 1) % n] - self.theta[k])
    }

    /// θ′ at `sigma`: the cell slope, or the central difference at a node.
    pub fn theta_prime_at(&self, sigma: f64) -> f64 {
        let (k, t) = self.locate(sigma);
        let n = self.len();
        if t < 1e-9 {
            0.5 * (self.cell_slope(k) + self.cell_slope(k + n - 1))
        } else if t > 1.0 - 1e-9 {
            0.5 * (self.cell_slope(k) + self.cell_slope(k + 1))
        } else {
            self.cell_slope(k)
        }
    }

    /// Negated profile `−θ`.
    pub fn negated(&self) -> Self {
        Self { theta: self.theta.iter().map(|t| -t).collect(), l: self.l, lipschitz_bound: self.lipschitz_bound }
    }
}

/// Triangle wave of the rounded equilateral triangle, for `σ ∈ [0, π)`.
pub fn rounded_triangle_theta(sigma: f64) -> f64 {
    (PI - (TAU - (6.0 * sigma - 3.0 * PI).abs()).abs()) / 3.0
}

/// `M(σ) = h(θ(σ))·θ′(σ)`; equals `L·θ′/6` where θ vanishes.
pub fn m_of(profile: &ThetaProfile, sigma: f64) -> f64 {
    h_of(profile.theta_at(sigma), profile.l) * profile.theta_prime_at(sigma)
}

/// A constant-halving-length body and its three area values.
#[derive(Debug, Clone)]
pub struct ChlBody {
    pub body: ConvexBody,
    pub profile: ThetaProfile,
    /// Integration constant `m(0)`.
    pub m0: Point2,
    pub area_gauss: f64,
    pub area_fourier: f64,
    /// `|∫₀^π M (cos, sin)|`.
    pub closure: f64,
    /// Fourier coefficients `(a_j, b_j)` of `f(θ(σ))`, `j = 0..=2·FOURIER_TERMS + 1`.
    pub spectrum: Vec<(f64, f64)>,
}

/// Per-cell samples at the left node, quarter point, midpoint and three-quarter point.
struct Cell {
    sigma: [f64; 5],
    theta: [f64; 5],
    slope: f64,
}

fn cell(profile: &ThetaProfile, k: usize) -> Cell {
    let n = profile.len();
    let h = profile.step();
    let s0 = profile.sigma(k);
    let (t0, t1) = (profile.theta[k % n], profile.theta[(k + 1) % n]);
    let mut sigma = [0.0; 5];
    let mut theta = [0.0; 5];
    for q in 0..5 {
        let t = q as f64 / 4.0;
        sigma[q] = s0 + t * h;
        theta[q] = t0 + t * (t1 - t0);
    }
    Cell { sigma, theta, slope: (t1 - t0) / h }
}

/// Builds the body, checking closure and convexity.
pub fn build(profile: &ThetaProfile) -> Result<ChlBody> {
    let n = profile.len();
    let half = n / 2;
    let l = profile.l;
    let h = profile.step();
    let integrand = |s: f64, th: f64, slope: f64| Point2::from_angle(s) * (h_of(th, l) * slope);

    // m at every node, integrating from σ = 0 over one full period.
    let mut m = vec![Point2::ORIGIN; n];
    let mut acc = Point2::ORIGIN;
    let mut closure_vec = Point2::ORIGIN;
    for step in 0..n {
        let k = (half + step) % n;
        m[k] = acc;
        let c = cell(profile, k);
        let unwrap = if k < half { TAU } else { 0.0 };
        let f: Vec<Point2> = (0..5).step_by(2).map(|q| integrand(c.sigma[q] + unwrap, c.theta[q], c.slope)).collect();
        acc += Point2::new(simpson_panel(h, f[0].x, f[1].x, f[2].x), simpson_panel(h, f[0].y, f[1].y, f[2].y));
        if step + 1 == half {
            closure_vec = acc;
        }
    }
    let closure = closure_vec.norm();
    if closure > CLOSURE_TOL * l {
        return Err(FenceError::ProfileNotClosed(closure));
    }

    let points: Vec<Point2> = (0..n)
        .map(|k| {
            let (s, th) = (profile.sigma(k), profile.theta[k]);
            m[k] - Point2::new(-(s - 0.5 * th).sin(), (s - 0.5 * th).cos()) * g_unchecked(th, l)
        })
        .collect();
    let body = ConvexBody::new(points).map_err(|e| match e {
        FenceError::NotConvex { index, .. } => FenceError::ProfileNotConvex { sigma: profile.sigma(index) },
        FenceError::CoincidentVertices(i, _) => FenceError::ProfileNotConvex { sigma: profile.sigma(i) },
        other => other,
    })?;

    // ∫₀^π g² and the double-integral term ∫₀^π M(t)[sin t·m_x(t) − cos t·m_y(t)] dt.
    let mut g2 = 0.0;
    let mut double = 0.0;
    for k in half..n {
        let c = cell(profile, k);
        let g = |q: usize| g_unchecked(c.theta[q], l).powi(2);
        g2 += simpson_panel(h, g(0), g(2), g(4));
        let f: Vec<Point2> = (0..5).map(|q| integrand(c.sigma[q], c.theta[q], c.slope)).collect();
        let half_panel = |a: Point2, b: Point2, d: Point2| {
            Point2::new(simpson_panel(0.5 * h, a.x, b.x, d.x), simpson_panel(0.5 * h, a.y, b.y, d.y))
        };
        let m_left = m[k];
        let m_mid = m_left + half_panel(f[0], f[1], f[2]);
        let m_right = m_mid + half_panel(f[2], f[3], f[4]);
        let term = |q: usize, mq: Point2| {
            let s = c.sigma[q];
            h_of(c.theta[q], l) * c.slope * (s.sin() * mq.x - s.cos() * mq.y)
        };
        double += simpson_panel(h, term(0, m_left), term(2, m_mid), term(4, m_right));
    }
    let area_gauss = double + g2;

    // Fourier data of F(σ) = f(θ(σ)) over [−π, π).
    let harmonics = 2 * FOURIER_TERMS + 2;
    let node_f: Vec<f64> = profile.theta.iter().map(|&t| f_unchecked(t, l)).collect();
    let mut spectrum = vec![(0.0, 0.0); harmonics];
    let mut f2 = 0.0;
    for k in 0..n {
        let c = cell(profile, k);
        let fv = [node_f[k], f_unchecked(c.theta[2], l), node_f[(k + 1) % n]];
        let s = [c.sigma[0], c.sigma[2], c.sigma[4]];
        if k >= half {
            f2 += simpson_panel(h, fv[0] * fv[0], fv[1] * fv[1], fv[2] * fv[2]);
        }
        for (j, coef) in spectrum.iter_mut().enumerate() {
            let jf = j as f64;
            coef.0 += simpson_panel(h, fv[0] * (jf * s[0]).cos(), fv[1] * (jf * s[1]).cos(), fv[2] * (jf * s[2]).cos());
            coef.1 += simpson_panel(h, fv[0] * (jf * s[0]).sin(), fv[1] * (jf * s[1]).sin(), fv[2] * (jf * s[2]).sin());
        }
    }
    for coef in spectrum.iter_mut() {
        coef.0 /= PI;
        coef.1 /= PI;
    }
    spectrum[0].0 *= 0.5;
    let series: f64 = (1..=FOURIER_TERMS)
        .map(|i| {
            let j = 2 * i + 1;
            let (a, b) = spectrum[j];
            (a * a + b * b) / ((j * j - 1) as f64)
        })
        .sum();
    let area_fourier = -FRAC_PI_2 * series - f2 + g2;

    Ok(ChlBody {
        body,
        profile: profile.clone(),
        m0: Point2::ORIGIN,
        area_gauss,
        area_fourier,
        closure,
        spectrum,
    })
}

impl ChlBody {
    /// Terminal points `x(σ_k)`, `y(σ_k)` and the opening at node `k`.
    pub fn halving_arc(&self, k: usize) -> CircularArc {
        let n = self.profile.len();
        CircularArc::new(self.body.vertex(k), self.body.vertex(k + n / 2), self.profile.theta[k % n])
    }

    pub fn shoelace_area(&self) -> f64 {
        self.body.area()
    }

    /// Fourier coefficients `(a_j, b_j)` of `f(θ(σ))`.
    pub fn spectrum(&self) -> &[(f64, f64)] {
        &self.spectrum
    }
}

/// Areas of the two parts cut by the construction arc at the node nearest to `sigma`.
pub fn verify_halving(chl: &ChlBody, sigma: f64) -> Result<(f64, f64)> {
    if !(-PI..0.0).contains(&sigma) {
        return Err(FenceError::AngleOutOfRange(sigma));
    }
    let k = chl.profile.node_of(sigma);
    let split = chl.body.split_by_arc(&chl.halving_arc(k))?;
    Ok((split.area_left, split.area_right))
}

/// Outcome of the grid check of `g² − (9/8)f² ≥ L²/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FgReport {
    pub min_margin: f64,
    pub argmin: f64,
    /// Smallest margin over grid points with `τ ≠ 0`.
    pub min_margin_nonzero: f64,
    /// Smallest margin of `(τ/2)² − sin²(τ/2) − sin⁴(τ/2)/(9cos²(τ/2))` on the `(0, π/2)` grid.
    pub sine_margin: f64,
}

/// `g²(τ) − (9/8)f²(τ) − L²/4`.
pub fn fg_margin(tau: f64, l: f64) -> Result<f64> {
    let g = g_of(tau, l)?;
    let f = f_of(tau, l)?;
    Ok(g * g - 9.0 / 8.0 * f * f - 0.25 * l * l)
}

/// `(τ/2)² − sin²(τ/2) − sin⁴(τ/2)/(9cos²(τ/2))`.
pub fn sine_margin(tau: f64) -> f64 {
    let (s, c) = (0.5 * tau).sin_cos();
    0.25 * tau * tau - s * s - s.powi(4) / (9.0 * c * c)
}

/// Evaluates both inequalities on the given `τ` grid (points outside the
/// respective domains are skipped for the second).
pub fn check_fg_inequality(l: f64, grid: &[f64]) -> Result<FgReport> {
    let mut rep = FgReport {
        min_margin: f64::INFINITY,
        argmin: f64::NAN,
        min_margin_nonzero: f64::INFINITY,
        sine_margin: f64::INFINITY,
    };
    for &tau in grid {
        let m = fg_margin(tau, l)?;
        if m < rep.min_margin {
            rep.min_margin = m;
            rep.argmin = tau;
        }
        if tau != 0.0 {
            rep.min_margin_nonzero = rep.min_margin_nonzero.min(m);
        }
        if tau > 0.0 && tau < FRAC_PI_2 {
            rep.sine_margin = rep.sine_margin.min(sine_margin(tau));
        }
    }
    Ok(rep)
}

/// `I = ∫₀^{π/3} (cos t / t)(1/t − 1/tan t) dt`.
pub fn rounded_triangle_i() -> f64 {
    romberg(i_integrand, 0.0, FRAC_PI_3, ROMBERG_TOL)
}

fn i_integrand(t: f64) -> f64 {
    if t.abs() < SERIES_CUTOFF {
        // 1/3 − 13t²/90, next term O(t⁴).
        1.0 / 3.0 - 13.0 * t * t / 90.0
    } else {
        t.cos() / t * (1.0 / t - 1.0 / t.tan())
    }
}

/// Closed-form area of the rounded triangle.
pub fn rounded_triangle_area_analytic(l: f64) -> f64 {
    l * l * reference::rounded_triangle_area(rounded_triangle_i())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// f integrand exactly as defined, without simplification.
    fn raw_f_integrand(t: f64) -> f64 {
        let tan = (0.5 * t).tan();
        0.5 * (1.0 - 2.0 / t * tan + tan * tan) / (t * (0.5 * t).sin())
    }

    /// Composite Simpson with a million panels, starting just off the singularity.
    fn brute_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let n = 1_000_000;
        let h = (b - a) / n as f64;
        (0..n).map(|k| simpson_panel(h, f(a + k as f64 * h), f(a + (k as f64 + 0.5) * h), f(a + (k + 1) as f64 * h))).sum()
    }

    #[test]
    fn g_values() {
        assert_eq!(g_of(0.0, 2.0).unwrap(), 1.0);
        assert!((g_of(FRAC_PI_2, 1.0).unwrap() - 2.0 / PI).abs() < 1e-15);
        assert_eq!(g_of(0.7, 1.0).unwrap(), g_of(-0.7, 1.0).unwrap());
        assert!((g_of(2e-4, 1.0).unwrap() - g_of(0.99e-4, 1.0).unwrap()).abs() < 1e-8);
        assert!(g_of(PI, 1.0).is_err());
    }

    #[test]
    fn h_matches_raw_integrand_and_series() {
        for &t in &[1e-3, 0.1, 0.5, 1.0, 1.7] {
            assert!((h_of(t, 1.0) - raw_f_integrand(t)).abs() < 1e-9, "{t}");
        }
        // Series branch against the closed form just above the cutoff.
        let t: f64 = 1.0001e-4;
        let (s, c) = (0.5 * t).sin_cos();
        let closed = tau_minus_sin(t) / (2.0 * t * t * c * c * s);
        assert!((h_of(0.9999e-4, 1.0) - closed).abs() < 1e-12);
        assert!((h_of(0.0, 6.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn f_against_brute_force() {
        let eps = 1e-6;
        // ∫₀^ε of the integrand ≈ ε/3.
        let brute = eps / 6.0 + brute_simpson(raw_f_integrand, eps, 1.0);
        assert!((f_of(1.0, 1.0).unwrap() - brute).abs() < 1e-10);
        assert!((f_of(1.0, 1.0).unwrap() - 0.181_572_213_204_822_7).abs() < 1e-13);
        assert!((f_of(MAX_THETA, 1.0).unwrap() - 0.388_195_214_644_388_6).abs() < 1e-13);
        assert_eq!(f_of(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(f_of(-0.8, 1.0).unwrap(), -f_of(0.8, 1.0).unwrap());
        assert!(f_of(1.8, 1.0).is_err());
    }

    #[test]
    fn i_constant_against_brute_force() {
        let eps = 1e-6;
        let brute = eps / 3.0 + brute_simpson(|t| t.cos() / t * (1.0 / t - 1.0 / t.tan()), eps, FRAC_PI_3);
        let i = rounded_triangle_i();
        assert!((i - brute).abs() < 1e-10);
        assert!((i - 0.294_926_921_299_462).abs() < 1e-12);
        assert!(i_integrand(1e-8).is_finite());
        assert!((i_integrand(0.9e-4) - i_integrand(1.1e-4)).abs() < 1e-8);
    }

    #[test]
    fn rounded_triangle_values() {
        assert_eq!(rounded_triangle_theta(0.0), 0.0);
        assert!((rounded_triangle_theta(FRAC_PI_2) + FRAC_PI_3).abs() < 1e-15);
        assert!((rounded_triangle_theta(PI / 6.0) - FRAC_PI_3).abs() < 1e-15);
        let p = ThetaProfile::rounded_triangle(1.0).unwrap();
        let n = p.len();
        for k in n / 2..n {
            assert_eq!(p.samples()[k - n / 2], -p.samples()[k]);
        }
        assert!((p.lipschitz_bound() - 2.0).abs() < 1e-9);
        assert!((rounded_triangle_area_analytic(1.0) - 0.798_144_000_519_974).abs() < 1e-12);
    }

    #[test]
    fn m_values() {
        let disc = ThetaProfile::disc(1.0).unwrap();
        assert_eq!(m_of(&disc, 0.3), 0.0);
        let p = ThetaProfile::rounded_triangle(1.0).unwrap();
        // θ crosses zero at π/3 with slope −2.
        assert!((m_of(&p, FRAC_PI_3) + 1.0 / 3.0).abs() < 1e-12);
        // Finite-difference oracle M = d/dσ f(θ(σ)) inside a linear piece.
        let s = 0.9;
        let d = 1e-5;
        let fd = (f_of(p.theta_at(s + d), 1.0).unwrap() - f_of(p.theta_at(s - d), 1.0).unwrap()) / (2.0 * d);
        assert!((m_of(&p, s) - fd).abs() < 1e-7);
        let neg = p.negated();
        for k in 0..50 {
            let s = -3.0 + 0.12 * k as f64;
            assert!((m_of(&neg, s) + m_of(&p, s)).abs() < 1e-15);
        }
    }

    #[test]
    fn disc_build() {
        let chl = build(&ThetaProfile::disc(1.0).unwrap()).unwrap();
        let target = PI / 4.0;
        assert!((chl.area_gauss - target).abs() < 1e-12);
        assert!((chl.area_fourier - target).abs() < 1e-12);
        assert!((chl.shoelace_area() - target).abs() < 1e-6);
        let (a, b) = verify_halving(&chl, -1.0).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!((a - PI / 8.0).abs() < 1e-6);
    }

    #[test]
    fn rounded_triangle_build() {
        let chl = build(&ThetaProfile::rounded_triangle(1.0).unwrap()).unwrap();
        let exact = rounded_triangle_area_analytic(1.0);
        assert!(chl.closure < 1e-8);
        assert!((chl.area_gauss - exact).abs() < 1e-5 * exact, "{}", chl.area_gauss);
        assert!((chl.area_fourier - chl.area_gauss).abs() < 1e-5 * exact, "{}", chl.area_fourier);
        assert!((chl.shoelace_area() - chl.area_gauss).abs() < 1e-5 * exact, "{}", chl.shoelace_area());
        for &s in &[-FRAC_PI_2, -0.3, -2.9] {
            let (a, b) = verify_halving(&chl, s).unwrap();
            assert!((a - b).abs() < 1e-4 * exact);
        }
        for &(a, b) in chl.spectrum().iter().step_by(2) {
            assert!(a.abs() < 1e-6 && b.abs() < 1e-6);
        }
        assert!(chl.spectrum()[1].0.abs() < 1e-6 && chl.spectrum()[1].1.abs() < 1e-6);
    }

    #[test]
    fn open_profile_rejected() {
        // A single bump breaks ∫ M (cos, sin) = 0.
        let p = ThetaProfile::from_fn(1024, 1.0, |s| 0.3 * (s.sin()).powi(2) * (1.0 + s.cos())).unwrap();
        assert!(matches!(build(&p), Err(FenceError::ProfileNotClosed(_)) | Err(FenceError::ProfileNotConvex { .. })));
    }

    #[test]
    fn profile_validation() {
        assert!(ThetaProfile::new(vec![0.1; 16], 1.0).is_err());
        assert!(ThetaProfile::new(vec![0.0; 7], 1.0).is_err());
        assert!(ThetaProfile::new(vec![0.0; 16], -1.0).is_err());
        let mut big = vec![0.0; 16];
        big[9] = 2.0;
        big[1] = -2.0;
        assert!(ThetaProfile::new(big, 1.0).is_err());
        let n = 16;
        let h = TAU / n as f64;
        let sigma: Vec<f64> = (0..n).map(|k| -PI + k as f64 * h).collect();
        let text = serde_json::json!({"sigma": sigma, "theta": vec![0.0; n], "L": 2.0}).to_string();
        assert_eq!(ThetaProfile::from_json(&text).unwrap().halving_length(), 2.0);
    }

    #[test]
    fn fg_inequality() {
        let grid: Vec<f64> = (0..=1000).map(|k| -MAX_THETA + 2.0 * MAX_THETA * k as f64 / 1000.0).collect();
        let rep = check_fg_inequality(1.0, &grid).unwrap();
        assert!(rep.min_margin >= -1e-10);
        assert!(rep.min_margin_nonzero > 0.0);
        assert!(rep.sine_margin > 0.0);
        assert_eq!(fg_margin(0.0, 1.0).unwrap(), 0.0);
        for &(t, expected) in &[(0.5, 0.002_659_489_237), (1.0, 0.011_356_883_225), (1.5, 0.028_731_656_154), (MAX_THETA, 0.041_311_173_775)] {
            assert!((fg_margin(t, 1.0).unwrap() - expected).abs() < 1e-11, "{t}");
        }
    }
}
