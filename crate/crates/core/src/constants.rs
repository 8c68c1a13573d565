//! Relative isoperimetric constants derived from the arc quotient, and their
//! comparison with the disc of equal area.
//!
//! `γ_{1/2}(K) = √C(K)` and `γ_α(K) = γ_{1/2}(K)·(2/|K|)^{α−1/2}`; `Φ = γ_{1/2}`,
//! `μ₁ = γ₁`, and the Poincaré constant is bounded by `|K|^{1/2} γ₁ = √2 γ_{1/2}`.

use crate::arc::relaxed_c;
use crate::error::{FenceError, Result};
use crate::geometry::ConvexBody;
use crate::reference;
use serde::Serialize;
use std::f64::consts::SQRT_2;

/// Slack allowed when comparing a body against its equal-area disc.
pub const DISC_COMPARISON_TOL: f64 = 5e-3;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.5 {
        return Err(FenceError::AlphaTooSmall(alpha));
    }
    Ok(())
}

/// `γ_α` from a known arc quotient and area.
pub fn gamma_alpha_from(c_value: f64, area: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(c_value.sqrt() * (2.0 / area).powf(alpha - 0.5))
}

pub fn gamma_alpha(body: &ConvexBody, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    gamma_alpha_from(relaxed_c(body).value, body.area(), alpha)
}

/// `γ_α` of the disc with the given area.
pub fn disc_gamma_alpha(area: f64, alpha: f64) -> Result<f64> {
    gamma_alpha_from(reference::c_disc(), area, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscComparison {
    pub alpha: f64,
    pub value: f64,
    pub disc_value: f64,
    /// `disc_value − value`; nonnegative up to tolerance.
    pub margin: f64,
}

impl DiscComparison {
    pub fn holds(&self) -> bool {
        self.margin >= -DISC_COMPARISON_TOL
    }
}

fn compare_from(c_value: f64, area: f64, alpha: f64) -> Result<DiscComparison> {
    let value = gamma_alpha_from(c_value, area, alpha)?;
    let disc_value = disc_gamma_alpha(area, alpha)?;
    Ok(DiscComparison { alpha, value, disc_value, margin: disc_value - value })
}

pub fn compare_with_disc(body: &ConvexBody, alpha: f64) -> Result<DiscComparison> {
    check_alpha(alpha)?;
    compare_from(relaxed_c(body).value, body.area(), alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincareBound {
    /// `√2 γ_{1/2}(K)`.
    pub bound: f64,
    /// `√2 γ_{1/2}(K♯) = 4/√π`.
    pub disc: f64,
}

pub fn poincare_upper_from(c_value: f64) -> PoincareBound {
    PoincareBound { bound: SQRT_2 * c_value.sqrt(), disc: reference::poincare_disc() }
}

pub fn poincare_upper(body: &ConvexBody) -> PoincareBound {
    poincare_upper_from(relaxed_c(body).value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetricReport {
    pub area: f64,
    pub c_value: f64,
    pub gamma_half: f64,
    pub gamma_alpha: Vec<DiscComparison>,
    pub mu1: f64,
    pub i_upper: f64,
    pub disc: DiscValues,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscValues {
    pub gamma_half: f64,
    pub mu1: f64,
    pub i_upper: f64,
}

impl IsoperimetricReport {
    /// All requested comparisons and the Poincaré chain `√2 γ_{1/2}(K) ≤ √2 γ_{1/2}(K♯)` hold.
    pub fn holds(&self) -> bool {
        self.gamma_alpha.iter().all(DiscComparison::holds) && self.i_upper <= self.disc.i_upper + DISC_COMPARISON_TOL
    }
}

/// Report from a known arc quotient; `alphas` must all be at least 1/2.
pub fn isoperimetric_report_from(c_value: f64, area: f64, alphas: &[f64]) -> Result<IsoperimetricReport> {
    let gamma_alpha = alphas.iter().map(|&a| compare_from(c_value, area, a)).collect::<Result<Vec<_>>>()?;
    let gamma_half = gamma_alpha_from(c_value, area, 0.5)?;
    let mu1 = gamma_alpha_from(c_value, area, 1.0)?;
    let disc_mu1 = disc_gamma_alpha(area, 1.0)?;
    Ok(IsoperimetricReport {
        area,
        c_value,
        gamma_half,
        gamma_alpha,
        mu1,
        i_upper: area.sqrt() * mu1,
        disc: DiscValues { gamma_half: reference::c_disc().sqrt(), mu1: disc_mu1, i_upper: area.sqrt() * disc_mu1 },
    })
}

pub fn isoperimetric_report(body: &ConvexBody, alphas: &[f64]) -> Result<IsoperimetricReport> {
    alphas.iter().try_for_each(|&a| check_alpha(a))?;
    isoperimetric_report_from(relaxed_c(body).value, body.area(), alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{rectangle, regular_ngon};
    use std::f64::consts::PI;

    #[test]
    fn disc_values() {
        let disc = regular_ngon(4096, 1.0).unwrap();
        let g = gamma_alpha(&disc, 0.5).unwrap();
        assert!((g - (8.0 / PI).sqrt()).abs() < 2e-3);
        let g1 = gamma_alpha(&disc, 1.0).unwrap();
        assert!((g1 - 4.0 / PI).abs() < 2e-3);
        let cmp = compare_with_disc(&disc, 0.5).unwrap();
        assert!(cmp.margin.abs() < 2e-3 && cmp.holds());
        let p = poincare_upper(&disc);
        assert!((p.disc - 4.0 / PI.sqrt()).abs() < 1e-15);
        assert!((p.bound - p.disc).abs() < 2e-3);
    }

    #[test]
    fn square() {
        let sq = rectangle(1.0, 1.0);
        assert!((gamma_alpha(&sq, 0.5).unwrap() - SQRT_2).abs() < 1e-9);
        assert!((poincare_upper(&sq).bound - 2.0).abs() < 1e-9);
        for alpha in [0.5, 1.0, 1.7] {
            assert!(compare_with_disc(&sq, alpha).unwrap().margin > 0.0);
        }
    }

    #[test]
    fn alpha_bounds_and_scaling() {
        let sq = rectangle(1.0, 1.0);
        assert_eq!(gamma_alpha(&sq, 0.4), Err(FenceError::AlphaTooSmall(0.4)));
        assert!(isoperimetric_report(&sq, &[0.5, 0.3]).is_err());
        let big = sq.scaled(3.0);
        let half = (gamma_alpha(&big, 0.5).unwrap() - gamma_alpha(&sq, 0.5).unwrap()).abs();
        assert!(half < 1e-9);
        let ratio = gamma_alpha(&big, 1.0).unwrap() / gamma_alpha(&sq, 1.0).unwrap();
        assert!((ratio - 1.0 / 3.0).abs() < 1e-9);
        assert!(gamma_alpha(&big, 1.5).unwrap() < gamma_alpha(&sq, 1.5).unwrap());
    }

    #[test]
    fn report_is_consistent() {
        let r = isoperimetric_report_from(2.0, 1.0, &[0.5, 1.0]).unwrap();
        assert_eq!(r.gamma_alpha[0].value, r.gamma_half);
        assert_eq!(r.gamma_half * r.gamma_half, 2.0f64.sqrt().powi(2));
        assert!((r.i_upper - SQRT_2 * r.gamma_half).abs() < 1e-15);
        assert!((r.disc.i_upper - reference::poincare_disc()).abs() < 1e-15);
        assert!(r.holds());
    }
}
