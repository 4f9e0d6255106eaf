//! Comparative statics of the equilibrium wage differential.
//!
//! The `δ` derivative holds `s0` fixed and moves `s1 = s0 - δ`, so that
//! `Δw(δ) = s0²/δ - s0`.

use serde::{Deserialize, Serialize};

use crate::model::{check_ordering, spne_wage_differential};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaticsReport {
    pub d_dw_ds1: f64,
    pub d_dw_ds0: f64,
    pub d_dw_ddelta: f64,
    pub fd_ds1: f64,
    pub fd_ds0: f64,
    pub fd_ddelta: f64,
    pub max_rel_error: f64,
}

impl StaticsReport {
    /// Signs of the three stylized facts: `∂/∂s1 > 0`, `∂/∂s0 < 0`, `∂/∂δ < 0`.
    pub fn signs_hold(&self) -> bool {
        self.d_dw_ds1 > 0.0 && self.d_dw_ds0 < 0.0 && self.d_dw_ddelta < 0.0
    }
}

pub fn d_dw_d_s1(s0: f64, s1: f64) -> Result<f64> {
    check_ordering(s0, s1)?;
    let d = s0 - s1;
    Ok(s0 * s0 / (d * d))
}

pub fn d_dw_d_s0(s0: f64, s1: f64) -> Result<f64> {
    check_ordering(s0, s1)?;
    let d = s0 - s1;
    Ok(-s1 * s1 / (d * d))
}

pub fn d_dw_d_delta(s0: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < s0) {
        return Err(Error::InvalidParameters(format!("requires 0 < delta < s0, got s0 = {s0}, delta = {delta}")));
    }
    Ok(-s0 * s0 / (delta * delta))
}

/// Default finite-difference step, `1e-5` of the tighter domain margin.
pub fn default_step(s0: f64, s1: f64) -> f64 {
    1e-5 * s1.min(s0 - s1)
}

/// Relative tolerance accepted for a central difference with step `h` on a
/// gap `s0 - s1`: the `O(h²)` truncation term, floored at `1e-6`.
pub fn tolerance(gap: f64, h: f64) -> f64 {
    let ratio = h / gap;
    1e-6f64.max(10.0 * ratio * ratio)
}

/// Central differences of the closed-form wage differential against the
/// analytic derivatives.
pub fn verify_statics(s0: f64, s1: f64, h: f64) -> Result<StaticsReport> {
    check_ordering(s0, s1)?;
    if !(h > 0.0) {
        return Err(Error::StepTooLarge { step: h, limit: 0.0 });
    }
    let gap = s0 - s1;
    if gap < 10.0 * h {
        return Err(Error::NearSingular { gap, limit: 10.0 * h });
    }
    let limit = s1.min(gap) / 4.0;
    if h >= limit {
        return Err(Error::StepTooLarge { step: h, limit });
    }

    let fd_ds1 = central(|x| spne_wage_differential(s0, x), s1, h)?;
    let fd_ds0 = central(|x| spne_wage_differential(x, s1), s0, h)?;
    let fd_ddelta = central(|d| spne_wage_differential(s0, s0 - d), gap, h)?;

    let d_dw_ds1 = d_dw_d_s1(s0, s1)?;
    let d_dw_ds0 = d_dw_d_s0(s0, s1)?;
    let d_dw_ddelta = d_dw_d_delta(s0, gap)?;

    let max_rel_error = [(fd_ds1, d_dw_ds1), (fd_ds0, d_dw_ds0), (fd_ddelta, d_dw_ddelta)]
        .iter()
        .map(|(fd, exact)| ((fd - exact) / exact).abs())
        .fold(0.0, f64::max);

    Ok(StaticsReport { d_dw_ds1, d_dw_ds0, d_dw_ddelta, fd_ds1, fd_ds0, fd_ddelta, max_rel_error })
}

fn central<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (hi, lo) = (x + h, x - h);
    Ok((f(hi)? - f(lo)?) / (hi - lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_examples() {
        assert_eq!(d_dw_d_s1(2.0, 1.0).unwrap(), 4.0);
        assert_eq!(d_dw_d_s1(4.0, 2.0).unwrap(), 4.0);
        assert_eq!(d_dw_d_s1(3.0, 1.0).unwrap(), 2.25);
        assert_eq!(d_dw_d_s0(2.0, 1.0).unwrap(), -1.0);
        assert_eq!(d_dw_d_s0(4.0, 2.0).unwrap(), -1.0);
        assert_eq!(d_dw_d_s0(3.0, 2.0).unwrap(), -4.0);
        assert_eq!(d_dw_d_delta(2.0, 1.0).unwrap(), -4.0);
        assert_eq!(d_dw_d_delta(3.0, 1.0).unwrap(), -9.0);
        assert_eq!(d_dw_d_delta(2.0, 0.5).unwrap(), -16.0);
    }

    #[test]
    fn domain_violations() {
        assert!(d_dw_d_s1(1.0, 2.0).is_err());
        assert!(d_dw_d_s0(1.0, 1.0).is_err());
        assert!(d_dw_d_delta(2.0, 2.0).is_err());
        assert!(d_dw_d_delta(2.0, 0.0).is_err());
    }

    #[test]
    fn delta_form_agrees_with_wage_differential() {
        // Δw(δ) = s0²/δ - s0 at δ = 1, s0 = 2
        assert_eq!(4.0 / 1.0 - 2.0, spne_wage_differential(2.0, 1.0).unwrap());
    }

    #[test]
    fn verification_examples() {
        let r = verify_statics(2.0, 1.0, 1e-5).unwrap();
        assert!(r.max_rel_error < 1e-6);
        assert!(r.signs_hold());
        let r = verify_statics(4.0, 2.0, 1e-5).unwrap();
        assert!((r.fd_ds1 - 4.0).abs() < 1e-6);
        let r = verify_statics(10.0, 9.0, 1e-6).unwrap();
        assert_eq!(r.d_dw_ddelta, -100.0);
        assert!(r.max_rel_error < 1e-6);
    }

    #[test]
    fn near_singular_instances_rejected() {
        assert!(matches!(verify_statics(2.0, 1.999_999_9, 1e-3), Err(Error::NearSingular { .. })));
    }

    #[test]
    fn oversized_step_rejected() {
        // gap is large but s1 is small
        assert!(matches!(verify_statics(10.0, 0.01, 0.005), Err(Error::StepTooLarge { .. })));
        assert!(verify_statics(2.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn symmetry_identity() {
        for &(s0, s1) in &[(2.0, 1.0), (5.0, 0.3), (9.0, 8.5)] {
            let lhs = d_dw_d_s1(s0, s1).unwrap() * s1 * s1;
            let rhs = -d_dw_d_s0(s0, s1).unwrap() * s0 * s0;
            assert!((lhs - rhs).abs() <= 1e-12 * lhs);
        }
    }

    #[test]
    fn delta_derivative_matches_difference_of_reduced_form() {
        let s0 = 3.0;
        for &delta in &[0.2, 1.0, 2.5] {
            let reduced = |d: f64| s0 * s0 / d - s0;
            let h = 1e-6;
            let fd = (reduced(delta + h) - reduced(delta - h)) / (2.0 * h);
            let exact = d_dw_d_delta(s0, delta).unwrap();
            assert!(((fd - exact) / exact).abs() < 1e-6);
        }
    }
}
