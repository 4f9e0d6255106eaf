//! Numerical backward induction.
//!
//! Re-derives the equilibrium by maximizing the agent's utility over effort
//! and then the principal's objective over the wage differential, without
//! using the closed-form solutions to locate either optimum. Default search
//! brackets are sized from the model's natural scales (`s1` and the gross
//! wage rate) only.

use serde::{Deserialize, Serialize};

use crate::model::{self, GameParameters, SpneSolution};
use crate::search::golden_section_max;
use crate::{Error, Result};

/// Lower end of the wage search interval, as a fraction of `s1`.
const WAGE_FLOOR: f64 = 1e-9;
const MAX_BRACKET_GROWTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Upper end of the effort search. Defaults to `10·s1·(dw + w0)`.
    pub effort_bracket: Option<f64>,
    /// Upper end of the wage-differential search. Defaults to `100·s1`,
    /// grown tenfold while the maximum sits on the upper end.
    pub wage_bracket: Option<f64>,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { effort_bracket: None, wage_bracket: None, tolerance: 1e-9, max_iterations: 500 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, bound) in [("effort_bracket", self.effort_bracket), ("wage_bracket", self.wage_bracket)] {
            if let Some(b) = bound {
                if !(b > 0.0 && b.is_finite()) {
                    return Err(Error::InvalidConfig(format!("{name} must be positive, got {b}")));
                }
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Argmax of the agent's host utility over effort.
pub fn maximize_effort_numeric(p: &GameParameters, dw: f64, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    let rate = dw + p.w0();
    if !(rate > 0.0) {
        return Err(Error::NonPositiveWageRate(rate));
    }
    let upper = cfg.effort_bracket.unwrap_or(10.0 * p.s1() * rate);
    let best =
        golden_section_max(|a| model::agent_utility_host(p, dw, a), 0.0, upper, cfg.tolerance, cfg.max_iterations)?;
    Ok(best.x)
}

/// Principal's objective after substituting the binding participation
/// constraint and incentive-compatible effort:
/// `s1·a - (1/s1 - 1/s0)·a² - w0·a - m` with `a = s1·(dw + w0)/2`.
pub fn principal_objective(p: &GameParameters, dw: f64) -> Result<f64> {
    let a = model::optimal_effort(p, dw)?;
    let cost = 1.0 / p.s1() - 1.0 / p.s0();
    Ok(p.s1() * a - cost * a * a - p.w0() * a - p.m())
}

/// Argmax of [`principal_objective`] over the wage differential. Only the
/// `w0 = 0` branch is supported.
pub fn maximize_wage_numeric(p: &GameParameters, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    require_zero_home_wage(p)?;
    let lower = p.s1() * WAGE_FLOOR;
    let objective = |dw| principal_objective(p, dw);

    if let Some(upper) = cfg.wage_bracket {
        return Ok(golden_section_max(objective, lower, upper, cfg.tolerance, cfg.max_iterations)?.x);
    }

    let mut upper = 100.0 * p.s1();
    for _ in 0..MAX_BRACKET_GROWTH {
        match golden_section_max(objective, lower, upper, cfg.tolerance, cfg.max_iterations) {
            Ok(best) => return Ok(best.x),
            Err(Error::BracketExcludesMaximum { at, .. }) if at > 0.5 * upper => upper *= 10.0,
            Err(e) => return Err(e),
        }
    }
    Err(Error::BracketExcludesMaximum { lo: lower, hi: upper, at: upper })
}

/// Solves the principal's stage first, then the agent's effort response,
/// and evaluates every field of the equilibrium at the numeric optimum.
pub fn backward_induction(p: &GameParameters, cfg: &SolverConfig) -> Result<SpneSolution> {
    let dw = maximize_wage_numeric(p, cfg)?;
    let a = maximize_effort_numeric(p, dw, cfg)?;
    SpneSolution::evaluate(p, dw, a)
}

fn require_zero_home_wage(p: &GameParameters) -> Result<()> {
    if p.w0() == 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("numeric wage search requires w0 = 0, got {}", p.w0())))
    }
}
