//! Closed-form payoffs, constraints and equilibrium of the piece-rate
//! contract game between a host-nation principal and a migrant agent.
//!
//! Effort cost in country `i` is `a² / s_i`; the cost coefficient `1 / s_i`
//! is always derived from the skill-relevance and never stored.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Primitives of the contract game.
///
/// `s0` and `s1` are the skill-relevance of the agent in the sending and
/// host nation, `w0` the sending-nation piece-rate wage and `m` the moving
/// cost. Construction enforces `0 < s1 < s0`, `w0 >= 0` and `m >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParameters {
    s0: f64,
    s1: f64,
    w0: f64,
    m: f64,
}

impl GameParameters {
    pub fn new(s0: f64, s1: f64, w0: f64, m: f64) -> Result<Self> {
        if !(s0.is_finite() && s1.is_finite() && w0.is_finite() && m.is_finite()) {
            return Err(Error::InvalidParameters("parameters must be finite".into()));
        }
        check_ordering(s0, s1)?;
        if w0 < 0.0 {
            return Err(Error::InvalidParameters(format!("w0 must be non-negative, got {w0}")));
        }
        if m < 0.0 {
            return Err(Error::InvalidParameters(format!("m must be non-negative, got {m}")));
        }
        Ok(Self { s0, s1, w0, m })
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// Discount of skill-relevance from migrating, `s0 - s1`.
    pub fn delta(&self) -> f64 {
        self.s0 - self.s1
    }

    /// Copy with a different moving cost.
    pub fn with_moving_cost(&self, m: f64) -> Result<Self> {
        Self::new(self.s0, self.s1, self.w0, m)
    }
}

pub(crate) fn check_ordering(s0: f64, s1: f64) -> Result<()> {
    if s1 > 0.0 && s1 < s0 {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("requires 0 < s1 < s0, got s0 = {s0}, s1 = {s1}")))
    }
}

fn check_effort(a: f64) -> Result<()> {
    if a > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveEffort(a))
    }
}

/// Equilibrium bundle of the game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpneSolution {
    pub wage_differential: f64,
    pub effort: f64,
    pub agent_utility_host: f64,
    pub agent_utility_home: f64,
    /// Literal profit `s1·a - (dw + w0)·a` at the optimum.
    pub principal_profit: f64,
    pub soc_agent: f64,
    pub soc_principal: f64,
    /// `U1 - U0` at the optimum. Not forced to zero.
    pub ir_slack: f64,
}

impl SpneSolution {
    /// Fills every field from a wage differential and effort level.
    pub fn evaluate(p: &GameParameters, wage_differential: f64, effort: f64) -> Result<Self> {
        let host = agent_utility_host(p, wage_differential, effort)?;
        let home = agent_utility_home(p, effort)?;
        Ok(Self {
            wage_differential,
            effort,
            agent_utility_host: host,
            agent_utility_home: home,
            principal_profit: principal_profit(p, wage_differential, effort)?,
            soc_agent: soc_agent(p),
            soc_principal: soc_principal(p),
            ir_slack: host - home,
        })
    }
}

/// Migration predicate: migrate iff `w1 - w0 - m > 0`.
pub fn borjas_migrates(w1: f64, w0: f64, m: f64) -> bool {
    w1 - w0 - m > 0.0
}

/// Expected utility of immigrating, `(dw + w0)·a - a²/s1 - m`.
pub fn agent_utility_host(p: &GameParameters, dw: f64, a: f64) -> Result<f64> {
    check_effort(a)?;
    Ok((dw + p.w0) * a - a * a / p.s1 - p.m)
}

/// Reservation utility of staying home, `w0·a - a²/s0`. May be negative.
pub fn agent_utility_home(p: &GameParameters, a: f64) -> Result<f64> {
    check_effort(a)?;
    Ok(p.w0 * a - a * a / p.s0)
}

/// Principal's profit `s1·a - (dw + w0)·a` with the literal wage bill.
pub fn principal_profit(p: &GameParameters, dw: f64, a: f64) -> Result<f64> {
    check_effort(a)?;
    Ok(p.s1 * a - (dw + p.w0) * a)
}

/// Incentive-compatible effort `s1·(dw + w0)/2`.
pub fn optimal_effort(p: &GameParameters, dw: f64) -> Result<f64> {
    let rate = dw + p.w0;
    if !(rate > 0.0) {
        return Err(Error::NonPositiveWageRate(rate));
    }
    Ok(p.s1 * rate / 2.0)
}

/// Participation gap `U1 - U0`; the agent accepts iff the gap is `>= 0`.
pub fn ir_gap(p: &GameParameters, dw: f64, a: f64) -> Result<f64> {
    Ok(agent_utility_host(p, dw, a)? - agent_utility_home(p, a)?)
}

/// Equilibrium wage differential `s0·s1/(s0 - s1)` on the `w0 = 0` branch.
pub fn spne_wage_differential(s0: f64, s1: f64) -> Result<f64> {
    check_ordering(s0, s1)?;
    Ok(s0 * s1 / (s0 - s1))
}

/// Inverts the principal's first-order condition for `s0`:
/// `s1·(dw + w0)/(2·w0 - s1 + dw)`.
pub fn spne_s0_from(s1: f64, dw: f64, w0: f64) -> Result<f64> {
    let denom = 2.0 * w0 - s1 + dw;
    if !(denom > 0.0) {
        return Err(Error::InconsistentEquilibrium(denom));
    }
    Ok(s1 * (dw + w0) / denom)
}

/// Agent's second-order condition, `-2/s1`.
pub fn soc_agent(p: &GameParameters) -> f64 {
    -2.0 / p.s1
}

/// Principal's second-order condition, `s1·(s1 - s0)/(2·s0)`.
pub fn soc_principal(p: &GameParameters) -> f64 {
    p.s1 * (p.s1 - p.s0) / (2.0 * p.s0)
}

/// Closed-form equilibrium. Only the `w0 = 0` branch is consistent with
/// `0 < s1 < s0`, so other `w0` values are rejected.
pub fn spne_closed_form(p: &GameParameters) -> Result<SpneSolution> {
    if p.w0 != 0.0 {
        return Err(Error::InvalidParameters(format!("closed-form equilibrium requires w0 = 0, got {}", p.w0)));
    }
    let dw = spne_wage_differential(p.s0, p.s1)?;
    let a = optimal_effort(p, dw)?;
    SpneSolution::evaluate(p, dw, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s0: f64, s1: f64, w0: f64, m: f64) -> GameParameters {
        GameParameters::new(s0, s1, w0, m).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn parameters_enforce_ordering() {
        assert!(GameParameters::new(1.0, 2.0, 0.0, 0.0).is_err());
        assert!(GameParameters::new(2.0, 2.0, 0.0, 0.0).is_err());
        assert!(GameParameters::new(2.0, 0.0, 0.0, 0.0).is_err());
        assert!(GameParameters::new(2.0, 1.0, -0.1, 0.0).is_err());
        assert!(GameParameters::new(2.0, 1.0, 0.0, -1.0).is_err());
        assert!(GameParameters::new(f64::NAN, 1.0, 0.0, 0.0).is_err());
        assert_eq!(params(3.0, 1.0, 0.0, 0.0).delta(), 2.0);
    }

    #[test]
    fn migration_predicate_is_strict() {
        assert!(borjas_migrates(10.0, 3.0, 2.0));
        assert!(!borjas_migrates(10.0, 3.0, 7.0));
        assert!(borjas_migrates(4778.4, 673.2, 0.0));
    }

    #[test]
    fn host_utility_examples() {
        assert!(close(agent_utility_host(&params(2.0, 1.0, 0.0, 0.0), 2.0, 1.0).unwrap(), 1.0));
        assert!(close(agent_utility_host(&params(2.0, 1.0, 0.0, 1.0), 2.0, 1.0).unwrap(), 0.0));
        assert!(close(agent_utility_host(&params(3.0, 2.0, 1.0, 0.5), 1.0, 2.0).unwrap(), 1.5));
    }

    #[test]
    fn home_utility_examples() {
        assert!(close(agent_utility_home(&params(2.0, 1.0, 0.0, 0.0), 1.0).unwrap(), -0.5));
        assert!(close(agent_utility_home(&params(2.0, 1.0, 1.0, 0.0), 1.0).unwrap(), 0.5));
        assert!(close(agent_utility_home(&params(4.0, 1.0, 0.5, 0.0), 2.0).unwrap(), 0.0));
    }

    #[test]
    fn principal_profit_examples() {
        assert!(close(principal_profit(&params(2.0, 1.0, 0.0, 0.0), 1.0, 1.0).unwrap(), 0.0));
        assert!(close(principal_profit(&params(3.0, 2.0, 0.0, 0.0), 1.0, 3.0).unwrap(), 3.0));
        assert!(close(principal_profit(&params(2.0, 1.0, 0.0, 0.0), 2.0, 1.0).unwrap(), -1.0));
    }

    #[test]
    fn effort_must_be_positive() {
        let p = params(2.0, 1.0, 0.0, 0.0);
        assert_eq!(agent_utility_host(&p, 1.0, 0.0), Err(Error::NonPositiveEffort(0.0)));
        assert!(agent_utility_home(&p, -1.0).is_err());
        assert!(principal_profit(&p, 1.0, 0.0).is_err());
        assert!(ir_gap(&p, 1.0, -2.0).is_err());
    }

    #[test]
    fn optimal_effort_examples() {
        assert!(close(optimal_effort(&params(2.0, 1.0, 0.0, 0.0), 2.0).unwrap(), 1.0));
        assert!(close(optimal_effort(&params(3.0, 2.0, 1.0, 0.0), 3.0).unwrap(), 4.0));
        assert!(close(optimal_effort(&params(1.0, 0.5, 0.0, 0.0), 4.0).unwrap(), 1.0));
        assert!(matches!(optimal_effort(&params(2.0, 1.0, 0.0, 0.0), 0.0), Err(Error::NonPositiveWageRate(_))));
    }

    #[test]
    fn optimal_effort_matches_grid_argmax() {
        // a in (0, 10], step 1e-4
        let p = params(1.0, 0.5, 0.0, 0.0);
        let best = (1..=100_000)
            .map(|i| i as f64 * 1e-4)
            .max_by(|x, y| {
                let fx = agent_utility_host(&p, 4.0, *x).unwrap();
                let fy = agent_utility_host(&p, 4.0, *y).unwrap();
                fx.partial_cmp(&fy).unwrap()
            })
            .unwrap();
        assert!((best - 1.0).abs() < 1e-4);
    }

    #[test]
    fn ir_gap_examples() {
        assert!(close(ir_gap(&params(2.0, 1.0, 0.0, 0.0), 2.0, 1.0).unwrap(), 1.5));
        assert!(close(ir_gap(&params(2.0, 1.0, 0.0, 1.5), 2.0, 1.0).unwrap(), 0.0));
        assert!(close(ir_gap(&params(2.0, 1.0, 0.0, 3.0), 2.0, 1.0).unwrap(), -1.5));
    }

    #[test]
    fn wage_differential_examples() {
        assert!(close(spne_wage_differential(2.0, 1.0).unwrap(), 2.0));
        assert!(close(spne_wage_differential(4.0, 2.0).unwrap(), 4.0));
        assert!(close(spne_wage_differential(3.0, 1.0).unwrap(), 1.5));
        assert!(spne_wage_differential(1.0, 2.0).is_err());
        assert!(spne_wage_differential(1.0, 1.0).is_err());
        assert!(spne_wage_differential(1.0, -0.5).is_err());
    }

    #[test]
    fn s0_from_examples() {
        assert!(close(spne_s0_from(1.0, 2.0, 0.0).unwrap(), 2.0));
        assert!(close(spne_s0_from(2.0, 4.0, 0.0).unwrap(), 4.0));
        // w0 > 0 lands on s0 == s1
        assert!(close(spne_s0_from(1.0, 3.0, 1.0).unwrap(), 1.0));
        assert!(matches!(spne_s0_from(2.0, 1.0, 0.0), Err(Error::InconsistentEquilibrium(_))));
    }

    #[test]
    fn soc_examples() {
        assert_eq!(soc_agent(&params(2.0, 1.0, 0.0, 0.0)), -2.0);
        assert_eq!(soc_agent(&params(3.0, 2.0, 0.0, 0.0)), -1.0);
        assert_eq!(soc_agent(&params(1.0, 0.5, 0.0, 0.0)), -4.0);
        assert!(close(soc_principal(&params(2.0, 1.0, 0.0, 0.0)), -0.25));
        assert!(close(soc_principal(&params(4.0, 2.0, 0.0, 0.0)), -0.5));
        assert!(close(soc_principal(&params(3.0, 1.0, 0.0, 0.0)), -1.0 / 3.0));
    }

    #[test]
    fn closed_form_solution_fields() {
        let sol = spne_closed_form(&params(2.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(close(sol.wage_differential, 2.0));
        assert!(close(sol.effort, 1.0));
        assert!(close(sol.agent_utility_host, 1.0));
        assert!(close(sol.agent_utility_home, -0.5));
        assert!(close(sol.principal_profit, -1.0));
        assert!(close(sol.ir_slack, 1.5));
        assert!(sol.soc_agent < 0.0 && sol.soc_principal < 0.0);
        assert!(spne_closed_form(&params(2.0, 1.0, 0.5, 0.0)).is_err());
    }

    #[test]
    fn wage_differential_round_trips_through_s0() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let a: f64 = rng.gen_range(0.01..100.0);
            let b: f64 = rng.gen_range(0.01..100.0);
            if a == b {
                continue;
            }
            let (s0, s1) = if a > b { (a, b) } else { (b, a) };
            let dw = spne_wage_differential(s0, s1).unwrap();
            let back = spne_s0_from(s1, dw, 0.0).unwrap();
            assert!(((back - s0) / s0).abs() <= 1e-12, "s0={s0} s1={s1} back={back}");
        }
    }

    #[test]
    fn ir_gap_positive_when_migration_is_free() {
        let p = params(3.0, 1.5, 0.0, 0.0);
        let dw = 2.0;
        let top = p.s1() * dw;
        for i in 1..=1000 {
            let a = top * i as f64 / 1000.0;
            assert!(ir_gap(&p, dw, a).unwrap() > 0.0, "a = {a}");
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn ordered() -> impl Strategy<Value = (f64, f64)> {
            (0.01f64..100.0, 0.001f64..0.999).prop_map(|(s0, r)| (s0, s0 * r))
        }

        proptest! {
            #[test]
            fn wage_differential_exceeds_s1((s0, s1) in ordered()) {
                prop_assert!(spne_wage_differential(s0, s1).unwrap() > s1);
            }

            #[test]
            fn wage_differential_is_homogeneous((s0, s1) in ordered(), k in 0.01f64..100.0) {
                let base = spne_wage_differential(s0, s1).unwrap();
                let scaled = spne_wage_differential(k * s0, k * s1).unwrap();
                prop_assert!((scaled - k * base).abs() <= 1e-12 * (k * base).abs());
            }

            #[test]
            fn second_order_conditions_negative((s0, s1) in ordered(), w0 in 0.0f64..10.0, m in 0.0f64..10.0) {
                let p = GameParameters::new(s0, s1, w0, m).unwrap();
                prop_assert!(soc_agent(&p) < 0.0);
                prop_assert!(soc_principal(&p) < 0.0);
            }

            #[test]
            fn moving_cost_enters_with_unit_slope(
                (s0, s1) in ordered(),
                dw in 0.1f64..50.0,
                a in 0.01f64..50.0,
                m in 0.0f64..10.0,
                bump in 0.01f64..10.0,
            ) {
                let p = GameParameters::new(s0, s1, 0.0, m).unwrap();
                let q = p.with_moving_cost(m + bump).unwrap();
                let diff = ir_gap(&p, dw, a).unwrap() - ir_gap(&q, dw, a).unwrap();
                prop_assert!(diff > 0.0);
                prop_assert!((diff - bump).abs() <= 1e-9 * (1.0 + ir_gap(&p, dw, a).unwrap().abs()));
            }
        }
    }
}
