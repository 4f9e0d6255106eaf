//! Derivative-free maximization of a unimodal function of one variable.

use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of a maximum found by [`golden_section_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// The bracket shrinks by the inverse golden ratio per iteration until its
/// width falls below `tol * (1 + |midpoint|)`. Only interior points are ever
/// evaluated, so `f` may be undefined at the endpoints. If the final
/// bracket still touches `lo` or `hi` the maximum is not interior and
/// [`Error::BracketExcludesMaximum`] is returned.
///
/// Comparing function values cannot resolve the argmax below roughly
/// `sqrt(eps)` relative, so the golden estimate is finished with one
/// three-point parabolic step at a spacing of `1e-4` relative. The step is
/// kept only when it stays within that spacing and the sampled curvature is
/// negative.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<Maximum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidConfig(format!("empty search interval [{lo}, {hi}]")));
    }
    if !(tol > 0.0) || max_iter == 0 {
        return Err(Error::InvalidConfig(format!("tolerance {tol} and iteration cap {max_iter} must be positive")));
    }

    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iterations = 0;

    while b - a > tol * (1.0 + (0.5 * (a + b)).abs()) {
        if iterations == max_iter {
            return Err(Error::IterationLimit(max_iter));
        }
        iterations += 1;
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
    }

    let (x, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if a == lo || b == hi {
        return Err(Error::BracketExcludesMaximum { lo, hi, at: x });
    }

    let h = 1e-4 * x.abs().max(tol);
    let (refined, refined_value) = match parabolic_vertex(&mut f, x, h, lo, hi)? {
        Some(v) => (v, f(v)?),
        None => (x, value),
    };
    Ok(Maximum { x: refined, value: refined_value, iterations })
}

fn parabolic_vertex<F>(f: &mut F, x: f64, h: f64, lo: f64, hi: f64) -> Result<Option<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (left, right) = (x - h, x + h);
    if left <= lo || right >= hi {
        return Ok(None);
    }
    let (fl, fc, fr) = (f(left)?, f(x)?, f(right)?);
    let curvature = fr - 2.0 * fc + fl;
    if !(curvature < 0.0) {
        return Ok(None);
    }
    let v = x - 0.5 * h * (fr - fl) / curvature;
    Ok(((v - x).abs() <= h && v.is_finite()).then_some(v))
}
