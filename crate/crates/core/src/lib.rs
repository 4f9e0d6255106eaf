//! Skill-relevance self-selection model of labor immigration.
//!
//! The crate has two halves. The theory half ([`model`], [`solver`],
//! [`statics`]) solves the principal–agent piece-rate wage game in closed
//! form and checks it against a numerical backward-induction oracle. The
//! empirical half ([`dataset`], [`econometrics`], [`plot`]) carries the
//! host/sender nation table, builds host×sender pair observations and runs
//! the simple OLS regressions with full inference.

// Domain guards are written `!(x > 0.0)` on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dataset;
pub mod distribution;
pub mod econometrics;
mod error;
pub mod model;
pub mod plot;
pub mod search;
pub mod solver;
pub mod statics;

pub use error::{Error, Result};
pub use model::{GameParameters, SpneSolution};
