//! Robust inference for short, heavy-tailed, possibly non-stationary time series.
//!
//! * [`series`]: dated series, differencing, returns, predictive alignment, file ingestion.
//! * [`unit_root`]: LR, MZα, MSB, MZt, MPt and ADF-GLS with MAIC lag selection.
//! * [`bootstrap`]: sieve wild bootstrap p-values for the unit-root battery.
//! * [`tail`]: Hill and shifted rank-size tail-index estimators and their curves.
//! * [`regression`]: OLS with classical, QS-kernel HAC and grouped t-statistic inference.
//! * [`report`]: table model rendered as CSV, Markdown or LaTeX.
//! * [`cli`]: the analyses behind the `robinf` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bootstrap;
pub mod cli;
pub mod error;
mod linalg;
pub mod regression;
pub mod report;
pub mod series;
pub mod tail;
pub mod unit_root;

pub use error::{Error, Result};
