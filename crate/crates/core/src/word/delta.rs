use serde::Serialize;

use super::PalindromicPrefixTable;
use crate::error::{Error, Result};

/// A finite-horizon stand-in for `limsup` of a ratio sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaEstimate {
    /// Maximum of the ratios in the window.
    pub value: f64,
    /// Minimum of the ratios in the window.
    pub liminf: f64,
    /// Half-open range of positions in `ratio_trace` that were used.
    pub window: (usize, usize),
    pub ratio_trace: Vec<f64>,
}

/// Max and min over the last `ceil(tail_fraction * len)` entries of `trace`.
pub fn tail_estimate(trace: Vec<f64>, tail_fraction: f64) -> Result<DeltaEstimate> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::Domain(format!("tail fraction {tail_fraction} is not in (0, 1]")));
    }
    if trace.is_empty() {
        return Err(Error::InsufficientData("no ratios to estimate from".into()));
    }
    let take = ((tail_fraction * trace.len() as f64).ceil() as usize).clamp(1, trace.len());
    let window = (trace.len() - take, trace.len());
    let tail = &trace[window.0..window.1];
    let value = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let liminf = tail.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(DeltaEstimate { value, liminf, window, ratio_trace: trace })
}

/// Estimate of `limsup n_{i+1} / n_i` from a palindromic prefix table.
pub fn delta_of_word(table: &PalindromicPrefixTable, tail_fraction: f64) -> Result<DeltaEstimate> {
    if table.lengths.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} palindromic prefixes found, at least 3 are needed",
            table.lengths.len()
        )));
    }
    let trace = table.lengths.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    tail_estimate(trace, tail_fraction)
}
