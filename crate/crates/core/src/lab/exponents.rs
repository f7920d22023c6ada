use serde::Serialize;

use super::select::in_a_eps;
use crate::bracket::Triple;
use crate::error::{Error, Result};
use crate::exact::{ln_bigint, RationalInterval};
use crate::word::tail_estimate;

/// One row of a ratio trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub index: usize,
    pub norm_log: f64,
    pub l_log: f64,
    pub ratio: f64,
}

/// Finite-horizon exponent estimate: the maximum of a ratio trace over its tail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub epsilon: Option<f64>,
    pub value: f64,
    pub liminf: f64,
    /// Half-open range of trace positions used.
    pub window: (usize, usize),
    pub ratio_trace: Vec<f64>,
    pub rows: Vec<TraceRow>,
}

/// Relative width an `L` enclosure must have before its midpoint is used in a log.
pub const MIDPOINT_WIDTH: f64 = 1e-3;

/// `limsup log U_{i+1} / (-log L(u_i))` over the points of `A_eps`, ordered by norm.
pub fn estimate_beta_eps(
    points: &[Triple],
    l: &[RationalInterval],
    eps: f64,
    tail_fraction: f64,
) -> Result<ExponentEstimate> {
    let mut kept: Vec<(usize, f64, f64)> = Vec::new();
    for (i, (x, lx)) in points.iter().zip(l).enumerate() {
        if !in_a_eps(x, lx, eps) {
            continue;
        }
        if lx.relative_width() >= MIDPOINT_WIDTH {
            return Err(Error::Precondition(format!("L enclosure of point {i} is too wide for a log estimate")));
        }
        kept.push((i, ln_bigint(&x.norm()), lx.ln_mid()));
    }
    if kept.len() < 4 {
        return Err(Error::InsufficientData(format!("{} points in A_eps, at least 4 are needed", kept.len())));
    }
    kept.sort_by(|a, b| a.1.total_cmp(&b.1));
    let rows: Vec<TraceRow> = kept
        .windows(2)
        .map(|w| TraceRow { index: w[0].0, norm_log: w[0].1, l_log: w[0].2, ratio: w[1].1 / -w[0].2 })
        .collect();
    let est = tail_estimate(rows.iter().map(|r| r.ratio).collect(), tail_fraction)?;
    Ok(ExponentEstimate {
        epsilon: Some(eps),
        value: est.value,
        liminf: est.liminf,
        window: est.window,
        ratio_trace: est.ratio_trace,
        rows,
    })
}

/// `limsup log V_{i+1} / log V_i` from a list of `log V_i`, failing if the
/// tail `liminf` does not exceed one.
pub fn growth_exponent(norm_logs: &[f64], tail_fraction: f64) -> Result<ExponentEstimate> {
    if norm_logs.len() < 4 {
        return Err(Error::InsufficientData(format!("{} norms, at least 4 are needed", norm_logs.len())));
    }
    let rows: Vec<TraceRow> = norm_logs
        .windows(2)
        .enumerate()
        .map(|(i, w)| TraceRow { index: i, norm_log: w[0], l_log: f64::NAN, ratio: w[1] / w[0] })
        .collect();
    let est = tail_estimate(rows.iter().map(|r| r.ratio).collect(), tail_fraction)?;
    if est.liminf.is_nan() || est.liminf <= 1.0 {
        return Err(Error::GrowthHypothesis { liminf: est.liminf });
    }
    Ok(ExponentEstimate {
        epsilon: None,
        value: est.value,
        liminf: est.liminf,
        window: est.window,
        ratio_trace: est.ratio_trace,
        rows,
    })
}

/// `(2 - b1)(2 - b1 + (2 - b0) b1)` for `1 < b1 <= b0 < 2`.
pub fn epsilon_one(beta1: f64, beta0: f64) -> Result<f64> {
    if !(1.0 < beta1 && beta1 <= beta0 && beta0 < 2.0) {
        return Err(Error::Domain(format!("need 1 < beta1 <= beta0 < 2, got beta1 = {beta1}, beta0 = {beta0}")));
    }
    Ok((2.0 - beta1) * (2.0 - beta1 + (2.0 - beta0) * beta1))
}

/// Tail behaviour of `-log L(u_i) / log U_i` and of `log U_{i+1} / log U_i`.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorExponentCheck {
    pub ratios: Vec<f64>,
    pub window: (usize, usize),
    /// Every tail ratio lies in `[1 - tol, 1 + tol]`.
    pub within: bool,
    pub growth_liminf: f64,
    /// `growth_liminf >= 3 - beta1 - tol`.
    pub growth_ok: bool,
}

/// Checks that `L(u_i) = U_i^(-1 + o(1))` and that norms grow at least like
/// `U_{i+1} >= U_i^(3 - beta1)` on the tail, both up to `tol`.
pub fn error_exponent_check(
    points: &[Triple],
    l: &[RationalInterval],
    beta1: f64,
    tol: f64,
    tail_fraction: f64,
) -> Result<ErrorExponentCheck> {
    let logs: Vec<f64> = points.iter().map(|x| ln_bigint(&x.norm())).collect();
    let ratios: Vec<f64> = logs.iter().zip(l).map(|(n, lx)| -lx.ln_mid() / n).collect();
    let est = tail_estimate(ratios.clone(), tail_fraction)?;
    let within = ratios[est.window.0..est.window.1].iter().all(|r| (r - 1.0).abs() <= tol);
    let growth: Vec<f64> = logs.windows(2).map(|w| w[1] / w[0]).collect();
    let g = tail_estimate(growth, tail_fraction)?;
    Ok(ErrorExponentCheck {
        ratios,
        window: est.window,
        within,
        growth_liminf: g.liminf,
        growth_ok: g.liminf >= 3.0 - beta1 - tol,
    })
}
