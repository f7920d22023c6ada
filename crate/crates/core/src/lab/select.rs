use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::approximants::ApproximantSequence;
use super::minimal::MinimalPointSequence;
use crate::bracket::{det3, Triple};
use crate::error::{Error, Result};
use crate::exact::{ln_bigint, RationalInterval};

/// Best rational `p/q` with `q <= 1000` for `eps`.
pub fn rationalize(eps: f64) -> (i64, i64) {
    let mut best = (eps.round() as i64, 1i64);
    let mut err = (eps - best.0 as f64).abs();
    for q in 1..=1000i64 {
        let p = (eps * q as f64).round() as i64;
        let e = (eps - p as f64 / q as f64).abs();
        if e < err - 1e-15 {
            best = (p, q);
            err = e;
        }
    }
    best
}

/// The least `eps` with `L_hi(x) <= X^(eps - 1)`, in floating point.
pub fn membership_exponent(x: &Triple, l: &RationalInterval) -> f64 {
    1.0 + l.hi.ln_abs() / ln_bigint(&x.norm())
}

/// `L_hi(x) <= X^(eps - 1)`, with `eps` read as the rational from [`rationalize`].
/// Clear cases are settled in floating point; the rest exactly.
pub fn in_a_eps(x: &Triple, l: &RationalInterval, eps: f64) -> bool {
    let norm = x.norm();
    if norm.is_zero() {
        return false;
    }
    if norm.is_one() {
        return l.hi <= crate::exact::Q::from_int(1);
    }
    let lhs = l.hi.ln_abs();
    let rhs = (eps - 1.0) * ln_bigint(&norm);
    let margin = 1e-9 * (1.0 + rhs.abs());
    if lhs < rhs - margin {
        return true;
    }
    if lhs > rhs + margin {
        return false;
    }
    let (p, q) = rationalize(eps);
    let r = l.hi.reduced();
    let (n, d) = (r.numer().abs(), r.denom().abs());
    let q = q as u32;
    let k = (q as i64 - p) as u32;
    n.pow(q) * norm.pow(k) <= d.pow(q)
}

/// One `d_k` with the next point of `A_eps2` after it.
#[derive(Clone, Debug, Serialize)]
pub struct DePair {
    pub k: usize,
    /// Positions in the point list.
    pub d: usize,
    pub e: usize,
    pub d_next: Option<usize>,
    /// `D_k < E_k <= D_{k+1}`, when `d_{k+1}` is known.
    pub ordered: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Selection {
    pub pairs: Vec<DePair>,
    /// `k` below the grace index whose `d_k` is outside `A_eps2`.
    pub skipped: Vec<usize>,
    pub warnings: Vec<String>,
}

impl Selection {
    /// Whether every pair with a known successor satisfies `D_k < E_k <= D_{k+1}`.
    pub fn ordered(&self) -> bool {
        self.pairs.iter().all(|p| p.ordered != Some(false))
    }
}

/// Pairs each independent point `d_k` with the next point of `A_eps2`.
pub fn select_e_points_in(
    points: &[Triple],
    l: &[RationalInterval],
    independent: &[usize],
    eps2: f64,
    grace: usize,
) -> Result<Selection> {
    if !(eps2 > 0.0 && eps2 < 1.0) {
        return Err(Error::Domain(format!("eps2 = {eps2} is not in (0, 1)")));
    }
    let member: Vec<bool> = points.iter().zip(l).map(|(x, lx)| in_a_eps(x, lx, eps2)).collect();
    let mut out = Selection::default();
    for (k, &d) in independent.iter().enumerate() {
        if !member[d] {
            if k >= grace {
                return Err(Error::DNotInA { k, eps: eps2 });
            }
            out.skipped.push(k);
            continue;
        }
        let Some(e) = (d + 1..points.len()).find(|&j| member[j]) else {
            out.warnings.push(format!("d_{k} has no successor in A_eps2 within the horizon"));
            break;
        };
        let d_next = independent.get(k + 1).copied();
        let ordered = d_next.map(|n| points[d].norm() < points[e].norm() && points[e].norm() <= points[n].norm());
        out.pairs.push(DePair { k, d, e, d_next, ordered });
    }
    Ok(out)
}

/// [`select_e_points_in`] on a minimal-point scan.
pub fn select_e_points(seq: &MinimalPointSequence, eps2: f64, grace: usize) -> Result<Selection> {
    select_e_points_in(&seq.points, &seq.l, &seq.independent, eps2, grace)
}

/// Positions `i` with `det3(p_{i-1}, p_i, p_{i+1}) != 0`.
pub fn independent_positions(points: &[Triple]) -> Vec<usize> {
    (1..points.len().saturating_sub(1))
        .filter(|&i| !det3(&points[i - 1], &points[i], &points[i + 1]).is_zero())
        .collect()
}

impl ApproximantSequence {
    pub fn independent(&self) -> Vec<usize> {
        independent_positions(&self.triples)
    }

    /// [`select_e_points_in`] on the approximants.
    pub fn select_e_points(&self, eps2: f64, grace: usize) -> Result<Selection> {
        select_e_points_in(&self.triples, &self.l, &self.independent(), eps2, grace)
    }
}
