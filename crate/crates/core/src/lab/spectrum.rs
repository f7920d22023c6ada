use serde::Serialize;

use crate::error::Result;
use crate::word::{delta_of_psi, is_asymptotically_reduced, PsiFunction};

/// `(1 + sqrt 5) / 2`.
pub const GOLDEN: f64 = 1.618_033_988_749_895;
/// `1 + sqrt 2 / 2`.
pub const SIGMA2: f64 = 1.707_106_781_186_547_6;

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub offsets: Vec<usize>,
    pub delta: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub max_period: usize,
    pub max_offset: usize,
    pub horizon: usize,
    /// Offset patterns that give a reduced function with infinitely many offsets above one.
    pub entries: Vec<SpectrumEntry>,
    /// Entries with `delta` in `(lo, hi)`.
    pub in_gap: Vec<SpectrumEntry>,
    pub gap: (f64, f64),
}

fn patterns(max_period: usize, max_offset: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in 1..=max_period {
        let mut cur = vec![1; p];
        loop {
            out.push(cur.clone());
            let Some(pos) = cur.iter().rposition(|&o| o < max_offset) else { break };
            cur[pos] += 1;
            for o in &mut cur[pos + 1..] {
                *o = 1;
            }
        }
    }
    out
}

/// `delta` over every eventually periodic offset pattern with period at most
/// `max_period` and offsets at most `max_offset` that is reduced on the horizon,
/// flagging values strictly inside `gap`.
pub fn spectrum_gap(max_period: usize, max_offset: usize, horizon: usize, gap: (f64, f64)) -> Result<SpectrumReport> {
    let start = max_offset + 1;
    let mut entries = Vec::new();
    for offsets in patterns(max_period, max_offset) {
        if offsets.iter().all(|&o| o == 1) {
            continue;
        }
        let psi = PsiFunction::periodic(offsets.clone(), start)?;
        if !is_asymptotically_reduced(&psi, horizon, 2 * start).reduced {
            continue;
        }
        let delta = delta_of_psi(&psi, horizon)?.value;
        entries.push(SpectrumEntry { offsets, delta });
    }
    let in_gap = entries.iter().filter(|e| e.delta > gap.0 && e.delta < gap.1).cloned().collect();
    Ok(SpectrumReport { max_period, max_offset, horizon, entries, in_gap, gap })
}
