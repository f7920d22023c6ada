use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::approximants::ApproximantSequence;
use crate::bracket::constants::check_bracket_bounds;
use crate::bracket::{bracket, bracket_unchecked, det3, is_collinear, primitive_normalize, Triple};
use crate::error::{Error, Result};
use crate::exact::{eval_L, Mat2};
use crate::word::{is_palindrome, PsiFunction};

/// Outcome of `[v_i, v_i, v_{i+1}]` against `v_{psi(i)}`.
#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceEntry {
    pub index: usize,
    pub psi: usize,
    pub bracket: Triple,
    pub collinear: bool,
    /// `bracket = ±v_{psi(i)}`; only asked when the determinants involved are `±1`.
    pub equal_up_to_sign: Option<bool>,
    /// Both bracket estimates hold with the explicit constant.
    pub bounds_ok: bool,
}

impl RecurrenceEntry {
    pub fn passed(&self) -> bool {
        self.collinear && self.equal_up_to_sign != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceReport {
    pub grace: usize,
    pub entries: Vec<RecurrenceEntry>,
    /// Failing indices at or above `grace`.
    pub failures: Vec<usize>,
    /// Failing indices below `grace`, tolerated.
    pub early_failures: Vec<usize>,
    /// Indices where `psi` was undefined.
    pub skipped: Vec<usize>,
}

fn unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

/// Checks that `[v_i, v_i, v_{i+1}]` is collinear to `v_{psi(i)}` for every
/// `1 <= i < count`, and equal to it up to sign when the determinants are units.
pub fn verify_bracket_recurrence(
    seq: &ApproximantSequence,
    psi: &PsiFunction,
    grace: usize,
) -> Result<RecurrenceReport> {
    let mut report = RecurrenceReport {
        grace,
        entries: Vec::new(),
        failures: Vec::new(),
        early_failures: Vec::new(),
        skipped: Vec::new(),
    };
    for i in 1..seq.count() {
        let Some(j) = psi.eval(i) else {
            report.skipped.push(i);
            continue;
        };
        let (vi, vn) = (seq.v(i), seq.v(i + 1));
        let u = bracket(vi, vi, vn)?;
        let target = seq.v(j);
        let collinear = is_collinear(&u, target);
        let units = unit(&vi.det2()) && unit(&vn.det2()) && unit(&target.det2());
        let equal_up_to_sign = units.then(|| &u == target || u.neg() == *target);
        let lu = eval_L(&u, &seq.xi_enclosure);
        let bounds =
            check_bracket_bounds((vi, &seq.l[i]), (vi, &seq.l[i]), (vn, &seq.l[i + 1]), (&u, &lu), &seq.xi_abs_hi);
        let entry = RecurrenceEntry {
            index: i,
            psi: j,
            bracket: u,
            collinear,
            equal_up_to_sign,
            bounds_ok: bounds.norm_ok && bounds.error_ok,
        };
        if !entry.passed() {
            if i >= grace {
                report.failures.push(i);
            } else {
                report.early_failures.push(i);
            }
        }
        report.entries.push(entry);
    }
    Ok(report)
}

/// `psi(t)` recovered from a point sequence, with the indices where no earlier point matched.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractedPsi {
    pub psi: PsiFunction,
    pub not_found: Vec<usize>,
}

/// For each `t`, the latest `j < t` with `u_j` collinear to `[u_t, u_t, u_{t+1}]`.
pub fn extract_psi_from_points(points: &[Triple]) -> Result<ExtractedPsi> {
    let mut values = BTreeMap::new();
    let mut not_found = Vec::new();
    for t in 1..points.len().saturating_sub(1) {
        if points[t].det2().is_zero() || points[t + 1].det2().is_zero() {
            return Err(Error::Precondition(format!("point {t} or its successor has a zero determinant")));
        }
        let u = primitive_normalize(&bracket(&points[t], &points[t], &points[t + 1])?)?;
        match (0..t).rev().find(|&j| is_collinear(&u, &points[j])) {
            Some(j) => {
                values.insert(t, j);
            }
            None => not_found.push(t),
        }
    }
    let horizon = points.len().saturating_sub(2);
    Ok(ExtractedPsi { psi: PsiFunction::partial(values, horizon), not_found })
}

/// Both sides of the palindrome/dependence equivalence for one index triple.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma55Report {
    pub indices: (usize, usize, usize),
    /// Length `n_{i0} + n_{i1} - n_{i2}`.
    pub length: usize,
    pub palindrome: bool,
    pub dependent: bool,
    /// `M_m = M_{i0} M_{i2}^{-1} M_{i1}` for the length `m`, when both sides hold.
    pub product_identity: Option<bool>,
    /// `[v_{i0}, v_{i1}, v_{i2}] = ±(q_m, p_m, p_{m-1})`, when both sides hold.
    pub bracket_identity: Option<bool>,
}

impl Lemma55Report {
    pub fn consistent(&self) -> bool {
        self.palindrome == self.dependent
            && self.product_identity != Some(false)
            && self.bracket_identity != Some(false)
    }
}

/// Compares the palindrome test on the prefix of length `n_{i0} + n_{i1} - n_{i2}`
/// with `det3(v_{i0}, v_{i1}, v_{i2}) = 0`.
pub fn lemma55_check(seq: &ApproximantSequence, i0: usize, i1: usize, i2: usize) -> Result<Lemma55Report> {
    let count = seq.count();
    if [i0, i1, i2].iter().any(|&i| i > count) {
        return Err(Error::Precondition(format!("indices must be at most {count}")));
    }
    let (n0, n1, n2) = (seq.lengths[i0], seq.lengths[i1], seq.lengths[i2]);
    if !(n0.min(n1) <= n2 && n2 <= n0 + n1) {
        return Err(Error::Precondition(format!("need min(n_i0, n_i1) <= n_i2 <= n_i0 + n_i1, got {n0}, {n1}, {n2}")));
    }
    let length = n0 + n1 - n2;
    if length > seq.word.len() {
        return Err(Error::InsufficientData(format!("prefix of length {length} is not materialized")));
    }
    let palindrome = is_palindrome(&seq.word.symbols()[..length]);
    let (v0, v1, v2) = (seq.v(i0), seq.v(i1), seq.v(i2));
    let dependent = det3(v0, v1, v2).is_zero();
    let (mut product_identity, mut bracket_identity) = (None, None);
    if palindrome && dependent {
        let m = seq.matrix_at(length)?;
        let inv = seq.matrices[i2]
            .unimodular_inverse()
            .ok_or_else(|| Error::Precondition("convergent matrix is not unimodular".into()))?;
        let rhs: Mat2 = &(&seq.matrices[i0] * &inv) * &seq.matrices[i1];
        product_identity = Some(m == rhs);
        let v = Triple { x0: m.a.clone(), x1: m.c.clone(), x2: m.d.clone() };
        let u = bracket_unchecked(v0, v1, v2)?;
        bracket_identity = Some(m.is_symmetric() && (u == v || u.neg() == v));
    }
    Ok(Lemma55Report { indices: (i0, i1, i2), length, palindrome, dependent, product_identity, bracket_identity })
}
