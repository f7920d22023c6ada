use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::xi::{build_xi_from_word, Phi};
use crate::bracket::Triple;
use crate::error::{Error, Result};
use crate::exact::{
    eval_L, quotient_product, ContinuedFraction, ConvergentCache, Mat2, RationalInterval, RealEnclosure, Q,
};
use crate::word::{palindromic_prefix_lengths, Word, WordSpec};

/// Relative width below which an `L` enclosure is accepted.
pub const L_RELATIVE_WIDTH: f64 = 1e-6;

/// The points `v_i = (q_{n_i}, p_{n_i}, p_{n_i - 1})` attached to the
/// palindromic prefixes of a word, with `v_0 = (1, 0, 1)` for the empty prefix.
#[derive(Clone, Debug)]
pub struct ApproximantSequence {
    /// `n_0 = 0, n_1, ..., n_count`.
    pub lengths: Vec<usize>,
    pub triples: Vec<Triple>,
    /// `[[q_n, q_{n-1}], [p_n, p_{n-1}]]` at each `n_i`.
    pub matrices: Vec<Mat2>,
    /// Enclosures of `L(v_i)`.
    pub l: Vec<RationalInterval>,
    pub word: Word,
    pub phi: Phi,
    pub xi: Arc<ContinuedFraction>,
    /// The deepest enclosure of `xi` used for the `L` values.
    pub xi_enclosure: RealEnclosure,
    /// Upper bound for `|xi|`.
    pub xi_abs_hi: Q,
}

impl ApproximantSequence {
    /// Number of approximants `v_1, ..., v_count`.
    pub fn count(&self) -> usize {
        self.triples.len() - 1
    }

    pub fn v(&self, i: usize) -> &Triple {
        &self.triples[i]
    }

    pub fn norm_ln(&self, i: usize) -> f64 {
        crate::exact::ln_bigint(&self.triples[i].norm())
    }

    pub fn l_ln(&self, i: usize) -> f64 {
        self.l[i].ln_mid()
    }

    pub fn det2(&self, i: usize) -> BigInt {
        self.triples[i].det2()
    }

    /// The product of the first `n` quotient matrices of `xi`, for any `n`.
    pub fn matrix_at(&self, n: usize) -> Result<Mat2> {
        Ok(quotient_product(&self.xi.quotient_range(0, n)?))
    }

    /// `log V_i` for `v_1..v_count`.
    pub fn norm_logs(&self) -> Vec<f64> {
        (1..=self.count()).map(|i| self.norm_ln(i)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproximantRow {
    pub index: usize,
    pub length: usize,
    pub point: Triple,
    pub det2: String,
    pub l_mid_log: f64,
    pub l_rel_width: f64,
}

impl ApproximantSequence {
    pub fn rows(&self) -> Vec<ApproximantRow> {
        (0..self.triples.len())
            .map(|i| ApproximantRow {
                index: i,
                length: self.lengths[i],
                point: self.triples[i].clone(),
                det2: self.det2(i).to_string(),
                l_mid_log: self.l_ln(i),
                l_rel_width: self.l[i].relative_width(),
            })
            .collect()
    }
}

fn l_enclosure(
    cache: &mut ConvergentCache,
    v: &Triple,
    base: usize,
    available: usize,
) -> Result<(RationalInterval, RealEnclosure)> {
    let mut margin = 16;
    loop {
        let depth = base + margin;
        if depth + 1 > available {
            return Err(Error::InsufficientData(format!(
                "word prefix of length {available} is too short to enclose L at depth {depth}"
            )));
        }
        let e = RealEnclosure::at_depth_cached(cache, depth)?;
        let l = eval_L(v, &e);
        if l.relative_width() < L_RELATIVE_WIDTH {
            return Ok((l, e));
        }
        margin *= 2;
    }
}

/// Approximants for the first `count` palindromic prefixes of `w` under `phi`.
pub fn palindromic_approximants(w: &Word, phi: &Phi, count: usize) -> Result<ApproximantSequence> {
    if count == 0 {
        return Err(Error::Precondition("count must be positive".into()));
    }
    let table = palindromic_prefix_lengths(w.symbols());
    if table.len() < count {
        return Err(Error::InsufficientData(format!(
            "{} palindromic prefixes in a prefix of length {}, {count} requested",
            table.len(),
            w.len()
        )));
    }
    let xi = Arc::new(build_xi_from_word(w, phi)?);
    let mut cache = ConvergentCache::new(xi.clone());
    let mut lengths = vec![0];
    let mut triples = vec![Triple::from_i64(1, 0, 1)];
    let mut matrices = vec![Mat2::identity()];
    let (l0, e0) = l_enclosure(&mut cache, &triples[0], 0, w.len())?;
    let xi_abs_hi = e0.abs_hi();
    let mut l = vec![l0];
    let mut deepest = e0;
    let one = Q::from_int(1);
    for &n in &table.lengths[..count] {
        let m = cache.matrix(n)?;
        if !m.is_symmetric() {
            return Err(Error::SymmetryViolation(n));
        }
        let v = Triple { x0: m.a.clone(), x1: m.c.clone(), x2: m.d.clone() };
        let (lv, e) = l_enclosure(&mut cache, &v, n, w.len())?;
        let bound = one.add(e.hi()).mul(&Q::new(BigInt::from(1), m.b.clone()));
        if lv.hi > bound {
            return Err(Error::Precondition(format!("L(v) exceeds (1 + xi)/q_(n-1) at n = {n}")));
        }
        if e.depth() > deepest.depth() {
            deepest = e;
        }
        lengths.push(n);
        triples.push(v);
        matrices.push(m);
        l.push(lv);
    }
    Ok(ApproximantSequence {
        lengths,
        triples,
        matrices,
        l,
        word: w.clone(),
        phi: phi.clone(),
        xi,
        xi_enclosure: deepest,
        xi_abs_hi,
    })
}

/// A prefix of `spec` long enough for `count` palindromic prefixes and the
/// enclosures that follow them.
pub fn word_with_palindromes(spec: &WordSpec, count: usize) -> Result<Word> {
    let mut len = 64;
    loop {
        let w = spec.materialize(len)?;
        let table = palindromic_prefix_lengths(w.symbols());
        if table.len() >= count {
            let n = table.lengths[count - 1];
            if w.len() >= n + n / 8 + 512 {
                return Ok(w);
            }
        }
        if w.len() < len {
            return Err(Error::InsufficientData(format!(
                "word {spec} has only {} palindromic prefixes, {count} requested",
                table.len()
            )));
        }
        len *= 2;
    }
}

/// Approximants for a word recipe, choosing the prefix length automatically.
pub fn approximants_for(spec: &WordSpec, phi: &Phi, count: usize) -> Result<ApproximantSequence> {
    let w = word_with_palindromes(spec, count)?;
    palindromic_approximants(&w, phi, count)
}
