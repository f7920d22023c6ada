use std::collections::BTreeMap;

use serde::Serialize;

use super::palindrome::{is_palindrome, palindromic_prefix_lengths, PalindromicPrefixTable};
use super::psi::PsiFunction;
use super::{Symbol, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PsiFailure {
    /// `2 n_i - n_{i+1}` is not a palindromic prefix length.
    NoMatch { index: usize },
    /// The length matched but the symbols of `pi_{i+1}` disagree with `pi_i pi_j^{-1} pi_i`.
    Mismatch { index: usize, position: usize },
}

impl PsiFailure {
    pub fn index(&self) -> usize {
        match *self {
            PsiFailure::NoMatch { index } | PsiFailure::Mismatch { index, .. } => index,
        }
    }
}

/// `psi` as read off a finite word, with every index that could not be verified.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsiExtraction {
    pub psi: PsiFunction,
    pub table: PalindromicPrefixTable,
    pub failures: Vec<PsiFailure>,
}

/// Reads `psi` from consecutive palindromic prefixes: `psi(i) = j` where
/// `n_j = 2 n_i - n_{i+1}`, each checked symbol by symbol. Failures at indices
/// `>= threshold` make the whole extraction fail.
pub fn psi_from_word(prefix: &Word, threshold: usize) -> Result<PsiExtraction> {
    let w = prefix.symbols();
    let table = palindromic_prefix_lengths(w);
    if table.len() < 4 {
        return Err(Error::InsufficientData(format!("only {} palindromic prefixes", table.len())));
    }
    let mut values = BTreeMap::new();
    let mut failures = Vec::new();
    let last = table.len() - 1;
    for i in 1..=last {
        let ni = table.n(i).expect("in range");
        let next = table.n(i + 1).expect("in range");
        let target = (2 * ni).checked_sub(next);
        let Some(j) = target.and_then(|t| table.index_of(t)) else {
            failures.push(PsiFailure::NoMatch { index: i });
            continue;
        };
        let nj = table.n(j).expect("found");
        match first_difference(&w[..next], &w[..ni], &w[nj..ni]) {
            None => {
                values.insert(i, j);
            }
            Some(position) => failures.push(PsiFailure::Mismatch { index: i, position }),
        }
    }
    if let Some(f) = failures.iter().find(|f| f.index() >= threshold) {
        return Err(Error::NotInW { index: f.index() });
    }
    Ok(PsiExtraction { psi: PsiFunction::partial(values, last), table, failures })
}

fn first_difference(target: &[Symbol], a: &[Symbol], b: &[Symbol]) -> Option<usize> {
    let joined = a.iter().chain(b.iter());
    if a.len() + b.len() != target.len() {
        return Some(target.len().min(a.len() + b.len()));
    }
    target.iter().zip(joined).position(|(x, y)| x != y)
}

/// A word built from `psi`, with the lengths `n_0 = 0, n_1, ...` of the palindromes used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratedWord {
    #[serde(serialize_with = "ser_word")]
    pub word: Word,
    pub lengths: Vec<usize>,
    /// Indices `i` at which `psi(i)` was unusable and `i - 1` was substituted.
    pub fallbacks: Vec<usize>,
}

fn ser_word<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_letters())
}

/// `a, aba, abacaba, ...`: `count` nested palindromes, each adding a fresh letter.
pub fn zimin_seed(count: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(count);
    let mut cur: Vec<Symbol> = Vec::new();
    for k in 0..count {
        let prev = cur.clone();
        cur.push(k as Symbol);
        cur.extend_from_slice(&prev);
        out.push(Word::new(cur.clone()));
    }
    out
}

/// Iterates `pi_{i+1} = pi_i pi_{psi(i)}^{-1} pi_i` from the seed `pi_1, ..., pi_r`
/// until the length reaches `max_length`.
///
/// The default seed is `zimin_seed(c + 1)`. Indices where `psi` is undefined
/// use `psi(i) = i - 1`.
pub fn word_from_psi(psi: &PsiFunction, seed: Option<Vec<Word>>, max_length: usize) -> Result<GeneratedWord> {
    let seed = seed.unwrap_or_else(|| zimin_seed(psi.c + 1));
    if seed.is_empty() {
        return Err(Error::SeedIncompatible { step: 0, reason: "empty seed".into() });
    }
    for (k, p) in seed.iter().enumerate() {
        if !is_palindrome(p.symbols()) {
            return Err(Error::SeedIncompatible { step: k + 1, reason: format!("{p} is not a palindrome") });
        }
        if k > 0 && !p.symbols().starts_with(seed[k - 1].symbols()) || (k > 0 && p.len() <= seed[k - 1].len()) {
            return Err(Error::SeedIncompatible {
                step: k + 1,
                reason: "seed palindromes must be strictly nested".into(),
            });
        }
    }
    let mut lengths: Vec<usize> = std::iter::once(0).chain(seed.iter().map(Word::len)).collect();
    let mut w: Vec<Symbol> = seed.last().expect("nonempty").symbols().to_vec();
    let mut fallbacks = Vec::new();
    let mut i = seed.len();
    while w.len() < max_length {
        let j = match psi.eval(i) {
            Some(j) if j < i => j,
            _ => {
                fallbacks.push(i);
                i - 1
            }
        };
        let ni = lengths[i];
        let nj = lengths[j];
        if !w[..ni].starts_with(&w[..nj]) {
            return Err(Error::SeedIncompatible { step: i, reason: "pi_psi(i) is not a prefix of pi_i".into() });
        }
        w.extend_from_within(nj..ni);
        lengths.push(w.len());
        i += 1;
    }
    let table = palindromic_prefix_lengths(&w);
    if let Some(&missing) = lengths[1..].iter().find(|n| table.lengths.binary_search(n).is_err()) {
        return Err(Error::SeedIncompatible {
            step: 0,
            reason: format!("length {missing} is not a palindromic prefix"),
        });
    }
    Ok(GeneratedWord { word: Word::new(w), lengths, fallbacks })
}
