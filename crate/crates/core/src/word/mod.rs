//! Finite prefixes of infinite words, palindromic prefixes and the index
//! functions `psi` that describe how consecutive palindromic prefixes are built.

mod correspondence;
mod delta;
mod generate;
mod palindrome;
mod psi;
mod spec;

pub use correspondence::{psi_from_word, word_from_psi, zimin_seed, GeneratedWord, PsiExtraction, PsiFailure};
pub use delta::{delta_of_word, tail_estimate, DeltaEstimate};
pub use generate::{generate_fibonacci, generate_sturmian, generate_sturmian_periodic, sturmian_slope};
pub use palindrome::{
    is_palindrome, palindromic_prefix_lengths, palindromic_prefix_lengths_naive, PalindromicPrefixTable,
};
pub use psi::{
    delta_of_psi, is_asymptotically_reduced, psi_equivalent, synthetic_sequence, theta_sequence, Equivalence,
    PsiFunction, ReducedCheck,
};
pub use spec::WordSpec;

use std::fmt;

use crate::error::{Error, Result};

/// Letters are small integers; `0` prints as `a`, `1` as `b`, and so on.
pub type Symbol = u8;

/// A materialized finite prefix of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<Symbol>,
    alphabet: usize,
}

impl Word {
    /// Wraps symbols; the alphabet is `0..=max symbol`.
    pub fn new(symbols: Vec<Symbol>) -> Self {
        let alphabet = symbols.iter().map(|&s| s as usize + 1).max().unwrap_or(0);
        Word { symbols, alphabet }
    }

    /// Wraps symbols over an explicit alphabet size.
    pub fn with_alphabet(symbols: Vec<Symbol>, alphabet: usize) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= alphabet) {
            return Err(Error::Domain(format!("symbol {s} outside an alphabet of size {alphabet}")));
        }
        Ok(Word { symbols, alphabet })
    }

    /// Parses lowercase letters.
    pub fn from_letters(s: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            if !ch.is_ascii_lowercase() {
                return Err(Error::parse(i, format!("letters must be a-z, found {ch:?}")));
            }
            out.push(ch as u8 - b'a');
        }
        Ok(Word::new(out))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    /// The symbol at 1-indexed position `n`.
    pub fn at(&self, n: usize) -> Option<Symbol> {
        n.checked_sub(1).and_then(|i| self.symbols.get(i).copied())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word { symbols: self.symbols[..n.min(self.len())].to_vec(), alphabet: self.alphabet }
    }

    pub fn to_letters(&self) -> String {
        self.symbols.iter().map(|&s| letter(s)).collect()
    }

    /// Applies `map[s]` to every symbol.
    pub fn relabel(&self, map: &[Symbol]) -> Word {
        Word::new(self.symbols.iter().map(|&s| map[s as usize]).collect())
    }

    /// Replaces every symbol `s` by the word `images[s]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut out = Vec::new();
        for &s in &self.symbols {
            let img =
                images.get(s as usize).ok_or_else(|| Error::Domain(format!("no image for symbol {}", letter(s))))?;
            out.extend_from_slice(img.symbols());
        }
        Ok(Word::new(out))
    }
}

fn letter(s: Symbol) -> char {
    if s < 26 {
        (b'a' + s) as char
    } else {
        '?'
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letters())
    }
}
