use serde::Serialize;

use super::Symbol;

/// All lengths `n <= horizon` for which the prefix of length `n` is a palindrome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PalindromicPrefixTable {
    pub lengths: Vec<usize>,
    pub horizon: usize,
}

impl PalindromicPrefixTable {
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// `n_i` with the convention `n_0 = 0`.
    pub fn n(&self, i: usize) -> Option<usize> {
        if i == 0 {
            Some(0)
        } else {
            self.lengths.get(i - 1).copied()
        }
    }

    /// The index `i` with `n_i = len`, where `n_0 = 0`.
    pub fn index_of(&self, len: usize) -> Option<usize> {
        if len == 0 {
            return Some(0);
        }
        self.lengths.binary_search(&len).ok().map(|k| k + 1)
    }
}

pub fn is_palindrome(s: &[Symbol]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// Linear-time scan: the prefix of length `n` is a palindrome iff the
/// length-`n` suffix of the reversed word matches the word's start, which the
/// Z-array of `word # reverse(word)` reports directly.
pub fn palindromic_prefix_lengths(prefix: &[Symbol]) -> PalindromicPrefixTable {
    let n = prefix.len();
    let mut s: Vec<u16> = Vec::with_capacity(2 * n + 1);
    s.extend(prefix.iter().map(|&c| c as u16));
    s.push(u16::MAX);
    s.extend(prefix.iter().rev().map(|&c| c as u16));
    let z = z_array(&s);
    let lengths = (1..=n).filter(|&len| z[2 * n + 1 - len] >= len).collect();
    PalindromicPrefixTable { lengths, horizon: n }
}

/// Quadratic reference implementation.
pub fn palindromic_prefix_lengths_naive(prefix: &[Symbol]) -> PalindromicPrefixTable {
    let lengths = (1..=prefix.len()).filter(|&len| is_palindrome(&prefix[..len])).collect();
    PalindromicPrefixTable { lengths, horizon: prefix.len() }
}

fn z_array(s: &[u16]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{generate_fibonacci, Word};

    #[test]
    fn fibonacci_table() {
        let w = generate_fibonacci(40);
        let t = palindromic_prefix_lengths(w.symbols());
        assert_eq!(t.lengths, vec![1, 3, 6, 11, 19, 32]);
        assert_eq!(t, palindromic_prefix_lengths_naive(w.symbols()));
        assert_eq!(t.index_of(6), Some(3));
        assert_eq!(t.n(0), Some(0));
    }

    #[test]
    fn small_cases() {
        assert_eq!(palindromic_prefix_lengths(&[0]).lengths, vec![1]);
        let abab = Word::from_letters("abababab").unwrap();
        assert_eq!(palindromic_prefix_lengths(abab.symbols()).lengths, vec![1, 3, 5, 7]);
        let ab = Word::from_letters("ab").unwrap();
        assert_eq!(palindromic_prefix_lengths(ab.symbols()).lengths, vec![1]);
        assert!(palindromic_prefix_lengths(&[]).is_empty());
    }
}
