use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::ContinuedFraction;
use crate::word::{Symbol, Word};

/// An assignment of positive partial quotients to letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phi {
    map: BTreeMap<Symbol, u64>,
}

impl Phi {
    pub fn new(map: BTreeMap<Symbol, u64>) -> Result<Self> {
        if map.values().any(|&v| v == 0) {
            return Err(Error::Domain("phi values must be positive".into()));
        }
        let mut seen: Vec<u64> = map.values().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != map.len() {
            return Err(Error::NonInjectivePhi);
        }
        Ok(Phi { map })
    }

    /// `a = 1, b = 2`.
    pub fn standard() -> Self {
        Phi::new(BTreeMap::from([(0, 1), (1, 2)])).expect("injective")
    }

    pub fn get(&self, s: Symbol) -> Option<u64> {
        self.map.get(&s).copied()
    }
}

impl FromStr for Phi {
    type Err = Error;

    /// Parses `a=1,b=2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut pos = 0;
        for part in s.split(',') {
            let (k, v) =
                part.split_once('=').ok_or_else(|| Error::parse(pos, format!("expected letter=value in {part:?}")))?;
            let k = k.trim();
            let letter = match k.as_bytes() {
                [c] if c.is_ascii_lowercase() => c - b'a',
                _ => return Err(Error::parse(pos, format!("bad letter {k:?}"))),
            };
            let v: u64 = v.trim().parse().map_err(|_| Error::parse(pos + k.len() + 1, format!("bad value {v:?}")))?;
            if map.insert(letter, v).is_some() {
                return Err(Error::parse(pos, format!("letter {k} assigned twice")));
            }
            pos += part.len() + 1;
        }
        Phi::new(map)
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(&k, v)| format!("{}={v}", (b'a' + k) as char)).collect();
        f.write_str(&parts.join(","))
    }
}

/// `[0; phi(w_1), phi(w_2), ...]`, open-ended past the materialized prefix.
pub fn build_xi_from_word(w: &Word, phi: &Phi) -> Result<ContinuedFraction> {
    let mut used = [false; 256];
    let mut quotients = Vec::with_capacity(w.len());
    for &s in w.symbols() {
        used[s as usize] = true;
        quotients.push(
            phi.get(s).ok_or_else(|| Error::Domain(format!("phi has no value for letter {}", (b'a' + s) as char)))?,
        );
    }
    if used.iter().filter(|&&u| u).count() < 2 {
        return Err(Error::Domain("a constant word gives a quadratic or rational number".into()));
    }
    ContinuedFraction::open(0, quotients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::generate_fibonacci;

    #[test]
    fn fibonacci_transliteration() {
        let cf = build_xi_from_word(&generate_fibonacci(6), &Phi::standard()).unwrap();
        assert_eq!(cf.head(), &[1, 2, 1, 1, 2, 1]);
    }

    #[test]
    fn phi_parsing_and_guards() {
        assert_eq!("a=3,b=7".parse::<Phi>().unwrap().get(1), Some(7));
        assert!(matches!("a=1,b=1".parse::<Phi>(), Err(Error::NonInjectivePhi)));
        assert!("a=1,B=2".parse::<Phi>().is_err());
        assert!("a=0".parse::<Phi>().is_err());
        assert_eq!("b=2,a=1".parse::<Phi>().unwrap().to_string(), "a=1,b=2");
        let constant = Word::from_letters("aaaa").unwrap();
        assert!(build_xi_from_word(&constant, &Phi::standard()).is_err());
    }
}
