//! Simple continued fractions `[a0; a1, a2, ...]` and their convergents.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::matrix::{quotient_product, Mat2};
use crate::error::{Error, Result};

/// What follows the explicitly listed partial quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// The expansion ends: the value is rational.
    Terminates,
    /// The listed period repeats forever.
    Periodic(Vec<u64>),
    /// More quotients exist but are not known (e.g. a finite word prefix).
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientAt {
    Known(u64),
    End,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    a0: BigInt,
    head: Vec<u64>,
    tail: Tail,
}

impl ContinuedFraction {
    pub fn new(a0: impl Into<BigInt>, head: Vec<u64>, tail: Tail) -> Result<Self> {
        if head.contains(&0) {
            return Err(Error::Domain("partial quotients must be positive".into()));
        }
        if let Tail::Periodic(p) = &tail {
            if p.is_empty() || p.contains(&0) {
                return Err(Error::Domain("period must be nonempty and positive".into()));
            }
        }
        Ok(ContinuedFraction { a0: a0.into(), head, tail })
    }

    pub fn finite(a0: impl Into<BigInt>, quotients: Vec<u64>) -> Result<Self> {
        Self::new(a0, quotients, Tail::Terminates)
    }

    pub fn periodic(a0: impl Into<BigInt>, head: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        Self::new(a0, head, Tail::Periodic(period))
    }

    pub fn open(a0: impl Into<BigInt>, quotients: Vec<u64>) -> Result<Self> {
        Self::new(a0, quotients, Tail::Open)
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn head(&self) -> &[u64] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The partial quotient `a_k` for `k >= 1`.
    pub fn quotient(&self, k: usize) -> QuotientAt {
        assert!(k >= 1, "partial quotients are 1-indexed");
        if let Some(&a) = self.head.get(k - 1) {
            return QuotientAt::Known(a);
        }
        match &self.tail {
            Tail::Terminates => QuotientAt::End,
            Tail::Open => QuotientAt::Unknown,
            Tail::Periodic(p) => QuotientAt::Known(p[(k - 1 - self.head.len()) % p.len()]),
        }
    }

    /// Number of quotients that can be read, `None` if unbounded.
    pub fn known_len(&self) -> Option<usize> {
        match self.tail {
            Tail::Periodic(_) => None,
            _ => Some(self.head.len()),
        }
    }

    /// `a_1..a_n`, or fewer if the expansion stops first. Fails on unknown quotients.
    pub fn quotients(&self, n: usize) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            match self.quotient(k) {
                QuotientAt::Known(a) => out.push(a),
                QuotientAt::End => break,
                QuotientAt::Unknown => {
                    return Err(Error::InsufficientData(format!(
                        "continued fraction only has {} known partial quotients, {n} requested",
                        k - 1
                    )))
                }
            }
        }
        Ok(out)
    }

    /// `a_{from+1}..a_to`; fails unless every one of them exists.
    pub fn quotient_range(&self, from: usize, to: usize) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(to.saturating_sub(from));
        for k in from + 1..=to {
            match self.quotient(k) {
                QuotientAt::Known(a) => out.push(a),
                QuotientAt::End => {
                    return Err(Error::InsufficientData(format!("expansion terminates after {} quotients", k - 1)))
                }
                QuotientAt::Unknown => {
                    return Err(Error::InsufficientData(format!(
                        "continued fraction only has {} known partial quotients, {to} requested",
                        k - 1
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Product of the first `n` quotient matrices: `[[q_n, q_{n-1}], [p_n - a0 q_n, p_{n-1} - a0 q_{n-1}]]`.
    pub fn quotient_matrix(&self, n: usize) -> Result<Mat2> {
        Ok(quotient_product(&self.quotient_range(0, n)?))
    }
}

/// The convergent `p_n / q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergentPair {
    pub index: usize,
    #[serde(serialize_with = "crate::bracket::ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::bracket::ser_bigint")]
    pub q: BigInt,
}

/// Convergents with indices `0..count`, built by multiplying quotient matrices left to right.
pub fn convergents(cf: &ContinuedFraction, count: usize) -> Result<Vec<ConvergentPair>> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let mut m = Mat2::identity();
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            match cf.quotient(n) {
                QuotientAt::Known(a) => m = &m * &Mat2::quotient(a),
                QuotientAt::End => break,
                QuotientAt::Unknown => {
                    return Err(Error::InsufficientData(format!("quotient a_{n} is unknown")));
                }
            }
        }
        out.push(ConvergentPair { index: n, p: &m.c + &cf.a0 * &m.a, q: m.a.clone() });
    }
    Ok(out)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cf:{};", self.a0)?;
        let head: Vec<String> = self.head.iter().map(u64::to_string).collect();
        write!(f, "{}", head.join(","))?;
        match &self.tail {
            Tail::Terminates => Ok(()),
            Tail::Open => write!(f, "{}...", if head.is_empty() { "" } else { "," }),
            Tail::Periodic(p) => {
                let p: Vec<String> = p.iter().map(u64::to_string).collect();
                write!(f, "{}({})", if head.is_empty() { "" } else { "," }, p.join(","))
            }
        }
    }
}

/// Parses `cf:a0;a1,a2,...`.
///
/// A parenthesised group at the end is the period, so `cf:0;(1)` is the
/// golden-ratio conjugate and `cf:0;1,(2)` is `1/sqrt(2)`. A
/// trailing `...` repeats the last listed quotient.
impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("cf:").ok_or_else(|| Error::parse(0, "expected prefix `cf:`"))?;
        let offset = 3;
        let (a0s, rest) = body.split_once(';').unwrap_or((body, ""));
        let a0: BigInt = a0s.trim().parse().map_err(|_| Error::parse(offset, format!("bad integer part {a0s:?}")))?;
        let mut pos = offset + a0s.len() + 1;
        let rest = rest.trim();
        if rest.is_empty() {
            return ContinuedFraction::finite(a0, vec![]);
        }
        let (listed, tail_kind) = if let Some(open) = rest.find('(') {
            let close = rest
                .rfind(')')
                .filter(|&c| c == rest.len() - 1)
                .ok_or_else(|| Error::parse(pos + rest.len(), "unclosed period"))?;
            let period = parse_list(&rest[open + 1..close], pos + open + 1)?;
            (&rest[..open], Some(Tail::Periodic(period)))
        } else if let Some(stripped) = rest.strip_suffix("...") {
            (stripped, None)
        } else {
            (rest, Some(Tail::Terminates))
        };
        let listed = listed.trim_end_matches(|c: char| c == ',' || c.is_whitespace());
        let head = parse_list(listed, pos)?;
        pos += listed.len();
        let tail = match tail_kind {
            Some(t) => t,
            None => {
                let last = *head.last().ok_or_else(|| Error::parse(pos, "`...` needs a quotient to repeat"))?;
                Tail::Periodic(vec![last])
            }
        };
        ContinuedFraction::new(a0, head, tail).map_err(|e| Error::parse(pos, e.to_string()))
    }
}

fn parse_list(s: &str, pos: usize) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut out = vec![];
    let mut at = pos;
    for part in s.split(',') {
        let v: u64 = part.trim().parse().map_err(|_| Error::parse(at, format!("bad partial quotient {part:?}")))?;
        if v == 0 {
            return Err(Error::parse(at, "partial quotients must be positive"));
        }
        out.push(v);
        at += part.len() + 1;
    }
    Ok(out)
}

impl serde::Serialize for ContinuedFraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl ContinuedFraction {
    /// Whether the value is known to be rational (finite expansion).
    pub fn is_rational(&self) -> bool {
        matches!(self.tail, Tail::Terminates)
    }

    pub fn is_zero_value(&self) -> bool {
        self.a0.is_zero() && self.head.is_empty() && self.is_rational()
    }
}
