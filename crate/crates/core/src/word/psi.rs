use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::delta::{tail_estimate, DeltaEstimate};
use crate::error::{Error, Result};
use crate::exact::ln_bigint;

/// An index function `psi` with `i - c <= psi(i) <= i - 1`, stored as a finite
/// table of values plus an eventually periodic offset rule `psi(i) = i - o(i)`.
///
/// Values not covered by either part are undefined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiFunction {
    #[serde(default)]
    pub exceptions: BTreeMap<usize, usize>,
    /// Offsets `o(start), o(start + 1), ...`, repeated.
    #[serde(default)]
    pub offsets_period: Vec<usize>,
    pub start: usize,
    pub c: usize,
    /// Largest index with a known value, for functions read off finite data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
}

impl PsiFunction {
    /// `psi(i) = i - period[(i - start) mod p]` for `i >= start`, `psi(i) = i - 1` before.
    pub fn periodic(period: Vec<usize>, start: usize) -> Result<Self> {
        let start = start.max(1);
        let c = period.iter().copied().max().unwrap_or(1).max(1);
        let exceptions = (1..start).map(|i| (i, i - 1)).collect();
        let psi = PsiFunction { exceptions, offsets_period: period, start, c, horizon: None };
        psi.validate(start + 4 * psi.offsets_period.len().max(1) + c)?;
        Ok(psi)
    }

    /// `psi(i) = i - 2` for `i >= 2`, the function of the Fibonacci word.
    pub fn fibonacci() -> Self {
        PsiFunction::periodic(vec![2], 2).expect("valid")
    }

    /// The function of the characteristic Sturmian word for `s = head, period, period, ...`:
    /// `psi(n) = n - s_k - 1` at `n = s_1 + ... + s_k` for `k >= 2`, and `n - 1` elsewhere.
    pub fn sturmian(head: &[u64], period: &[u64]) -> Result<Self> {
        if period.is_empty() || period.iter().chain(head).any(|&a| a == 0) {
            return Err(Error::Domain("Sturmian quotients need a nonempty positive period".into()));
        }
        let s = |k: usize| -> usize {
            if k <= head.len() {
                head[k - 1] as usize
            } else {
                period[(k - 1 - head.len()) % period.len()] as usize
            }
        };
        let first = 2.max(head.len() + 1);
        let partial = |k: usize| (1..=k).map(s).sum::<usize>();
        let start = partial(first);
        let mut exceptions = BTreeMap::new();
        let mut k = 2;
        for i in 1..start {
            let pos = partial(k);
            if i == pos {
                exceptions.insert(i, i - s(k) - 1);
                k += 1;
            } else {
                exceptions.insert(i, i - 1);
            }
        }
        let mut offsets = Vec::new();
        for k in first..first + period.len() {
            offsets.push(s(k) + 1);
            offsets.resize(offsets.len() + s(k + 1) - 1, 1);
        }
        let c = offsets.iter().copied().max().unwrap_or(1);
        Ok(PsiFunction { exceptions, offsets_period: offsets, start, c, horizon: None })
    }

    /// A function known only through its listed values.
    pub fn partial(values: BTreeMap<usize, usize>, horizon: usize) -> Self {
        let c = values.iter().map(|(&i, &v)| i - v).max().unwrap_or(1);
        PsiFunction { exceptions: values, offsets_period: vec![], start: horizon + 1, c, horizon: Some(horizon) }
    }

    pub fn eval(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        if let Some(h) = self.horizon {
            if i > h {
                return None;
            }
        }
        if let Some(&v) = self.exceptions.get(&i) {
            return Some(v);
        }
        if i >= self.start && !self.offsets_period.is_empty() {
            let o = self.offsets_period[(i - self.start) % self.offsets_period.len()];
            return i.checked_sub(o);
        }
        None
    }

    /// `i - psi(i)`.
    pub fn offset(&self, i: usize) -> Option<usize> {
        self.eval(i).map(|v| i - v)
    }

    /// Checks the defining inequalities on `1..=horizon`.
    pub fn validate(&self, horizon: usize) -> Result<()> {
        if let Some(&o) = self.offsets_period.iter().find(|&&o| o == 0 || o > self.c) {
            return Err(Error::Domain(format!("offset {o} is outside 1..={}", self.c)));
        }
        for i in 1..=horizon {
            if let Some(&v) = self.exceptions.get(&i) {
                if v >= i {
                    return Err(Error::Domain(format!("psi({i}) = {v} is not below {i}")));
                }
                if i >= self.start && i - v > self.c {
                    return Err(Error::Domain(format!("psi({i}) = {v} is below {i} - c")));
                }
            } else if i >= self.start && !self.offsets_period.is_empty() && self.eval(i).is_none() {
                return Err(Error::Domain(format!("psi({i}) would be negative")));
            }
        }
        Ok(())
    }

    /// Parses the JSON file format.
    pub fn from_json(s: &str) -> Result<Self> {
        let psi: PsiFunction =
            serde_json::from_str(s).map_err(|e| Error::parse(e.column(), format!("psi file: {e}")))?;
        psi.validate(psi.start + 2 * psi.offsets_period.len().max(1))?;
        Ok(psi)
    }
}

/// All `n <= horizon` with `psi(n) <= n - 2`.
pub fn theta_sequence(psi: &PsiFunction, horizon: usize) -> Vec<usize> {
    (1..=horizon).filter(|&n| psi.offset(n).is_some_and(|o| o >= 2)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCheck {
    pub reduced: bool,
    /// `(theta_{k-1}, theta_k)` for the first failing pair.
    pub violation: Option<(usize, usize)>,
}

/// Whether `psi(theta_k) < theta_{k-1}` and `psi(theta_k) != psi(theta_{k-1})` for
/// every consecutive pair with `grace <= theta_k <= horizon`.
pub fn is_asymptotically_reduced(psi: &PsiFunction, horizon: usize, grace: usize) -> ReducedCheck {
    let theta = theta_sequence(psi, horizon);
    for w in theta.windows(2) {
        let (prev, cur) = (w[0], w[1]);
        if cur < grace {
            continue;
        }
        let (pc, pp) = (psi.eval(cur).expect("theta entries are defined"), psi.eval(prev).expect("defined"));
        if pc >= prev || pc == pp {
            return ReducedCheck { reduced: false, violation: Some((prev, cur)) };
        }
    }
    ReducedCheck { reduced: true, violation: None }
}

/// `limsup m_{i+1}/m_i` for the sequence `m_0 = 0, m_1 = 1, m_2 = 2`,
/// `m_{i+1} = 2 m_i - m_{psi(i)}`, forced to increase by at least one before `psi.start`.
pub fn delta_of_psi(psi: &PsiFunction, horizon: usize) -> Result<DeltaEstimate> {
    let (trace, _) = synthetic_sequence(psi, horizon)?;
    tail_estimate(trace, 0.5)
}

/// The synthetic sequence and its consecutive ratios.
pub fn synthetic_sequence(psi: &PsiFunction, horizon: usize) -> Result<(Vec<f64>, Vec<BigInt>)> {
    if horizon < 4 {
        return Err(Error::InsufficientData("horizon must be at least 4".into()));
    }
    let mut m: Vec<BigInt> = vec![BigInt::from(0), BigInt::one(), BigInt::from(2)];
    for i in 2..horizon {
        let j = psi.eval(i).ok_or_else(|| Error::InsufficientData(format!("psi({i}) is undefined")))?;
        let rule = &m[i] * 2 - &m[j];
        let next = if i < psi.start {
            let floor = &m[i] + 1;
            if rule > floor {
                rule
            } else {
                floor
            }
        } else if rule > m[i] {
            rule
        } else {
            return Err(Error::NonIncreasing(i + 1));
        };
        m.push(next);
    }
    let logs: Vec<f64> = m.iter().map(ln_bigint).collect();
    let trace = logs.windows(2).skip(1).map(|w| (w[1] - w[0]).exp()).collect();
    Ok((trace, m))
}

/// Witness for equivalence modulo finite shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `psi(i) - i = psi2(i - shift) - (i - shift)` for `from <= i <= horizon`.
    pub shift: i64,
    pub from: usize,
}

/// Searches shifts `|delta| <= horizon / 4` and start indices `<= horizon / 2`
/// under which the offset sequences agree up to `horizon`.
pub fn psi_equivalent(psi: &PsiFunction, psi2: &PsiFunction, horizon: usize) -> Equivalence {
    let o1: Vec<Option<usize>> = (0..=horizon).map(|i| psi.offset(i)).collect();
    let o2: Vec<Option<usize>> = (0..=horizon).map(|i| psi2.offset(i)).collect();
    let max_shift = (horizon / 4) as i64;
    let mut shifts: Vec<i64> = (-max_shift..=max_shift).collect();
    shifts.sort_by_key(|d| (d.abs(), *d < 0));
    let mut best: Option<(i64, usize)> = None;
    for d in shifts {
        let mut from = None;
        let mut compared = 0;
        for i in (1..=horizon).rev() {
            let j = i as i64 - d;
            if j < 1 || j > horizon as i64 {
                continue;
            }
            match (o1[i], o2[j as usize]) {
                (Some(a), Some(b)) if a == b => {
                    compared += 1;
                    from = Some(i);
                }
                (Some(_), Some(_)) => break,
                _ => {}
            }
        }
        if let Some(f) = from {
            if f <= horizon / 2 && compared >= horizon / 4 && best.is_none_or(|(_, bf)| f < bf) {
                best = Some((d, f));
                if f <= 1 {
                    break;
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    match best {
        Some((shift, from)) => Equivalence { equivalent: true, shift, from },
        None => Equivalence { equivalent: false, shift: 0, from: 0 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_of_simple_functions() {
        let fib = PsiFunction::fibonacci();
        assert_eq!(theta_sequence(&fib, 7), vec![2, 3, 4, 5, 6, 7]);
        let unit = PsiFunction::periodic(vec![1], 1).unwrap();
        assert!(theta_sequence(&unit, 100).is_empty());
        let s3 = PsiFunction::sturmian(&[], &[3]).unwrap();
        assert_eq!(theta_sequence(&s3, 20), vec![6, 9, 12, 15, 18]);
        assert_eq!(s3.eval(9), Some(5));
    }

    #[test]
    fn sturmian_psi_with_mixed_quotients() {
        // s = 2, 1, (3): theta at 3 (offset 2), 6 (offset 4), 9, ...
        let psi = PsiFunction::sturmian(&[2, 1], &[3]).unwrap();
        assert_eq!(theta_sequence(&psi, 12), vec![3, 6, 9, 12]);
        assert_eq!(psi.offset(3), Some(2));
        assert_eq!(psi.offset(6), Some(4));
        assert_eq!(psi.offset(7), Some(1));
    }

    #[test]
    fn reducedness() {
        assert!(is_asymptotically_reduced(&PsiFunction::fibonacci(), 500, 0).reduced);
        assert!(is_asymptotically_reduced(&PsiFunction::sturmian(&[], &[2]).unwrap(), 1000, 0).reduced);
        let unit = PsiFunction::periodic(vec![1], 1).unwrap();
        assert!(is_asymptotically_reduced(&unit, 100, 0).reduced);
        // Offsets 2, 3, 2, 3, ...: psi(4) = psi(3) = 1 and so on every period.
        let bad = PsiFunction::periodic(vec![2, 3], 3).unwrap();
        let r = is_asymptotically_reduced(&bad, 100, 10);
        assert!(!r.reduced);
        assert!(r.violation.unwrap().1 >= 10);
    }

    #[test]
    fn delta_of_fibonacci_function() {
        let d = delta_of_psi(&PsiFunction::fibonacci(), 1000).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((d.value - golden).abs() < 1e-6);
        assert!(d.liminf > 1.0);
    }

    #[test]
    fn non_increasing_rule_is_reported() {
        // An invalid value psi(4) = 4 gives m = 0, 1, 2, 3, 4, 4.
        let mut psi = PsiFunction::periodic(vec![1], 1).unwrap();
        psi.exceptions.insert(4, 4);
        assert!(matches!(delta_of_psi(&psi, 10), Err(Error::NonIncreasing(5))));
    }

    #[test]
    fn equivalence_witnesses() {
        let fib = PsiFunction::fibonacci();
        let e = psi_equivalent(&fib, &fib, 200);
        assert_eq!((e.equivalent, e.shift), (true, 0));
        let s2 = PsiFunction::sturmian(&[], &[2]).unwrap();
        assert!(!psi_equivalent(&fib, &s2, 200).equivalent);
        let pattern = vec![1, 3, 1, 1, 4];
        let a = PsiFunction::periodic(pattern.clone(), 5).unwrap();
        let b = PsiFunction::periodic(pattern, 8).unwrap();
        let e = psi_equivalent(&a, &b, 200);
        assert!(e.equivalent);
        assert_eq!(e.shift.rem_euclid(5), 2);
    }

    #[test]
    fn json_format() {
        let psi = PsiFunction::from_json(r#"{"exceptions": {"1": 0}, "offsets_period": [1, 3], "start": 2, "c": 3}"#)
            .unwrap();
        assert_eq!(psi.eval(2), Some(1));
        assert_eq!(psi.eval(3), Some(0));
        assert!(PsiFunction::from_json(r#"{"offsets_period": [4], "start": 2, "c": 3}"#).is_err());
        assert!(PsiFunction::from_json("{").is_err());
    }
}
