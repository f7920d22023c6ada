use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::bracket::{det3, wedge, Triple};
use crate::error::{Error, Result};
use crate::exact::{compare_L, eval_L, nearest_pair_certified, ContinuedFraction, RationalInterval, RealEnclosure, Q};

const CHUNK: u64 = 1 << 14;

/// Record-breaking points of the scan `1 <= a0 <= bound`, in increasing order of `a0`.
#[derive(Clone, Debug)]
pub struct MinimalPointSequence {
    pub points: Vec<Triple>,
    /// Enclosures of `L(a_i)` with relative width below `1e-6`.
    pub l: Vec<RationalInterval>,
    pub bound: u64,
    /// Positions `i` with `det3(a_{i-1}, a_i, a_{i+1}) != 0`.
    pub independent: Vec<usize>,
    pub xi: Arc<ContinuedFraction>,
    pub xi_enclosure: RealEnclosure,
    pub xi_abs_hi: Q,
}

impl MinimalPointSequence {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points `a_i` with `i` independent, in order.
    pub fn d_points(&self) -> Vec<&Triple> {
        self.independent.iter().map(|&i| &self.points[i]).collect()
    }

    /// Position of a point collinear to `x`, if any.
    pub fn position_of(&self, x: &Triple) -> Option<usize> {
        self.points.iter().position(|a| wedge(a, x).is_zero())
    }

    /// Whether every point is primitive and every pair is independent.
    pub fn structure_ok(&self) -> bool {
        let primitive = self.points.iter().all(Triple::is_primitive);
        let independent = (0..self.points.len())
            .all(|i| (i + 1..self.points.len()).all(|j| !wedge(&self.points[i], &self.points[j]).is_zero()));
        primitive && independent
    }

    /// Whether `L` strictly decreases and `a0` strictly increases, decided on the enclosures.
    pub fn records_ok(&self) -> bool {
        self.points.windows(2).all(|w| w[0].x0 < w[1].x0) && self.l.windows(2).all(|w| w[1].strictly_below(&w[0]))
    }
}

/// Fixed-point enclosures `[lo, hi] / 2^shift` of `xi` and `xi^2`.
#[derive(Clone, Copy, Debug)]
struct FixedXi {
    shift: u32,
    xi: (i128, i128),
    sq: (i128, i128),
}

fn bits_u128(v: u128) -> u32 {
    128 - v.leading_zeros()
}

fn to_fixed(q: &Q, shift: u32, up: bool) -> Result<i128> {
    let scaled = q.mul_int(&(BigInt::one() << shift));
    let f = scaled.floor();
    let v = if up && Q::from_int(f.clone()) != scaled { f + 1 } else { f };
    v.to_i128().ok_or_else(|| Error::Domain("fixed-point overflow".into()))
}

impl FixedXi {
    fn new(e: &mut RealEnclosure, b_max: u64, cap: usize) -> Result<Self> {
        let mag = e.abs_hi().floor().to_u128().ok_or_else(|| Error::Domain("xi too large for the scan".into()))?;
        let m = mag.max(mag * mag) + 1;
        let used = bits_u128(b_max as u128) + bits_u128(m) + 1;
        if used + 32 > 120 {
            return Err(Error::Domain("bound too large for the fixed-point scan".into()));
        }
        let shift = 120 - used;
        let width = Q::new(BigInt::one(), BigInt::one() << (shift + 2));
        while e.width() > width || e.square().width() > width {
            e.refine(cap)?;
        }
        let sq = e.square();
        Ok(FixedXi {
            shift,
            xi: (to_fixed(e.lo(), shift, false)?, to_fixed(e.hi(), shift, true)?),
            sq: (to_fixed(&sq.lo, shift, false)?, to_fixed(&sq.hi, shift, true)?),
        })
    }

    /// Nearest integer to every point of `[lo, hi] / 2^shift`, if unique.
    fn nearest(&self, lo: i128, hi: i128) -> Option<i128> {
        let unit = 1i128 << self.shift;
        let half = unit >> 1;
        let a = (lo + half).div_euclid(unit);
        let b = (hi + half).div_euclid(unit);
        (a == b && (hi + half).rem_euclid(unit) != 0).then_some(a)
    }

    fn abs_interval(lo: i128, hi: i128) -> (i128, i128) {
        if lo >= 0 {
            (lo, hi)
        } else if hi <= 0 {
            (-hi, -lo)
        } else {
            (0, hi.max(-lo))
        }
    }

    /// Fixed-point enclosure of `L(a0, a1, a2)`.
    fn l_of(&self, a0: i128, a1: i128, a2: i128) -> (i128, i128) {
        let one = a1 << self.shift;
        let two = a2 << self.shift;
        let e1 = Self::abs_interval(a0 * self.xi.0 - one, a0 * self.xi.1 - one);
        let e2 = Self::abs_interval(a0 * self.sq.0 - two, a0 * self.sq.1 - two);
        (e1.0.max(e2.0), e1.1.max(e2.1))
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    point: Triple,
    l: (i128, i128),
}

struct Scanner {
    fx: FixedXi,
    xi: RealEnclosure,
    cf: Arc<ContinuedFraction>,
    cap: usize,
}

impl Scanner {
    fn candidate(&self, a0: u64) -> Result<Candidate> {
        let a = a0 as i128;
        let (a1, a2) = match (
            self.fx.nearest(a * self.fx.xi.0, a * self.fx.xi.1),
            self.fx.nearest(a * self.fx.sq.0, a * self.fx.sq.1),
        ) {
            (Some(a1), Some(a2)) => (a1, a2),
            _ => {
                let (a1, a2) = nearest_pair_certified(&BigInt::from(a0), &self.cf, self.cap)?;
                (a1.to_i128().expect("bounded"), a2.to_i128().expect("bounded"))
            }
        };
        Ok(Candidate { point: Triple::new(a0, a1, a2), l: self.fx.l_of(a, a1, a2) })
    }

    /// Whether `L(c) < L(best)`.
    fn beats(&mut self, c: &Candidate, best: &Candidate) -> Result<bool> {
        if c.l.1 < best.l.0 {
            return Ok(true);
        }
        if c.l.0 > best.l.1 {
            return Ok(false);
        }
        Ok(compare_L(&c.point, &best.point, &mut self.xi, self.cap)? == Ordering::Less)
    }

    fn push_record(&mut self, records: &mut Vec<Candidate>, c: Candidate) -> Result<()> {
        let keep = match records.last() {
            None => true,
            Some(best) => {
                let best = best.clone();
                self.beats(&c, &best)?
            }
        };
        if keep {
            records.push(c);
        }
        Ok(())
    }

    fn local_records(&mut self, from: u64, to: u64) -> Result<Vec<Candidate>> {
        let mut out = Vec::new();
        for a0 in from..=to {
            let c = self.candidate(a0)?;
            self.push_record(&mut out, c)?;
        }
        Ok(out)
    }
}

/// Scans `1 <= a0 <= b_max` with the nearest-integer candidates and keeps the
/// strict record-breakers of `L`. `workers` threads share the range in chunks.
pub fn minimal_points(
    cf: &Arc<ContinuedFraction>,
    b_max: u64,
    workers: usize,
    cap: usize,
) -> Result<MinimalPointSequence> {
    if b_max == 0 {
        return Err(Error::Precondition("b_max must be at least 1".into()));
    }
    if cf.is_rational() {
        return Err(Error::Precondition("the scan needs an irrational number".into()));
    }
    let mut xi = RealEnclosure::at_depth(cf.clone(), 8)?;
    let fx = FixedXi::new(&mut xi, b_max, cap)?;
    let chunks = b_max.div_ceil(CHUNK);
    let next = AtomicU64::new(0);
    let results: Mutex<Vec<(u64, Result<Vec<Candidate>>)>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..workers.max(1).min(chunks as usize) {
            s.spawn(|| {
                let mut sc = Scanner { fx, xi: xi.clone(), cf: cf.clone(), cap };
                loop {
                    let k = next.fetch_add(1, AtomicOrdering::Relaxed);
                    if k >= chunks {
                        break;
                    }
                    let from = k * CHUNK + 1;
                    let to = ((k + 1) * CHUNK).min(b_max);
                    let r = sc.local_records(from, to);
                    let failed = r.is_err();
                    results.lock().expect("poisoned").push((k, r));
                    if failed {
                        break;
                    }
                }
            });
        }
    });
    let mut results = results.into_inner().expect("poisoned");
    results.sort_by_key(|(k, _)| *k);
    let mut sc = Scanner { fx, xi, cf: cf.clone(), cap };
    let mut records = Vec::new();
    for (_, r) in results {
        for c in r? {
            sc.push_record(&mut records, c)?;
        }
    }
    let points: Vec<Triple> = records.into_iter().map(|c| c.point).collect();
    let mut xi = sc.xi;
    while points.iter().any(|p| eval_L(p, &xi).relative_width() >= 1e-6) {
        xi.refine(cap)?;
    }
    let l = points.iter().map(|p| eval_L(p, &xi)).collect();
    let independent = (1..points.len().saturating_sub(1))
        .filter(|&i| !det3(&points[i - 1], &points[i], &points[i + 1]).is_zero())
        .collect();
    let xi_abs_hi = xi.abs_hi();
    Ok(MinimalPointSequence { points, l, bound: b_max, independent, xi: cf.clone(), xi_enclosure: xi, xi_abs_hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{build_xi_from_word, Phi};
    use crate::word::generate_fibonacci;

    fn fib_xi() -> Arc<ContinuedFraction> {
        Arc::new(build_xi_from_word(&generate_fibonacci(4000), &Phi::standard()).unwrap())
    }

    /// Float brute force over every `(a1, a2)` within one of `a0 xi`, `a0 xi^2`.
    fn brute(xi: f64, b: u64) -> Vec<(i64, i64, i64)> {
        let mut best = f64::INFINITY;
        let mut out = Vec::new();
        for a0 in 1..=b as i64 {
            let (t1, t2) = (a0 as f64 * xi, a0 as f64 * xi * xi);
            let mut local = (f64::INFINITY, 0, 0);
            for a1 in t1.floor() as i64 - 1..=t1.ceil() as i64 + 1 {
                for a2 in t2.floor() as i64 - 1..=t2.ceil() as i64 + 1 {
                    let l = (t1 - a1 as f64).abs().max((t2 - a2 as f64).abs());
                    if l < local.0 {
                        local = (l, a1, a2);
                    }
                }
            }
            if local.0 < best {
                best = local.0;
                out.push((a0, local.1, local.2));
            }
        }
        out
    }

    #[test]
    fn small_scan_matches_float_brute_force() {
        let cf = fib_xi();
        let seq = minimal_points(&cf, 5000, 1, 10_000).unwrap();
        let xi = RealEnclosure::at_depth(cf, 40).unwrap().interval().mid_f64();
        let expect = brute(xi, 5000);
        let got: Vec<_> = seq
            .points
            .iter()
            .map(|p| (p.x0.to_i64().unwrap(), p.x1.to_i64().unwrap(), p.x2.to_i64().unwrap()))
            .collect();
        assert_eq!(got, expect);
        assert!(seq.structure_ok());
        assert!(seq.records_ok());
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let cf = fib_xi();
        let a = minimal_points(&cf, 100_000, 1, 10_000).unwrap();
        let b = minimal_points(&cf, 100_000, 4, 10_000).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn single_candidate() {
        let seq = minimal_points(&fib_xi(), 1, 1, 10_000).unwrap();
        assert_eq!(seq.points.len(), 1);
        assert_eq!(seq.points[0].x0, BigInt::from(1));
    }
}
