//! Refinable rational enclosures of a real number given by its continued fraction.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::cache::ConvergentCache;
use super::cf::{ContinuedFraction, QuotientAt};
use super::matrix::Mat2;
use super::rational::Q;
use crate::bracket::Triple;
use crate::error::{Error, Result};

/// Default cap on the number of partial quotients used by refinement loops.
pub const DEFAULT_REFINEMENT_CAP: usize = 10_000;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RationalInterval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        RationalInterval { lo, hi }
    }

    pub fn point(v: Q) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Q {
        self.hi.sub(&self.lo)
    }

    pub fn contains(&self, v: &Q) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, o: &RationalInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `k * self`.
    pub fn scale(&self, k: &BigInt) -> Self {
        let (a, b) = (self.lo.mul_int(k), self.hi.mul_int(k));
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    /// `self - k`.
    pub fn sub_int(&self, k: &BigInt) -> Self {
        let k = Q::from_int(k.clone());
        RationalInterval { lo: self.lo.sub(&k), hi: self.hi.sub(&k) }
    }

    /// `{ |t| : t in self }`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if self.hi.is_negative() || self.hi.is_zero() {
            RationalInterval { lo: self.hi.neg(), hi: self.lo.neg() }
        } else {
            let top = self.lo.neg().max_of(&self.hi).clone();
            RationalInterval { lo: Q::zero(), hi: top }
        }
    }

    /// `{ max(s, t) : s in self, t in o }`.
    pub fn max_with(&self, o: &RationalInterval) -> Self {
        RationalInterval { lo: self.lo.max_of(&o.lo).clone(), hi: self.hi.max_of(&o.hi).clone() }
    }

    /// `{ t^2 : t in self }`.
    pub fn square(&self) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        if !self.lo.is_negative() {
            RationalInterval { lo: a, hi: b }
        } else if self.hi.is_negative() {
            RationalInterval { lo: b, hi: a }
        } else {
            RationalInterval { lo: Q::zero(), hi: a.max_of(&b).clone() }
        }
    }

    /// Strict separation: every point of `self` is below every point of `o`.
    pub fn strictly_below(&self, o: &RationalInterval) -> bool {
        self.hi < o.lo
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    /// `ln` of the midpoint, computed without leaving exact arithmetic until the end.
    pub fn ln_mid(&self) -> f64 {
        let two = Q::from_int(2);
        let mid = self.lo.add(&self.hi);
        let mid = Q::new(mid.numer().clone(), mid.denom() * two.numer());
        mid.ln_abs()
    }

    /// `(hi - lo) / |lo|` as a float; infinite when `lo = 0`.
    pub fn relative_width(&self) -> f64 {
        if self.lo.is_zero() {
            return f64::INFINITY;
        }
        (self.width().ln_abs() - self.lo.ln_abs()).exp()
    }
}

/// An interval guaranteed to contain the value of a continued fraction,
/// obtained from the convergents of depth `n` and `n + 1`.
#[derive(Clone, Debug)]
pub struct RealEnclosure {
    interval: RationalInterval,
    depth: usize,
    exact: bool,
    cf: Arc<ContinuedFraction>,
}

impl RealEnclosure {
    /// Enclosure after `depth` partial quotients.
    pub fn at_depth(cf: Arc<ContinuedFraction>, depth: usize) -> Result<Self> {
        let depth = match cf.known_len() {
            Some(len) if depth > len && cf.is_rational() => len,
            _ => depth,
        };
        let m = cf.quotient_matrix(depth)?;
        Self::from_matrix(cf, depth, &m)
    }

    /// Same as [`RealEnclosure::at_depth`], reusing checkpointed products.
    pub fn at_depth_cached(cache: &mut ConvergentCache, depth: usize) -> Result<Self> {
        let m = cache.matrix(depth)?;
        Self::from_matrix(cache.source().clone(), depth, &m)
    }

    /// Builds the enclosure from the product of the first `depth` quotient matrices.
    pub fn from_matrix(cf: Arc<ContinuedFraction>, depth: usize, m: &Mat2) -> Result<Self> {
        let a0 = cf.a0().clone();
        let conv = |q: &BigInt, p: &BigInt| Q::new(p + &a0 * q, q.clone());
        let here = conv(&m.a, &m.c);
        let (other, exact) = match cf.quotient(depth + 1) {
            QuotientAt::Known(a) => {
                let a = BigInt::from(a);
                (conv(&(&a * &m.a + &m.b), &(&a * &m.c + &m.d)), false)
            }
            QuotientAt::End => (here.clone(), true),
            QuotientAt::Unknown => (conv(&(&m.a + &m.b), &(&m.c + &m.d)), false),
        };
        let interval =
            if here <= other { RationalInterval::new(here, other) } else { RationalInterval::new(other, here) };
        Ok(RealEnclosure { interval, depth, exact, cf })
    }

    pub fn interval(&self) -> &RationalInterval {
        &self.interval
    }

    pub fn lo(&self) -> &Q {
        &self.interval.lo
    }

    pub fn hi(&self) -> &Q {
        &self.interval.hi
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn source(&self) -> &Arc<ContinuedFraction> {
        &self.cf
    }

    pub fn width(&self) -> Q {
        self.interval.width()
    }

    /// Deepens the enclosure, roughly doubling its precision. Never widens it.
    pub fn refine(&mut self, cap: usize) -> Result<()> {
        if self.exact {
            return Ok(());
        }
        if self.depth >= cap {
            return Err(Error::RefinementCap { cap });
        }
        if let Some(len) = self.cf.known_len() {
            if self.depth >= len && !self.cf.is_rational() {
                return Err(Error::InsufficientData(format!(
                    "no partial quotients beyond {len} are known; cannot refine"
                )));
            }
        }
        let mut next = (self.depth * 2).max(self.depth + 8).min(cap);
        if let Some(len) = self.cf.known_len() {
            next = next.min(len);
        }
        let fresh = RealEnclosure::at_depth(self.cf.clone(), next)?;
        self.interval = RationalInterval::new(
            fresh.interval.lo.max_of(&self.interval.lo).clone(),
            fresh.interval.hi.min_of(&self.interval.hi).clone(),
        );
        self.depth = fresh.depth;
        self.exact = fresh.exact;
        Ok(())
    }

    /// Refines until the width is at most `width`.
    pub fn refine_to_width(&mut self, width: &Q, cap: usize) -> Result<()> {
        while &self.width() > width {
            self.refine(cap)?;
        }
        Ok(())
    }

    /// Enclosure of the square of the value.
    pub fn square(&self) -> RationalInterval {
        self.interval.square()
    }

    /// Upper bound for `|value|`.
    pub fn abs_hi(&self) -> Q {
        self.interval.abs().hi
    }
}

/// An enclosure of width at most `width`.
pub fn enclose(cf: &ContinuedFraction, width: &Q) -> Result<RealEnclosure> {
    assert!(!width.is_negative() && !width.is_zero(), "width must be positive");
    let cf = Arc::new(cf.clone());
    let mut e = RealEnclosure::at_depth(cf, 4)?;
    e.refine_to_width(width, usize::MAX)?;
    Ok(e)
}

/// Interval containing the square of the enclosed value.
pub fn square_enclosure(e: &RealEnclosure) -> RationalInterval {
    e.square()
}

/// Result of a nearest-integer query on an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NearestInteger {
    Value(BigInt),
    Undecidable,
}

/// The integer nearest to every point of `iv`, if the interval avoids all half-integers.
pub fn nearest_in(iv: &RationalInterval) -> NearestInteger {
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let k = iv.lo.add(&half).floor();
    let kq = Q::from_int(k.clone());
    let low_edge = kq.sub(&half);
    let high_edge = kq.add(&half);
    if iv.lo > low_edge && iv.hi < high_edge {
        NearestInteger::Value(k)
    } else {
        NearestInteger::Undecidable
    }
}

/// `round(a0 * xi)` when the scaled enclosure decides it.
pub fn nearest_integer(a0: &BigInt, e: &RealEnclosure) -> NearestInteger {
    nearest_in(&e.interval().scale(a0))
}

/// `round(a0 * xi^2)` when the scaled enclosure decides it.
pub fn nearest_integer_of_square(a0: &BigInt, e: &RealEnclosure) -> NearestInteger {
    nearest_in(&e.square().scale(a0))
}

/// `round(a0 * xi)` and `round(a0 * xi^2)`, starting from width `1/(4 a0)`
/// and doubling the depth on every undecided attempt.
pub fn nearest_pair_certified(a0: &BigInt, cf: &Arc<ContinuedFraction>, cap: usize) -> Result<(BigInt, BigInt)> {
    let mut e = RealEnclosure::at_depth(cf.clone(), 2)?;
    let target = Q::new(BigInt::one(), a0 * 4);
    while e.width() > target {
        e.refine(cap)?;
    }
    loop {
        if let (NearestInteger::Value(x1), NearestInteger::Value(x2)) =
            (nearest_integer(a0, &e), nearest_integer_of_square(a0, &e))
        {
            return Ok((x1, x2));
        }
        e.refine(cap)?;
    }
}

/// Enclosure of `L(x) = max(|x0 xi - x1|, |x0 xi^2 - x2|)`.
#[allow(non_snake_case)]
pub fn eval_L(x: &Triple, xi: &RealEnclosure) -> RationalInterval {
    eval_L_on(x, xi.interval(), &xi.square())
}

/// [`eval_L`] on explicit intervals for `xi` and `xi^2`.
#[allow(non_snake_case)]
pub fn eval_L_on(x: &Triple, xi: &RationalInterval, xi_sq: &RationalInterval) -> RationalInterval {
    let a = xi.scale(&x.x0).sub_int(&x.x1).abs();
    let b = xi_sq.scale(&x.x0).sub_int(&x.x2).abs();
    a.max_with(&b)
}

/// Exact order of `L(x)` and `L(y)`, refining `xi` until the enclosures separate.
#[allow(non_snake_case)]
pub fn compare_L(x: &Triple, y: &Triple, xi: &mut RealEnclosure, cap: usize) -> Result<Ordering> {
    if x == y {
        return Ok(Ordering::Equal);
    }
    loop {
        let lx = eval_L(x, xi);
        let ly = eval_L(y, xi);
        if lx.strictly_below(&ly) {
            return Ok(Ordering::Less);
        }
        if ly.strictly_below(&lx) {
            return Ok(Ordering::Greater);
        }
        if xi.is_exact() && lx == ly {
            return Ok(Ordering::Equal);
        }
        xi.refine(cap)?;
    }
}

/// Exact comparison of `L(x)` with a rational threshold.
#[allow(non_snake_case)]
pub fn compare_L_with(x: &Triple, t: &Q, xi: &mut RealEnclosure, cap: usize) -> Result<Ordering> {
    loop {
        let lx = eval_L(x, xi);
        if &lx.hi < t {
            return Ok(Ordering::Less);
        }
        if &lx.lo > t {
            return Ok(Ordering::Greater);
        }
        if lx.is_point() {
            return Ok(lx.lo.cmp(t));
        }
        xi.refine(cap)?;
    }
}
