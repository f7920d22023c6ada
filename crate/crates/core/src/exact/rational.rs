//! Unreduced exact rationals.
//!
//! Reduction by gcd dominates the cost on numbers with hundreds of thousands
//! of bits, so values are kept as raw numerator/denominator pairs and compared
//! by cross multiplication. `reduced` is available for output.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational number `num / den` with `den > 0`, not necessarily in lowest terms.
#[derive(Clone, Debug)]
pub struct Q {
    num: BigInt,
    den: BigInt,
}

impl Q {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            Q { num: -num, den: -den }
        } else {
            Q { num, den }
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Q { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Q::from_int(0)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Q {
        Q { num: self.num.abs(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Q) -> Q {
        if self.den == o.den {
            return Q { num: &self.num + &o.num, den: self.den.clone() };
        }
        Q { num: &self.num * &o.den + &o.num * &self.den, den: &self.den * &o.den }
    }

    pub fn sub(&self, o: &Q) -> Q {
        if self.den == o.den {
            return Q { num: &self.num - &o.num, den: self.den.clone() };
        }
        Q { num: &self.num * &o.den - &o.num * &self.den, den: &self.den * &o.den }
    }

    pub fn mul(&self, o: &Q) -> Q {
        Q { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn mul_int(&self, k: &BigInt) -> Q {
        Q { num: &self.num * k, den: self.den.clone() }
    }

    pub fn neg(&self) -> Q {
        Q { num: -&self.num, den: self.den.clone() }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    pub fn min_of<'a>(&'a self, o: &'a Q) -> &'a Q {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn max_of<'a>(&'a self, o: &'a Q) -> &'a Q {
        if self >= o {
            self
        } else {
            o
        }
    }

    /// Lowest-terms copy.
    pub fn reduced(&self) -> Q {
        let g = self.num.gcd(&self.den);
        if g.is_one() || g.is_zero() {
            return self.clone();
        }
        Q { num: &self.num / &g, den: &self.den / &g }
    }

    /// Natural log of `|self|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.num.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_bigint(&self.num) - ln_bigint(&self.den)
    }

    pub fn to_f64(&self) -> f64 {
        if self.num.is_zero() {
            return 0.0;
        }
        let v = self.ln_abs().exp();
        if self.num.is_negative() {
            -v
        } else {
            v
        }
    }
}

/// Natural log of `|n|`, accurate to double precision for any size.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        let (_, digits) = n.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        return v.ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    let (_, digits) = top.to_u64_digits();
    (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        let (sa, sb) = (self.num.sign(), o.num.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if self.den == o.den {
            return self.num.cmp(&o.num);
        }
        (&self.num * &o.den).cmp(&(&o.num * &self.den))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den.is_one() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

impl FromStr for Q {
    type Err = Error;

    fn from_str(s: &str) -> Result<Q> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| Error::parse(0, format!("bad numerator {n:?}")))?;
        let den: BigInt = d.parse().map_err(|_| Error::parse(n.len() + 1, format!("bad denominator {d:?}")))?;
        if den.is_zero() {
            return Err(Error::parse(n.len() + 1, "zero denominator"));
        }
        Ok(Q::new(num, den))
    }
}

impl serde::Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
