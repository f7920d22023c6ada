use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Mat2;

/// An integer point of Z^3, read as the symmetric matrix `[[x0, x1], [x1, x2]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub x0: BigInt,
    pub x1: BigInt,
    pub x2: BigInt,
}

impl Triple {
    pub fn new(x0: impl Into<BigInt>, x1: impl Into<BigInt>, x2: impl Into<BigInt>) -> Self {
        Triple { x0: x0.into(), x1: x1.into(), x2: x2.into() }
    }

    pub fn from_i64(x0: i64, x1: i64, x2: i64) -> Self {
        Triple::new(x0, x1, x2)
    }

    pub fn zero() -> Self {
        Triple::from_i64(0, 0, 0)
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x0, &self.x1, &self.x2]
    }

    /// Largest absolute coordinate.
    pub fn norm(&self) -> BigInt {
        self.coords().iter().map(|c| c.abs()).max().expect("three coordinates")
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    /// gcd of the coordinates.
    pub fn content(&self) -> BigInt {
        self.x0.gcd(&self.x1).gcd(&self.x2)
    }

    pub fn as_matrix(&self) -> Mat2 {
        Mat2 { a: self.x0.clone(), b: self.x1.clone(), c: self.x1.clone(), d: self.x2.clone() }
    }

    /// Reads a symmetric matrix back as a point.
    pub fn from_symmetric(m: &Mat2) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Domain("matrix is not symmetric".into()));
        }
        Ok(Triple { x0: m.a.clone(), x1: m.b.clone(), x2: m.d.clone() })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Triple { x0: &self.x0 * k, x1: &self.x1 * k, x2: &self.x2 * k }
    }

    pub fn add(&self, o: &Triple) -> Self {
        Triple { x0: &self.x0 + &o.x0, x1: &self.x1 + &o.x1, x2: &self.x2 + &o.x2 }
    }

    pub fn sub(&self, o: &Triple) -> Self {
        Triple { x0: &self.x0 - &o.x0, x1: &self.x1 - &o.x1, x2: &self.x2 - &o.x2 }
    }

    pub fn neg(&self) -> Self {
        Triple { x0: -&self.x0, x1: -&self.x1, x2: -&self.x2 }
    }

    pub fn dot(&self, o: &Triple) -> BigInt {
        &self.x0 * &o.x0 + &self.x1 * &o.x1 + &self.x2 * &o.x2
    }

    /// `x0 x2 - x1^2`.
    pub fn det2(&self) -> BigInt {
        &self.x0 * &self.x2 - &self.x1 * &self.x1
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }
}

/// `x0 x2 - x1^2`.
pub fn det2(x: &Triple) -> BigInt {
    x.det2()
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x0, self.x1, self.x2)
    }
}

impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x0.to_string(), self.x1.to_string(), self.x2.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[String; 3]>::deserialize(d)?;
        let p = |s: &str| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        Ok(Triple { x0: p(&a)?, x1: p(&b)?, x2: p(&c)? })
    }
}

/// Serializes a big integer as a decimal string.
pub fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
