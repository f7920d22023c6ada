use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::Mul;

/// Integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Mat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `[[0, 1], [-1, 0]]`.
    pub fn j() -> Self {
        Mat2::new(0, 1, -1, 0)
    }

    /// `[[a, 1], [1, 0]]`.
    pub fn quotient(a: u64) -> Self {
        Mat2::new(a, 1, 1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Self {
        Mat2 { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Mat2 { a: &self.a * k, b: &self.b * k, c: &self.c * k, d: &self.d * k }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    /// `det * M^{-1}`, always integral.
    pub fn adjugate(&self) -> Self {
        Mat2 { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Exact inverse when `det = ±1`.
    pub fn unimodular_inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_one() {
            Some(self.adjugate())
        } else if (-&det).is_one() {
            Some(self.adjugate().neg())
        } else {
            None
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn max_bits(&self) -> u64 {
        [&self.a, &self.b, &self.c, &self.d].iter().map(|x| x.bits()).max().unwrap_or(0)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

/// Product of the quotient matrices for `qs`, left to right, by balanced splitting.
pub fn quotient_product(qs: &[u64]) -> Mat2 {
    const LEAF: usize = 24;
    if qs.len() <= LEAF {
        let mut m = [1u128, 0, 0, 1];
        let mut out = Mat2::identity();
        let mut small = true;
        for &a in qs {
            if small {
                let a = a as u128;
                let next = (
                    m[0].checked_mul(a).and_then(|x| x.checked_add(m[1])),
                    m[2].checked_mul(a).and_then(|x| x.checked_add(m[3])),
                );
                if let (Some(n0), Some(n2)) = next {
                    m = [n0, m[0], n2, m[2]];
                    continue;
                }
                out = Mat2::new(m[0], m[1], m[2], m[3]);
                small = false;
            }
            out = &out * &Mat2::quotient(a);
        }
        if small {
            out = Mat2::new(m[0], m[1], m[2], m[3]);
        }
        return out;
    }
    let mid = qs.len() / 2;
    let (l, r) = join_if_large(|| quotient_product(&qs[..mid]), || quotient_product(&qs[mid..]), qs.len());
    &l * &r
}

fn join_if_large<A: Send, B: Send>(fa: impl FnOnce() -> A + Send, fb: impl FnOnce() -> B, len: usize) -> (A, B) {
    if len >= 1 << 16 {
        std::thread::scope(|s| {
            let h = s.spawn(fa);
            let b = fb();
            (h.join().expect("product worker panicked"), b)
        })
    } else {
        (fa(), fb())
    }
}
