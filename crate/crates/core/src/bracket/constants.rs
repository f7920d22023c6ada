//! Explicit constants for the approximation estimates, with their derivations.
//!
//! Notation: `xi` is the approximated number, `m = max(1, |xi|, xi^2)`,
//! and for a point `x` we write `x1 = x0 xi + e1`, `x2 = x0 xi^2 + e2` with
//! `|e1|, |e2| <= L(x)`. Every constant below is evaluated on an upper bound
//! `xi_abs` of `|xi|`, so the checks are exact rational inequalities.

use num_traits::{Signed, Zero};

use super::ops::wedge;
use super::triple::Triple;
use crate::exact::{RationalInterval, Q};

/// `|det x| <= (2 + |xi|) X L(x)`.
///
/// `x0 x2 - x1^2 = x0 e2 - e1 (x1 + x0 xi)` and `|x1 + x0 xi| <= (1 + |xi|) X`.
pub fn det_constant(xi_abs: &Q) -> Q {
    Q::from_int(2).add(xi_abs)
}

/// `X L(x) >= 1 / (2 + |xi|)` whenever `det x != 0`: the previous bound with `|det x| >= 1`.
pub fn det_nonzero_floor(xi_abs: &Q) -> Q {
    let c = det_constant(xi_abs);
    Q::new(c.denom().clone(), c.numer().clone())
}

/// `||x ∧ y|| <= C (X L(y) + Y L(x))` when `L(x), L(y) <= 1`.
///
/// The last two wedge coordinates are `x0 f1 - y0 e1` and `e2 y0 - x0 f2`.
/// The first is `x0 xi f2 + xi^2 e1 y0 + e1 f2 - x0 xi^2 f1 - xi e2 y0 - e2 f1`,
/// bounded by `(|xi| + xi^2)(X L(y) + Y L(x)) + 2 L(x) L(y)`, and
/// `2 L(x) L(y) <= X L(y) + Y L(x)`. So `1 + |xi| + xi^2` suffices; the
/// looser `2 + 2|xi| + xi^2` is used.
pub fn wedge_constant(xi_abs: &Q) -> Q {
    let two = Q::from_int(2);
    two.add(&two.mul(xi_abs)).add(&xi_abs.mul(xi_abs))
}

/// Constant for the bracket `u = [x, y, z]` when `L(x), L(y), L(z) <= 1`:
/// `U <= C (X Y L(z) + lambda)` and `L(u) <= C lambda`, with
/// `lambda = Z L(x) L(y) + L(z) min(Y L(x), X L(y))`.
///
/// Put `x = x0 K + R_x` with `K = v v^T`, `v = (1, xi)`, and `R_x` holding the
/// errors. `K J K = 0`, so of the eight terms of `-x J z J y` three vanish.
/// Entries of a product of three 2x2 factors are at most `4` times the product
/// of their sup-norms, giving `U <= 4m^2 XY L(z) + 4m (X L(y) L(z) + Y L(x) L(z)
/// + Z L(x) L(y)) + 4 L^3 <= 12 m^2 (XY L(z) + lambda)`.
/// For `L(u)` use `r = u J v`: terms ending in `K` vanish because `K J v = 0`,
/// leaving `|r| <= 8m^2 (X L(y) L(z) + Z L(x) L(y)) + 8m L(x)L(y)L(z)`. Since
/// `u` is symmetric, `[x, y, z] = [y, x, z]`, which swaps `X L(y)` for `Y L(x)`,
/// hence the minimum. With `L(u) <= (1 + |xi|) |r|` this gives `32 m^3`.
pub fn bracket_constant(xi_abs: &Q) -> Q {
    let m = m_of(xi_abs);
    Q::from_int(32).mul(&m).mul(&m).mul(&m)
}

/// `max(1, |xi|, xi^2)`.
pub fn m_of(xi_abs: &Q) -> Q {
    let one = Q::from_int(1);
    let sq = xi_abs.mul(xi_abs);
    one.max_of(xi_abs).max_of(&sq).clone()
}

fn norm_q(x: &Triple) -> Q {
    Q::from_int(x.norm())
}

/// `|det x| <= (2 + |xi|) X L_hi(x)`.
pub fn check_det_bound(x: &Triple, l: &RationalInterval, xi_abs: &Q) -> bool {
    let lhs = Q::from_int(x.det2().abs());
    lhs <= det_constant(xi_abs).mul(&norm_q(x)).mul(&l.hi)
}

/// `X L(x) >= 1/(2 + |xi|)` for `det x != 0`, using the lower end of the enclosure.
pub fn check_det_floor(x: &Triple, l: &RationalInterval, xi_abs: &Q) -> bool {
    if x.det2().is_zero() {
        return true;
    }
    norm_q(x).mul(&l.lo) >= det_nonzero_floor(xi_abs)
}

/// `||x ∧ y|| <= C (X L_hi(y) + Y L_hi(x))`.
pub fn check_wedge_bound(x: &Triple, lx: &RationalInterval, y: &Triple, ly: &RationalInterval, xi_abs: &Q) -> bool {
    let lhs = Q::from_int(wedge(x, y).norm());
    let rhs = norm_q(x).mul(&ly.hi).add(&norm_q(y).mul(&lx.hi));
    lhs <= wedge_constant(xi_abs).mul(&rhs)
}

/// Outcome of the bracket estimate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketBoundCheck {
    pub norm_ok: bool,
    pub error_ok: bool,
}

/// Checks both bracket estimates for `u = [x, y, z]`.
pub fn check_bracket_bounds(
    x: (&Triple, &RationalInterval),
    y: (&Triple, &RationalInterval),
    z: (&Triple, &RationalInterval),
    u: (&Triple, &RationalInterval),
    xi_abs: &Q,
) -> BracketBoundCheck {
    let c = bracket_constant(xi_abs);
    let (nx, ny, nz) = (norm_q(x.0), norm_q(y.0), norm_q(z.0));
    let cross = ny.mul(&x.1.hi).min_of(&nx.mul(&y.1.hi)).clone();
    let lambda = nz.mul(&x.1.hi).mul(&y.1.hi).add(&z.1.hi.mul(&cross));
    let norm_rhs = c.mul(&nx.mul(&ny).mul(&z.1.hi).add(&lambda));
    BracketBoundCheck { norm_ok: norm_q(u.0) <= norm_rhs, error_ok: u.1.lo <= c.mul(&lambda) }
}

/// Rational upper bound for `|xi|` as a convenience for float callers.
pub fn abs_upper(v: &RationalInterval) -> Q {
    v.abs().hi
}
