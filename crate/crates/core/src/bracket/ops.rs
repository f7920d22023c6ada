use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::triple::Triple;
use crate::error::{Error, Result};
use crate::exact::Mat2;

/// Determinant of the 3x3 matrix with rows `x`, `y`, `z`.
pub fn det3(x: &Triple, y: &Triple, z: &Triple) -> BigInt {
    x.dot(&cross(y, z))
}

/// `Trace(J x J z J y)` with the points read as symmetric matrices.
pub fn det3_trace(x: &Triple, y: &Triple, z: &Triple) -> BigInt {
    let j = Mat2::j();
    let m = &(&(&(&(&j * &x.as_matrix()) * &j) * &z.as_matrix()) * &j) * &y.as_matrix();
    m.trace()
}

/// `Trace(J M)`; zero exactly when `M` is symmetric.
pub fn symmetry_defect(m: &Mat2) -> BigInt {
    (&Mat2::j() * m).trace()
}

/// `(J y)^2 + det(y) Id`, which must vanish.
pub fn jy_square_defect(y: &Triple) -> Mat2 {
    let jy = &Mat2::j() * &y.as_matrix();
    let sq = &jy * &jy;
    let d = y.det2();
    Mat2 { a: sq.a + &d, b: sq.b, c: sq.c, d: sq.d + &d }
}

/// The symmetric matrix `-x J z J y` for linearly dependent `x, y, z`.
pub fn bracket(x: &Triple, y: &Triple, z: &Triple) -> Result<Triple> {
    let det = det3(x, y, z);
    if !det.is_zero() {
        return Err(Error::NotDependent { det: det.to_string() });
    }
    bracket_unchecked(x, y, z)
}

/// Bracket without the dependence test; still refuses non-symmetric results.
pub fn bracket_unchecked(x: &Triple, y: &Triple, z: &Triple) -> Result<Triple> {
    let j = Mat2::j();
    let m = (&(&(&(&x.as_matrix() * &j) * &z.as_matrix()) * &j) * &y.as_matrix()).neg();
    let defect = symmetry_defect(&m);
    if !defect.is_zero() {
        return Err(Error::NotDependent { det: format!("asymmetric bracket, Tr(JM) = {defect}") });
    }
    Triple::from_symmetric(&m)
}

/// Cross product of coordinate vectors.
pub fn cross(x: &Triple, y: &Triple) -> Triple {
    Triple { x0: &x.x1 * &y.x2 - &x.x2 * &y.x1, x1: &x.x2 * &y.x0 - &x.x0 * &y.x2, x2: &x.x0 * &y.x1 - &x.x1 * &y.x0 }
}

/// `x ∧ y` as an integer vector.
pub fn wedge(x: &Triple, y: &Triple) -> Triple {
    cross(x, y)
}

pub fn is_collinear(x: &Triple, y: &Triple) -> bool {
    wedge(x, y).is_zero()
}

/// Divides by the content and makes the first nonzero coordinate positive.
pub fn primitive_normalize(x: &Triple) -> Result<Triple> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let g = x.content();
    let mut p = Triple { x0: &x.x0 / &g, x1: &x.x1 / &g, x2: &x.x2 / &g };
    let lead = p.coords().into_iter().find(|c| !c.is_zero()).expect("nonzero").clone();
    if lead.is_negative() {
        p = p.neg();
    }
    Ok(p)
}

/// A rank-two sublattice of Z^3 given by two independent points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneModule {
    pub basis: [Triple; 2],
    pub wedge: Triple,
    /// Norm of the primitive wedge: the height of the saturated lattice.
    #[serde(serialize_with = "super::ser_bigint")]
    pub height: BigInt,
    /// Index of the subgroup generated by `basis` in the saturated lattice.
    #[serde(serialize_with = "super::ser_bigint")]
    pub index: BigInt,
}

/// Height of the saturated lattice `Z^3 ∩ span(x, y)`.
pub fn height_of_plane(x: &Triple, y: &Triple) -> Result<PlaneModule> {
    let w = wedge(x, y);
    if w.is_zero() {
        return Err(Error::CollinearInput);
    }
    let content = w.content();
    let prim = Triple { x0: &w.x0 / &content, x1: &w.x1 / &content, x2: &w.x2 / &content };
    Ok(PlaneModule { basis: [x.clone(), y.clone()], height: prim.norm(), wedge: w, index: content })
}

/// A Z-basis of the lattice of integer points orthogonal to the primitive vector `w`.
pub fn saturated_basis(w: &Triple) -> (Triple, Triple) {
    let (a, b, c) = (&w.x0, &w.x1, &w.x2);
    let e = a.extended_gcd(b);
    let g = e.gcd;
    if g.is_zero() {
        return (Triple::from_i64(1, 0, 0), Triple::from_i64(0, 1, 0));
    }
    let u = Triple { x0: b / &g, x1: -(a / &g), x2: BigInt::zero() };
    let v = Triple { x0: &e.x * c, x1: &e.y * c, x2: -g };
    (u, v)
}

/// Index of `Zx + Zy` in its saturation, computed from an explicit saturated basis.
pub fn lattice_index(x: &Triple, y: &Triple) -> Result<BigInt> {
    let w = wedge(x, y);
    if w.is_zero() {
        return Err(Error::CollinearInput);
    }
    let prim = primitive_normalize(&w)?;
    let (u, v) = saturated_basis(&prim);
    let uv = cross(&u, &v);
    // Coordinates of p in the basis (u, v): p = s u + t v with s = <p∧v, uv>/<uv, uv>.
    let denom = uv.dot(&uv);
    let coord = |p: &Triple| -> Result<(BigInt, BigInt)> {
        let s_num = cross(p, &v).dot(&uv);
        let t_num = cross(&u, p).dot(&uv);
        if !(&s_num % &denom).is_zero() || !(&t_num % &denom).is_zero() {
            return Err(Error::Domain("point is not in the saturated lattice".into()));
        }
        Ok((s_num / &denom, t_num / &denom))
    };
    let (s1, t1) = coord(x)?;
    let (s2, t2) = coord(y)?;
    Ok((s1 * t2 - t1 * s2).abs())
}

/// Whether `content(x ∧ y) = 1`, i.e. `x, y` is a basis of its saturated lattice.
pub fn is_lattice_basis(x: &Triple, y: &Triple) -> bool {
    let w = wedge(x, y);
    !w.is_zero() && w.content().is_one()
}
