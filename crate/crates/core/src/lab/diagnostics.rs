use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::approximants::ApproximantSequence;
use super::minimal::MinimalPointSequence;
use super::select::{in_a_eps, membership_exponent};
use crate::bracket::constants::{check_det_bound, check_det_floor, wedge_constant};
use crate::bracket::{bracket, det3, height_of_plane, is_collinear, is_lattice_basis, Triple};
use crate::error::{Error, Result};
use crate::exact::{eval_L, ln_bigint, RationalInterval, RealEnclosure, DEFAULT_REFINEMENT_CAP, Q};

/// `x_i = a_i + a_{i-1}` for an independent position `i`.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleRow {
    pub index: usize,
    pub point: Triple,
    pub primitive: bool,
    pub collinear_to_minimal: bool,
    /// `a_{i,0} < x_0 < 2 a_{i,0} < a_{i+1,0}`.
    pub sandwiched: bool,
    /// `L_hi(x_i) <= 2 L_hi(a_{i-1})`.
    pub error_bound_ok: bool,
    /// Least `eps` with `x_i` in `A_eps`.
    pub exponent: f64,
}

/// Sums of consecutive minimal points at the independent positions: primitive
/// points of small error that are not collinear to any minimal point.
pub fn prop36_counterexample(seq: &MinimalPointSequence) -> Vec<CounterexampleRow> {
    let two = Q::from_int(2);
    seq.independent
        .iter()
        .filter(|&&i| i >= 1 && i + 1 < seq.len())
        .map(|&i| {
            let (a, prev, next) = (&seq.points[i], &seq.points[i - 1], &seq.points[i + 1]);
            let x = a.add(prev);
            let lx = eval_L(&x, &seq.xi_enclosure);
            let twice = &a.x0 * 2;
            CounterexampleRow {
                index: i,
                primitive: x.is_primitive(),
                collinear_to_minimal: seq.points.iter().any(|p| is_collinear(p, &x)),
                sandwiched: a.x0 < x.x0 && x.x0 < twice && twice < next.x0,
                error_bound_ok: lx.hi <= two.mul(&seq.l[i - 1].hi),
                exponent: membership_exponent(&x, &lx),
                point: x,
            }
        })
        .collect()
}

/// Upper bound checked for `A_{i+1} L(a_i) / H` along a scan.
pub const PLANE_RATIO_UPPER: f64 = 2.0;

/// `A_{i+1} L(a_i)` against the height of the plane through `a_i, a_{i+1}`.
#[derive(Clone, Debug, Serialize)]
pub struct HeightRow {
    pub index: usize,
    /// Position of the last independent point at or before `index`, if any.
    pub plane: Option<usize>,
    pub height: String,
    /// `a_i, a_{i+1}` is a basis of the plane's integer points.
    pub basis: bool,
    /// `A_{i+1} L(a_i) / H`, from the enclosure midpoint.
    pub ratio: f64,
    /// `A_{i+1} L_lo(a_i) >= H / (2 C)` with the explicit wedge constant `C`.
    pub lower_ok: bool,
}

/// Exponent diagnostics of one plane `V_k` between consecutive independent positions.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneRow {
    pub k: usize,
    pub from: usize,
    pub to: usize,
    pub height: String,
    /// `log H / log D_{k+1}`, expected above `2 - alpha - slack`.
    pub against_next: f64,
    /// `log H / log D_k`, expected above `1/alpha - slack`.
    pub against_current: f64,
    pub next_ok: bool,
    pub current_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub rows: Vec<HeightRow>,
    pub planes: Vec<PlaneRow>,
    pub ratio_min: f64,
    pub ratio_max: f64,
}

impl HeightReport {
    /// Lower bound holds everywhere and the ratio stays below `upper`.
    pub fn bounded(&self, upper: f64) -> bool {
        self.rows.iter().all(|r| r.lower_ok) && self.ratio_max <= upper
    }
}

fn ln_q(q: &Q) -> f64 {
    q.ln_abs()
}

/// Heights of the planes spanned by consecutive minimal points with the
/// ratio and exponent diagnostics. `alpha` and `slack` only affect the flags.
pub fn height_diagnostics(seq: &MinimalPointSequence, alpha: f64, slack: f64) -> Result<HeightReport> {
    let c = wedge_constant(&seq.xi_abs_hi);
    let mut rows = Vec::new();
    for i in 0..seq.len().saturating_sub(1) {
        let (a, b) = (&seq.points[i], &seq.points[i + 1]);
        let plane = height_of_plane(a, b)?;
        let h = Q::from_int(plane.height.clone());
        let lhs_lo = seq.l[i].lo.mul_int(&b.norm());
        let lower_ok = lhs_lo.mul(&c).mul_int(&BigInt::from(2)) >= h;
        let ratio = (ln_bigint(&b.norm()) + seq.l[i].ln_mid() - ln_q(&h)).exp();
        rows.push(HeightRow {
            index: i,
            plane: seq.independent.iter().rev().find(|&&k| k <= i).copied(),
            height: plane.height.to_string(),
            basis: is_lattice_basis(a, b),
            ratio,
            lower_ok,
        });
    }
    let mut planes = Vec::new();
    for (k, w) in seq.independent.windows(2).enumerate() {
        let (from, to) = (w[0], w[1]);
        let h = height_of_plane(&seq.points[from], &seq.points[from + 1])?.height;
        let lh = ln_bigint(&h);
        let against_next = lh / ln_bigint(&seq.points[to].norm());
        let against_current = lh / ln_bigint(&seq.points[from].norm());
        planes.push(PlaneRow {
            k,
            from,
            to,
            height: h.to_string(),
            against_next,
            against_current,
            next_ok: against_next >= 2.0 - alpha - slack,
            current_ok: against_current >= 1.0 / alpha - slack,
        });
    }
    let ratio_min = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let ratio_max = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(HeightReport { rows, planes, ratio_min, ratio_max })
}

/// The explicit-constant inequalities along a scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanInequalities {
    /// `|det a_i| <= (2 + |xi|) A_i L(a_i)` for every point.
    pub det_bound: Vec<bool>,
    /// `A_i L(a_i) >= 1 / (2 + |xi|)` for points with nonzero determinant.
    pub det_floor: Vec<Option<bool>>,
    pub heights: HeightReport,
}

impl ScanInequalities {
    pub fn all_hold(&self, ratio_upper: f64) -> bool {
        self.det_bound.iter().all(|&b| b)
            && self.det_floor.iter().all(|b| b != &Some(false))
            && self.heights.bounded(ratio_upper)
    }
}

pub fn scan_inequalities(seq: &MinimalPointSequence) -> Result<ScanInequalities> {
    let det_bound = seq.points.iter().zip(&seq.l).map(|(x, l)| check_det_bound(x, l, &seq.xi_abs_hi)).collect();
    let det_floor = seq
        .points
        .iter()
        .zip(&seq.l)
        .map(|(x, l)| (!x.det2().is_zero()).then(|| check_det_floor(x, l, &seq.xi_abs_hi)))
        .collect();
    Ok(ScanInequalities { det_bound, det_floor, heights: height_diagnostics(seq, 1.0, 1.0)? })
}

/// Whether each approximant is an independent minimal point exactly when its
/// neighbours are independent of it.
#[derive(Clone, Debug, Serialize)]
pub struct CornerRow {
    pub index: usize,
    pub is_corner: bool,
    pub independent: bool,
}

/// Compares, for approximants `grace <= i` whose successor lies in the scan,
/// membership among the scan's independent points with `det3(v_{i-1}, v_i, v_{i+1}) != 0`.
pub fn prop37_check(seq: &MinimalPointSequence, approx: &ApproximantSequence, grace: usize) -> Vec<CornerRow> {
    let bound = BigInt::from(seq.bound);
    (grace.max(1)..approx.count())
        .filter(|&i| approx.v(i + 1).norm() <= bound)
        .map(|i| CornerRow {
            index: i,
            is_corner: seq.independent.iter().any(|&k| is_collinear(&seq.points[k], approx.v(i))),
            independent: !det3(approx.v(i - 1), approx.v(i), approx.v(i + 1)).is_zero(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketMembership {
    pub bracket: Triple,
    pub member: bool,
    pub exponent: f64,
}

/// For dependent `x, y, z` in `A_eps` with `X, Y <= Z <= (XY)^kappa`, checks that
/// `[x, y, z]` lies in `A_eps2` once `eps (1 + kappa) / (1 - kappa) < eps2 < 1`.
pub fn corollary210_check(
    x: &Triple,
    y: &Triple,
    z: &Triple,
    xi: &RealEnclosure,
    kappa: f64,
    eps: f64,
    eps2: f64,
) -> Result<BracketMembership> {
    if !(kappa > 0.0 && kappa < 1.0 && eps * (1.0 + kappa) / (1.0 - kappa) < eps2 && eps2 < 1.0) {
        return Err(Error::Precondition(format!(
            "parameters kappa = {kappa}, eps = {eps}, eps2 = {eps2} are out of range"
        )));
    }
    let (nx, ny, nz) = (x.norm(), y.norm(), z.norm());
    if nx > nz || ny > nz || ln_bigint(&nz) > kappa * (ln_bigint(&nx) + ln_bigint(&ny)) {
        return Err(Error::Precondition("norms violate X, Y <= Z <= (XY)^kappa".into()));
    }
    if [x, y, z].iter().any(|p| p.det2().is_zero()) {
        return Err(Error::Precondition("every point needs a nonzero determinant".into()));
    }
    if !det3(x, y, z).is_zero() {
        return Err(Error::NotDependent { det: det3(x, y, z).to_string() });
    }
    let mut xi = xi.clone();
    let enclose = |p: &Triple, xi: &mut RealEnclosure| -> Result<RationalInterval> {
        loop {
            let l = eval_L(p, xi);
            if l.relative_width() < 1e-6 {
                return Ok(l);
            }
            xi.refine(DEFAULT_REFINEMENT_CAP)?;
        }
    };
    for p in [x, y, z] {
        let l = enclose(p, &mut xi)?;
        if !in_a_eps(p, &l, eps) {
            return Err(Error::Precondition(format!("{p} is not in A_eps")));
        }
    }
    let u = bracket(x, y, z)?;
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    let lu = enclose(&u, &mut xi)?;
    let member = in_a_eps(&u, &lu, eps2);
    Ok(BracketMembership { exponent: membership_exponent(&u, &lu), member, bracket: u })
}
