use num_traits::Zero;
use serde::Serialize;

use crate::bracket::{bracket, det3, primitive_normalize, Triple};
use crate::error::{Error, Result};

/// Links beyond this count mean the inputs were not a genuine `(d_k, e_k, d_{k+1})`.
const MAX_LINKS: usize = 256;

/// The chain from `d_{k+1}` down to `d_k`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainRecord {
    pub k: usize,
    /// `n_0 = d_{k+1}, n_1, ..., n_s`.
    pub links: Vec<Triple>,
    /// Number of bracket steps.
    pub s: usize,
    /// Last link is `d_k` and the one before it `e_k`.
    pub endpoints_ok: bool,
    /// Norms strictly decrease along the chain.
    pub decreasing: bool,
    /// `1 / (2 - beta1)`, the heuristic size of `s` when `beta1` is supplied.
    pub length_hint: Option<f64>,
}

impl ChainRecord {
    pub fn ok(&self) -> bool {
        self.endpoints_ok && self.decreasing
    }
}

/// Iterates `n_{σ+1} = prim [n_σ, d_k, e_k]` from `n_0 = d_{k+1}` while `N_σ >= E_k`.
pub fn reconstruct_chain(
    k: usize,
    d_k: &Triple,
    e_k: &Triple,
    d_next: &Triple,
    beta1: Option<f64>,
) -> Result<ChainRecord> {
    for (name, x) in [("d_k", d_k), ("e_k", e_k), ("d_(k+1)", d_next)] {
        if x.det2().is_zero() {
            return Err(Error::Precondition(format!("{name} has a zero determinant")));
        }
    }
    let d = primitive_normalize(d_k)?;
    let e = primitive_normalize(e_k)?;
    let e_norm = e.norm();
    let mut links = vec![primitive_normalize(d_next)?];
    while links.last().expect("nonempty").norm() >= e_norm {
        let cur = links.last().expect("nonempty");
        if !det3(cur, &d, &e).is_zero() {
            return Err(Error::DependenceViolation { step: links.len() - 1 });
        }
        if links.len() > MAX_LINKS {
            return Err(Error::DependenceViolation { step: links.len() - 1 });
        }
        let next = primitive_normalize(&bracket(cur, &d, &e)?)?;
        links.push(next);
    }
    let s = links.len() - 1;
    let endpoints_ok = links[s] == d && s >= 1 && links[s - 1] == e;
    let decreasing = links.windows(2).all(|w| w[1].norm() < w[0].norm());
    Ok(ChainRecord { k, links, s, endpoints_ok, decreasing, length_hint: beta1.map(|b| 1.0 / (2.0 - b)) })
}
