//! Incremental convergent matrices with periodic checkpoints.

use std::sync::Arc;

use super::cf::ContinuedFraction;
use super::matrix::{quotient_product, Mat2};
use crate::error::Result;

/// Checkpointed products of the quotient matrices of one continued fraction.
///
/// Checkpoint `k` holds the product of the first `k * stride` matrices. When
/// the stored checkpoints exceed the memory budget every other one is dropped
/// and the stride doubles.
#[derive(Debug)]
pub struct ConvergentCache {
    cf: Arc<ContinuedFraction>,
    stride: usize,
    checkpoints: Vec<Mat2>,
    stored_bits: u64,
    budget_bits: u64,
}

pub const DEFAULT_STRIDE: usize = 256;
pub const DEFAULT_BUDGET_BYTES: u64 = 64 << 20;

impl ConvergentCache {
    pub fn new(cf: Arc<ContinuedFraction>) -> Self {
        Self::with_budget(cf, DEFAULT_STRIDE, DEFAULT_BUDGET_BYTES)
    }

    pub fn with_budget(cf: Arc<ContinuedFraction>, stride: usize, budget_bytes: u64) -> Self {
        assert!(stride > 0);
        ConvergentCache {
            cf,
            stride,
            checkpoints: vec![Mat2::identity()],
            stored_bits: 0,
            budget_bits: budget_bytes * 8,
        }
    }

    pub fn source(&self) -> &Arc<ContinuedFraction> {
        &self.cf
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn checkpoint_count(&self) -> usize {
        self.checkpoints.len()
    }

    /// `[[q_n, q_{n-1}], [p_n, p_{n-1}]]` for the fractional part `[0; a1, a2, ...]`.
    pub fn matrix(&mut self, n: usize) -> Result<Mat2> {
        while self.checkpoints.len() <= n / self.stride {
            let idx = self.checkpoints.len();
            let block = self.block((idx - 1) * self.stride, idx * self.stride)?;
            let next = self.checkpoints.last().expect("identity checkpoint") * &block;
            self.stored_bits += 4 * next.max_bits();
            self.checkpoints.push(next);
            if self.stored_bits > self.budget_bits && self.checkpoints.len() > 2 {
                self.thin();
            }
        }
        let k = n / self.stride;
        let base = &self.checkpoints[k];
        let rest = self.block(k * self.stride, n)?;
        Ok(base * &rest)
    }

    fn block(&self, from: usize, to: usize) -> Result<Mat2> {
        Ok(quotient_product(&self.cf.quotient_range(from, to)?))
    }

    fn thin(&mut self) {
        let kept: Vec<Mat2> = std::mem::take(&mut self.checkpoints).into_iter().step_by(2).collect();
        self.stored_bits = kept.iter().map(|m| 4 * m.max_bits()).sum();
        self.checkpoints = kept;
        self.stride *= 2;
    }
}
