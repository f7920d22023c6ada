//! Exact integers, rationals, continued fractions and enclosures of real numbers.

pub mod cache;
pub mod cf;
pub mod enclosure;
pub mod matrix;
pub mod rational;

pub use cache::ConvergentCache;
pub use cf::{convergents, ContinuedFraction, ConvergentPair, QuotientAt, Tail};
pub use enclosure::{
    compare_L, compare_L_with, enclose, eval_L, eval_L_on, nearest_in, nearest_integer, nearest_integer_of_square,
    nearest_pair_certified, square_enclosure, NearestInteger, RationalInterval, RealEnclosure, DEFAULT_REFINEMENT_CAP,
};
pub use matrix::{quotient_product, Mat2};
pub use rational::{ln_bigint, Q};
