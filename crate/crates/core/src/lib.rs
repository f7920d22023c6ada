//! Exact tools for simultaneous rational approximation to a real number and
//! its square, built around words with many palindromic prefixes.
//!
//! The crate is split by concern:
//!
//! * [`word`] generates words, finds their palindromic prefixes and handles the
//!   index functions `psi` linking consecutive palindromes.
//! * [`exact`] provides rationals, continued fractions and refinable enclosures.
//! * [`bracket`] treats integer points as symmetric matrices and implements the
//!   bracket `[x, y, z] = -x J z J y`.
//! * [`lab`] enumerates minimal points, builds approximants from palindromic
//!   prefixes, and estimates approximation exponents.

pub mod bracket;
pub mod error;
pub mod exact;
pub mod lab;
pub mod word;

pub use bracket::Triple;
pub use error::{Error, Result};
pub use exact::{ContinuedFraction, RationalInterval, RealEnclosure, Q};
pub use word::{PsiFunction, Word, WordSpec};
