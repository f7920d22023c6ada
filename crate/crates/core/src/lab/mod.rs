//! Minimal points, palindromic approximants and the checks that relate them.

mod approximants;
mod chain;
mod diagnostics;
mod exponents;
mod export;
mod minimal;
mod recurrence;
mod select;
mod spectrum;
mod xi;

pub use approximants::{
    approximants_for, palindromic_approximants, word_with_palindromes, ApproximantRow, ApproximantSequence,
    L_RELATIVE_WIDTH,
};
pub use chain::{reconstruct_chain, ChainRecord};
pub use diagnostics::{
    corollary210_check, height_diagnostics, prop36_counterexample, prop37_check, scan_inequalities, BracketMembership,
    CornerRow, CounterexampleRow, HeightReport, HeightRow, PlaneRow, ScanInequalities, PLANE_RATIO_UPPER,
};
pub use exponents::{
    epsilon_one, error_exponent_check, estimate_beta_eps, growth_exponent, ErrorExponentCheck, ExponentEstimate,
    TraceRow, MIDPOINT_WIDTH,
};
pub use export::{point_rows, to_json, trace_csv, PointRow, SCHEMA};
pub use minimal::{minimal_points, MinimalPointSequence};
pub use recurrence::{
    extract_psi_from_points, lemma55_check, verify_bracket_recurrence, ExtractedPsi, Lemma55Report, RecurrenceEntry,
    RecurrenceReport,
};
pub use select::{
    in_a_eps, independent_positions, membership_exponent, rationalize, select_e_points, select_e_points_in, DePair,
    Selection,
};
pub use spectrum::{spectrum_gap, SpectrumEntry, SpectrumReport, GOLDEN, SIGMA2};
pub use xi::{build_xi_from_word, Phi};
