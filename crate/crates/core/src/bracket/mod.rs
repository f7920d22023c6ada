//! Integer points as symmetric matrices, determinants, the bracket `[x, y, z] = -x J z J y`,
//! wedges and heights of planes.

pub mod constants;
mod ops;
mod triple;

pub use ops::{
    bracket, bracket_unchecked, cross, det3, det3_trace, height_of_plane, is_collinear, is_lattice_basis,
    jy_square_defect, lattice_index, primitive_normalize, saturated_basis, symmetry_defect, wedge, PlaneModule,
};
pub use triple::{det2, ser_bigint, Triple};
