//! Exact linear algebra over big integers and rationals.

mod elim;
mod hnf;
mod lattice;
mod matrix;
mod minors;

pub use elim::{det, int_rank, inverse, rank, row_basis, row_combination, solve, unimodular_inverse, RowReducer};
pub use hnf::{check_hnf, hnf, HnfForm};
pub use lattice::{decompose, distinct_columns, in_unit_cube, parallelepiped_points};
pub use matrix::{dot, int_vec, rat_vec, IntMatrix, Matrix, RatMatrix};
pub use minors::{binomial, delta, delta_with_cap, max_minor_of_size, DeltaMode, DEFAULT_SUBMATRIX_CAP};

pub(crate) use elim::bareiss;
pub(crate) use lattice::parallelepiped_pairs;
pub(crate) use minors::square_submatrix_count;
