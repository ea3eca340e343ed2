//! Right-hand sides for which integer feasibility reduces to a single basis:
//! non-degeneracy, the proximity condition, the good set, the hyperplanes
//! containing its complement, density counts and the reduction itself.

mod density;
mod goodset;
mod nondeg;
mod reduce;

pub use density::{density_estimate, DensityEstimate, DensityMode, DEFAULT_DENSITY_CAP};
pub use goodset::{
    bad_hyperplanes, in_good_set, proximity_check, Asymptotic, BadHyperplane, BasisInfo, GoodSetReport, HyperplaneFamily,
};
pub use nondeg::{is_nondegenerate, is_nondegenerate_with_cap, nondeg_row_bound_check};
pub use reduce::{reduce_and_solve, Reduction};
