//! Enumeration oracles for small bounded instances: vertices of `P(A, b)`,
//! its integer points and integer hull, and the vertices of mixed-integer
//! hulls. These are the ground truth the constructions are tested against.

mod hull;
mod instance;
mod inum;
mod simplex;
mod vertices;
mod wmip;

pub use hull::{
    extreme_points, in_convex_hull, integer_hull_points, integer_hull_points_with_caps, is_extreme, lattice_points,
    lattice_points_with_caps, IntegerHull,
};
pub use instance::{IntBox, Instance};
pub use inum::{
    candidate_rows, integrality_number_bruteforce, integrality_number_bruteforce_with_caps, InumCaps, InumResult,
    DEFAULT_ENTRY_BOUND,
};
pub use vertices::{polyhedron_vertices, polyhedron_vertices_with_caps, Vertex, VertexSet};
pub use wmip::{check_integrality, verify_integrality, wmip_candidates, wmip_vertices, wmip_vertices_with_caps, IntegralityCheck};

/// Limits on the enumerations performed by a single oracle call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Row subsets tried as bases.
    pub bases: u128,
    /// Integer points in an enumeration box.
    pub lattice: u128,
    /// Integral right-hand sides of fibers.
    pub fibers: u128,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            bases: 1_000_000,
            lattice: 10_000_000,
            fibers: 1_000_000,
        }
    }
}
