//! Exact construction and brute-force verification of mixed-integer
//! relaxations that need only a few integrality constraints.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: big-integer matrices, determinants, minors, Hermite normal
//!   form and fundamental parallelepipeds.
//! - [`covering`]: the column covering problem and its explicit constructions.
//! - [`wsynth`]: integrality matrices built from covers, total unimodularity,
//!   certificates and the full synthesis pipelines.
//! - [`oracle`]: enumeration of vertices, integer hulls and mixed-integer hull
//!   candidates for small bounded instances.
//! - [`asymptotic`]: non-degeneracy, the proximity-based good set of
//!   right-hand sides, its bad hyperplanes and density estimates.
//!
//! All arithmetic is exact. Floating point appears only where a bound with
//! an irrational value is compared against an integer.

pub mod asymptotic;
pub mod covering;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod wsynth;

pub use error::{CertifyError, Error, Result};

// The guide's snippets run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/covering.md")]
    mod covering {}
    #[doc = include_str!("../../../book/src/synthesis.md")]
    mod synthesis {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/asymptotic.md")]
    mod asymptotic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
