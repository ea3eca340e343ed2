//! Integrality matrices from covers, their certificates, and the synthesis
//! pipelines.

mod bound;
mod build;
mod certify;
mod group;
mod pipeline;
mod tu;

pub use bound::{box_factor, c_bound, k_bound};
pub use build::{build_w, check_block_structure, WFactorization};
pub use certify::{certify, Certificate, RowClass};
pub use group::{group_reduce, GroupReduction};
pub use pipeline::{synthesize, synthesize_with_cap, BoundReport, Route, SynthMode, Synthesis};
pub use tu::{is_tu, is_tu_with_caps, TuMethod, TuReport, GHOUILA_HOURI_CAP};
