//! Finite fields, Grassmannian and Schubert point sets, their codes, higher
//! weights, and the conjecture harness.

mod code;
mod conjecture;
mod field;
mod grassmann;
mod linalg;
mod weights;

pub use code::{build_code, LinearCode};
pub use conjecture::{
    proven_regime, verify_conjecture, ConjectureHarness, ConjectureReport, HarnessOptions,
    ProvenRegime, ReportParams, Verdict, REPORT_SCHEMA_VERSION,
};
pub use field::{build_field, prime_power, Elem, FieldTable, MAX_FIELD_ORDER};
pub use grassmann::{
    enumerate_grassmannian, enumerate_schubert, section_count, PluckerPoint, SchubertIndex, DEFAULT_POINT_BUDGET,
};
pub use linalg::{det, maximal_minors, rank, RrefSpace};
pub use weights::{
    higher_weight_by_sections, higher_weight_exhaustive, weight_hierarchy, WeightHierarchy, WeightMethod,
    DEFAULT_SUBSPACE_BUDGET,
};
