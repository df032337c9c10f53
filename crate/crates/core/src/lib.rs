//! Exact computations on subclose families of ℓ-subsets, optimal graphs, and
//! the weight hierarchy of Grassmann and Schubert codes over small fields.
//!
//! Every closed-form quantity in the crate has an exhaustive counterpart so the
//! two can be checked against each other at desk scale:
//!
//! * [`combinat`]: extended and Gaussian binomials, colex subset ranking.
//! * [`families`]: `K_Λ`, close-family structure, the `K_r(ℓ,m)` oracle and the
//!   both duality identities.
//! * [`graphs`]: sums of squared degrees, threshold recognition, optimal graphs
//!   and the degree-square bounds.
//! * [`codes`]: finite fields, Plücker enumeration, code construction, higher
//!   weights and the subclose-section conjecture harness.
//!
//! Exhaustive searches run on rayon when the `parallel` feature is enabled
//! (the default) and fall back to plain iterators otherwise. Results never
//! depend on the schedule.

pub mod codes;
pub mod combinat;
pub mod error;
pub mod exec;
pub mod families;
pub mod graphs;

pub use error::{Error, Result};
pub use exec::Exec;
