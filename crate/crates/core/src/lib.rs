//! Binary linear codes built from order ideals of finite posets.
//!
//! A family of ideals `𝓘` of a poset on `[n]` yields two codes: `C_D`, indexed
//! by the subsets outside `𝓘(P)`, and `C_f`, built from the indicator of
//! `𝓘(P) \ {∅}`. Weights follow from the generating function of `𝓘(P)` at
//! sign points; for two-level hierarchical posets they are tabulated in
//! [`closed_form`]. [`analysis`] certifies Griesmer optimality and minimality.

pub mod analysis;
pub mod cli;
pub mod closed_form;
pub mod code;
pub mod error;
pub mod genfun;
pub mod mask;
pub mod poset;

pub use code::{CodeKind, CodeReport, CodeSpec, WeightDistribution};
pub use error::{Error, Result};
pub use mask::SubsetMask;
pub use poset::{IdealFamily, Poset};
