//! Weighted Cesàro averages over Følner sequences in the duals of compact
//! groups and of group C*-algebras.
//!
//! The averages `(1/|F|_w) Σ_{α∈F} d_α (…)` over finite sets of irreducible
//! representations serve two purposes here:
//!
//! * [`wiener`]: detecting atoms of a finite Borel measure from its Fourier
//!   coefficient matrices, and measuring its total atomic energy;
//! * [`ergodic`]: converging to the projection onto counit-invariant vectors
//!   for finite-dimensional representations.

pub mod catalog;
pub mod ergodic;
pub mod error;
pub mod formats;
pub mod fusion;
pub mod groups;
pub mod linalg;
pub mod measures;
pub mod par;
pub mod wiener;

pub use error::{Error, Result};
pub use fusion::{FolnerSchedule, FusionRing, IrrepLabel, LabelSet};
pub use groups::CompactGroup;
