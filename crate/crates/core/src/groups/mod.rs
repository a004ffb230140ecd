//! Concrete compact groups: element arithmetic and exact evaluation of
//! irreducible matrix coefficients and characters.

mod finite;
mod su2;
mod torus;

pub use finite::{
    FiniteElement, FiniteGroup, FiniteIrrep, FiniteModel, NAMES as FINITE_GROUP_NAMES,
};
pub use su2::{su2_irrep, Quaternion, Su2};
pub use torus::{Torus, TorusPoint};

use std::fmt::Debug;

use rand::Rng;

use crate::error::Result;
use crate::fusion::{FusionRing, IrrepLabel};
use crate::linalg::{CMatrix, C64};

/// A compact group with a chosen unitary representative for every class in
/// its dual.
pub trait CompactGroup: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Element: Clone + Debug + PartialEq + Send + Sync;
    type Ring: FusionRing + Clone + 'static;

    fn ring(&self) -> &Self::Ring;
    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn inverse(&self, g: &Self::Element) -> Self::Element;
    /// Coordinate distance, used for element equality up to roundoff.
    fn distance(&self, g: &Self::Element, h: &Self::Element) -> f64;
    /// The unitary matrix (u^α_ij(g)).
    fn irrep_matrix(&self, label: &IrrepLabel, g: &Self::Element) -> Result<CMatrix>;

    /// χ(α)(g) = Σ_i u^α_ii(g).
    fn character_value(&self, label: &IrrepLabel, g: &Self::Element) -> Result<C64> {
        Ok(self.irrep_matrix(label, g)?.trace())
    }

    /// A Haar-distributed random element drawn from the caller's stream.
    fn sample_haar<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Element;

    fn parse_element(&self, literal: &str) -> Result<Self::Element>;
    fn format_element(&self, g: &Self::Element) -> String;

    fn enumerate_dual(&self, bound: usize) -> Vec<IrrepLabel> {
        self.ring().enumerate(bound)
    }

    /// Every element, when the group is finite.
    fn finite_elements(&self) -> Option<Vec<Self::Element>> {
        None
    }
}

/// Tolerance for treating two elements as equal.
pub const ELEMENT_TOL: f64 = 1e-12;

/// Tolerance for merging products of atoms.
pub const MERGE_TOL: f64 = 1e-9;
