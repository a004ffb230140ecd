//! Ring identifiers and dispatch from an identifier to a concrete model.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::fusion::{FiniteRing, FusionRing, LatticeRing, Su2Ring};
use crate::groups::{CompactGroup, FiniteGroup, FiniteModel, Su2, Torus};

/// `Z`, `Z^d:<d>`, `SU2`, `finite:<name>` or `dualgroup:Z^d:<d>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingId {
    Circle,
    Torus(usize),
    Su2,
    Finite(String),
    /// ℤ^d as a discrete group; only the fusion and ergodic operations apply.
    DualGroup(usize),
}

fn parse_rank(s: &str, literal: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(d) if d >= 1 => Ok(d),
        _ => Err(invalid(format!(
            "ring {literal:?}: rank must be a positive integer"
        ))),
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Z" {
            return Ok(RingId::Circle);
        }
        if t == "SU2" {
            return Ok(RingId::Su2);
        }
        if let Some(d) = t.strip_prefix("dualgroup:Z^d:") {
            return Ok(RingId::DualGroup(parse_rank(d, t)?));
        }
        if let Some(d) = t.strip_prefix("Z^d:") {
            return Ok(match parse_rank(d, t)? {
                1 => RingId::Circle,
                d => RingId::Torus(d),
            });
        }
        if let Some(name) = t.strip_prefix("finite:") {
            FiniteGroup::by_name(name)?;
            return Ok(RingId::Finite(name.to_string()));
        }
        Err(invalid(format!(
            "unknown ring {t:?}; expected Z, Z^d:<d>, SU2, finite:<name> or dualgroup:Z^d:<d>"
        )))
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Circle => write!(f, "Z"),
            RingId::Torus(d) => write!(f, "Z^d:{d}"),
            RingId::Su2 => write!(f, "SU2"),
            RingId::Finite(n) => write!(f, "finite:{n}"),
            RingId::DualGroup(d) => write!(f, "dualgroup:Z^d:{d}"),
        }
    }
}

/// Generic continuation over a concrete compact group model.
pub trait ModelVisitor {
    type Output;
    fn visit<G: CompactGroup>(self, model: G) -> Self::Output;
}

impl RingId {
    pub fn ring(&self) -> Result<Arc<dyn FusionRing>> {
        Ok(match self {
            RingId::Circle => Arc::new(LatticeRing::new(1)),
            RingId::Torus(d) => Arc::new(LatticeRing::new(*d)),
            RingId::Su2 => Arc::new(Su2Ring),
            RingId::Finite(n) => Arc::new(FiniteRing::new(FiniteGroup::by_name(n)?)),
            RingId::DualGroup(d) => Arc::new(LatticeRing::discrete_group(*d)),
        })
    }

    pub fn has_model(&self) -> bool {
        !matches!(self, RingId::DualGroup(_))
    }

    pub fn visit_model<V: ModelVisitor>(&self, visitor: V) -> Result<V::Output> {
        Ok(match self {
            RingId::Circle => visitor.visit(Torus::circle()),
            RingId::Torus(d) => visitor.visit(Torus::new(*d)),
            RingId::Su2 => visitor.visit(Su2::new()),
            RingId::Finite(n) => visitor.visit(FiniteModel::by_name(n)?),
            RingId::DualGroup(_) => {
                return Err(invalid(format!(
                    "{self} is the dual of a group C*-algebra and has no compact group model"
                )))
            }
        })
    }
}
