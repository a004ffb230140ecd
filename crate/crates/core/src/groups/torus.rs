use std::f64::consts::TAU;

use rand::Rng;

use super::CompactGroup;
use crate::error::{invalid, Error, Result};
use crate::fusion::{FusionRing, IrrepLabel, LatticeRing};
use crate::linalg::{CMatrix, C64};

/// The torus T^d (the circle when d = 1). Irreps are the characters
/// z ↦ Π z_i^{k_i}, labelled by k ∈ ℤ^d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Torus {
    ring: LatticeRing,
}

/// A point of T^d as a vector of unit complex numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint(Vec<C64>);

impl TorusPoint {
    pub fn coords(&self) -> &[C64] {
        &self.0
    }
}

impl Torus {
    pub fn new(rank: usize) -> Self {
        Torus {
            ring: LatticeRing::new(rank),
        }
    }

    pub fn circle() -> Self {
        Self::new(1)
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// Builds a point, renormalizing every coordinate to modulus one.
    pub fn point(&self, coords: Vec<C64>) -> Result<TorusPoint> {
        if coords.len() != self.rank() {
            return Err(invalid(format!(
                "torus point has {} coordinates, expected {}",
                coords.len(),
                self.rank()
            )));
        }
        let mut out = Vec::with_capacity(coords.len());
        for z in coords {
            let r = z.norm();
            if !r.is_finite() || r < 1e-300 {
                return Err(invalid("torus coordinate must be nonzero and finite"));
            }
            out.push(z / r);
        }
        Ok(TorusPoint(out))
    }

    /// exp(i θ_k) per coordinate.
    pub fn from_angles(&self, angles: &[f64]) -> Result<TorusPoint> {
        self.point(angles.iter().map(|&t| C64::from_polar(1.0, t)).collect())
    }
}

impl CompactGroup for Torus {
    type Element = TorusPoint;
    type Ring = LatticeRing;

    fn ring(&self) -> &LatticeRing {
        &self.ring
    }

    fn identity(&self) -> TorusPoint {
        TorusPoint(vec![C64::new(1.0, 0.0); self.rank()])
    }

    fn multiply(&self, g: &TorusPoint, h: &TorusPoint) -> TorusPoint {
        TorusPoint(g.0.iter().zip(&h.0).map(|(a, b)| a * b).collect())
    }

    fn inverse(&self, g: &TorusPoint) -> TorusPoint {
        TorusPoint(g.0.iter().map(|z| z.conj()).collect())
    }

    fn distance(&self, g: &TorusPoint, h: &TorusPoint) -> f64 {
        g.0.iter()
            .zip(&h.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn irrep_matrix(&self, label: &IrrepLabel, g: &TorusPoint) -> Result<CMatrix> {
        Ok(CMatrix::from_element(1, 1, self.character_value(label, g)?))
    }

    fn character_value(&self, label: &IrrepLabel, g: &TorusPoint) -> Result<C64> {
        self.ring.check(label)?;
        Ok(g.0
            .iter()
            .zip(label.ids())
            .map(|(z, &k)| z.powi(k as i32))
            .product())
    }

    fn sample_haar<R: Rng + ?Sized>(&self, rng: &mut R) -> TorusPoint {
        TorusPoint(
            (0..self.rank())
                .map(|_| C64::from_polar(1.0, rng.random::<f64>() * TAU))
                .collect(),
        )
    }

    /// `z:<re>,<im>` per coordinate, `;`-separated for d > 1.
    fn parse_element(&self, literal: &str) -> Result<TorusPoint> {
        let coords = literal
            .split(';')
            .map(parse_unit_complex)
            .collect::<Result<Vec<_>>>()?;
        self.point(coords)
    }

    fn format_element(&self, g: &TorusPoint) -> String {
        let parts: Vec<String> = g.0.iter().map(|z| format!("z:{},{}", z.re, z.im)).collect();
        parts.join(";")
    }
}

fn parse_unit_complex(literal: &str) -> Result<C64> {
    let body = literal
        .trim()
        .strip_prefix("z:")
        .ok_or_else(|| Error::Parse(format!("circle element {literal:?}: expected z:<re>,<im>")))?;
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!(
            "circle element {literal:?}: expected two numbers"
        )));
    }
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("circle element {literal:?}: {e}")))
    };
    Ok(C64::new(num(parts[0])?, num(parts[1])?))
}
