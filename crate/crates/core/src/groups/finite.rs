//! Finite groups with hard-coded irreducible unitary matrix representations:
//! cyclic groups C_n, the symmetric group S3, the dihedral group D4 of order 8
//! and the quaternion group Q8.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;

use super::CompactGroup;
use crate::error::{invalid, Error, Result};
use crate::fusion::{FiniteRing, FusionRing, IrrepLabel};
use crate::linalg::{c, CMatrix, C64};

/// An irreducible representation given by its matrix at every element.
#[derive(Debug)]
pub struct FiniteIrrep {
    pub name: String,
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

/// Multiplication table plus a complete list of irreps. Element 0 is the
/// identity and irrep 0 is trivial.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    irreps: Vec<FiniteIrrep>,
    characters: Vec<Vec<C64>>,
    conj: Vec<usize>,
    fusion: Vec<u64>,
}

pub const NAMES: &[&str] = &[
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "S3", "D4", "Q8",
];

impl FiniteGroup {
    /// Looks up one of the shipped groups.
    pub fn by_name(name: &str) -> Result<Arc<FiniteGroup>> {
        let g = match name {
            "S3" => symmetric3(),
            "D4" => dihedral4(),
            "Q8" => quaternion8(),
            _ => {
                let n = name
                    .strip_prefix('C')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|n| (2..=12).contains(n))
                    .ok_or_else(|| {
                        invalid(format!(
                            "unknown finite group {name:?}; expected one of {}",
                            NAMES.join(", ")
                        ))
                    })?;
                cyclic(n)
            }
        };
        Ok(Arc::new(g))
    }

    fn build(
        name: &str,
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        irreps: Vec<FiniteIrrep>,
    ) -> FiniteGroup {
        let mul: Vec<usize> = (0..order * order)
            .map(|k| mul(k / order, k % order))
            .collect();
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mul[g * order + h] == 0)
                    .expect("inverse exists")
            })
            .collect();
        let characters: Vec<Vec<C64>> = irreps
            .iter()
            .map(|r| r.matrices.iter().map(|m| m.trace()).collect())
            .collect();
        let r = irreps.len();
        let conj = (0..r)
            .map(|a| {
                (0..r)
                    .find(|&b| {
                        (0..order)
                            .all(|g| (characters[a][g].conj() - characters[b][g]).norm() < 1e-9)
                    })
                    .expect("conjugate irrep present")
            })
            .collect();
        // N_{a,b}^g = (1/|G|) Σ_x χ_a(x) χ_b(x) conj(χ_g(x)).
        let mut fusion = vec![0u64; r * r * r];
        for a in 0..r {
            for b in 0..r {
                for g in 0..r {
                    let s: C64 = (0..order)
                        .map(|x| characters[a][x] * characters[b][x] * characters[g][x].conj())
                        .sum::<C64>()
                        / order as f64;
                    let n = s.re.round();
                    assert!(
                        (s - c(n, 0.0)).norm() < 1e-9 && n >= 0.0,
                        "non-integral fusion coefficient in {name}"
                    );
                    fusion[(a * r + b) * r + g] = n as u64;
                }
            }
        }
        FiniteGroup {
            name: name.to_string(),
            order,
            mul,
            inv,
            irreps,
            characters,
            conj,
            fusion,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn irreps(&self) -> &[FiniteIrrep] {
        &self.irreps
    }

    pub fn num_irreps(&self) -> usize {
        self.irreps.len()
    }

    pub fn character(&self, irrep: usize, g: usize) -> C64 {
        self.characters[irrep][g]
    }

    pub fn conj_irrep(&self, a: usize) -> usize {
        self.conj[a]
    }

    pub fn fusion_coefficient(&self, a: usize, b: usize, g: usize) -> u64 {
        let r = self.irreps.len();
        self.fusion[(a * r + b) * r + g]
    }

    pub fn irrep_index(&self, name: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.name == name)
    }
}

fn scalar(z: C64) -> CMatrix {
    CMatrix::from_element(1, 1, z)
}

fn one_dim(name: &str, values: Vec<C64>) -> FiniteIrrep {
    FiniteIrrep {
        name: name.to_string(),
        dim: 1,
        matrices: values.into_iter().map(scalar).collect(),
    }
}

fn cyclic(n: usize) -> FiniteGroup {
    let irreps = (0..n)
        .map(|j| {
            let vals = (0..n)
                .map(|k| C64::from_polar(1.0, 2.0 * PI * ((j * k) % n) as f64 / n as f64))
                .collect();
            one_dim(&format!("chi{j}"), vals)
        })
        .collect();
    FiniteGroup::build(&format!("C{n}"), n, |a, b| (a + b) % n, irreps)
}

fn symmetric3() -> FiniteGroup {
    // Permutations of {0,1,2} in lexicographic order; identity first.
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let compose = |a: usize, b: usize| {
        let (p, q) = (perms[a], perms[b]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    };
    let sign = |p: &[usize; 3]| {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    // Orthonormal basis of the sum-zero plane.
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let basis = CMatrix::from_row_slice(
        3,
        2,
        &[
            c(1.0 / s2, 0.0),
            c(1.0 / s6, 0.0),
            c(-1.0 / s2, 0.0),
            c(1.0 / s6, 0.0),
            c(0.0, 0.0),
            c(-2.0 / s6, 0.0),
        ],
    );
    let standard = perms
        .iter()
        .map(|p| {
            let mut m = CMatrix::zeros(3, 3);
            for (i, &pi) in p.iter().enumerate() {
                m[(pi, i)] = c(1.0, 0.0);
            }
            basis.adjoint() * m * &basis
        })
        .collect();
    let irreps = vec![
        one_dim("trivial", vec![c(1.0, 0.0); 6]),
        one_dim("sign", perms.iter().map(|p| c(sign(p), 0.0)).collect()),
        FiniteIrrep {
            name: "std".into(),
            dim: 2,
            matrices: standard,
        },
    ];
    FiniteGroup::build("S3", 6, compose, irreps)
}

fn dihedral4() -> FiniteGroup {
    // Index k + 4e stands for r^k s^e, with s r s = r⁻¹.
    let split = |g: usize| (g % 4, g / 4);
    let mul = move |g: usize, h: usize| {
        let ((a, e), (b, f)) = (split(g), split(h));
        let b = if e == 1 { (4 - b) % 4 } else { b };
        (a + b) % 4 + 4 * (e ^ f)
    };
    let rot = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let refl =
        CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let mut irreps: Vec<FiniteIrrep> = [
        (1.0, 1.0, "trivial"),
        (1.0, -1.0, "A2"),
        (-1.0, 1.0, "B1"),
        (-1.0, -1.0, "B2"),
    ]
    .iter()
    .map(|&(er, es, name)| {
        let vals = (0..8)
            .map(|g| {
                let (k, e) = split(g);
                c(f64::powi(er, k as i32) * f64::powi(es, e as i32), 0.0)
            })
            .collect();
        one_dim(name, vals)
    })
    .collect();
    let two_dim = (0..8)
        .map(|g| {
            let (k, e) = split(g);
            let mut m = CMatrix::identity(2, 2);
            for _ in 0..k {
                m = &m * &rot;
            }
            if e == 1 {
                m = &m * &refl;
            }
            m
        })
        .collect();
    irreps.push(FiniteIrrep {
        name: "E".into(),
        dim: 2,
        matrices: two_dim,
    });
    FiniteGroup::build("D4", 8, mul, irreps)
}

fn quaternion8() -> FiniteGroup {
    // Index 2u + s: unit u ∈ (1, i, j, k), sign s ∈ (+, −).
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    let units = [
        CMatrix::identity(2, 2),
        CMatrix::from_row_slice(2, 2, &[i, zero, zero, -i]),
        CMatrix::from_row_slice(2, 2, &[zero, one, -one, zero]),
        CMatrix::from_row_slice(2, 2, &[zero, i, i, zero]),
    ];
    let elements: Vec<CMatrix> = (0..8)
        .map(|g| {
            let m = units[g / 2].clone();
            if g % 2 == 1 {
                -m
            } else {
                m
            }
        })
        .collect();
    let lookup = |m: &CMatrix| {
        elements
            .iter()
            .position(|e| (e - m).iter().all(|z| z.norm() < 1e-12))
            .expect("closed under multiplication")
    };
    let mul_table: Vec<usize> = (0..64)
        .map(|k| lookup(&(&elements[k / 8] * &elements[k % 8])))
        .collect();
    let mut irreps: Vec<FiniteIrrep> =
        [(0, 0, "trivial"), (0, 1, "Ai"), (1, 0, "Aj"), (1, 1, "Ak")]
            .iter()
            .map(|&(a, b, name)| {
                let vals = (0..8)
                    .map(|g| {
                        let exp = match g / 2 {
                            0 => 0,
                            1 => a,
                            2 => b,
                            _ => a + b,
                        };
                        c(if exp % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
                    })
                    .collect();
                one_dim(name, vals)
            })
            .collect();
    irreps.push(FiniteIrrep {
        name: "H".into(),
        dim: 2,
        matrices: elements,
    });
    FiniteGroup::build("Q8", 8, |a, b| mul_table[a * 8 + b], irreps)
}

/// A finite group as a compact group model.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    group: Arc<FiniteGroup>,
    ring: FiniteRing,
}

impl PartialEq for FiniteModel {
    fn eq(&self, other: &Self) -> bool {
        self.group.name() == other.group.name()
    }
}

impl FiniteModel {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        FiniteModel {
            ring: FiniteRing::new(group.clone()),
            group,
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::new(FiniteGroup::by_name(name)?))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// All elements, identity first.
    pub fn elements(&self) -> Vec<FiniteElement> {
        (0..self.group.order()).map(FiniteElement).collect()
    }

    pub fn element(&self, index: usize) -> Result<FiniteElement> {
        if index < self.group.order() {
            Ok(FiniteElement(index))
        } else {
            Err(invalid(format!(
                "element index {index} out of range for {} (order {})",
                self.group.name(),
                self.group.order()
            )))
        }
    }
}

/// Index into the element table of a finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteElement(pub usize);

impl CompactGroup for FiniteModel {
    type Element = FiniteElement;
    type Ring = FiniteRing;

    fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    fn identity(&self) -> FiniteElement {
        FiniteElement(0)
    }

    fn multiply(&self, g: &FiniteElement, h: &FiniteElement) -> FiniteElement {
        FiniteElement(self.group.mul(g.0, h.0))
    }

    fn inverse(&self, g: &FiniteElement) -> FiniteElement {
        FiniteElement(self.group.inv(g.0))
    }

    fn distance(&self, g: &FiniteElement, h: &FiniteElement) -> f64 {
        if g == h {
            0.0
        } else {
            1.0
        }
    }

    fn irrep_matrix(&self, label: &IrrepLabel, g: &FiniteElement) -> Result<CMatrix> {
        self.ring.check(label)?;
        Ok(self.group.irreps[label.0[0] as usize].matrices[g.0].clone())
    }

    fn character_value(&self, label: &IrrepLabel, g: &FiniteElement) -> Result<C64> {
        self.ring.check(label)?;
        Ok(self.group.character(label.0[0] as usize, g.0))
    }

    fn sample_haar<R: Rng + ?Sized>(&self, rng: &mut R) -> FiniteElement {
        FiniteElement(rng.random_range(0..self.group.order()))
    }

    fn parse_element(&self, literal: &str) -> Result<FiniteElement> {
        let idx = literal
            .trim()
            .strip_prefix("g:")
            .ok_or_else(|| Error::Parse(format!("finite element {literal:?}: expected g:<index>")))?
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("finite element {literal:?}: {e}")))?;
        self.element(idx)
    }

    fn format_element(&self, g: &FiniteElement) -> String {
        format!("g:{}", g.0)
    }

    fn finite_elements(&self) -> Option<Vec<FiniteElement>> {
        Some(self.elements())
    }
}
