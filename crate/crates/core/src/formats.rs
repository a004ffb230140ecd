//! JSON file formats: measure specs, representation specs and explicit
//! schedules.
//!
//! Measure spec:
//!
//! ```json
//! { "group": "Z",
//!   "atoms":   [{ "element": "z:1,0", "weight": 0.5 }],
//!   "density": [{ "irrep": "0", "matrix": [[[0.5, 0.0]]] }] }
//! ```
//!
//! Matrix entries are `[re, im]` pairs, row-major.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::RingId;
use crate::error::{invalid, Error, Result};
use crate::fusion::{FolnerSchedule, FusionRing, LabelSet};
use crate::groups::CompactGroup;
use crate::linalg::{matrix_from_pairs, matrix_to_pairs, CMatrix};
use crate::measures::{Atom, MeasureSpec};

pub type MatrixPairs = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub element: String,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityEntry {
    pub irrep: String,
    pub matrix: MatrixPairs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub group: String,
    #[serde(default)]
    pub atoms: Vec<AtomEntry>,
    #[serde(default)]
    pub density: Vec<DensityEntry>,
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!(
        "{what}: line {}, column {}: {e}",
        e.line(),
        e.column()
    ))
}

impl MeasureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("measure spec", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure files serialize")
    }

    pub fn ring_id(&self) -> Result<RingId> {
        self.group
            .parse()
            .map_err(|e: Error| invalid(format!("field \"group\": {e}")))
    }

    /// Builds the measure on `model`, reporting the offending field on error.
    pub fn to_measure<G: CompactGroup>(&self, model: &G) -> Result<MeasureSpec<G>> {
        let ring = model.ring();
        let atoms = self
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let element = model
                    .parse_element(&a.element)
                    .map_err(|e| invalid(format!("atoms[{i}].element: {e}")))?;
                Ok(Atom {
                    element,
                    weight: a.weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut density = BTreeMap::new();
        for (i, d) in self.density.iter().enumerate() {
            let label = ring
                .parse_label(&d.irrep)
                .map_err(|e| invalid(format!("density[{i}].irrep: {e}")))?;
            let m = matrix_from_pairs(&d.matrix)
                .ok_or_else(|| invalid(format!("density[{i}].matrix: ragged rows")))?;
            if density.insert(label, m).is_some() {
                return Err(invalid(format!(
                    "density[{i}].irrep: duplicate irrep {}",
                    d.irrep
                )));
            }
        }
        MeasureSpec::new(model.clone(), atoms, density)
    }

    /// Canonical form: atoms in stored order, density in label order.
    pub fn from_measure<G: CompactGroup>(mu: &MeasureSpec<G>) -> Self {
        let model = mu.model();
        let ring = model.ring();
        MeasureFile {
            group: ring.id(),
            atoms: mu
                .atom_list()
                .iter()
                .map(|a| AtomEntry {
                    element: model.format_element(&a.element),
                    weight: a.weight,
                })
                .collect(),
            density: mu
                .density()
                .iter()
                .map(|(l, m)| DensityEntry {
                    // Numeric ids parse back for every ring.
                    irrep: l.to_string(),
                    matrix: matrix_to_pairs(m),
                })
                .collect(),
        }
    }
}

/// Representation spec for the `ergodic` subcommand. Exactly one of
/// `points` (point rep), `generators` (group rep) or `state` (GNS rep) is
/// used, according to the requested kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub group: String,
    #[serde(default)]
    pub points: Option<Vec<String>>,
    #[serde(default)]
    pub generators: Option<Vec<MatrixPairs>>,
    #[serde(default)]
    pub state: Option<Vec<f64>>,
    /// Labels whose joint eigenvalue-d_α spaces define the invariant
    /// projection; defaults to the ring's generators.
    #[serde(default)]
    pub generating_labels: Option<Vec<String>>,
}

impl RepFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("representation spec", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rep files serialize")
    }

    pub fn ring_id(&self) -> Result<RingId> {
        self.group
            .parse()
            .map_err(|e: Error| invalid(format!("field \"group\": {e}")))
    }

    pub fn generator_matrices(&self) -> Result<Vec<CMatrix>> {
        let g = self
            .generators
            .as_ref()
            .ok_or_else(|| invalid("field \"generators\" is required for a group rep"))?;
        g.iter()
            .enumerate()
            .map(|(i, m)| {
                matrix_from_pairs(m).ok_or_else(|| invalid(format!("generators[{i}]: ragged rows")))
            })
            .collect()
    }

    pub fn generating_set(&self, ring: &dyn FusionRing) -> Result<LabelSet> {
        match &self.generating_labels {
            None => Ok(ring.generators().into_iter().collect()),
            Some(ls) => ls
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    ring.parse_label(l)
                        .map_err(|e| invalid(format!("generating_labels[{i}]: {e}")))
                })
                .collect(),
        }
    }
}

/// An explicit schedule: `{ "description": "...", "sets": [["0","1"], ...] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    #[serde(default)]
    pub description: Option<String>,
    pub sets: Vec<Vec<String>>,
}

impl ScheduleFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("schedule", e))
    }

    pub fn to_schedule(&self, ring: &dyn FusionRing) -> Result<FolnerSchedule> {
        let sets = self
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.iter()
                    .enumerate()
                    .map(|(j, l)| {
                        ring.parse_label(l)
                            .map_err(|e| invalid(format!("sets[{i}][{j}]: {e}")))
                    })
                    .collect::<Result<LabelSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FolnerSchedule::new(
            sets,
            self.description
                .clone()
                .unwrap_or_else(|| "explicit".to_string()),
        )
    }
}

/// Named schedules: `default` (the ring's own), `boxes` (ℤ^d), `spins`
/// (SU(2)) and `full` (finite duals).
pub fn named_schedule(ring: &dyn FusionRing, name: &str, steps: usize) -> Result<FolnerSchedule> {
    if steps == 0 {
        return Err(invalid("steps must be at least 1"));
    }
    let id: RingId = ring.id().parse()?;
    match (name, &id) {
        ("default", _) => ring.default_schedule(steps),
        ("boxes", RingId::Circle) => FolnerSchedule::lattice_boxes(1, steps),
        ("boxes", RingId::Torus(d) | RingId::DualGroup(d)) => FolnerSchedule::lattice_boxes(*d, steps),
        ("spins", RingId::Su2) => FolnerSchedule::spin_intervals(steps),
        ("full", RingId::Finite(_)) => ring.default_schedule(steps),
        _ => Err(invalid(format!(
            "schedule {name:?} is not available for ring {}; use default, boxes (Z^d), spins (SU2), full (finite) or a JSON file",
            ring.id()
        ))),
    }
}
