//! Combinatorics of the dual object: irrep labels, dimensions, conjugation,
//! fusion multiplicities, weighted cardinality, relative boundary and the
//! Folner deficiency ratio.

mod finite;
mod lattice;
mod su2;

pub use finite::FiniteRing;
pub use lattice::LatticeRing;
pub use su2::Su2Ring;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// An irreducible representation class, identified by an integer vector
/// whose meaning is fixed by the ring that issued it.
///
/// `Ord` is lexicographic on the id; every reduction over a label set runs in
/// this order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IrrepLabel(pub Vec<i64>);

impl IrrepLabel {
    pub fn scalar(k: i64) -> Self {
        IrrepLabel(vec![k])
    }

    pub fn ids(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Finite label set in canonical (lexicographic) order.
pub type LabelSet = BTreeSet<IrrepLabel>;

/// Decomposition of a tensor product: label → multiplicity.
pub type Fusion = BTreeMap<IrrepLabel, u64>;

/// The countable dual Ĝ together with its fusion rules.
pub trait FusionRing: Send + Sync + fmt::Debug {
    /// CLI identifier, e.g. `"SU2"` or `"finite:S3"`.
    fn id(&self) -> String;
    fn trivial(&self) -> IrrepLabel;
    fn contains(&self, label: &IrrepLabel) -> bool;
    /// Dimension of a label already known to belong to the ring.
    fn dim_of(&self, label: &IrrepLabel) -> u64;
    fn conj_of(&self, label: &IrrepLabel) -> IrrepLabel;
    fn fuse_of(&self, a: &IrrepLabel, b: &IrrepLabel) -> Fusion;
    /// Deterministic prefix of the dual in the ring's enumeration order.
    /// Finite duals are returned whole once `bound` exceeds their size.
    fn enumerate(&self, bound: usize) -> Vec<IrrepLabel>;
    /// The full dual, for finite groups.
    fn full_dual(&self) -> Option<Vec<IrrepLabel>> {
        None
    }
    fn parse_label(&self, literal: &str) -> Result<IrrepLabel>;
    fn format_label(&self, label: &IrrepLabel) -> String {
        label.to_string()
    }
    /// A small generating set, used as the default `S` and as the default
    /// generating labels of an invariant projection.
    fn generators(&self) -> Vec<IrrepLabel>;
    /// The per-ring default Folner schedule with `steps` entries.
    fn default_schedule(&self, steps: usize) -> Result<FolnerSchedule>;

    fn check(&self, label: &IrrepLabel) -> Result<()> {
        if self.contains(label) {
            Ok(())
        } else {
            Err(Error::UnknownLabel {
                label: label.to_string(),
                ring: self.id(),
            })
        }
    }

    fn dim(&self, label: &IrrepLabel) -> Result<u64> {
        self.check(label)?;
        Ok(self.dim_of(label))
    }

    fn conj(&self, label: &IrrepLabel) -> Result<IrrepLabel> {
        self.check(label)?;
        Ok(self.conj_of(label))
    }

    fn fuse(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<Fusion> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.fuse_of(a, b))
    }

    /// N_{a,b}^g.
    fn multiplicity(&self, a: &IrrepLabel, b: &IrrepLabel, g: &IrrepLabel) -> Result<u64> {
        self.check(g)?;
        Ok(self.fuse(a, b)?.get(g).copied().unwrap_or(0))
    }
}

/// |F|_w = Σ_{α∈F} d_α².
pub fn weighted_cardinality<R: FusionRing + ?Sized>(set: &LabelSet, ring: &R) -> Result<u64> {
    set.iter().try_fold(0u64, |acc, a| {
        let d = ring.dim(a)?;
        Ok(acc + d * d)
    })
}

/// Relative boundary ∂_S(F).
///
/// The inner part is read off the products α·γ directly. The outer part,
/// which nominally ranges over every α outside F, is the set of labels
/// outside F appearing in some β·γ̄ with β ∈ F, γ ∈ S (Frobenius
/// reciprocity: N_{α,γ}^β = N_{β,γ̄}^α).
pub fn boundary<R: FusionRing + ?Sized>(
    set: &LabelSet,
    probe: &LabelSet,
    ring: &R,
) -> Result<LabelSet> {
    if probe.is_empty() {
        return Err(invalid("boundary: probe set S must be nonempty"));
    }
    for a in set.iter().chain(probe.iter()) {
        ring.check(a)?;
    }
    let probe_conj: Vec<IrrepLabel> = probe.iter().map(|g| ring.conj_of(g)).collect();
    let mut out = LabelSet::new();
    for a in set {
        let leaks = probe
            .iter()
            .any(|g| ring.fuse_of(a, g).keys().any(|b| !set.contains(b)));
        if leaks {
            out.insert(a.clone());
        }
    }
    for b in set {
        for g in &probe_conj {
            for a in ring.fuse_of(b, g).into_keys() {
                if !set.contains(&a) {
                    out.insert(a);
                }
            }
        }
    }
    Ok(out)
}

/// |∂_S(F)|_w / |F|_w.
pub fn folner_ratio<R: FusionRing + ?Sized>(
    set: &LabelSet,
    probe: &LabelSet,
    ring: &R,
) -> Result<f64> {
    Ok(folner_step(set, probe, ring)?.ratio)
}

/// One row of a Folner verification.
#[derive(Clone, Debug, PartialEq)]
pub struct FolnerStep {
    pub weight: u64,
    pub boundary_weight: u64,
    pub ratio: f64,
}

fn folner_step<R: FusionRing + ?Sized>(
    set: &LabelSet,
    probe: &LabelSet,
    ring: &R,
) -> Result<FolnerStep> {
    if set.is_empty() {
        return Err(invalid("folner ratio of an empty set"));
    }
    let weight = weighted_cardinality(set, ring)?;
    let boundary_weight = weighted_cardinality(&boundary(set, probe, ring)?, ring)?;
    Ok(FolnerStep {
        weight,
        boundary_weight,
        ratio: boundary_weight as f64 / weight as f64,
    })
}

/// Folner ratios of every set of a schedule, in order. No limit is claimed.
pub fn verify_folner<R: FusionRing + ?Sized>(
    schedule: &FolnerSchedule,
    probe: &LabelSet,
    ring: &R,
) -> Result<Vec<FolnerStep>> {
    schedule
        .sets()
        .iter()
        .map(|f| folner_step(f, probe, ring))
        .collect()
}

/// An ordered list of finite nonempty label sets (nesting not required).
#[derive(Clone, Debug, PartialEq)]
pub struct FolnerSchedule {
    sets: Vec<LabelSet>,
    description: String,
}

impl FolnerSchedule {
    pub fn new(sets: Vec<LabelSet>, description: impl Into<String>) -> Result<Self> {
        if sets.is_empty() {
            return Err(invalid("schedule must contain at least one set"));
        }
        if let Some(i) = sets.iter().position(|s| s.is_empty()) {
            return Err(invalid(format!("schedule set {} is empty", i + 1)));
        }
        Ok(FolnerSchedule {
            sets,
            description: description.into(),
        })
    }

    /// Integer boxes {−n..n}^d for n = 1..=steps.
    pub fn lattice_boxes(rank: usize, steps: usize) -> Result<Self> {
        let sets = (1..=steps as i64).map(|n| lattice_box(rank, n)).collect();
        Self::new(sets, format!("boxes {{-n..n}}^{rank}, n=1..{steps}"))
    }

    /// Selected boxes {−n..n}^d for the given radii.
    pub fn lattice_boxes_at(rank: usize, radii: &[i64]) -> Result<Self> {
        let sets = radii.iter().map(|&n| lattice_box(rank, n)).collect();
        Self::new(sets, format!("boxes {{-n..n}}^{rank}, n in {radii:?}"))
    }

    /// Spin intervals {2j = 0..n} for n = 1..=steps.
    pub fn spin_intervals(steps: usize) -> Result<Self> {
        let sets = (1..=steps as i64)
            .map(|n| (0..=n).map(IrrepLabel::scalar).collect())
            .collect();
        Self::new(sets, format!("spin intervals {{0..n}}, n=1..{steps}"))
    }

    /// The same set repeated `steps` times.
    pub fn constant(set: LabelSet, steps: usize, description: impl Into<String>) -> Result<Self> {
        Self::new(vec![set; steps.max(1)], description)
    }

    pub fn sets(&self) -> &[LabelSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Union of all sets, in canonical order.
    pub fn support(&self) -> Vec<IrrepLabel> {
        let mut all: Vec<&IrrepLabel> = Vec::new();
        for set in &self.sets {
            all = merge_sorted(&all, set);
        }
        all.into_iter().cloned().collect()
    }

    /// The support together with, for every set, the positions of its labels
    /// in the support (ascending).
    pub fn indexed(&self) -> (Vec<IrrepLabel>, Vec<Vec<usize>>) {
        let support = self.support();
        let positions = self
            .sets
            .iter()
            .map(|set| {
                let mut out = Vec::with_capacity(set.len());
                let mut i = 0;
                for label in set {
                    while support[i] != *label {
                        i += 1;
                    }
                    out.push(i);
                }
                out
            })
            .collect();
        (support, positions)
    }
}

fn merge_sorted<'a>(a: &[&'a IrrepLabel], b: &'a LabelSet) -> Vec<&'a IrrepLabel> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let mut left = a.iter().copied().peekable();
    let mut right = b.iter().peekable();
    loop {
        let next = match (left.peek(), right.peek()) {
            (None, None) => return out,
            (Some(_), None) => left.next(),
            (None, Some(_)) => right.next(),
            (Some(x), Some(y)) => match (*x).cmp(*y) {
                std::cmp::Ordering::Less => left.next(),
                std::cmp::Ordering::Greater => right.next(),
                std::cmp::Ordering::Equal => {
                    right.next();
                    left.next()
                }
            },
        };
        out.extend(next);
    }
}

fn lattice_box(rank: usize, n: i64) -> LabelSet {
    let mut out = Vec::new();
    let mut cur = vec![-n; rank];
    loop {
        out.push(IrrepLabel(cur.clone()));
        let mut i = 0;
        loop {
            if i == rank {
                return out.into_iter().collect();
            }
            if cur[i] < n {
                cur[i] += 1;
                break;
            }
            cur[i] = -n;
            i += 1;
        }
    }
}
