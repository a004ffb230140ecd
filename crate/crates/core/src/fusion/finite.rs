use std::sync::Arc;

use super::{FolnerSchedule, Fusion, FusionRing, IrrepLabel, LabelSet};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

/// Dual of a finite group: labels `[index]` into its irrep table, fusion
/// from the character table.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    group: Arc<FiniteGroup>,
}

impl FiniteRing {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        FiniteRing { group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn index(label: &IrrepLabel) -> usize {
        label.0[0] as usize
    }

    pub fn full_set(&self) -> LabelSet {
        (0..self.group.num_irreps() as i64)
            .map(IrrepLabel::scalar)
            .collect()
    }
}

impl FusionRing for FiniteRing {
    fn id(&self) -> String {
        format!("finite:{}", self.group.name())
    }

    fn trivial(&self) -> IrrepLabel {
        IrrepLabel::scalar(0)
    }

    fn contains(&self, label: &IrrepLabel) -> bool {
        matches!(label.0.as_slice(), [k] if *k >= 0 && (*k as usize) < self.group.num_irreps())
    }

    fn dim_of(&self, label: &IrrepLabel) -> u64 {
        self.group.irreps()[Self::index(label)].dim as u64
    }

    fn conj_of(&self, label: &IrrepLabel) -> IrrepLabel {
        IrrepLabel::scalar(self.group.conj_irrep(Self::index(label)) as i64)
    }

    fn fuse_of(&self, a: &IrrepLabel, b: &IrrepLabel) -> Fusion {
        let (a, b) = (Self::index(a), Self::index(b));
        (0..self.group.num_irreps())
            .filter_map(|g| {
                let n = self.group.fusion_coefficient(a, b, g);
                (n > 0).then(|| (IrrepLabel::scalar(g as i64), n))
            })
            .collect()
    }

    fn enumerate(&self, bound: usize) -> Vec<IrrepLabel> {
        (0..bound.min(self.group.num_irreps()) as i64)
            .map(IrrepLabel::scalar)
            .collect()
    }

    fn full_dual(&self) -> Option<Vec<IrrepLabel>> {
        Some(self.full_set().into_iter().collect())
    }

    /// Accepts an irrep index or its name (e.g. `std` for S3).
    fn parse_label(&self, literal: &str) -> Result<IrrepLabel> {
        let t = literal.trim();
        let idx =
            match t.parse::<i64>() {
                Ok(k) => k,
                Err(_) => self.group.irrep_index(t).map(|k| k as i64).ok_or_else(|| {
                    Error::UnknownLabel {
                        label: t.to_string(),
                        ring: self.id(),
                    }
                })?,
            };
        let label = IrrepLabel::scalar(idx);
        self.check(&label)?;
        Ok(label)
    }

    fn format_label(&self, label: &IrrepLabel) -> String {
        if self.contains(label) {
            self.group.irreps()[Self::index(label)].name.clone()
        } else {
            label.to_string()
        }
    }

    fn generators(&self) -> Vec<IrrepLabel> {
        self.full_set().into_iter().collect()
    }

    fn default_schedule(&self, steps: usize) -> Result<FolnerSchedule> {
        FolnerSchedule::constant(
            self.full_set(),
            steps,
            format!("full dual of {}", self.group.name()),
        )
    }
}
