use super::{FolnerSchedule, Fusion, FusionRing, IrrepLabel};
use crate::error::{Error, Result};

/// Dual of SU(2). Labels are `[2j]` for spin j, with dimension 2j+1; every
/// label is self-conjugate and fusion follows the Clebsch–Gordan rule
/// n ⊗ m = |n−m|, |n−m|+2, …, n+m.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Su2Ring;

impl FusionRing for Su2Ring {
    fn id(&self) -> String {
        "SU2".to_string()
    }

    fn trivial(&self) -> IrrepLabel {
        IrrepLabel::scalar(0)
    }

    fn contains(&self, label: &IrrepLabel) -> bool {
        matches!(label.0.as_slice(), [n] if *n >= 0)
    }

    fn dim_of(&self, label: &IrrepLabel) -> u64 {
        label.0[0] as u64 + 1
    }

    fn conj_of(&self, label: &IrrepLabel) -> IrrepLabel {
        label.clone()
    }

    fn fuse_of(&self, a: &IrrepLabel, b: &IrrepLabel) -> Fusion {
        let (n, m) = (a.0[0], b.0[0]);
        ((n - m).abs()..=n + m)
            .step_by(2)
            .map(|k| (IrrepLabel::scalar(k), 1))
            .collect()
    }

    fn enumerate(&self, bound: usize) -> Vec<IrrepLabel> {
        (0..bound as i64).map(IrrepLabel::scalar).collect()
    }

    fn parse_label(&self, literal: &str) -> Result<IrrepLabel> {
        let n: i64 = literal
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("SU2 label {literal:?} (expected 2j): {e}")))?;
        let label = IrrepLabel::scalar(n);
        self.check(&label)?;
        Ok(label)
    }

    fn generators(&self) -> Vec<IrrepLabel> {
        vec![IrrepLabel::scalar(1)]
    }

    fn default_schedule(&self, steps: usize) -> Result<FolnerSchedule> {
        FolnerSchedule::spin_intervals(steps)
    }
}
