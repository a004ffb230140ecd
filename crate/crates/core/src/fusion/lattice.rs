use super::{FolnerSchedule, Fusion, FusionRing, IrrepLabel};
use crate::error::{Error, Result};

/// The lattice ℤ^d: dual of the torus T^d, or the discrete group whose group
/// C*-algebra plays the compact quantum group. All dimensions are 1 and
/// fusion is vector addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeRing {
    rank: usize,
    discrete: bool,
}

impl LatticeRing {
    /// ℤ^d viewed as the dual of the torus T^d.
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1, "lattice rank must be positive");
        LatticeRing {
            rank,
            discrete: false,
        }
    }

    /// ℤ^d viewed as a discrete group Γ with C(G) = C*(Γ).
    pub fn discrete_group(rank: usize) -> Self {
        LatticeRing {
            discrete: true,
            ..Self::new(rank)
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_discrete_group(&self) -> bool {
        self.discrete
    }

    /// Standard basis vectors e_1..e_d.
    pub fn unit_vectors(&self) -> Vec<IrrepLabel> {
        (0..self.rank)
            .map(|i| {
                let mut v = vec![0; self.rank];
                v[i] = 1;
                IrrepLabel(v)
            })
            .collect()
    }
}

// All vectors of length `rank` with L1 norm `r`.
fn shell(rank: usize, r: i64) -> Vec<Vec<i64>> {
    if rank == 1 {
        return if r == 0 {
            vec![vec![0]]
        } else {
            vec![vec![r], vec![-r]]
        };
    }
    let mut out = Vec::new();
    for head in 0..=r {
        for tail in shell(rank - 1, r - head) {
            let signs: &[i64] = if head == 0 { &[1] } else { &[1, -1] };
            for s in signs {
                let mut v = Vec::with_capacity(rank);
                v.push(s * head);
                v.extend_from_slice(&tail);
                out.push(v);
            }
        }
    }
    out
}

impl FusionRing for LatticeRing {
    fn id(&self) -> String {
        match (self.discrete, self.rank) {
            (true, d) => format!("dualgroup:Z^d:{d}"),
            (false, 1) => "Z".to_string(),
            (false, d) => format!("Z^d:{d}"),
        }
    }

    fn trivial(&self) -> IrrepLabel {
        IrrepLabel(vec![0; self.rank])
    }

    fn contains(&self, label: &IrrepLabel) -> bool {
        label.0.len() == self.rank
    }

    fn dim_of(&self, _label: &IrrepLabel) -> u64 {
        1
    }

    fn conj_of(&self, label: &IrrepLabel) -> IrrepLabel {
        IrrepLabel(label.0.iter().map(|k| -k).collect())
    }

    fn fuse_of(&self, a: &IrrepLabel, b: &IrrepLabel) -> Fusion {
        let sum = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        Fusion::from([(IrrepLabel(sum), 1)])
    }

    /// Shells of increasing L1 norm; within a shell, coordinates compare by
    /// absolute value and then positive before negative. For d = 1 this is
    /// 0, 1, −1, 2, −2, …
    fn enumerate(&self, bound: usize) -> Vec<IrrepLabel> {
        let mut out = Vec::with_capacity(bound);
        let mut r = 0;
        while out.len() < bound {
            let mut s = shell(self.rank, r);
            s.sort_by_key(|v| v.iter().map(|k| (k.abs(), *k < 0)).collect::<Vec<_>>());
            out.extend(s.into_iter().map(IrrepLabel));
            r += 1;
        }
        out.truncate(bound);
        out
    }

    fn parse_label(&self, literal: &str) -> Result<IrrepLabel> {
        let body = literal.trim().trim_start_matches("w:");
        let ids = body
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("lattice label {literal:?}: {e}")))?;
        let label = IrrepLabel(ids);
        self.check(&label)?;
        Ok(label)
    }

    fn generators(&self) -> Vec<IrrepLabel> {
        self.unit_vectors()
    }

    fn default_schedule(&self, steps: usize) -> Result<FolnerSchedule> {
        FolnerSchedule::lattice_boxes(self.rank, steps)
    }
}
