//! Cesàro operator averages M_F = (1/|F|_w) Σ_{α∈F} d_α π(χ(α)) for
//! finite-dimensional *-representations, the counit-invariant subspace
//! {x : π(χ(α))x = d_α x for all α}, and a convergence report.

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{invalid, Result};
use crate::fusion::{
    weighted_cardinality, FolnerSchedule, FusionRing, IrrepLabel, LabelSet, LatticeRing,
};
use crate::groups::{CompactGroup, FiniteModel};
use crate::linalg::{
    frobenius, identity, null_space, pairwise_sum_refs, unitarity_defect, unitary_pow, CMatrix, C64,
};
use crate::par;

/// How a representation was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Evaluation at finitely many points of a compact group.
    Point,
    /// A unitary representation of ℤ^d, i.e. a representation of C*(ℤ^d).
    Group,
    /// GNS representation of a state on C(G), G finite.
    Gns,
}

type Evaluator = dyn Fn(&IrrepLabel) -> Result<CMatrix> + Send + Sync;

/// A *-representation on ℂ^k, known through the images π(χ(α)).
#[derive(Clone)]
pub struct FiniteDimRep {
    dim: usize,
    provenance: Provenance,
    ring: Arc<dyn FusionRing>,
    evaluator: Arc<Evaluator>,
    cyclic: Option<DVector<C64>>,
}

impl fmt::Debug for FiniteDimRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteDimRep")
            .field("dim", &self.dim)
            .field("provenance", &self.provenance)
            .field("ring", &self.ring.id())
            .finish()
    }
}

impl FiniteDimRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn ring(&self) -> &dyn FusionRing {
        self.ring.as_ref()
    }

    /// π(χ(α)).
    pub fn character_image(&self, label: &IrrepLabel) -> Result<CMatrix> {
        self.ring.check(label)?;
        (self.evaluator)(label)
    }

    /// The cyclic vector 1̂ of a GNS representation, in orthonormal
    /// coordinates.
    pub fn cyclic_vector(&self) -> Option<&DVector<C64>> {
        self.cyclic.as_ref()
    }

    /// ⟨M 1̂, 1̂⟩ for the cyclic vector, if there is one.
    pub fn cyclic_value(&self, m: &CMatrix) -> Option<C64> {
        self.cyclic.as_ref().map(|v| (v.adjoint() * m * v)[(0, 0)])
    }
}

/// Evaluation at the given points: π(χ(α)) = diag(χ_α(x_1), …, χ_α(x_k)).
pub fn point_rep<G: CompactGroup>(model: &G, points: Vec<G::Element>) -> Result<FiniteDimRep> {
    if points.is_empty() {
        return Err(invalid("point representation needs at least one point"));
    }
    let dim = points.len();
    let m = model.clone();
    let evaluator = move |label: &IrrepLabel| -> Result<CMatrix> {
        let diag = points
            .iter()
            .map(|x| m.character_value(label, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix::from_diagonal(&DVector::from_vec(diag)))
    };
    Ok(FiniteDimRep {
        dim,
        provenance: Provenance::Point,
        ring: Arc::new(model.ring().clone()),
        evaluator: Arc::new(evaluator),
        cyclic: None,
    })
}

/// Tolerance for unitarity and commutation of generator images.
pub const GENERATOR_TOL: f64 = 1e-10;

/// Unitary representation of ℤ^d from the images of the unit vectors.
/// π(χ(s)) = U_1^{s_1} ⋯ U_d^{s_d}.
pub fn group_rep(ring: LatticeRing, generators: Vec<CMatrix>) -> Result<FiniteDimRep> {
    if generators.len() != ring.rank() {
        return Err(invalid(format!(
            "expected {} generator images, got {}",
            ring.rank(),
            generators.len()
        )));
    }
    let dim = generators[0].nrows();
    for (i, u) in generators.iter().enumerate() {
        if u.nrows() != dim || u.ncols() != dim {
            return Err(invalid(format!("generator {i} must be {dim}x{dim}")));
        }
        let defect = unitarity_defect(u);
        if defect.is_nan() || defect > GENERATOR_TOL {
            return Err(invalid(format!(
                "generator {i} is not unitary (defect {defect:.2e})"
            )));
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let (a, b) = (&generators[i], &generators[j]);
            let c = frobenius(&(a * b - b * a));
            if c.is_nan() || c > GENERATOR_TOL {
                return Err(invalid(format!(
                    "generators {i} and {j} do not commute (residue {c:.2e})"
                )));
            }
        }
    }
    let evaluator = move |label: &IrrepLabel| -> Result<CMatrix> {
        Ok(label
            .ids()
            .iter()
            .zip(&generators)
            .fold(identity(dim), |acc, (&k, u)| acc * unitary_pow(u, k)))
    };
    Ok(FiniteDimRep {
        dim,
        provenance: Provenance::Group,
        ring: Arc::new(ring),
        evaluator: Arc::new(evaluator),
        cyclic: None,
    })
}

/// GNS representation of the state φ = Σ φ(x) δ_x on C(G). The space is
/// L²(supp φ, φ); in the orthonormal basis 1_x/√φ(x), multiplication by χ_α
/// is diagonal and 1̂ has coordinates √φ(x).
pub fn gns_rep(model: &FiniteModel, state: &[f64]) -> Result<FiniteDimRep> {
    let order = model.group().order();
    if state.len() != order {
        return Err(invalid(format!(
            "state has {} entries, group order is {order}",
            state.len()
        )));
    }
    if state.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
        return Err(invalid("state entries must be finite and nonnegative"));
    }
    let total: f64 = state.iter().sum();
    if total == 0.0 {
        return Err(invalid("state vector is zero"));
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("state entries must sum to 1, got {total}")));
    }
    let support: Vec<usize> = (0..order).filter(|&x| state[x] > 0.0).collect();
    let cyclic = DVector::from_iterator(
        support.len(),
        support.iter().map(|&x| C64::new(state[x].sqrt(), 0.0)),
    );
    let points = support
        .iter()
        .map(|&x| model.element(x))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = point_rep(model, points)?;
    rep.provenance = Provenance::Gns;
    rep.cyclic = Some(cyclic);
    Ok(rep)
}

fn weighted_image(rep: &FiniteDimRep, label: &IrrepLabel) -> Result<CMatrix> {
    let d = rep.ring.dim(label)? as f64;
    Ok(rep.character_image(label)? * C64::new(d, 0.0))
}

/// M_F = (1/|F|_w) Σ_{α∈F} d_α π(χ(α)), reduced in label order.
pub fn cesaro_operator(rep: &FiniteDimRep, set: &LabelSet) -> Result<CMatrix> {
    if set.is_empty() {
        return Err(invalid("Cesaro average over an empty label set"));
    }
    let labels: Vec<IrrepLabel> = set.iter().cloned().collect();
    let terms = par::try_map(&labels, |l| weighted_image(rep, l))?;
    let w = weighted_cardinality(set, rep.ring())?;
    let refs: Vec<&CMatrix> = terms.iter().collect();
    Ok(pairwise_sum_refs(&refs, rep.dim, rep.dim) / C64::new(w as f64, 0.0))
}

/// Relative singular-value threshold for the eigenvalue-d_α null spaces.
pub const NULL_SPACE_TOL: f64 = 1e-8;

/// Orthogonal projection onto ∩_α ker(π(χ(α)) − d_α I) over the given labels.
pub fn invariant_projection(rep: &FiniteDimRep, labels: &LabelSet) -> Result<CMatrix> {
    if labels.is_empty() {
        return Err(invalid("invariant projection needs generating labels"));
    }
    let k = rep.dim;
    let mut basis = identity(k);
    for label in labels {
        if basis.ncols() == 0 {
            break;
        }
        let d = rep.ring.dim(label)? as f64;
        let shifted = rep.character_image(label)? - identity(k) * C64::new(d, 0.0);
        let restricted = &shifted * &basis;
        let kernel = null_space(&restricted, NULL_SPACE_TOL * d);
        basis = &basis * kernel;
    }
    if basis.ncols() == 0 {
        return Ok(CMatrix::zeros(k, k));
    }
    Ok(&basis * basis.adjoint())
}

/// One step of an [`ErgodicReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct ErgodicStep {
    pub weight: u64,
    /// ‖M_n − P‖_F.
    pub distance: f64,
    /// max_γ ‖M_n π(χ(γ)) − π(χ(γ)) M_n‖_F.
    pub commutant_residue: f64,
    pub cyclic_value: Option<C64>,
}

#[derive(Clone, Debug)]
pub struct ErgodicReport {
    pub projection: CMatrix,
    pub steps: Vec<ErgodicStep>,
    pub tol: f64,
    pub passed: bool,
}

/// Compares every Cesàro average of the schedule with the invariant
/// projection. Passes when the last step's distance and commutant residue
/// are both below `tol`.
pub fn ergodic_limit_check(
    rep: &FiniteDimRep,
    schedule: &FolnerSchedule,
    generating_labels: &LabelSet,
    tol: f64,
) -> Result<ErgodicReport> {
    let projection = invariant_projection(rep, generating_labels)?;
    let generators = generating_labels
        .iter()
        .map(|g| rep.character_image(g))
        .collect::<Result<Vec<_>>>()?;
    let (support, positions) = schedule.indexed();
    let terms = par::try_map(&support, |l| weighted_image(rep, l))?;
    let sq = support
        .iter()
        .map(|l| rep.ring.dim(l).map(|d| d * d))
        .collect::<Result<Vec<u64>>>()?;
    let mut steps = Vec::with_capacity(schedule.len());
    for pos in &positions {
        let w: u64 = pos.iter().map(|&i| sq[i]).sum();
        let refs: Vec<&CMatrix> = pos.iter().map(|&i| &terms[i]).collect();
        let m = pairwise_sum_refs(&refs, rep.dim, rep.dim) / C64::new(w as f64, 0.0);
        let commutant_residue = generators
            .iter()
            .map(|g| frobenius(&(&m * g - g * &m)))
            .fold(0.0, f64::max);
        steps.push(ErgodicStep {
            weight: w,
            distance: frobenius(&(&m - &projection)),
            commutant_residue,
            cyclic_value: rep.cyclic_value(&m),
        });
    }
    let last = steps.last().expect("schedule is nonempty");
    let passed = last.distance < tol && last.commutant_residue < tol;
    Ok(ErgodicReport {
        projection,
        steps,
        tol,
        passed,
    })
}
