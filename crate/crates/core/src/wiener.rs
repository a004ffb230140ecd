//! Truncated Wiener-type averages of a measure's Fourier coefficients over
//! finite label sets, and a heuristic continuity verdict built on them.
//!
//! For a finite set F of irreps and |F|_w = Σ d_α²:
//!
//! * atom average at y: (1/|F|_w) Σ d_α tr(μ̂(α) U^α(y)^†), tending to μ{y};
//! * energy average: (1/|F|_w) Σ d_α ‖μ̂(α)‖²_F, tending to Σ_x μ{x}²;
//! * character average: (1/|F|_w) Σ d_α tr μ̂(α), tending to μ{e}.

use crate::error::{invalid, Result};
use crate::fusion::{weighted_cardinality, FolnerSchedule, FusionRing, IrrepLabel, LabelSet};
use crate::groups::CompactGroup;
use crate::linalg::{frobenius_sq, pairwise_sum_c, trace_against, C64};
use crate::measures::MeasureSpec;
use crate::par;

/// Which average to evaluate.
#[derive(Clone, Debug, PartialEq)]
pub enum AverageKind<E> {
    Atom(E),
    Energy,
    Character,
}

impl<E> AverageKind<E> {
    pub fn name(&self) -> &'static str {
        match self {
            AverageKind::Atom(_) => "atom",
            AverageKind::Energy => "energy",
            AverageKind::Character => "char",
        }
    }
}

fn term<G: CompactGroup>(
    kind: &AverageKind<G::Element>,
    mu: &MeasureSpec<G>,
    label: &IrrepLabel,
) -> Result<C64> {
    let model = mu.model();
    let d = model.ring().dim(label)? as f64;
    let coeff = mu.fourier_matrix(label)?;
    let t = match kind {
        AverageKind::Atom(y) => trace_against(&coeff, &model.irrep_matrix(label, y)?),
        AverageKind::Energy => C64::new(frobenius_sq(&coeff), 0.0),
        AverageKind::Character => coeff.trace(),
    };
    Ok(t * d)
}

fn average<G: CompactGroup>(
    kind: &AverageKind<G::Element>,
    mu: &MeasureSpec<G>,
    set: &LabelSet,
) -> Result<C64> {
    if set.is_empty() {
        return Err(invalid("average over an empty label set"));
    }
    let weight = weighted_cardinality(set, mu.model().ring())?;
    let labels: Vec<IrrepLabel> = set.iter().cloned().collect();
    let terms = par::try_map(&labels, |l| term(kind, mu, l))?;
    Ok(pairwise_sum_c(&terms) / weight as f64)
}

/// (1/|F|_w) Σ_{α∈F} d_α tr(μ̂(α) U^α(y)^†).
pub fn atom_average<G: CompactGroup>(
    mu: &MeasureSpec<G>,
    y: &G::Element,
    set: &LabelSet,
) -> Result<C64> {
    average(&AverageKind::Atom(y.clone()), mu, set)
}

/// (1/|F|_w) Σ_{α∈F} d_α ‖μ̂(α)‖²_F.
pub fn energy_average<G: CompactGroup>(mu: &MeasureSpec<G>, set: &LabelSet) -> Result<f64> {
    Ok(average(&AverageKind::Energy, mu, set)?.re)
}

/// (1/|F|_w) Σ_{α∈F} d_α μ(χ(α)).
pub fn char_average<G: CompactGroup>(mu: &MeasureSpec<G>, set: &LabelSet) -> Result<C64> {
    average(&AverageKind::Character, mu, set)
}

/// One average evaluated along a schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageSeries {
    pub kind: &'static str,
    pub values: Vec<C64>,
    pub weights: Vec<u64>,
    pub target: Option<f64>,
}

impl AverageSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<C64> {
        self.values.last().copied()
    }

    pub fn abs_errors(&self) -> Option<Vec<f64>> {
        let t = self.target?;
        Some(
            self.values
                .iter()
                .map(|v| (v - C64::new(t, 0.0)).norm())
                .collect(),
        )
    }
}

/// Evaluates `kind` on every set of the schedule. Per-label terms are computed
/// once over the schedule's union, then each step is reduced in label order.
pub fn run_series<G: CompactGroup>(
    kind: &AverageKind<G::Element>,
    mu: &MeasureSpec<G>,
    schedule: &FolnerSchedule,
) -> Result<AverageSeries> {
    let ring = mu.model().ring();
    let (support, positions) = schedule.indexed();
    let terms = par::try_map(&support, |l| term(kind, mu, l))?;
    let sq = support
        .iter()
        .map(|l| ring.dim(l).map(|d| d * d))
        .collect::<Result<Vec<u64>>>()?;
    let mut values = Vec::with_capacity(schedule.len());
    let mut weights = Vec::with_capacity(schedule.len());
    for pos in &positions {
        let w: u64 = pos.iter().map(|&i| sq[i]).sum();
        let step: Vec<C64> = pos.iter().map(|&i| terms[i]).collect();
        values.push(pairwise_sum_c(&step) / w as f64);
        weights.push(w);
    }
    Ok(AverageSeries {
        kind: kind.name(),
        values,
        weights,
        target: None,
    })
}

/// The limit each average should reach, computed from the stored atoms
/// (and, on finite groups, the density's point masses).
pub fn oracle_target<G: CompactGroup>(
    kind: &AverageKind<G::Element>,
    mu: &MeasureSpec<G>,
) -> Result<f64> {
    match kind {
        AverageKind::Atom(y) => mu.point_mass(y),
        AverageKind::Energy => mu.atomic_energy(),
        AverageKind::Character => mu.point_mass(&mu.model().identity()),
    }
}

/// `run_series` with the oracle target attached.
pub fn run_series_with_target<G: CompactGroup>(
    kind: &AverageKind<G::Element>,
    mu: &MeasureSpec<G>,
    schedule: &FolnerSchedule,
) -> Result<AverageSeries> {
    let mut s = run_series(kind, mu, schedule)?;
    s.target = Some(oracle_target(kind, mu)?);
    Ok(s)
}

/// Outcome of [`continuity_test`].
#[derive(Clone, Debug, PartialEq)]
pub enum ContinuityVerdict {
    Continuous,
    /// The energy average settled at `energy` ≈ Σ_x μ{x}².
    Atomic {
        energy: f64,
    },
    Inconclusive,
}

/// Looks at the last `tail` energy averages: continuous if all are below
/// `tol` and the tail is nonincreasing up to 2·tol; atomic (estimate = last
/// value) if the tail varies by at most `tol`; otherwise inconclusive.
pub fn continuity_test<G: CompactGroup>(
    mu: &MeasureSpec<G>,
    schedule: &FolnerSchedule,
    tol: f64,
    tail: usize,
) -> Result<ContinuityVerdict> {
    if tail < 2 {
        return Err(invalid("continuity test needs tail >= 2"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("continuity test needs tol > 0"));
    }
    if schedule.len() < tail {
        return Err(invalid(format!(
            "schedule has {} steps, shorter than tail {tail}",
            schedule.len()
        )));
    }
    let series = run_series(&AverageKind::Energy, mu, schedule)?;
    let vals: Vec<f64> = series.values[series.len() - tail..]
        .iter()
        .map(|v| v.re)
        .collect();
    Ok(classify_tail(&vals, tol))
}

fn classify_tail(vals: &[f64], tol: f64) -> ContinuityVerdict {
    let small = vals.iter().all(|v| *v < tol);
    let nonincreasing = vals.windows(2).all(|w| w[1] <= w[0] + 2.0 * tol);
    if small && nonincreasing {
        return ContinuityVerdict::Continuous;
    }
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= tol {
        ContinuityVerdict::Atomic {
            energy: *vals.last().expect("tail nonempty"),
        }
    } else {
        ContinuityVerdict::Inconclusive
    }
}
