#![allow(dead_code)]

use std::collections::BTreeMap;

use ergodual::groups::{CompactGroup, FiniteModel, Quaternion, Su2, Torus};
use ergodual::linalg::{c, CMatrix, C64};
use ergodual::measures::{Atom, MeasureSpec};
use ergodual::{FusionRing, IrrepLabel};
use nalgebra::DVector;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| random_complex(rng))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix with
/// the diagonal phases of R removed.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let qr = random_matrix(rng, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DVector::from_iterator(
        n,
        (0..n).map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                c(1.0, 0.0)
            }
        }),
    );
    q * CMatrix::from_diagonal(&phases)
}

/// Random measure with `atoms` random atoms and a random (not necessarily
/// positive) density on `labels`; the trivial coefficient is real positive.
pub fn random_measure<G: CompactGroup, R: Rng>(
    model: &G,
    rng: &mut R,
    atoms: usize,
    labels: &[IrrepLabel],
) -> MeasureSpec<G> {
    let ring = model.ring();
    let atom_list: Vec<Atom<G::Element>> = if model.finite_elements().is_some() {
        let mut all = model.finite_elements().unwrap();
        // Distinct elements: shuffle and take a prefix.
        for i in (1..all.len()).rev() {
            let j = rng.random_range(0..=i);
            all.swap(i, j);
        }
        all.into_iter()
            .take(atoms)
            .map(|element| Atom {
                element,
                weight: rng.random_range(0.05..1.0),
            })
            .collect()
    } else {
        (0..atoms)
            .map(|_| Atom {
                element: model.sample_haar(rng),
                weight: rng.random_range(0.05..1.0),
            })
            .collect()
    };
    let mut density = BTreeMap::new();
    for l in labels {
        let d = ring.dim(l).unwrap() as usize;
        let m = if *l == ring.trivial() {
            CMatrix::from_element(1, 1, c(rng.random_range(0.1..1.0), 0.0))
        } else {
            random_matrix(rng, d) * c(0.2, 0.0)
        };
        density.insert(l.clone(), m);
    }
    if atom_list.is_empty() && !density.contains_key(&ring.trivial()) {
        density.insert(ring.trivial(), CMatrix::from_element(1, 1, c(0.5, 0.0)));
    }
    MeasureSpec::new(model.clone(), atom_list, density).unwrap()
}

pub fn su2_element<R: Rng>(rng: &mut R) -> Quaternion {
    Su2::new().sample_haar(rng)
}

pub fn finite_models() -> Vec<FiniteModel> {
    ergodual::groups::FINITE_GROUP_NAMES
        .iter()
        .map(|n| FiniteModel::by_name(n).unwrap())
        .collect()
}

pub fn circle() -> Torus {
    Torus::circle()
}

pub fn interval(n: i64) -> ergodual::LabelSet {
    (-n..=n).map(IrrepLabel::scalar).collect()
}

pub fn spins(m: i64) -> ergodual::LabelSet {
    (0..=m).map(IrrepLabel::scalar).collect()
}
