//! Finite positive Borel measures represented as finitely many atoms plus a
//! finitely supported Peter–Weyl density, with exact Fourier coefficient
//! matrices μ̂(α)_ij = μ(u^α_ij).

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{invalid, Error, Result};
use crate::fusion::{FusionRing, IrrepLabel, LabelSet};
use crate::groups::{CompactGroup, ELEMENT_TOL, MERGE_TOL};
use crate::linalg::{trace_against, CMatrix, C64};
use crate::par;

/// A point mass λ δ_x.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom<E> {
    pub element: E,
    pub weight: f64,
}

/// μ = Σ λ_i δ_{x_i} + f dh with f(g) = Σ_α d_α tr(D(α) U^α(g)^†).
///
/// With this normalization the density contributes exactly D(α) to μ̂(α).
#[derive(Clone, Debug)]
pub struct MeasureSpec<G: CompactGroup> {
    model: G,
    atoms: Vec<Atom<G::Element>>,
    density: BTreeMap<IrrepLabel, CMatrix>,
}

/// Allowed imaginary residue of a density value or of the total mass.
pub const IMAG_TOL: f64 = 1e-8;

impl<G: CompactGroup> MeasureSpec<G> {
    /// Validates weights, distinctness of atoms, density shapes and mass.
    pub fn new(
        model: G,
        atoms: Vec<Atom<G::Element>>,
        density: BTreeMap<IrrepLabel, CMatrix>,
    ) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if !(a.weight.is_finite() && a.weight > 0.0) {
                return Err(invalid(format!("atoms[{i}].weight must be finite and > 0")));
            }
            for (j, b) in atoms[..i].iter().enumerate() {
                if model.distance(&a.element, &b.element) <= ELEMENT_TOL {
                    return Err(invalid(format!("atoms[{j}] and atoms[{i}] coincide")));
                }
            }
        }
        let ring = model.ring();
        for (label, m) in &density {
            let d = ring.dim(label)? as usize;
            if m.nrows() != d || m.ncols() != d {
                return Err(invalid(format!(
                    "density matrix for irrep {} is {}x{}, expected {d}x{d}",
                    ring.format_label(label),
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let spec = MeasureSpec {
            model,
            atoms,
            density,
        };
        let mass = spec.mass_complex();
        if mass.im.abs() > IMAG_TOL || mass.re.is_nan() || mass.re <= 0.0 {
            return Err(invalid(format!(
                "total mass must be real and positive, got {} + {}i",
                mass.re, mass.im
            )));
        }
        Ok(spec)
    }

    pub fn dirac(model: G, x: G::Element) -> Self {
        Self::weighted_dirac(model, x, 1.0).expect("unit weight")
    }

    pub fn weighted_dirac(model: G, x: G::Element, weight: f64) -> Result<Self> {
        Self::new(model, vec![Atom { element: x, weight }], BTreeMap::new())
    }

    /// Normalized Haar measure: density D(trivial) = [1].
    pub fn haar(model: G) -> Self {
        let trivial = model.ring().trivial();
        let density = BTreeMap::from([(trivial, CMatrix::from_element(1, 1, C64::new(1.0, 0.0)))]);
        Self::new(model, Vec::new(), density).expect("Haar is a probability measure")
    }

    /// Purely atomic measure; coinciding elements are merged.
    pub fn atomic(model: G, atoms: Vec<(G::Element, f64)>) -> Result<Self> {
        let mut merged: Vec<Atom<G::Element>> = Vec::new();
        for (element, weight) in atoms {
            push_merged(&model, &mut merged, element, weight);
        }
        Self::new(model, merged, BTreeMap::new())
    }

    pub fn model(&self) -> &G {
        &self.model
    }

    /// The stored atoms. Ground truth for oracles; the averaging code only
    /// sees Fourier coefficients.
    pub fn atom_list(&self) -> &[Atom<G::Element>] {
        &self.atoms
    }

    pub fn density(&self) -> &BTreeMap<IrrepLabel, CMatrix> {
        &self.density
    }

    fn mass_complex(&self) -> C64 {
        let atoms = self.atoms.iter().fold(0.0, |acc, a| acc + a.weight);
        let trivial = self.model.ring().trivial();
        let dens = self
            .density
            .get(&trivial)
            .map(|m| m[(0, 0)])
            .unwrap_or_default();
        C64::new(atoms, 0.0) + dens
    }

    /// μ(G) = μ̂(trivial).
    pub fn total_mass(&self) -> f64 {
        self.mass_complex().re
    }

    /// μ̂(α) = Σ λ_i U^α(x_i) + D(α).
    pub fn fourier_matrix(&self, label: &IrrepLabel) -> Result<CMatrix> {
        let mut m = self.atomic_coefficient(label)?;
        if let Some(d) = self.density.get(label) {
            m += d;
        }
        Ok(m)
    }

    fn atomic_coefficient(&self, label: &IrrepLabel) -> Result<CMatrix> {
        let d = self.model.ring().dim(label)? as usize;
        let mut m = CMatrix::zeros(d, d);
        for a in &self.atoms {
            m += self.model.irrep_matrix(label, &a.element)? * C64::new(a.weight, 0.0);
        }
        Ok(m)
    }

    /// Fourier matrices for many labels, evaluated in parallel.
    pub fn fourier_matrices(&self, labels: &[IrrepLabel]) -> Result<Vec<CMatrix>> {
        par::try_map(labels, |l| self.fourier_matrix(l))
    }

    /// μ ∗ ν.
    ///
    /// Atoms multiply pairwise. Convolution is diagonal on Fourier
    /// coefficients, so the non-atomic remainder μ̂ν̂ − (atomic part) vanishes
    /// off the union of the two density supports and is stored exactly there.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.model != other.model {
            return Err(invalid("convolution of measures on different groups"));
        }
        let model = &self.model;
        let mut atoms: Vec<Atom<G::Element>> = Vec::new();
        for a in &self.atoms {
            for b in &other.atoms {
                let xy = model.multiply(&a.element, &b.element);
                push_merged(model, &mut atoms, xy, a.weight * b.weight);
            }
        }
        let support: Vec<IrrepLabel> = self
            .density
            .keys()
            .chain(other.density.keys())
            .cloned()
            .collect::<LabelSet>()
            .into_iter()
            .collect();
        let blocks = par::try_map(&support, |label| {
            let am = self.atomic_coefficient(label)?;
            let an = other.atomic_coefficient(label)?;
            let zero = CMatrix::zeros(am.nrows(), am.ncols());
            let dm = self.density.get(label).unwrap_or(&zero);
            let dn = other.density.get(label).unwrap_or(&zero);
            Ok(&am * dn + dm * &an + dm * dn)
        })?;
        let density = support.into_iter().zip(blocks).collect();
        Ok(MeasureSpec {
            model: model.clone(),
            atoms,
            density,
        })
    }

    /// μ̄(E) = μ(E⁻¹); its coefficient matrices are the adjoints of μ's.
    pub fn conjugate_measure(&self) -> Self {
        MeasureSpec {
            model: self.model.clone(),
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    element: self.model.inverse(&a.element),
                    weight: a.weight,
                })
                .collect(),
            density: self
                .density
                .iter()
                .map(|(l, m)| (l.clone(), m.adjoint()))
                .collect(),
        }
    }

    /// μ + ν, merging coinciding atoms.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.model != other.model {
            return Err(invalid("sum of measures on different groups"));
        }
        let mut atoms = self.atoms.clone();
        for a in &other.atoms {
            push_merged(&self.model, &mut atoms, a.element.clone(), a.weight);
        }
        let mut density = self.density.clone();
        for (l, m) in &other.density {
            density
                .entry(l.clone())
                .and_modify(|d| *d += m)
                .or_insert_with(|| m.clone());
        }
        Ok(MeasureSpec {
            model: self.model.clone(),
            atoms,
            density,
        })
    }

    /// c·μ for c > 0.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(invalid("scale factor must be finite and positive"));
        }
        Ok(MeasureSpec {
            model: self.model.clone(),
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    element: a.element.clone(),
                    weight: a.weight * factor,
                })
                .collect(),
            density: self
                .density
                .iter()
                .map(|(l, m)| (l.clone(), m * C64::new(factor, 0.0)))
                .collect(),
        })
    }

    /// f(g) = Σ_α d_α tr(D(α) U^α(g)^†), the density with respect to Haar.
    pub fn density_eval(&self, g: &G::Element) -> Result<f64> {
        let ring = self.model.ring();
        let mut total = C64::new(0.0, 0.0);
        for (label, d) in &self.density {
            let u = self.model.irrep_matrix(label, g)?;
            total += trace_against(d, &u) * ring.dim(label)? as f64;
        }
        if total.im.abs() > IMAG_TOL {
            return Err(Error::Consistency(format!(
                "density has imaginary value {} at {}",
                total.im,
                self.model.format_element(g)
            )));
        }
        Ok(total.re)
    }

    /// Minimum of the density over `samples` Haar points drawn from `seed`.
    /// A value below −1e−8 is logged as a warning; the measure stays usable.
    pub fn positivity_check(&self, samples: usize, seed: u64) -> Result<f64> {
        if self.density.is_empty() {
            return Ok(0.0);
        }
        let mut rng = StdRng::seed_from_u64(seed);
        let mut min = f64::INFINITY;
        for _ in 0..samples {
            let g = self.model.sample_haar(&mut rng);
            min = min.min(self.density_eval(&g)?);
        }
        if min < -1e-8 {
            log::warn!("density takes negative value {min:.3e} at a sampled point");
        }
        Ok(min)
    }

    /// μ{y}, read from the stored atoms and, on finite groups, from the
    /// density times the Haar mass of a point.
    pub fn point_mass(&self, y: &G::Element) -> Result<f64> {
        let atom: f64 = self
            .atoms
            .iter()
            .filter(|a| self.model.distance(&a.element, y) <= MERGE_TOL)
            .fold(0.0, |acc, a| acc + a.weight);
        match self.model.finite_elements() {
            Some(all) if !self.density.is_empty() => {
                Ok(atom + self.density_eval(y)? / all.len() as f64)
            }
            _ => Ok(atom),
        }
    }

    /// Σ_x μ{x}².
    pub fn atomic_energy(&self) -> Result<f64> {
        match self.model.finite_elements() {
            // Folds start at +0.0; `f64::sum` of nothing is −0.0.
            Some(all) => all
                .iter()
                .try_fold(0.0, |acc, x| Ok(acc + self.point_mass(x)?.powi(2))),
            None => Ok(self
                .atoms
                .iter()
                .fold(0.0, |acc, a| acc + a.weight * a.weight)),
        }
    }
}

fn push_merged<G: CompactGroup>(
    model: &G,
    atoms: &mut Vec<Atom<G::Element>>,
    element: G::Element,
    weight: f64,
) {
    match atoms
        .iter_mut()
        .find(|a| model.distance(&a.element, &element) < MERGE_TOL)
    {
        Some(a) => a.weight += weight,
        None => atoms.push(Atom { element, weight }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteModel, Quaternion, Su2, Torus};
    use crate::linalg::{c, identity, max_abs_diff};

    #[test]
    fn dirac_coefficients_are_irrep_matrices() {
        let su2 = Su2::new();
        let x = Quaternion::rotation(0.9, [1.0, 2.0, 0.5]).unwrap();
        let mu = MeasureSpec::dirac(su2, x);
        for l in su2.enumerate_dual(6) {
            let want = su2.irrep_matrix(&l, &x).unwrap();
            assert!(max_abs_diff(&mu.fourier_matrix(&l).unwrap(), &want) < 1e-15);
        }
        let e = MeasureSpec::dirac(su2, su2.identity());
        for l in su2.enumerate_dual(6) {
            let d = su2.ring().dim(&l).unwrap() as usize;
            assert!(max_abs_diff(&e.fourier_matrix(&l).unwrap(), &identity(d)) < 1e-15);
        }
    }

    #[test]
    fn haar_coefficients_vanish_off_trivial() {
        let s3 = FiniteModel::by_name("S3").unwrap();
        let h = MeasureSpec::haar(s3.clone());
        for l in s3.enumerate_dual(3).into_iter().skip(1) {
            assert_eq!(
                crate::linalg::frobenius(&h.fourier_matrix(&l).unwrap()),
                0.0
            );
        }
        assert_eq!(h.total_mass(), 1.0);
    }

    #[test]
    fn masses() {
        let t = Torus::circle();
        let x = t.from_angles(&[0.4]).unwrap();
        let half = MeasureSpec::weighted_dirac(t, x.clone(), 0.5)
            .unwrap()
            .plus(&MeasureSpec::haar(t).scaled(0.5).unwrap())
            .unwrap();
        assert!((half.total_mass() - 1.0).abs() < 1e-15);
        assert_eq!(
            MeasureSpec::weighted_dirac(t, x, 2.0).unwrap().total_mass(),
            2.0
        );
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let t = Torus::circle();
        let x = t.identity();
        assert!(MeasureSpec::weighted_dirac(t, x.clone(), 0.0).is_err());
        assert!(MeasureSpec::weighted_dirac(t, x.clone(), f64::NAN).is_err());
        let dup = vec![
            Atom {
                element: x.clone(),
                weight: 1.0,
            },
            Atom {
                element: x.clone(),
                weight: 1.0,
            },
        ];
        assert!(MeasureSpec::new(t, dup, BTreeMap::new()).is_err());
        // A density with zero trivial coefficient and no atoms has zero mass.
        let d = BTreeMap::from([(
            IrrepLabel::scalar(1),
            CMatrix::from_element(1, 1, c(0.5, 0.0)),
        )]);
        assert!(MeasureSpec::new(t, vec![], d).is_err());
        let wrong_shape = BTreeMap::from([(IrrepLabel::scalar(0), CMatrix::identity(2, 2))]);
        assert!(MeasureSpec::new(t, vec![], wrong_shape).is_err());
    }

    #[test]
    fn density_evaluation() {
        let t = Torus::circle();
        let h = MeasureSpec::haar(t);
        assert_eq!(
            h.density_eval(&t.from_angles(&[1.3]).unwrap()).unwrap(),
            1.0
        );
        let cos = BTreeMap::from([
            (
                IrrepLabel::scalar(0),
                CMatrix::from_element(1, 1, c(1.0, 0.0)),
            ),
            (
                IrrepLabel::scalar(1),
                CMatrix::from_element(1, 1, c(0.5, 0.0)),
            ),
            (
                IrrepLabel::scalar(-1),
                CMatrix::from_element(1, 1, c(0.5, 0.0)),
            ),
        ]);
        let mu = MeasureSpec::new(t, vec![], cos).unwrap();
        for theta in [0.0, 0.7, 2.0, 3.1] {
            let z = t.from_angles(&[theta]).unwrap();
            assert!((mu.density_eval(&z).unwrap() - (1.0 + theta.cos())).abs() < 1e-14);
        }
        assert!(mu.positivity_check(1000, 3).unwrap() >= -1e-12);
        let atoms_only = MeasureSpec::dirac(t, t.identity());
        assert_eq!(atoms_only.density_eval(&t.identity()).unwrap(), 0.0);
    }

    #[test]
    fn complex_density_is_a_consistency_error() {
        let t = Torus::circle();
        let d = BTreeMap::from([
            (
                IrrepLabel::scalar(0),
                CMatrix::from_element(1, 1, c(1.0, 0.0)),
            ),
            (
                IrrepLabel::scalar(1),
                CMatrix::from_element(1, 1, c(0.0, 0.5)),
            ),
        ]);
        let mu = MeasureSpec::new(t, vec![], d).unwrap();
        assert!(matches!(
            mu.density_eval(&t.identity()),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn dirac_convolution_multiplies_points() {
        let su2 = Su2::new();
        let x = Quaternion::rotation(0.4, [0.0, 1.0, 1.0]).unwrap();
        let y = Quaternion::rotation(1.9, [1.0, 0.0, -1.0]).unwrap();
        let conv = MeasureSpec::dirac(su2, x)
            .convolve(&MeasureSpec::dirac(su2, y))
            .unwrap();
        assert_eq!(conv.atom_list().len(), 1);
        assert!(su2.distance(&conv.atom_list()[0].element, &su2.multiply(&x, &y)) < 1e-15);
    }

    #[test]
    fn haar_absorbs_convolution() {
        let su2 = Su2::new();
        let x = Quaternion::rotation(2.2, [0.3, 0.1, 1.0]).unwrap();
        let mu = MeasureSpec::weighted_dirac(su2, x, 0.7)
            .unwrap()
            .plus(&MeasureSpec::haar(su2).scaled(0.4).unwrap())
            .unwrap();
        let conv = MeasureSpec::haar(su2).convolve(&mu).unwrap();
        for l in su2.enumerate_dual(6) {
            let m = conv.fourier_matrix(&l).unwrap();
            if l == su2.ring().trivial() {
                assert!((m[(0, 0)] - c(mu.total_mass(), 0.0)).norm() < 1e-14);
            } else {
                assert!(crate::linalg::frobenius(&m) < 1e-14);
            }
        }
    }

    #[test]
    fn conjugate_twice_is_identity_and_haar_is_symmetric() {
        let s3 = FiniteModel::by_name("S3").unwrap();
        let mu = MeasureSpec::weighted_dirac(s3.clone(), s3.element(3).unwrap(), 0.3)
            .unwrap()
            .plus(&MeasureSpec::haar(s3.clone()))
            .unwrap();
        let back = mu.conjugate_measure().conjugate_measure();
        for l in s3.enumerate_dual(3) {
            let a = mu.fourier_matrix(&l).unwrap();
            assert!(max_abs_diff(&a, &back.fourier_matrix(&l).unwrap()) < 1e-15);
            let conj = mu.conjugate_measure().fourier_matrix(&l).unwrap();
            assert!(max_abs_diff(&conj, &a.adjoint()) < 1e-15);
        }
        let h = MeasureSpec::haar(s3.clone());
        let hb = h.conjugate_measure();
        for l in s3.enumerate_dual(3) {
            assert_eq!(
                h.fourier_matrix(&l).unwrap(),
                hb.fourier_matrix(&l).unwrap()
            );
        }
        let x = s3.element(3).unwrap();
        let d = MeasureSpec::dirac(s3.clone(), x).conjugate_measure();
        assert_eq!(d.atom_list()[0].element, s3.inverse(&x));
    }

    #[test]
    fn convolution_model_mismatch() {
        let a = MeasureSpec::haar(FiniteModel::by_name("C3").unwrap());
        let b = MeasureSpec::haar(FiniteModel::by_name("C4").unwrap());
        assert!(a.convolve(&b).is_err());
    }

    #[test]
    fn finite_group_point_masses_include_haar() {
        let s3 = FiniteModel::by_name("S3").unwrap();
        let g = s3.element(1).unwrap();
        let mu = MeasureSpec::weighted_dirac(s3.clone(), g, 0.3)
            .unwrap()
            .plus(&MeasureSpec::haar(s3.clone()).scaled(0.7).unwrap())
            .unwrap();
        assert!((mu.point_mass(&g).unwrap() - (0.3 + 0.7 / 6.0)).abs() < 1e-15);
        let want = (0.3f64 + 0.7 / 6.0).powi(2) + 5.0 * (0.7f64 / 6.0).powi(2);
        assert!((mu.atomic_energy().unwrap() - want).abs() < 1e-15);
    }
}
