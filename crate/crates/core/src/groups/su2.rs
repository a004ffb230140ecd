use rand::Rng;
use rand_distr::StandardNormal;

use super::CompactGroup;
use crate::error::{invalid, Error, Result};
use crate::fusion::{FusionRing, IrrepLabel, Su2Ring};
use crate::linalg::{CMatrix, C64};

/// SU(2), elements stored as unit quaternions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Su2 {
    ring: Su2Ring,
}

/// The matrix [[a, b], [−conj(b), conj(a)]] with |a|² + |b|² = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub a: C64,
    pub b: C64,
}

impl Quaternion {
    /// Renormalizes onto the unit sphere.
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !r.is_finite() || r < 1e-300 {
            return Err(invalid("quaternion must be nonzero and finite"));
        }
        Ok(Quaternion { a: a / r, b: b / r })
    }

    /// exp(θ/2 · i n·σ)-style rotation: conjugate to diag(e^{iθ/2}, e^{−iθ/2}).
    /// `axis` need not be normalized.
    pub fn rotation(theta: f64, axis: [f64; 3]) -> Result<Self> {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n == 0.0 {
            return Err(invalid("rotation axis must be nonzero"));
        }
        let (s, c) = (theta / 2.0).sin_cos();
        let [x, y, z] = [axis[0] / n, axis[1] / n, axis[2] / n];
        // c·I + i s (x σx + y σy + z σz) = [[c + i s z, s y + i s x], [−s y + i s x, c − i s z]].
        Quaternion::new(C64::new(c, s * z), C64::new(s * y, s * x))
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[self.a, self.b, -self.b.conj(), self.a.conj()])
    }

    /// Rotation angle θ ∈ [0, 2π], from tr = 2 cos(θ/2).
    pub fn angle(&self) -> f64 {
        2.0 * self.a.re.clamp(-1.0, 1.0).acos()
    }
}

/// Spin-n/2 matrix of `g`, i.e. the n-th symmetric tensor power of the
/// defining representation on the orthonormal basis
/// f_l = sqrt(C(n,l)) e1^{n−l} e2^l.
///
/// Built one degree at a time: multiplying by the image of e1 (when l is in
/// the lower half) or e2 keeps every recursion coefficient at most √2.
pub fn su2_irrep(n: usize, g: &Quaternion) -> CMatrix {
    let (a, b) = (g.a, g.b);
    let (ab, bb) = (a.conj(), b.conj());
    let mut prev = CMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    for m in 1..=n {
        let mut cur = CMatrix::zeros(m + 1, m + 1);
        let at = |k: usize, l: usize| {
            if k < m {
                prev[(k, l)]
            } else {
                C64::new(0.0, 0.0)
            }
        };
        for l in 0..=m {
            for k in 0..=m {
                let sk = ((m - k) as f64).sqrt();
                let sk1 = (k as f64).sqrt();
                let lo = if k > 0 { Some(k - 1) } else { None };
                cur[(k, l)] = if m - l >= l {
                    // g(e1 · f) with f of degree m−1 in column l.
                    let mut v = a * sk * at(k, l);
                    if let Some(k1) = lo {
                        v -= bb * sk1 * prev[(k1, l)];
                    }
                    v / ((m - l) as f64).sqrt()
                } else {
                    // g(e2 · f) with f in column l−1.
                    let mut v = b * sk * at(k, l - 1);
                    if let Some(k1) = lo {
                        v += ab * sk1 * prev[(k1, l - 1)];
                    }
                    v / (l as f64).sqrt()
                };
            }
        }
        prev = cur;
    }
    prev
}

impl Su2 {
    pub fn new() -> Self {
        Su2 { ring: Su2Ring }
    }
}

impl CompactGroup for Su2 {
    type Element = Quaternion;
    type Ring = Su2Ring;

    fn ring(&self) -> &Su2Ring {
        &self.ring
    }

    fn identity(&self) -> Quaternion {
        Quaternion {
            a: C64::new(1.0, 0.0),
            b: C64::new(0.0, 0.0),
        }
    }

    fn multiply(&self, g: &Quaternion, h: &Quaternion) -> Quaternion {
        Quaternion {
            a: g.a * h.a - g.b * h.b.conj(),
            b: g.a * h.b + g.b * h.a.conj(),
        }
    }

    fn inverse(&self, g: &Quaternion) -> Quaternion {
        Quaternion {
            a: g.a.conj(),
            b: -g.b,
        }
    }

    fn distance(&self, g: &Quaternion, h: &Quaternion) -> f64 {
        (g.a - h.a).norm().max((g.b - h.b).norm())
    }

    fn irrep_matrix(&self, label: &IrrepLabel, g: &Quaternion) -> Result<CMatrix> {
        self.ring.check(label)?;
        Ok(su2_irrep(label.0[0] as usize, g))
    }

    fn sample_haar<R: Rng + ?Sized>(&self, rng: &mut R) -> Quaternion {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if let Ok(q) = Quaternion::new(C64::new(v[0], v[1]), C64::new(v[2], v[3])) {
                return q;
            }
        }
    }

    /// `q:<re(a)>,<im(a)>,<re(b)>,<im(b)>`, renormalized.
    fn parse_element(&self, literal: &str) -> Result<Quaternion> {
        let body = literal.trim().strip_prefix("q:").ok_or_else(|| {
            Error::Parse(format!(
                "SU2 element {literal:?}: expected q:<re a>,<im a>,<re b>,<im b>"
            ))
        })?;
        let v = body
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("SU2 element {literal:?}: {e}")))?;
        if v.len() != 4 {
            return Err(Error::Parse(format!(
                "SU2 element {literal:?}: expected four numbers"
            )));
        }
        Quaternion::new(C64::new(v[0], v[1]), C64::new(v[2], v[3]))
    }

    fn format_element(&self, g: &Quaternion) -> String {
        format!("q:{},{},{},{}", g.a.re, g.a.im, g.b.re, g.b.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, unitarity_defect};

    fn sample() -> Quaternion {
        Quaternion::new(C64::new(0.3, -0.5), C64::new(0.6, 0.2)).unwrap()
    }

    #[test]
    fn spin_half_is_defining_matrix() {
        let g = sample();
        assert!(max_abs_diff(&su2_irrep(1, &g), &g.matrix()) < 1e-15);
        assert_eq!(su2_irrep(0, &g)[(0, 0)], C64::new(1.0, 0.0));
    }

    #[test]
    fn identity_maps_to_identity() {
        let e = Su2::new().identity();
        for n in 0..12 {
            assert!(max_abs_diff(&su2_irrep(n, &e), &CMatrix::identity(n + 1, n + 1)) < 1e-14);
        }
    }

    #[test]
    fn spin_one_matches_explicit_symmetric_square() {
        // Sym² of [[a,b],[−b̄,ā]] on (e1², √2 e1e2, e2²).
        let g = sample();
        let (a, b) = (g.a, g.b);
        let s = 2f64.sqrt();
        let want = CMatrix::from_row_slice(
            3,
            3,
            &[
                a * a,
                s * a * b,
                b * b,
                -s * a * b.conj(),
                a * a.conj() - b * b.conj(),
                s * b * a.conj(),
                b.conj() * b.conj(),
                -s * a.conj() * b.conj(),
                a.conj() * a.conj(),
            ],
        );
        assert!(max_abs_diff(&su2_irrep(2, &g), &want) < 1e-14);
    }

    #[test]
    fn high_spin_stays_unitary() {
        let g = Quaternion::new(C64::new(0.5, 0.5), C64::new(0.5, -0.5)).unwrap();
        for n in [10, 30, 60, 100] {
            let u = su2_irrep(n, &g);
            assert!(
                unitarity_defect(&u) < 1e-10,
                "n={n}: {}",
                unitarity_defect(&u)
            );
        }
    }

    #[test]
    fn rotation_character() {
        let theta = 1.1;
        let g = Quaternion::rotation(theta, [0.2, -1.0, 0.4]).unwrap();
        assert!((g.angle() - theta).abs() < 1e-12);
        for n in 0..8i64 {
            let chi = su2_irrep(n as usize, &g).trace();
            let j = n as f64 / 2.0;
            let want: C64 = (0..=n)
                .map(|k| C64::from_polar(1.0, (j - k as f64) * theta))
                .sum();
            assert!((chi - want).norm() < 1e-12);
        }
    }

    #[test]
    fn parse_element_literal() {
        let s = Su2::new();
        let q = s.parse_element("q:2,0,0,0").unwrap();
        assert_eq!(q, s.identity());
        assert!(s.parse_element("q:1,0,0").is_err());
        assert!(s.parse_element("z:1,0").is_err());
    }
}
