//! Small dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::Add;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Frobenius inner product `tr(a b^†) = Σ a_ij conj(b_ij)`.
pub fn trace_against(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn frobenius_sq(a: &CMatrix) -> f64 {
    a.iter().fold(0.0, |acc, x| acc + x.norm_sqr())
}

pub fn frobenius(a: &CMatrix) -> f64 {
    frobenius_sq(a).sqrt()
}

/// Largest singular value.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `‖a a^† − I‖_max`.
pub fn unitarity_defect(a: &CMatrix) -> f64 {
    let prod = a * a.adjoint();
    max_abs_diff(&prod, &identity(a.nrows()))
}

/// Integer power of a unitary matrix; negative exponents use the adjoint.
pub fn unitary_pow(u: &CMatrix, exp: i64) -> CMatrix {
    let mut base = if exp < 0 { u.adjoint() } else { u.clone() };
    let mut e = exp.unsigned_abs();
    let mut acc = identity(u.nrows());
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Pairwise (cascade) summation in slice order. The split points depend only
/// on the length, so the result is reproducible for a fixed ordering.
pub fn pairwise_sum<T>(items: &[T]) -> Option<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    const LEAF: usize = 8;
    match items.len() {
        0 => None,
        n if n <= LEAF => {
            let mut acc = items[0].clone();
            for x in &items[1..] {
                acc = &acc + x;
            }
            Some(acc)
        }
        n => {
            let (lo, hi) = items.split_at(n / 2);
            let a = pairwise_sum(lo)?;
            let b = pairwise_sum(hi)?;
            Some(&a + &b)
        }
    }
}

/// Pairwise sum of matrices referenced by `items`.
pub fn pairwise_sum_refs(items: &[&CMatrix], rows: usize, cols: usize) -> CMatrix {
    const LEAF: usize = 8;
    if items.len() <= LEAF {
        let mut acc = CMatrix::zeros(rows, cols);
        for m in items {
            acc += *m;
        }
        return acc;
    }
    let (lo, hi) = items.split_at(items.len() / 2);
    pairwise_sum_refs(lo, rows, cols) + pairwise_sum_refs(hi, rows, cols)
}

/// Pairwise sum of complex scalars.
pub fn pairwise_sum_c(items: &[C64]) -> C64 {
    const LEAF: usize = 8;
    if items.len() <= LEAF {
        return items.iter().sum();
    }
    let (lo, hi) = items.split_at(items.len() / 2);
    pairwise_sum_c(lo) + pairwise_sum_c(hi)
}

/// Orthonormal basis (as columns) of the subspace `{x : a x ≈ 0}`, using
/// singular values below `threshold`.
pub fn null_space(a: &CMatrix, threshold: f64) -> CMatrix {
    let cols = a.ncols();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    // Pad with zero rows so the SVD returns a full right basis.
    let padded = if a.nrows() < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= threshold)
        .map(|(i, _)| i)
        .collect();
    let mut basis = CMatrix::zeros(cols, keep.len());
    for (out, &row) in keep.iter().enumerate() {
        for j in 0..cols {
            basis[(j, out)] = v_t[(row, j)].conj();
        }
    }
    basis
}

/// Parses `[[ [re, im], ... ], ...]` style nested arrays.
pub fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> Option<CMatrix> {
    let n = rows.len();
    let m = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != m) {
        return None;
    }
    Some(CMatrix::from_fn(n, m, |i, j| {
        let [re, im] = rows[i][j];
        c(re, im)
    }))
}

pub fn matrix_to_pairs(a: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..a.nrows())
        .map(|i| {
            (0..a.ncols())
                .map(|j| [a[(i, j)].re, a[(i, j)].im])
                .collect()
        })
        .collect()
}
