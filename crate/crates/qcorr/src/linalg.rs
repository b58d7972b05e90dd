//! Dense complex linear algebra shared by the state, distance, and
//! measurement modules. All matrices are `nalgebra::DMatrix<Complex<f64>>`;
//! eigendecompositions go through `SymmetricEigen` after an explicit
//! Hermiticity check.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Hermiticity is enforced to this absolute entrywise tolerance.
pub const HERMITICITY_EPS: f64 = 1e-10;

/// Eigenvalues at or below this threshold count as outside the support when
/// inverting or taking logarithms.
pub const SUPPORT_EPS: f64 = 1e-10;

pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn re(x: f64) -> C64 {
    Complex::new(x, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Kronecker product with the left factor owning the slow index, so entry
/// `(i*cols_b + k, j*cols_b + l)` is `a[(i, j)] * b[(k, l)]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn trace_re(m: &CMatrix) -> f64 {
    m.trace().re
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    let mut worst = 0.0_f64;
    for (x, y) in a.iter().zip(b.iter()) {
        worst = worst.max((x - y).norm());
    }
    worst
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |w, x| w.max(x.norm()))
}

/// Largest entrywise deviation from `M = M^dag`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Symmetrize to the nearest Hermitian matrix, `(M + M^dag) / 2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    let mut out = m.clone();
    let n = m.nrows();
    for i in 0..n {
        for j in i..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * re(0.5);
            out[(i, j)] = avg;
            out[(j, i)] = avg.conj();
        }
    }
    out
}

pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.ncols();
    max_abs_diff(&(u.adjoint() * u), &identity(n))
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order with matching eigenvector columns.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let residual = hermiticity_residual(m);
    if residual > HERMITICITY_EPS {
        return Err(Error::NotHermitian { residual });
    }
    Ok(eigh_unchecked(m))
}

/// Same as [`eigh`] but trusts the caller on Hermiticity. The input is still
/// symmetrized first so roundoff in products cannot leak into eigenvectors.
pub(crate) fn eigh_unchecked(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = hermitize(m).symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Rebuild `V f(diag) V^dag` from an eigendecomposition.
fn from_eigh(values: &[f64], vectors: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let n = values.len();
    let mut scaled = vectors.clone();
    for (col, &v) in values.iter().enumerate() {
        let fv = re(f(v));
        for row in 0..n {
            scaled[(row, col)] *= fv;
        }
    }
    &scaled * vectors.adjoint()
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in `[-SUPPORT_EPS, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn matrix_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = eigh(m)?;
    if let Some(&min) = values.last() {
        if min < -SUPPORT_EPS {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
    }
    Ok(from_eigh(&values, &vectors, sqrt_clamped))
}

/// Floor below which eigenvalues of nominally PSD operators count as exact
/// zeros when taking square roots. Without it, machine-epsilon dust on the
/// null space of a rank-deficient operator surfaces as its own square root
/// (√1e-16 ≈ 1e-8) and breaks unitary covariance of downstream traces at
/// the 1e-9 level.
pub(crate) const SQRT_ZERO_EPS: f64 = 1e-12;

pub(crate) fn sqrt_clamped(v: f64) -> f64 {
    if v <= SQRT_ZERO_EPS {
        0.0
    } else {
        v.sqrt()
    }
}

/// Base-2 matrix logarithm restricted to the support: eigenvalues at or below
/// `SUPPORT_EPS` contribute nothing, so for full-rank inputs this is the
/// ordinary logarithm.
pub fn matrix_log2(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = eigh(m)?;
    Ok(from_eigh(&values, &vectors, |v| {
        if v > SUPPORT_EPS {
            v.log2()
        } else {
            0.0
        }
    }))
}

/// Von Neumann entropy in bits of a trusted density matrix, computed from the
/// eigenvalue distribution with clamping to [0, 1].
pub(crate) fn entropy_bits(m: &CMatrix) -> f64 {
    let (values, _) = eigh_unchecked(m);
    let s: f64 = values
        .iter()
        .map(|&v| {
            let p = v.clamp(0.0, 1.0);
            if p > 0.0 {
                -p * p.log2()
            } else {
                0.0
            }
        })
        .sum();
    s.clamp(0.0, (m.nrows() as f64).log2())
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        out[k] = out[k + 1] * dims[k + 1];
    }
    out
}

/// Reorder tensor factors: output slot `s` holds input factor `perm[s]`, so
/// `permute_subsystems(kron(&kron(&a, &b), &c), &[da, db, dc], &[2, 0, 1])`
/// equals `kron(&kron(&c, &a), &b)`.
pub fn permute_subsystems(m: &CMatrix, dims: &[usize], perm: &[usize]) -> CMatrix {
    let n: usize = dims.iter().product();
    debug_assert_eq!(m.nrows(), n);
    debug_assert_eq!(perm.len(), dims.len());
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let in_strides = strides(dims);
    let out_strides = strides(&out_dims);
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut src_i = 0usize;
            let mut src_j = 0usize;
            for s in 0..perm.len() {
                let di = (i / out_strides[s]) % out_dims[s];
                let dj = (j / out_strides[s]) % out_dims[s];
                src_i += di * in_strides[perm[s]];
                src_j += dj * in_strides[perm[s]];
            }
            out[(i, j)] = m[(src_i, src_j)];
        }
    }
    out
}

/// Trace out factor `which` of a multipartite operator, keeping the remaining
/// factors in their original order.
pub fn trace_out(m: &CMatrix, dims: &[usize], which: usize) -> CMatrix {
    let n: usize = dims.iter().product();
    debug_assert_eq!(m.nrows(), n);
    debug_assert!(which < dims.len());
    let in_strides = strides(dims);
    let keep: Vec<usize> = (0..dims.len()).filter(|&k| k != which).collect();
    let out_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_strides = strides(&out_dims);
    let out_n: usize = out_dims.iter().product();
    let mut out = CMatrix::zeros(out_n, out_n);
    for i in 0..out_n {
        for j in 0..out_n {
            let mut base_i = 0usize;
            let mut base_j = 0usize;
            for (s, &k) in keep.iter().enumerate() {
                base_i += ((i / out_strides[s]) % out_dims[s]) * in_strides[k];
                base_j += ((j / out_strides[s]) % out_dims[s]) * in_strides[k];
            }
            let mut acc = c64(0.0, 0.0);
            for t in 0..dims[which] {
                acc += m[(base_i + t * in_strides[which], base_j + t * in_strides[which])];
            }
            out[(i, j)] = acc;
        }
    }
    out
}
