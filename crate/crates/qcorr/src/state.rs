//! Bipartite density matrices: validated construction, tensor products,
//! partial traces, entropy, and the canonical state families used as test
//! oracles.
//!
//! Basis ordering is A-major everywhere: the product basis vector
//! |i⟩_A ⊗ |j⟩_B sits at index `i * dim_b + j`. Single-system states are
//! represented with `dim_b = 1`.

use crate::error::{Error, Result};
use crate::linalg::{
    self, eigh_unchecked, hermiticity_residual, identity, kron, re, CMatrix, HERMITICITY_EPS,
};
use crate::rng::{ginibre, SplitRng};

/// Which marginal a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Trace may deviate from 1 by at most this much.
pub const TRACE_EPS: f64 = 1e-10;

/// Eigenvalues in [-PSD_EPS, 0) are treated as numerical noise and clamped
/// to zero; anything below -PSD_EPS fails validation.
pub const PSD_EPS: f64 = 1e-10;

/// A Hermitian, positive-semidefinite, unit-trace matrix with a declared
/// bipartite split. The three physics invariants are enforced on every
/// construction path.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: CMatrix,
}

/// Eigendecomposition of a density matrix: eigenvalues descending, clamped
/// to [0, 1], with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl DensityMatrix {
    pub fn new(dim_a: usize, dim_b: usize, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let expected = dim_a * dim_b;
        if dim_a == 0 || dim_b == 0 || matrix.nrows() != expected {
            return Err(Error::SizeMismatch {
                size: matrix.nrows(),
                expected,
                dim_a,
                dim_b,
            });
        }
        let residual = hermiticity_residual(&matrix);
        if residual > HERMITICITY_EPS {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_EPS || trace.im.abs() > TRACE_EPS {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let (values, _) = eigh_unchecked(&matrix);
        if let Some(&min) = values.last() {
            if min < -PSD_EPS {
                return Err(Error::NotPositiveSemidefinite {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(Self {
            dim_a,
            dim_b,
            matrix,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total Hilbert-space dimension `dim_a * dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Reinterpret the same matrix under a different bipartite split, e.g.
    /// to treat an (A,B) pair of a tripartite state as one subsystem.
    pub fn with_split(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(dim_a, dim_b, self.matrix.clone())
    }

    pub fn spectrum(&self) -> Spectrum {
        let (values, vectors) = eigh_unchecked(&self.matrix);
        Spectrum {
            eigenvalues: values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect(),
            eigenvectors: vectors,
        }
    }

    /// Reduced state of one subsystem. The result keeps the reduced factor
    /// as its A side with a trivial B side.
    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix {
        let dims = [self.dim_a, self.dim_b];
        let (matrix, kept) = match keep {
            Subsystem::A => (linalg::trace_out(&self.matrix, &dims, 1), self.dim_a),
            Subsystem::B => (linalg::trace_out(&self.matrix, &dims, 0), self.dim_b),
        };
        DensityMatrix::new(kept, 1, linalg::hermitize(&matrix))
            .expect("partial trace of a valid state is a valid state")
    }

    /// Von Neumann entropy in bits, computed from the clamped spectrum with
    /// the 0 log 0 = 0 convention. Always within [0, log2 dim].
    pub fn von_neumann_entropy(&self) -> f64 {
        linalg::entropy_bits(&self.matrix)
    }
}

/// Kronecker product of two square operators in A-major ordering: entry
/// ((i,j),(k,l)) of the result is a[(i,k)] * b[(j,l)].
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    kron(a, b)
}

/// Product state rho_a ⊗ rho_b with the bipartite split (dim of a, dim of b).
pub fn make_product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new(a.dim(), b.dim(), kron(a.matrix(), b.matrix()))
        .expect("tensor product of valid states is a valid state")
}

/// Maximally entangled two-qubit state (|00⟩ + |11⟩)/√2 as a density matrix.
pub fn make_bell() -> DensityMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for &i in &[0usize, 3] {
        for &j in &[0usize, 3] {
            m[(i, j)] = re(0.5);
        }
    }
    DensityMatrix::new(2, 2, m).expect("Bell state is valid")
}

/// z · |Φ⁺⟩⟨Φ⁺| + (1 − z) · I/4 for z in [0, 1].
pub fn make_werner(z: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::ParameterOutOfRange { value: z });
    }
    let m = make_bell().matrix() * re(z) + identity(4) * re((1.0 - z) / 4.0);
    DensityMatrix::new(2, 2, m)
}

/// f · |Φ⁺⟩⟨Φ⁺| + (1 − f) · (I − |Φ⁺⟩⟨Φ⁺|)/3 for f in [0, 1].
pub fn make_isotropic(f: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::ParameterOutOfRange { value: f });
    }
    let bell = make_bell();
    let rest = (identity(4) - bell.matrix()) * re((1.0 - f) / 3.0);
    DensityMatrix::new(2, 2, bell.matrix() * re(f) + rest)
}

/// t · |Φ⁺⟩⟨Φ⁺| + (1 − t) · |Φ⁻⟩⟨Φ⁻| for t in [0, 1], where
/// |Φ⁻⟩ = (|00⟩ − |11⟩)/√2.
pub fn make_bell_diagonal(t: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange { value: t });
    }
    let mut minus = CMatrix::zeros(4, 4);
    minus[(0, 0)] = re(0.5);
    minus[(3, 3)] = re(0.5);
    minus[(0, 3)] = re(-0.5);
    minus[(3, 0)] = re(-0.5);
    let m = make_bell().matrix() * re(t) + minus * re(1.0 - t);
    DensityMatrix::new(2, 2, m)
}

fn check_probabilities(p: &[f64]) -> Result<()> {
    let sum: f64 = p.iter().sum();
    if p.iter().any(|&x| x < 0.0) || (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidProbabilities { sum });
    }
    Ok(())
}

/// Σ_i p_i U|i⟩⟨i|U† ⊗ states_i: a classical register on A (in the basis
/// given by the unitary's columns) correlated with arbitrary B-side states.
pub fn make_classical_quantum(
    p: &[f64],
    basis: &CMatrix,
    states: &[DensityMatrix],
) -> Result<DensityMatrix> {
    check_probabilities(p)?;
    let dim_a = p.len();
    if basis.nrows() != dim_a || basis.ncols() != dim_a {
        return Err(Error::DimensionMismatch {
            left: basis.nrows(),
            right: dim_a,
        });
    }
    let residual = linalg::unitarity_residual(basis);
    if residual > HERMITICITY_EPS {
        return Err(Error::NotUnitary { residual });
    }
    if states.len() != dim_a {
        return Err(Error::DimensionMismatch {
            left: states.len(),
            right: dim_a,
        });
    }
    let dim_b = states[0].dim();
    let mut m = CMatrix::zeros(dim_a * dim_b, dim_a * dim_b);
    for (i, state) in states.iter().enumerate() {
        if state.dim() != dim_b {
            return Err(Error::DimensionMismatch {
                left: state.dim(),
                right: dim_b,
            });
        }
        let col = basis.column(i);
        let projector = CMatrix::from_fn(dim_a, dim_a, |r, c| col[r] * col[c].conj());
        m += kron(&projector, state.matrix()) * re(p[i]);
    }
    DensityMatrix::new(dim_a, dim_b, linalg::hermitize(&m))
}

/// Σ_i p_i ρ_A^i ⊗ ρ_B^i: a separable (but generally correlated) state.
pub fn make_separable(p: &[f64], pairs: &[(DensityMatrix, DensityMatrix)]) -> Result<DensityMatrix> {
    check_probabilities(p)?;
    if p.len() != pairs.len() || pairs.is_empty() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: pairs.len(),
        });
    }
    let dim_a = pairs[0].0.dim();
    let dim_b = pairs[0].1.dim();
    let mut m = CMatrix::zeros(dim_a * dim_b, dim_a * dim_b);
    for (weight, (a, b)) in p.iter().zip(pairs) {
        if a.dim() != dim_a || b.dim() != dim_b {
            return Err(Error::DimensionMismatch {
                left: a.dim() * b.dim(),
                right: dim_a * dim_b,
            });
        }
        m += kron(a.matrix(), b.matrix()) * re(*weight);
    }
    DensityMatrix::new(dim_a, dim_b, linalg::hermitize(&m))
}

/// Random density matrix of the given rank via the Ginibre construction
/// G G† / Tr[G G†]. Bit-reproducible for a fixed seed.
pub fn random_density(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let dim = dim_a * dim_b;
    if rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let mut rng = SplitRng::new(seed);
    let g = ginibre(dim, rank, &mut rng);
    let gg = &g * g.adjoint();
    let m = &gg * re(1.0 / gg.trace().re);
    DensityMatrix::new(dim_a, dim_b, linalg::hermitize(&m))
}
