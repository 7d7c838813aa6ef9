//! Bipartite structure: dimension bookkeeping, partial transposition on the
//! second subsystem, Hilbert-Schmidt overlap, and the validated operator
//! wrappers the rest of the crate passes around.

use serde::{Deserialize, Serialize};

use crate::cmatrix::{CMatrix, C64};
use crate::eig::eigvalsh;
use crate::error::{CoreError, Result};

/// Hermiticity tolerance for validated operators.
pub const TOL_HERM: f64 = 1e-10;
/// Unit-trace tolerance for density matrices.
pub const TOL_TRACE: f64 = 1e-10;
/// Positivity floor: lambda_min >= -TOL_PSD passes.
pub const TOL_PSD: f64 = 1e-9;
/// Tolerance on eigenvalue-based comparisons.
pub const TOL_EIG: f64 = 1e-10;

/// Subsystem dimensions (d1, d2) of a bipartite system; both at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub d1: usize,
    pub d2: usize,
}

impl BipartiteDims {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 < 2 || d2 < 2 {
            return Err(CoreError::BadDims { d1, d2 });
        }
        Ok(BipartiteDims { d1, d2 })
    }

    /// Total dimension d1 * d2.
    pub fn total(&self) -> usize {
        self.d1 * self.d2
    }

    /// Row index of the product-basis vector |i>|j>, row-major in the second
    /// subsystem: index = i * d2 + j.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.d2 + j
    }
}

/// Transposes the second subsystem: entry ((i,j),(k,l)) moves to ((i,l),(k,j)).
///
/// An involution that preserves the trace and Hermiticity but not positivity,
/// which is exactly why its spectrum detects entanglement.
pub fn partial_transpose_b(m: &CMatrix, dims: BipartiteDims) -> Result<CMatrix> {
    let n = dims.total();
    if m.rows() != n || m.cols() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut out = CMatrix::zeros(n, n);
    for i in 0..dims.d1 {
        for j in 0..dims.d2 {
            for k in 0..dims.d1 {
                for l in 0..dims.d2 {
                    out[(dims.index(i, j), dims.index(k, l))] =
                        m[(dims.index(i, l), dims.index(k, j))];
                }
            }
        }
    }
    Ok(out)
}

/// Hilbert-Schmidt overlap Tr(a b) of two Hermitian matrices, returned as the
/// real part; the imaginary part is asserted negligible.
///
/// For a state and an observable this is the measurable expectation value; for
/// two states it is their average fidelity in the experimental schemes this
/// crate models.
pub fn overlap(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.cols(), b.rows(), "overlap needs compatible shapes");
    let n = a.rows();
    let mut tr = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.cols() {
            tr += a[(i, k)] * b[(k, i)];
        }
    }
    debug_assert!(
        tr.im.abs() <= 1e-9 * (1.0 + tr.re.abs()),
        "overlap of Hermitian operators must be real, got imaginary part {}",
        tr.im
    );
    tr.re
}

/// A Hermitian operator on a bipartite system, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dims: BipartiteDims,
    mat: CMatrix,
}

impl HermitianOperator {
    pub fn new(mat: CMatrix, dims: BipartiteDims) -> Result<Self> {
        check_shape_finite_hermitian(&mat, dims)?;
        Ok(HermitianOperator { dims, mat })
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Ascending spectrum.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.mat, TOL_HERM)
    }
}

/// A density matrix: Hermitian, unit trace, positive semi-definite within the
/// crate tolerances. The only way to get one is through validation, so every
/// downstream computation can take these properties for granted.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Validates shape, finiteness, Hermiticity, unit trace, and positivity,
    /// reporting the worst offender of the first failing check.
    pub fn new(mat: CMatrix, dims: BipartiteDims) -> Result<Self> {
        check_shape_finite_hermitian(&mat, dims)?;
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TOL_TRACE || tr.im.abs() > TOL_TRACE {
            return Err(CoreError::TraceNotOne {
                trace: tr.re,
                imag: tr.im,
            });
        }
        let spectrum = eigvalsh(&mat, TOL_HERM)?;
        let lambda_min = spectrum[0];
        if lambda_min < -TOL_PSD {
            return Err(CoreError::NotPsd { lambda_min });
        }
        Ok(DensityMatrix { dims, mat })
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Ascending spectrum.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        eigvalsh(&self.mat, TOL_HERM)
    }

    /// Spectrum of the partial transpose (second subsystem), ascending.
    pub fn pt_spectrum(&self) -> Result<Vec<f64>> {
        let pt = partial_transpose_b(&self.mat, self.dims)?;
        eigvalsh(&pt, TOL_HERM)
    }
}

fn check_shape_finite_hermitian(mat: &CMatrix, dims: BipartiteDims) -> Result<()> {
    let n = dims.total();
    if mat.rows() != n || mat.cols() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    if let Some((row, col)) = mat.first_non_finite() {
        return Err(CoreError::NonFiniteEntry { row, col });
    }
    let defect = mat.hermiticity_defect();
    if defect > TOL_HERM {
        return Err(CoreError::NotHermitian {
            max_deviation: defect,
        });
    }
    Ok(())
}
