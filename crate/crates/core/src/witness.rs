//! Entanglement witnesses built from partially transposed pure projectors,
//! and their noise-softened, measurable approximations.
//!
//! For a pure state |psi> the operator W = PT_B(|psi><psi|) is Hermitian and
//! trace-1 but generally indefinite, so it is not directly measurable as a
//! state-like quantity. Mixing it toward white noise,
//!
//!   W~ = p W + (1 - p) I / n,        R = (1 - p) / n,
//!
//! is positive semidefinite for p up to a critical weight p* = 1 / (1 - n
//! lambda_min(W)), and expectation values of W are recovered from measured
//! ones through Tr(W rho) = (Tr(W~ rho) - R) / p. A state is flagged by the
//! witness when Tr(W~ rho) < R, equivalently Tr(W rho) < 0.

use crate::bipartite::{
    overlap, partial_transpose_b, BipartiteDims, DensityMatrix, HermitianOperator, TOL_HERM,
};
use crate::cmatrix::{CMatrix, C64};
use crate::eig::eigh;
use crate::error::{CoreError, Result};

/// Hermitian, trace-1 witness operator W = PT_B(|psi><psi|), remembering
/// where its defining pure state came from.
#[derive(Debug, Clone)]
pub struct EntanglementWitness {
    op: HermitianOperator,
    source: String,
}

impl EntanglementWitness {
    /// Wrap an already-validated Hermitian operator as a witness. Callers are
    /// expected to supply a PT of a pure projector; nothing else is checked
    /// here beyond Hermiticity (already guaranteed by the wrapper).
    pub fn from_parts(op: HermitianOperator, source: impl Into<String>) -> Self {
        EntanglementWitness {
            op,
            source: source.into(),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn dims(&self) -> BipartiteDims {
        self.op.dims()
    }

    /// Human-readable description of the defining pure state.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Tr(W rho).
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        check_same_dims(self.dims(), rho.dims())?;
        Ok(overlap(self.matrix(), rho.matrix()))
    }

    /// Smallest eigenvalue of W.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.op.spectrum()?[0])
    }
}

/// The measurable form W~ = p W + (1-p) I/n together with its detection
/// threshold R = (1-p)/n and the inversion back to Tr(W rho).
#[derive(Debug, Clone)]
pub struct ApproximatedWitness {
    base: EntanglementWitness,
    op: HermitianOperator,
    p: f64,
    threshold_r: f64,
}

impl ApproximatedWitness {
    /// The underlying sharp witness W.
    pub fn base(&self) -> &EntanglementWitness {
        &self.base
    }

    /// The operator W~ itself (positive semidefinite, trace 1).
    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn dims(&self) -> BipartiteDims {
        self.op.dims()
    }

    /// Mixing weight p in (0, 1].
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Detection threshold R = (1-p)/n: the value Tr(W~ rho) takes when
    /// Tr(W rho) = 0.
    pub fn threshold_r(&self) -> f64 {
        self.threshold_r
    }

    /// Measured average Tr(W~ rho).
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        check_same_dims(self.dims(), rho.dims())?;
        Ok(overlap(self.matrix(), rho.matrix()))
    }

    /// Recover Tr(W rho) from a measured Tr(W~ rho).
    pub fn invert_expectation(&self, measured: f64) -> f64 {
        (measured - self.threshold_r) / self.p
    }
}

fn check_same_dims(a: BipartiteDims, b: BipartiteDims) -> Result<()> {
    if a != b {
        return Err(CoreError::DimensionMismatch {
            expected: a.total(),
            rows: b.total(),
            cols: b.total(),
        });
    }
    Ok(())
}

fn pure_projector(psi: &[C64]) -> CMatrix {
    let n = psi.len();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = psi[i] * psi[j].conj();
        }
    }
    m
}

fn witness_from_pure_labeled(
    psi: &[C64],
    dims: BipartiteDims,
    source: String,
) -> Result<EntanglementWitness> {
    let n = dims.total();
    if psi.len() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            rows: psi.len(),
            cols: 1,
        });
    }
    for (i, z) in psi.iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(CoreError::NonFiniteEntry { row: i, col: 0 });
        }
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(CoreError::NotNormalized { norm });
    }
    let w = partial_transpose_b(&pure_projector(psi), dims)?;
    Ok(EntanglementWitness::from_parts(
        HermitianOperator::new(w, dims)?,
        source,
    ))
}

/// Build W = PT_B(|psi><psi|) from a normalized pure state given in the
/// product basis (index i*d2 + j for |i>_A |j>_B).
pub fn witness_from_pure(psi: &[C64], dims: BipartiteDims) -> Result<EntanglementWitness> {
    witness_from_pure_labeled(
        psi,
        dims,
        "partial transpose of a supplied pure-state projector".into(),
    )
}

/// Largest mixing weight p for which W~ = pW + (1-p)I/n stays positive
/// semidefinite: 1/(1 - n lambda_min(W)) when W has a negative eigenvalue,
/// and 1 when W is already positive.
pub fn p_star(w: &EntanglementWitness) -> Result<f64> {
    let lambda_min = w.min_eigenvalue()?;
    if lambda_min >= 0.0 {
        Ok(1.0)
    } else {
        Ok(1.0 / (1.0 - w.dims().total() as f64 * lambda_min))
    }
}

/// Form the approximation W~ = pW + (1-p)I/n with threshold R = (1-p)/n.
///
/// Requires 0 < p <= 1 and p <= p*(W) (otherwise W~ would be indefinite,
/// reported as [`CoreError::MixingBeyondPositivity`]).
pub fn approximate_witness(w: &EntanglementWitness, p: f64) -> Result<ApproximatedWitness> {
    if !p.is_finite() || p <= 0.0 || p > 1.0 {
        return Err(CoreError::MixingOutOfRange { q: p });
    }
    let ps = p_star(w)?;
    if p > ps + 1e-12 {
        return Err(CoreError::MixingBeyondPositivity { p, p_star: ps });
    }
    let n = w.dims().total();
    let mixed = w
        .matrix()
        .scale_re(p)
        .add(&CMatrix::identity(n).scale_re((1.0 - p) / n as f64));
    Ok(ApproximatedWitness {
        base: w.clone(),
        op: HermitianOperator::new(mixed, w.dims())?,
        p,
        threshold_r: (1.0 - p) / n as f64,
    })
}

/// The two-qubit family witness: W is the partial transpose of
/// (k|00> + |11>)/sqrt(2) with phase k = -f/|f|, approximated at p = 1/3 so
/// that R = 1/6.
///
/// At f = 0 the phase is undefined and the construction degenerates; that is
/// reported as [`CoreError::DegenerateWitness`] so callers can fall back to
/// [`tailored_witness`].
pub fn witness_family_1(f: C64) -> Result<ApproximatedWitness> {
    if !(f.re.is_finite() && f.im.is_finite()) {
        return Err(CoreError::InvalidParameter(
            "witness coherence parameter must be finite".into(),
        ));
    }
    if f.norm() < 1e-15 {
        return Err(CoreError::DegenerateWitness(
            "two-qubit family witness needs f != 0 to fix the phase k = -f/|f|".into(),
        ));
    }
    let k = -f / f.norm();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [
        k * s,
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
    ];
    let w = witness_from_pure_labeled(
        &psi,
        BipartiteDims::new(2, 2)?,
        format!(
            "partial transpose of (k|00> + |11>)/sqrt(2), k = {:.6}{:+.6}i",
            k.re, k.im
        ),
    )?;
    approximate_witness(&w, 1.0 / 3.0)
}

/// The qutrit-qubit family witness: W is the partial transpose of
/// |chi> = (-kappa|11> + |20>)/sqrt(1 + kappa^2) with
/// kappa = (alpha + sqrt(4 - 8 alpha + 5 alpha^2)) / (2 (1 - alpha)),
/// approximated at the family's fixed p = 1/4 so that R = 1/8.
///
/// kappa diverges as alpha -> 1, where the direction of |chi> degenerates;
/// alpha = 1 is reported as [`CoreError::DegenerateWitness`].
pub fn witness_family_2(alpha: f64) -> Result<ApproximatedWitness> {
    if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
        return Err(CoreError::InvalidParameter(format!(
            "family-2 witness weight alpha must lie in [0, 1], got {alpha}"
        )));
    }
    if alpha >= 1.0 - 1e-12 {
        return Err(CoreError::DegenerateWitness(
            "qutrit-qubit family witness degenerates at alpha = 1 (kappa diverges)".into(),
        ));
    }
    let kappa = family2_kappa(alpha);
    let norm = (1.0 + kappa * kappa).sqrt();
    let mut psi = vec![C64::new(0.0, 0.0); 6];
    psi[3] = C64::new(-kappa / norm, 0.0); // |11> component
    psi[4] = C64::new(1.0 / norm, 0.0); // |20> component
    let w = witness_from_pure_labeled(
        &psi,
        BipartiteDims::new(3, 2)?,
        format!("partial transpose of (-k|11> + |20>)/sqrt(1+k^2), k = {kappa:.6}"),
    )?;
    approximate_witness(&w, 0.25)
}

/// The slope parameter of the qutrit-qubit family witness,
/// kappa = (alpha + sqrt(4 - 8 alpha + 5 alpha^2)) / (2 (1 - alpha));
/// the discriminant is positive on all of [0, 1), so kappa is real and
/// positive there.
pub fn family2_kappa(alpha: f64) -> f64 {
    (alpha + (4.0 - 8.0 * alpha + 5.0 * alpha * alpha).sqrt()) / (2.0 * (1.0 - alpha))
}

/// A witness tailored to one state: W = PT_B(|psi><psi|) with |psi> the
/// eigenvector of PT_B(rho) belonging to its smallest eigenvalue.
///
/// Because partial transposition is self-adjoint under the trace inner
/// product, Tr(W rho) = lambda_min(PT_B(rho)) exactly, so this witness
/// detects every NPT state and nothing else.
pub fn tailored_witness(rho: &DensityMatrix) -> Result<EntanglementWitness> {
    let dims = rho.dims();
    let pt = partial_transpose_b(rho.matrix(), dims)?;
    let (_, vectors) = eigh(&pt, TOL_HERM)?;
    let n = dims.total();
    let psi: Vec<C64> = (0..n).map(|i| vectors[(i, 0)]).collect();
    witness_from_pure_labeled(
        &psi,
        dims,
        "partial transpose of the minimal-eigenvector projector of PT_B(state)".into(),
    )
}
