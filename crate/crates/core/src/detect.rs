//! Detection logic: spectral bounds, the three entanglement criteria, and
//! concurrence bounds, all phrased in terms of measurable overlaps.
//!
//! Everything here consumes three ingredients: the state rho, its completely
//! positive partial-transpose approximation rho~ (from [`crate::spa`]), and a
//! witness approximation W~ (from [`crate::witness`]). The measurable
//! overlaps Tr(W~ rho) and Tr(rho rho~) then bound the spectrum of rho~ and
//! the concurrence of rho without full tomography.

use serde::{Deserialize, Serialize};

use crate::bipartite::{overlap, DensityMatrix};
use crate::cmatrix::{CMatrix, C64};
use crate::eig::{eigvalsh, sqrt_psd};
use crate::error::{CoreError, Result};
use crate::witness::{ApproximatedWitness, EntanglementWitness};

/// Width of the band around each strict inequality inside which a comparison
/// is reported as inconclusive instead of being decided by floating-point
/// noise.
pub const TOL_BOUNDARY: f64 = 1e-12;

/// Outcome vocabulary of the criteria.
///
/// * `Entangled` — the criterion's strict inequality certifies entanglement.
/// * `NotDetected` — the inequality fails; nothing follows about the state.
/// * `Inconclusive` — the criterion's branch precondition failed or the
///   decisive quantity sits on the boundary within [`TOL_BOUNDARY`].
/// * `Degenerate` — the input made the construction itself ill-defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Entangled,
    NotDetected,
    Inconclusive,
    Degenerate,
}

/// One evaluated criterion: the decisive scalar, what it was compared
/// against, whether the strict inequality held, and the verdict drawn.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub verdict: Verdict,
    /// The decisive scalar (a measured average, a minimal eigenvalue, or an
    /// upper bound, depending on the criterion).
    pub quantity: f64,
    /// The value `quantity` is compared against.
    pub threshold: f64,
    /// Whether the criterion's inequality held (ignoring the boundary band).
    pub satisfied: bool,
    /// Concurrence value used, for the criteria that consume one.
    pub concurrence: Option<f64>,
    /// Which evaluation this is (e.g. which concurrence stand-in was used).
    pub label: String,
}

/// A concurrence-consuming criterion evaluated with each available stand-in
/// for the concurrence: the measurable lower bound always, the exact
/// spin-flip value when the dimensions allow it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualEvaluation {
    /// Evaluation with the measurable lower bound max(0, -Tr(W rho)).
    pub measured: CriterionOutcome,
    /// Evaluation with the exact spin-flip concurrence (two qubits only).
    pub wootters: Option<CriterionOutcome>,
}

/// Two-sided bound on the smallest eigenvalue of rho~ from measurable
/// overlaps: max(L, 0) <= lambda_min(rho~) <= U with U - L = 1/2 exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigBounds {
    pub l: f64,
    pub u: f64,
    /// The directly computed smallest eigenvalue of rho~, for comparison.
    pub lambda_min_spa: f64,
    /// Tr(rho rho~), one of the two measurable ingredients.
    pub overlap_rho_spa: f64,
    /// Tr(W rho), the other ingredient.
    pub witness_expectation: f64,
}

/// Concurrence bounds from measurable overlaps:
/// (1-p)/(p n) - Tr(W~ rho)/p <= C(rho) <= Tr(rho rho~).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConcurrenceBounds {
    /// The lower bound exactly as the formula gives it (may be negative,
    /// in which case it carries no information).
    pub lower_raw: f64,
    /// max(lower_raw, 0).
    pub lower: f64,
    pub upper: f64,
}

fn check_pair(rho: &DensityMatrix, rho_spa: &DensityMatrix) -> Result<()> {
    if rho.dims() != rho_spa.dims() {
        return Err(CoreError::DimensionMismatch {
            expected: rho.dims().total(),
            rows: rho_spa.dims().total(),
            cols: rho_spa.dims().total(),
        });
    }
    Ok(())
}

/// Bound lambda_min(rho~) two-sidedly:
/// L = Tr(rho rho~) + Tr(W rho), U = L + 1/2.
///
/// The sandwich max(L, 0) <= lambda_min(rho~) <= U is meaningful when the
/// witness detects the state (Tr(W rho) < 0); for undetected states L can
/// exceed the actual eigenvalue and the bound is inapplicable.
pub fn eig_bounds(
    rho: &DensityMatrix,
    rho_spa: &DensityMatrix,
    w: &EntanglementWitness,
) -> Result<EigBounds> {
    check_pair(rho, rho_spa)?;
    let f = overlap(rho.matrix(), rho_spa.matrix());
    let wexp = w.expectation(rho)?;
    let l = f + wexp;
    Ok(EigBounds {
        l,
        u: l + 0.5,
        lambda_min_spa: rho_spa.spectrum()?[0],
        overlap_rho_spa: f,
        witness_expectation: wexp,
    })
}

/// Witness-threshold criterion: the state is flagged entangled when the
/// measured average Tr(W~ rho) falls strictly below R = (1-p)/n.
pub fn criterion1(rho: &DensityMatrix, aw: &ApproximatedWitness) -> Result<CriterionOutcome> {
    let measured = aw.expectation(rho)?;
    let r = aw.threshold_r();
    let verdict = if (measured - r).abs() <= TOL_BOUNDARY {
        Verdict::Inconclusive
    } else if measured < r {
        Verdict::Entangled
    } else {
        Verdict::NotDetected
    };
    Ok(CriterionOutcome {
        verdict,
        quantity: measured,
        threshold: r,
        satisfied: measured < r,
        concurrence: None,
        label: "witness average below threshold".into(),
    })
}

/// Concurrence bounds from the measured witness average and the overlap with
/// the approximated partial transpose.
pub fn concurrence_bounds(
    rho: &DensityMatrix,
    rho_spa: &DensityMatrix,
    aw: &ApproximatedWitness,
) -> Result<ConcurrenceBounds> {
    check_pair(rho, rho_spa)?;
    let n = rho.dims().total() as f64;
    let p = aw.p();
    let measured = aw.expectation(rho)?;
    let lower_raw = (1.0 - p) / (p * n) - measured / p;
    Ok(ConcurrenceBounds {
        lower_raw,
        lower: lower_raw.max(0.0),
        upper: overlap(rho.matrix(), rho_spa.matrix()),
    })
}

fn evaluate_c2(lambda_min: f64, f: f64, c: f64, label: &str) -> CriterionOutcome {
    let threshold = f - c;
    let satisfied = lambda_min >= threshold;
    let verdict = if c > f + TOL_BOUNDARY {
        // Branch precondition C <= Tr(rho rho~) failed; the upper-bound
        // criterion is the applicable one.
        Verdict::Inconclusive
    } else if (lambda_min - threshold).abs() <= TOL_BOUNDARY {
        Verdict::Inconclusive
    } else if !satisfied {
        Verdict::NotDetected
    } else if c > TOL_BOUNDARY {
        Verdict::Entangled
    } else {
        // The inequality holds trivially when the concurrence stand-in is 0.
        Verdict::Inconclusive
    };
    CriterionOutcome {
        verdict,
        quantity: lambda_min,
        threshold,
        satisfied,
        concurrence: Some(c),
        label: label.into(),
    }
}

/// Eigenvalue-floor criterion, applicable when C <= Tr(rho rho~):
/// check lambda_min(rho~) >= Tr(rho rho~) - C.
///
/// Evaluated with the measurable concurrence lower bound, and additionally
/// with the exact spin-flip concurrence for two-qubit states; both
/// evaluations are reported with labels.
pub fn criterion2(
    rho: &DensityMatrix,
    rho_spa: &DensityMatrix,
    aw: &ApproximatedWitness,
) -> Result<DualEvaluation> {
    check_pair(rho, rho_spa)?;
    let f = overlap(rho.matrix(), rho_spa.matrix());
    let lambda_min = rho_spa.spectrum()?[0];
    let bounds = concurrence_bounds(rho, rho_spa, aw)?;
    let measured = evaluate_c2(lambda_min, f, bounds.lower, "measured-lower-bound");
    let dims = rho.dims();
    let wootters = if (dims.d1, dims.d2) == (2, 2) {
        let c = wootters_concurrence(rho)?;
        Some(evaluate_c2(lambda_min, f, c, "wootters-two-qubit"))
    } else {
        None
    };
    Ok(DualEvaluation { measured, wootters })
}

/// Upper-bound criterion, applicable when C > Tr(rho rho~): the refined
/// upper bound U_ent = 1/2 + Tr(rho rho~) - C certifies entanglement when it
/// falls strictly below 1/2.
pub fn criterion3(
    rho: &DensityMatrix,
    rho_spa: &DensityMatrix,
    c: f64,
) -> Result<CriterionOutcome> {
    check_pair(rho, rho_spa)?;
    if !c.is_finite() || c < 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "concurrence value must be finite and nonnegative, got {c}"
        )));
    }
    let f = overlap(rho.matrix(), rho_spa.matrix());
    let u_ent = 0.5 + f - c;
    let satisfied = u_ent < 0.5;
    let verdict = if c <= f + TOL_BOUNDARY {
        // Branch precondition C > Tr(rho rho~) failed.
        Verdict::Inconclusive
    } else if (u_ent - 0.5).abs() <= TOL_BOUNDARY {
        Verdict::Inconclusive
    } else if satisfied {
        Verdict::Entangled
    } else {
        Verdict::NotDetected
    };
    Ok(CriterionOutcome {
        verdict,
        quantity: u_ent,
        threshold: 0.5,
        satisfied,
        concurrence: Some(c),
        label: "refined upper bound below one half".into(),
    })
}

/// Exact two-qubit concurrence via the spin-flip construction:
/// C = max(0, sqrt(m1) - sqrt(m2) - sqrt(m3) - sqrt(m4)) where m_i are the
/// descending eigenvalues of sqrt(rho) Y rho* Y sqrt(rho) with Y the
/// two-fold tensor of the antisymmetric Pauli matrix.
///
/// This Hermitian formulation has the same spectrum as the usual
/// rho Y rho* Y product but keeps the eigenproblem symmetric.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let dims = rho.dims();
    if (dims.d1, dims.d2) != (2, 2) {
        return Err(CoreError::BadDims {
            d1: dims.d1,
            d2: dims.d2,
        });
    }
    let mut y = CMatrix::zeros(4, 4);
    let one = C64::new(1.0, 0.0);
    y[(0, 3)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    y[(3, 0)] = -one;

    let sqrt_rho = sqrt_psd(rho.matrix(), crate::bipartite::TOL_HERM)?;
    let flipped = y.mul(&rho.matrix().conjugate()).mul(&y);
    let t = sqrt_rho.mul(&flipped).mul(&sqrt_rho).symmetrized();
    let mut mu = eigvalsh(&t, 1e-8)?;
    mu.reverse(); // descending
    let roots: Vec<f64> = mu.iter().map(|v| v.max(0.0).sqrt()).collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}
