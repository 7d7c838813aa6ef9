//! One-stop assembly: given a state, pick a witness and a completely
//! positive partial-transpose approximation, evaluate every criterion, and
//! collect the evidence into a serializable [`DetectionReport`].

use serde::{Deserialize, Serialize};

use crate::bipartite::{overlap, DensityMatrix};
use crate::cmatrix::C64;
use crate::detect::{
    concurrence_bounds, criterion1, criterion2, criterion3, eig_bounds, wootters_concurrence,
    ConcurrenceBounds, CriterionOutcome, DualEvaluation, EigBounds, Verdict, TOL_BOUNDARY,
};
use crate::error::{CoreError, Result};
use crate::spa::{
    q_star, qutrit_qubit_trace_defect, spa_pt_generic, spa_pt_qutrit_qubit, spa_pt_two_qubit,
    spa_threshold, threshold_is_extrapolated, QutritQubitSpaParams,
};
use crate::witness::{
    approximate_witness, p_star, tailored_witness, witness_family_1, witness_family_2,
    ApproximatedWitness,
};

/// How the witness for a report should be obtained.
#[derive(Debug, Clone)]
pub enum WitnessSelection {
    /// The two-qubit family witness fixed by the coherence phase (p = 1/3).
    Family1 { f: C64 },
    /// The qutrit-qubit family witness fixed by the mixing weight (p = 1/4).
    Family2 { alpha: f64 },
    /// PT of a supplied normalized pure state, approximated at p*(W).
    Pure { psi: Vec<C64> },
    /// PT of the minimal-eigenvector projector of PT_B(state), approximated
    /// at p*(W); detects exactly the NPT states.
    Tailored,
}

/// Which completely positive approximation of partial transposition to use
/// for the criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaSelection {
    /// By dimensions: the closed-form map for 2x2, the structured map for
    /// 3x2, the generic noise mix at q* otherwise.
    Auto,
    /// The generic noise mix at an explicit weight q; below the state's
    /// positivity threshold this fails rather than producing a non-state.
    GenericQ(f64),
}

/// Report request: a human-readable description of the state plus the
/// witness and approximation choices.
#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub description: String,
    pub witness: WitnessSelection,
    pub spa: SpaSelection,
}

/// The always-computed spectral screening at the critical noise weight: the
/// state is NPT exactly when lambda_min of the q* noise mix falls below
/// q*/n.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenThresholdOutcome {
    pub q: f64,
    pub lambda_min: f64,
    pub threshold: f64,
    /// True when the threshold formula is an extrapolation (unequal local
    /// dimensions) rather than a proven value.
    pub extrapolated: bool,
    pub verdict: Verdict,
}

/// Full evidence bundle for one state. Field order is the stable JSON
/// schema; `report_version` is bumped on any breaking change.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DetectionReport {
    pub report_version: u32,
    pub description: String,
    pub d1: usize,
    pub d2: usize,
    /// Description of the pure state defining the witness actually used.
    pub witness_source: String,
    /// True when the requested witness was degenerate and the tailored
    /// witness was substituted.
    pub witness_fallback: bool,
    pub witness_p: f64,
    pub threshold_r: f64,
    /// Which approximation produced the criteria's rho~.
    pub spa_kind: String,
    /// Noise weight of the approximation, where one is defined.
    pub spa_q: Option<f64>,
    /// Trace of the structured qutrit-qubit assembly minus 1 before
    /// normalization (diagnostic; None for the other maps).
    pub spa_trace_defect: Option<f64>,
    pub fidelity_witness_avg: f64,
    pub fidelity_spa_avg: f64,
    /// Tr(W rho) recovered from the measured average via the inversion.
    pub witness_expectation: f64,
    /// Exact spin-flip concurrence (two qubits only).
    pub wootters: Option<f64>,
    pub state_spectrum: Vec<f64>,
    pub pt_spectrum: Vec<f64>,
    pub spa_spectrum: Vec<f64>,
    pub eig_bounds: EigBounds,
    pub concurrence_bounds: ConcurrenceBounds,
    pub criterion1: CriterionOutcome,
    pub criterion2: DualEvaluation,
    pub criterion3: DualEvaluation,
    pub eigen_threshold: EigenThresholdOutcome,
    /// Entangled if any evaluation certified entanglement; NotDetected if at
    /// least one test ran conclusively negative; Inconclusive otherwise.
    pub overall: Verdict,
}

fn select_witness(
    rho: &DensityMatrix,
    sel: &WitnessSelection,
) -> Result<(ApproximatedWitness, bool)> {
    let direct = match sel {
        WitnessSelection::Family1 { f } => witness_family_1(*f),
        WitnessSelection::Family2 { alpha } => witness_family_2(*alpha),
        WitnessSelection::Pure { psi } => {
            let w = crate::witness::witness_from_pure(psi, rho.dims())?;
            let p = p_star(&w)?;
            approximate_witness(&w, p)
        }
        WitnessSelection::Tailored => {
            let w = tailored_witness(rho)?;
            let p = p_star(&w)?;
            approximate_witness(&w, p)
        }
    };
    match direct {
        Ok(aw) => Ok((aw, false)),
        Err(CoreError::DegenerateWitness(_)) => {
            let w = tailored_witness(rho)?;
            let p = p_star(&w)?;
            Ok((approximate_witness(&w, p)?, true))
        }
        Err(e) => Err(e),
    }
}

fn select_spa(
    rho: &DensityMatrix,
    sel: SpaSelection,
) -> Result<(DensityMatrix, String, Option<f64>, Option<f64>)> {
    let dims = rho.dims();
    match sel {
        SpaSelection::Auto => match (dims.d1, dims.d2) {
            (2, 2) => Ok((
                spa_pt_two_qubit(rho)?,
                "two-qubit-closed-form".into(),
                Some(8.0 / 9.0),
                None,
            )),
            (3, 2) => {
                let params = QutritQubitSpaParams::default();
                Ok((
                    spa_pt_qutrit_qubit(rho, &params)?,
                    "qutrit-qubit-structured".into(),
                    None,
                    Some(qutrit_qubit_trace_defect(rho, &params)?),
                ))
            }
            _ => {
                let q = q_star(dims);
                Ok((
                    spa_pt_generic(rho, q)?,
                    "generic-depolarized".into(),
                    Some(q),
                    None,
                ))
            }
        },
        SpaSelection::GenericQ(q) => Ok((
            spa_pt_generic(rho, q)?,
            "generic-depolarized".into(),
            Some(q),
            None,
        )),
    }
}

fn aggregate(verdicts: &[Verdict]) -> Verdict {
    if verdicts.contains(&Verdict::Entangled) {
        Verdict::Entangled
    } else if verdicts.contains(&Verdict::NotDetected) {
        Verdict::NotDetected
    } else {
        Verdict::Inconclusive
    }
}

/// Evaluate everything for one state and assemble the evidence.
///
/// Deterministic: identical inputs produce byte-identical serialized
/// reports. Construction failures (bad dimensions, indefinite approximation
/// at a forced q, ...) propagate as errors.
pub fn full_report(rho: &DensityMatrix, config: &ReportConfig) -> Result<DetectionReport> {
    let dims = rho.dims();
    let (aw, witness_fallback) = select_witness(rho, &config.witness)?;
    let (rho_spa, spa_kind, spa_q, spa_trace_defect) = select_spa(rho, config.spa)?;

    let fidelity_witness_avg = aw.expectation(rho)?;
    let fidelity_spa_avg = overlap(rho.matrix(), rho_spa.matrix());
    let witness_expectation = aw.invert_expectation(fidelity_witness_avg);

    let bounds = eig_bounds(rho, &rho_spa, aw.base())?;
    let cb = concurrence_bounds(rho, &rho_spa, &aw)?;
    let c1 = criterion1(rho, &aw)?;
    let c2 = criterion2(rho, &rho_spa, &aw)?;

    let wootters = if (dims.d1, dims.d2) == (2, 2) {
        Some(wootters_concurrence(rho)?)
    } else {
        None
    };
    let mut c3_measured = criterion3(rho, &rho_spa, cb.lower)?;
    c3_measured.label = "measured-lower-bound".into();
    let c3_wootters = match wootters {
        Some(c) => {
            let mut out = criterion3(rho, &rho_spa, c)?;
            out.label = "wootters-two-qubit".into();
            Some(out)
        }
        None => None,
    };
    let c3 = DualEvaluation {
        measured: c3_measured,
        wootters: c3_wootters,
    };

    // Spectral screening at the critical weight, independent of the map the
    // criteria used: at q = q* the noise mix is positive for every input and
    // its minimal eigenvalue separates NPT states at q*/n.
    let q = q_star(dims);
    let threshold = spa_threshold(dims);
    let lambda_min = spa_pt_generic(rho, q)?.spectrum()?[0];
    let et_verdict = if (lambda_min - threshold).abs() <= TOL_BOUNDARY {
        Verdict::Inconclusive
    } else if lambda_min < threshold {
        Verdict::Entangled
    } else {
        Verdict::NotDetected
    };
    let eigen_threshold = EigenThresholdOutcome {
        q,
        lambda_min,
        threshold,
        extrapolated: threshold_is_extrapolated(dims),
        verdict: et_verdict,
    };

    let mut verdicts = vec![
        c1.verdict,
        c2.measured.verdict,
        c3.measured.verdict,
        eigen_threshold.verdict,
    ];
    if let Some(w) = &c2.wootters {
        verdicts.push(w.verdict);
    }
    if let Some(w) = &c3.wootters {
        verdicts.push(w.verdict);
    }
    let overall = aggregate(&verdicts);

    Ok(DetectionReport {
        report_version: 1,
        description: config.description.clone(),
        d1: dims.d1,
        d2: dims.d2,
        witness_source: aw.base().source().to_string(),
        witness_fallback,
        witness_p: aw.p(),
        threshold_r: aw.threshold_r(),
        spa_kind,
        spa_q,
        spa_trace_defect,
        fidelity_witness_avg,
        fidelity_spa_avg,
        witness_expectation,
        wootters,
        state_spectrum: rho.spectrum()?,
        pt_spectrum: rho.pt_spectrum()?,
        spa_spectrum: rho_spa.spectrum()?,
        eig_bounds: bounds,
        concurrence_bounds: cb,
        criterion1: c1,
        criterion2: c2,
        criterion3: c3,
        eigen_threshold,
        overall,
    })
}
