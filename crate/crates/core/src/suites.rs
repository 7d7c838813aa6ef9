//! Seeded, countable property suites over random inputs.
//!
//! Each suite draws its own deterministic sample stream from a seed, checks
//! one mathematical property for a given number of trials, and reports how
//! many draws violated it together with the worst margin seen. They back the
//! command-line `properties` subcommand and the acceptance tests.

use serde::{Deserialize, Serialize};

use crate::bipartite::{overlap, partial_transpose_b, BipartiteDims, TOL_EIG, TOL_HERM, TOL_PSD};
use crate::eig::eigvalsh;
use crate::error::Result;
use crate::random::StateSampler;
use crate::spa::{
    q_star, spa_pt_generic_raw, spa_pt_qutrit_qubit, spa_pt_two_qubit, spa_threshold,
    QutritQubitSpaParams,
};
use crate::states::bell_phi_plus;

/// Result of one property suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub trials: u32,
    pub violations: u32,
    /// Worst signed margin observed; nonnegative means the property held
    /// with room to spare, negative measures the deepest violation.
    pub worst_margin: f64,
    pub note: String,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn outcome(
    name: &str,
    trials: u32,
    violations: u32,
    worst_margin: f64,
    note: &str,
) -> SuiteOutcome {
    SuiteOutcome {
        name: name.into(),
        trials,
        violations,
        worst_margin,
        note: note.into(),
    }
}

const DIMS_CYCLE: [(usize, usize); 4] = [(2, 2), (3, 2), (2, 3), (3, 3)];

/// For Hermitian A and positive semidefinite B:
/// lambda_min(A) Tr(B) <= Tr(AB) <= lambda_max(A) Tr(B).
pub fn result1_sandwich(seed: u64, trials: u32) -> Result<SuiteOutcome> {
    let mut s = StateSampler::with_seed(seed);
    let sizes = [4usize, 6, 9];
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for t in 0..trials {
        let n = sizes[(t as usize) % sizes.len()];
        let a = s.hermitian(n);
        let b = s.psd(n);
        let spec = eigvalsh(&a, TOL_HERM)?;
        let (lo, hi) = (spec[0], spec[n - 1]);
        let tr_b = b.trace().re;
        let inner = overlap(&a, &b);
        let margin = (inner - lo * tr_b).min(hi * tr_b - inner);
        worst = worst.min(margin);
        if margin < -1e-9 * tr_b.max(1.0) {
            violations += 1;
        }
    }
    Ok(outcome(
        "result1-sandwich",
        trials,
        violations,
        worst,
        "lambda_min(A) Tr(B) <= Tr(AB) <= lambda_max(A) Tr(B) for Hermitian A, PSD B",
    ))
}

/// Every eigenvalue of the partial transpose of a state lies in [-1/2, 1].
pub fn result3_spectral_range(seed: u64, trials: u32) -> Result<SuiteOutcome> {
    let mut s = StateSampler::with_seed(seed);
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for t in 0..trials {
        let (d1, d2) = DIMS_CYCLE[(t as usize) % DIMS_CYCLE.len()];
        let rho = s.density_matrix(BipartiteDims::new(d1, d2)?);
        let spec = rho.pt_spectrum()?;
        let margin = (spec[0] + 0.5).min(1.0 - spec[spec.len() - 1]);
        worst = worst.min(margin);
        if margin < -TOL_EIG {
            violations += 1;
        }
    }
    Ok(outcome(
        "result3-spectral-range",
        trials,
        violations,
        worst,
        "partial-transpose eigenvalues of states stay inside [-1/2, 1]",
    ))
}

/// The closed-form two-qubit map coincides with the generic noise mix at
/// q = 8/9 entry by entry.
pub fn spa_two_qubit_equivalence(seed: u64, trials: u32) -> Result<SuiteOutcome> {
    let mut s = StateSampler::with_seed(seed);
    let dims = BipartiteDims::new(2, 2)?;
    let mut violations = 0;
    let mut worst_dev = 0.0_f64;
    for _ in 0..trials {
        let rho = s.density_matrix(dims);
        let closed = spa_pt_two_qubit(&rho)?;
        let generic = spa_pt_generic_raw(rho.matrix(), dims, 8.0 / 9.0)?;
        let dev = closed.matrix().max_abs_diff(&generic);
        worst_dev = worst_dev.max(dev);
        if dev > 1e-12 {
            violations += 1;
        }
    }
    Ok(outcome(
        "spa-two-qubit-equivalence",
        trials,
        violations,
        1e-12 - worst_dev,
        "closed-form two-qubit map equals the generic mix at q = 8/9 to 1e-12",
    ))
}

/// The structured qutrit-qubit map always yields a unit-trace PSD state
/// (after its documented normalization).
pub fn qutrit_qubit_map_validity(seed: u64, trials: u32) -> Result<SuiteOutcome> {
    let mut s = StateSampler::with_seed(seed);
    let dims = BipartiteDims::new(3, 2)?;
    let params = QutritQubitSpaParams::default();
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let rho = s.density_matrix(dims);
        let out = spa_pt_qutrit_qubit(&rho, &params)?;
        let trace_margin = 1e-12 - (out.matrix().trace().re - 1.0).abs();
        let lambda_min = out.spectrum()?[0];
        let psd_margin = lambda_min + 1e-9;
        let margin = trace_margin.min(psd_margin);
        worst = worst.min(margin);
        if margin < 0.0 {
            violations += 1;
        }
    }
    Ok(outcome(
        "qutrit-qubit-map-validity",
        trials,
        violations,
        worst,
        "normalized structured 3x2 map output has unit trace (1e-12) and lambda_min >= -1e-9",
    ))
}

/// Two-qubit spectral screening: lambda_min of the q* noise mix falls below
/// q*/n exactly when the partial transpose has a negative eigenvalue
/// (PT minima within 1e-9 of zero are skipped as boundary cases).
pub fn eigen_threshold_agreement(seed: u64, trials: u32) -> Result<SuiteOutcome> {
    let mut s = StateSampler::with_seed(seed);
    let dims = BipartiteDims::new(2, 2)?;
    let q = q_star(dims);
    let threshold = spa_threshold(dims);
    let mut violations = 0;
    let mut skipped = 0u32;
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let rho = s.density_matrix(dims);
        let pt_min = rho.pt_spectrum()?[0];
        if pt_min.abs() < 1e-9 {
            skipped += 1;
            continue;
        }
        let mixed = spa_pt_generic_raw(rho.matrix(), dims, q)?;
        let lambda_min = eigvalsh(&mixed, TOL_HERM)?[0];
        let flagged = lambda_min < threshold;
        let npt = pt_min < 0.0;
        worst = worst.min((lambda_min - threshold).abs());
        if flagged != npt {
            violations += 1;
        }
    }
    Ok(outcome(
        "eigen-threshold-agreement",
        trials,
        violations,
        worst,
        &format!(
            "two-qubit screening at q* agrees with the PT sign ({skipped} boundary draws skipped)"
        ),
    ))
}

/// Count how often the generic noise mix at a forced weight q fails to be
/// positive semidefinite on random states. At q >= q* this must never
/// happen; below q* the count exposes the tampering.
pub fn spa_psd_with_q(seed: u64, trials: u32, q: f64) -> Result<SuiteOutcome> {
    let mut s = StateSampler::with_seed(seed);
    let dims = BipartiteDims::new(2, 2)?;
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for trial in 0..trials {
        // The first trial is pinned to the maximally entangled state, whose
        // B-side transpose has the deepest possible eigenvalue -1/2: any
        // mixing weight below the critical one is then guaranteed to produce
        // a negative output eigenvalue regardless of the trial count.
        let rho = if trial == 0 {
            bell_phi_plus()
        } else {
            s.density_matrix(dims)
        };
        let mixed = spa_pt_generic_raw(rho.matrix(), dims, q)?;
        let lambda_min = eigvalsh(&mixed, TOL_HERM)?[0];
        worst = worst.min(lambda_min + TOL_PSD);
        if lambda_min < -TOL_PSD {
            violations += 1;
        }
    }
    Ok(outcome(
        "spa-psd-at-q",
        trials,
        violations,
        worst,
        &format!("positivity of the generic mix at q = {q} on random two-qubit states"),
    ))
}

/// Run the standard suite battery (everything except the tamper check) with
/// per-suite decorrelated seeds derived from `seed`.
pub fn run_all(seed: u64, trials: u32) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        result1_sandwich(seed, trials)?,
        result3_spectral_range(seed.wrapping_add(1), trials)?,
        spa_two_qubit_equivalence(seed.wrapping_add(2), trials)?,
        qutrit_qubit_map_validity(seed.wrapping_add(3), trials)?,
        eigen_threshold_agreement(seed.wrapping_add(4), trials)?,
        spa_psd_with_q(
            seed.wrapping_add(5),
            trials,
            q_star(BipartiteDims::new(2, 2)?),
        )?,
    ])
}

/// Involution check used by the battery's callers as a cheap smoke test:
/// applying the B-side transpose twice returns the input exactly.
pub fn pt_involution_spot_check(seed: u64) -> Result<bool> {
    let mut s = StateSampler::with_seed(seed);
    for (d1, d2) in DIMS_CYCLE {
        let dims = BipartiteDims::new(d1, d2)?;
        let rho = s.density_matrix(dims);
        let twice = partial_transpose_b(&partial_transpose_b(rho.matrix(), dims)?, dims)?;
        if twice.max_abs_diff(rho.matrix()) != 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_at_modest_trial_counts() {
        for s in run_all(42, 200).unwrap() {
            assert!(
                s.passed(),
                "suite {} failed: {} violations, worst margin {:.3e}",
                s.name,
                s.violations,
                s.worst_margin
            );
        }
    }

    #[test]
    fn battery_is_deterministic_for_a_seed() {
        let a = run_all(7, 100).unwrap();
        let b = run_all(7, 100).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.violations, y.violations);
            assert_eq!(x.worst_margin.to_bits(), y.worst_margin.to_bits());
        }
    }

    #[test]
    fn tampered_low_q_is_caught() {
        let s = spa_psd_with_q(42, 300, 0.5).unwrap();
        assert!(
            s.violations > 0,
            "q = 0.5 must break positivity on some NPT draws"
        );
        assert!(s.worst_margin < 0.0);
        // The pinned first draw makes the catch trial-count independent.
        let one = spa_psd_with_q(9, 1, 0.5).unwrap();
        assert_eq!(one.violations, 1);
    }

    #[test]
    fn involution_spot_check_holds() {
        assert!(pt_involution_spot_check(3).unwrap());
    }
}
