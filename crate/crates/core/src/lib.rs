//! Numerical toolkit for deciding whether a bipartite mixed state in
//! dimension d1 ⊗ d2 is NPT-entangled, built around the structural physical
//! approximation (SPA) of partial transposition.
//!
//! Partial transposition is not a physical map: applied to one half of an
//! entangled state it can produce negative eigenvalues. Mixing it with enough
//! white noise yields a completely positive map whose output spectrum is still
//! informative, which is what makes the following measurable quantities
//! meaningful detectors:
//!
//! * witness expectation values taken against a noise-mixed (approximated)
//!   witness operator, compared to a fixed threshold,
//! * the minimal eigenvalue of the SPA-transposed state, sandwiched by
//!   overlap-derived bounds and compared against a dimension-dependent
//!   threshold,
//! * concurrence estimates bracketed between a witness-derived lower bound and
//!   an overlap upper bound.
//!
//! The crate provides dense complex-matrix primitives sized for desk-scale
//! systems (qubit/qutrit pairs), the SPA maps themselves (a generic
//! depolarized partial transpose for any dimensions, a closed-form two-qubit
//! map, and a structured qutrit-qubit map), witness construction and noise
//! mixing, the detection criteria with report assembly, two reference state
//! families with tunable parameters, seeded random-state sampling, and the
//! property suites used by the CLI and the acceptance tests.
//!
//! Everything is deterministic: the eigensolver is a fixed-order cyclic
//! Jacobi iteration, and all randomness flows through explicitly seeded
//! generators. All types are `Send + Sync`; nothing holds interior mutability,
//! so reports for many states can be assembled from worker threads without
//! coordination.

pub mod bipartite;
pub mod cmatrix;
pub mod detect;
pub mod eig;
pub mod error;
pub mod io;
pub mod random;
pub mod report;
pub mod spa;
pub mod states;
pub mod suites;
pub mod witness;

pub use bipartite::{
    overlap, partial_transpose_b, BipartiteDims, DensityMatrix, HermitianOperator,
};
pub use cmatrix::{tensor, CMatrix, C64};
pub use detect::{
    concurrence_bounds, criterion1, criterion2, criterion3, eig_bounds, wootters_concurrence,
    ConcurrenceBounds, CriterionOutcome, DualEvaluation, EigBounds, Verdict,
};
pub use eig::{eigh, eigvalsh};
pub use error::CoreError;
pub use io::{parse_state_json, state_to_json, FamilyTag, ParsedState};
pub use report::{
    full_report, DetectionReport, EigenThresholdOutcome, ReportConfig, SpaSelection,
    WitnessSelection,
};
pub use spa::{
    q_star, qutrit_qubit_trace_defect, spa_pt_generic, spa_pt_generic_raw, spa_pt_qutrit_qubit,
    spa_pt_qutrit_qubit_raw, spa_pt_two_qubit, spa_threshold, threshold_is_extrapolated,
    QutritQubitSpaParams,
};
pub use states::{
    bell_phi_plus, build_family1, build_family2, family1_concurrence, Family1Params, Family2Params,
};
pub use suites::SuiteOutcome;
pub use witness::{
    approximate_witness, family2_kappa, p_star, tailored_witness, witness_family_1,
    witness_family_2, witness_from_pure, ApproximatedWitness, EntanglementWitness,
};
