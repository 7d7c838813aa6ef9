//! Deterministic input builders shared by the benchmark suite.
//!
//! Every builder is seeded or closed-form so that consecutive benchmark runs
//! measure the same computation.

use spa_detect::random::StateSampler;
use spa_detect::{
    build_family1, build_family2, BipartiteDims, DensityMatrix, Family1Params, Family2Params, C64,
};

/// Entangled two-qubit reference state (a = 0.05, f = 0.4 + 0.1i).
pub fn two_qubit_state() -> DensityMatrix {
    build_family1(&Family1Params {
        a: 0.05,
        f: C64::new(0.4, 0.1),
    })
    .expect("reference parameters are valid")
}

/// Entangled qutrit-qubit reference state (alpha = 0.5).
pub fn qutrit_qubit_state() -> DensityMatrix {
    build_family2(&Family2Params { alpha: 0.5 }).expect("reference parameters are valid")
}

/// A full-rank random state of the given bipartite shape, from a fixed seed.
pub fn seeded_state(d1: usize, d2: usize) -> DensityMatrix {
    let dims = BipartiteDims::new(d1, d2).expect("dimensions at least 2");
    StateSampler::with_seed(2024).density_matrix(dims)
}
