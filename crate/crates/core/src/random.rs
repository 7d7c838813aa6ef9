//! Seeded random matrix ensembles for the property suites.
//!
//! All sampling flows through a ChaCha stream cipher generator so a u64 seed
//! pins every draw, independent of platform or thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bipartite::{BipartiteDims, DensityMatrix};
use crate::cmatrix::{CMatrix, C64};

/// Deterministic sampler over the matrix ensembles used in tests and the
/// property suites.
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn with_seed(seed: u64) -> Self {
        StateSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Square matrix of iid standard complex Gaussians.
    pub fn ginibre(&mut self, n: usize) -> CMatrix {
        let mut g = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = C64::new(self.gaussian(), self.gaussian());
            }
        }
        g
    }

    /// Random Hermitian matrix (G + G†)/2, entries O(1).
    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        let g = self.ginibre(n);
        g.add(&g.adjoint()).scale_re(0.5)
    }

    /// Random positive semi-definite matrix G G†, unnormalized.
    pub fn psd(&mut self, n: usize) -> CMatrix {
        let g = self.ginibre(n);
        g.mul(&g.adjoint())
    }

    /// Full-rank random density matrix G G† / Tr(G G†) (Hilbert-Schmidt /
    /// Ginibre ensemble).
    pub fn density_matrix(&mut self, dims: BipartiteDims) -> DensityMatrix {
        let n = dims.total();
        let p = self.psd(n);
        let tr = p.trace().re;
        let mat = p.scale_re(1.0 / tr).symmetrized();
        DensityMatrix::new(mat, dims).expect("normalized Gram matrix is a valid state")
    }

    /// Haar-ish random unit vector (Gaussian direction, normalized).
    pub fn pure_state(&mut self, n: usize) -> Vec<C64> {
        let mut v: Vec<C64> = (0..n)
            .map(|_| C64::new(self.gaussian(), self.gaussian()))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let d = BipartiteDims::new(3, 3).unwrap();
        let a = StateSampler::with_seed(7).density_matrix(d);
        let b = StateSampler::with_seed(7).density_matrix(d);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn different_seed_different_draws() {
        let d = BipartiteDims::new(2, 2).unwrap();
        let a = StateSampler::with_seed(1).density_matrix(d);
        let b = StateSampler::with_seed(2).density_matrix(d);
        assert!(a.matrix().max_abs_diff(b.matrix()) > 1e-6);
    }

    #[test]
    fn density_draws_validate() {
        let mut s = StateSampler::with_seed(100);
        for (d1, d2) in [(2, 2), (3, 2), (3, 3)] {
            let d = BipartiteDims::new(d1, d2).unwrap();
            for _ in 0..25 {
                let rho = s.density_matrix(d);
                let spec = rho.spectrum().unwrap();
                assert!(spec[0] > -1e-12);
                assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pure_states_are_normalized() {
        let mut s = StateSampler::with_seed(8);
        let v = s.pure_state(6);
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
