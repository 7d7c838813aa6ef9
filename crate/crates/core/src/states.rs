//! Reference state families used throughout the toolkit and its test suites.
//!
//! * Family 1 (two qubits): X-shaped states diag(a, b, b, a) with a single
//!   coherence f between the middle levels, a + b = 1/2. Positive iff
//!   |f| <= b, NPT iff |f| > a; the partial-transpose spectrum is
//!   {a - |f|, b, b, a + |f|}.
//! * Family 2 (qutrit-qubit): a one-parameter mixture of two rank-one
//!   projectors on a 6-dimensional space, NPT for every alpha in [0, 1].

use crate::bipartite::{BipartiteDims, DensityMatrix};
use crate::cmatrix::{CMatrix, C64};
use crate::error::{CoreError, Result};

/// Parameters of the two-qubit family: outer diagonal weight `a` (the inner
/// weight is b = 1/2 - a) and middle coherence `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Family1Params {
    pub a: f64,
    pub f: C64,
}

impl Family1Params {
    /// Inner diagonal weight b = 1/2 - a.
    pub fn b(&self) -> f64 {
        0.5 - self.a
    }
}

/// Parameter of the qutrit-qubit family: mixing weight `alpha` in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Family2Params {
    pub alpha: f64,
}

/// Build the two-qubit family member diag(a, b, b, a) + f |01><10| + h.c.
///
/// Requires 0 <= a <= 1/2 and |f| <= b (positivity); violations are reported
/// as [`CoreError::InvalidParameter`].
pub fn build_family1(p: &Family1Params) -> Result<DensityMatrix> {
    let a = p.a;
    let b = p.b();
    if !a.is_finite() || !(0.0..=0.5).contains(&a) {
        return Err(CoreError::InvalidParameter(format!(
            "family-1 weight a must lie in [0, 1/2], got {a}"
        )));
    }
    if !p.f.re.is_finite() || !p.f.im.is_finite() {
        return Err(CoreError::InvalidParameter(
            "family-1 coherence f must be finite".into(),
        ));
    }
    if p.f.norm() > b + 1e-12 {
        return Err(CoreError::InvalidParameter(format!(
            "family-1 coherence |f| = {} exceeds b = {b}, state not positive",
            p.f.norm()
        )));
    }
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = C64::new(a, 0.0);
    m[(1, 1)] = C64::new(b, 0.0);
    m[(2, 2)] = C64::new(b, 0.0);
    m[(3, 3)] = C64::new(a, 0.0);
    m[(1, 2)] = p.f;
    m[(2, 1)] = p.f.conj();
    DensityMatrix::new(m, BipartiteDims::new(2, 2)?)
}

/// Closed-form concurrence of the family-1 member: max(0, |f| - a).
///
/// This is the reference expression for the family and the quantity the
/// detection tables tabulate; note that the spin-flip construction in
/// [`crate::detect::wootters_concurrence`] evaluates to exactly twice this
/// value on the family (see that function's documentation).
pub fn family1_concurrence(p: &Family1Params) -> f64 {
    (p.f.norm() - p.a).max(0.0)
}

/// Build the qutrit-qubit family member
/// alpha |u><u| + (1 - alpha) |v><v| with
/// |u> = (|01> + |20>)/sqrt(2), |v> = (|10> + |21>)/sqrt(2)
/// (product-basis indices {1, 4} and {2, 5} of the 6-dimensional space).
pub fn build_family2(p: &Family2Params) -> Result<DensityMatrix> {
    let al = p.alpha;
    if !al.is_finite() || !(0.0..=1.0).contains(&al) {
        return Err(CoreError::InvalidParameter(format!(
            "family-2 weight alpha must lie in [0, 1], got {al}"
        )));
    }
    let mut m = CMatrix::zeros(6, 6);
    let half_a = C64::new(al / 2.0, 0.0);
    let half_b = C64::new((1.0 - al) / 2.0, 0.0);
    for &(i, j) in &[(1usize, 1usize), (1, 4), (4, 1), (4, 4)] {
        m[(i, j)] = half_a;
    }
    for &(i, j) in &[(2usize, 2usize), (2, 5), (5, 2), (5, 5)] {
        m[(i, j)] = half_b;
    }
    DensityMatrix::new(m, BipartiteDims::new(3, 2)?)
}

/// The maximally entangled two-qubit state (|00> + |11>)/sqrt(2) as a density
/// matrix; handy as a fixed point for spectral sanity checks.
pub fn bell_phi_plus() -> DensityMatrix {
    let mut m = CMatrix::zeros(4, 4);
    let h = C64::new(0.5, 0.0);
    m[(0, 0)] = h;
    m[(0, 3)] = h;
    m[(3, 0)] = h;
    m[(3, 3)] = h;
    DensityMatrix::new(m, BipartiteDims::new(2, 2).unwrap())
        .expect("Bell state is a valid density matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family1_partial_transpose_spectrum() {
        for &(a, fr, fi) in &[
            (0.1_f64, 0.2_f64, 0.1_f64),
            (0.25, 0.25, 0.0),
            (0.2, -0.15, 0.2),
            (0.0, 0.0, 0.5),
        ] {
            let p = Family1Params {
                a,
                f: C64::new(fr, fi),
            };
            let rho = build_family1(&p).unwrap();
            let spec = rho.pt_spectrum().unwrap();
            let fm = p.f.norm();
            let b = p.b();
            let mut want = [a - fm, b, b, a + fm];
            want.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (got, w) in spec.iter().zip(want.iter()) {
                assert!((got - w).abs() < 1e-12, "a={a}, f=({fr},{fi}): {spec:?}");
            }
        }
    }

    #[test]
    fn family1_concurrence_closed_form() {
        let p = Family1Params {
            a: 0.1,
            f: C64::new(0.3, 0.0),
        };
        assert!((family1_concurrence(&p) - 0.2).abs() < 1e-15);
        let sep = Family1Params {
            a: 0.25,
            f: C64::new(0.2, 0.0),
        };
        assert_eq!(family1_concurrence(&sep), 0.0);
    }

    #[test]
    fn family1_rejects_non_positive_parameters() {
        assert!(build_family1(&Family1Params {
            a: 0.1,
            f: C64::new(0.45, 0.0),
        })
        .is_err());
        assert!(build_family1(&Family1Params {
            a: 0.6,
            f: C64::new(0.0, 0.0),
        })
        .is_err());
    }

    #[test]
    fn family1_coherence_phase_does_not_move_the_spectrum() {
        let base = build_family1(&Family1Params {
            a: 0.15,
            f: C64::new(0.3, 0.0),
        })
        .unwrap();
        let rotated = build_family1(&Family1Params {
            a: 0.15,
            f: C64::from_polar(0.3, 1.234),
        })
        .unwrap();
        let s1 = base.pt_spectrum().unwrap();
        let s2 = rotated.pt_spectrum().unwrap();
        for (x, y) in s1.iter().zip(s2.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn family2_is_npt_on_the_whole_interval() {
        for step in 0..=10 {
            let al = step as f64 / 10.0;
            let rho = build_family2(&Family2Params { alpha: al }).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-14);
            let pt_min = rho.pt_spectrum().unwrap()[0];
            assert!(
                pt_min < -1e-3,
                "alpha={al}: expected a clearly negative PT eigenvalue, got {pt_min}"
            );
        }
    }

    #[test]
    fn family2_rejects_out_of_range_weight() {
        assert!(build_family2(&Family2Params { alpha: -0.1 }).is_err());
        assert!(build_family2(&Family2Params { alpha: 1.1 }).is_err());
    }

    #[test]
    fn bell_state_partial_transpose_reaches_the_lower_edge() {
        let spec = bell_phi_plus().pt_spectrum().unwrap();
        assert!((spec[0] + 0.5).abs() < 1e-12);
        assert!((spec[3] - 0.5).abs() < 1e-12);
    }
}
