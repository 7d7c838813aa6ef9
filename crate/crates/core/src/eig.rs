//! Deterministic dense Hermitian eigensolver.
//!
//! Cyclic-by-row complex Jacobi iteration. Each rotation first absorbs the
//! phase of the pivot a_pq into column q, reducing the 2x2 subproblem to the
//! real symmetric case, then applies the classic symmetric Jacobi rotation.
//! Quadratic convergence and a fixed sweep order make the spectrum (and the
//! eigenvector columns) a pure function of the input matrix, which the
//! byte-stable report output relies on. At the sizes this crate handles
//! (n <= 9) a handful of sweeps suffices.

use crate::cmatrix::{CMatrix, C64};
use crate::error::{CoreError, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and the unitary of eigenvector columns, so that
/// `a = v * diag(values) * v†`.
///
/// The input must be Hermitian within `tol_herm`; it is symmetrized internally
/// before iterating so roundoff drift cannot leak into the spectrum.
pub fn eigh(a: &CMatrix, tol_herm: f64) -> Result<(Vec<f64>, CMatrix)> {
    if !a.is_square() {
        return Err(CoreError::DimensionMismatch {
            expected: a.rows(),
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if let Some((row, col)) = a.first_non_finite() {
        return Err(CoreError::NonFiniteEntry { row, col });
    }
    let defect = a.hermiticity_defect();
    if defect > tol_herm {
        return Err(CoreError::NotHermitian {
            max_deviation: defect,
        });
    }

    let n = a.rows();
    let mut m = a.symmetrized();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = 1e-14 * scale;

    let mut converged = false;
    let mut last_off = 0.0;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&m);
        last_off = off;
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(CoreError::NoConvergence {
            sweeps: MAX_SWEEPS,
            off: last_off,
        });
    }

    // Ascending sort; stable so degenerate spectra order deterministically.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &CMatrix, tol_herm: f64) -> Result<Vec<f64>> {
    eigh(a, tol_herm).map(|(values, _)| values)
}

/// Hermitian square root of a PSD matrix via its eigensystem. Eigenvalues
/// below zero by roundoff are clamped before the square root.
pub fn sqrt_psd(a: &CMatrix, tol_herm: f64) -> Result<CMatrix> {
    let (values, vectors) = eigh(a, tol_herm)?;
    let n = a.rows();
    let mut out = CMatrix::zeros(n, n);
    for k in 0..n {
        let root = values[k].max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += vectors[(i, k)] * vectors[(j, k)].conj() * root;
            }
        }
    }
    Ok(out)
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += 2.0 * m[(p, q)].norm_sqr();
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating m[(p, q)], with eigenvector accumulation.
fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r <= f64::MIN_POSITIVE {
        m[(p, q)] = C64::new(0.0, 0.0);
        m[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let n = m.rows();
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // phase = e^{-i arg(apq)}; multiplying column q by it makes the pivot real r.
    let phase = apq.conj() / r;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        // Asymptotic branch; avoids overflow in theta^2.
        0.5 / theta
    } else if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = m[(i, p)];
        let aiq = m[(i, q)] * phase;
        let new_p = aip * c - aiq * s;
        let new_q = aip * s + aiq * c;
        m[(i, p)] = new_p;
        m[(i, q)] = new_q;
        m[(p, i)] = new_p.conj();
        m[(q, i)] = new_q.conj();
    }
    m[(p, p)] = C64::new(app - t * r, 0.0);
    m[(q, q)] = C64::new(aqq + t * r, 0.0);
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)] * phase;
        v[(i, p)] = vip * c - viq * s;
        v[(i, q)] = vip * s + viq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::StateSampler;

    const TOL: f64 = 1e-10;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_is_left_alone() {
        let m = CMatrix::from_rows(&[
            vec![c(3.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]);
        let (vals, vecs) = eigh(&m, TOL).unwrap();
        assert_eq!(vals, vec![-1.0, 3.0]);
        // Stable sort: eigenvector of -1 is e1, of 3 is e0.
        assert_eq!(vecs[(1, 0)], c(1.0, 0.0));
        assert_eq!(vecs[(0, 1)], c(1.0, 0.0));
    }

    #[test]
    fn known_complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = CMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ]);
        let vals = eigvalsh(&m, TOL).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn reconstructs_random_hermitian() {
        let mut sampler = StateSampler::with_seed(11);
        for n in 2..=9 {
            let m = sampler.hermitian(n);
            let (vals, vecs) = eigh(&m, TOL).unwrap();
            let mut rebuilt = CMatrix::zeros(n, n);
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        rebuilt[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() * vals[k];
                    }
                }
            }
            assert!(
                m.max_abs_diff(&rebuilt) < 1e-11 * m.frobenius_norm().max(1.0),
                "reconstruction failed at n = {n}"
            );
            // Eigenvector unitarity.
            let gram = vecs.adjoint().mul(&vecs);
            assert!(gram.max_abs_diff(&CMatrix::identity(n)) < 1e-12);
            // Ascending order.
            for w in vals.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn eigenvalues_are_deterministic() {
        let mut sampler = StateSampler::with_seed(4242);
        let m = sampler.hermitian(7);
        let a = eigvalsh(&m, TOL).unwrap();
        let b = eigvalsh(&m, TOL).unwrap();
        assert_eq!(a, b, "identical inputs must give bit-identical spectra");
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        match eigvalsh(&m, TOL) {
            Err(CoreError::NotHermitian { max_deviation }) => {
                assert!((max_deviation - 2.0).abs() < 1e-15)
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_of_psd_squares_back() {
        let mut sampler = StateSampler::with_seed(5);
        let m = sampler.psd(6);
        let s = sqrt_psd(&m, 1e-8).unwrap();
        assert!(s.hermiticity_defect() < 1e-10);
        assert!(s.mul(&s).max_abs_diff(&m) < 1e-9 * m.frobenius_norm().max(1.0));
    }
}
