//! Dense complex matrices, row-major, sized for desk-scale problems.
//!
//! Nothing here is tuned for large dimensions on purpose: every system this
//! crate touches is at most a qutrit pair (9x9), where naive O(n^3) products
//! are instantaneous and a flat `Vec` keeps the indexing honest.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Dense complex matrix with row-major storage.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from a row-major list of rows; every row must have equal length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows: expected width {c}"
        );
        CMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    /// Builds an n x n matrix from `(row, col, value)` triples, zeros elsewhere.
    pub fn from_entries(n: usize, entries: &[(usize, usize, C64)]) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for &(i, j, v) in entries {
            m[(i, j)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate, no transpose.
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.conj();
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn mul(&self, other: &CMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest |a_ij - conj(a_ji)| over all pairs; 0 for an exactly Hermitian matrix.
    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Replaces the matrix by (A + A†)/2. Cheap insurance against floating-point
    /// drift before an eigensolve; exact Hermitian inputs are unchanged.
    pub fn symmetrized(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in i..self.cols {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Index of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
            .map(|p| (p / self.cols, p % self.cols))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let v = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product: `tensor(a, b)[(i1*rb + i2, j1*cb + j2)] = a[(i1, j1)] * b[(i2, j2)]`.
///
/// With `a` acting on the first subsystem and `b` on the second, this realises
/// the product-basis ordering used everywhere in the crate: the row index of a
/// d1 ⊗ d2 system is `i1 * d2 + i2`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    for i1 in 0..ra {
        for j1 in 0..ca {
            let av = a[(i1, j1)];
            if av == C64::new(0.0, 0.0) {
                continue;
            }
            for i2 in 0..rb {
                for j2 in 0..cb {
                    out[(i1 * rb + i2, j1 * cb + j2)] = av * b[(i2, j2)];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn mul_against_hand_product() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(2.0, -1.0), c(3.0, 0.0)],
        ]);
        let b = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 1.0), c(0.0, -2.0)],
        ]);
        let p = a.mul(&b);
        // (0,0): 1*0 + i*(1+i) = -1 + i
        assert_eq!(p[(0, 0)], c(-1.0, 1.0));
        // (0,1): 1*1 + i*(-2i) = 3
        assert_eq!(p[(0, 1)], c(3.0, 0.0));
        // (1,0): (2-i)*0 + 3*(1+i) = 3+3i
        assert_eq!(p[(1, 0)], c(3.0, 3.0));
        // (1,1): (2-i)*1 + 3*(-2i) = 2 - 7i
        assert_eq!(p[(1, 1)], c(2.0, -7.0));
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(3.0, 4.0)],
            vec![c(5.0, 6.0), c(7.0, 8.0)],
        ]);
        let ad = a.adjoint();
        assert_eq!(ad[(0, 1)], c(5.0, -6.0));
        assert_eq!(ad[(1, 0)], c(3.0, -4.0));
    }

    #[test]
    fn tensor_unit_matrix_places_identity_block() {
        // E01 (3x3) ⊗ I2 has ones exactly at (0,2) and (1,3).
        let mut e01 = CMatrix::zeros(3, 3);
        e01[(0, 1)] = c(1.0, 0.0);
        let t = tensor(&e01, &CMatrix::identity(2));
        let mut expected = CMatrix::zeros(6, 6);
        expected[(0, 2)] = c(1.0, 0.0);
        expected[(1, 3)] = c(1.0, 0.0);
        assert_eq!(t, expected);
    }

    #[test]
    fn tensor_trace_is_product_of_traces() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 1.0)],
            vec![c(0.5, 0.0), c(-1.0, 0.0)],
        ]);
        let b = CMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 3.0)],
            vec![c(0.0, 0.0), c(4.0, 0.0)],
        ]);
        let t = tensor(&a, &b);
        let lhs = t.trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn symmetrized_fixes_drift_and_keeps_hermitian_fixed() {
        let mut a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 1.0)],
            vec![c(2.0, -1.0), c(3.0, 0.0)],
        ]);
        assert_eq!(a.symmetrized(), a);
        a[(0, 1)] += c(1e-13, 0.0);
        let s = a.symmetrized();
        assert!(s.hermiticity_defect() == 0.0);
        assert!(a.max_abs_diff(&s) < 1e-12);
    }
}
