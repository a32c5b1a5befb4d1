//! Dense matrices over exact rationals.
//!
//! Everything downstream needs only ranks, nullspaces and cokernels, but
//! they must be *canonical*: kernel and cokernel bases are read off the
//! reduced row echelon form with a fixed scan order, so identical inputs
//! always produce identical matrices.

use std::fmt;

use num::rational::Rational64;
use num::{One, Zero};

pub type Rat = Rational64;

#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = QMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        QMat::from_fn(r, c, |i, j| Rat::from_integer(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = QMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&QMat]) -> QMat {
        let cols = parts.first().map_or(0, |m| m.cols);
        assert!(
            parts.iter().all(|m| m.cols == cols),
            "vstack column mismatch"
        );
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = QMat::zeros(rows, cols);
        let mut offset = 0;
        for m in parts {
            for r in 0..m.rows {
                for c in 0..cols {
                    out.set(offset + r, c, m.get(r, c));
                }
            }
            offset += m.rows;
        }
        out
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[&QMat]) -> QMat {
        let rows = parts.first().map_or(0, |m| m.rows);
        assert!(parts.iter().all(|m| m.rows == rows), "hstack row mismatch");
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = QMat::zeros(rows, cols);
        let mut offset = 0;
        for m in parts {
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, offset + c, m.get(r, c));
                }
            }
            offset += m.cols;
        }
        out
    }

    pub fn block_diag(parts: &[&QMat]) -> QMat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = QMat::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.set(ro + r, co + c, m.get(r, c));
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns in order. The
    /// pivot search takes the first nonzero entry scanning down, so the
    /// result is deterministic.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(p, c));
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical kernel inclusion `k^c → k^cols`: one column per free
    /// column of the RREF, with a `1` in that coordinate.
    pub fn kernel_basis(&self) -> QMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMat::zeros(self.cols, free.len());
        for (t, &q) in free.iter().enumerate() {
            out.set(q, t, Rat::one());
            for (s, &p) in pivots.iter().enumerate() {
                out.set(p, t, -r.get(s, q));
            }
        }
        out
    }

    /// Canonical cokernel projection `k^rows → k^c` whose kernel is the
    /// column space of `self`. Built from the RREF of the transpose: the
    /// free coordinates span a complement of the image, and the projection
    /// subtracts the image part determined by the pivot coordinates.
    pub fn coker_projection(&self) -> QMat {
        let (r, pivots) = self.transpose().rref();
        let free: Vec<usize> = (0..self.rows).filter(|c| !pivots.contains(c)).collect();
        let mut out = QMat::zeros(free.len(), self.rows);
        for (t, &q) in free.iter().enumerate() {
            out.set(t, q, Rat::one());
            for (s, &p) in pivots.iter().enumerate() {
                out.set(t, p, -r.get(s, q));
            }
        }
        out
    }

    /// Solves `self · x = rhs` when `self` is square and invertible.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, rhs.len(), "rhs length mismatch");
        if self.rows != self.cols {
            return None;
        }
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for (r, &value) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, value);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.contains(&self.cols) {
            return None;
        }
        Some((0..self.cols).map(|r| red.get(r, self.cols)).collect())
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                det = -det;
                for c in 0..m.cols {
                    let (a, b) = (m.get(col, c), m.get(p, c));
                    m.set(col, c, b);
                    m.set(p, c, a);
                }
            }
            let pivot = m.get(col, col);
            det *= pivot;
            let inv = pivot.recip();
            for r in col + 1..m.rows {
                let factor = m.get(r, col) * inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> QMat {
        QMat::from_i64_rows(rows)
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.get(0, 0), Rat::one());
        assert_eq!(r.get(1, 0), Rat::zero());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn coker_projection_kills_image_and_is_surjective() {
        let a = m(&[vec![1, 0], vec![1, 1], vec![0, 1]]);
        let pi = a.coker_projection();
        assert_eq!(pi.rows(), 1);
        assert!(pi.mul(&a).is_zero());
        assert_eq!(pi.rank(), 1);

        let invertible = m(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(invertible.coker_projection().rows(), 0);

        let zero = QMat::zeros(3, 0);
        let pi0 = zero.coker_projection();
        assert_eq!(pi0.rows(), 3);
        assert_eq!(pi0, QMat::identity(3));
    }

    #[test]
    fn solve_and_det() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(a.det(), Rat::one());
        let x = a
            .solve(&[Rat::from_integer(3), Rat::from_integer(2)])
            .unwrap();
        assert_eq!(x, vec![Rat::one(), Rat::one()]);

        let singular = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), Rat::zero());
        assert!(singular.solve(&[Rat::one(), Rat::one()]).is_none());
    }

    #[test]
    fn stacking_shapes() {
        let a = m(&[vec![1, 2]]);
        let b = m(&[vec![3, 4], vec![5, 6]]);
        let v = QMat::vstack(&[&a, &b]);
        assert_eq!((v.rows(), v.cols()), (3, 2));
        assert_eq!(v.get(2, 1), Rat::from_integer(6));
        let h = QMat::hstack(&[&b, &b]);
        assert_eq!((h.rows(), h.cols()), (2, 4));
        let d = QMat::block_diag(&[&a, &b]);
        assert_eq!((d.rows(), d.cols()), (3, 4));
        assert_eq!(d.get(0, 0), Rat::one());
        assert_eq!(d.get(1, 2), Rat::from_integer(3));
    }
}
