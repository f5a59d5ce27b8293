//! Exact dense linear algebra over `QScalar`: row reduction and kernel bases.

use crate::scalar::QScalar;

/// Rectangular matrix with exact entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<QScalar>,
    radicand: u64,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, radicand: u64) -> Self {
        Matrix { rows, cols, entries: vec![QScalar::zero(radicand); rows * cols], radicand }
    }

    pub fn from_rows(rows: Vec<Vec<QScalar>>, radicand: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect(), radicand }
    }

    pub fn identity(n: usize, radicand: u64) -> Self {
        let mut m = Matrix::zero(n, n, radicand);
        for i in 0..n {
            *m.at_mut(i, i) = QScalar::one(radicand);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &QScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut QScalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[QScalar]) -> Vec<QScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QScalar::zero(self.radicand);
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.at(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivot choice is the first exactly nonzero entry.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.at(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).inv().expect("pivot is nonzero");
            for j in col..self.cols {
                *self.at_mut(row, j) = self.at(row, j) * &inv;
            }
            for i in 0..self.rows {
                if i != row && !self.at(i, col).is_zero() {
                    let factor = self.at(i, col).clone();
                    for j in col..self.cols {
                        *self.at_mut(i, j) = &(self.at(i, j).clone()) - &(&factor * self.at(row, j));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Exact basis of the right null space. Empty for injective matrices.
    pub fn kernel_basis(&self) -> Vec<Vec<QScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set.contains(j)).collect();
        free.iter()
            .map(|&fj| {
                let mut v = vec![QScalar::zero(self.radicand); self.cols];
                v[fj] = QScalar::one(self.radicand);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.at(row, fj);
                }
                v
            })
            .collect()
    }
}
