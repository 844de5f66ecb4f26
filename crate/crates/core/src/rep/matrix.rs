//! Dense exact rational matrices with fraction-free rank computation.

use crate::num::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y.clone();
        }
        out
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= y.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= c.clone();
        }
        out
    }

    /// Exact rank by Bareiss fraction-free elimination over the integers
    /// after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    let d = self[(i, j)].denom().clone();
                    lcm = num_integer::lcm(lcm, d);
                }
                (0..self.cols)
                    .map(|j| {
                        let v = &self[(i, j)];
                        v.numer() * (&lcm / v.denom())
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut row = 0;
        for col in 0..self.cols {
            // pivot search
            let Some(p) = (row..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            for i in row + 1..self.rows {
                for j in col + 1..self.cols {
                    let num = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                    m[i][j] = num / &prev;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Writes `block` into `self` with top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &QMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = self[(r0 + i, c0 + j)].clone() + block[(i, j)].clone();
                self[(r0 + i, c0 + j)] = v;
            }
        }
    }

    pub fn max_abs_num_bits(&self) -> u64 {
        self.data.iter().map(|x| x.numer().abs().bits()).max().unwrap_or(0)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        let c = self.cols;
        &mut self.data[i * c + j]
    }
}
