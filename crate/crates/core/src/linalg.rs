//! Dense exact linear algebra over the rationals.

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch")]
    Shape,
}

/// Inertia of a symmetric matrix: counts of positive, negative and zero squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape);
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &pivot;
                for c in col..n {
                    let v = &f * &a[(col, c)];
                    a[(r, c)] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(LinalgError::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = a[(col, col)].recip();
            for c in 0..n {
                a[(col, c)] *= &pivot;
                inv[(col, c)] *= &pivot;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let (u, v) = (&f * &a[(col, c)], &f * &inv[(col, c)]);
                    a[(r, c)] -= u;
                    inv[(r, c)] -= v;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` when the system is consistent; returns one solution.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let (m, n) = (self.rows, self.cols);
        let mut a = Matrix::zeros(m, n + 1);
        for i in 0..m {
            for j in 0..n {
                a[(i, j)] = self[(i, j)].clone();
            }
            a[(i, n)] = b[i].clone();
        }
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..m).find(|&r| !a[(r, col)].is_zero()) else { continue };
            a.swap_rows(p, row);
            let inv = a[(row, col)].recip();
            for c in 0..=n {
                a[(row, c)] *= &inv;
            }
            for r in 0..m {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    for c in 0..=n {
                        let v = &f * &a[(row, c)];
                        a[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m {
                break;
            }
        }
        if (row..m).any(|r| !a[(r, n)].is_zero()) {
            return None;
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[(r, n)].clone();
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !a[(r, col)].is_zero()) else { continue };
            a.swap_rows(p, row);
            for r in row + 1..self.rows {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &a[(row, col)];
                for c in col..self.cols {
                    let v = &f * &a[(row, c)];
                    a[(r, c)] -= v;
                }
            }
            row += 1;
        }
        row
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Inertia by congruent diagonalization.
///
/// Symmetric Gaussian elimination; when no nonzero diagonal pivot remains,
/// a 2×2 block `[[a, b], [b, c]]` with `b ≠ 0` is split off instead.
pub fn inertia(m: &Matrix) -> Result<Inertia, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut a = m.clone();
    let n = a.rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    while !alive.is_empty() {
        if let Some(pos) = alive.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = alive.swap_remove(pos);
            let d = a[(p, p)].clone();
            if d.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for &i in &alive {
                if a[(i, p)].is_zero() {
                    continue;
                }
                let f = &a[(i, p)] / &d;
                for &j in &alive {
                    let v = &f * &a[(p, j)];
                    a[(i, j)] -= v;
                }
            }
            continue;
        }
        // all remaining diagonal entries vanish
        let pair = alive.iter().enumerate().find_map(|(x, &i)| {
            alive[x + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
        });
        let Some((p, q)) = pair else {
            out.zero += alive.len();
            break;
        };
        // block [[0, b], [b, 0]] is one positive and one negative square
        out.positive += 1;
        out.negative += 1;
        alive.retain(|&k| k != p && k != q);
        let b = a[(p, q)].clone();
        // block inverse is [[0, 1/b], [1/b, 0]]
        let inv_b = b.recip();
        for &i in &alive {
            let (ip, iq) = (a[(i, p)].clone(), a[(i, q)].clone());
            if ip.is_zero() && iq.is_zero() {
                continue;
            }
            for &j in &alive {
                let (pj, qj) = (a[(p, j)].clone(), a[(q, j)].clone());
                // subtract [ip iq] * B^{-1} * [pj; qj]
                let v = (&ip * &qj + &iq * &pj) * &inv_b;
                a[(i, j)] -= v;
            }
        }
    }
    Ok(out)
}

pub fn signature(m: &Matrix) -> Result<i64, LinalgError> {
    inertia(m).map(|i| i.signature())
}
