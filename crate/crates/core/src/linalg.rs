//! Dense exact linear algebra over ℚ.
//!
//! Elimination is fraction-free: rows are cleared of denominators and reduced
//! with Bareiss' one-step integer elimination, so intermediate entries stay
//! minors of the input and never pick up spurious fractions. Only the final
//! back substitution into reduced row echelon form works in ℚ.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows × columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize { self.rows }

    pub fn cols(&self) -> usize { self.cols }

    pub fn is_square(&self) -> bool { self.rows == self.cols }

    pub fn is_zero(&self) -> bool { self.data.iter().all(Zero::is_zero) }

    pub fn row(&self, i: usize) -> Vec<Scalar> { self.data[i * self.cols..(i + 1) * self.cols].to_vec() }

    pub fn column(&self, j: usize) -> Vec<Scalar> { (0..self.rows).map(|i| self[(i, j)].clone()).collect() }

    pub fn columns(&self) -> Vec<Vec<Scalar>> { (0..self.cols).map(|j| self.column(j)).collect() }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = idx.iter().map(|&j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols)
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

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn echelon(&self) -> Echelon { Echelon::new(self) }

    pub fn rank(&self) -> usize { self.echelon().rank() }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> { self.echelon().kernel() }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let ech = self.echelon();
        (ech.rank() == self.rows).then(|| ech.transform.clone())
    }

    /// Determinant by Bareiss elimination; zero for non-square input.
    pub fn determinant(&self) -> Scalar {
        if !self.is_square() {
            return Scalar::zero();
        }
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        let (mut rows, scales) = integer_rows(self);
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !rows[r][k].is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                rows.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &rows[k][k] * &rows[i][j] - &rows[i][k] * &rows[k][j];
                    rows[i][j] = exact_div(v, &prev);
                }
                rows[i][k] = BigInt::zero();
            }
            prev = rows[k][k].clone();
        }
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        let det = Scalar::new(prev, scale);
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

fn exact_div(v: BigInt, d: &BigInt) -> BigInt {
    let (q, r) = v.div_rem(d);
    assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

/// Clears denominators row by row; returns integer rows and the row scales.
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows);
    let mut scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row = &m.data[i * m.cols..(i + 1) * m.cols];
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scales.push(l);
    }
    (rows, scales)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar { &self.data[i * self.cols + j] }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar { &mut self.data[i * self.cols + j] }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::scalar::format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form `R = E·A` together with the transform `E`.
///
/// Pivot columns are chosen left to right, so the set of pivots (and hence
/// every basis or particular solution derived from it) is deterministic.
#[derive(Clone, Debug)]
pub struct Echelon {
    rref: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(a: &Matrix) -> Self {
        let (rows, cols) = (a.rows, a.cols);
        let aug = a.hstack(&Matrix::identity(rows));
        let width = cols + rows;
        let (mut m, _) = integer_rows(&aug);

        // Fraction-free forward elimination on the first `cols` columns.
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..rows {
                // Rows with a zero in column c are still rescaled so that every
                // entry stays a minor of the input.
                for j in c + 1..width {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = exact_div(v, &prev);
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }

        // Back substitution in ℚ.
        let mut q: Vec<Vec<Scalar>> =
            m.into_iter().map(|row| row.into_iter().map(Scalar::from_integer).collect()).collect();
        for (i, &c) in pivots.iter().enumerate().rev() {
            let inv = q[i][c].recip();
            for x in q[i].iter_mut() {
                *x *= &inv;
            }
            for k in 0..i {
                if q[k][c].is_zero() {
                    continue;
                }
                let f = q[k][c].clone();
                for j in 0..width {
                    if !q[i][j].is_zero() {
                        let d = &f * &q[i][j];
                        q[k][j] -= d;
                    }
                }
            }
        }
        let mut rref = Matrix::zeros(rows, cols);
        let mut transform = Matrix::zeros(rows, rows);
        for (i, row) in q.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                if j < cols {
                    rref[(i, j)] = x;
                } else {
                    transform[(i, j - cols)] = x;
                }
            }
        }
        Echelon { rref, transform, pivots }
    }

    pub fn rank(&self) -> usize { self.pivots.len() }

    pub fn pivots(&self) -> &[usize] { &self.pivots }

    pub fn rref(&self) -> &Matrix { &self.rref }

    pub fn transform(&self) -> &Matrix { &self.transform }

    /// One solution of `A x = b` with every free variable set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let y = self.transform.mul_vec(b);
        if y[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.rref.cols];
        for (i, &c) in self.pivots.iter().enumerate() {
            x[c] = y[i].clone();
        }
        Some(x)
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let cols = self.rref.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Scalar::zero(); cols];
                x[f] = Scalar::one();
                for (i, &c) in self.pivots.iter().enumerate() {
                    x[c] = -self.rref[(i, f)].clone();
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rref_and_transform() {
        let a = m(&[&[0, 2, 4], &[1, 1, 1], &[2, 4, 6]]);
        let e = a.echelon();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(&e.transform * &a, *e.rref());
        assert_eq!(e.rref().row(0), vec![int(1), int(0), int(-1)]);
        assert_eq!(e.rref().row(1), vec![int(0), int(1), int(2)]);
        for k in e.kernel() {
            assert!(a.mul_vec(&k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let e = a.echelon();
        assert_eq!(e.solve(&[int(3), int(6)]), Some(vec![int(3), int(0)]));
        assert_eq!(e.solve(&[int(3), int(5)]), None);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = Matrix::from_rows(vec![
            vec![ratio(1, 2), int(3), int(0)],
            vec![int(1), int(0), ratio(-2, 3)],
            vec![int(4), int(1), int(1)],
        ]);
        // Cofactor expansion along the first row.
        let det = ratio(1, 2) * (int(0) * int(1) - ratio(-2, 3) * int(1))
            - int(3) * (int(1) * int(1) - ratio(-2, 3) * int(4));
        assert_eq!(a.determinant(), det);
        let inv = a.inverse().unwrap();
        assert_eq!(&inv * &a, Matrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), None);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        let a = m(&[&[0, 0, 3, 1], &[0, 0, 6, 2], &[0, 5, 1, 0], &[0, 10, 2, 0]]);
        let e = a.echelon();
        assert_eq!(e.rank(), 2);
        assert_eq!(&e.transform * &a, *e.rref());
        assert_eq!(e.kernel().len(), 2);
    }
}
