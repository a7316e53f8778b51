//! Dense exact matrices over ℚ(ζ₈) and Gaussian elimination.
//!
//! Pivots are the first nonzero entry in column order; over an exact field no
//! other pivoting strategy is needed.

use std::fmt;

use crate::scalar::Cyclotomic8;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Cyclotomic8::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic8::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic8>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
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

    pub fn row(&self, r: usize) -> &[Cyclotomic8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Cyclotomic8> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[Cyclotomic8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic8::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic8) -> Cyclotomic8) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: &Cyclotomic8) -> Self {
        self.map(|x| if x.is_zero() { Cyclotomic8::zero() } else { x * s })
    }

    /// Panics on shape mismatch; callers check shapes.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Product skipping zero entries, so sparse operands stay cheap.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * other.cols + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic8]) -> Vec<Cyclotomic8> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Cyclotomic8::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(found, pivot_row);
            let inv = self[(pivot_row, col)].inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = &self[(pivot_row, c)] * &inv;
                self[(pivot_row, c)] = v;
            }
            for r in 0..self.rows {
                if r == pivot_row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    if self[(pivot_row, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(pivot_row, c)];
                    self[(r, c)] -= &delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// A basis of the right null space `{v : A v = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Cyclotomic8>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic8::zero(); self.cols];
                v[f] = Cyclotomic8::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&reduced[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Cyclotomic8::one()
            } else {
                Cyclotomic8::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Option<Cyclotomic8> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Cyclotomic8::one();
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Some(Cyclotomic8::zero());
            };
            if found != col {
                m.swap_rows(found, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for c in col..n {
                    if m[(col, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(col, c)];
                    m[(r, c)] -= &delta;
                }
            }
        }
        Some(det)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Cyclotomic8;
    fn index(&self, (r, c): (usize, usize)) -> &Cyclotomic8 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyclotomic8 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Cyclotomic8::from_integer(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_and_null_space() {
        let m = int_matrix(&[&[1, 2, 1], &[2, 4, 0], &[3, 6, 0]]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Cyclotomic8::is_zero));
        // Free column 1: v = (-2, 1, 0).
        assert_eq!(ns[0], vec![Cyclotomic8::from_integer(-2), Cyclotomic8::one(), Cyclotomic8::zero()]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = int_matrix(&[&[0, 1], &[1, 1]]);
        assert_eq!(m.determinant(), Some(Cyclotomic8::from_integer(-1)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(int_matrix(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).determinant(), Some(Cyclotomic8::zero()));
    }

    #[test]
    fn complex_entries() {
        let i = Cyclotomic8::i();
        let m = Matrix::from_rows(vec![vec![Cyclotomic8::zero(), i.clone()], vec![-&i, Cyclotomic8::zero()]]).unwrap();
        assert_eq!(m.mul(&m), Matrix::identity(2));
        assert_eq!(m.conjugate_transpose(), m);
        assert_eq!(m.determinant(), Some(Cyclotomic8::from_integer(-1)));
    }
}
