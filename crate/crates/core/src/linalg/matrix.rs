use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Matrices with more entries than this are stored sparsely by default.
pub const SPARSE_THRESHOLD: usize = 10_000;

#[derive(Clone)]
enum Store {
    Dense(Vec<BigInt>),
    /// Row lists sorted by column, zero entries never stored.
    Sparse(Vec<Vec<(usize, BigInt)>>),
}

/// An arbitrary-precision integer matrix with dense or sparse storage.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    store: Store,
}

static ZERO: BigInt = BigInt::ZERO;

impl IntMatrix {
    /// Zero matrix; storage chosen by [`SPARSE_THRESHOLD`].
    pub fn zeros(rows: usize, cols: usize) -> Self {
        if rows.saturating_mul(cols) > SPARSE_THRESHOLD {
            Self::sparse_zeros(rows, cols)
        } else {
            Self::dense_zeros(rows, cols)
        }
    }

    pub fn dense_zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, store: Store::Dense(vec![BigInt::zero(); rows * cols]) }
    }

    pub fn sparse_zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, store: Store::Sparse(vec![Vec::new(); rows]) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from small-integer rows.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, BigInt::from(v));
                }
            }
        }
        m
    }

    /// Builds a dense matrix from rows of big integers.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        IntMatrix { rows: r, cols, store: Store::Dense(data) }
    }

    /// Builds a sparse matrix from sorted-or-unsorted row lists.
    pub fn from_sparse_rows(rows: Vec<Vec<(usize, BigInt)>>, cols: usize) -> Self {
        let r = rows.len();
        let rows = rows
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    assert!(c < cols, "column out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        IntMatrix { rows: r, cols, store: Store::Sparse(rows) }
    }

    pub fn from_columns(cols: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match &self.store {
            Store::Dense(d) => &d[i * self.cols + j],
            Store::Sparse(r) => match r[i].binary_search_by_key(&j, |e| e.0) {
                Ok(k) => &r[i][k].1,
                Err(_) => &ZERO,
            },
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let cols = self.cols;
        match &mut self.store {
            Store::Dense(d) => d[i * cols + j] = v,
            Store::Sparse(r) => {
                let row = &mut r[i];
                match row.binary_search_by_key(&j, |e| e.0) {
                    Ok(k) => {
                        if v.is_zero() {
                            row.remove(k);
                        } else {
                            row[k].1 = v;
                        }
                    }
                    Err(k) => {
                        if !v.is_zero() {
                            row.insert(k, (j, v));
                        }
                    }
                }
            }
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row_nonzeros(&self, i: usize) -> Vec<(usize, &BigInt)> {
        match &self.store {
            Store::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            Store::Sparse(r) => r[i].iter().map(|(c, v)| (*c, v)).collect(),
        }
    }

    /// Row lists of nonzero entries (owned).
    pub fn to_sparse_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.rows)
            .map(|i| self.row_nonzeros(i).into_iter().map(|(c, v)| (c, v.clone())).collect())
            .collect()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn nnz(&self) -> usize {
        match &self.store {
            Store::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Store::Sparse(r) => r.iter().map(|x| x.len()).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = if self.is_sparse() {
            Self::sparse_zeros(self.cols, self.rows)
        } else {
            Self::dense_zeros(self.cols, self.rows)
        };
        for i in 0..self.rows {
            for (j, v) in self.row_nonzeros(i) {
                t.set(j, i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        let other_rows: Vec<Vec<(usize, &BigInt)>> =
            (0..other.rows).map(|k| other.row_nonzeros(k)).collect();
        for i in 0..self.rows {
            let mut acc = vec![BigInt::zero(); other.cols];
            for (k, a) in self.row_nonzeros(i) {
                for (j, b) in &other_rows[k] {
                    acc[*j] += a * *b;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `A·x`.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row_nonzeros(i).into_iter().fold(BigInt::zero(), |acc, (j, v)| acc + v * &x[j]))
            .collect()
    }

    /// `A·x` for a rational vector.
    pub fn mul_vec_rat(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row_nonzeros(i).into_iter().fold(BigRational::zero(), |acc, (j, v)| {
                    acc + BigRational::from_integer(v.clone()) * &x[j]
                })
            })
            .collect()
    }

    /// `yᵀ·A` for a rational row vector `y`.
    pub fn left_mul_rat(&self, y: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![BigRational::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (j, v) in self.row_nonzeros(i) {
                out[j] += yi * BigRational::from_integer(v.clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Stacks `[self | other]` horizontally.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut rows = self.to_sparse_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in other.row_nonzeros(i) {
                row.push((self.cols + j, v.clone()));
            }
        }
        let cols = self.cols + other.cols;
        if self.is_sparse() || other.is_sparse() || self.rows * cols > SPARSE_THRESHOLD {
            Self::from_sparse_rows(rows, cols)
        } else {
            let mut m = Self::dense_zeros(self.rows, cols);
            for (i, row) in rows.into_iter().enumerate() {
                for (j, v) in row {
                    m.set(i, j, v);
                }
            }
            m
        }
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| {
                let a = self.row_nonzeros(i);
                let b = other.row_nonzeros(i);
                a == b
            })
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for i in 0..self.rows {
                write!(f, "\n  [")?;
                for j in 0..self.cols {
                    if j > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", self.get(i, j))?;
                }
                write!(f, "]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_and_dense_agree() {
        let a = IntMatrix::from_i64(&[&[1, 0, 2], &[0, -3, 0]]);
        let mut s = IntMatrix::sparse_zeros(2, 3);
        s.set(0, 0, 1.into());
        s.set(0, 2, 2.into());
        s.set(1, 1, (-3).into());
        assert_eq!(a, s);
        assert_eq!(s.nnz(), 3);
        s.set(0, 2, 0.into());
        assert_eq!(s.nnz(), 2);
        assert_eq!(*s.get(0, 2), BigInt::zero());
    }

    #[test]
    fn storage_threshold() {
        assert!(!IntMatrix::zeros(100, 100).is_sparse());
        assert!(IntMatrix::zeros(101, 100).is_sparse());
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), IntMatrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.determinant(), BigInt::from(-2));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = IntMatrix::from_i64(&[&[0, 2, 1], &[3, -1, 4], &[5, 0, -2]]);
        // cofactor expansion along row 0
        let det = 0 * (-1 * -2 - 4 * 0) - 2 * (3 * -2 - 4 * 5) + 1 * (3 * 0 - (-1) * 5);
        assert_eq!(a.determinant(), BigInt::from(det));
    }
}
