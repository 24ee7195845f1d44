//! Dense matrices over `K`.

use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::padic::{min_valuation, PAdicContext, Scalar, Valuation};

/// Row-major matrix of scalars. Serializes as an array of rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from(x)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
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

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
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

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row count");
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_columns(self.rows, &cols).expect("equal column lengths")
    }

    pub fn select_columns(&self, idx: impl IntoIterator<Item = usize>) -> Matrix {
        let cols: Vec<Vec<Scalar>> = idx.into_iter().map(|j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols).expect("equal column lengths")
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= factor * row[src]`
    pub fn sub_row_multiple(&mut self, dst: usize, src: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let t = &self[(src, j)] * factor;
            let x = &self[(dst, j)] - t;
            self[(dst, j)] = x;
        }
    }

    /// `col[dst] -= factor * col[src]`
    pub fn sub_col_multiple(&mut self, dst: usize, src: usize, factor: &Scalar) {
        for i in 0..self.rows {
            let t = &self[(i, src)] * factor;
            let x = &self[(i, dst)] - t;
            self[(i, dst)] = x;
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let x = &self[(i, j)] * factor;
            self[(i, j)] = x;
        }
    }

    pub fn scale_col(&mut self, j: usize, factor: &Scalar) {
        for i in 0..self.rows {
            let x = &self[(i, j)] * factor;
            self[(i, j)] = x;
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Scalar::zero(), |acc, j| acc + &self[(i, j)] * &v[j])
            })
            .collect()
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Scalar::zero();
            };
            if r != k {
                a.swap_rows(r, k);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det = det * &pivot;
            for i in k + 1..n {
                if !a[(i, k)].is_zero() {
                    let f = &a[(i, k)] / &pivot;
                    a.sub_row_multiple(i, k, &f);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for k in 0..n {
            let r = (k..n).find(|&r| !a[(r, k)].is_zero())?;
            a.swap_rows(r, k);
            inv.swap_rows(r, k);
            let pr = a[(k, k)].recip();
            a.scale_row(k, &pr);
            inv.scale_row(k, &pr);
            for i in 0..n {
                if i != k && !a[(i, k)].is_zero() {
                    let f = a[(i, k)].clone();
                    a.sub_row_multiple(i, k, &f);
                    inv.sub_row_multiple(i, k, &f);
                }
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form; returns the matrix and its pivot columns.
    /// Pivots are taken at the first nonzero entry.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(r) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, row);
            let pr = a[(row, col)].recip();
            a.scale_row(row, &pr);
            for i in 0..a.rows {
                if i != row && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    a.sub_row_multiple(i, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space over `K`, as columns.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, f)];
            }
            basis.push(v);
        }
        Matrix::from_columns(self.cols, &basis).expect("kernel vectors")
    }

    /// Solves `self * X = rhs` for a matrix of full column rank.
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let (r, pivots) = self.hstack(rhs).rref();
        if pivots.len() != self.cols || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn min_valuation(&self, ctx: &PAdicContext) -> Valuation {
        min_valuation(ctx, &self.data)
    }

    pub fn is_integral(&self, ctx: &PAdicContext) -> bool {
        self.check_integral(ctx).is_ok()
    }

    pub fn check_integral(&self, ctx: &PAdicContext) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !ctx.is_integral(&self[(i, j)]) {
                    return Err(Error::NonIntegralEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Entrywise reduction modulo `p`.
    pub fn reduce(&self, ctx: &PAdicContext) -> Result<FpMatrix> {
        self.check_integral(ctx)?;
        let cols: Vec<Vec<u64>> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| ctx.residue(&self[(i, j)]).unwrap()).collect())
            .collect();
        Ok(FpMatrix::from_columns(ctx.p(), self.rows, &cols))
    }

    /// Square, integral, with unit determinant.
    pub fn is_unimodular(&self, ctx: &PAdicContext) -> bool {
        self.is_square()
            && self.is_integral(ctx)
            && ctx.val(&self.determinant()) == Valuation::Finite(0)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    let x = &out[(i, j)] + t;
                    out[(i, j)] = x;
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Scalar>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
