//! Dense linear algebra over the residue field `F_p`.

/// Row-major matrix with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        FpMatrix::from_columns(self.p, self.rows, &cols)
    }

    pub fn with_column(&self, col: &[u64]) -> FpMatrix {
        let mut cols = self.columns();
        cols.push(col.to_vec());
        FpMatrix::from_columns(self.p, self.rows, &cols)
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat; p is prime.
        pow_mod(a, self.p - 2, self.p)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(r) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(row * self.cols + j, r * self.cols + j);
            }
            let inv = self.inv(self.get(row, col));
            for j in 0..self.cols {
                let x = self.get(row, j) * inv % p;
                self.set(row, j, x);
            }
            for r in 0..self.rows {
                let f = self.get(r, col);
                if r != row && f != 0 {
                    for j in 0..self.cols {
                        let x = (self.get(r, j) + p - f * self.get(row, j) % p) % p;
                        self.set(r, j, x);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, as columns.
    pub fn kernel(&self) -> FpMatrix {
        let mut r = self.clone();
        let pivots = r.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (self.p - r.get(row, f)) % self.p;
            }
            basis.push(v);
        }
        FpMatrix::from_columns(self.p, self.cols, &basis)
    }

    /// A basis (as columns) of the column space.
    pub fn column_space(&self) -> FpMatrix {
        let mut r = self.clone();
        let pivots = r.rref();
        let cols: Vec<Vec<u64>> = pivots.iter().map(|&c| self.column(c)).collect();
        FpMatrix::from_columns(self.p, self.rows, &cols)
    }
}

/// Basis of the intersection of the column spaces of `a` and `b`.
pub fn intersect_column_spaces(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    assert_eq!(a.rows, b.rows);
    let a = a.column_space();
    let b = b.column_space();
    let p = a.p;
    let k = a.hstack(&b).kernel();
    let vectors: Vec<Vec<u64>> = k
        .columns()
        .into_iter()
        .map(|coef| {
            (0..a.rows)
                .map(|i| (0..a.cols).fold(0, |acc, j| (acc + a.get(i, j) * coef[j]) % p))
                .collect()
        })
        .collect();
    FpMatrix::from_columns(p, a.rows, &vectors).column_space()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = FpMatrix::from_columns(3, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![2, 2, 1]);
    }

    #[test]
    fn intersection_of_planes() {
        // span{e1, e2} and span{e1, e3} meet in span{e1}
        let a = FpMatrix::from_columns(5, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = FpMatrix::from_columns(5, 3, &[vec![1, 0, 0], vec![0, 0, 1]]);
        let i = intersect_column_spaces(&a, &b);
        assert_eq!(i.cols(), 1);
        let v = i.column(0);
        assert!(v[0] != 0 && v[1] == 0 && v[2] == 0);
    }

    #[test]
    fn disjoint_lines() {
        let a = FpMatrix::from_columns(2, 2, &[vec![1, 0]]);
        let b = FpMatrix::from_columns(2, 2, &[vec![1, 1]]);
        assert_eq!(intersect_column_spaces(&a, &b).cols(), 0);
    }
}
