//! Generators and independent oracles shared by the integration suites.

#![allow(dead_code)]

use btpgl::padic::{PAdicContext, Scalar, Valuation};
use btpgl::Matrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ctx(p: u64) -> PAdicContext {
    PAdicContext::new(p).unwrap()
}

/// A unit of `Z_(p)`: `±a/b` with `a, b` in `[1, 12]` prime to `p`.
pub fn random_unit(rng: &mut ChaCha8Rng, p: u64) -> Scalar {
    let units: Vec<i64> = (1..=12).filter(|u| u % p as i64 != 0).collect();
    let a = units[rng.gen_range(0..units.len())];
    let b = units[rng.gen_range(0..units.len())];
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::new(sign * a, b).unwrap()
}

/// An element of `Z_(p)`: zero, or a unit times `p^e` with `0 <= e <= max_val`.
pub fn random_integral(rng: &mut ChaCha8Rng, p: u64, max_val: i64) -> Scalar {
    if rng.gen_bool(0.2) {
        return Scalar::zero();
    }
    let e = rng.gen_range(0..=max_val);
    random_unit(rng, p) * ctx(p).power(e)
}

/// A product of random elementary operations, unit scalings and swaps; an
/// element of `GL_n(Z_(p))`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    for _ in 0..3 * n {
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let f = random_integral(rng, p, 2);
                m.sub_row_multiple(i, j, &f);
            }
            1 => {
                let i = rng.gen_range(0..n);
                m.scale_row(i, &random_unit(rng, p));
            }
            _ => {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                m.swap_rows(i, j);
            }
        }
    }
    m
}

/// A random nonsingular matrix with entries of valuation in `[lo, hi]`.
pub fn random_nonsingular(rng: &mut ChaCha8Rng, p: u64, n: usize, lo: i64, hi: i64) -> Matrix {
    let c = ctx(p);
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.8) {
                    m[(i, j)] = random_unit(rng, p) * c.power(rng.gen_range(lo..=hi));
                }
            }
        }
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// A random square integral matrix; singular about a tenth of the time.
pub fn random_integral_matrix(rng: &mut ChaCha8Rng, p: u64, n: usize, max_val: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = random_integral(rng, p, max_val);
        }
    }
    if n > 1 && rng.gen_bool(0.1) {
        let (a, b) = (0, rng.gen_range(1..n));
        let f = random_integral(rng, p, 1);
        for i in 0..n {
            let x = &m[(i, a)] * &f;
            m[(i, b)] = x;
        }
    }
    m
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combinations(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut c = vec![first];
                c.extend(rest);
                out.push(c);
            }
        }
    }
    out
}

fn minor(a: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    let rows: Vec<Vec<Scalar>> = rows.iter().map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
    Matrix::from_rows(rows).unwrap().determinant()
}

/// Elementary divisor exponents from determinantal divisors: with `d_k` the
/// minimal valuation of the `k x k` minors, the exponents are `d_k - d_{k-1}`.
pub fn determinantal_exponents(ctx: &PAdicContext, a: &Matrix) -> Vec<Valuation> {
    let n = a.rows();
    let mut out = Vec::with_capacity(n);
    let mut prev = Valuation::Finite(0);
    for k in 1..=n {
        let idx = combinations(n, k);
        let mut d = Valuation::Infinite;
        for r in &idx {
            for c in &idx {
                d = d.min(ctx.val(&minor(a, r, c)));
            }
        }
        out.push(match (d, prev) {
            (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x - y),
            _ => Valuation::Infinite,
        });
        prev = d;
    }
    out
}

/// A uniformly random permutation of `0..len`.
pub fn random_permutation(rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}
