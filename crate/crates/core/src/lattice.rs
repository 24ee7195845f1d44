//! Full-rank lattices in `K^n`, split submodules, and valuation-pivoted
//! elimination over the valuation ring.

use serde::{Deserialize, Serialize};

use crate::cycles::DualForm;
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::matrix::Matrix;
use crate::padic::{PAdicContext, Scalar, Valuation};

/// A basis of a full-rank lattice, stored as the columns of an `n x n`
/// matrix in standard coordinates of `K^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ctx: PAdicContext,
    matrix: Matrix,
}

impl LatticeBasis {
    pub fn new(ctx: PAdicContext, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if matrix.determinant().is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Self { ctx, matrix })
    }

    /// `R^n`.
    pub fn standard(ctx: PAdicContext, n: usize) -> Self {
        Self { ctx, matrix: Matrix::identity(n) }
    }

    /// The lattice spanned by `p^{e_i} e_i`.
    pub fn diagonal_powers(ctx: PAdicContext, exponents: &[i64]) -> Self {
        let diag: Vec<Scalar> = exponents.iter().map(|&e| ctx.power(e)).collect();
        Self { ctx, matrix: Matrix::diagonal(&diag) }
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn scaled(&self, factor: &Scalar) -> Result<Self> {
        LatticeBasis::new(self.ctx, self.matrix.scaled(factor))
    }

    /// `p^e` times this lattice.
    pub fn scaled_by_power(&self, e: i64) -> Self {
        Self { ctx: self.ctx, matrix: self.matrix.scaled(&self.ctx.power(e)) }
    }

    /// The basis `self * change`. Spans the same lattice iff `change` is unimodular.
    pub fn change_basis(&self, change: &Matrix) -> Result<Self> {
        LatticeBasis::new(self.ctx, &self.matrix * change)
    }

    /// Coordinates of `other`'s basis vectors with respect to this basis.
    pub fn coordinates_of(&self, other: &LatticeBasis) -> Result<Matrix> {
        self.check_compatible(other)?;
        let inv = self.matrix.inverse().ok_or(Error::SingularTransition)?;
        Ok(&inv * &other.matrix)
    }

    pub(crate) fn check_compatible(&self, other: &LatticeBasis) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        if self.ctx != other.ctx {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}

/// A split submodule `N` of an ambient lattice `M`, given by `r` column
/// vectors in coordinates relative to the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSubmodule {
    ambient: LatticeBasis,
    columns: Matrix,
}

impl SplitSubmodule {
    /// Validates integrality and splitness of the coordinate columns.
    pub fn new(ambient: LatticeBasis, columns: Matrix) -> Result<Self> {
        if columns.rows() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), found: columns.rows() });
        }
        if !is_split(ambient.ctx(), &columns)? {
            return Err(Error::NotSplit);
        }
        Ok(Self { ambient, columns })
    }

    pub fn zero(ambient: LatticeBasis) -> Self {
        let n = ambient.dim();
        Self { ambient, columns: Matrix::zeros(n, 0) }
    }

    /// `M` itself as a rank-`n` submodule.
    pub fn whole(ambient: LatticeBasis) -> Self {
        let n = ambient.dim();
        Self { ambient, columns: Matrix::identity(n) }
    }

    pub fn ambient(&self) -> &LatticeBasis {
        &self.ambient
    }

    pub fn ctx(&self) -> &PAdicContext {
        self.ambient.ctx()
    }

    pub fn rank(&self) -> usize {
        self.columns.cols()
    }

    /// Basis vectors in ambient coordinates.
    pub fn columns(&self) -> &Matrix {
        &self.columns
    }

    /// Basis vectors in standard coordinates of `K^n`.
    pub fn standard_columns(&self) -> Matrix {
        self.ambient.matrix() * &self.columns
    }

    /// The subspace `N_k` of `M_k = M / pM`.
    pub fn reduction(&self) -> FpMatrix {
        self.columns.reduce(self.ctx()).expect("split submodules are integral")
    }

    /// Same module, basis vectors scaled individually by units or permuted:
    /// any `r x r` unimodular `change` gives another basis.
    pub fn change_basis(&self, change: &Matrix) -> Result<Self> {
        if !change.is_unimodular(self.ctx()) {
            return Err(Error::NotUnimodular);
        }
        SplitSubmodule::new(self.ambient.clone(), &self.columns * change)
    }

    /// True iff both have the same ambient lattice and the same `R`-span.
    pub fn same_module(&self, other: &SplitSubmodule) -> bool {
        if self.ambient != other.ambient || self.rank() != other.rank() {
            return false;
        }
        if self.rank() == 0 {
            return true;
        }
        let ctx = self.ctx();
        match (self.columns.solve(&other.columns), other.columns.solve(&self.columns)) {
            (Some(a), Some(b)) => a.is_integral(ctx) && b.is_integral(ctx),
            _ => false,
        }
    }

    pub(crate) fn check_ambient(&self, ambient: &LatticeBasis) -> Result<()> {
        if &self.ambient != ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}

/// Serialized form of a submodule: the ambient basis and the coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleRecord {
    pub p: u64,
    pub ambient: Matrix,
    pub columns: Vec<Vec<Scalar>>,
}

impl From<&SplitSubmodule> for SubmoduleRecord {
    fn from(n: &SplitSubmodule) -> Self {
        SubmoduleRecord {
            p: n.ctx().p(),
            ambient: n.ambient.matrix().clone(),
            columns: n.columns.columns(),
        }
    }
}

impl TryFrom<SubmoduleRecord> for SplitSubmodule {
    type Error = Error;

    fn try_from(rec: SubmoduleRecord) -> Result<Self> {
        let ctx = PAdicContext::new(rec.p)?;
        let ambient = LatticeBasis::new(ctx, rec.ambient)?;
        let columns = Matrix::from_columns(ambient.dim(), &rec.columns)?;
        SplitSubmodule::new(ambient, columns)
    }
}

/// Output of [`triangularize`]: `b = c * a * d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularizationResult {
    /// Invertible over `R`.
    pub c: Matrix,
    /// Permutation matrix.
    pub d: Matrix,
    /// Upper triangular with valuation-sorted diagonal dominating its row.
    pub b: Matrix,
    /// Column `j` of `a * d` is column `permutation[j]` of `a`.
    pub permutation: Vec<usize>,
}

impl TriangularizationResult {
    pub fn diagonal_valuations(&self, ctx: &PAdicContext) -> Vec<Valuation> {
        (0..self.b.rows()).map(|i| ctx.val(&self.b[(i, i)])).collect()
    }
}

/// Row echelon form of an integral `rows x cols` matrix by valuation-minimal
/// pivoting. Returns `(c, permutation, b)` with `b = c * a * perm` and the
/// number of nonzero pivots.
fn valuation_echelon(
    ctx: &PAdicContext,
    a: &Matrix,
) -> (Matrix, Vec<usize>, Matrix, usize) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut c = Matrix::identity(rows);
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        // Smallest valuation in the working block; ties go to the
        // lexicographically first (row, column).
        let mut best: Option<(Valuation, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let v = ctx.val(&b[(i, j)]);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        if v.is_infinite() {
            break;
        }
        b.swap_cols(k, pj);
        perm.swap(k, pj);
        b.swap_rows(k, pi);
        c.swap_rows(k, pi);
        let pivot = b[(k, k)].clone();
        for i in k + 1..rows {
            if !b[(i, k)].is_zero() {
                let f = &b[(i, k)] / &pivot;
                b.sub_row_multiple(i, k, &f);
                c.sub_row_multiple(i, k, &f);
            }
        }
        rank += 1;
    }
    (c, perm, b, rank)
}

fn permutation_matrix(perm: &[usize]) -> Matrix {
    let mut d = Matrix::zeros(perm.len(), perm.len());
    for (j, &src) in perm.iter().enumerate() {
        d[(src, j)] = Scalar::one();
    }
    d
}

/// Upper triangularization `C A D = B` with `C` invertible over `R` and `D`
/// a permutation matrix, such that the diagonal valuations increase and each
/// diagonal entry has minimal valuation in its row.
pub fn triangularize(ctx: &PAdicContext, a: &Matrix) -> Result<TriangularizationResult> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    a.check_integral(ctx)?;
    let (c, permutation, b, _) = valuation_echelon(ctx, a);
    Ok(TriangularizationResult { c, d: permutation_matrix(&permutation), b, permutation })
}

/// Exponents of the elementary divisors of a nonsingular matrix over `K`,
/// sorted ascending, by two-sided valuation-pivoted elimination.
pub fn elementary_exponents(ctx: &PAdicContext, t: &Matrix) -> Result<Vec<i64>> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch { expected: t.rows(), found: t.cols() });
    }
    let n = t.rows();
    let mut b = t.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                let v = ctx.val(&b[(i, j)]);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, pi, pj) = best.expect("nonempty block");
        let Valuation::Finite(v) = v else {
            return Err(Error::SingularTransition);
        };
        b.swap_rows(k, pi);
        b.swap_cols(k, pj);
        let pivot = b[(k, k)].clone();
        for i in k + 1..n {
            if !b[(i, k)].is_zero() {
                let f = &b[(i, k)] / &pivot;
                b.sub_row_multiple(i, k, &f);
            }
        }
        // Clearing row k only touches row k: column k is zero below the pivot.
        for j in k + 1..n {
            b[(k, j)] = Scalar::zero();
        }
        out.push(v);
    }
    Ok(out)
}

/// Exponents `k_1 <= ... <= k_n` such that `ambient = sum R p^{k_i} w_i`
/// for some basis `w` of `other`.
pub fn invariant_exponents(ambient: &LatticeBasis, other: &LatticeBasis) -> Result<Vec<i64>> {
    let t = other.coordinates_of(ambient)?;
    elementary_exponents(ambient.ctx(), &t)
}

/// A set of coordinate vectors (columns, val >= 0) spans a split submodule iff
/// its reduction mod `p` has full column rank.
pub fn is_split(ctx: &PAdicContext, coordinates: &Matrix) -> Result<bool> {
    let reduced = coordinates.reduce(ctx)?;
    Ok(reduced.rank() == coordinates.cols())
}

/// The split submodule `W ∩ M`, where `W` is the `K`-span of `vectors`
/// (columns in ambient coordinates).
pub fn saturate(ambient: &LatticeBasis, vectors: &Matrix) -> Result<SplitSubmodule> {
    let n = ambient.dim();
    if vectors.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: vectors.rows() });
    }
    if vectors.cols() == 0 {
        return Ok(SplitSubmodule::zero(ambient.clone()));
    }
    // C X = B has nonzero rows exactly 0..r and C is invertible over R, so
    // W ∩ R^n = C^{-1}(R^r ⊕ 0).
    let (c, _, _, rank) = valuation_echelon(ambient.ctx(), vectors);
    let c_inv = c.inverse().expect("elimination matrix is invertible");
    let columns = c_inv.select_columns(0..rank);
    SplitSubmodule::new(ambient.clone(), columns)
}

/// Saturation of `∩_i (N_i ⊗ K)` in the common ambient lattice.
pub fn intersect_spans(ambient: &LatticeBasis, submodules: &[SplitSubmodule]) -> Result<SplitSubmodule> {
    let (first, rest) = submodules
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("intersect_spans needs at least one submodule".into()))?;
    first.check_ambient(ambient)?;
    let mut span = first.columns().clone();
    for s in rest {
        s.check_ambient(ambient)?;
        if span.cols() == 0 {
            break;
        }
        // (a, b) with span*a = s*b, i.e. kernel of [span | -s].
        let kernel = span.hstack(&s.columns().scaled(&Scalar::from(-1))).kernel();
        let coeffs = Matrix::from_columns(
            span.cols(),
            &kernel.columns().into_iter().map(|k| k[..span.cols()].to_vec()).collect::<Vec<_>>(),
        )?;
        span = &span * &coeffs;
    }
    saturate(ambient, &span)
}

/// A complement `L'` with `outer = inner ⊕ L'`, obtained by greedily adding
/// basis vectors of `outer` whose reductions enlarge the reduced span.
pub fn complete_to_complement(outer: &SplitSubmodule, inner: &SplitSubmodule) -> Result<SplitSubmodule> {
    inner.check_ambient(outer.ambient())?;
    let ctx = *outer.ctx();
    let coords = if inner.rank() == 0 {
        Matrix::zeros(outer.rank(), 0)
    } else {
        outer.columns().solve(inner.columns()).ok_or(Error::NotSplitInside)?
    };
    if !coords.is_integral(&ctx) || !is_split(&ctx, &coords)? {
        return Err(Error::NotSplitInside);
    }
    let mut reduced = coords.reduce(&ctx)?;
    let mut chosen = Vec::new();
    for j in 0..outer.rank() {
        if reduced.cols() == outer.rank() {
            break;
        }
        let mut e = vec![0u64; outer.rank()];
        e[j] = 1;
        let candidate = reduced.with_column(&e);
        if candidate.rank() == candidate.cols() {
            reduced = candidate;
            chosen.push(j);
        }
    }
    SplitSubmodule::new(outer.ambient().clone(), outer.columns().select_columns(chosen))
}

/// Equation of `B(H)` when `f` cuts out `H`: coefficients `(B^T)^{-1} a`.
pub fn transform_dual_form(b: &Matrix, f: &DualForm) -> Result<DualForm> {
    let ctx = f.ambient().ctx();
    if b.rows() != f.ambient().dim() || !b.is_unimodular(ctx) {
        return Err(Error::NotUnimodular);
    }
    let bt_inv = b.transpose().inverse().ok_or(Error::NotUnimodular)?;
    DualForm::new(f.ambient().clone(), bt_inv.mul_vec(f.coefficients()))
}

/// Image `B(N)` of a split submodule under an automorphism of `M`.
pub fn transform_submodule(b: &Matrix, n: &SplitSubmodule) -> Result<SplitSubmodule> {
    if b.rows() != n.ambient().dim() || !b.is_unimodular(n.ctx()) {
        return Err(Error::NotUnimodular);
    }
    SplitSubmodule::new(n.ambient().clone(), b * n.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn check_triangular(ctx: &PAdicContext, a: &Matrix, r: &TriangularizationResult) {
        assert_eq!(&(&r.c * a) * &r.d, r.b);
        assert!(r.c.is_unimodular(ctx));
        let n = a.rows();
        for i in 0..n {
            for j in 0..i {
                assert!(r.b[(i, j)].is_zero());
            }
            for j in i..n {
                assert!(ctx.val(&r.b[(i, i)]) <= ctx.val(&r.b[(i, j)]));
            }
            if i + 1 < n {
                assert!(ctx.val(&r.b[(i, i)]) <= ctx.val(&r.b[(i + 1, i + 1)]));
            }
        }
    }

    #[test]
    fn triangularize_identity() {
        let c = ctx(5);
        let r = triangularize(&c, &Matrix::identity(3)).unwrap();
        assert_eq!(r.b, Matrix::identity(3));
        assert_eq!(r.c, Matrix::identity(3));
        assert_eq!(r.d, Matrix::identity(3));
    }

    #[test]
    fn triangularize_examples() {
        let c2 = ctx(2);
        let a = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let r = triangularize(&c2, &a).unwrap();
        check_triangular(&c2, &a, &r);
        assert_eq!(r.diagonal_valuations(&c2), vec![Valuation::Finite(0), Valuation::Finite(0)]);
        // Tie-break picks (0, 1) first: the leftmost unit in row 0.
        assert_eq!(r.permutation, vec![1, 0]);

        let c3 = ctx(3);
        let a = Matrix::from_i64(&[&[3, 3], &[3, 12]]);
        let r = triangularize(&c3, &a).unwrap();
        check_triangular(&c3, &a, &r);
        assert_eq!(r.diagonal_valuations(&c3), vec![Valuation::Finite(1), Valuation::Finite(2)]);
    }

    #[test]
    fn triangularize_rejects_non_integral() {
        let a = Matrix::from_rows(vec![vec![s("1/2"), s("0")], vec![s("0"), s("1")]]).unwrap();
        assert_eq!(
            triangularize(&ctx(2), &a),
            Err(Error::NonIntegralEntry { row: 0, col: 0 })
        );
    }

    #[test]
    fn invariant_exponent_examples() {
        let c2 = ctx(2);
        let std2 = LatticeBasis::standard(c2, 2);
        assert_eq!(invariant_exponents(&std2, &std2).unwrap(), vec![0, 0]);
        let other = LatticeBasis::new(c2, Matrix::diagonal(&[s("1"), s("1/2")])).unwrap();
        assert_eq!(invariant_exponents(&std2, &other).unwrap(), vec![0, 1]);

        let c3 = ctx(3);
        let std3 = LatticeBasis::standard(c3, 2);
        let other = LatticeBasis::new(
            c3,
            Matrix::from_columns(2, &[vec![s("1"), s("0")], vec![s("1"), s("1/9")]]).unwrap(),
        )
        .unwrap();
        assert_eq!(invariant_exponents(&std3, &other).unwrap(), vec![0, 2]);
    }

    #[test]
    fn is_split_examples() {
        let c2 = ctx(2);
        assert!(is_split(&c2, &Matrix::from_i64(&[&[1], &[0]])).unwrap());
        assert!(!is_split(&c2, &Matrix::from_i64(&[&[2], &[0]])).unwrap());
        let c3 = ctx(3);
        assert!(is_split(&c3, &Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 3]])).unwrap());
        let third = Matrix::from_rows(vec![vec![s("1/3")], vec![s("0")]]).unwrap();
        assert_eq!(is_split(&c3, &third), Err(Error::NonIntegralEntry { row: 0, col: 0 }));
    }

    #[test]
    fn saturate_examples() {
        let c5 = ctx(5);
        let m = LatticeBasis::standard(c5, 2);
        let full = saturate(&m, &Matrix::from_i64(&[&[3, 1], &[1, 7]])).unwrap();
        assert!(full.same_module(&SplitSubmodule::whole(m.clone())));

        let line = saturate(&m, &Matrix::from_i64(&[&[5], &[0]])).unwrap();
        let e1 = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1], &[0]])).unwrap();
        assert!(line.same_module(&e1));

        let c2 = ctx(2);
        let m3 = LatticeBasis::standard(c2, 3);
        let plane = saturate(&m3, &Matrix::from_i64(&[&[1, 1], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!(plane.rank(), 2);
        // (0, 0, 1) lies in the saturation but not in the naive span.
        let e3 = Matrix::from_i64(&[&[0], &[0], &[1]]);
        let coords = plane.columns().solve(&e3).unwrap();
        assert!(coords.is_integral(&c2));
        assert!(is_split(&c2, plane.columns()).unwrap());
    }

    #[test]
    fn saturate_is_idempotent() {
        let c3 = ctx(3);
        let m = LatticeBasis::standard(c3, 3);
        let once = saturate(&m, &Matrix::from_i64(&[&[9, 3], &[3, 0], &[18, 6]])).unwrap();
        let twice = saturate(&m, once.columns()).unwrap();
        assert!(once.same_module(&twice));
    }

    #[test]
    fn intersect_spans_examples() {
        let c3 = ctx(3);
        let m = LatticeBasis::standard(c3, 3);
        let n1 = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap();
        let n2 = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 9]])).unwrap();
        assert!(intersect_spans(&m, std::slice::from_ref(&n1)).unwrap().same_module(&n1));
        let i = intersect_spans(&m, &[n1, n2]).unwrap();
        let e1 = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1], &[0], &[0]])).unwrap();
        assert!(i.same_module(&e1));

        let m2 = LatticeBasis::standard(c3, 2);
        let a = SplitSubmodule::new(m2.clone(), Matrix::from_i64(&[&[1], &[0]])).unwrap();
        let b = SplitSubmodule::new(m2.clone(), Matrix::from_i64(&[&[1], &[1]])).unwrap();
        assert_eq!(intersect_spans(&m2, &[a, b]).unwrap().rank(), 0);
    }

    #[test]
    fn complement_examples() {
        let c3 = ctx(3);
        let m = LatticeBasis::standard(c3, 3);
        let outer = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 9]])).unwrap();
        assert_eq!(complete_to_complement(&outer, &outer).unwrap().rank(), 0);
        let all = complete_to_complement(&outer, &SplitSubmodule::zero(m.clone())).unwrap();
        assert!(all.same_module(&outer));

        let inner = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1], &[0], &[0]])).unwrap();
        let comp = complete_to_complement(&outer, &inner).unwrap();
        assert_eq!(comp.rank(), 1);
        let sum = SplitSubmodule::new(m.clone(), inner.columns().hstack(comp.columns())).unwrap();
        assert!(sum.same_module(&outer));

        let not_split = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[1], &[0], &[0]])).unwrap();
        let outer2 = SplitSubmodule::new(m.clone(), Matrix::from_i64(&[&[3], &[1], &[0]])).unwrap();
        assert_eq!(complete_to_complement(&outer2, &not_split), Err(Error::NotSplitInside));
    }

    #[test]
    fn transform_examples() {
        let c2 = ctx(2);
        let m = LatticeBasis::standard(c2, 2);
        let f = DualForm::new(m.clone(), vec![s("1"), s("0")]).unwrap();
        assert_eq!(transform_dual_form(&Matrix::identity(2), &f).unwrap(), f);
        let b = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let g = transform_dual_form(&b, &f).unwrap();
        assert_eq!(g.coefficients(), &[s("1"), s("-1")]);
        let perm = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(transform_dual_form(&perm, &f).unwrap().coefficients(), &[s("0"), s("1")]);
        let bad = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(transform_dual_form(&bad, &f), Err(Error::NotUnimodular));
    }
}
