//! Linear cycles on `P(M)`: intersection numbers of hyperplanes, properness
//! of configurations of split submodules, the vertex family `F` built from
//! partial intersections, and the decomposition of a higher-dimensional
//! intersection into its generic and special components.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::building::{class_key, dist, ClassKey};
use crate::error::{Error, Result};
use crate::fp::{intersect_column_spaces, FpMatrix};
use crate::lattice::{complete_to_complement, intersect_spans, saturate, LatticeBasis, SplitSubmodule};
use crate::matrix::Matrix;
use crate::padic::{min_valuation, PAdicContext, Scalar};

/// A primitive linear form `f = sum a_j x_j^*` on `M`, with coefficients
/// relative to the dual of the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualForm {
    ambient: LatticeBasis,
    coefficients: Vec<Scalar>,
}

impl DualForm {
    /// Requires integral coefficients, at least one of them a unit.
    pub fn new(ambient: LatticeBasis, coefficients: Vec<Scalar>) -> Result<Self> {
        if coefficients.len() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), found: coefficients.len() });
        }
        let ctx = ambient.ctx();
        if let Some(j) = coefficients.iter().position(|a| !ctx.is_integral(a)) {
            return Err(Error::NonIntegralEntry { row: 0, col: j });
        }
        if !coefficients.iter().any(|a| ctx.is_unit(a)) {
            return Err(Error::NotPrimitive);
        }
        Ok(Self { ambient, coefficients })
    }

    pub fn from_i64(ambient: LatticeBasis, coefficients: &[i64]) -> Result<Self> {
        Self::new(ambient, coefficients.iter().map(|&a| Scalar::from(a)).collect())
    }

    pub fn ambient(&self) -> &LatticeBasis {
        &self.ambient
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    /// `f(x)` for `x` in ambient coordinates.
    pub fn evaluate(&self, x: &[Scalar]) -> Scalar {
        self.coefficients.iter().zip(x).fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `u * f` for a unit `u`; cuts out the same hyperplane.
    pub fn scaled_by_unit(&self, u: &Scalar) -> Result<Self> {
        if !self.ambient.ctx().is_unit(u) {
            return Err(Error::InvalidParameter(format!("{u} is not a unit")));
        }
        Ok(Self { ambient: self.ambient.clone(), coefficients: self.coefficients.iter().map(|a| a * u).collect() })
    }
}

/// `ker f ∩ M`, a split submodule of rank `n - 1`.
pub fn hyperplane_kernel(f: &DualForm) -> SplitSubmodule {
    let row = Matrix::from_rows(vec![f.coefficients.clone()]).expect("one row");
    saturate(&f.ambient, &row.kernel()).expect("kernel vectors live in the ambient")
}

/// A linear cycle `P(N)` on `P(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearCycle {
    Hyperplane(DualForm),
    Submodule(SplitSubmodule),
}

impl LinearCycle {
    pub fn ambient(&self) -> &LatticeBasis {
        match self {
            LinearCycle::Hyperplane(f) => f.ambient(),
            LinearCycle::Submodule(n) => n.ambient(),
        }
    }

    pub fn submodule(&self) -> SplitSubmodule {
        match self {
            LinearCycle::Hyperplane(f) => hyperplane_kernel(f),
            LinearCycle::Submodule(n) => n.clone(),
        }
    }

    pub fn codimension(&self) -> usize {
        match self {
            LinearCycle::Hyperplane(_) => 1,
            LinearCycle::Submodule(n) => n.ambient().dim() - n.rank(),
        }
    }

    /// Primitive forms whose common kernel is the cycle, as coefficient
    /// vectors. For a submodule `N` these are the dual coordinates of a
    /// complement `L'` in `M = N ⊕ L'`.
    pub fn equations(&self) -> Result<Vec<Vec<Scalar>>> {
        match self {
            LinearCycle::Hyperplane(f) => Ok(vec![f.coefficients.clone()]),
            LinearCycle::Submodule(n) => {
                let whole = SplitSubmodule::whole(n.ambient().clone());
                let complement = complete_to_complement(&whole, n)?;
                let w = n.columns().hstack(complement.columns());
                let w_inv = w.inverse().ok_or(Error::SingularBasis)?;
                Ok((n.rank()..w.rows()).map(|i| w_inv.row(i)).collect())
            }
        }
    }
}

/// `d` linear cycles on a common `P(M)`, each of codimension in `[1, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleConfiguration {
    ambient: LatticeBasis,
    cycles: Vec<LinearCycle>,
}

impl CycleConfiguration {
    pub fn new(ambient: LatticeBasis, cycles: Vec<LinearCycle>) -> Result<Self> {
        if cycles.is_empty() {
            return Err(Error::InvalidParameter("a configuration needs at least one cycle".into()));
        }
        let n = ambient.dim();
        for c in &cycles {
            if c.ambient() != &ambient {
                return Err(Error::AmbientMismatch);
            }
            if let LinearCycle::Submodule(s) = c {
                if s.rank() == 0 || s.rank() >= n {
                    return Err(Error::InvalidParameter(format!(
                        "submodule rank {} outside [1, {})",
                        s.rank(),
                        n
                    )));
                }
            }
        }
        Ok(Self { ambient, cycles })
    }

    pub fn from_submodules(ambient: LatticeBasis, submodules: Vec<SplitSubmodule>) -> Result<Self> {
        Self::new(ambient, submodules.into_iter().map(LinearCycle::Submodule).collect())
    }

    pub fn from_forms(forms: Vec<DualForm>) -> Result<Self> {
        let ambient = forms
            .first()
            .ok_or_else(|| Error::InvalidParameter("a configuration needs at least one cycle".into()))?
            .ambient()
            .clone();
        Self::new(ambient, forms.into_iter().map(LinearCycle::Hyperplane).collect())
    }

    pub fn ambient(&self) -> &LatticeBasis {
        &self.ambient
    }

    pub fn ctx(&self) -> &PAdicContext {
        self.ambient.ctx()
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn cycles(&self) -> &[LinearCycle] {
        &self.cycles
    }

    pub fn submodules(&self) -> Vec<SplitSubmodule> {
        self.cycles.iter().map(LinearCycle::submodule).collect()
    }

    pub fn total_codimension(&self) -> usize {
        self.cycles.iter().map(LinearCycle::codimension).sum()
    }

    /// The same cycles in another order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.cycles.len()];
        if order.len() != seen.len() || order.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidParameter("not a permutation of the cycles".into()));
        }
        Self::new(self.ambient.clone(), order.iter().map(|&i| self.cycles[i].clone()).collect())
    }
}

/// How the cycles of a configuration meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Properness {
    /// Proper, zero-dimensional: one point on the special fibre.
    Proper0Dim,
    /// Proper with generic intersection of the given rank `r_0 > 0`.
    ProperHigherDim(usize),
    Improper,
    /// No common point even on the special fibre.
    EmptyIntersection,
}

impl std::fmt::Display for Properness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Properness::ProperHigherDim(r0) => write!(f, "ProperHigherDim({r0})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// `∩ N_ik` inside `M_k`, as a basis of columns.
pub fn special_intersection(cfg: &CycleConfiguration) -> FpMatrix {
    let subs = cfg.submodules();
    let mut acc = subs[0].reduction().column_space();
    for s in &subs[1..] {
        if acc.cols() == 0 {
            break;
        }
        acc = intersect_column_spaces(&acc, &s.reduction());
    }
    acc
}

/// `L_0`, the saturation of `∩ N_iK` in `M`.
pub fn generic_intersection(cfg: &CycleConfiguration) -> SplitSubmodule {
    intersect_spans(cfg.ambient(), &cfg.submodules()).expect("cycles share the ambient")
}

pub fn properness_check(cfg: &CycleConfiguration) -> Properness {
    let n = cfg.dim();
    let c = cfg.total_codimension();
    let generic = generic_intersection(cfg).rank();
    let special = special_intersection(cfg).cols();
    match c.cmp(&n) {
        std::cmp::Ordering::Greater => {
            if special == 0 {
                Properness::EmptyIntersection
            } else {
                Properness::Improper
            }
        }
        std::cmp::Ordering::Equal => match (generic, special) {
            (0, 0) => Properness::EmptyIntersection,
            (0, 1) => Properness::Proper0Dim,
            _ => Properness::Improper,
        },
        std::cmp::Ordering::Less => {
            let r0 = n - c;
            if generic == r0 && special <= r0 + 1 {
                Properness::ProperHigherDim(r0)
            } else {
                Properness::Improper
            }
        }
    }
}

/// Free submodules `L_1, ..., L_d` (bases as columns in ambient coordinates)
/// whose `K`-spans are independent and sum to `V`; the family consists of the
/// classes `{⊕ p^{k_j} L_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFamily {
    ambient: LatticeBasis,
    generators: Vec<Matrix>,
    /// Generator columns side by side.
    joined: Matrix,
}

impl FFamily {
    pub fn new(ambient: LatticeBasis, generators: Vec<Matrix>) -> Result<Self> {
        let n = ambient.dim();
        let mut joined = Matrix::zeros(n, 0);
        for g in &generators {
            if g.rows() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
            }
            if g.cols() == 0 {
                return Err(Error::InvalidParameter("family generators must be nonzero".into()));
            }
            joined = joined.hstack(g);
        }
        if joined.cols() != n {
            return Err(Error::RankMismatch { expected: n, found: joined.cols() });
        }
        if joined.determinant().is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Self { ambient, generators, joined })
    }

    pub fn ambient(&self) -> &LatticeBasis {
        &self.ambient
    }

    pub fn from_submodules(ambient: LatticeBasis, generators: Vec<SplitSubmodule>) -> Result<Self> {
        for g in &generators {
            g.check_ambient(&ambient)?;
        }
        Self::new(ambient, generators.into_iter().map(|g| g.columns().clone()).collect())
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// The same family with generator `j` replaced by `p^e L_j`.
    pub fn with_scaled_generator(&self, j: usize, e: i64) -> Result<Self> {
        let mut generators = self.generators.clone();
        let g = generators
            .get_mut(j)
            .ok_or_else(|| Error::InvalidParameter(format!("no generator {j}")))?;
        *g = g.scaled(&self.ambient.ctx().power(e));
        Self::new(self.ambient.clone(), generators)
    }

    fn block_of_columns(&self) -> Vec<usize> {
        self.generators.iter().enumerate().flat_map(|(b, g)| std::iter::repeat_n(b, g.cols())).collect()
    }

    /// The lattice `⊕ p^{k_j} L_j`, one exponent per generator.
    pub fn vertex(&self, exponents: &[i64]) -> Result<LatticeBasis> {
        if exponents.len() != self.generators.len() {
            return Err(Error::DimensionMismatch { expected: self.generators.len(), found: exponents.len() });
        }
        let ctx = self.ambient.ctx();
        let mut cols = self.joined.clone();
        for (j, b) in self.block_of_columns().into_iter().enumerate() {
            cols.scale_col(j, &ctx.power(exponents[b]));
        }
        LatticeBasis::new(*ctx, self.ambient.matrix() * &cols)
    }
}

/// Partial intersections `L_j = ∩_{i != j} N_i`, saturated in `M`. With a
/// single cycle, `L_1 = M`.
pub fn partial_intersections(cfg: &CycleConfiguration) -> Result<Vec<SplitSubmodule>> {
    let subs = cfg.submodules();
    (0..subs.len())
        .map(|j| {
            let others: Vec<SplitSubmodule> =
                subs.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, s)| s.clone()).collect();
            if others.is_empty() {
                Ok(SplitSubmodule::whole(cfg.ambient().clone()))
            } else {
                intersect_spans(cfg.ambient(), &others)
            }
        })
        .collect()
}

/// The family `F` of a configuration with total codimension `n`.
pub fn build_f(cfg: &CycleConfiguration) -> Result<FFamily> {
    let n = cfg.dim();
    if cfg.total_codimension() != n {
        return Err(Error::ProperFail(format!(
            "total codimension {} differs from the dimension {n}",
            cfg.total_codimension()
        )));
    }
    match properness_check(cfg) {
        Properness::Proper0Dim | Properness::EmptyIntersection => {}
        other => return Err(Error::ProperFail(format!("configuration is {other}"))),
    }
    let ls = partial_intersections(cfg)?;
    for (l, c) in ls.iter().zip(cfg.cycles()) {
        let expected = c.codimension();
        if l.rank() != expected {
            return Err(Error::RankMismatch { expected, found: l.rank() });
        }
    }
    FFamily::from_submodules(cfg.ambient().clone(), ls)
}

/// `dist({m}, F)`.
///
/// With `S` the transition from `m` to `⊕ L_j`, the vertex with exponents
/// `k` has distance `max_j(k_j - α_j) + max_j(-β_j - k_j)`, where `α_j` is the
/// minimal valuation on the rows of `S^{-1}` belonging to `L_j` and `β_j` the
/// minimal valuation on the columns of `S` belonging to `L_j`. The minimum
/// over `k` is `max_j(-α_j - β_j)`, attained at `k_j = α_j`.
pub fn dist_to_family(m: &LatticeBasis, f: &FFamily) -> Result<u32> {
    let ctx = *m.ctx();
    let s = m.coordinates_of(&f.vertex(&vec![0; f.generators.len()])?)?;
    let s_inv = s.inverse().ok_or(Error::SingularTransition)?;
    let mut best = i64::MIN;
    let mut offset = 0;
    for g in &f.generators {
        let idx = offset..offset + g.cols();
        offset += g.cols();
        let alpha = min_valuation(&ctx, idx.clone().flat_map(|i| s_inv.row(i)).collect::<Vec<_>>().iter());
        let beta = min_valuation(&ctx, idx.flat_map(|j| s.column(j)).collect::<Vec<_>>().iter());
        let (Some(a), Some(b)) = (alpha.finite(), beta.finite()) else {
            return Err(Error::SingularTransition);
        };
        best = best.max(-a - b);
    }
    Ok(best as u32)
}

/// Exhaustive search for `dist({m}, F)` over exponent tuples with the last
/// exponent fixed to 0 and the others in `[-2 B0, 2 B0]`, where `B0` is the
/// distance to the vertex with all exponents 0. Any closer vertex lies in
/// this window, since the vertices of `F` at spread `s` from the base vertex
/// are at distance at least `s - B0` from `{m}`.
pub fn dist_to_family_windowed(m: &LatticeBasis, f: &FFamily) -> Result<u32> {
    let d = f.generators.len();
    let base = dist(m, &f.vertex(&vec![0; d])?)?;
    let w = 2 * base as i64;
    let mut best = base;
    for ks in exponent_window(d, w) {
        if best == 0 {
            break;
        }
        best = best.min(dist(m, &f.vertex(&ks)?)?);
    }
    Ok(best)
}

/// All tuples of length `d` with last entry 0 and the others in `[-w, w]`.
fn exponent_window(d: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; d]];
    for j in 0..d.saturating_sub(1) {
        out = out
            .into_iter()
            .flat_map(|ks| {
                (-w..=w).map(move |k| {
                    let mut ks = ks.clone();
                    ks[j] = k;
                    ks
                })
            })
            .collect();
    }
    out
}

/// Keys (relative to `reference`) of all members of `F` whose exponent spread
/// is at most `spread`; every member within distance `r` of `{m}` is among
/// them once `spread >= r + dist({m}, base vertex)`.
pub fn family_keys(reference: &LatticeBasis, f: &FFamily, spread: u32) -> Result<HashSet<ClassKey>> {
    exponent_window(f.generators.len(), spread as i64)
        .into_iter()
        .filter(|ks| ks.iter().max().unwrap() - ks.iter().min().unwrap() <= spread as i64)
        .map(|ks| class_key(reference, &f.vertex(&ks)?))
        .collect()
}

/// `val(det A)` for the matrix whose columns are the coefficient vectors.
pub fn intersection_number_of_forms(ctx: &PAdicContext, columns: &[Vec<Scalar>]) -> Result<u32> {
    let n = columns.first().map_or(0, Vec::len);
    if columns.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: columns.len() });
    }
    let a = Matrix::from_columns(n, columns)?;
    let v = ctx.val(&a.determinant()).finite().ok_or(Error::ImproperGenericIntersection)?;
    Ok(v as u32)
}

/// Intersection number of `n` hyperplanes.
pub fn intersect_hyperplanes(forms: &[DualForm]) -> Result<u32> {
    let first = forms.first().ok_or_else(|| Error::InvalidParameter("no forms".into()))?;
    for f in forms {
        if f.ambient() != first.ambient() {
            return Err(Error::AmbientMismatch);
        }
    }
    let cols: Vec<Vec<Scalar>> = forms.iter().map(|f| f.coefficients.clone()).collect();
    intersection_number_of_forms(first.ambient().ctx(), &cols)
}

/// Intersection number of a configuration of total codimension `n`, each
/// cycle replaced by the hyperplanes cutting it out.
pub fn intersection_number(cfg: &CycleConfiguration) -> Result<u32> {
    let mut cols = Vec::with_capacity(cfg.dim());
    for c in cfg.cycles() {
        cols.extend(c.equations()?);
    }
    intersection_number_of_forms(cfg.ctx(), &cols)
}

/// Both sides of the identity between the intersection number and the
/// distance from `{M}` to `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub lhs: u32,
    pub rhs: u32,
    pub agree: bool,
}

pub fn verify_intersection_distance(cfg: &CycleConfiguration) -> Result<IntersectionReport> {
    let family = build_f(cfg)?;
    let lhs = intersection_number(cfg)?;
    let rhs = dist_to_family(cfg.ambient(), &family)?;
    Ok(IntersectionReport { lhs, rhs, agree: lhs == rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApartmentReport {
    pub dist_to_apartment: u32,
    pub intersection_number: u32,
}

/// The apartment spanned by the lines `U_j = ∩_{i != j} ker f_i` of `n`
/// generically independent forms, as a family of rank-1 generators.
pub fn apartment_of_forms(forms: &[DualForm]) -> Result<FFamily> {
    let first = forms.first().ok_or_else(|| Error::InvalidParameter("no forms".into()))?;
    let ambient = first.ambient().clone();
    let n = ambient.dim();
    if forms.len() != n || n < 2 {
        return Err(Error::DimensionMismatch { expected: n, found: forms.len() });
    }
    intersect_hyperplanes(forms)?;
    let kernels: Vec<SplitSubmodule> = forms.iter().map(hyperplane_kernel).collect();
    let lines = (0..n)
        .map(|j| {
            let others: Vec<SplitSubmodule> =
                kernels.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, k)| k.clone()).collect();
            intersect_spans(&ambient, &others)
        })
        .collect::<Result<Vec<_>>>()?;
    FFamily::from_submodules(ambient, lines)
}

/// Distance from `{M}` to the apartment of the generic hyperplanes, next to
/// their intersection number. The first never exceeds the second.
pub fn apartment_distance_demo(forms: &[DualForm]) -> Result<ApartmentReport> {
    let apartment = apartment_of_forms(forms)?;
    Ok(ApartmentReport {
        dist_to_apartment: dist_to_family(apartment.ambient(), &apartment)?,
        intersection_number: intersect_hyperplanes(forms)?,
    })
}

/// The intersection cycle `P(L_0)` + `mult * P(∩ N_ik)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    /// `L_0`, the saturation of `∩ N_iK` in `M`.
    pub generic_component: SplitSubmodule,
    pub generic_multiplicity: u32,
    /// Basis of `∩ N_ik` in `M_k`.
    pub special_component: FpMatrix,
    pub special_multiplicity: u32,
}

/// Decomposition using the complements chosen by [`complete_to_complement`].
pub fn decompose_intersection(cfg: &CycleConfiguration) -> Result<CycleDecomposition> {
    let (l0, ls) = decomposition_parts(cfg)?;
    let complements = ls.iter().map(|l| complete_to_complement(l, &l0)).collect::<Result<Vec<_>>>()?;
    decompose_with_complements(cfg, &complements)
}

/// `L_0` and the partial intersections `L_j`, after checking properness.
pub fn decomposition_parts(cfg: &CycleConfiguration) -> Result<(SplitSubmodule, Vec<SplitSubmodule>)> {
    let r0 = match properness_check(cfg) {
        Properness::ProperHigherDim(r0) if r0 > 0 => r0,
        other => return Err(Error::ProperFail(format!("configuration is {other}"))),
    };
    let l0 = generic_intersection(cfg);
    if l0.rank() != r0 {
        return Err(Error::RankMismatch { expected: r0, found: l0.rank() });
    }
    Ok((l0, partial_intersections(cfg)?))
}

/// Decomposition using caller-supplied complements `L_j'` with
/// `L_j = L_0 ⊕ L_j'`.
pub fn decompose_with_complements(
    cfg: &CycleConfiguration,
    complements: &[SplitSubmodule],
) -> Result<CycleDecomposition> {
    let (l0, ls) = decomposition_parts(cfg)?;
    if complements.len() != ls.len() {
        return Err(Error::DimensionMismatch { expected: ls.len(), found: complements.len() });
    }
    let ambient = cfg.ambient();
    for (l, c) in ls.iter().zip(complements) {
        c.check_ambient(ambient)?;
        let sum = SplitSubmodule::new(ambient.clone(), l0.columns().hstack(c.columns()))?;
        if !sum.same_module(l) {
            return Err(Error::NotSplitInside);
        }
    }
    let mut generators = complements.to_vec();
    generators.push(l0.clone());
    let family = FFamily::from_submodules(ambient.clone(), generators)?;
    Ok(CycleDecomposition {
        generic_component: l0,
        generic_multiplicity: 1,
        special_component: special_intersection(cfg),
        special_multiplicity: dist_to_family(ambient, &family)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::bfs_dist;
    use crate::building::EnumCap;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn std_lattice(p: u64, n: usize) -> LatticeBasis {
        LatticeBasis::standard(ctx(p), n)
    }

    fn form(m: &LatticeBasis, a: &[i64]) -> DualForm {
        DualForm::from_i64(m.clone(), a).unwrap()
    }

    fn sub(m: &LatticeBasis, cols: &[&[i64]]) -> SplitSubmodule {
        let cols: Vec<Vec<Scalar>> = cols.iter().map(|c| c.iter().map(|&x| Scalar::from(x)).collect()).collect();
        SplitSubmodule::new(m.clone(), Matrix::from_columns(m.dim(), &cols).unwrap()).unwrap()
    }

    fn coordinate_forms(m: &LatticeBasis) -> Vec<DualForm> {
        (0..m.dim())
            .map(|i| {
                let mut a = vec![0; m.dim()];
                a[i] = 1;
                form(m, &a)
            })
            .collect()
    }

    #[test]
    fn dual_form_validation() {
        let m = std_lattice(3, 2);
        assert_eq!(DualForm::from_i64(m.clone(), &[3, 9]).unwrap_err(), Error::NotPrimitive);
        assert_eq!(
            DualForm::new(m.clone(), vec!["1/3".parse().unwrap(), Scalar::one()]).unwrap_err(),
            Error::NonIntegralEntry { row: 0, col: 0 }
        );
        assert!(DualForm::from_i64(m, &[3, 2]).is_ok());
    }

    #[test]
    fn hyperplane_kernel_examples() {
        let m = std_lattice(5, 3);
        let k = hyperplane_kernel(&form(&m, &[1, 0, 0]));
        assert!(k.same_module(&sub(&m, &[&[0, 1, 0], &[0, 0, 1]])));

        let m2 = std_lattice(2, 2);
        let f = form(&m2, &[1, 2]);
        let k = hyperplane_kernel(&f);
        assert!(k.same_module(&sub(&m2, &[&[-2, 1]])));
        assert!(f.evaluate(&k.columns().column(0)).is_zero());

        let m3 = std_lattice(3, 3);
        let k = hyperplane_kernel(&form(&m3, &[0, 1, 3]));
        assert!(k.same_module(&sub(&m3, &[&[1, 0, 0], &[0, -3, 1]])));
    }

    #[test]
    fn intersect_hyperplanes_examples() {
        let m = std_lattice(5, 3);
        assert_eq!(intersect_hyperplanes(&coordinate_forms(&m)).unwrap(), 0);
        let m = std_lattice(3, 2);
        assert_eq!(intersect_hyperplanes(&[form(&m, &[1, 0]), form(&m, &[1, 27])]).unwrap(), 3);
        let m = std_lattice(2, 3);
        let raw: Vec<Vec<Scalar>> =
            [[1, 0, 0], [0, 1, 0], [0, 2, 4]].iter().map(|c| c.iter().map(|&x| Scalar::from(x)).collect()).collect();
        assert_eq!(intersection_number_of_forms(m.ctx(), &raw).unwrap(), 2);
        assert_eq!(DualForm::from_i64(m.clone(), &[0, 2, 4]).unwrap_err(), Error::NotPrimitive);
        let forms = [form(&m, &[1, 0, 0]), form(&m, &[0, 1, 0]), form(&m, &[1, 2, 4])];
        assert_eq!(intersect_hyperplanes(&forms).unwrap(), 2);
        let f = form(&m, &[1, 1, 0]);
        assert_eq!(
            intersect_hyperplanes(&[f.clone(), f, form(&m, &[0, 0, 1])]).unwrap_err(),
            Error::ImproperGenericIntersection
        );
    }

    #[test]
    fn properness_examples() {
        let m = std_lattice(3, 3);
        let cfg = CycleConfiguration::from_forms(coordinate_forms(&m)).unwrap();
        assert_eq!(properness_check(&cfg), Properness::EmptyIntersection);

        let m2 = std_lattice(3, 2);
        let cfg = CycleConfiguration::from_forms(vec![form(&m2, &[1, 0]), form(&m2, &[1, 27])]).unwrap();
        assert_eq!(properness_check(&cfg), Properness::Proper0Dim);

        let n1 = sub(&m, &[&[1, 0, 0], &[0, 1, 0]]);
        let n2 = sub(&m, &[&[1, 0, 0], &[0, 1, 9]]);
        let cfg = CycleConfiguration::from_submodules(m.clone(), vec![n1.clone(), n1]).unwrap();
        assert_eq!(properness_check(&cfg), Properness::Improper);
        let cfg = CycleConfiguration::from_submodules(
            m.clone(),
            vec![sub(&m, &[&[1, 0, 0], &[0, 1, 0]]), n2],
        )
        .unwrap();
        assert_eq!(properness_check(&cfg), Properness::ProperHigherDim(1));
    }

    #[test]
    fn build_f_examples() {
        let m = std_lattice(3, 3);
        let cfg = CycleConfiguration::from_forms(coordinate_forms(&m)).unwrap();
        let f = build_f(&cfg).unwrap();
        for (j, g) in f.generators().iter().enumerate() {
            let mut e = [0i64; 3];
            e[j] = 1;
            assert!(SplitSubmodule::new(m.clone(), g.clone()).unwrap().same_module(&sub(&m, &[&e])));
        }
        assert_eq!(dist_to_family(&m, &f).unwrap(), 0);

        let m2 = std_lattice(3, 2);
        let cfg = CycleConfiguration::from_forms(vec![form(&m2, &[1, 0]), form(&m2, &[1, 27])]).unwrap();
        let f = build_f(&cfg).unwrap();
        let g = |j: usize| SplitSubmodule::new(m2.clone(), f.generators()[j].clone()).unwrap();
        assert!(g(0).same_module(&sub(&m2, &[&[-27, 1]])));
        assert!(g(1).same_module(&sub(&m2, &[&[0, 1]])));

        let direct = CycleConfiguration::from_submodules(
            m.clone(),
            vec![sub(&m, &[&[1, 0, 0]]), sub(&m, &[&[0, 1, 0], &[0, 0, 1]])],
        )
        .unwrap();
        assert_eq!(dist_to_family(&m, &build_f(&direct).unwrap()).unwrap(), 0);

        let higher = CycleConfiguration::from_submodules(m.clone(), vec![sub(&m, &[&[1, 0, 0], &[0, 1, 0]])]).unwrap();
        assert!(matches!(build_f(&higher), Err(Error::ProperFail(_))));
    }

    #[test]
    fn plane_pair_distance_matches_bfs() {
        let m = std_lattice(3, 2);
        let cfg = CycleConfiguration::from_forms(vec![form(&m, &[1, 0]), form(&m, &[1, 27])]).unwrap();
        let f = build_f(&cfg).unwrap();
        assert_eq!(dist_to_family(&m, &f).unwrap(), 3);
        assert_eq!(dist_to_family_windowed(&m, &f).unwrap(), 3);
        let base = dist(&m, &f.vertex(&[0, 0]).unwrap()).unwrap();
        let targets = family_keys(&m, &f, 4 + base).unwrap();
        assert_eq!(bfs_dist(&m, &m, &targets, 4, EnumCap::default()).unwrap(), Some(3));
        let r = verify_intersection_distance(&cfg).unwrap();
        assert_eq!(r, IntersectionReport { lhs: 3, rhs: 3, agree: true });
    }

    #[test]
    fn coordinate_hyperplanes_report() {
        let m = std_lattice(2, 3);
        let cfg = CycleConfiguration::from_forms(coordinate_forms(&m)).unwrap();
        assert_eq!(verify_intersection_distance(&cfg).unwrap(), IntersectionReport { lhs: 0, rhs: 0, agree: true });
    }

    #[test]
    fn submodule_equations_cut_out_the_submodule() {
        let m = std_lattice(3, 3);
        let n = sub(&m, &[&[1, 0, 0], &[0, 1, 9]]);
        let eqs = LinearCycle::Submodule(n.clone()).equations().unwrap();
        assert_eq!(eqs.len(), 1);
        let f = DualForm::new(m.clone(), eqs[0].clone()).unwrap();
        assert!(hyperplane_kernel(&f).same_module(&n));
    }

    #[test]
    fn apartment_demo_triangular_instance() {
        let m = std_lattice(2, 3);
        let forms = [form(&m, &[1, 0, 0]), form(&m, &[1, 2, 0]), form(&m, &[1, 0, 2])];
        let r = apartment_distance_demo(&forms).unwrap();
        assert_eq!(r, ApartmentReport { dist_to_apartment: 1, intersection_number: 2 });
        let ap = apartment_of_forms(&forms).unwrap();
        assert_eq!(dist_to_family_windowed(&m, &ap).unwrap(), 1);
    }

    #[test]
    fn apartment_demo_agrees_for_n2() {
        let m = std_lattice(3, 2);
        let r = apartment_distance_demo(&[form(&m, &[1, 0]), form(&m, &[1, 9])]).unwrap();
        assert_eq!(r, ApartmentReport { dist_to_apartment: 2, intersection_number: 2 });
    }

    #[test]
    fn decomposition_examples() {
        let m = std_lattice(3, 3);
        for (t, expected) in [(9, 2), (3, 1), (1, 0)] {
            let cfg = CycleConfiguration::from_submodules(
                m.clone(),
                vec![sub(&m, &[&[1, 0, 0], &[0, 1, 0]]), sub(&m, &[&[1, 0, 0], &[0, 1, t]])],
            )
            .unwrap();
            let d = decompose_intersection(&cfg).unwrap();
            assert!(d.generic_component.same_module(&sub(&m, &[&[1, 0, 0]])));
            assert_eq!(d.generic_multiplicity, 1);
            assert_eq!(d.special_multiplicity, expected);
            let special_dim = if t == 1 { 1 } else { 2 };
            assert_eq!(d.special_component.cols(), special_dim);
        }
    }

    #[test]
    fn generator_scaling_changes_nothing() {
        let m = std_lattice(3, 2);
        let cfg = CycleConfiguration::from_forms(vec![form(&m, &[1, 0]), form(&m, &[1, 27])]).unwrap();
        let f = build_f(&cfg).unwrap();
        for (j, e) in [(0, 2), (1, -3), (0, 5)] {
            let scaled = f.with_scaled_generator(j, e).unwrap();
            assert_eq!(dist_to_family(&m, &scaled).unwrap(), 3);
            assert_eq!(dist_to_family_windowed(&m, &scaled).unwrap(), 3);
        }
    }
}
