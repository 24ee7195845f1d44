//! Vertices of the Bruhat-Tits building of `PGL(V)` as homothety classes of
//! lattices.
//!
//! Distances are computed from invariant factors; the breadth-first search in
//! this module walks the vertex graph explicitly and exists to cross-check
//! that formula.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{invariant_exponents, LatticeBasis};
use crate::matrix::Matrix;
use crate::padic::{PAdicContext, Scalar, Valuation};

/// Environment variable overriding [`EnumCap::default`].
pub const ENUM_CAP_ENV: &str = "BTPGL_ENUM_CAP";

/// Upper bound on the number of residue subspaces enumerated per vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCap(pub u64);

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap(1_000_000)
    }
}

impl EnumCap {
    /// Default cap, overridden by `BTPGL_ENUM_CAP` when it parses.
    pub fn from_env() -> Self {
        std::env::var(ENUM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(EnumCap)
            .unwrap_or_default()
    }
}

/// Canonical encoding of a lattice class relative to a reference lattice:
/// the upper triangular Hermite form of the transition matrix, with diagonal
/// `p^{e_i}` and entries above the diagonal reduced into `[0, p^{e_row})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    diagonal: Vec<u32>,
    upper: Vec<BigUint>,
}

impl ClassKey {
    /// Exponents of the Hermite diagonal.
    pub fn diagonal(&self) -> &[u32] {
        &self.diagonal
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.diagonal.len() as u32).to_be_bytes());
        for e in &self.diagonal {
            out.extend_from_slice(&e.to_be_bytes());
        }
        for x in &self.upper {
            let bytes = x.to_bytes_be();
            out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassKey({self})")
    }
}

/// Hermite form of an integral nonsingular matrix under column operations
/// over `R`. Returns the key and the reduced matrix (same lattice).
fn hermite_form(ctx: &PAdicContext, t: &Matrix) -> (ClassKey, Matrix) {
    let n = t.rows();
    let mut h = t.clone();
    let mut exps = vec![0u32; n];
    for i in (0..n).rev() {
        let mut best: Option<(Valuation, usize)> = None;
        for j in 0..=i {
            let v = ctx.val(&h[(i, j)]);
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, j));
            }
        }
        let (v, j) = best.expect("nonempty row");
        let e = v.finite().expect("nonsingular matrix") as u32;
        h.swap_cols(j, i);
        let unit = ctx.unit_part(&h[(i, i)]);
        h.scale_col(i, &unit.recip());
        exps[i] = e;
        let pivot = h[(i, i)].clone();
        for j in 0..i {
            if !h[(i, j)].is_zero() {
                let f = &h[(i, j)] / &pivot;
                h.sub_col_multiple(j, i, &f);
            }
        }
    }
    let mut upper = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n {
        for r in (0..j).rev() {
            let x = h[(r, j)].clone();
            let rep = ctx.residue_mod_power(&x, exps[r]).expect("integral entry");
            let rep_s = Scalar::from_integer(num_bigint::BigInt::from(rep));
            if rep_s != x {
                let q = (&x - &rep_s) / &h[(r, r)];
                h.sub_col_multiple(j, r, &q);
            }
        }
    }
    for r in 0..n {
        for j in r + 1..n {
            upper.push(h[(r, j)].numer().to_biguint().expect("reduced entry is non-negative"));
        }
    }
    (ClassKey { diagonal: exps, upper }, h)
}

/// Scales a nonsingular coordinate matrix so its minimal entry valuation is
/// zero, then reduces it to Hermite form.
fn canonical_coordinates(ctx: &PAdicContext, t: &Matrix) -> (ClassKey, Matrix) {
    let m = t.min_valuation(ctx).finite().expect("nonsingular matrix");
    let scaled = if m == 0 { t.clone() } else { t.scaled(&ctx.power(-m)) };
    hermite_form(ctx, &scaled)
}

/// Largest modulus for the machine-integer Hermite reduction; residues
/// multiply without overflowing `i128`.
const MAX_INT_MODULUS: i128 = 1 << 62;

fn int_valuation(mut x: i128, p: i128) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inverse_mod(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "unit modulo p^N");
    s0.rem_euclid(m)
}

/// Same form as [`hermite_form`] for an integer matrix (row-major) whose
/// determinant has valuation `det_val`, computed modulo `p^N` with
/// `N = det_val - n * minval + 1`. Then `p^N R^n` lies in the lattice, so
/// reducing modulo `p^N` does not change it. `None` when `p^N` is too large.
fn hermite_form_int(p: u64, n: usize, t: &[i128], det_val: i64) -> Option<(ClassKey, Vec<i128>)> {
    let p = p as i128;
    let m = t.iter().filter(|&&x| x != 0).map(|&x| int_valuation(x, p)).min()?;
    let big_n = u32::try_from(det_val - n as i64 * m as i64 + 1).ok()?;
    let mut q: i128 = 1;
    for _ in 0..big_n {
        q = q.checked_mul(p).filter(|&q| q <= MAX_INT_MODULUS)?;
    }
    let pm = p.pow(m);
    let mut h: Vec<i128> = t.iter().map(|&x| (x / pm).rem_euclid(q)).collect();
    let at = |i: usize, j: usize| i * n + j;
    let mut exps = vec![0u32; n];
    for i in (0..n).rev() {
        let (e, j) = (0..=i)
            .filter(|&j| h[at(i, j)] != 0)
            .map(|j| (int_valuation(h[at(i, j)], p), j))
            .min()?;
        if j != i {
            for r in 0..n {
                h.swap(at(r, j), at(r, i));
            }
        }
        let pe = p.pow(e);
        let uinv = inverse_mod(h[at(i, i)] / pe, q);
        for r in 0..n {
            h[at(r, i)] = h[at(r, i)] * uinv % q;
        }
        exps[i] = e;
        for j in 0..i {
            let f = h[at(i, j)] / pe;
            if f != 0 {
                for r in 0..n {
                    h[at(r, j)] = (h[at(r, j)] - f * h[at(r, i)]).rem_euclid(q);
                }
            }
        }
    }
    for j in 1..n {
        for r in (0..j).rev() {
            let pe = p.pow(exps[r]);
            let x = h[at(r, j)];
            let f = x.div_euclid(pe);
            if f != 0 {
                for k in 0..=r {
                    h[at(k, j)] = (h[at(k, j)] - f * h[at(k, r)]).rem_euclid(q);
                }
            }
        }
    }
    let mut upper = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for r in 0..n {
        for j in r + 1..n {
            upper.push(BigUint::from(h[at(r, j)] as u128));
        }
    }
    Some((ClassKey { diagonal: exps, upper }, h))
}

fn to_int_entries(m: &Matrix) -> Option<Vec<i128>> {
    m.entries().map(|x| if x.is_integer() { x.numer().to_i128() } else { None }).collect()
}

fn from_int_entries(n: usize, entries: &[i128]) -> Matrix {
    let rows = entries.chunks(n).map(|r| r.iter().map(|&x| Scalar::from_integer(x)).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// Walks the vertex graph in reference coordinates: each vertex is stored as
/// its Hermite form `H`, and its neighbors are the Hermite forms of `H C`.
struct Expander {
    ctx: PAdicContext,
    n: usize,
    changes: Vec<Matrix>,
    int_changes: Vec<Vec<i128>>,
    change_vals: Vec<i64>,
}

enum Child {
    Int(Vec<i128>),
    Rational(Matrix),
}

impl Expander {
    fn new(ctx: PAdicContext, n: usize, cap: EnumCap) -> Result<Self> {
        let changes = neighbor_coordinate_changes(&ctx, n, cap)?;
        let int_changes = changes.iter().map(|c| to_int_entries(c).expect("integer entries")).collect();
        let change_vals = changes.iter().map(|c| ctx.val(&c.determinant()).finite().expect("nonsingular")).collect();
        Ok(Self { ctx, n, changes, int_changes, change_vals })
    }

    /// Keys of all neighbors of the vertex with Hermite form `h` and key `key`,
    /// with a thunk producing the neighbor's own Hermite form.
    fn children(&self, key: &ClassKey, h: &Matrix) -> Vec<(ClassKey, Child)> {
        let n = self.n;
        let det_val: i64 = key.diagonal.iter().map(|&e| e as i64).sum();
        let int_h = to_int_entries(h);
        let mut out = Vec::with_capacity(self.changes.len());
        for (idx, c) in self.changes.iter().enumerate() {
            if let Some(hi) = &int_h {
                let ci = &self.int_changes[idx];
                let mut t = vec![0i128; n * n];
                let mut ok = true;
                for i in 0..n {
                    for j in 0..n {
                        let mut acc: i128 = 0;
                        for k in 0..n {
                            match hi[i * n + k].checked_mul(ci[k * n + j]).and_then(|v| acc.checked_add(v)) {
                                Some(v) => acc = v,
                                None => ok = false,
                            }
                        }
                        t[i * n + j] = acc;
                    }
                }
                if ok {
                    if let Some((k2, h2)) = hermite_form_int(self.ctx.p(), n, &t, det_val + self.change_vals[idx]) {
                        out.push((k2, Child::Int(h2)));
                        continue;
                    }
                }
            }
            let (k2, h2) = canonical_coordinates(&self.ctx, &(h * c));
            out.push((k2, Child::Rational(h2)));
        }
        out
    }

    fn materialize(&self, child: Child) -> Matrix {
        match child {
            Child::Int(v) => from_int_entries(self.n, &v),
            Child::Rational(m) => m,
        }
    }
}

pub fn class_key(reference: &LatticeBasis, l: &LatticeBasis) -> Result<ClassKey> {
    let t = reference.coordinates_of(l)?;
    Ok(canonical_coordinates(reference.ctx(), &t).0)
}

/// Whether the two lattices are homothetic.
pub fn class_equal(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<bool> {
    let ctx = l1.ctx();
    let t = l1.coordinates_of(l2)?;
    let m = t.min_valuation(ctx).finite().ok_or(Error::SingularTransition)?;
    let det = ctx.val(&t.determinant()).finite().ok_or(Error::SingularTransition)?;
    Ok(det == m * l1.dim() as i64)
}

/// Combinatorial distance of the two vertices: the spread of the invariant
/// factor exponents.
pub fn dist(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<u32> {
    let e = invariant_exponents(l1, l2)?;
    Ok((e[e.len() - 1] - e[0]) as u32)
}

pub fn adjacent(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<bool> {
    Ok(dist(l1, l2)? == 1)
}

/// `[n choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    // row[j] = [m choose j]_q, Pascal-style: [m,j] = [m-1,j-1] + q^j [m-1,j].
    let mut row = vec![0u128; (k + 1) as usize];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k.min(m) as usize).rev() {
            let qj = (q as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
            row[j] = row[j - 1].saturating_add(qj.saturating_mul(row[j]));
        }
    }
    row[k as usize]
}

/// Number of vertices adjacent to any given vertex: nonzero proper subspaces
/// of `F_q^n`.
pub fn neighbor_count(n: usize, q: u64) -> u128 {
    (1..n as u32)
        .map(|k| gaussian_binomial(n as u32, k, q))
        .fold(0u128, u128::saturating_add)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Coordinate changes `C` such that `L * C` runs over the lattices strictly
/// between `pL` and `L`, one per nonzero proper subspace of `L/pL`. Each
/// subspace is represented by its reduced row echelon basis.
pub fn neighbor_coordinate_changes(ctx: &PAdicContext, n: usize, cap: EnumCap) -> Result<Vec<Matrix>> {
    let p = ctx.p();
    let count = neighbor_count(n, p);
    if count > cap.0 as u128 {
        return Err(Error::EnumerationTooLarge { count, cap: cap.0 });
    }
    let p_scalar = Scalar::from(p as i64);
    let mut out = Vec::with_capacity(count as usize);
    for k in 1..n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &pc)| {
                    (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (row, c))
                })
                .collect();
            let total = (p as u128).pow(free.len() as u32);
            for mut code in 0..total {
                let mut c = Matrix::zeros(n, n);
                for (row, &pc) in pivots.iter().enumerate() {
                    c[(pc, row)] = Scalar::one();
                }
                for &(row, col) in &free {
                    c[(col, row)] = Scalar::from((code % p as u128) as i64);
                    code /= p as u128;
                }
                let mut next = k;
                for col in (0..n).filter(|c| !pivots.contains(c)) {
                    c[(col, next)] = p_scalar.clone();
                    next += 1;
                }
                out.push(c);
            }
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// One representative per vertex adjacent to `{l}`, with its key relative
/// to `reference`.
pub fn neighbors_with_keys(
    reference: &LatticeBasis,
    l: &LatticeBasis,
    cap: EnumCap,
) -> Result<Vec<(ClassKey, LatticeBasis)>> {
    let ctx = *reference.ctx();
    let changes = neighbor_coordinate_changes(&ctx, l.dim(), cap)?;
    let coords = reference.coordinates_of(l)?;
    let mut seen = HashSet::with_capacity(changes.len());
    let mut out = Vec::with_capacity(changes.len());
    for c in &changes {
        let (key, h) = canonical_coordinates(&ctx, &(&coords * c));
        assert!(seen.insert(key.clone()), "duplicate neighbor class {key}");
        out.push((key, LatticeBasis::new(ctx, reference.matrix() * &h)?));
    }
    Ok(out)
}

/// Representatives of all vertices adjacent to `{l}`.
pub fn neighbors(reference: &LatticeBasis, l: &LatticeBasis, cap: EnumCap) -> Result<Vec<LatticeBasis>> {
    Ok(neighbors_with_keys(reference, l, cap)?.into_iter().map(|(_, n)| n).collect())
}

/// Breadth-first search from `start` until a vertex whose key is in
/// `targets` appears. `None` when nothing is found within `radius_cap` steps.
pub fn bfs_dist(
    reference: &LatticeBasis,
    start: &LatticeBasis,
    targets: &HashSet<ClassKey>,
    radius_cap: u32,
    cap: EnumCap,
) -> Result<Option<u32>> {
    let ctx = *reference.ctx();
    let (start_key, start_h) = canonical_coordinates(&ctx, &reference.coordinates_of(start)?);
    if targets.contains(&start_key) {
        return Ok(Some(0));
    }
    if radius_cap == 0 {
        return Ok(None);
    }
    let expander = Expander::new(ctx, start.dim(), cap)?;
    let mut visited = HashSet::from([start_key.clone()]);
    let mut frontier = vec![(start_key, start_h)];
    for depth in 1..=radius_cap {
        let mut next = Vec::new();
        for (key, h) in &frontier {
            for (k2, child) in expander.children(key, h) {
                if visited.contains(&k2) {
                    continue;
                }
                if targets.contains(&k2) {
                    return Ok(Some(depth));
                }
                visited.insert(k2.clone());
                if depth < radius_cap {
                    next.push((k2, expander.materialize(child)));
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct BallNode {
    pub key: ClassKey,
    pub depth: u32,
    pub lattice: LatticeBasis,
}

/// The vertices within a given distance of a center, in discovery order, and
/// every edge between them as index pairs `(i, j)` with `i < j`.
#[derive(Debug, Clone)]
pub struct Ball {
    pub nodes: Vec<BallNode>,
    pub edges: Vec<(usize, usize)>,
}

impl Ball {
    pub fn index_of(&self, key: &ClassKey) -> Option<usize> {
        self.nodes.iter().position(|n| &n.key == key)
    }
}

pub fn bfs_ball(reference: &LatticeBasis, center: &LatticeBasis, radius: u32, cap: EnumCap) -> Result<Ball> {
    let ctx = *reference.ctx();
    let (key, h) = canonical_coordinates(&ctx, &reference.coordinates_of(center)?);
    let mut index: HashMap<ClassKey, usize> = HashMap::from([(key.clone(), 0)]);
    let mut nodes = vec![BallNode { key, depth: 0, lattice: center.clone() }];
    if radius == 0 {
        return Ok(Ball { nodes, edges: Vec::new() });
    }
    let expander = Expander::new(ctx, center.dim(), cap)?;
    let mut coords = vec![h];
    let mut adjacency: Vec<Vec<ClassKey>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let depth = nodes[i].depth;
        let mut adj = Vec::with_capacity(expander.changes.len());
        for (k2, child) in expander.children(&nodes[i].key, &coords[i]) {
            if depth < radius && !index.contains_key(&k2) {
                let h2 = expander.materialize(child);
                index.insert(k2.clone(), nodes.len());
                nodes.push(BallNode {
                    key: k2.clone(),
                    depth: depth + 1,
                    lattice: LatticeBasis::new(ctx, reference.matrix() * &h2)?,
                });
                coords.push(h2);
            }
            adj.push(k2);
        }
        adjacency.push(adj);
        i += 1;
    }
    let mut edges = Vec::new();
    for (i, adj) in adjacency.iter().enumerate() {
        let mut js: Vec<usize> = adj.iter().filter_map(|k| index.get(k).copied()).filter(|&j| j > i).collect();
        js.sort_unstable();
        edges.extend(js.into_iter().map(|j| (i, j)));
    }
    Ok(Ball { nodes, edges })
}

/// A frame `V = ⊕ K v_i`, given by the spanning vectors as matrix columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Apartment {
    ctx: PAdicContext,
    frame: Matrix,
}

impl Apartment {
    pub fn new(ctx: PAdicContext, frame: Matrix) -> Result<Self> {
        if !frame.is_square() {
            return Err(Error::DimensionMismatch { expected: frame.rows(), found: frame.cols() });
        }
        if frame.determinant().is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(Self { ctx, frame })
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    /// The vertex `{sum R p^{k_i} v_i}`.
    pub fn vertex(&self, exponents: &[i64]) -> LatticeBasis {
        let mut m = self.frame.clone();
        for (j, &k) in exponents.iter().enumerate() {
            m.scale_col(j, &self.ctx.power(k));
        }
        LatticeBasis::new(self.ctx, m).expect("frame is nonsingular")
    }
}

/// If `{l}` lies in the apartment, the exponents `k` (normalized to minimum 0)
/// with `{l} = {sum R p^{k_i} v_i}`.
pub fn in_apartment(ap: &Apartment, l: &LatticeBasis) -> Result<Option<Vec<i64>>> {
    if ap.frame.rows() != l.dim() {
        return Err(Error::DimensionMismatch { expected: ap.frame.rows(), found: l.dim() });
    }
    let ctx = &ap.ctx;
    let inv = ap.frame.inverse().ok_or(Error::SingularBasis)?;
    let mut t = &inv * l.matrix();
    let mut ks = Vec::with_capacity(l.dim());
    for i in 0..t.rows() {
        let row = t.row(i);
        let k = crate::padic::min_valuation(ctx, &row).finite().ok_or(Error::SingularBasis)?;
        t.scale_row(i, &ctx.power(-k));
        ks.push(k);
    }
    if ctx.val(&t.determinant()) != Valuation::Finite(0) {
        return Ok(None);
    }
    let base = *ks.iter().min().expect("n >= 1");
    Ok(Some(ks.into_iter().map(|k| k - base).collect()))
}

/// Number of neighbors as a plain integer, for callers that know it is small.
pub fn neighbor_count_usize(n: usize, q: u64) -> Option<usize> {
    neighbor_count(n, q).to_usize()
}
