//! Framed quivers, injective modules of the Jacobian algebra, cocyclic
//! framed representations, and the comparison of `I ⊗ V` with `M_{T,ℓ}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, QMatrix};
use crate::lamination::{Lamination, LaminationError};
use crate::quivermod::{chi_table, jacobian_basis, Atom, Coef, JacobianBasis, ModuleError, QPModule};
use crate::surface::{QuiverWithPotential, SignedAdjacency, SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FramedError {
    #[error("framing vector is negative at arcs {0:?}")]
    AssumptionViolation(Vec<usize>),
    #[error("h-vector is not integral")]
    NotIntegral,
    #[error("enumeration too large: {0} candidate representations")]
    TooLarge(u128),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Lamination(#[from] LaminationError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// `n_j = Σ_i ε_ji h_i`, indexed by edge id (zero on boundary segments).
pub fn framing_vector(t: &Triangulation, lam: &Lamination) -> Result<Vec<usize>, FramedError> {
    let h = lam.h_vector(t)?;
    let h: Vec<i64> = h.iter().map(|x| x.to_integer()).collect::<Option<_>>().ok_or(FramedError::NotIntegral)?;
    framing_from_h(&t.signed_adjacency(), t, &h)
}

pub(crate) fn framing_from_h(eps: &SignedAdjacency, t: &Triangulation, h: &[i64]) -> Result<Vec<usize>, FramedError> {
    let m = t.num_edges();
    let n: Vec<i64> = (0..m)
        .map(|j| if t.is_arc(j) { (0..m).map(|i| eps.get(j, i) * h[i]).sum() } else { 0 })
        .collect();
    let bad: Vec<usize> = (0..m).filter(|&j| n[j] < 0).collect();
    if !bad.is_empty() {
        return Err(FramedError::AssumptionViolation(bad));
    }
    Ok(n.into_iter().map(|x| x as usize).collect())
}

/// `Q̃`: `Q(T)` plus `n_j` arrows `j → ∞`. Nothing leaves `∞`, so there
/// are no new cycles and the potential is the one of `Q(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedQuiver {
    pub base: QuiverWithPotential,
    pub framing: Vec<usize>,
    /// Source vertex of each framing arrow.
    pub framing_arrows: Vec<usize>,
}

impl FramedQuiver {
    pub fn framing_vertex(&self) -> usize {
        self.base.num_vertices
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("vertices: {} + ∞\n", self.base.num_vertices));
        for (k, a) in self.base.arrows.iter().enumerate() {
            s.push_str(&format!("arrow {k}: {} -> {}\n", a.source, a.target));
        }
        for (k, j) in self.framing_arrows.iter().enumerate() {
            s.push_str(&format!("framing {k}: {j} -> ∞\n"));
        }
        s
    }
}

pub fn build_framed(t: &Triangulation, n: &[usize]) -> Result<FramedQuiver, FramedError> {
    let base = t.quiver_with_potential()?;
    let framing_arrows = n.iter().enumerate().flat_map(|(j, &k)| core::iter::repeat_n(j, k)).collect();
    Ok(FramedQuiver { base, framing: n.to_vec(), framing_arrows })
}

/// A central charge in the closed upper half plane, given by real and
/// imaginary parts. Stability is decided combinatorially (cocyclicity), so
/// these values are reported but not used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityData {
    pub charges: Vec<(BigRational, BigRational)>,
    pub framing_charge: (BigRational, BigRational),
}

impl StabilityData {
    /// `Z_i = √−1` for every vertex and `Z̃(e_∞) = m` with `m = 1 + #vertices`,
    /// so the framing vertex has the smallest phase.
    pub fn standard(fq: &FramedQuiver) -> Self {
        let n = fq.base.num_vertices;
        StabilityData {
            charges: vec![(BigRational::zero(), BigRational::one()); n],
            framing_charge: (rat(1 + n as i64), BigRational::zero()),
        }
    }

    pub fn is_valid(&self) -> bool {
        let upper = |(x, y): &(BigRational, BigRational)| *y > BigRational::zero() || (y.is_zero() && *x < BigRational::zero());
        // arg Z_∞ = 0 lies below every phase in (0, π]
        self.charges.iter().all(upper) && self.framing_charge.1.is_zero() && self.framing_charge.0 > BigRational::zero()
    }
}

/// `I_j`: basis the classes of paths `q: i ⇝ j`, with arrow `a` sending
/// `[q]` to `[q']` when `q = a` followed by `q'`.
pub fn injective_module(qp: &QuiverWithPotential, basis: &JacobianBasis, j: usize) -> QPModule {
    let mut m = QPModule::zero(qp);
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for i in 0..qp.num_vertices {
        for p in basis.paths_between(i, j) {
            index.insert(p.clone(), m.atoms.len());
            let tag = if p.is_empty() { format!("e{j}") } else { format!("{p:?}->{j}") };
            m.atoms.push(Atom { vertex: i, tag });
        }
    }
    for (p, &x) in &index {
        if let Some((&a, rest)) = p.split_first() {
            let y = index[rest];
            m.action[a].push((x, Coef::One, y));
        }
    }
    m
}

/// `I ⊗ V = ⊕_j I_j^{n_j}`.
pub fn framed_target(t: &Triangulation, n: &[usize]) -> Result<QPModule, FramedError> {
    let qp = t.quiver_with_potential()?;
    let basis = jacobian_basis(&qp)?;
    let mut out = QPModule::zero(&qp);
    for (j, &k) in n.iter().enumerate() {
        let ij = injective_module(&qp, &basis, j);
        for _ in 0..k {
            out = out.direct_sum(&ij);
        }
    }
    Ok(out)
}

/// A representation by matrices: `maps[a]` is `d_target × d_source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    pub maps: Vec<QMatrix>,
}

impl MatrixRep {
    /// Specializes `λ` to the given scalar.
    pub fn from_module(m: &QPModule, lambda: &BigRational) -> Self {
        let dims = m.dim_vector();
        // position of each atom within its vertex
        let mut local = vec![0; m.atoms.len()];
        let mut seen = vec![0; m.num_vertices];
        for (x, a) in m.atoms.iter().enumerate() {
            local[x] = seen[a.vertex];
            seen[a.vertex] += 1;
        }
        let maps = m
            .arrows
            .iter()
            .zip(&m.action)
            .map(|(&(s, t), act)| {
                let mut q = QMatrix::zeros(dims[t], dims[s]);
                for &(x, c, y) in act {
                    let v = match c {
                        Coef::One => BigRational::one(),
                        Coef::Lambda => lambda.clone(),
                    };
                    q.set(local[y], local[x], q.get(local[y], local[x]) + v);
                }
                q
            })
            .collect();
        MatrixRep { dims, arrows: m.arrows.clone(), maps }
    }
}

/// Nullspace of `φ ↦ (φ_t A_a − B_a φ_s)_a` together with extra
/// constraints `G_j φ_j = F_j` (framing, fixing `∞` to the identity).
fn intertwiners(a: &MatrixRep, b: &MatrixRep, framing: Option<(&[QMatrix], &[QMatrix])>) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let d = &a.dims;
    let mut offset = vec![0; d.len()];
    let mut total = 0;
    for i in 0..d.len() {
        offset[i] = total;
        total += d[i] * d[i];
    }
    // φ_i[r][c] is unknown offset[i] + r·d_i + c
    let var = |i: usize, r: usize, c: usize| offset[i] + r * d[i] + c;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (k, &(s, t)) in a.arrows.iter().enumerate() {
        let (am, bm) = (&a.maps[k], &b.maps[k]);
        for r in 0..d[t] {
            for c in 0..d[s] {
                let mut row = vec![BigRational::zero(); total + 1];
                for l in 0..d[t] {
                    row[var(t, r, l)] += am.get(l, c);
                }
                for l in 0..d[s] {
                    row[var(s, l, c)] -= bm.get(r, l);
                }
                rows.push(row);
            }
        }
    }
    if let Some((fa, fb)) = framing {
        // f_B,j φ_j = f_A,j
        for j in 0..d.len() {
            for r in 0..fa[j].rows() {
                for c in 0..d[j] {
                    let mut row = vec![BigRational::zero(); total + 1];
                    for l in 0..d[j] {
                        row[var(j, l, c)] += fb[j].get(r, l);
                    }
                    row[total] = fa[j].get(r, c).clone();
                    rows.push(row);
                }
            }
        }
    }
    let sys = QMatrix::from_rows(total + 1, rows);
    (offset, affine_solutions(sys, total))
}

/// Solutions of `[M | b]`: a particular solution first (or none), then a
/// nullspace basis.
fn affine_solutions(sys: QMatrix, n: usize) -> Vec<Vec<BigRational>> {
    let mut lhs = QMatrix::zeros(sys.rows(), n);
    let mut rhs = Vec::with_capacity(sys.rows());
    for r in 0..sys.rows() {
        for c in 0..n {
            lhs.set(r, c, sys.get(r, c).clone());
        }
        rhs.push(sys.get(r, n).clone());
    }
    let Some(p) = lhs.solve(&rhs) else { return Vec::new() };
    let mut out = vec![p];
    out.extend(lhs.nullspace());
    out
}

fn generic_iso(a: &MatrixRep, b: &MatrixRep, framing: Option<(&[QMatrix], &[QMatrix])>, rng: &mut ChaCha8Rng) -> bool {
    if a.dims != b.dims || a.arrows != b.arrows {
        return false;
    }
    let (offset, sols) = intertwiners(a, b, framing);
    let Some((particular, kernel)) = sols.split_first() else { return false };
    let linear = framing.is_none();
    for _ in 0..8 {
        let mut x = if linear { vec![BigRational::zero(); particular.len()] } else { particular.clone() };
        for v in kernel {
            let c = rat(rng.gen_range(-50i64..=50));
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += &c * vi;
            }
        }
        let ok = a.dims.iter().enumerate().all(|(i, &di)| {
            let mut m = QMatrix::zeros(di, di);
            for r in 0..di {
                for c in 0..di {
                    m.set(r, c, x[offset[i] + r * di + c].clone());
                }
            }
            !m.det().is_zero()
        });
        if ok {
            return true;
        }
    }
    false
}

/// Isomorphism test: equal dimension vectors and χ tables, then a sampled
/// generic intertwiner invertible at every vertex, for several rational
/// specializations of `λ`.
pub fn verify_module_iso(a: &QPModule, b: &QPModule, seed: u64) -> Result<bool, FramedError> {
    if a.dim_vector() != b.dim_vector() || a.arrows != b.arrows {
        return Ok(false);
    }
    if chi_table(a)? != chi_table(b)? {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let mut lambda = rat(rng.gen_range(2i64..=97));
        if rng.gen_bool(0.5) {
            lambda = BigRational::one() / lambda;
        }
        let ra = MatrixRep::from_module(a, &lambda);
        let rb = MatrixRep::from_module(b, &lambda);
        if !generic_iso(&ra, &rb, None, &mut rng) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A representation of `Q̃` with a one-dimensional space at `∞`;
/// `framing[j]` is `n_j × d_j`, one row per arrow `j → ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedRep {
    pub rep: MatrixRep,
    pub framing: Vec<QMatrix>,
}

fn row_space(m: &QMatrix) -> QMatrix {
    let (r, piv) = m.rref();
    let rows = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
    QMatrix::from_rows(m.cols(), rows)
}

/// Whether every nonzero subrepresentation meets the framing, i.e. the
/// largest subrepresentation inside `ker f` is zero. The subspace at `i`
/// is tracked by constraint rows `C_i`; an arrow `a: i → j` adds `C_j A_a`.
pub fn cocyclic_check(r: &FramedRep) -> bool {
    let d = &r.rep.dims;
    let mut c: Vec<QMatrix> = (0..d.len()).map(|i| row_space(&r.framing[i])).collect();
    loop {
        let mut changed = false;
        for (k, &(s, t)) in r.rep.arrows.iter().enumerate() {
            if c[t].rows() == 0 || d[s] == 0 {
                continue;
            }
            let pulled = c[t].mul(&r.rep.maps[k]);
            let grown = row_space(&c[s].vstack(&pulled));
            if grown.rows() > c[s].rows() {
                c[s] = grown;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..d.len()).all(|i| c[i].rows() == d[i])
}

/// Counts from the fixed-point comparison at one dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FedotovRow {
    pub dim: Vec<usize>,
    pub cocyclic_fixed: usize,
    pub submodules: usize,
}

/// Coordinate framed representation: each arrow sends each basis vector
/// to at most one basis vector (coefficient 1), each framing arrow sends
/// each basis vector to 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct CoordRep {
    /// Per arrow, per source atom: target atom within the target vertex.
    maps: Vec<Vec<Option<usize>>>,
    /// Per framing arrow, the atoms at its source that map to 1.
    framing: Vec<Vec<bool>>,
}

struct Shape<'a> {
    dims: &'a [usize],
    arrows: Vec<(usize, usize)>,
    framing_arrows: &'a [usize],
    zero: Vec<(usize, usize)>,
}

impl Shape<'_> {
    fn to_framed(&self, r: &CoordRep) -> FramedRep {
        let maps = self
            .arrows
            .iter()
            .zip(&r.maps)
            .map(|(&(s, t), f)| {
                let mut q = QMatrix::zeros(self.dims[t], self.dims[s]);
                for (x, y) in f.iter().enumerate() {
                    if let Some(y) = y {
                        q.set(*y, x, BigRational::one());
                    }
                }
                q
            })
            .collect();
        let mut framing: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); self.dims.len()];
        for (k, &j) in self.framing_arrows.iter().enumerate() {
            framing[j].push(r.framing[k].iter().map(|&b| if b { BigRational::one() } else { BigRational::zero() }).collect());
        }
        FramedRep {
            rep: MatrixRep { dims: self.dims.to_vec(), arrows: self.arrows.clone(), maps },
            framing: framing.into_iter().enumerate().map(|(j, rows)| QMatrix::from_rows(self.dims[j], rows)).collect(),
        }
    }

    fn relations_hold(&self, r: &CoordRep) -> bool {
        self.zero.iter().all(|&(a, b)| r.maps[a].iter().all(|y| y.is_none_or(|y| r.maps[b][y].is_none())))
    }

    /// Coefficient graph on atoms plus `∞` has no undirected cycle.
    fn is_forest(&self, r: &CoordRep) -> bool {
        let mut off = vec![0; self.dims.len()];
        let mut total = 0;
        for (i, &d) in self.dims.iter().enumerate() {
            off[i] = total;
            total += d;
        }
        let mut parent: Vec<usize> = (0..=total).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut edges = Vec::new();
        for (k, &(s, t)) in self.arrows.iter().enumerate() {
            for (x, y) in r.maps[k].iter().enumerate() {
                if let Some(y) = y {
                    edges.push((off[s] + x, off[t] + y));
                }
            }
        }
        for (k, &j) in self.framing_arrows.iter().enumerate() {
            for (x, &b) in r.framing[k].iter().enumerate() {
                if b {
                    edges.push((off[j] + x, total));
                }
            }
        }
        for (u, v) in edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Smallest relabelling under permutations of the basis at each vertex.
    fn canonical(&self, r: &CoordRep) -> CoordRep {
        let perms: Vec<Vec<Vec<usize>>> = self.dims.iter().map(|&d| permutations(d)).collect();
        let mut choice = vec![0usize; self.dims.len()];
        let mut best: Option<CoordRep> = None;
        loop {
            let p: Vec<&Vec<usize>> = choice.iter().enumerate().map(|(i, &c)| &perms[i][c]).collect();
            let mut maps = vec![Vec::new(); self.arrows.len()];
            for (k, &(s, t)) in self.arrows.iter().enumerate() {
                let mut f = vec![None; self.dims[s]];
                for (x, y) in r.maps[k].iter().enumerate() {
                    f[p[s][x]] = y.map(|y| p[t][y]);
                }
                maps[k] = f;
            }
            let framing = self
                .framing_arrows
                .iter()
                .enumerate()
                .map(|(k, &j)| {
                    let mut v = vec![false; self.dims[j]];
                    for (x, &b) in r.framing[k].iter().enumerate() {
                        v[p[j][x]] = b;
                    }
                    v
                })
                .collect();
            let cand = CoordRep { maps, framing };
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            // odometer over the per-vertex permutations
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < perms[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
        best.unwrap()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

const ENUMERATION_LIMIT: u128 = 2_000_000;

/// Cocyclic torus-fixed coordinate framed representations of dimension
/// `(d, 1)`, up to isomorphism.
pub fn cocyclic_fixed_points(fq: &FramedQuiver, d: &[usize], seed: u64) -> Result<usize, FramedError> {
    let shape = Shape {
        dims: d,
        arrows: fq.base.arrows.iter().map(|a| (a.source, a.target)).collect(),
        framing_arrows: &fq.framing_arrows,
        zero: fq.base.zero_relations(),
    };
    // one choice list per (arrow, source atom) and per (framing arrow, atom)
    let mut slots: Vec<usize> = Vec::new();
    for &(s, t) in &shape.arrows {
        slots.extend(core::iter::repeat_n(d[t] + 1, d[s]));
    }
    for &j in shape.framing_arrows {
        slots.extend(core::iter::repeat_n(2, d[j]));
    }
    let size: u128 = slots.iter().map(|&x| x as u128).product();
    if size > ENUMERATION_LIMIT {
        return Err(FramedError::TooLarge(size));
    }
    let mut classes: Vec<(CoordRep, FramedRep)> = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut digits = vec![0usize; slots.len()];
    loop {
        let mut it = digits.iter();
        let maps = shape
            .arrows
            .iter()
            .map(|&(s, _)| (0..d[s]).map(|_| it.next().map(|&v| v.checked_sub(1)).unwrap()).collect())
            .collect();
        let framing = shape.framing_arrows.iter().map(|&j| (0..d[j]).map(|_| *it.next().unwrap() == 1).collect()).collect();
        let r = CoordRep { maps, framing };
        if shape.relations_hold(&r) && shape.is_forest(&r) {
            let fr = shape.to_framed(&r);
            if cocyclic_check(&fr) {
                let key = shape.canonical(&r);
                if seen.insert(key.clone()) {
                    let dup = classes.iter().any(|(_, o)| {
                        let fa: Vec<QMatrix> = fr.framing.clone();
                        generic_iso(&fr.rep, &o.rep, Some((&fa, &o.framing)), &mut rng)
                    });
                    if !dup {
                        classes.push((key, fr));
                    }
                }
            }
        }
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < slots[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    Ok(classes.len())
}

/// For every `d ≤ dim(I ⊗ V)`: cocyclic fixed points against arrow-closed
/// subsets of `I ⊗ V`.
pub fn fedotov_check(t: &Triangulation, n: &[usize], seed: u64) -> Result<Vec<FedotovRow>, FramedError> {
    let fq = build_framed(t, n)?;
    let target = framed_target(t, n)?;
    let table = chi_table(&target)?;
    let top = target.dim_vector();
    let mut rows = Vec::new();
    let mut d = vec![0usize; top.len()];
    loop {
        let submodules = table.get(&d).max(0) as usize;
        let cocyclic_fixed = cocyclic_fixed_points(&fq, &d, seed)?;
        rows.push(FedotovRow { dim: d.clone(), cocyclic_fixed, submodules });
        let mut i = 0;
        while i < d.len() {
            d[i] += 1;
            if d[i] <= top[i] {
                break;
            }
            d[i] = 0;
            i += 1;
        }
        if i == d.len() {
            break;
        }
    }
    Ok(rows)
}
