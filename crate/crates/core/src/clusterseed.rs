//! Seed mutation with exact Laurent arithmetic, used as an independent
//! oracle for F-polynomials and g-vectors, plus chord bookkeeping for
//! polygons.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraError, LaurentPoly, QMatrix};
use crate::route::{Port, Route, Segment};
use crate::surface::{next, prev, SignedAdjacency, SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeedError {
    #[error("vertex {0} is frozen or out of range")]
    NotMutable(usize),
    #[error("mutation at {0} did not produce a Laurent polynomial")]
    NotLaurent(usize),
    #[error("cluster variable does not factor as F(û)·A^g: {0}")]
    FactorizationError(&'static str),
    #[error("the surface is not a disk")]
    NotAPolygon,
    #[error("({0},{1}) is not a diagonal of the polygon")]
    NotAChord(usize, usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A seed: exchange matrix over all edges, mutable flags and cluster
/// variables as Laurent polynomials in the initial variables `A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub eps: SignedAdjacency,
    pub mutable: Vec<bool>,
    pub cluster: Vec<LaurentPoly>,
}

impl Seed {
    /// The initial seed of `T`, read off the quiver of `T̄`: every edge of
    /// `T` is a vertex, only arcs of `T` are mutated.
    pub fn initial(t: &Triangulation) -> Seed {
        let m = t.num_edges();
        let ebar = t.enlarge().signed_adjacency();
        let ids: Vec<usize> = (0..m).collect();
        Seed {
            eps: SignedAdjacency { eps: ebar.restrict(&ids) },
            mutable: (0..m).map(|e| t.is_arc(e)).collect(),
            cluster: (0..m).map(|i| LaurentPoly::var(m, i)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.cluster.len()
    }

    /// Mutation at `k` using the exchange relation; the division by the old
    /// variable must be exact.
    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        if k >= self.size() || !self.mutable[k] {
            return Err(SeedError::NotMutable(k));
        }
        let m = self.size();
        let mut pos = LaurentPoly::one(m);
        let mut neg = LaurentPoly::one(m);
        for j in 0..m {
            let e = self.eps.get(k, j);
            if e > 0 {
                pos = &pos * &self.cluster[j].pow(e as u32);
            } else if e < 0 {
                neg = &neg * &self.cluster[j].pow((-e) as u32);
            }
        }
        let new = (&pos + &neg).exact_div(&self.cluster[k]).map_err(|_| SeedError::NotLaurent(k))?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed { eps: self.eps.mutate(k), mutable: self.mutable.clone(), cluster })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed, SeedError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

/// `A = F(û)·A^g` with `û_j = Π_i A_i^{ε_ji}` for the initial `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolyGVector {
    pub f: LaurentPoly,
    pub g: Vec<i64>,
}

/// Factors the cluster variable at `l` after mutating `s0` along `path`.
pub fn extract_fpoly_gvector(s0: &Seed, path: &[usize], l: usize) -> Result<FPolyGVector, SeedError> {
    let s = s0.mutate_path(path)?;
    factor_fpoly(s0, &s.cluster[l], path)
}

/// Factors a Laurent polynomial in the initial variables of `s0` as
/// `F(û)·A^g`, where `F` only involves the directions in `path`.
pub fn factor_fpoly(s0: &Seed, a: &LaurentPoly, path: &[usize]) -> Result<FPolyGVector, SeedError> {
    let m = s0.size();
    if !a.has_integer_exponents() {
        return Err(SeedError::FactorizationError("half-integer exponent"));
    }
    let dirs: Vec<usize> = path.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    // columns: û_j for j in dirs, as exponent vectors over the A's
    let mut cols = QMatrix::zeros(m, dirs.len());
    for (c, &j) in dirs.iter().enumerate() {
        for i in 0..m {
            cols.set(i, c, BigRational::from_integer(s0.eps.get(j, i).into()));
        }
    }
    if cols.rank() != dirs.len() {
        return Err(SeedError::FactorizationError("directions are linearly dependent"));
    }
    let terms: Vec<(Vec<i64>, BigRational)> =
        a.terms().map(|(e, c)| (e.iter().map(|&x| x as i64 / 2).collect(), c.clone())).collect();
    'cand: for (v0, c0) in &terms {
        if !c0.is_one() {
            continue;
        }
        let mut f = LaurentPoly::zero(m);
        for (v, c) in &terms {
            let diff: Vec<BigRational> = v.iter().zip(v0).map(|(x, y)| BigRational::from_integer((x - y).into())).collect();
            let Some(sol) = cols.solve(&diff) else { continue 'cand };
            let mut e = vec![0i32; m];
            for (&j, x) in dirs.iter().zip(&sol) {
                if !x.is_integer() || x < &BigRational::zero() {
                    continue 'cand;
                }
                e[j] = 2 * i32::try_from(x.to_integer()).map_err(|_| SeedError::FactorizationError("overflow"))?;
            }
            f.add_term(e, c.clone());
        }
        return Ok(FPolyGVector { f, g: v0.clone() });
    }
    Err(SeedError::FactorizationError("no monomial gives a polynomial with nonnegative exponents"))
}

/// Polygon vertex labels: marked points numbered counterclockwise along
/// the boundary, starting at the tail of the smallest boundary id.
pub fn polygon_labels(t: &Triangulation) -> Result<Vec<usize>, SeedError> {
    if t.genus() != 0 || t.num_boundary_components() != 1 {
        return Err(SeedError::NotAPolygon);
    }
    let cyc = &t.boundary_cycles()[0];
    let start = cyc.iter().position(|&b| b == *cyc.iter().min().unwrap()).unwrap();
    let mut labels = vec![0; t.num_marked_points()];
    for i in 0..cyc.len() {
        let b = cyc[(start + i) % cyc.len()];
        labels[t.boundary_start(b)] = i;
    }
    Ok(labels)
}

/// Each arc of a polygon triangulation as a sorted pair of vertex labels.
pub fn polygon_chords(t: &Triangulation) -> Result<BTreeMap<usize, (usize, usize)>, SeedError> {
    let labels = polygon_labels(t)?;
    Ok(t
        .arcs()
        .into_iter()
        .map(|e| {
            let (a, b) = t.endpoints(e);
            let (a, b) = (labels[a], labels[b]);
            (e, (a.min(b), a.max(b)))
        })
        .collect())
}

/// The boundary edge joining the adjacent labels `a` and `b`, if any.
pub fn polygon_side(t: &Triangulation, a: usize, b: usize) -> Result<Option<usize>, SeedError> {
    let labels = polygon_labels(t)?;
    let want = (a.min(b), a.max(b));
    Ok(t.boundary().into_iter().find(|&e| {
        let (u, v) = t.endpoints(e);
        let (u, v) = (labels[u], labels[v]);
        (u.min(v), u.max(v)) == want
    }))
}

/// Applies a flip word to a polygon triangulation and reports which chord
/// each arc id carries at the end.
pub fn polygon_flip_track(t: &Triangulation, flips: &[usize]) -> Result<BTreeMap<usize, (usize, usize)>, SeedError> {
    let mut cur = t.clone();
    for &k in flips {
        cur = cur.flip(k)?;
    }
    polygon_chords(&cur)
}

/// Shortest flip word (in BFS order over arc ids) whose result contains
/// the chord `(a, b)`, and the arc id carrying it.
pub fn flips_to_chord(t: &Triangulation, a: usize, b: usize) -> Result<(Vec<usize>, usize), SeedError> {
    let target = (a.min(b), a.max(b));
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((t.clone(), Vec::new()));
    seen.insert(polygon_chords(t)?.into_values().collect::<BTreeSet<_>>());
    while let Some((cur, word)) = queue.pop_front() {
        let chords = polygon_chords(&cur)?;
        if let Some((&e, _)) = chords.iter().find(|(_, &c)| c == target) {
            return Ok((word, e));
        }
        for k in cur.arcs() {
            let nt = cur.flip(k)?;
            let key = polygon_chords(&nt)?.into_values().collect::<BTreeSet<_>>();
            if seen.insert(key) {
                let mut w = word.clone();
                w.push(k);
                queue.push_back((nt, w));
            }
        }
    }
    Err(SeedError::NotAChord(a, b))
}

fn interleaved((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let inside = |x: usize| a < x && x < b;
    let distinct = a != c && a != d && b != c && b != d;
    distinct && inside(c) != inside(d)
}

/// Whether two chords of a polygon cross in their interiors.
pub fn chords_cross(p: (usize, usize), q: (usize, usize)) -> bool {
    let p = (p.0.min(p.1), p.0.max(p.1));
    interleaved(p, q)
}

/// The chord `(a, b)` as a corner-ended route in `t`.
pub fn polygon_chord_route(t: &Triangulation, a: usize, b: usize) -> Result<Route, SeedError> {
    let labels = polygon_labels(t)?;
    let n = labels.len();
    if a == b || a >= n || b >= n || (a + 1) % n == b || (b + 1) % n == a {
        return Err(SeedError::NotAChord(a, b));
    }
    let chord = (a.min(b), a.max(b));
    let lab = |tri: usize, c: usize| labels[t.corner_vertex(tri, c)];
    let crosses = |tri: usize, p: usize| {
        let e = t.edge(tri, p);
        let (u, v) = t.endpoints(e);
        t.is_arc(e) && interleaved(chord, (labels[u].min(labels[v]), labels[u].max(labels[v])))
    };
    let va = labels.iter().position(|&x| x == a).unwrap();
    for &(tri, c) in t.fan(va) {
        if lab(tri, next(c)) == b {
            return Ok(single(tri, c, next(c)));
        }
        if lab(tri, prev(c)) == b {
            return Ok(single(tri, c, prev(c)));
        }
        let opp = prev(c);
        if !crosses(tri, opp) {
            continue;
        }
        let mut segs = vec![Segment { tri, entry: Port::Corner(c), exit: Port::Edge(opp) }];
        let mut slot = t.across(crate::surface::Slot { tri, pos: opp }).ok_or(SeedError::NotAChord(a, b))?;
        loop {
            let far = next(slot.pos);
            if lab(slot.tri, far) == b {
                segs.push(Segment { tri: slot.tri, entry: Port::Edge(slot.pos), exit: Port::Corner(far) });
                return Ok(Route { segments: segs, closed: false });
            }
            let q = [next(slot.pos), prev(slot.pos)]
                .into_iter()
                .find(|&q| crosses(slot.tri, q))
                .ok_or(SeedError::NotAChord(a, b))?;
            segs.push(Segment { tri: slot.tri, entry: Port::Edge(slot.pos), exit: Port::Edge(q) });
            slot = t.across(crate::surface::Slot { tri: slot.tri, pos: q }).ok_or(SeedError::NotAChord(a, b))?;
        }
    }
    Err(SeedError::NotAChord(a, b))
}

fn single(tri: usize, c1: usize, c2: usize) -> Route {
    Route { segments: vec![Segment { tri, entry: Port::Corner(c1), exit: Port::Corner(c2) }], closed: false }
}

/// All diagonals `(a, b)`, `a < b`, of an `n`-gon.
pub fn all_chords(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 2..n {
            if !(a == 0 && b == n - 1) {
                out.push((a, b));
            }
        }
    }
    out
}
