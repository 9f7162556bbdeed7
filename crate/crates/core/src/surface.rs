//! Ideal triangulations of unpunctured marked bordered surfaces.
//!
//! A triangle is a counterclockwise triple of edge ids. Position `p` of a
//! triangle holds edge `e_p`, which runs from corner `p − 1` to corner `p`;
//! corner `c` sits between `e_c` and `e_{c+1}`. Marked points are classes of
//! corners under the gluing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::QMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Arc,
    Boundary,
}

/// Position `pos` (0..3) of triangle `tri`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub tri: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("edge ids must be exactly 0..{0} without repeats")]
    EdgeIds(usize),
    #[error("triangle {triangle} uses unknown edge {edge}")]
    UnknownEdge { triangle: usize, edge: usize },
    #[error("incidence error: edge {edge} appears in {found} triangle slots, expected {expected}")]
    IncidenceError { edge: usize, found: usize, expected: usize },
    #[error("triangle {0} repeats an edge (self-folded)")]
    SelfFoldedError(usize),
    #[error("the triangles do not form a connected surface")]
    Disconnected,
    #[error("marked point {0} is not on the boundary (punctures are not supported)")]
    Puncture(usize),
    #[error("boundary is not a disjoint union of circles at marked point {0}")]
    PinchedBoundary(usize),
    #[error("Euler characteristic check failed: {0}")]
    EulerError(&'static str),
    #[error("edge {0} is not an arc")]
    NotAnArc(usize),
    #[error("flip at {0} broke the mutation rule for the signed adjacency matrix")]
    FlipPostcondition(usize),
    #[error("the quiver has a 2-cycle between {0} and {1}")]
    TwoCycle(usize, usize),
    #[error("surface has no triangles")]
    Empty,
}

/// A validated ideal triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    kinds: Vec<EdgeKind>,
    triangles: Vec<[usize; 3]>,
    slots: Vec<Vec<Slot>>,
    corner_vertex: Vec<[usize; 3]>,
    /// Corners around each marked point, counterclockwise, starting with
    /// the corner whose outgoing edge is the boundary segment leaving it.
    fans: Vec<Vec<(usize, usize)>>,
    boundary_cycles: Vec<Vec<usize>>,
    genus: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub(crate) const fn next(p: usize) -> usize {
    (p + 1) % 3
}

pub(crate) const fn prev(p: usize) -> usize {
    (p + 2) % 3
}

impl Triangulation {
    /// Validates gluing data. `kinds[i]` is the kind of edge `i`.
    pub fn new(kinds: Vec<EdgeKind>, triangles: Vec<[usize; 3]>) -> Result<Self, SurfaceError> {
        let m = kinds.len();
        if triangles.is_empty() {
            return Err(SurfaceError::Empty);
        }
        let mut slots = vec![Vec::new(); m];
        for (t, tri) in triangles.iter().enumerate() {
            for (p, &e) in tri.iter().enumerate() {
                if e >= m {
                    return Err(SurfaceError::UnknownEdge { triangle: t, edge: e });
                }
                slots[e].push(Slot { tri: t, pos: p });
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(SurfaceError::SelfFoldedError(t));
            }
        }
        for (e, s) in slots.iter().enumerate() {
            let expected = match kinds[e] {
                EdgeKind::Arc => 2,
                EdgeKind::Boundary => 1,
            };
            if s.len() != expected {
                return Err(SurfaceError::IncidenceError { edge: e, found: s.len(), expected });
            }
        }
        let arcs = kinds.iter().filter(|k| **k == EdgeKind::Arc).count();
        if 3 * triangles.len() != 2 * arcs + (m - arcs) {
            return Err(SurfaceError::IncidenceError { edge: m, found: 3 * triangles.len(), expected: 2 * arcs + m - arcs });
        }

        // connectivity through arcs
        let f = triangles.len();
        let mut seen = vec![false; f];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &e in &triangles[t] {
                for s in &slots[e] {
                    if !seen[s.tri] {
                        seen[s.tri] = true;
                        stack.push(s.tri);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(SurfaceError::Disconnected);
        }

        // corners → marked points
        let mut uf = UnionFind((0..3 * f).collect());
        for s in slots.iter().filter(|s| s.len() == 2) {
            let (a, b) = (s[0], s[1]);
            uf.union(3 * a.tri + prev(a.pos), 3 * b.tri + b.pos);
            uf.union(3 * a.tri + a.pos, 3 * b.tri + prev(b.pos));
        }
        let mut label = BTreeMap::new();
        let mut corner_vertex = vec![[0usize; 3]; f];
        for t in 0..f {
            for c in 0..3 {
                let r = uf.find(3 * t + c);
                let n = label.len();
                let v = *label.entry(r).or_insert(n);
                corner_vertex[t][c] = v;
            }
        }
        let nv = label.len();

        // boundary segments: out[v] / in[v]
        let mut out_seg = vec![None; nv];
        let mut in_seg = vec![None; nv];
        for (e, s) in slots.iter().enumerate() {
            if kinds[e] != EdgeKind::Boundary {
                continue;
            }
            let sl = s[0];
            let from = corner_vertex[sl.tri][prev(sl.pos)];
            let to = corner_vertex[sl.tri][sl.pos];
            if out_seg[from].replace(e).is_some() {
                return Err(SurfaceError::PinchedBoundary(from));
            }
            if in_seg[to].replace(e).is_some() {
                return Err(SurfaceError::PinchedBoundary(to));
            }
        }
        for v in 0..nv {
            if out_seg[v].is_none() || in_seg[v].is_none() {
                return Err(SurfaceError::Puncture(v));
            }
        }

        let mut tri = Triangulation {
            kinds,
            triangles,
            slots,
            corner_vertex,
            fans: Vec::new(),
            boundary_cycles: Vec::new(),
            genus: 0,
        };

        // fans around each marked point; a pinched vertex shows up as a
        // fan that does not visit all of its corners
        let mut fans = Vec::with_capacity(nv);
        for v in 0..nv {
            let b = out_seg[v].unwrap();
            let sl = tri.slots[b][0];
            let mut cur = (sl.tri, prev(sl.pos));
            let mut fan = vec![cur];
            while let Some(n) = tri.ccw_step(cur) {
                cur = n;
                fan.push(cur);
                if fan.len() > 3 * f {
                    return Err(SurfaceError::PinchedBoundary(v));
                }
            }
            if tri.edge(cur.0, cur.1) != in_seg[v].unwrap() {
                return Err(SurfaceError::PinchedBoundary(v));
            }
            fans.push(fan);
        }
        let total: usize = fans.iter().map(Vec::len).sum();
        if total != 3 * f {
            return Err(SurfaceError::PinchedBoundary(0));
        }
        tri.fans = fans;

        // boundary cycles, following the orientation
        let mut used = BTreeSet::new();
        let mut cycles = Vec::new();
        for e in tri.boundary() {
            if used.contains(&e) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = e;
            while used.insert(cur) {
                cyc.push(cur);
                let to = tri.boundary_end(cur);
                cur = out_seg[to].unwrap();
            }
            cycles.push(cyc);
        }
        let b = cycles.len() as i64;
        tri.boundary_cycles = cycles;

        let chi = nv as i64 - m as i64 + f as i64;
        let two_minus_2g = chi + b;
        if two_minus_2g > 2 || two_minus_2g % 2 != 0 {
            return Err(SurfaceError::EulerError("V − E + F + b is not of the form 2 − 2g"));
        }
        let g = (2 - two_minus_2g) / 2;
        if arcs as i64 != 6 * g - 6 + 3 * b + nv as i64 {
            return Err(SurfaceError::EulerError("#arcs ≠ 6g − 6 + 3b + |M|"));
        }
        tri.genus = g as usize;
        Ok(tri)
    }

    pub fn num_edges(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, e: usize) -> EdgeKind {
        self.kinds[e]
    }

    pub fn kinds(&self) -> &[EdgeKind] {
        &self.kinds
    }

    pub fn is_arc(&self, e: usize) -> bool {
        self.kinds[e] == EdgeKind::Arc
    }

    pub fn arcs(&self) -> Vec<usize> {
        (0..self.num_edges()).filter(|&e| self.is_arc(e)).collect()
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.num_edges()).filter(|&e| !self.is_arc(e)).collect()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edge(&self, tri: usize, pos: usize) -> usize {
        self.triangles[tri][pos]
    }

    pub fn slots(&self, e: usize) -> &[Slot] {
        &self.slots[e]
    }

    /// Position of edge `e` in triangle `tri`.
    pub fn position(&self, tri: usize, e: usize) -> Option<usize> {
        self.triangles[tri].iter().position(|&x| x == e)
    }

    /// The slot on the other side of the edge at `s`, or `None` on the
    /// boundary.
    pub fn across(&self, s: Slot) -> Option<Slot> {
        let e = self.edge(s.tri, s.pos);
        self.slots[e].iter().copied().find(|&o| o != s)
    }

    pub fn corner_vertex(&self, tri: usize, c: usize) -> usize {
        self.corner_vertex[tri][c]
    }

    pub fn num_marked_points(&self) -> usize {
        self.fans.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn num_boundary_components(&self) -> usize {
        self.boundary_cycles.len()
    }

    /// Boundary components as cyclic lists of segments, in the direction
    /// that keeps the surface on the left.
    pub fn boundary_cycles(&self) -> &[Vec<usize>] {
        &self.boundary_cycles
    }

    /// Corners around marked point `v`, counterclockwise from the one next to
    /// the outgoing boundary segment.
    pub fn fan(&self, v: usize) -> &[(usize, usize)] {
        &self.fans[v]
    }

    pub fn boundary_start(&self, b: usize) -> usize {
        let s = self.slots[b][0];
        self.corner_vertex[s.tri][prev(s.pos)]
    }

    pub fn boundary_end(&self, b: usize) -> usize {
        let s = self.slots[b][0];
        self.corner_vertex[s.tri][s.pos]
    }

    /// The boundary segment leaving marked point `v`.
    pub fn b_out(&self, v: usize) -> usize {
        let (t, c) = self.fans[v][0];
        self.edge(t, next(c))
    }

    /// The boundary segment arriving at marked point `v`.
    pub fn b_in(&self, v: usize) -> usize {
        let (t, c) = *self.fans[v].last().unwrap();
        self.edge(t, c)
    }

    /// Endpoints of edge `e`, in the direction of its first slot.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let s = self.slots[e][0];
        (self.corner_vertex[s.tri][prev(s.pos)], self.corner_vertex[s.tri][s.pos])
    }

    /// Rotates counterclockwise around the corner's vertex by crossing
    /// `e_c`. `None` when `e_c` is a boundary segment.
    pub fn ccw_step(&self, (t, c): (usize, usize)) -> Option<(usize, usize)> {
        let o = self.across(Slot { tri: t, pos: c })?;
        Some((o.tri, prev(o.pos)))
    }

    /// Rotates clockwise by crossing `e_{c+1}`.
    pub fn cw_step(&self, (t, c): (usize, usize)) -> Option<(usize, usize)> {
        let o = self.across(Slot { tri: t, pos: next(c) })?;
        Some((o.tri, o.pos))
    }

    /// `ε_ij` over all edges.
    pub fn signed_adjacency(&self) -> SignedAdjacency {
        let m = self.num_edges();
        let mut eps = vec![vec![0i64; m]; m];
        for tri in &self.triangles {
            for p in 0..3 {
                let (i, j) = (tri[p], tri[next(p)]);
                eps[i][j] += 1;
                eps[j][i] -= 1;
            }
        }
        SignedAdjacency { eps }
    }

    /// Replaces arc `k` by the other diagonal of its quadrilateral. The new
    /// arc keeps the id `k`; the two triangles keep their indices, with `k`
    /// moved to position 0.
    pub fn flip(&self, k: usize) -> Result<Triangulation, SurfaceError> {
        let (flipped, _) = self.flip_with_map(k)?;
        Ok(flipped)
    }

    /// Like [`Triangulation::flip`], also returning where the four sides of
    /// the quadrilateral went.
    pub fn flip_with_map(&self, k: usize) -> Result<(Triangulation, FlipMap), SurfaceError> {
        if k >= self.num_edges() || !self.is_arc(k) {
            return Err(SurfaceError::NotAnArc(k));
        }
        let (a, b) = (self.slots[k][0], self.slots[k][1]);
        let ta = self.triangles[a.tri];
        let tb = self.triangles[b.tri];
        let (x1, x2) = (ta[next(a.pos)], ta[prev(a.pos)]);
        let (y1, y2) = (tb[next(b.pos)], tb[prev(b.pos)]);
        let mut tris = self.triangles.clone();
        tris[a.tri] = [k, x2, y1];
        tris[b.tri] = [k, y2, x1];
        let flipped = Triangulation::new(self.kinds.clone(), tris)?;
        if self.signed_adjacency().mutate(k) != flipped.signed_adjacency() {
            return Err(SurfaceError::FlipPostcondition(k));
        }
        let map = FlipMap {
            k,
            old: [a, b],
            sides: [
                (Slot { tri: a.tri, pos: next(a.pos) }, Slot { tri: b.tri, pos: 2 }),
                (Slot { tri: a.tri, pos: prev(a.pos) }, Slot { tri: a.tri, pos: 1 }),
                (Slot { tri: b.tri, pos: next(b.pos) }, Slot { tri: a.tri, pos: 2 }),
                (Slot { tri: b.tri, pos: prev(b.pos) }, Slot { tri: b.tri, pos: 1 }),
            ],
        };
        Ok((flipped, map))
    }

    /// `Q(T)` with `W(T)`. Vertices are edge ids; boundary ids carry no
    /// arrows.
    pub fn quiver_with_potential(&self) -> Result<QuiverWithPotential, SurfaceError> {
        let mut arrows = Vec::new();
        let mut potential = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            let mut mine = Vec::new();
            for p in 0..3 {
                let (i, j) = (tri[p], tri[next(p)]);
                if self.is_arc(i) && self.is_arc(j) {
                    mine.push(arrows.len());
                    arrows.push(QArrow { source: i, target: j, triangle: t });
                }
            }
            if mine.len() == 3 {
                potential.push([mine[0], mine[1], mine[2]]);
            }
        }
        let pairs: BTreeSet<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
        for &(i, j) in &pairs {
            if pairs.contains(&(j, i)) {
                return Err(SurfaceError::TwoCycle(i.min(j), i.max(j)));
            }
        }
        Ok(QuiverWithPotential { num_vertices: self.num_edges(), arcs: self.arcs(), arrows, potential })
    }

    /// The quiver with frozen boundary vertices, from the full `ε`.
    pub fn ice_quiver(&self) -> Result<IceQuiver, SurfaceError> {
        Ok(IceQuiver {
            qp: self.quiver_with_potential()?,
            eps: self.signed_adjacency(),
            frozen: self.boundary(),
        })
    }

    /// `T̄`: one triangle glued on each boundary segment (in increasing id
    /// order). Old edges keep their ids and become arcs; the two new sides
    /// of the triangle on segment number `i` get ids `m + 2i` and
    /// `m + 2i + 1`.
    pub fn enlarge(&self) -> Triangulation {
        let m = self.num_edges();
        let mut kinds = self.kinds.clone();
        let mut tris = self.triangles.clone();
        for (i, b) in self.boundary().into_iter().enumerate() {
            kinds[b] = EdgeKind::Arc;
            kinds.push(EdgeKind::Boundary);
            kinds.push(EdgeKind::Boundary);
            tris.push([b, m + 2 * i, m + 2 * i + 1]);
        }
        Triangulation::new(kinds, tris).expect("gluing triangles on the boundary keeps validity")
    }

    /// Index of the triangle glued on boundary segment `b` in
    /// [`Triangulation::enlarge`].
    pub fn enlarged_triangle(&self, b: usize) -> Option<usize> {
        let i = self.boundary().iter().position(|&x| x == b)?;
        Some(self.triangles.len() + i)
    }
}

/// Where the sides of the flipped quadrilateral went: each pair is
/// `(old slot, new slot)` for the same edge.
#[derive(Debug, Clone)]
pub struct FlipMap {
    pub k: usize,
    pub old: [Slot; 2],
    pub sides: [(Slot, Slot); 4],
}

impl FlipMap {
    pub fn new_slot_of(&self, old: Slot) -> Option<Slot> {
        self.sides.iter().find(|(o, _)| *o == old).map(|(_, n)| *n)
    }

    pub fn touches(&self, tri: usize) -> bool {
        self.old[0].tri == tri || self.old[1].tri == tri
    }
}

/// `ε` indexed by edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedAdjacency {
    pub eps: Vec<Vec<i64>>,
}

impl SignedAdjacency {
    pub fn size(&self) -> usize {
        self.eps.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.eps[i][j]
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> SignedAdjacency {
        let n = self.size();
        let e = &self.eps;
        let mut out = e.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -e[i][j]
                } else {
                    e[i][j] + (e[i][k].abs() * e[k][j] + e[i][k] * e[k][j].abs()) / 2
                };
            }
        }
        SignedAdjacency { eps: out }
    }

    /// Submatrix on the given ids.
    pub fn restrict(&self, ids: &[usize]) -> Vec<Vec<i64>> {
        ids.iter().map(|&i| ids.iter().map(|&j| self.eps[i][j]).collect()).collect()
    }

    pub fn is_skew(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.eps[i][j] == -self.eps[j][i]))
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let n = self.size();
        QMatrix::from_rows(
            n,
            self.eps.iter().map(|r| r.iter().map(|&x| crate::algebra::rat(x)).collect()).collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QArrow {
    pub source: usize,
    pub target: usize,
    pub triangle: usize,
}

/// `Q(T)` and `W(T)`. `potential` lists arrow-index triples, one per
/// all-arc triangle, in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverWithPotential {
    pub num_vertices: usize,
    pub arcs: Vec<usize>,
    pub arrows: Vec<QArrow>,
    pub potential: Vec<[usize; 3]>,
}

impl QuiverWithPotential {
    /// The arrow from `i` to `j` contributed by triangle `t`.
    pub fn arrow_in(&self, t: usize, i: usize, j: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.triangle == t && a.source == i && a.target == j)
    }

    /// Pairs `(a, b)` with `b ∘ a` a cyclic derivative of the potential;
    /// these paths vanish in the Jacobian algebra.
    pub fn zero_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for cyc in &self.potential {
            for p in 0..3 {
                out.push((cyc[p], cyc[next(p)]));
            }
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IceQuiver {
    pub qp: QuiverWithPotential,
    pub eps: SignedAdjacency,
    pub frozen: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeKind::{Arc as A, Boundary as B};

    fn annulus() -> Triangulation {
        Triangulation::new(vec![A, A, B, B], vec![[2, 0, 1], [3, 0, 1]]).unwrap()
    }

    #[test]
    fn annulus_counts() {
        let t = annulus();
        assert_eq!(t.num_marked_points(), 2);
        assert_eq!(t.num_boundary_components(), 2);
        assert_eq!(t.genus(), 0);
    }

    #[test]
    fn self_folded_rejected() {
        let r = Triangulation::new(vec![A, A, B, B], vec![[2, 0, 0], [3, 0, 1]]);
        assert_eq!(r.unwrap_err(), SurfaceError::SelfFoldedError(0));
    }

    #[test]
    fn kronecker() {
        let e = annulus().signed_adjacency();
        assert_eq!(e.restrict(&[0, 1]), vec![vec![0, 2], vec![-2, 0]]);
        assert_eq!(SignedAdjacency { eps: vec![vec![0, 2], vec![-2, 0]] }.mutate(1).eps, vec![vec![0, -2], vec![2, 0]]);
    }

    #[test]
    fn fan_endpoints_match_boundary() {
        let t = annulus();
        for v in 0..t.num_marked_points() {
            assert_eq!(t.boundary_start(t.b_out(v)), v);
            assert_eq!(t.boundary_end(t.b_in(v)), v);
        }
    }
}
