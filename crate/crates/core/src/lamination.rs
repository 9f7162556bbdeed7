//! Integral laminations as weighted normal curves.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{rat, HalfInt, QMatrix};
use crate::route::{Port, Route, RouteError, Segment};
use crate::surface::{next, SignedAdjacency, SurfaceError, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveKind {
    Closed,
    Open,
}

/// A curve as supplied by the user: a crossing word plus, for open
/// curves, the boundary segments it starts and ends on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    pub kind: CurveKind,
    pub crossings: Vec<usize>,
    pub start: Option<usize>,
    pub end: Option<usize>,
    pub weight: i64,
}

impl Curve {
    pub fn closed(crossings: Vec<usize>, weight: i64) -> Self {
        Curve { kind: CurveKind::Closed, crossings, start: None, end: None, weight }
    }

    pub fn open(start: usize, crossings: Vec<usize>, end: usize, weight: i64) -> Self {
        Curve { kind: CurveKind::Open, crossings, start: Some(start), end: Some(end), weight }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaminationError {
    #[error("curve {index}: {source}")]
    Route { index: usize, source: RouteError },
    #[error("curve {0}: open curve without both endpoints")]
    MissingEndpoint(usize),
    #[error("curve {0}: closed curve crossing word is a proper power")]
    NonPrimitiveLoop(usize),
    #[error("curve {0}: negative weight on a curve that is not special")]
    NegativeWeightOnNonSpecial(usize),
    #[error("boundary segment {segment}: endpoint weights sum to {total}, not 0")]
    BoundaryWeightError { segment: usize, total: i64 },
    #[error("curve {0}: endpoints collapse to a single marked point")]
    Degenerate(usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A normalized curve together with its resolved route in the reference
/// triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LamCurve {
    pub kind: CurveKind,
    pub route: Route,
    pub start: Option<usize>,
    pub end: Option<usize>,
    pub weight: i64,
}

impl LamCurve {
    pub fn crossings(&self, t: &Triangulation) -> Vec<usize> {
        self.route.crossings(t)
    }

    pub fn as_curve(&self, t: &Triangulation) -> Curve {
        Curve {
            kind: self.kind,
            crossings: self.crossings(t),
            start: self.start,
            end: self.end,
            weight: self.weight,
        }
    }
}

/// A normalized lamination: homotopic curves merged, zero weights dropped,
/// the boundary condition checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lamination {
    pub curves: Vec<LamCurve>,
}

/// Removes adjacent repeated crossings (cyclically for closed curves).
pub fn reduce_backtracks(word: &[usize], cyclic: bool) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(word.len());
    for &x in word {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    if cyclic {
        while out.len() >= 2 && out.first() == out.last() {
            out.pop();
            out.remove(0);
        }
    }
    out
}

/// Resolves one curve into a route, reducing local backtracks first.
pub fn resolve_curve(t: &Triangulation, c: &Curve, index: usize) -> Result<Route, LaminationError> {
    let wrap = |source| LaminationError::Route { index, source };
    match c.kind {
        CurveKind::Closed => {
            let w = reduce_backtracks(&c.crossings, true);
            let r = Route::closed(t, &w).map_err(wrap)?;
            if is_periodic(&r) {
                return Err(LaminationError::NonPrimitiveLoop(index));
            }
            Ok(r)
        }
        CurveKind::Open => {
            let (Some(s), Some(e)) = (c.start, c.end) else {
                return Err(LaminationError::MissingEndpoint(index));
            };
            let w = reduce_backtracks(&c.crossings, false);
            Route::open(t, s, &w, e).map_err(wrap)
        }
    }
}

fn is_periodic(r: &Route) -> bool {
    let n = r.segments.len();
    (1..n).any(|d| n.is_multiple_of(d) && (0..n).all(|i| r.segments[i] == r.segments[(i + d) % n]))
}

impl Lamination {
    pub fn empty() -> Self {
        Lamination { curves: Vec::new() }
    }

    /// Validates and normalizes a list of curves in `t`.
    pub fn new(t: &Triangulation, curves: &[Curve]) -> Result<Self, LaminationError> {
        let mut merged: BTreeMap<Vec<Segment>, (usize, LamCurve)> = BTreeMap::new();
        for (i, c) in curves.iter().enumerate() {
            let route = resolve_curve(t, c, i)?;
            let key = route.canonical_key();
            let entry = merged.entry(key).or_insert_with(|| {
                (i, LamCurve { kind: c.kind, route, start: c.start, end: c.end, weight: 0 })
            });
            entry.1.weight += c.weight;
        }
        let mut lam = Lamination { curves: Vec::new() };
        let mut kept: Vec<(usize, LamCurve)> = merged.into_values().filter(|(_, c)| c.weight != 0).collect();
        kept.sort_by_key(|(i, _)| *i);
        for (i, c) in kept {
            if c.weight < 0 {
                let special = c.kind == CurveKind::Open
                    && matches!(drag_endpoints(t, &c.route), Ok(g) if g.edge.is_some_and(|e| !t.is_arc(e)));
                if !special {
                    return Err(LaminationError::NegativeWeightOnNonSpecial(i));
                }
            }
            lam.curves.push(c);
        }
        let mut totals: BTreeMap<usize, i64> = BTreeMap::new();
        for c in lam.curves.iter().filter(|c| c.kind == CurveKind::Open) {
            *totals.entry(c.start.unwrap()).or_default() += c.weight;
            *totals.entry(c.end.unwrap()).or_default() += c.weight;
        }
        if let Some((&segment, &total)) = totals.iter().find(|(_, &v)| v != 0) {
            return Err(LaminationError::BoundaryWeightError { segment, total });
        }
        Ok(lam)
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn closed_curves(&self) -> impl Iterator<Item = &LamCurve> {
        self.curves.iter().filter(|c| c.kind == CurveKind::Closed)
    }

    pub fn open_curves(&self) -> impl Iterator<Item = &LamCurve> {
        self.curves.iter().filter(|c| c.kind == CurveKind::Open)
    }

    /// Every weight multiplied by `k`.
    pub fn scaled(&self, k: i64) -> Lamination {
        let mut out = self.clone();
        for c in &mut out.curves {
            c.weight *= k;
        }
        out.curves.retain(|c| c.weight != 0);
        out
    }

    /// The union with another lamination in the same triangulation; the
    /// caller guarantees the curves are compatible.
    pub fn union(&self, t: &Triangulation, o: &Lamination) -> Result<Lamination, LaminationError> {
        let mut cs: Vec<Curve> = self.curves.iter().map(|c| c.as_curve(t)).collect();
        cs.extend(o.curves.iter().map(|c| c.as_curve(t)));
        Lamination::new(t, &cs)
    }

    /// The lamination after flipping `k`, described in the flipped
    /// triangulation (which is also returned).
    pub fn through_flip(&self, t: &Triangulation, k: usize) -> Result<(Triangulation, Lamination), LaminationError> {
        let (t2, map) = t.flip_with_map(k)?;
        let mut curves = Vec::with_capacity(self.curves.len());
        for (i, c) in self.curves.iter().enumerate() {
            let r = c.route.through_flip(&map).map_err(|source| LaminationError::Route { index: i, source })?;
            let mut cv = c.as_curve(t);
            cv.crossings = r.crossings(&t2);
            curves.push(cv);
        }
        Ok((t2.clone(), Lamination::new(&t2, &curves)?))
    }

    /// `μ_j`: total weighted crossings with each edge.
    pub fn weighted_crossings(&self, t: &Triangulation) -> Vec<i64> {
        let mut mu = vec![0i64; t.num_edges()];
        for c in &self.curves {
            for e in c.crossings(t) {
                mu[e] += c.weight;
            }
        }
        mu
    }

    /// `a_i = ½ Σ weight · #(crossings with i)`, indexed by edge id, and
    /// whether all entries are integers.
    pub fn coordinates(&self, t: &Triangulation) -> (Vec<HalfInt>, bool) {
        let a: Vec<HalfInt> = self.weighted_crossings(t).into_iter().map(HalfInt::halve_int).collect();
        let integral = a.iter().all(|x| x.is_integer());
        (a, integral)
    }

    /// `h_ℓ`: loops contribute `−(k/2)·μ_j(c)`, open curves
    /// `−½ w μ_j(c′)` with `c′` the perturbed arc in `T̄`.
    pub fn h_vector(&self, t: &Triangulation) -> Result<Vec<HalfInt>, LaminationError> {
        let tbar = t.enlarge();
        let mut h = vec![0i64; t.num_edges()];
        for (i, c) in self.curves.iter().enumerate() {
            let crossings = match c.kind {
                CurveKind::Closed => c.crossings(t),
                CurveKind::Open => {
                    let g = drag_endpoints(t, &c.route).map_err(|_| LaminationError::Degenerate(i))?;
                    perturbed_arc(&tbar, &g.route).crossings(&tbar)
                }
            };
            for e in crossings {
                if e < t.num_edges() && t.is_arc(e) {
                    h[e] -= c.weight;
                }
            }
        }
        Ok(h.into_iter().map(HalfInt::halve_int).collect())
    }
}

/// An arc or boundary segment between marked points, as a route whose
/// ends are corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DraggedArc {
    pub route: Route,
    /// The edge of `T` the arc coincides with, if it crosses nothing.
    pub edge: Option<usize>,
}

/// Slides both endpoints of an open route counterclockwise along their
/// boundary segments to the next marked point, then removes the crossings
/// made redundant by the move.
pub fn drag_endpoints(t: &Triangulation, r: &Route) -> Result<DraggedArc, RouteError> {
    let r = drag_start(t, r)?;
    let r = drag_start(t, &r.reversed())?.reversed();
    let edge = if r.segments.len() == 1 {
        let s = r.segments[0];
        match (s.entry, s.exit) {
            (Port::Corner(a), Port::Corner(b)) if b == next(a) => Some(t.edge(s.tri, b)),
            (Port::Corner(a), Port::Corner(b)) if a == next(b) => Some(t.edge(s.tri, a)),
            _ => return Err(RouteError::Inconsistent(0)),
        }
    } else {
        None
    };
    Ok(DraggedArc { route: r, edge })
}

fn drag_start(t: &Triangulation, r: &Route) -> Result<Route, RouteError> {
    let mut segs = r.segments.clone();
    let first = segs[0];
    let Port::Edge(p) = first.entry else { return Ok(r.clone()) };
    if t.is_arc(t.edge(first.tri, p)) {
        return Err(RouteError::NotBoundary(t.edge(first.tri, p)));
    }
    // the boundary segment at slot p runs from corner p − 1 to corner p
    let mut corner = (first.tri, p);
    let mut i = 0;
    loop {
        let s = segs[i];
        debug_assert_eq!(s.tri, corner.0);
        if s.exit == Port::Edge(next(corner.1)) && t.is_arc(t.edge(s.tri, next(corner.1))) && i + 1 < segs.len() {
            corner = t.cw_step(corner).ok_or(RouteError::Inconsistent(i))?;
            i += 1;
            continue;
        }
        if segs[i].exit == Port::Corner(corner.1) {
            return Err(RouteError::Backtrack { index: i });
        }
        segs[i].entry = Port::Corner(corner.1);
        break;
    }
    Ok(Route { segments: segs[i..].to_vec(), closed: false })
}

/// `c′` for an arc with corner ends: each endpoint is pushed off its marked
/// point counterclockwise onto the adjacent boundary segment of `T̄`. The
/// result is an open route in `tbar` between new boundary segments.
pub fn perturbed_arc(tbar: &Triangulation, gamma: &Route) -> Route {
        let start_fan = fan_to_boundary(tbar, gamma.segments[0]);
    let rev = gamma.reversed();
    let end_fan = fan_to_boundary(tbar, rev.segments[0]);
    let mut mid = gamma.segments.clone();
    if let Port::Corner(c) = mid[0].entry {
        mid[0].entry = Port::Edge(next(c));
    }
    let last = mid.len() - 1;
    if let Port::Corner(c) = mid[last].exit {
        mid[last].exit = Port::Edge(next(c));
    }
    let mut segs = start_fan;
    segs.extend(mid);
    segs.extend(end_fan.into_iter().rev().map(|s| Segment { tri: s.tri, entry: s.exit, exit: s.entry }));
    Route { segments: segs, closed: false }
}

/// Segments from the boundary of `T̄` to the corner where `first` starts,
/// found by rotating clockwise.
fn fan_to_boundary(tbar: &Triangulation, first: Segment) -> Vec<Segment> {
    let Port::Corner(c0) = first.entry else { unreachable!("arc routes start at a corner") };
    let mut corners = vec![(first.tri, c0)];
    while let Some(n) = tbar.cw_step(*corners.last().unwrap()) {
        corners.push(n);
    }
    corners[1..]
        .iter()
        .rev()
        .map(|&(tri, c)| Segment { tri, entry: Port::Edge(next(c)), exit: Port::Edge(c) })
        .collect()
}

/// Shear parameters of an open route in `tbar`: at each crossing, +1 if the
/// curve turns left before and right after, −1 for the mirror pattern.
pub fn shear_vector(tbar: &Triangulation, r: &Route) -> Vec<i64> {
    let mut g = vec![0i64; tbar.num_edges()];
    let turns = r.turns();
    for (i, s) in r.junction_slots().into_iter().enumerate() {
        use crate::route::Turn::*;
        let e = tbar.edge(s.tri, s.pos);
        match (turns[i], turns[i + 1]) {
            (Some(Left), Some(Right)) => g[e] += 1,
            (Some(Right), Some(Left)) => g[e] -= 1,
            _ => {}
        }
    }
    g
}

/// `g_γ` for an arc with corner ends: shear coordinates of `c′`, restricted
/// to the edges of `T`.
pub fn shear_g_vector(t: &Triangulation, gamma: &DraggedArc) -> Vec<i64> {
    let tbar = t.enlarge();
    let c = perturbed_arc(&tbar, &gamma.route);
    let mut g = shear_vector(&tbar, &c);
    g.truncate(t.num_edges());
    g
}

/// `Σ_j ε_ji h_j` for every edge `i`, doubled.
pub fn eps_transpose_h(eps: &SignedAdjacency, h: &[HalfInt]) -> Vec<i64> {
    let n = eps.size();
    (0..n).map(|i| (0..n).map(|j| eps.get(j, i) * h[j].doubled()).sum()).collect()
}

/// The sum `Σ_k w_k g_{γ_k}` over the open curves of a lamination.
pub fn weighted_g_sum(t: &Triangulation, lam: &Lamination) -> Result<Vec<i64>, LaminationError> {
    let mut s = vec![0i64; t.num_edges()];
    for (i, c) in lam.curves.iter().enumerate() {
        if c.kind != CurveKind::Open {
            continue;
        }
        let g = drag_endpoints(t, &c.route).map_err(|_| LaminationError::Degenerate(i))?;
        for (x, y) in s.iter_mut().zip(shear_g_vector(t, &g)) {
            *x += c.weight * y;
        }
    }
    Ok(s)
}

/// Endpoints of a corner-ended route as marked points.
pub fn arc_endpoints(t: &Triangulation, r: &Route) -> Option<(usize, usize)> {
    let f = r.segments.first()?;
    let l = r.segments.last()?;
    match (f.entry, l.exit) {
        (Port::Corner(a), Port::Corner(b)) => Some((t.corner_vertex(f.tri, a), t.corner_vertex(l.tri, b))),
        _ => None,
    }
}

/// The peripheral curve around marked point `v`, from the segment leaving
/// `v` to the segment arriving at it.
pub fn special_curve(t: &Triangulation, v: usize, weight: i64) -> Curve {
    let fan = t.fan(v);
    let word = fan[..fan.len() - 1].iter().map(|&(tri, c)| t.edge(tri, c)).collect();
    Curve::open(t.b_out(v), word, t.b_in(v), weight)
}

/// Appends peripheral curves so that every boundary segment has total
/// endpoint weight zero. Where the weights are not determined (boundary
/// components with an even number of segments) the free choices are 0.
pub fn balance_with_specials(t: &Triangulation, curves: &[Curve]) -> Result<Vec<Curve>, LaminationError> {
    let nv = t.num_marked_points();
    let boundary = t.boundary();
    let mut c: BTreeMap<usize, i64> = BTreeMap::new();
    for cv in curves.iter().filter(|c| c.kind == CurveKind::Open) {
        for b in [cv.start, cv.end].into_iter().flatten() {
            *c.entry(b).or_default() += cv.weight;
        }
    }
    let mut a = QMatrix::zeros(boundary.len(), nv);
    let mut rhs = Vec::with_capacity(boundary.len());
    for (r, &b) in boundary.iter().enumerate() {
        for v in [t.boundary_start(b), t.boundary_end(b)] {
            a.set(r, v, a.get(r, v) + rat(1));
        }
        rhs.push(rat(-c.get(&b).copied().unwrap_or(0)));
    }
    let Some(x) = a.solve(&rhs) else {
        let (&segment, &total) = c.iter().find(|(_, v)| **v != 0).unwrap_or((&boundary[0], &0));
        return Err(LaminationError::BoundaryWeightError { segment, total });
    };
    let mut out = curves.to_vec();
    for (v, xv) in x.iter().enumerate() {
        if !xv.is_integer() {
            return Err(LaminationError::BoundaryWeightError { segment: t.b_out(v), total: 0 });
        }
        let w = xv.to_integer();
        if !w.is_zero() {
            out.push(special_curve(t, v, w.to_i64().unwrap_or(0)));
        }
    }
    Ok(out)
}
