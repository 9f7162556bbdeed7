//! Curves in normal position, recorded triangle by triangle.
//!
//! A [`Route`] is a list of segments; each segment crosses one triangle,
//! entering and leaving through a side (`Port::Edge`) or a corner
//! (`Port::Corner`). Consecutive segments are glued across an edge.

use alloc::vec::Vec;

use crate::surface::{next, FlipMap, Slot, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    Edge(usize),
    Corner(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub tri: usize,
    pub entry: Port,
    pub exit: Port,
}

/// Direction of a segment that enters and leaves through sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Segment {
    /// Entering at side `p` and leaving at side `p + 1` is a right turn:
    /// the two sides meet at corner `p`, which lies on the right.
    pub fn turn(&self) -> Option<Turn> {
        match (self.entry, self.exit) {
            (Port::Edge(p), Port::Edge(q)) if q == next(p) => Some(Turn::Right),
            (Port::Edge(p), Port::Edge(q)) if p == next(q) => Some(Turn::Left),
            _ => None,
        }
    }

    fn reversed(&self) -> Segment {
        Segment { tri: self.tri, entry: self.exit, exit: self.entry }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RouteError {
    #[error("edge {0} is not a boundary segment")]
    NotBoundary(usize),
    #[error("crossing {index}: edge {edge} is not a side of the current triangle")]
    NonAdjacent { index: usize, edge: usize },
    #[error("crossing {index}: the curve leaves through the side it entered (backtrack)")]
    Backtrack { index: usize },
    #[error("the curve tries to cross boundary segment {0}")]
    CrossesBoundary(usize),
    #[error("closed crossing word does not close up into a loop")]
    DoesNotClose,
    #[error("closed curve with empty crossing word")]
    EmptyLoop,
    #[error("corner ports cannot be transported through a flip")]
    CornerInFlip,
    #[error("route is inconsistent with the triangulation at segment {0}")]
    Inconsistent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Route {
    pub segments: Vec<Segment>,
    pub closed: bool,
}

impl Route {
    /// Resolves an open curve from boundary segment `start` to boundary
    /// segment `end` crossing the given arcs in order.
    pub fn open(t: &Triangulation, start: usize, word: &[usize], end: usize) -> Result<Route, RouteError> {
        for &b in &[start, end] {
            if b >= t.num_edges() || t.is_arc(b) {
                return Err(RouteError::NotBoundary(b));
            }
        }
        Self::check_edges(t, word)?;
        let s = t.slots(start)[0];
        let mut tri = s.tri;
        let mut entry = s.pos;
        let mut segments = Vec::with_capacity(word.len() + 1);
        for (index, &e) in word.iter().enumerate() {
            let q = Self::exit_pos(t, tri, entry, e, index)?;
            segments.push(Segment { tri, entry: Port::Edge(entry), exit: Port::Edge(q) });
            let o = t.across(Slot { tri, pos: q }).ok_or(RouteError::CrossesBoundary(e))?;
            tri = o.tri;
            entry = o.pos;
        }
        let q = Self::exit_pos(t, tri, entry, end, word.len())?;
        segments.push(Segment { tri, entry: Port::Edge(entry), exit: Port::Edge(q) });
        Ok(Route { segments, closed: false })
    }

    fn check_edges(t: &Triangulation, word: &[usize]) -> Result<(), RouteError> {
        match word.iter().position(|&e| e >= t.num_edges()) {
            Some(index) => Err(RouteError::NonAdjacent { index, edge: word[index] }),
            None => Ok(()),
        }
    }

    fn exit_pos(t: &Triangulation, tri: usize, entry: usize, e: usize, index: usize) -> Result<usize, RouteError> {
        let q = t.position(tri, e).ok_or(RouteError::NonAdjacent { index, edge: e })?;
        if q == entry {
            return Err(RouteError::Backtrack { index });
        }
        Ok(q)
    }

    /// Resolves a closed curve crossing the given arcs cyclically. Both
    /// sides of the first arc are tried, in slot order.
    pub fn closed(t: &Triangulation, word: &[usize]) -> Result<Route, RouteError> {
        let Some(&first) = word.first() else { return Err(RouteError::EmptyLoop) };
        Self::check_edges(t, word)?;
        if !t.is_arc(first) {
            return Err(RouteError::CrossesBoundary(first));
        }
        let mut last_err = RouteError::DoesNotClose;
        for &start in t.slots(first) {
            match Self::closed_from(t, word, start) {
                Ok(r) => return Ok(r),
                Err(e) => last_err = e,
            }
        }
        Err(last_err)
    }

    /// Closed route whose first segment is entered through `start`.
    pub fn closed_from(t: &Triangulation, word: &[usize], start: Slot) -> Result<Route, RouteError> {
        Self::check_edges(t, word)?;
        let n = word.len();
        let mut tri = start.tri;
        let mut entry = start.pos;
        let mut segments = Vec::with_capacity(n);
        for i in 0..n {
            let e = word[(i + 1) % n];
            if !t.is_arc(e) {
                return Err(RouteError::CrossesBoundary(e));
            }
            let q = Self::exit_pos(t, tri, entry, e, (i + 1) % n)?;
            segments.push(Segment { tri, entry: Port::Edge(entry), exit: Port::Edge(q) });
            let o = t.across(Slot { tri, pos: q }).ok_or(RouteError::CrossesBoundary(e))?;
            tri = o.tri;
            entry = o.pos;
        }
        if (Slot { tri, pos: entry }) != start {
            return Err(RouteError::DoesNotClose);
        }
        Ok(Route { segments, closed: true })
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Checks that consecutive segments are glued across a common edge.
    pub fn validate(&self, t: &Triangulation) -> Result<(), RouteError> {
        let n = self.segments.len();
        let joins = if self.closed { n } else { n.saturating_sub(1) };
        for i in 0..joins {
            let (a, b) = (self.segments[i], self.segments[(i + 1) % n]);
            let (Port::Edge(p), Port::Edge(q)) = (a.exit, b.entry) else {
                return Err(RouteError::Inconsistent(i));
            };
            if t.across(Slot { tri: a.tri, pos: p }) != Some(Slot { tri: b.tri, pos: q }) {
                return Err(RouteError::Inconsistent(i));
            }
        }
        for (i, s) in self.segments.iter().enumerate() {
            if s.entry == s.exit {
                return Err(RouteError::Backtrack { index: i });
            }
        }
        Ok(())
    }

    /// Edges crossed between segments. For closed routes entry `i` is the
    /// edge through which segment `i` is entered.
    pub fn crossings(&self, t: &Triangulation) -> Vec<usize> {
        if self.closed {
            self.segments
                .iter()
                .map(|s| match s.entry {
                    Port::Edge(p) => t.edge(s.tri, p),
                    Port::Corner(_) => unreachable!("closed routes have no corners"),
                })
                .collect()
        } else {
            self.junction_slots().into_iter().map(|s| t.edge(s.tri, s.pos)).collect()
        }
    }

    /// Exit slots of all but the last segment (open routes) or of all
    /// segments (closed routes).
    pub fn junction_slots(&self) -> Vec<Slot> {
        let n = self.segments.len();
        let k = if self.closed { n } else { n.saturating_sub(1) };
        self.segments[..k]
            .iter()
            .map(|s| match s.exit {
                Port::Edge(p) => Slot { tri: s.tri, pos: p },
                Port::Corner(_) => unreachable!("corner exits end a route"),
            })
            .collect()
    }

    /// Number of times the route crosses edge `e` between segments.
    pub fn crossing_count(&self, t: &Triangulation, e: usize) -> usize {
        self.crossings(t).iter().filter(|&&x| x == e).count()
    }

    pub fn turns(&self) -> Vec<Option<Turn>> {
        self.segments.iter().map(Segment::turn).collect()
    }

    pub fn reversed(&self) -> Route {
        let segments: Vec<Segment> = self.segments.iter().rev().map(Segment::reversed).collect();
        Route { segments, closed: self.closed }
    }

    /// Canonical representative up to reversal (and rotation when
    /// closed), used to recognise homotopic curves.
    pub fn canonical_key(&self) -> Vec<Segment> {
        let mut best: Option<Vec<Segment>> = None;
        for r in [self.clone(), self.reversed()] {
            let n = r.segments.len();
            let rots = if r.closed { n.max(1) } else { 1 };
            for k in 0..rots {
                let mut s = r.segments.clone();
                s.rotate_left(k);
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// The same curve after flipping `map.k`, described in the flipped
    /// triangulation `t2`.
    pub fn through_flip(&self, map: &FlipMap) -> Result<Route, RouteError> {
        let n = self.segments.len();
        if self.segments.iter().any(|s| matches!(s.entry, Port::Corner(_)) || matches!(s.exit, Port::Corner(_))) {
            return Err(RouteError::CornerInFlip);
        }
        let is_k = |s: &Segment| -> bool {
            match s.exit {
                Port::Edge(p) => map.old.contains(&Slot { tri: s.tri, pos: p }),
                Port::Corner(_) => false,
            }
        };
        let mut segs = self.segments.clone();
        if self.closed {
            // start right after a crossing that is not k
            let Some(i) = (0..n).find(|&i| !is_k(&segs[i])) else {
                return Err(RouteError::Inconsistent(0));
            };
            segs.rotate_left((i + 1) % n);
        }
        let mut out = Vec::with_capacity(n + 2);
        let mut i = 0;
        while i < segs.len() {
            if !map.touches(segs[i].tri) {
                out.push(segs[i]);
                i += 1;
                continue;
            }
            let start = segs[i];
            let mut j = i;
            while is_k(&segs[j]) {
                j += 1;
            }
            let end = segs[j];
            let (Port::Edge(pin), Port::Edge(pout)) = (start.entry, end.exit) else {
                return Err(RouteError::CornerInFlip);
            };
            let a = map.new_slot_of(Slot { tri: start.tri, pos: pin }).ok_or(RouteError::Inconsistent(i))?;
            let b = map.new_slot_of(Slot { tri: end.tri, pos: pout }).ok_or(RouteError::Inconsistent(j))?;
            if a.tri == b.tri {
                out.push(Segment { tri: a.tri, entry: Port::Edge(a.pos), exit: Port::Edge(b.pos) });
            } else {
                out.push(Segment { tri: a.tri, entry: Port::Edge(a.pos), exit: Port::Edge(0) });
                out.push(Segment { tri: b.tri, entry: Port::Edge(0), exit: Port::Edge(b.pos) });
            }
            i = j + 1;
        }
        Ok(Route { segments: out, closed: self.closed })
    }
}
