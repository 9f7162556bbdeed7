use alloc::vec;
use alloc::vec::Vec;

use super::{ChiTable, ModuleError};
use crate::route::{Port, Route, Segment};
use crate::surface::{EdgeKind, Triangulation};

/// The annulus obtained by unrolling the triangles a loop passes through.
#[derive(Debug, Clone)]
pub struct Cover {
    pub tri: Triangulation,
    /// The lifted loop; it crosses lifted arc `i` as its `i`-th crossing.
    pub route: Route,
    /// Base edge under each cover edge, `None` for cover boundary.
    pub projection: Vec<Option<usize>>,
    pub weight: i64,
    pub base_edges: usize,
}

/// One cover triangle per segment of the loop: the entry side becomes
/// lifted arc `i`, the exit side lifted arc `i + 1`, and the third side a
/// boundary segment. Positions inside each triangle are kept, so the
/// orientation is the base one.
pub fn annulus_cover(t: &Triangulation, r: &Route, weight: i64) -> Result<Cover, ModuleError> {
    assert!(r.closed, "annulus cover of an open route");
    let s = r.segments.len();
    let crossings = r.crossings(t);
    let mut kinds = vec![EdgeKind::Arc; s];
    kinds.extend(core::iter::repeat_n(EdgeKind::Boundary, s));
    let mut tris = Vec::with_capacity(s);
    let mut segs = Vec::with_capacity(s);
    for (i, seg) in r.segments.iter().enumerate() {
        let (Port::Edge(p), Port::Edge(q)) = (seg.entry, seg.exit) else {
            return Err(ModuleError::NotAString("corner on a loop"));
        };
        let mut tri = [0usize; 3];
        tri[p] = i;
        tri[q] = (i + 1) % s;
        tri[3 - p - q] = s + i;
        tris.push(tri);
        segs.push(Segment { tri: i, entry: Port::Edge(p), exit: Port::Edge(q) });
    }
    let tri = Triangulation::new(kinds, tris)?;
    debug_assert!(tri.genus() == 0 && tri.num_boundary_components() == 2);
    let mut projection: Vec<Option<usize>> = crossings.into_iter().map(Some).collect();
    projection.extend(core::iter::repeat_n(None, s));
    Ok(Cover {
        tri,
        route: Route { segments: segs, closed: true },
        projection,
        weight,
        base_edges: t.num_edges(),
    })
}

/// Re-indexes a cover table by the base: `e_i = Σ_{ĩ ↦ i} d_ĩ`.
pub fn pushdown_chi(cover: &Cover, table: &ChiTable) -> ChiTable {
    let mut out = ChiTable::default();
    for (d, &v) in &table.entries {
        let mut e = vec![0usize; cover.base_edges];
        for (i, &x) in d.iter().enumerate() {
            if let Some(b) = cover.projection[i] {
                e[b] += x;
            } else {
                debug_assert_eq!(x, 0);
            }
        }
        out.add(e, v);
    }
    out
}
