use alloc::vec;
use alloc::vec::Vec;

use super::grass::{for_each_closed_subset, mask_dims};
use super::{
    annulus_cover, band_of_loop, build_module, chi_table, pushdown_chi, string_of_arc, transverse_chi_band_w1,
    ChiTable, ModuleError, QPModule,
};
use crate::algebra::{chebyshev_poly, eval_univariate, LaurentPoly};
use crate::canonical::CanonicalExpansion;
use crate::lamination::{drag_endpoints, CurveKind, Lamination};
use crate::route::Route;
use crate::surface::Triangulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    String,
    /// Weight-one band module with all dimensions at most one.
    BandW1,
}

/// `Σ_e χ(Gr_e M) X^e` for strings, `Σ_e χ(Gr°_e M) X^e` for thin
/// weight-one bands.
pub fn f_polynomial_from_module(m: &QPModule, kind: ModuleKind) -> Result<LaurentPoly, ModuleError> {
    let table = match kind {
        ModuleKind::String => chi_table(m)?,
        ModuleKind::BandW1 => transverse_table(m),
    };
    Ok(table.to_poly(m.num_vertices))
}

fn transverse_table(m: &QPModule) -> ChiTable {
    let d = m.dim_vector();
    let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 0).collect();
    let mut t = ChiTable::default();
    for bits in 0u64..(1u64 << support.len()) {
        let mut e = vec![0; d.len()];
        for (k, &i) in support.iter().enumerate() {
            e[i] = ((bits >> k) & 1) as usize;
        }
        let v = transverse_chi_band_w1(m, &e);
        t.add(e, v);
    }
    t
}

/// `F_γ` of an arc given as a corner-ended route; `1` for an edge of `T`.
pub fn string_f_polynomial(t: &Triangulation, r: &Route) -> Result<LaurentPoly, ModuleError> {
    if r.segments.len() == 1 {
        return Ok(LaurentPoly::one(t.num_edges()));
    }
    let qp = t.quiver_with_potential()?;
    let w = string_of_arc(t, &qp, r)?;
    let m = build_module(&qp, &w, None);
    debug_assert!(m.satisfies_relations(&qp.zero_relations()));
    f_polynomial_from_module(&m, ModuleKind::String)
}

/// The base table `χ(Gr°_e M_{T,ℓ})` of a weight-one loop, computed on the
/// annulus cover and pushed down.
pub fn band_chi_table(t: &Triangulation, r: &Route) -> Result<ChiTable, ModuleError> {
    let cover = annulus_cover(t, r, 1)?;
    let cqp = cover.tri.quiver_with_potential()?;
    let w = band_of_loop(&cover.tri, &cqp, &cover.route)?;
    let m = build_module(&cqp, &w, Some(1));
    Ok(pushdown_chi(&cover, &transverse_table(&m)))
}

/// `F` of a loop of weight `k`: the band table for `k = 1`, and the
/// Chebyshev polynomial of the weight-one function for larger `k`.
pub fn band_f_polynomial(t: &Triangulation, r: &Route, k: u32) -> Result<LaurentPoly, ModuleError> {
    let n = t.num_edges();
    let qp = t.quiver_with_potential()?;
    band_of_loop(t, &qp, r)?;
    let f1 = band_chi_table(t, r)?.to_poly(n);
    if k == 1 {
        return Ok(f1);
    }
    // 𝕀(kℓ) = P_k(𝕀(ℓ)) with 𝕀(ℓ) = F₁·X^{−μ/2}
    let mut shift = vec![0i32; n];
    for e in r.crossings(t) {
        shift[e] -= 1;
    }
    let one_loop = f1.shift(&shift);
    let value = eval_univariate(&chebyshev_poly(k as usize), &one_loop);
    let back: Vec<i32> = shift.iter().map(|&x| -x * k as i32).collect();
    Ok(value.shift(&back))
}

/// `Σ_d χ(Gr°_d M_{T,ℓ}) X^d · X^h`, with the generating polynomial
/// assembled component by component (strings by subset counting, bands on
/// their annulus covers).
pub fn mixed_transverse_expansion(t: &Triangulation, lam: &Lamination) -> Result<CanonicalExpansion, ModuleError> {
    let (_, integral) = lam.coordinates(t);
    if !integral {
        return Err(ModuleError::NotIntegral);
    }
    let n = t.num_edges();
    let mut f = LaurentPoly::one(n);
    for (i, c) in lam.curves.iter().enumerate() {
        match c.kind {
            CurveKind::Closed => {
                f = &f * &band_f_polynomial(t, &c.route, c.weight as u32)?;
            }
            CurveKind::Open if c.weight > 0 => {
                let g = drag_endpoints(t, &c.route)
                    .map_err(|_| ModuleError::Lamination(crate::lamination::LaminationError::Degenerate(i)))?;
                f = &f * &string_f_polynomial(t, &g.route)?.pow(c.weight as u32);
            }
            CurveKind::Open => {}
        }
    }
    let h = lam.h_vector(t)?;
    Ok(CanonicalExpansion::from_parts(f, h))
}

type BandSummand = (usize, usize, QPModule);

/// With `blocks`, a loop of weight `k` contributes the band module with a
/// `k × k` Jordan block; otherwise loops must have weight one.
fn assemble(t: &Triangulation, lam: &Lamination, blocks: bool) -> Result<(QPModule, Vec<BandSummand>), ModuleError> {
    let qp = t.quiver_with_potential()?;
    let mut m = QPModule::zero(&qp);
    // (atom offset, length, cover module) for each band summand
    let mut bands = Vec::new();
    for (i, c) in lam.curves.iter().enumerate() {
        match c.kind {
            CurveKind::Closed => {
                if c.weight != 1 && !blocks {
                    return Err(ModuleError::NotAString("band summands must have weight one"));
                }
                let w = band_of_loop(t, &qp, &c.route)?;
                if c.weight == 1 {
                    let cover = annulus_cover(t, &c.route, 1)?;
                    let cqp = cover.tri.quiver_with_potential()?;
                    let cw = band_of_loop(&cover.tri, &cqp, &cover.route)?;
                    bands.push((m.atoms.len(), w.vertices.len(), build_module(&cqp, &cw, Some(1))));
                }
                m = m.direct_sum(&build_module(&qp, &w, Some(c.weight as usize)));
            }
            CurveKind::Open if c.weight > 0 => {
                let g = drag_endpoints(t, &c.route)
                    .map_err(|_| ModuleError::Lamination(crate::lamination::LaminationError::Degenerate(i)))?;
                if g.route.segments.len() == 1 {
                    continue;
                }
                let w = string_of_arc(t, &qp, &g.route)?;
                let sm = build_module(&qp, &w, None);
                for _ in 0..c.weight {
                    m = m.direct_sum(&sm);
                }
            }
            CurveKind::Open => {}
        }
    }
    Ok((m, bands))
}

/// `M_{T,ℓ}`: string modules of the positive open curves (with
/// multiplicity) and band modules of the loops, a loop of weight `k`
/// giving a `k × k` Jordan block. Modules with blocks larger than one are
/// not basis-shaped, so [`chi_table`] rejects them.
pub fn lamination_module(t: &Triangulation, lam: &Lamination) -> Result<QPModule, ModuleError> {
    Ok(assemble(t, lam, true)?.0)
}

/// The generating polynomial of `Gr°` of the whole direct sum, enumerated
/// directly: closed subsets of `M_{T,ℓ}` whose band projections pass the
/// transversality rule on the cover. Only weight-one loops are supported.
pub fn brute_force_direct_sum(t: &Triangulation, lam: &Lamination) -> Result<LaurentPoly, ModuleError> {
    let (m, bands) = assemble(t, lam, false)?;
    let mut table = ChiTable::default();
    for_each_closed_subset(&m, |mask| {
        let transverse = bands.iter().all(|(off, len, cm)| {
            let d: Vec<usize> = (0..cm.num_vertices).map(|v| if v < *len { ((mask >> (off + v)) & 1) as usize } else { 0 }).collect();
            transverse_chi_band_w1(cm, &d) == 1
        });
        if transverse {
            table.add(mask_dims(&m, mask), 1);
        }
    })?;
    Ok(table.to_poly(t.num_edges()))
}
