//! Plain-text reports behind each command. Every function is
//! deterministic: renderings are sorted and random sampling is seeded.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use skein_core::canonical::{
    canonical_function, flip_transport, leading_term_check, loop_function, state_sum, verify_chebyshev, verify_skein,
    CanonicalError, SkeinInstance,
};
use skein_core::clusterseed::{
    all_chords, extract_fpoly_gvector, flips_to_chord, polygon_chord_route, polygon_labels, Seed,
};
use skein_core::framed::{
    build_framed, fedotov_check, framed_target, framing_vector, verify_module_iso, FramedError, StabilityData,
};
use skein_core::lamination::{
    arc_endpoints, drag_endpoints, eps_transpose_h, shear_g_vector, weighted_g_sum, DraggedArc,
};
use skein_core::quivermod::{
    band_f_polynomial, chi_table, lamination_module, mixed_transverse_expansion, string_f_polynomial,
};
use skein_core::{CurveKind, HalfInt, Lamination, Triangulation};

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, detail: detail.into() }
    }

    fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skip, detail: detail.into() }
    }

    fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Check { name: name.into(), status: Status::Fail, detail: e.to_string() }
    }

    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        if self.detail.is_empty() {
            format!("{tag} {}", self.name)
        } else {
            format!("{tag} {}: {}", self.name, self.detail)
        }
    }
}

pub fn any_failed(checks: &[Check]) -> bool {
    checks.iter().any(|c| c.status == Status::Fail)
}

fn halves(v: &[HalfInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn ints<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Parses `"1,2,3"`; the empty string is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().with_context(|| format!("bad list entry {x:?}")))
        .collect()
}

/// Moves `t` and `lam` along a flip sequence.
pub fn apply_flips(t: &Triangulation, lam: &Lamination, flips: &[usize]) -> Result<(Triangulation, Lamination)> {
    let (mut t, mut lam) = (t.clone(), lam.clone());
    for &k in flips {
        (t, lam) = lam.through_flip(&t, k).with_context(|| format!("flip at {k}"))?;
    }
    Ok((t, lam))
}

/// `expand`: the expansion and its `F · X^h` factorization. The second
/// value is a warning for non-integral laminations.
pub fn expand(t: &Triangulation, lam: &Lamination) -> Result<(String, Option<String>)> {
    let exp = canonical_function(t, lam)?;
    let (a, integral) = lam.coordinates(t);
    let mut s = String::new();
    writeln!(s, "I = {}", exp.render())?;
    if let Some((e, c)) = exp.value.leading_term() {
        let lead: Vec<HalfInt> = e.iter().map(|&x| HalfInt::from_doubled(x as i64)).collect();
        writeln!(s, "leading term: {c} * X^{}", halves(&lead))?;
    }
    writeln!(s, "coordinates: {}", halves(&a))?;
    writeln!(s, "terms: {}", exp.value.len())?;
    let warn = (!integral).then(|| "not in A(ℤᵗ); half-integer exponents present".to_string());
    Ok((s, warn))
}

/// `coords`: `a_i`, `h` and the integrality flag.
pub fn coords(t: &Triangulation, lam: &Lamination) -> Result<String> {
    let (a, integral) = lam.coordinates(t);
    let h = lam.h_vector(t)?;
    let mut s = String::new();
    writeln!(s, "a = {}", halves(&a))?;
    writeln!(s, "h = {}", halves(&h))?;
    writeln!(s, "integral: {}", if integral { "yes" } else { "no" })?;
    for (i, c) in lam.curves.iter().enumerate() {
        let kind = match c.kind {
            CurveKind::Closed => "closed",
            CurveKind::Open => "open",
        };
        writeln!(s, "curve {i}: {kind} weight {} crossings {}", c.weight, ints(&c.crossings(t)))?;
    }
    Ok(s)
}

/// `chi`: the Grassmannian table of `M_{T,ℓ}`, or a single entry.
pub fn chi(t: &Triangulation, lam: &Lamination, dim: Option<&[usize]>) -> Result<String> {
    let m = lamination_module(t, lam)?;
    let table = chi_table(&m)?;
    let mut s = String::new();
    writeln!(s, "dim M = {}", ints(&m.dim_vector()))?;
    match dim {
        Some(d) => {
            anyhow::ensure!(d.len() == t.num_edges(), "--dim needs {} entries", t.num_edges());
            writeln!(s, "chi{} = {}", ints(d), table.get(d))?;
        }
        None => s.push_str(&table.render()),
    }
    Ok(s)
}

/// `module`: atoms and arrow actions of `M_{T,ℓ}`.
pub fn module(t: &Triangulation, lam: &Lamination) -> Result<String> {
    let m = lamination_module(t, lam)?;
    Ok(format!("dim M = {}\n{}", ints(&m.dim_vector()), m.describe()))
}

/// `fpoly`: per curve, the F-polynomials from every available route.
pub fn fpoly(t: &Triangulation, lam: &Lamination) -> Result<String> {
    let mut s = String::new();
    let labels = polygon_labels(t).ok();
    for (i, c) in lam.curves.iter().enumerate() {
        match c.kind {
            CurveKind::Closed => {
                writeln!(s, "curve {i}: loop {} weight {}", ints(&c.crossings(t)), c.weight)?;
                writeln!(s, "  trace   F = {}", loop_function(t, &c.route, 1)?.f_part.render("X"))?;
                writeln!(s, "  states  F = {}", state_sum(t, &c.route)?.render("X"))?;
                writeln!(s, "  band    F = {}", band_f_polynomial(t, &c.route, 1)?.render("X"))?;
            }
            CurveKind::Open => {
                let g = drag_endpoints(t, &c.route)?;
                writeln!(s, "curve {i}: open {} weight {}", ints(&c.crossings(t)), c.weight)?;
                if let Some(e) = g.edge {
                    writeln!(s, "  edge {e} of T, F = 1")?;
                    continue;
                }
                writeln!(s, "  string  F = {}", string_f_polynomial(t, &g.route)?.render("X"))?;
                writeln!(s, "  shear   g = {}", ints(&shear_g_vector(t, &g)))?;
                if let (Some(labels), Some((u, v))) = (&labels, arc_endpoints(t, &g.route)) {
                    let (path, e) = flips_to_chord(t, labels[u], labels[v])?;
                    let fg = extract_fpoly_gvector(&Seed::initial(t), &path, e)?;
                    writeln!(s, "  seed    F = {}", fg.f.render("X"))?;
                    writeln!(s, "  seed    g = {}", ints(&fg.g))?;
                }
            }
        }
    }
    Ok(s)
}

/// `flipcheck`: transported expansion against native recomputation.
pub fn flipcheck(t: &Triangulation, lam: &Lamination, arcs: &[usize]) -> Vec<Check> {
    let arcs = if arcs.is_empty() { t.arcs() } else { arcs.to_vec() };
    let base = match canonical_function(t, lam) {
        Ok(e) => e,
        Err(e) => return vec![Check::error("flip invariance", e)],
    };
    arcs.into_iter()
        .map(|k| {
            let name = format!("flip invariance at arc {k}");
            let run = || -> Result<Option<String>> {
                let moved = flip_transport(&base.value, t, k)?;
                let (t2, l2) = lam.through_flip(t, k)?;
                let native = canonical_function(&t2, &l2)?;
                Ok((!moved.equals_poly(&native.value)).then(|| {
                    format!("transported {} / {} vs native {}", moved.num().render("X"), moved.den().render("X"), native.value.render("X"))
                }))
            };
            match run() {
                Ok(None) => Check::new(name, true, ""),
                Ok(Some(d)) => Check::new(name, false, d),
                Err(e) => Check::error(name, e),
            }
        })
        .collect()
}

/// `seed`: cluster variables after a mutation path, with their `F` and `g`.
pub fn seed(t: &Triangulation, path: &[usize]) -> Result<String> {
    let s0 = Seed::initial(t);
    let s = s0.mutate_path(path)?;
    let mut out = String::new();
    writeln!(out, "path {}", ints(path))?;
    for (v, a) in s.cluster.iter().enumerate() {
        writeln!(out, "A{v} = {}", a.render("A"))?;
        if !path.is_empty() && t.is_arc(v) {
            let fg = extract_fpoly_gvector(&s0, path, v)?;
            writeln!(out, "  F = {}  g = {}", fg.f.render("X"), ints(&fg.g))?;
        }
    }
    Ok(out)
}

/// `framed`: `n`, `Q̃`, the count table and the isomorphism verdict.
pub fn framed(t: &Triangulation, lam: &Lamination, rng_seed: u64) -> Result<(String, Vec<Check>)> {
    let mut s = String::new();
    let n = match framing_vector(t, lam) {
        Ok(n) => n,
        Err(FramedError::AssumptionViolation(bad)) => {
            writeln!(s, "framing vector negative at arcs {}; framed pipeline not applicable", ints(&bad))?;
            return Ok((s, vec![Check::skip("framed pipeline", format!("assumption violated at {}", ints(&bad)))]));
        }
        Err(e) => return Err(e.into()),
    };
    let fq = build_framed(t, &n)?;
    let stab = StabilityData::standard(&fq);
    writeln!(s, "n = {}", ints(&n))?;
    s.push_str(&fq.describe());
    writeln!(s, "stability data valid: {}", stab.is_valid())?;
    let iv = framed_target(t, &n)?;
    let m = lamination_module(t, lam)?;
    writeln!(s, "dim I⊗V = {}  dim M = {}", ints(&iv.dim_vector()), ints(&m.dim_vector()))?;
    let iso = verify_module_iso(&iv, &m, rng_seed)?;
    let chi_iv = chi_table(&iv)?;
    let chi_m = chi_table(&m)?;
    let rows = fedotov_check(t, &n, rng_seed)?;
    writeln!(s, "d | cocyclic fixed | submodules | chi M")?;
    let mut bad_rows = Vec::new();
    for r in &rows {
        writeln!(s, "{} | {} | {} | {}", ints(&r.dim), r.cocyclic_fixed, r.submodules, chi_m.get(&r.dim))?;
        if r.cocyclic_fixed != r.submodules || r.submodules as i64 != chi_m.get(&r.dim) {
            bad_rows.push(ints(&r.dim));
        }
    }
    writeln!(s, "I⊗V ≅ M: {}", if iso { "yes" } else { "no" })?;
    let checks = vec![
        Check::new("module isomorphism I⊗V ≅ M", iso, ""),
        Check::new("chi tables of I⊗V and M", chi_iv == chi_m, ""),
        Check::new("cocyclic fixed points against submodules", bad_rows.is_empty(), bad_rows.join(" ")),
    ];
    Ok((s, checks))
}

/// The property suite for one lamination.
pub fn verify_lamination(t: &Triangulation, lam: &Lamination, rng_seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let (_, integral) = lam.coordinates(t);
    let exp = match canonical_function(t, lam) {
        Ok(e) => e,
        Err(CanonicalError::Positivity) => {
            out.push(Check::new("positivity", false, "negative or fractional coefficient"));
            return out;
        }
        Err(e) => {
            out.push(Check::error("expansion", e));
            return out;
        }
    };
    if integral {
        out.push(Check::new("positivity and leading term", leading_term_check(&exp, t, lam), exp.value.render("X")));
        match mixed_transverse_expansion(t, lam) {
            Ok(mx) => {
                let d = if mx.value == exp.value { String::new() } else { format!("module route gives {}", mx.value.render("X")) };
                out.push(Check::new("module route equals canonical function", d.is_empty(), d));
            }
            Err(e) => out.push(Check::error("module route equals canonical function", e)),
        }
    } else {
        out.push(Check::skip("positivity and leading term", "not integral"));
    }
    if lam.open_curves().next().is_some() {
        match (weighted_g_sum(t, lam), lam.h_vector(t)) {
            (Ok(s), Ok(h)) => {
                let twice: Vec<i64> = s.iter().map(|x| 2 * x).collect();
                let eh = eps_transpose_h(&Seed::initial(t).eps, &h);
                out.push(Check::new("weighted g-vector sum equals eps^T h", twice == eh, format!("{} vs {}", ints(&twice), ints(&eh))));
            }
            (Err(e), _) | (_, Err(e)) => out.push(Check::error("weighted g-vector sum equals eps^T h", e)),
        }
    }
    for (i, c) in lam.closed_curves().enumerate() {
        let name = format!("loop {i}: trace, state sum and band routes");
        let run = || -> Result<Option<String>> {
            let tr = loop_function(t, &c.route, 1)?.f_part;
            let st = state_sum(t, &c.route)?;
            let bd = band_f_polynomial(t, &c.route, 1)?;
            if tr != st || tr != bd {
                return Ok(Some(format!("trace {} states {} band {}", tr.render("X"), st.render("X"), bd.render("X"))));
            }
            for k in 2..=4u32 {
                let lhs = loop_function(t, &c.route, k)?.f_part;
                let rhs = band_f_polynomial(t, &c.route, k)?;
                if lhs != rhs {
                    return Ok(Some(format!("weight {k}: trace {} band {}", lhs.render("X"), rhs.render("X"))));
                }
            }
            for big_k in 1..=4 {
                verify_chebyshev(t, &c.route, big_k)?;
            }
            Ok(None)
        };
        out.push(match run() {
            Ok(None) => Check::new(name, true, ""),
            Ok(Some(d)) => Check::new(name, false, d),
            Err(e) => Check::error(name, e),
        });
    }
    out.extend(flipcheck(t, lam, &[]));
    if integral {
        match framed(t, lam, rng_seed) {
            Ok((_, checks)) => out.extend(checks),
            Err(e) => out.push(Check::error("framed pipeline", e)),
        }
    }
    out
}

/// Surface-level checks: for polygons, every chord's F-polynomial and
/// g-vector from mutation, strings and shears.
pub fn verify_surface(t: &Triangulation) -> Vec<Check> {
    let Ok(labels) = polygon_labels(t) else { return Vec::new() };
    let s0 = Seed::initial(t);
    all_chords(labels.len())
        .into_iter()
        .map(|(a, b)| {
            let name = format!("chord {a}-{b}: seed, string and shear");
            let run = || -> Result<Option<String>> {
                let (path, e) = flips_to_chord(t, a, b)?;
                let fg = extract_fpoly_gvector(&s0, &path, e)?;
                let route = polygon_chord_route(t, a, b)?;
                let f = string_f_polynomial(t, &route)?;
                let g = shear_g_vector(t, &DraggedArc { route, edge: None });
                let ok = fg.f == f && fg.g == g;
                Ok((!ok).then(|| {
                    format!("seed F {} g {}, string F {} shear g {}", fg.f.render("X"), ints(&fg.g), f.render("X"), ints(&g))
                }))
            };
            match run() {
                Ok(None) => Check::new(name, true, ""),
                Ok(Some(d)) => Check::new(name, false, d),
                Err(e) => Check::error(name, e),
            }
        })
        .collect()
}

pub fn verify_skein_instance(t: &Triangulation, inst: &SkeinInstance) -> Check {
    match verify_skein(t, inst) {
        Ok((a, b)) => {
            let sign = |x: i8| if x > 0 { '+' } else { '-' };
            Check::new("skein relation", true, format!("signs ({},{})", sign(a), sign(b)))
        }
        Err(e) => Check::error("skein relation", e),
    }
}
