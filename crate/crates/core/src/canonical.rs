//! The functions `𝕀(ℓ)`: loops by monodromy traces, arcs by F-polynomials
//! and h-vectors, products over components, and the identities they
//! satisfy (flip transport, skein, Chebyshev).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{monomial_power_expansion, AlgebraError, HalfInt, LaurentPoly, Mat2, RationalFn};
use crate::clusterseed::{flips_to_chord, polygon_chords, polygon_side, Seed, SeedError};
use crate::lamination::{drag_endpoints, CurveKind, LamCurve, Lamination, LaminationError};
use crate::quivermod::{string_f_polynomial, ModuleError};
use crate::route::{Port, Route, RouteError, Turn};
use crate::surface::{SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("consecutive crossings do not share a triangle at step {0}")]
    NonAdjacentCrossings(usize),
    #[error("expected a closed curve")]
    NotALoop,
    #[error("integral lamination has a negative or fractional coefficient, or a half exponent")]
    Positivity,
    #[error("no choice of signs makes the three-term relation vanish")]
    NoSignChoiceWorks,
    #[error("Chebyshev identity fails for K = {0}")]
    ChebyshevMismatch(usize),
    #[error("skein instance has no detectable crossing")]
    NoCrossing,
    #[error("edge {0} is not an edge of the triangulation")]
    UnknownEdge(usize),
    #[error("monomial exponent is not compatible with the flip (half-integral power of 1 + X_k)")]
    HalfIntegralFlip,
    #[error(transparent)]
    Lamination(#[from] LaminationError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Route(#[from] RouteError),
}

/// `value = f_part · X^{h_part}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalExpansion {
    pub value: LaurentPoly,
    pub f_part: LaurentPoly,
    pub h_part: Vec<HalfInt>,
}

impl CanonicalExpansion {
    pub fn from_parts(f_part: LaurentPoly, h_part: Vec<HalfInt>) -> Self {
        let d: Vec<i32> = h_part.iter().map(|h| h.doubled() as i32).collect();
        CanonicalExpansion { value: f_part.shift(&d), f_part, h_part }
    }

    pub fn one(n: usize) -> Self {
        Self::from_parts(LaurentPoly::one(n), vec![HalfInt::ZERO; n])
    }

    pub fn product(&self, o: &Self) -> Self {
        let h = self.h_part.iter().zip(&o.h_part).map(|(a, b)| *a + *b).collect();
        Self::from_parts(&self.f_part * &o.f_part, h)
    }

    /// Text rendering: value, then the factorization.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.value.render("X"));
        s.push_str("\nF = ");
        s.push_str(&self.f_part.render("X"));
        s.push_str("\nh = (");
        for (i, h) in self.h_part.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&alloc::format!("{h}"));
        }
        s.push(')');
        s
    }
}

/// Crossed arcs with the turn taken after each crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnWord {
    pub steps: Vec<(usize, Turn)>,
}

/// Turns of every segment that enters and leaves through sides, each
/// paired with the edge it entered through.
pub fn turn_word(t: &Triangulation, r: &Route) -> Result<TurnWord, CanonicalError> {
    let mut steps = Vec::new();
    for (i, s) in r.segments.iter().enumerate() {
        let (Port::Edge(p), Port::Edge(_)) = (s.entry, s.exit) else { continue };
        let turn = s.turn().ok_or(CanonicalError::NonAdjacentCrossings(i))?;
        steps.push((t.edge(s.tri, p), turn));
    }
    Ok(TurnWord { steps })
}

/// `S_k = X^{½} M_k`, with integer entries.
fn scaled_factor(n: usize, j: usize, turn: Turn) -> Mat2 {
    let x = LaurentPoly::var(n, j);
    let one = LaurentPoly::one(n);
    let zero = LaurentPoly::zero(n);
    match turn {
        Turn::Left => Mat2::new(x.clone(), x, zero, one),
        Turn::Right => Mat2::new(x, zero, one.clone(), one),
    }
}

/// `ρ(c) = M₁⋯M_s`.
pub fn loop_monodromy(t: &Triangulation, r: &Route) -> Result<Mat2, CanonicalError> {
    if !r.closed {
        return Err(CanonicalError::NotALoop);
    }
    let n = t.num_edges();
    let mut m = Mat2::identity(n);
    for (j, turn) in turn_word(t, r)?.steps {
        let mut d = vec![0i32; n];
        d[j] = -1;
        let mk = scaled_factor(n, j, turn).scale(&LaurentPoly::monomial(n, d, BigRational::one()));
        m = m.mul(&mk);
    }
    Ok(m)
}

/// `Tr ρ(c)^k` split as `F · X^h`, `h = −(k/2)μ`.
pub fn loop_function(t: &Triangulation, r: &Route, k: u32) -> Result<CanonicalExpansion, CanonicalError> {
    if !r.closed {
        return Err(CanonicalError::NotALoop);
    }
    let n = t.num_edges();
    let mut s = Mat2::identity(n);
    let mut h = vec![HalfInt::ZERO; n];
    for (j, turn) in turn_word(t, r)?.steps {
        s = s.mul(&scaled_factor(n, j, turn));
        h[j] = h[j] - HalfInt::from_doubled(k as i64);
    }
    let f = if k == 0 { LaurentPoly::from_int(n, 2) } else { s.pow(k).trace() };
    Ok(CanonicalExpansion::from_parts(f, h))
}

/// `Σ_σ q_{σ₁σ₂}⋯q_{σ_sσ₁} X^σ`, enumerating all `2^s` states.
pub fn state_sum(t: &Triangulation, r: &Route) -> Result<LaurentPoly, CanonicalError> {
    let steps = turn_word(t, r)?.steps;
    let s = steps.len();
    let n = t.num_edges();
    let mut out = LaurentPoly::zero(n);
    for bits in 0u64..(1u64 << s) {
        let sigma = |k: usize| (bits >> (k % s)) & 1;
        let allowed = (0..s).all(|k| match steps[k].1 {
            Turn::Left => !(sigma(k) == 0 && sigma(k + 1) == 1),
            Turn::Right => !(sigma(k) == 1 && sigma(k + 1) == 0),
        });
        if allowed {
            let mut d = vec![0i32; n];
            for (k, &(j, _)) in steps.iter().enumerate() {
                d[j] += 2 * sigma(k) as i32;
            }
            out.add_term(d, BigRational::one());
        }
    }
    Ok(out)
}

fn open_only(lam: &Lamination) -> Lamination {
    Lamination { curves: lam.open_curves().cloned().collect() }
}

/// `Π F_{γ_k}^{w_k} · X^h` over the open curves of `ℓ`; curves of negative
/// weight contribute `F = 1`.
pub fn arc_function_expansion(t: &Triangulation, lam: &Lamination) -> Result<CanonicalExpansion, CanonicalError> {
    let n = t.num_edges();
    let open = open_only(lam);
    let mut f = LaurentPoly::one(n);
    for (i, c) in open.curves.iter().enumerate() {
        if c.weight <= 0 {
            continue;
        }
        let g = drag_endpoints(t, &c.route).map_err(|_| LaminationError::Degenerate(i))?;
        f = &f * &string_f_polynomial(t, &g.route)?.pow(c.weight as u32);
    }
    Ok(CanonicalExpansion::from_parts(f, open.h_vector(t)?))
}

fn closed_factor(t: &Triangulation, c: &LamCurve) -> Result<CanonicalExpansion, CanonicalError> {
    debug_assert_eq!(c.kind, CurveKind::Closed);
    loop_function(t, &c.route, c.weight as u32)
}

/// `𝕀(ℓ)`: the product of the loop factors and the arc family factor.
/// For integral `ℓ` the result is checked to be a Laurent polynomial with
/// nonnegative integer coefficients.
pub fn canonical_function(t: &Triangulation, lam: &Lamination) -> Result<CanonicalExpansion, CanonicalError> {
    let mut out = arc_function_expansion(t, lam)?;
    for c in lam.closed_curves() {
        out = out.product(&closed_factor(t, c)?);
    }
    let (_, integral) = lam.coordinates(t);
    if integral && !is_positive_laurent(&out.value) {
        return Err(CanonicalError::Positivity);
    }
    Ok(out)
}

fn is_positive_laurent(p: &LaurentPoly) -> bool {
    p.has_integer_exponents() && p.has_integer_coefficients() && p.has_nonnegative_coefficients()
}

/// The lexicographically largest exponent equals `coordinates(ℓ)` and all
/// coefficients are nonnegative integers.
pub fn leading_term_check(exp: &CanonicalExpansion, t: &Triangulation, lam: &Lamination) -> bool {
    let (a, _) = lam.coordinates(t);
    let Some((e, _)) = exp.value.leading_term() else { return false };
    let lead_ok = e.iter().zip(&a).all(|(&x, y)| x as i64 == y.doubled());
    lead_ok && exp.value.has_integer_coefficients() && exp.value.has_nonnegative_coefficients()
}

/// Rewrites a Laurent polynomial in the coordinates of `T` as a rational
/// function in the coordinates of `flip(T, k)`, using
/// `X_k = X_k'^{-1}` and `X_j = X_j' X_k'^{[−ε_jk]₊} (1 + X_k')^{ε_jk}`.
pub fn flip_transport(p: &LaurentPoly, t: &Triangulation, k: usize) -> Result<RationalFn, CanonicalError> {
    if !t.is_arc(k) {
        return Err(SurfaceError::NotAnArc(k).into());
    }
    let eps = t.signed_adjacency();
    let n = t.num_edges();
    // group terms by the power of (1 + X_k') they pick up
    let mut groups: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (d, c) in p.terms() {
        let mut m: Vec<i32> = d.to_vec();
        let mut e2 = 0i64;
        m[k] = -d[k];
        for j in 0..n {
            if j == k {
                continue;
            }
            let ejk = eps.get(j, k);
            e2 += ejk * d[j] as i64;
            m[k] += (-ejk).max(0) as i32 * d[j];
        }
        if e2 % 2 != 0 {
            return Err(CanonicalError::HalfIntegralFlip);
        }
        groups.entry(e2 / 2).or_insert_with(|| LaurentPoly::zero(n)).add_term(m, c.clone());
    }
    let Some(&lo) = groups.keys().next() else { return Ok(RationalFn::from_poly(LaurentPoly::zero(n))) };
    let base = &LaurentPoly::one(n) + &LaurentPoly::var(n, k);
    let mut num = LaurentPoly::zero(n);
    for (e, g) in &groups {
        num += &(g * &base.pow((e - lo) as u32));
    }
    let mut r = if lo >= 0 {
        RationalFn::from_poly(&num * &base.pow(lo as u32))
    } else {
        RationalFn::new(num, base.pow((-lo) as u32))?
    };
    r.reduce();
    Ok(r)
}

/// `𝕀(ℓ)^K = Σ_k c_k 𝕀(kℓ)` for a weight-one loop, with `𝕀(0·ℓ) = 2`.
/// Returns the coefficients `c_0..c_K` after checking the identity.
pub fn verify_chebyshev(t: &Triangulation, r: &Route, big_k: usize) -> Result<Vec<BigInt>, CanonicalError> {
    let c = monomial_power_expansion(big_k);
    let lhs = loop_function(t, r, 1)?.value.pow(big_k as u32);
    let mut rhs = LaurentPoly::zero(t.num_edges());
    for (k, ck) in c.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let term = loop_function(t, r, k as u32)?.value;
        rhs += &term.scale(&BigRational::from_integer(ck.clone()));
    }
    if lhs != rhs {
        return Err(CanonicalError::ChebyshevMismatch(big_k));
    }
    Ok(c)
}

/// One factor of a skein term, evaluated in the `A`-coordinates of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkeinItem {
    /// The edge variable `A_i`.
    Edge(usize),
    /// The cluster variable at `vertex` after mutating along `path`.
    Cluster { path: Vec<usize>, vertex: usize },
    /// A diagonal or side of a polygon, by vertex labels.
    Chord(usize, usize),
    /// A loop, by its cyclic crossing word.
    Loop(Vec<usize>),
}

/// `𝕀′(ℓ) ± 𝕀′(ℓ₁) ± 𝕀′(ℓ₂) = 0`: each side is a product of items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinInstance {
    pub crossing: Vec<SkeinItem>,
    pub first: Vec<SkeinItem>,
    pub second: Vec<SkeinItem>,
}

fn x_to_a(t: &Triangulation) -> BTreeMap<usize, RationalFn> {
    let eps = Seed::initial(t).eps;
    let n = t.num_edges();
    (0..n)
        .map(|j| {
            let d: Vec<i64> = (0..n).map(|i| eps.get(j, i)).collect();
            (j, RationalFn::from_poly(LaurentPoly::monomial_int(&d)))
        })
        .collect()
}

/// `𝕀′` of an item in the `A`-coordinates of `t`.
pub fn skein_item_value(t: &Triangulation, item: &SkeinItem) -> Result<RationalFn, CanonicalError> {
    let n = t.num_edges();
    let s0 = Seed::initial(t);
    let p = match item {
        SkeinItem::Edge(i) if *i < n => LaurentPoly::var(n, *i),
        SkeinItem::Edge(i) => return Err(CanonicalError::UnknownEdge(*i)),
        SkeinItem::Cluster { path, vertex } => {
            s0.mutate_path(path)?.cluster.get(*vertex).ok_or(CanonicalError::UnknownEdge(*vertex))?.clone()
        }
        SkeinItem::Chord(a, b) => {
            if let Some(side) = polygon_side(t, *a, *b)? {
                return Ok(RationalFn::from_poly(LaurentPoly::var(n, side)));
            }
            let (path, e) = flips_to_chord(t, *a, *b)?;
            s0.mutate_path(&path)?.cluster[e].clone()
        }
        SkeinItem::Loop(word) => {
            let r = Route::closed(t, word)?;
            let v = loop_function(t, &r, 1)?.value;
            let mut out = v.substitute(&x_to_a(t), n)?;
            // normalise to the representative with positive coefficients
            if out.num().leading_term().is_some_and(|(_, c)| c.is_negative()) {
                out = RationalFn::from_poly(LaurentPoly::zero(n)).sub(&out);
            }
            return Ok(out);
        }
    };
    Ok(RationalFn::from_poly(p))
}

fn product_value(t: &Triangulation, items: &[SkeinItem]) -> Result<RationalFn, CanonicalError> {
    let mut acc = RationalFn::from_poly(LaurentPoly::one(t.num_edges()));
    for it in items {
        acc = acc.mul(&skein_item_value(t, it)?);
    }
    Ok(acc)
}

/// Whether two items visibly cross in `t`: interleaved chords, a chord or
/// loop meeting an arc of `t`.
fn items_cross(t: &Triangulation, a: &SkeinItem, b: &SkeinItem) -> Result<bool, CanonicalError> {
    use SkeinItem::*;
    Ok(match (a, b) {
        (Chord(p, q), Chord(r, s)) => crate::clusterseed::chords_cross((*p, *q), (*r, *s)),
        (Chord(p, q), Edge(e)) | (Edge(e), Chord(p, q)) => {
            let chords = polygon_chords(t)?;
            chords.get(e).is_some_and(|&c| crate::clusterseed::chords_cross((*p, *q), c))
        }
        (Loop(w), Edge(e)) | (Edge(e), Loop(w)) => w.contains(e),
        _ => false,
    })
}

/// Finds signs `(s₁, s₂)` with `𝕀′(ℓ) + s₁𝕀′(ℓ₁) + s₂𝕀′(ℓ₂) = 0`.
pub fn verify_skein(t: &Triangulation, inst: &SkeinInstance) -> Result<(i8, i8), CanonicalError> {
    let mut crossing = false;
    for (i, a) in inst.crossing.iter().enumerate() {
        for b in &inst.crossing[i + 1..] {
            crossing |= items_cross(t, a, b)?;
        }
    }
    if !crossing {
        return Err(CanonicalError::NoCrossing);
    }
    let v0 = product_value(t, &inst.crossing)?;
    let v1 = product_value(t, &inst.first)?;
    let v2 = product_value(t, &inst.second)?;
    let zero = RationalFn::from_poly(LaurentPoly::zero(t.num_edges()));
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            let a = if s1 > 0 { v0.add(&v1) } else { v0.sub(&v1) };
            let b = if s2 > 0 { a.add(&v2) } else { a.sub(&v2) };
            if b.equals(&zero) {
                return Ok((s1, s2));
            }
        }
    }
    Err(CanonicalError::NoSignChoiceWorks)
}
