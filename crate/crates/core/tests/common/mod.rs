#![allow(dead_code)]

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use skein_core::lamination::balance_with_specials;
use skein_core::{Curve, EdgeKind, Lamination, LaurentPoly, Triangulation};

use EdgeKind::{Arc as A, Boundary as B};

pub fn annulus() -> Triangulation {
    Triangulation::new(vec![A, A, B, B], vec![[2, 0, 1], [3, 0, 1]]).unwrap()
}

/// Fan triangulation of an `n`-gon: sides `0..n`, diagonals `n..2n-3`.
pub fn polygon(n: usize) -> Triangulation {
    let mut kinds = vec![B; n];
    kinds.extend(vec![A; n - 3]);
    let tris = (0..n - 2)
        .map(|i| {
            let left = if i == 0 { 0 } else { n + i - 1 };
            let right = if i == n - 3 { n - 1 } else { n + i };
            [left, i + 1, right]
        })
        .collect();
    Triangulation::new(kinds, tris).unwrap()
}

/// Genus one, one boundary component with one marked point.
pub fn torus() -> Triangulation {
    Triangulation::new(vec![A, A, A, A, B], vec![[0, 1, 2], [1, 2, 3], [0, 4, 3]]).unwrap()
}

pub fn loop_lam(t: &Triangulation, word: &[usize], w: i64) -> Lamination {
    Lamination::new(t, &[Curve::closed(word.to_vec(), w)]).unwrap()
}

/// Arcs crossed walking the dual tree from the triangle on side `b` to the
/// triangle on side `c`.
pub fn dual_path(t: &Triangulation, b: usize, c: usize) -> Vec<usize> {
    let s = t.slots(b)[0].tri;
    let e = t.slots(c)[0].tri;
    let nt = t.triangles().len();
    let mut prev = vec![None; nt];
    let mut seen = vec![false; nt];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &ed in &t.triangles()[x] {
            if !t.is_arc(ed) {
                continue;
            }
            for sl in t.slots(ed) {
                if !seen[sl.tri] {
                    seen[sl.tri] = true;
                    prev[sl.tri] = Some((x, ed));
                    q.push_back(sl.tri);
                }
            }
        }
    }
    let mut w = vec![];
    let mut cur = e;
    while let Some((p, ed)) = prev[cur] {
        w.push(ed);
        cur = p;
    }
    w.reverse();
    w
}

/// One weight-one curve from side `b` to side `c`, balanced by specials.
pub fn arc_family(t: &Triangulation, b: usize, c: usize) -> Option<Lamination> {
    let curves = balance_with_specials(t, &[Curve::open(b, dual_path(t, b, c), c, 1)]).ok()?;
    Lamination::new(t, &curves).ok()
}

/// Side pairs of an `n`-gon whose arc family balances with specials alone.
pub fn balanced_pairs(n: usize) -> Vec<(usize, usize)> {
    let t = polygon(n);
    let mut out = vec![];
    for b in 0..n {
        for c in b + 1..n {
            if arc_family(&t, b, c).is_some() {
                out.push((b, c));
            }
        }
    }
    out
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `p` at `X_i = r_i²`: half exponents become integer powers of `r_i`.
pub fn eval_at_squares(p: &LaurentPoly, roots: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        let mut term = c.clone();
        for (&d, r) in e.iter().zip(roots) {
            let base = if d >= 0 { r.clone() } else { BigRational::one() / r };
            for _ in 0..d.unsigned_abs() {
                term *= &base;
            }
        }
        acc += term;
    }
    acc
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
