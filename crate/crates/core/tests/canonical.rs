mod common;

use common::{annulus, arc_family, balanced_pairs, eval_at_squares, loop_lam, polygon, rat, torus};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use skein_core::canonical::*;
use skein_core::quivermod::{brute_force_direct_sum, mixed_transverse_expansion};
use skein_core::route::{Route, Turn};
use skein_core::{HalfInt, Lamination, LaurentPoly, Triangulation};

const TORUS_LOOPS: [&[usize]; 3] = [&[2, 1], &[3, 1, 0], &[3, 2, 0]];

fn mono(n: usize, e: &[(usize, i32)]) -> LaurentPoly {
    let mut d = vec![0; n];
    for &(i, k) in e {
        d[i] = k;
    }
    LaurentPoly::monomial(n, d, rat(1))
}

#[test]
fn annulus_turns() {
    let t = annulus();
    let r = Route::closed(&t, &[0, 1]).unwrap();
    let w = turn_word(&t, &r).unwrap();
    assert_eq!(w.steps, vec![(0, Turn::Right), (1, Turn::Left)]);
    assert!(Route::closed(&t, &[0, 0]).is_err());
}

/// `Tr ρ = X₀^{½}X₁^{½} + X₀^{-½}X₁^{½} + X₀^{-½}X₁^{-½}`, written with doubled
/// exponents.
#[test]
fn annulus_trace() {
    let t = annulus();
    let r = Route::closed(&t, &[0, 1]).unwrap();
    let tr = loop_monodromy(&t, &r).unwrap().trace();
    let expected = &(&mono(4, &[(0, 1), (1, 1)]) + &mono(4, &[(0, -1), (1, 1)])) + &mono(4, &[(0, -1), (1, -1)]);
    assert_eq!(tr, expected);
    let f = loop_function(&t, &r, 1).unwrap();
    assert_eq!(f.f_part, &(&LaurentPoly::one(4) + &mono(4, &[(1, 2)])) + &mono(4, &[(0, 2), (1, 2)]));
    assert_eq!(f.h_part, vec![HalfInt::from_doubled(-1), HalfInt::from_doubled(-1), HalfInt::ZERO, HalfInt::ZERO]);
    assert_eq!(f.value, tr);
    assert_eq!(state_sum(&t, &r).unwrap(), f.f_part);
    assert_eq!(loop_function(&t, &r, 0).unwrap().value, LaurentPoly::from_int(4, 2));
}

/// Independent evaluation of the monodromy at `X_i = r_i²` with plain
/// rational 2×2 matrices.
fn numeric_trace(t: &Triangulation, word: &[usize], roots: &[BigRational]) -> BigRational {
    let r = Route::closed(t, word).unwrap();
    let steps = turn_word(t, &r).unwrap().steps;
    let mut m = [[BigRational::one(), BigRational::zero()], [BigRational::zero(), BigRational::one()]];
    for (j, turn) in steps {
        let s = &roots[j];
        let inv = BigRational::one() / s;
        // X^{-½} · [[X, X], [0, 1]] and X^{-½} · [[X, 0], [1, 1]]
        let f = match turn {
            Turn::Left => [[s.clone(), s.clone()], [BigRational::zero(), inv.clone()]],
            Turn::Right => [[s.clone(), BigRational::zero()], [inv.clone(), inv.clone()]],
        };
        let mut out = [[BigRational::zero(), BigRational::zero()], [BigRational::zero(), BigRational::zero()]];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    out[a][b] += &m[a][c] * &f[c][b];
                }
            }
        }
        m = out;
    }
    &m[0][0] + &m[1][1]
}

#[test]
fn trace_matches_numeric_monodromy() {
    let cases: Vec<(Triangulation, &[usize])> =
        vec![(annulus(), &[0, 1]), (torus(), TORUS_LOOPS[0]), (torus(), TORUS_LOOPS[1]), (torus(), TORUS_LOOPS[2])];
    for (t, word) in cases {
        let roots: Vec<BigRational> = (0..t.num_edges()).map(|i| rat(2 + i as i64)).collect();
        let r = Route::closed(&t, word).unwrap();
        let m = loop_monodromy(&t, &r).unwrap();
        assert!(m.det().is_one());
        assert_eq!(eval_at_squares(&m.trace(), &roots), numeric_trace(&t, word, &roots));
        assert_eq!(loop_monodromy(&t, &r.reversed()).unwrap().trace(), m.trace());
    }
}

#[test]
fn loop_routes_agree() {
    let mut cases = vec![(annulus(), vec![0usize, 1])];
    cases.extend(TORUS_LOOPS.iter().map(|w| (torus(), w.to_vec())));
    for (t, word) in cases {
        let r = Route::closed(&t, &word).unwrap();
        let f = loop_function(&t, &r, 1).unwrap().f_part;
        assert_eq!(state_sum(&t, &r).unwrap(), f);
        assert!(f.len() <= 1 << word.len());
        assert!(f.coefficient(&vec![0; t.num_edges()]).is_one());
        let lam = loop_lam(&t, &word, 1);
        assert_eq!(brute_force_direct_sum(&t, &lam).unwrap(), f);
    }
}

#[test]
fn weight_two_annulus_loop() {
    let t = annulus();
    let lam = loop_lam(&t, &[0, 1], 2);
    let e = canonical_function(&t, &lam).unwrap();
    let x = |a: i32, b: i32| mono(4, &[(0, 2 * a), (1, 2 * b)]);
    let two = |p: LaurentPoly| p.scale(&rat(2));
    let expected = [x(-1, -1), two(x(-1, 0)), x(-1, 1), two(x(0, 1)), x(1, 1)]
        .iter()
        .fold(LaurentPoly::zero(4), |a, b| &a + b);
    assert_eq!(e.value, expected);
    assert_eq!(e.value.leading_term().unwrap().0, &[2, 2, 0, 0]);
    assert!(leading_term_check(&e, &t, &lam));
    let one = canonical_function(&t, &loop_lam(&t, &[0, 1], 1)).unwrap().value;
    assert_eq!(e.value, &(&one * &one) - &LaurentPoly::from_int(4, 2));
    let mut bad = e.clone();
    bad.value = &bad.value + &x(2, 2);
    assert!(!leading_term_check(&bad, &t, &lam));
}

#[test]
fn empty_lamination_is_one() {
    for t in [annulus(), polygon(5), torus()] {
        let e = canonical_function(&t, &Lamination::empty()).unwrap();
        assert!(e.value.is_one());
    }
}

#[test]
fn pentagon_long_diagonal() {
    let t = polygon(5);
    // the curve from side 1 to side 4 drags to the diagonal crossing both arcs
    let lam = arc_family(&t, 1, 3).unwrap();
    let e = canonical_function(&t, &lam).unwrap();
    assert_eq!(e.f_part.len(), 2);
    for (b, c) in balanced_pairs(5) {
        let lam = arc_family(&t, b, c).unwrap();
        let e = canonical_function(&t, &lam).unwrap();
        assert!(leading_term_check(&e, &t, &lam));
        assert_eq!(mixed_transverse_expansion(&t, &lam).unwrap().value, e.value);
        assert_eq!(brute_force_direct_sum(&t, &lam).unwrap(), e.f_part);
    }
}

/// For arc families the function is multiplicative in the weights.
#[test]
fn doubling_arc_families_squares() {
    for n in [5, 6] {
        let t = polygon(n);
        for (b, c) in balanced_pairs(n) {
            let lam = arc_family(&t, b, c).unwrap();
            let one = canonical_function(&t, &lam).unwrap().value;
            let two = canonical_function(&t, &lam.scaled(2)).unwrap().value;
            assert_eq!(two, &one * &one);
        }
    }
}

#[test]
fn chebyshev_up_to_six() {
    let t = annulus();
    let r = Route::closed(&t, &[0, 1]).unwrap();
    for big_k in 1..=6 {
        let c = verify_chebyshev(&t, &r, big_k).unwrap();
        for (k, ck) in c.iter().enumerate() {
            assert!(*ck >= BigInt::zero());
            if (big_k - k) % 2 == 1 {
                assert!(ck.is_zero());
            }
        }
    }
    assert_eq!(verify_chebyshev(&t, &r, 2).unwrap(), vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
}

#[test]
fn monomial_transport() {
    let t = annulus();
    let x0 = LaurentPoly::var(4, 0);
    let moved = flip_transport(&x0, &t, 0).unwrap();
    assert!(moved.equals_poly(&mono(4, &[(0, -2)])));
    // side 3 of the pentagon does not share a triangle with arc 5
    let p = polygon(5);
    assert_eq!(p.signed_adjacency().get(3, 5), 0);
    let x3 = LaurentPoly::var(7, 3);
    assert!(flip_transport(&x3, &p, 5).unwrap().equals_poly(&x3));
}

#[test]
fn transport_matches_native_recomputation() {
    let mut cases = vec![(annulus(), loop_lam(&annulus(), &[0, 1], 1)), (annulus(), loop_lam(&annulus(), &[0, 1], 2))];
    for w in TORUS_LOOPS {
        cases.push((torus(), loop_lam(&torus(), w, 1)));
        cases.push((torus(), loop_lam(&torus(), w, 2)));
    }
    for n in [5, 6] {
        let t = polygon(n);
        for (b, c) in balanced_pairs(n) {
            cases.push((t.clone(), arc_family(&t, b, c).unwrap()));
        }
    }
    for (t, lam) in cases {
        let e = canonical_function(&t, &lam).unwrap();
        for k in t.arcs() {
            let (t2, l2) = lam.through_flip(&t, k).unwrap();
            let native = canonical_function(&t2, &l2).unwrap().value;
            assert!(flip_transport(&e.value, &t, k).unwrap().equals_poly(&native));
        }
    }
}

fn int_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, n), 1i64..=3), 1..4).prop_map(move |terms| {
        let mut p = LaurentPoly::zero(n);
        for (e, c) in terms {
            p.add_term(e.iter().map(|x| 2 * x).collect(), rat(c));
        }
        p
    })
}

proptest! {
    /// Transport to `flip(T, k)` and back is the identity.
    #[test]
    fn transport_is_an_involution(p in int_poly(5), k in 0usize..4) {
        let t = torus();
        let t2 = t.flip(k).unwrap();
        let there = flip_transport(&p, &t, k).unwrap();
        let num = flip_transport(there.num(), &t2, k).unwrap();
        let den = flip_transport(there.den(), &t2, k).unwrap();
        prop_assert!(num.equals(&den.mul(&skein_core::RationalFn::from_poly(p))));
    }

    /// The transported function evaluated at `X'` equals the original at
    /// the image point `X_j = X_j' X_k'^{[−ε_jk]₊} (1 + X_k')^{ε_jk}`.
    #[test]
    fn transport_matches_numeric_substitution(p in int_poly(4), r in prop::collection::vec(1i64..5, 4), k in 0usize..2) {
        let t = annulus();
        let eps = t.signed_adjacency();
        let xp: Vec<BigRational> = r.iter().map(|&v| rat(v) * rat(v)).collect();
        let mut x = xp.clone();
        x[k] = BigRational::one() / &xp[k];
        for j in 0..4 {
            if j == k {
                continue;
            }
            let e = eps.get(j, k);
            let mut v = xp[j].clone();
            for _ in 0..(-e).max(0) {
                v *= &xp[k];
            }
            let base = BigRational::one() + &xp[k];
            for _ in 0..e.abs() {
                if e > 0 { v *= &base } else { v /= &base }
            }
            x[j] = v;
        }
        let eval_int = |q: &LaurentPoly, at: &[BigRational]| {
            let mut acc = BigRational::zero();
            for (d, c) in q.terms() {
                let mut term = c.clone();
                for (&di, a) in d.iter().zip(at) {
                    let e = di / 2;
                    let b = if e >= 0 { a.clone() } else { BigRational::one() / a };
                    for _ in 0..e.unsigned_abs() {
                        term *= &b;
                    }
                }
                acc += term;
            }
            acc
        };
        let moved = flip_transport(&p, &t, k).unwrap();
        let lhs = eval_int(moved.num(), &xp) / eval_int(moved.den(), &xp);
        prop_assert_eq!(lhs, eval_int(&p, &x));
    }
}

fn hexagon_ptolemy() -> SkeinInstance {
    SkeinInstance {
        crossing: vec![SkeinItem::Chord(0, 3), SkeinItem::Chord(1, 4)],
        first: vec![SkeinItem::Chord(0, 1), SkeinItem::Chord(3, 4)],
        second: vec![SkeinItem::Chord(0, 4), SkeinItem::Chord(1, 3)],
    }
}

#[test]
fn skein_relations() {
    assert_eq!(verify_skein(&polygon(6), &hexagon_ptolemy()).unwrap(), (-1, -1));
    let annulus_case = SkeinInstance {
        crossing: vec![SkeinItem::Loop(vec![0, 1]), SkeinItem::Edge(0)],
        first: vec![SkeinItem::Edge(1)],
        second: vec![SkeinItem::Cluster { path: vec![1], vertex: 1 }],
    };
    assert_eq!(verify_skein(&annulus(), &annulus_case).unwrap(), (-1, -1));
    let wrong = SkeinInstance { second: vec![SkeinItem::Chord(0, 2), SkeinItem::Chord(1, 3)], ..hexagon_ptolemy() };
    assert_eq!(verify_skein(&polygon(6), &wrong), Err(CanonicalError::NoSignChoiceWorks));
    let apart = SkeinInstance { crossing: vec![SkeinItem::Chord(0, 2), SkeinItem::Chord(3, 5)], ..hexagon_ptolemy() };
    assert_eq!(verify_skein(&polygon(6), &apart), Err(CanonicalError::NoCrossing));
    let unknown = SkeinInstance { first: vec![SkeinItem::Edge(99)], ..hexagon_ptolemy() };
    assert_eq!(verify_skein(&polygon(6), &unknown), Err(CanonicalError::UnknownEdge(99)));
    let unknown = SkeinInstance { first: vec![SkeinItem::Cluster { path: vec![], vertex: 99 }], ..hexagon_ptolemy() };
    assert_eq!(verify_skein(&polygon(6), &unknown), Err(CanonicalError::UnknownEdge(99)));
}

#[test]
fn route_equality_on_integral_fixtures() {
    let mut cases = vec![(annulus(), loop_lam(&annulus(), &[0, 1], 2)), (annulus(), loop_lam(&annulus(), &[0, 1], 4))];
    for w in TORUS_LOOPS {
        cases.push((torus(), loop_lam(&torus(), w, 2)));
    }
    for (t, lam) in cases {
        let e = canonical_function(&t, &lam).unwrap();
        assert_eq!(mixed_transverse_expansion(&t, &lam).unwrap(), e);
    }
}
