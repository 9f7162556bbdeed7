mod common;

use std::collections::BTreeSet;

use common::{annulus, polygon, rat};
use proptest::prelude::*;
use skein_core::clusterseed::{
    all_chords, extract_fpoly_gvector, flips_to_chord, polygon_chord_route, polygon_flip_track, Seed,
};
use skein_core::lamination::{shear_g_vector, DraggedArc};
use skein_core::quivermod::string_f_polynomial;
use skein_core::LaurentPoly;

fn monomial(n: usize, e: &[(usize, i32)]) -> LaurentPoly {
    let mut d = vec![0; n];
    for &(i, k) in e {
        d[i] = 2 * k;
    }
    LaurentPoly::monomial(n, d, rat(1))
}

fn sum(ps: &[LaurentPoly]) -> LaurentPoly {
    ps.iter().fold(LaurentPoly::zero(ps[0].nvars()), |a, b| &a + b)
}

#[test]
fn one_exchange_step() {
    let t = polygon(5);
    let s = Seed::initial(&t).mutate(5).unwrap();
    let a = &s.cluster[5] * &LaurentPoly::var(7, 5);
    // A5 A5' is a sum of two monomials in the neighbours of 5
    assert_eq!(a.len(), 2);
    assert!(a.has_nonnegative_coefficients());
    assert_eq!(Seed::initial(&t).mutate(5).unwrap().mutate(5).unwrap(), Seed::initial(&t));
    assert!(Seed::initial(&t).mutate(0).is_err());
}

/// Alternating mutations of A₂ return to the initial cluster after five
/// steps, with the two arcs swapped.
#[test]
fn pentagon_period_five() {
    let t = polygon(5);
    let s0 = Seed::initial(&t);
    let path = [5, 6, 5, 6, 5];
    let s = s0.mutate_path(&path).unwrap();
    let now: BTreeSet<String> = s.cluster.iter().map(|a| a.render("A")).collect();
    let before: BTreeSet<String> = s0.cluster.iter().map(|a| a.render("A")).collect();
    assert_eq!(now, before);
    assert_eq!(s.cluster[5], s0.cluster[6]);
    assert_eq!(s.cluster[6], s0.cluster[5]);
    let mut seen = BTreeSet::new();
    let mut cur = s0.clone();
    for k in [5, 6, 5, 6, 5, 6, 5, 6, 5, 6] {
        cur = cur.mutate(k).unwrap();
        seen.insert(cur.cluster[k].render("A"));
    }
    // the five diagonals of the pentagon
    assert_eq!(seen.len(), 5);
}

#[test]
fn initial_variables_factor_trivially() {
    let t = polygon(6);
    let s0 = Seed::initial(&t);
    for v in t.arcs() {
        let fg = extract_fpoly_gvector(&s0, &[], v).unwrap();
        assert!(fg.f.is_one());
        let unit: Vec<i64> = (0..t.num_edges()).map(|i| (i == v) as i64).collect();
        assert_eq!(fg.g, unit);
    }
}

#[test]
fn long_diagonals() {
    let t = polygon(5);
    let (path, e) = flips_to_chord(&t, 1, 4).unwrap();
    let fg = extract_fpoly_gvector(&Seed::initial(&t), &path, e).unwrap();
    assert_eq!(fg.f.len(), 3);
    assert!(fg.f.has_nonnegative_coefficients());
    let t6 = polygon(6);
    let (path, e) = flips_to_chord(&t6, 1, 5).unwrap();
    let fg = extract_fpoly_gvector(&Seed::initial(&t6), &path, e).unwrap();
    let n6 = t6.num_edges();
    let expected = sum(&[
        LaurentPoly::one(n6),
        monomial(n6, &[(6, 1)]),
        monomial(n6, &[(6, 1), (7, 1)]),
        monomial(n6, &[(6, 1), (7, 1), (8, 1)]),
    ]);
    assert_eq!(fg.f, expected);
}

/// A diagonal crossing three alternately oriented arcs has a five-term
/// F-polynomial; in a fan the orientation is linear and four is the most.
#[test]
fn hexagon_longest_f_polynomials() {
    let max_terms = |t: &skein_core::Triangulation| {
        all_chords(6)
            .into_iter()
            .map(|(a, b)| {
                let (path, e) = flips_to_chord(t, a, b).unwrap();
                extract_fpoly_gvector(&Seed::initial(t), &path, e).unwrap().f.len()
            })
            .max()
            .unwrap()
    };
    let fan = polygon(6);
    assert_eq!(max_terms(&fan), 4);
    let mut best = 0;
    for w in [[6, 7], [6, 8], [7, 6], [7, 8], [8, 6], [8, 7]] {
        best = best.max(max_terms(&fan.flip(w[0]).unwrap().flip(w[1]).unwrap()));
    }
    assert_eq!(best, 5);
}

#[test]
fn flip_tracking() {
    let t = polygon(5);
    let before = polygon_flip_track(&t, &[]).unwrap();
    let after = polygon_flip_track(&t, &[5]).unwrap();
    assert_eq!(before[&6], after[&6]);
    assert_ne!(before[&5], after[&5]);
    let chords: BTreeSet<_> = all_chords(5).into_iter().collect();
    assert!(chords.contains(&after[&5]));
    let t6 = polygon(6);
    let track = polygon_flip_track(&t6, &[6, 7, 8]).unwrap();
    assert_eq!(track.into_values().collect::<BTreeSet<_>>(), BTreeSet::from([(1, 3), (1, 4), (1, 5)]));
}

/// Mutation, string modules and shear coordinates agree on every chord.
#[test]
fn seed_string_shear_agree_on_all_chords() {
    for n in [5, 6, 7] {
        let t = polygon(n);
        let s0 = Seed::initial(&t);
        for (a, b) in all_chords(n) {
            let (path, e) = flips_to_chord(&t, a, b).unwrap();
            let fg = extract_fpoly_gvector(&s0, &path, e).unwrap();
            let route = polygon_chord_route(&t, a, b).unwrap();
            assert_eq!(string_f_polynomial(&t, &route).unwrap(), fg.f, "{n}-gon chord {a}-{b}");
            assert_eq!(shear_g_vector(&t, &DraggedArc { route, edge: None }), fg.g, "{n}-gon chord {a}-{b}");
        }
    }
}

#[test]
fn annulus_seed_is_laurent() {
    let t = annulus();
    let s = Seed::initial(&t).mutate_path(&[0, 1, 0, 1, 0, 1]).unwrap();
    for a in &s.cluster {
        assert!(a.has_integer_coefficients() && a.has_nonnegative_coefficients() && a.has_integer_exponents());
    }
}

proptest! {
    /// Laurent phenomenon with positivity along random mutation paths.
    #[test]
    fn mutation_stays_laurent_and_positive(n in 5usize..8, word in prop::collection::vec(0usize..4, 0..7)) {
        let t = polygon(n);
        let arcs = t.arcs();
        let path: Vec<usize> = word.iter().map(|w| arcs[w % arcs.len()]).collect();
        let s = Seed::initial(&t).mutate_path(&path).unwrap();
        for a in &s.cluster {
            prop_assert!(a.has_integer_exponents() && a.has_integer_coefficients() && a.has_nonnegative_coefficients());
        }
        let back: Vec<usize> = path.iter().rev().copied().collect();
        prop_assert_eq!(s.mutate_path(&back).unwrap(), Seed::initial(&t));
    }
}
