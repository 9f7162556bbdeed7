mod common;

use common::{annulus, arc_family, balanced_pairs, loop_lam, polygon, torus};
use proptest::prelude::*;
use skein_core::clusterseed::Seed;
use skein_core::lamination::{
    balance_with_specials, drag_endpoints, eps_transpose_h, special_curve, weighted_g_sum, LaminationError,
};
use skein_core::{Curve, HalfInt, Lamination};

fn h(v: &[i64]) -> Vec<HalfInt> {
    v.iter().map(|&x| HalfInt::from_doubled(x)).collect()
}

#[test]
fn annulus_loop_coordinates() {
    let t = annulus();
    let l1 = loop_lam(&t, &[0, 1], 1);
    assert_eq!(l1.coordinates(&t), (h(&[1, 1, 0, 0]), false));
    assert_eq!(l1.h_vector(&t).unwrap(), h(&[-1, -1, 0, 0]));
    let l2 = loop_lam(&t, &[0, 1], 2);
    assert_eq!(l2.coordinates(&t), (h(&[2, 2, 0, 0]), true));
    for k in 1..5 {
        let lk = loop_lam(&t, &[0, 1], k);
        assert_eq!(lk.h_vector(&t).unwrap(), h(&[-k, -k, 0, 0]));
    }
    let empty = Lamination::empty();
    assert_eq!(empty.coordinates(&t), (h(&[0, 0, 0, 0]), true));
    assert_eq!(empty.h_vector(&t).unwrap(), h(&[0, 0, 0, 0]));
}

#[test]
fn homotopic_curves_merge_and_cancel() {
    let t = annulus();
    let lam = Lamination::new(&t, &[Curve::closed(vec![0, 1], 1), Curve::closed(vec![1, 0], 1)]).unwrap();
    assert_eq!(lam.curves.len(), 1);
    assert_eq!(lam.curves[0].weight, 2);
    let gone = Lamination::new(&t, &[Curve::closed(vec![0, 1], 1), Curve::closed(vec![0, 1], -1)]);
    // a negative loop is never special
    assert!(gone.is_err() || gone.unwrap().is_empty());
}

#[test]
fn rejects_bad_curves() {
    let t = annulus();
    assert!(matches!(
        Lamination::new(&t, &[Curve::closed(vec![0, 1, 0, 1], 1)]),
        Err(LaminationError::NonPrimitiveLoop(0))
    ));
    assert!(Lamination::new(&t, &[Curve::closed(vec![0, 1], -1)]).is_err());
    let p = polygon(5);
    // unbalanced: one curve ending on segments 0 and 3
    assert!(matches!(
        Lamination::new(&p, &[Curve::open(0, vec![5, 6], 3, 1)]),
        Err(LaminationError::BoundaryWeightError { .. })
    ));
    // crossing word that does not follow adjacent triangles
    assert!(Lamination::new(&p, &[Curve::open(0, vec![6], 3, 1)]).is_err());
    // edges the surface does not have
    assert!(Lamination::new(&t, &[Curve::closed(vec![0, 9], 2)]).is_err());
    assert!(Lamination::new(&t, &[Curve::closed(vec![9, 0], 2)]).is_err());
    assert!(Lamination::new(&p, &[Curve::open(0, vec![5, 40], 3, 1)]).is_err());
}

#[test]
fn local_backtracks_are_removed() {
    let t = annulus();
    let lam = Lamination::new(&t, &[Curve::closed(vec![0, 1, 1, 0, 0, 1], 1)]).unwrap();
    assert_eq!(lam.curves[0].crossings(&t).len(), 2);
}

#[test]
fn special_curves_drag_to_boundary_segments() {
    for t in [polygon(5), polygon(6), torus(), annulus()] {
        for v in 0..t.num_marked_points() {
            let c = special_curve(&t, v, -1);
            let lam = Lamination::new(&t, &[c.clone(), Curve { weight: 1, ..c }]);
            // a curve and its negative cancel
            assert!(lam.unwrap().is_empty());
            let r = skein_core::lamination::resolve_curve(&t, &special_curve(&t, v, 1), 0).unwrap();
            let g = drag_endpoints(&t, &r).unwrap();
            assert!(g.edge.is_some_and(|e| !t.is_arc(e)), "special at {v} does not drag to a side");
        }
    }
}

#[test]
fn long_diagonal_family() {
    let t = polygon(5);
    let lam = arc_family(&t, 0, 3).unwrap();
    let (a, integral) = lam.coordinates(&t);
    assert!(integral);
    assert!(a.iter().all(|x| x.is_integer()));
    assert_eq!(lam.h_vector(&t).unwrap()[..5], h(&[0; 5])[..]);
}

/// `Σ w_k g_k = εᵀh` on every balanced polygon family, with `ε` the
/// exchange matrix of the enlarged surface restricted to the edges of T.
#[test]
fn shear_sum_matches_eps_transpose_h() {
    for n in [5, 6, 7] {
        let t = polygon(n);
        let eps = Seed::initial(&t).eps;
        for (b, c) in balanced_pairs(n) {
            let lam = arc_family(&t, b, c).unwrap();
            let s: Vec<i64> = weighted_g_sum(&t, &lam).unwrap().iter().map(|x| 2 * x).collect();
            assert_eq!(s, eps_transpose_h(&eps, &lam.h_vector(&t).unwrap()), "{n}-gon {b}-{c}");
        }
    }
}

#[test]
fn even_gaps_need_more_than_specials() {
    let t = polygon(6);
    assert!(balance_with_specials(&t, &[Curve::open(0, common::dual_path(&t, 0, 2), 2, 1)]).is_err());
    assert!(arc_family(&t, 0, 3).is_some());
}

proptest! {
    #[test]
    fn coordinates_scale_and_add(k in 1i64..6, m in 1i64..6) {
        let t = torus();
        let a = loop_lam(&t, &[2, 1], k);
        let (ca, _) = a.coordinates(&t);
        let (cm, _) = a.scaled(m).coordinates(&t);
        prop_assert!(ca.iter().zip(&cm).all(|(x, y)| x.doubled() * m == y.doubled()));
        let b = loop_lam(&t, &[2, 1], m);
        let u = a.union(&t, &b).unwrap();
        prop_assert_eq!(u.curves.len(), 1);
        let (cu, _) = u.coordinates(&t);
        let (cb, _) = b.coordinates(&t);
        prop_assert!(cu.iter().zip(ca.iter().zip(&cb)).all(|(s, (x, y))| s.doubled() == x.doubled() + y.doubled()));
    }

    #[test]
    fn flipping_twice_restores_the_lamination(which in 0usize..3, k in 0usize..4) {
        let t = torus();
        let word: &[usize] = [&[2usize, 1][..], &[3, 1, 0], &[3, 2, 0]][which];
        let lam = loop_lam(&t, word, 1);
        let (t1, l1) = lam.through_flip(&t, k).unwrap();
        let (t2, l2) = l1.through_flip(&t1, k).unwrap();
        prop_assert_eq!(t2.signed_adjacency(), t.signed_adjacency());
        prop_assert_eq!(l2.coordinates(&t2), lam.coordinates(&t));
    }

    #[test]
    fn integral_coordinates_give_integral_h(pair in 0usize..8, n in 5usize..8) {
        let t = polygon(n);
        let pairs = balanced_pairs(n);
        let (b, c) = pairs[pair % pairs.len()];
        let lam = arc_family(&t, b, c).unwrap();
        if lam.coordinates(&t).1 {
            prop_assert!(lam.h_vector(&t).unwrap().iter().all(|x| x.is_integer()));
        }
    }
}
