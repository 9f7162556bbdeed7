mod common;

use common::{annulus, loop_lam, polygon, torus};
use skein_core::canonical::loop_function;
use skein_core::clusterseed::{all_chords, polygon_chord_route};
use skein_core::quivermod::*;
use skein_core::route::Route;
use skein_core::Triangulation;

#[test]
fn jacobian_bases() {
    let p = polygon(5);
    let b = jacobian_basis(&p.quiver_with_potential().unwrap()).unwrap();
    assert_eq!(b.dimension(), 3);
    let a = annulus();
    let b = jacobian_basis(&a.quiver_with_potential().unwrap()).unwrap();
    assert_eq!(b.dimension(), 4);
    let t = torus();
    let qp = t.quiver_with_potential().unwrap();
    let b = jacobian_basis(&qp).unwrap();
    for paths in b.paths.values() {
        for path in paths {
            for w in path.windows(2) {
                assert!(!qp.zero_relations().contains(&(w[0], w[1])));
            }
        }
    }
}

#[test]
fn annulus_band() {
    let t = annulus();
    let qp = t.quiver_with_potential().unwrap();
    let r = Route::closed(&t, &[0, 1]).unwrap();
    let w = band_of_loop(&t, &qp, &r).unwrap();
    assert_eq!(w.letters.len(), 2);
    assert_ne!(w.letters[0].arrow, w.letters[1].arrow);
    assert_ne!(w.letters[0].inverse, w.letters[1].inverse);
    let m = build_module(&qp, &w, Some(1));
    assert_eq!(m.dim_vector(), vec![1, 1, 0, 0]);
    let coefs: Vec<Coef> = m.action.iter().flatten().map(|x| x.1).collect();
    assert!(coefs.contains(&Coef::One) && coefs.contains(&Coef::Lambda));
    let table = chi_table(&m).unwrap();
    let (src, dst) = m.arrows[0];
    // the submodule must contain the target whenever it contains the source
    let mut e = vec![0; 4];
    e[src] = 1;
    assert_eq!(table.get(&e), 0);
    assert_eq!(transverse_chi_band_w1(&m, &e), 0);
    let mut e = vec![0; 4];
    e[dst] = 1;
    assert_eq!(table.get(&e), 1);
    assert_eq!(table.get(&[0, 0, 0, 0]), 1);
    assert_eq!(table.get(&[1, 1, 0, 0]), 1);
    assert_eq!(table.get(&[2, 1, 0, 0]), 0);
    let doubled = Route::closed(&t, &[0, 1, 0, 1]);
    if let Ok(d) = doubled {
        assert_eq!(band_of_loop(&t, &qp, &d), Err(ModuleError::ProperPower));
    }
}

#[test]
fn pentagon_strings() {
    let t = polygon(5);
    let qp = t.quiver_with_potential().unwrap();
    let r = polygon_chord_route(&t, 1, 4).unwrap();
    let w = string_of_arc(&t, &qp, &r).unwrap();
    assert_eq!(w.letters.len(), 1);
    let m = build_module(&qp, &w, None);
    assert_eq!(m.dim_vector()[5..], [1, 1]);
    let table = chi_table(&m).unwrap();
    assert_eq!(table.total(), 3);
    let f = string_f_polynomial(&t, &r).unwrap();
    assert_eq!(f, table.to_poly(7));
    assert_eq!(ChiTable::from_poly(&f).unwrap(), table);
}

#[test]
fn built_modules_satisfy_relations() {
    let t = torus();
    let qp = t.quiver_with_potential().unwrap();
    for w in [&[2usize, 1][..], &[3, 1, 0], &[3, 2, 0]] {
        let lam = loop_lam(&t, w, 1);
        let word = band_of_loop(&t, &qp, &lam.curves[0].route).unwrap();
        let m = build_module(&qp, &word, Some(2));
        assert!(m.satisfies_relations(&qp.zero_relations()));
        assert!(m.is_basis_shaped() || m.total_dim() > 0);
    }
    for n in [5, 6, 7] {
        let p = polygon(n);
        let qp = p.quiver_with_potential().unwrap();
        for (a, b) in all_chords(n) {
            let r = polygon_chord_route(&p, a, b).unwrap();
            if r.segments.len() == 1 {
                continue;
            }
            let m = build_module(&qp, &string_of_arc(&p, &qp, &r).unwrap(), None);
            assert!(m.satisfies_relations(&qp.zero_relations()));
            assert!(m.is_basis_shaped());
        }
    }
}

fn loops() -> Vec<(Triangulation, Vec<usize>)> {
    vec![(annulus(), vec![0, 1]), (torus(), vec![2, 1]), (torus(), vec![3, 1, 0]), (torus(), vec![3, 2, 0])]
}

#[test]
fn covers() {
    for (t, w) in loops() {
        let r = Route::closed(&t, &w).unwrap();
        let c = annulus_cover(&t, &r, 1).unwrap();
        assert_eq!(c.tri.num_boundary_components(), 2);
        assert_eq!(c.tri.genus(), 0);
        let lifted: Vec<usize> = c.projection.iter().flatten().copied().collect();
        for e in &w {
            assert!(lifted.contains(e));
        }
        let table = band_chi_table(&t, &r).unwrap();
        let f = band_f_polynomial(&t, &r, 1).unwrap();
        assert_eq!(table.to_poly(t.num_edges()), f);
        // total mass is preserved by the pushdown
        let qp = c.tri.quiver_with_potential().unwrap();
        let word = band_of_loop(&c.tri, &qp, &c.route).unwrap();
        let m = build_module(&qp, &word, Some(1));
        let up = chi_table(&m).unwrap();
        assert_eq!(pushdown_chi(&c, &up).total(), up.total());
    }
}

#[test]
fn identity_cover_on_the_annulus() {
    let t = annulus();
    let r = Route::closed(&t, &[0, 1]).unwrap();
    let c = annulus_cover(&t, &r, 1).unwrap();
    assert_eq!(c.tri.arcs().len(), 2);
    let qp = t.quiver_with_potential().unwrap();
    let direct = chi_table(&build_module(&qp, &band_of_loop(&t, &qp, &r).unwrap(), Some(1))).unwrap();
    let lifted = band_chi_table(&t, &r).unwrap();
    assert_eq!(lifted, direct);
}

#[test]
fn band_routes_match_traces() {
    for (t, w) in loops() {
        let r = Route::closed(&t, &w).unwrap();
        for k in 1..=4 {
            assert_eq!(band_f_polynomial(&t, &r, k).unwrap(), loop_function(&t, &r, k).unwrap().f_part);
        }
    }
}

#[test]
fn lamination_modules() {
    let t = annulus();
    let m = lamination_module(&t, &loop_lam(&t, &[0, 1], 2)).unwrap();
    assert_eq!(m.dim_vector(), vec![2, 2, 0, 0]);
    assert!(!m.is_basis_shaped());
    assert_eq!(chi_table(&m), Err(ModuleError::NotBasisShaped));
    let lam = loop_lam(&t, &[0, 1], 1);
    assert_eq!(mixed_transverse_expansion(&t, &lam), Err(ModuleError::NotIntegral));
}

#[test]
fn string_f_polynomial_of_module() {
    let t = polygon(6);
    let qp = t.quiver_with_potential().unwrap();
    for (a, b) in all_chords(6) {
        let r = polygon_chord_route(&t, a, b).unwrap();
        if r.segments.len() == 1 {
            assert!(string_f_polynomial(&t, &r).unwrap().is_one());
            continue;
        }
        let m = build_module(&qp, &string_of_arc(&t, &qp, &r).unwrap(), None);
        assert_eq!(f_polynomial_from_module(&m, ModuleKind::String).unwrap(), string_f_polynomial(&t, &r).unwrap());
    }
}
