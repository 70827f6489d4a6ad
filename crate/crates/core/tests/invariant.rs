mod common;

use shl::complex::LieModel;
use shl::exterior::{blades, Form};
use shl::invariant::{close_group, invariant_complex, GroupAction, DEFAULT_MAX_GROUP};
use shl::lefschetz::LefschetzReport;
use shl::linalg::Matrix;
use shl::model::catalog;
use shl::scalar::int;
use shl::symplectic::{SymplecticComplex, SymplecticData};

fn diag(xs: &[i64]) -> Matrix {
    let mut m = Matrix::identity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        m[(i, i)] = int(x);
    }
    m
}

fn torus4_z2() -> (LieModel, GroupAction) {
    let model = catalog::load("torus4_z2").unwrap();
    let g = model.group_action(DEFAULT_MAX_GROUP).unwrap().unwrap();
    (model.lie, g)
}

#[test]
fn reynolds_is_a_projection_commuting_with_d() {
    let (lie, g) = torus4_z2();
    assert_eq!(g.order(), 2);
    assert!(g.reynolds_is_idempotent());
    assert!(g.reynolds_commutes_with(&lie));
    let mut rng = common::rng(3);
    for k in 0..=4 {
        for _ in 0..10 {
            let xi = common::random_form(&mut rng, 4, k);
            let r = g.reynolds(&xi);
            assert_eq!(g.reynolds(&r), r);
            assert!(g.preserves(&r));
            assert_eq!(g.reynolds(&lie.differential(&xi)), lie.differential(&r));
        }
    }
    // A non-abelian model: Kodaira-Thurston with e1 -> -e1, e4 -> -e4.
    let kt = catalog::load("kodaira_thurston").unwrap().lie;
    let h = close_group(4, vec![diag(&[-1, 1, 1, -1])], DEFAULT_MAX_GROUP).unwrap();
    h.ensure_automorphisms(&kt).unwrap();
    assert!(h.reynolds_is_idempotent() && h.reynolds_commutes_with(&kt));
}

#[test]
fn odd_invariant_cohomology_vanishes() {
    let model = catalog::load("torus4_z2").unwrap();
    let sc = model.invariant_complex(DEFAULT_MAX_GROUP).unwrap();
    let cx = sc.complex();
    let betti: Vec<usize> = (0..=4).map(|k| cx.betti(k)).collect();
    assert_eq!(betti, vec![1, 0, 6, 0, 1]);
    let r = LefschetzReport::compute(&sc).unwrap();
    assert!(r.lefschetz_side() && r.harmonic_side());
}

#[test]
fn invariant_pieces_are_fixed_by_the_group() {
    let (lie, g) = torus4_z2();
    let cx = invariant_complex(lie, &g).unwrap();
    for k in 0..=4 {
        for b in cx.basis(k) {
            assert!(g.preserves(&b));
        }
        let fixed = blades(4, k).into_iter().filter(|b| g.preserves(&Form::basis(4, *b))).count();
        assert_eq!(cx.dim(k), fixed);
    }
}

#[test]
fn quarter_turn_on_torus6() {
    // (x1, x2) -> (-x2, x1) in each symplectic pair keeps omega and has order 4.
    let mut rot = Matrix::zeros(6, 6);
    for p in 0..3 {
        rot[(2 * p, 2 * p + 1)] = int(-1);
        rot[(2 * p + 1, 2 * p)] = int(1);
    }
    let g = close_group(6, vec![rot], DEFAULT_MAX_GROUP).unwrap();
    assert_eq!(g.order(), 4);
    let omega = Form::parse(6, "e{1,2} + e{3,4} + e{5,6}").unwrap();
    assert!(g.preserves(&omega));
    let cx = invariant_complex(LieModel::abelian("torus6", 6), &g).unwrap();
    let sc = SymplecticComplex::new(cx, SymplecticData::new(&omega).unwrap()).unwrap();
    assert_eq!(sc.complex().betti(1), 0);
    let r = LefschetzReport::compute(&sc).unwrap();
    assert!(r.lefschetz_side() && r.harmonic_side());
}
