//! Exterior algebra and differential properties on random inputs.

mod common;

use proptest::prelude::*;
use shl::complex::{CochainComplex, LieModel};
use shl::exterior::{blades, pullback, Blade, Form};
use shl::linalg::Matrix;
use shl::model::catalog;
use shl::scalar::{int, ratio, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> { (-6i64..=6, 1i64..=3).prop_map(|(p, q)| ratio(p, q)) }

fn form(dim: usize, degree: usize) -> impl Strategy<Value = Form> {
    let bs = blades(dim, degree);
    proptest::collection::vec(scalar(), bs.len())
        .prop_map(move |cs| Form::from_terms(dim, degree, bs.iter().copied().zip(cs)).unwrap())
}

fn any_form(dim: usize) -> impl Strategy<Value = Form> { (0..=dim).prop_flat_map(move |k| form(dim, k)) }

fn sign(k: usize) -> Scalar { if k % 2 == 0 { int(1) } else { int(-1) } }

/// Structure constants of a catalog model.
fn lie(name: &str) -> LieModel { catalog::load(name).unwrap().lie }

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity(a in any_form(5), b in any_form(5)) {
        let s = sign(a.degree() * b.degree());
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&s));
    }

    #[test]
    fn wedge_is_associative(a in any_form(5), b in any_form(5), c in any_form(5)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn leibniz_and_d_squared(a in any_form(5), b in any_form(5)) {
        for name in ["heis_r2", "solv5"] {
            let m = lie(name);
            let lhs = m.differential(&a.wedge(&b));
            let rhs = &m.differential(&a).wedge(&b) + &a.wedge(&m.differential(&b)).scale(&sign(a.degree()));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(m.differential(&m.differential(&a)).is_zero());
        }
    }

    #[test]
    fn literal_round_trip(a in any_form(6)) {
        let text = a.to_string();
        prop_assert_eq!(Form::parse(6, &text).unwrap(), a);
    }

    #[test]
    fn pullback_is_multiplicative(a in any_form(4), b in any_form(4), entries in proptest::collection::vec(-2i64..=2, 16)) {
        let g = Matrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| int(x)).collect()).collect());
        prop_assume!(g.determinant() != shl::scalar::zero());
        let lhs = pullback(&g, &a.wedge(&b)).unwrap();
        let rhs = pullback(&g, &a).unwrap().wedge(&pullback(&g, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_coords_ignore_exact_terms(seed in any::<u64>()) {
        let cx = CochainComplex::full(lie("kodaira_thurston"));
        let mut rng = common::rng(seed);
        for k in 1..=4 {
            let coh = cx.cohomology(k);
            let z = common::combo(&mut rng, 4, k, coh.representatives());
            let beta = common::random_form(&mut rng, 4, k - 1);
            let moved = &z + &cx.differential(&beta);
            prop_assert_eq!(coh.class_coords(&moved).unwrap(), coh.class_coords(&z).unwrap());
        }
    }

    #[test]
    fn solve_d_round_trip(seed in any::<u64>()) {
        let cx = CochainComplex::full(lie("solv5"));
        let mut rng = common::rng(seed);
        for k in 0..5 {
            let beta = common::random_form(&mut rng, 5, k);
            let target = cx.differential(&beta);
            let theta = cx.solve_d(&target).unwrap();
            prop_assert_eq!(cx.differential(&theta), target);
        }
    }
}

#[test]
fn d_squared_on_every_catalog_basis() {
    for name in catalog::NAMES {
        let m = lie(name);
        for k in 0..=m.dim() {
            for b in blades(m.dim(), k) {
                let f = Form::basis(m.dim(), b);
                assert!(m.differential(&m.differential(&f)).is_zero(), "{name} {b:?}");
            }
        }
    }
}

#[test]
fn kodaira_thurston_differential() {
    let m = lie("kodaira_thurston");
    assert_eq!(m.differential(&Form::basis_from(4, &[3])), Form::parse(4, "-e{1,2}").unwrap());
    let e43 = Form::basis_from(4, &[3]).wedge(&Form::basis_from(4, &[2]));
    assert_eq!(m.differential(&e43), Form::parse(4, "-e{1,2,3}").unwrap());
    assert_eq!(Blade::from_indices([0, 1]).unwrap().degree(), 2);
}
