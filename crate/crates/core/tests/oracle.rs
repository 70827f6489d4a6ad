//! Catalog results against the brute-force expectations in `fixtures/expected`.

mod common;

use serde_json::Value;
use shl::invariant::DEFAULT_MAX_GROUP;
use shl::lefschetz::LefschetzReport;
use shl::model::catalog;
use shl::scalar::parse_scalar;
use shl::symplectic::SymplecticComplex;

fn expected(name: &str) -> Value {
    let path = format!("{}/fixtures/expected/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn usizes(v: &Value) -> Vec<usize> { v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect() }

fn bools(v: &Value) -> Vec<bool> { v.as_array().unwrap().iter().map(|x| x.as_bool().unwrap()).collect() }

fn compare(label: &str, sc: &SymplecticComplex, e: &Value) {
    let cx = sc.complex();
    let top = cx.top_degree();
    let dims: Vec<usize> = (0..=top).map(|k| cx.dim(k)).collect();
    let betti: Vec<usize> = (0..=top).map(|k| cx.betti(k)).collect();
    assert_eq!(dims, usizes(&e["dims"]), "{label} dims");
    assert_eq!(betti, usizes(&e["betti"]), "{label} betti");
    let r = LefschetzReport::compute(sc).unwrap();
    let harm: Vec<usize> = r.degrees.iter().map(|d| d.harmonic_dim).collect();
    let reps: Vec<bool> = r.degrees.iter().map(|d| d.representable).collect();
    assert_eq!(harm, usizes(&e["harmonic_dims"]), "{label} harmonic dims");
    assert_eq!(reps, bools(&e["representable"]), "{label} representable");
    let levels = e["lefschetz"].as_array().unwrap();
    assert_eq!(r.levels.len(), levels.len(), "{label} level count");
    for (l, x) in r.levels.iter().zip(levels) {
        assert_eq!(l.k as u64, x["k"].as_u64().unwrap());
        assert_eq!(l.rank as u64, x["rank"].as_u64().unwrap(), "{label} rank of L^{}", l.k);
        assert_eq!(l.matrix.rows() as u64, x["target_dim"].as_u64().unwrap());
    }
    assert_eq!(r.lefschetz_side(), e["lefschetz_side"].as_bool().unwrap(), "{label}");
    assert_eq!(r.harmonic_side(), e["harmonic_side"].as_bool().unwrap(), "{label}");
}

#[test]
fn catalog_matches_brute_force() {
    for name in catalog::NAMES {
        let e = expected(name);
        assert_eq!(e["name"], name);
        let model = catalog::load(name).unwrap();
        model.check(DEFAULT_MAX_GROUP).unwrap();
        let sc = model.primary_complex().unwrap();
        compare(name, &sc, &e["primary"]);
        if let Some(inv) = e.get("invariant") {
            let g = model.group_action(DEFAULT_MAX_GROUP).unwrap().unwrap();
            assert_eq!(g.order() as u64, inv["group_order"].as_u64().unwrap());
            compare(&format!("{name}/invariant"), &model.invariant_complex(DEFAULT_MAX_GROUP).unwrap(), inv);
        }
        if let Some(fe) = e.get("foliation") {
            let f = model.foliation().unwrap().unwrap();
            let kappa = f.kappa();
            let want = fe["kappa"].as_array().unwrap();
            assert_eq!(kappa.len(), want.len(), "{name} kappa support");
            for t in want {
                let idx = t[0].as_u64().unwrap() as usize - 1;
                let c = parse_scalar(t[1].as_str().unwrap()).unwrap();
                assert_eq!(kappa.coeff(shl::exterior::Blade::single(idx)), c, "{name} kappa_{}", idx + 1);
            }
            assert_eq!(f.is_minimal(), fe["minimal"].as_bool().unwrap());
            assert_eq!(f.is_tense(), fe["tense"].as_bool().unwrap());
        }
    }
}

#[test]
fn kodaira_thurston_deficient_level() {
    let sc = common::full("kodaira_thurston");
    let r = LefschetzReport::compute(&sc).unwrap();
    assert_eq!(r.failing_levels(), vec![1]);
    assert_eq!(r.failing_degrees(), vec![3]);
}

#[test]
fn euler_characteristics_agree() {
    for (name, sc) in common::catalog_complexes() {
        let cx = sc.complex();
        assert_eq!(cx.euler_characteristic(), cx.cohomology_euler_characteristic(), "{name}");
    }
}
