#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use shl::exterior::{blades, Form};
use shl::invariant::DEFAULT_MAX_GROUP;
use shl::model::catalog;
use shl::scalar::{ratio, Scalar};
use shl::symplectic::SymplecticComplex;

pub fn rng(seed: u64) -> StdRng { StdRng::seed_from_u64(seed) }

/// Small nonzero-denominator rational in `[-4, 4]`.
pub fn small(rng: &mut StdRng) -> Scalar { ratio(rng.gen_range(-8..=8), rng.gen_range(1..=2)) }

pub fn combo(rng: &mut StdRng, dim: usize, degree: usize, basis: &[Form]) -> Form {
    let mut out = Form::zero(dim, degree);
    for b in basis {
        out += &b.scale(&small(rng));
    }
    out
}

/// A random element of `Λ^degree` over `dim` generators.
pub fn random_form(rng: &mut StdRng, dim: usize, degree: usize) -> Form {
    let basis: Vec<Form> = blades(dim, degree).into_iter().map(|b| Form::basis(dim, b)).collect();
    combo(rng, dim, degree, &basis)
}

/// Every catalog model's primary complex, plus the invariant complex where a
/// group is given.
pub fn catalog_complexes() -> Vec<(String, SymplecticComplex)> {
    let mut out = Vec::new();
    for name in catalog::NAMES {
        let model = catalog::load(name).unwrap();
        model.check(DEFAULT_MAX_GROUP).unwrap();
        out.push((name.to_string(), model.primary_complex().unwrap()));
        if model.group.is_some() {
            out.push((format!("{name}/invariant"), model.invariant_complex(DEFAULT_MAX_GROUP).unwrap()));
        }
    }
    out
}

pub fn full(name: &str) -> SymplecticComplex { catalog::load(name).unwrap().full_complex().unwrap() }
