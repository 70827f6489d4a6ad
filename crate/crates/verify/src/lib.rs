//! Helpers shared by the acceptance suite: seeded sampling, the catalog
//! complexes, fixture paths and in-process timing of `shl report`.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use shl::exterior::Form;
use shl::foliated::Foliation;
use shl::invariant::DEFAULT_MAX_GROUP;
use shl::model::catalog;
use shl::scalar::{ratio, Scalar};
use shl::symplectic::SymplecticComplex;

pub fn rng(seed: u64) -> StdRng { StdRng::seed_from_u64(seed) }

/// Rational in `[-8, 8]` with denominator 1 or 2.
pub fn small(rng: &mut StdRng) -> Scalar { ratio(rng.gen_range(-8..=8), rng.gen_range(1..=2)) }

pub fn combo(rng: &mut StdRng, dim: usize, degree: usize, basis: &[Form]) -> Form {
    let mut out = Form::zero(dim, degree);
    for b in basis {
        out += &b.scale(&small(rng));
    }
    out
}

pub fn full(name: &str) -> SymplecticComplex { catalog::load(name).unwrap().full_complex().unwrap() }

/// Primary complex of every catalog model, plus the invariant complex where
/// the model carries a group.
pub fn complexes() -> Vec<(String, SymplecticComplex)> {
    let mut out = Vec::new();
    for name in catalog::NAMES {
        let model = catalog::load(name).unwrap();
        out.push((name.to_string(), model.primary_complex().unwrap()));
        if model.group.is_some() {
            out.push((format!("{name}/invariant"), model.invariant_complex(DEFAULT_MAX_GROUP).unwrap()));
        }
    }
    out
}

pub fn foliation(name: &str) -> Foliation { catalog::load(name).unwrap().foliation().unwrap().unwrap() }

fn fixtures() -> PathBuf { Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures") }

pub fn fixture(name: &str) -> PathBuf { fixtures().join(format!("{name}.json")) }

/// Brute-force expectations written by `scripts/brute_force_expectations.py`.
pub fn expected(name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(fixtures().join("expected").join(format!("{name}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Wall time of `shl report <path> <extra...>`, run in-process end to end
/// (file read, checks, report, rendering).
pub fn time_report(path: &Path, extra: &[&str]) -> Result<Duration, String> {
    let mut args = vec!["shl".to_string(), "report".to_string(), path.display().to_string()];
    args.extend(extra.iter().map(|s| s.to_string()));
    let mut sink = Vec::new();
    let start = Instant::now();
    shl_cli::run_args(args, &mut sink).map_err(|e| format!("{}: {e} (exit {})", path.display(), e.exit_code()))?;
    let t = start.elapsed();
    if sink.is_empty() {
        return Err(format!("{}: empty report", path.display()));
    }
    Ok(t)
}
