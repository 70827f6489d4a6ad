//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All algebraic checks are exact equalities over the rationals (tolerance
//! zero). Time limits are wall clock on the test build and are pinned below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use shl::complex::{CochainComplex, LieModel};
use shl::exterior::{blades, Form};
use shl::foliated::DPart;
use shl::invariant::DEFAULT_MAX_GROUP;
use shl::lefschetz::{closed_basis, harmonize, LefschetzReport};
use shl::linalg::Matrix;
use shl::model::catalog;
use shl::scalar::{int, ratio, Scalar};
use shl::symplectic::{Identity, SymplecticComplex, SymplecticData, VolumeNormalization};
use shl::ShlError;
use shl_verify::{combo, complexes, expected, fixture, foliation, full, rng, time_report};

const STAR_LIMIT: Duration = Duration::from_secs(1);
const REPORT_LIMIT: Duration = Duration::from_secs(10);
const STRESS_LIMIT: Duration = Duration::from_secs(60);
const PRIMITIVE_SAMPLES: usize = 100;
const HARMONIZE_SAMPLES: usize = 50;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> { if cond { Ok(()) } else { Err(msg()) } }

fn x_matrix(sc: &SymplecticComplex, j: usize) -> Matrix {
    let symp = sc.symplectic();
    sc.complex().restricted_matrix(j, j - 2, |f| symp.op_x(f).unwrap())
}

fn d_matrix(cx: &CochainComplex, j: usize) -> Matrix { cx.restricted_matrix(j, j + 1, |f| cx.differential(f)) }

fn c1() -> Outcome {
    let mut worst = Duration::ZERO;
    for name in ["torus4", "torus6", "kodaira_thurston"] {
        let start = Instant::now();
        let sc = full(name);
        let cx = sc.complex();
        for k in 0..=cx.top_degree() {
            for b in cx.basis(k) {
                let back = sc.star(&sc.star(&b).unwrap()).unwrap();
                ensure(back == b, || format!("{name}: star^2 {b} = {back}"))?;
            }
        }
        let t = start.elapsed();
        ensure(t < STAR_LIMIT, || format!("{name}: {t:?} >= {STAR_LIMIT:?}"))?;
        worst = worst.max(t);
    }
    let omega = Form::parse(4, "e{1,2} + e{3,4}").unwrap();
    let raw = SymplecticData::with_normalization(&omega, VolumeNormalization::Raw).unwrap();
    let one = Form::one(4);
    let twice = raw.star(&raw.star(&one).unwrap()).unwrap();
    ensure(twice == one.scale(&int(4)), || format!("raw volume: star^2(1) = {twice}, expected 4"))?;
    ensure(twice != one, || "negative control not detected".into())?;
    Ok(format!("star^2 = id on all degrees, slowest {worst:?}; raw volume gives star^2(1) = {twice}, detected"))
}

fn c2() -> Outcome {
    let required = [
        Identity::XyIsH,
        Identity::HxIsTwoX,
        Identity::HyIsMinusTwoY,
        Identity::YdCommute,
        Identity::XdeltaCommute,
        Identity::XdIsMinusDelta,
        Identity::YdeltaIsMinusD,
        Identity::HdCommute,
        Identity::HdeltaCommute,
    ];
    let mut failures = Vec::new();
    let mut evaluated = 0;
    for (name, sc) in complexes() {
        let r = sc.check_operator_identities().unwrap();
        for id in required {
            evaluated += r.evaluated(id);
            if !r.passes(id) {
                let corrected = match id {
                    Identity::HdCommute => Some(Identity::HdIsMinusD),
                    Identity::HdeltaCommute => Some(Identity::HdeltaIsDelta),
                    _ => None,
                };
                let note = corrected.map_or(String::new(), |c| {
                    format!(" ({} {})", c.label(), if r.passes(c) { "holds" } else { "also fails" })
                });
                failures.push(format!("{name}: {} fails on {} basis forms{note}", id.label(), r.failures(id).len()));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{evaluated} basis evaluations, all exact"))
    } else {
        Err(failures.join("; "))
    }
}

fn same_kernel(a: &Matrix, b: &Matrix) -> bool {
    let ka = a.kernel();
    let kb = b.kernel();
    let all: Vec<Vec<Scalar>> = ka.iter().chain(kb.iter()).cloned().collect();
    ka.len() == kb.len() && (all.is_empty() || Matrix::from_columns(a.cols(), &all).rank() == ka.len())
}

fn c3() -> Outcome {
    let mut forms = 0;
    for (name, sc) in complexes() {
        let cx = sc.complex();
        let symp = sc.symplectic();
        let n = sc.n();
        for k in 0..=n {
            let y = sc.y_power_matrix(k);
            let (lo, hi) = (cx.dim(n - k), cx.dim(n + k));
            ensure(lo == hi && y.rank() == lo, || format!("{name}: Y^{k} rank {} on {lo} -> {hi}", y.rank()))?;
        }
        for j in 0..=n {
            let k = n - j;
            let y = cx.restricted_matrix(j, j + 2 * (k + 1), |f| symp.y_power(f, k + 1));
            let agree = if j >= 2 { same_kernel(&x_matrix(&sc, j), &y) } else { y.is_zero() };
            ensure(agree, || format!("{name}: ker X != ker Y^{} in degree {j}", k + 1))?;
            for b in cx.basis(j) {
                let lhs = symp.primitive_test(&b).unwrap();
                ensure(lhs == symp.y_power(&b, k + 1).is_zero(), || format!("{name}: primitive criterion on {b}"))?;
            }
        }
        for j in 0..=cx.top_degree() {
            for xi in cx.basis(j) {
                forms += 1;
                let parts = symp.lefschetz_decompose(&xi).unwrap();
                let mut sum = Form::zero(sc.dim(), j);
                for (r, p) in parts.iter().enumerate() {
                    ensure(symp.primitive_test(p).unwrap(), || format!("{name}: part {r} of {xi} not primitive"))?;
                    sum += &symp.y_power(p, r);
                }
                ensure(sum == xi, || format!("{name}: decomposition of {xi} recomposes to {sum}"))?;
            }
        }
    }
    Ok(format!("Y^k invertible, primitive criterion exhaustive, {forms} decompositions recompose"))
}

fn c4() -> Outcome {
    let mut rng = rng(0x1e44a);
    let mut checked = 0;
    let mut min_samples = usize::MAX;
    for (name, sc) in complexes() {
        let cx = sc.complex();
        for j in 0..=cx.top_degree() {
            let d = d_matrix(cx, j);
            let stacked = if j >= 2 { d.vstack(&x_matrix(&sc, j)) } else { d };
            let basis: Vec<Form> = stacked.kernel().iter().map(|c| cx.from_coords(j, c)).collect();
            if basis.is_empty() {
                continue;
            }
            let mut samples = basis.clone();
            samples.extend((0..PRIMITIVE_SAMPLES).map(|_| combo(&mut rng, sc.dim(), j, &basis)));
            min_samples = min_samples.min(samples.len() - basis.len());
            for xi in samples {
                checked += 1;
                let delta = sc.codifferential(&xi).unwrap();
                ensure(delta.is_zero(), || format!("{name}: delta of closed primitive {xi} = {delta}"))?;
            }
        }
    }
    ensure(min_samples >= PRIMITIVE_SAMPLES, || "too few samples".into())?;
    Ok(format!("{checked} closed primitive forms co-closed (>= {PRIMITIVE_SAMPLES} random per nonzero degree)"))
}

fn c5() -> Outcome {
    let mut lines = Vec::new();
    for (name, want) in [("torus4", true), ("torus6", true), ("kodaira_thurston", false)] {
        let r = LefschetzReport::compute(&full(name)).unwrap();
        let (l, h) = (r.lefschetz_side(), r.harmonic_side());
        ensure(l == want && h == want, || format!("{name}: {l}/{h}, expected {want}/{want}"))?;
        let levels = expected(name)["primary"]["lefschetz"].as_array().unwrap().clone();
        for (lv, e) in r.levels.iter().zip(&levels) {
            let rank = e["rank"].as_u64().unwrap() as usize;
            ensure(lv.rank == rank, || format!("{name}: L^{} rank {} vs oracle {rank}", lv.k, lv.rank))?;
        }
        lines.push(format!("{name} {}/{}", if l { "TRUE" } else { "FALSE" }, if h { "TRUE" } else { "FALSE" }));
    }
    let kt = LefschetzReport::compute(&full("kodaira_thurston")).unwrap();
    let l1 = kt.levels.iter().find(|l| l.k == 1).unwrap();
    ensure(!l1.surjective && l1.rank < l1.matrix.rows(), || "KT L^1 not deficient".into())?;
    Ok(format!("{}; KT L^1: H^1 -> H^3 rank {}/{}", lines.join(", "), l1.rank, l1.matrix.rows()))
}

fn harmonic_rep(sc: &SymplecticComplex, xi: &Form, bar: &Form) -> Result<(), String> {
    let coh = sc.complex().cohomology(xi.degree());
    ensure(sc.differential(bar).is_zero(), || format!("d of {bar} nonzero"))?;
    ensure(sc.codifferential(bar).unwrap().is_zero(), || format!("delta of {bar} nonzero"))?;
    ensure(coh.class_coords(bar).unwrap() == coh.class_coords(xi).unwrap(), || format!("class of {xi} moved"))
}

fn c6() -> Outcome {
    let sc = full("torus6");
    let cx = sc.complex();
    let mut rng = rng(0x6a);
    let mut done = 0;
    for j in 0..=sc.n() {
        for _ in 0..HARMONIZE_SAMPLES {
            let h = combo(&mut rng, 6, j, sc.harmonic_basis(j));
            let xi = if j == 0 {
                h
            } else {
                let beta = combo(&mut rng, 6, j - 1, &cx.basis(j - 1));
                &h + &cx.differential(&beta)
            };
            let bar = harmonize(&sc, &xi).map_err(|e| format!("torus6 degree {j}: {e}"))?;
            harmonic_rep(&sc, &xi, &bar)?;
            done += 1;
        }
    }
    let kt = full("kodaira_thurston");
    let mut blocked = 0;
    for j in 0..=4 {
        let closed = closed_basis(&kt, j);
        let mut samples = closed.clone();
        samples.extend((0..10).map(|_| combo(&mut rng, 4, j, &closed)));
        for xi in samples {
            match harmonize(&kt, &xi) {
                Ok(bar) => harmonic_rep(&kt, &xi, &bar).map_err(|e| format!("KT degree {j}: {e}"))?,
                Err(ShlError::HypothesisViolated { .. }) => blocked += 1,
                Err(e) => return Err(format!("KT degree {j}: unexpected {e}")),
            }
        }
        if j == 3 {
            ensure(blocked > 0, || "KT degree 3 was not blocked".into())?;
        }
    }
    Ok(format!("{done} torus6 forms harmonized; {blocked} KT forms refused with the hypothesis error, no wrong output"))
}

fn c7() -> Outcome {
    let model = catalog::load("torus4_z2").unwrap();
    let g = model.group_action(DEFAULT_MAX_GROUP).unwrap().unwrap();
    ensure(g.reynolds_is_idempotent(), || "Reynolds not idempotent".into())?;
    ensure(g.reynolds_commutes_with(&model.lie), || "Reynolds does not commute with d".into())?;
    let sc = model.invariant_complex(DEFAULT_MAX_GROUP).unwrap();
    let betti: Vec<usize> = (0..=4).map(|k| sc.complex().betti(k)).collect();
    let want: Vec<usize> = expected("torus4_z2")["invariant"]["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect();
    ensure(betti == want, || format!("invariant betti {betti:?} vs oracle {want:?}"))?;
    ensure(betti[1] == 0 && betti[3] == 0, || "odd invariant cohomology".into())?;
    let r = LefschetzReport::compute(&sc).unwrap();
    ensure(r.lefschetz_side() && r.harmonic_side(), || "invariant verdict not TRUE/TRUE".into())?;
    Ok(format!("group order {}, invariant betti {betti:?}, TRUE/TRUE", g.order()))
}

fn c8() -> Outcome {
    let mut notes = Vec::new();
    for name in ["heis_r2", "solv5"] {
        let f = foliation(name);
        let m = f.dim();
        for k in 0..=m {
            for b in blades(m, k) {
                let xi = Form::basis(m, b);
                let r = f.leaf_count(b);
                let mut sum = Form::zero(m, k + 1);
                for part in DPart::ALL {
                    let piece = f.d_part(part, &xi);
                    let shift = match part {
                        DPart::D10 => Some((r + 1, k - r)),
                        DPart::D01 => Some((r, k - r + 1)),
                        DPart::DMinus12 => r.checked_sub(1).map(|r| (r, k - r + 1)),
                    };
                    if !piece.is_zero() {
                        ensure(shift.map(|s| vec![s]) == Some(f.bigrade(&piece).types()), || {
                            format!("{name}: {part:?} of {xi} has the wrong type")
                        })?;
                    }
                    sum += &piece;
                }
                ensure(sum == f.model().differential(&xi), || format!("{name}: d does not split on {xi}"))?;
            }
        }
        let checks = f.check_identities().unwrap();
        ensure(checks.star_a_split.is_empty(), || format!("{name}: star_a split fails {:?}", checks.star_a_split))?;
        ensure(checks.delta_a_identity.is_empty(), || format!("{name}: delta_a fails {:?}", checks.delta_a_identity))?;
        ensure(checks.bracket.is_empty(), || format!("{name}: [Y, delta_a] fails {:?}", checks.bracket))?;
        let mc = f.minimal_case_check().unwrap();
        notes.push(format!("{name} kappa = {}", f.kappa()));
        match name {
            "heis_r2" => {
                ensure(f.is_minimal(), || "heis_r2 kappa != 0".into())?;
                let eq = mc.equivalence.as_ref().ok_or("heis_r2 equivalence did not run")?;
                ensure(eq.agree() && eq.lefschetz_side(), || "heis_r2 basic equivalence".into())?;
                ensure(mc.harmonic_sets_agree == Some(true), || "heis_r2 harmonic sets".into())?;
            }
            _ => {
                ensure(!f.is_minimal() && f.is_tense(), || "solv5 should be tense with kappa != 0".into())?;
                ensure(mc.equivalence.is_none(), || "solv5 equivalence ran without its hypothesis".into())?;
            }
        }
    }
    Ok(format!("three-part split, star_a, delta_a, bracket exact; {}; equivalence only on heis_r2", notes.join(", ")))
}

fn c9() -> Outcome {
    let mut moved = 0;
    for (name, leaf) in [("heis_r2", 2usize), ("solv5", 4usize)] {
        let f = foliation(name);
        let mut g = Matrix::identity(5);
        let others: Vec<usize> = (0..5).filter(|&i| i != leaf).collect();
        for (t, c) in others.iter().zip([ratio(1, 2), ratio(-1, 3), ratio(1, 5), ratio(2, 7)]) {
            g[(leaf, *t)] = c.clone();
            g[(*t, leaf)] = c;
        }
        let complement = f.orthogonal_complement(&g).map_err(|e| format!("{name}: {e}"))?;
        moved += complement.iter().filter(|v| v[leaf] != int(0)).count();
        ensure(f.star_t_independent_of(&complement).unwrap(), || format!("{name}: star_t moved"))?;
    }
    ensure(moved > 0, || "perturbation did not tilt the complement".into())?;
    Ok(format!("star_t identical on all basic basis forms after tilting {moved} complement vectors"))
}

fn c10() -> Outcome {
    let mut worst = Duration::ZERO;
    for name in catalog::NAMES {
        let model = catalog::load(name).unwrap();
        let mut extra = vec!["--json", "--invariant"];
        if model.foliation.is_some() {
            extra.push("--foliated");
        }
        let t = time_report(&fixture(name), &extra)?;
        ensure(t < REPORT_LIMIT, || format!("{name}: {t:?} >= {REPORT_LIMIT:?}"))?;
        worst = worst.max(t);
    }
    let dir = std::env::temp_dir().join(format!("shl-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let stress = dir.join("torus8.json");
    let body = r#"{"name": "torus8", "dim": 8, "brackets": [],
 "omega": [[1, 2, "1"], [3, 4, "1"], [5, 6, "1"], [7, 8, "1"]]}"#;
    std::fs::write(&stress, body).map_err(|e| e.to_string())?;
    let t8 = time_report(&stress, &["--json"]);
    let _ = std::fs::remove_dir_all(&dir);
    let t8 = t8?;
    ensure(t8 < STRESS_LIMIT, || format!("torus8: {t8:?} >= {STRESS_LIMIT:?}"))?;
    // Sanity: the stress model is what it claims to be.
    let lie = LieModel::abelian("torus8", 8);
    ensure(CochainComplex::full(lie).betti(4) == 70, || "torus8 b4".into())?;
    Ok(format!("slowest catalog report {worst:?} (< {REPORT_LIMIT:?}); m = 8 stress {t8:?} (< {STRESS_LIMIT:?})"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("convention suite", c1),
        ("sl(2) suite", c2),
        ("Lefschetz algebra suite", c3),
        ("closed primitive forms are co-closed", c4),
        ("equivalence both ways", c5),
        ("constructive harmonize", c6),
        ("orbifold model", c7),
        ("foliated suite", c8),
        ("transverse star independent of complement", c9),
        ("performance", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
