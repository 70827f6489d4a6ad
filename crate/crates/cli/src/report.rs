//! The serializable run report and its text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use shl::foliated::Foliation;
use shl::lefschetz::LefschetzReport;
use shl::model::Model;
use shl::symplectic::{Identity, SymplecticComplex};
use shl::{Result, ShlError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub model: String,
    pub dim: usize,
    pub primary: ComplexReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant: Option<ComplexReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliated: Option<FoliatedReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexReport {
    /// `full`, `basic` or `invariant`.
    pub complex: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub harmonic_dims: Vec<usize>,
    pub representable: Vec<bool>,
    pub lefschetz: Vec<LevelReport>,
    pub lefschetz_side: bool,
    pub harmonic_side: bool,
    /// `equivalent: TRUE/TRUE` style summary; the two sides always agree.
    pub verdict: String,
    pub failing_k: Vec<usize>,
    pub identities: Vec<IdentityLine>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub k: usize,
    pub from_degree: usize,
    pub to_degree: usize,
    pub rank: usize,
    pub target_dim: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityLine {
    pub identity: String,
    pub pass: bool,
    /// False for the literal `[H,d] = 0`, `[H,delta] = 0`, which only hold when
    /// `d = 0`.
    pub structural: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoliatedReport {
    pub leaf_basis: Vec<usize>,
    pub p: usize,
    pub codim: usize,
    pub kappa: String,
    pub minimal: bool,
    pub tense: bool,
    pub top_basic_cohomology_nonzero: bool,
    pub star_a_split: bool,
    pub delta_a_identity: bool,
    pub bracket_identity: bool,
    /// Present only when `kappa = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub harmonic_sets_agree: Option<bool>,
}

fn flag(b: bool) -> &'static str { if b { "TRUE" } else { "FALSE" } }

fn verdict(r: &LefschetzReport) -> String {
    format!("equivalent: {}/{}", flag(r.lefschetz_side()), flag(r.harmonic_side()))
}

pub fn complex_report(kind: &str, sc: &SymplecticComplex) -> Result<ComplexReport> {
    let ids = sc.check_operator_identities()?;
    ids.ensure_structural()?;
    let lr = shl::lefschetz::equivalence_check(sc)?;
    let cx = sc.complex();
    let top = cx.top_degree();
    Ok(ComplexReport {
        complex: kind.to_string(),
        n: sc.n(),
        group_order: None,
        dims: (0..=top).map(|k| cx.dim(k)).collect(),
        betti: (0..=top).map(|k| cx.betti(k)).collect(),
        harmonic_dims: lr.degrees.iter().map(|d| d.harmonic_dim).collect(),
        representable: lr.degrees.iter().map(|d| d.representable).collect(),
        lefschetz: lr
            .levels
            .iter()
            .map(|l| LevelReport {
                k: l.k,
                from_degree: l.from_degree,
                to_degree: l.to_degree,
                rank: l.rank,
                target_dim: l.matrix.rows(),
                surjective: l.surjective,
            })
            .collect(),
        lefschetz_side: lr.lefschetz_side(),
        harmonic_side: lr.harmonic_side(),
        verdict: verdict(&lr),
        failing_k: lr.failing_levels(),
        identities: Identity::ALL
            .iter()
            .map(|&id| IdentityLine { identity: id.label().to_string(), pass: ids.passes(id), structural: id.is_structural() })
            .collect(),
    })
}

pub fn foliated_report(f: &Foliation) -> Result<FoliatedReport> {
    let checks = f.check_identities()?;
    let mc = f.minimal_case_check()?;
    Ok(FoliatedReport {
        leaf_basis: f.leaf().iter().map(|i| i + 1).collect(),
        p: f.p(),
        codim: f.codim(),
        kappa: f.kappa().to_string(),
        minimal: mc.minimal,
        tense: mc.tense,
        top_basic_cohomology_nonzero: mc.top_basic_cohomology_nonzero,
        star_a_split: checks.star_a_split.is_empty(),
        delta_a_identity: checks.delta_a_identity.is_empty(),
        bracket_identity: checks.bracket.is_empty(),
        equivalence: mc.equivalence.as_ref().map(verdict),
        harmonic_sets_agree: mc.harmonic_sets_agree,
    })
}

/// Runs the whole pipeline for `model`.
pub fn build(model: &Model, invariant: bool, foliated: bool, max_group: usize) -> Result<RunReport> {
    model.check(max_group)?;
    let fol = model.foliation()?;
    let primary = match &fol {
        Some(f) => complex_report("basic", f.basic())?,
        None => complex_report("full", &model.full_complex()?)?,
    };
    let invariant = if invariant {
        let sc = model.invariant_complex(max_group)?;
        let mut r = complex_report("invariant", &sc)?;
        r.group_order = Some(model.group_action(max_group)?.map_or(1, |g| g.order()));
        Some(r)
    } else {
        None
    };
    let foliated = if foliated {
        let f = fol.as_ref().ok_or_else(|| ShlError::BadFoliation("model has no foliation block".into()))?;
        Some(foliated_report(f)?)
    } else {
        None
    };
    Ok(RunReport { model: model.name.clone(), dim: model.dim(), primary, invariant, foliated })
}

fn join<T: ToString>(xs: &[T]) -> String { xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ") }

fn yes_no(b: bool) -> &'static str { if b { "yes" } else { "no" } }

fn render_complex(out: &mut String, c: &ComplexReport) {
    let _ = write!(out, "complex: {} (n = {})", c.complex, c.n);
    if let Some(g) = c.group_order {
        let _ = write!(out, ", group order {g}");
    }
    out.push('\n');
    let _ = writeln!(out, "  dims:           {}", join(&c.dims));
    let _ = writeln!(out, "  betti:          {}", join(&c.betti));
    let _ = writeln!(out, "  harmonic dims:  {}", join(&c.harmonic_dims));
    let reps: Vec<&str> = c.representable.iter().map(|&b| yes_no(b)).collect();
    let _ = writeln!(out, "  representable:  {}", reps.join(" "));
    for l in &c.lefschetz {
        let _ = writeln!(
            out,
            "  L^{}: H^{} -> H^{}  rank {}/{}  {}",
            l.k,
            l.from_degree,
            l.to_degree,
            l.rank,
            l.target_dim,
            if l.surjective { "surjective" } else { "NOT surjective" }
        );
    }
    for id in &c.identities {
        let tag = if id.structural { "" } else { "  (literal)" };
        let _ = writeln!(out, "  identity {:<20} {}{}", id.identity, if id.pass { "ok" } else { "FAIL" }, tag);
    }
    let _ = write!(out, "  {}", c.verdict);
    if !c.failing_k.is_empty() {
        let _ = write!(out, " (failing k: {})", join(&c.failing_k));
    }
    out.push('\n');
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model: {} (dim {})", r.model, r.dim);
    render_complex(&mut out, &r.primary);
    if let Some(c) = &r.invariant {
        render_complex(&mut out, c);
    }
    if let Some(f) = &r.foliated {
        let _ = writeln!(out, "foliation: leaf basis {} (p = {}, codim = {})", join(&f.leaf_basis), f.p, f.codim);
        let _ = writeln!(out, "  kappa:          {}", f.kappa);
        let _ = writeln!(out, "  minimal:        {}", yes_no(f.minimal));
        let _ = writeln!(out, "  tense:          {}", yes_no(f.tense));
        let _ = writeln!(out, "  H^2n_B nonzero: {}", yes_no(f.top_basic_cohomology_nonzero));
        let _ = writeln!(out, "  star_a split:   {}", if f.star_a_split { "ok" } else { "FAIL" });
        let _ = writeln!(out, "  delta_a:        {}", if f.delta_a_identity { "ok" } else { "FAIL" });
        let _ = writeln!(out, "  [Y, delta_a]:   {}", if f.bracket_identity { "ok" } else { "FAIL" });
        match (&f.equivalence, f.harmonic_sets_agree) {
            (Some(v), Some(agree)) => {
                let _ = writeln!(out, "  basic {v}; harmonic sets agree: {}", yes_no(agree));
            }
            _ => {
                let _ = writeln!(out, "  kappa != 0: hypotheses not met, no equivalence asserted");
            }
        }
    }
    out
}

pub fn render_json(r: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}
