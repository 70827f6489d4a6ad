//! Foliations given by Lie subalgebras, basic forms, and the transverse and
//! metric star operators.
//!
//! The leaf directions are a coordinate subset `h` of the basis spanning a
//! subalgebra; the transverse complement `D` defaults to the remaining
//! coordinates. A form has type `(r, s)` when it has `r` leaf and `s`
//! transverse indices. Basic forms are those with `ι_T ξ = L_T ξ = 0` for
//! all `T ∈ h`.
//!
//! Two stars are built:
//!
//! * `⋆_t` on basic forms, from `ω` alone (see [`SymplecticData::transverse`]);
//! * `⋆_a` on all forms, from `♭(X) = ι_{X_D} ω + g(X_h, ·)` and the volume
//!   `ω^n/n! ∧ χ`, where `χ` is the leafwise metric volume.
//!
//! The mean curvature `κ` is the transverse 1-form with `d_{0,1} χ = κ ∧ χ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::complex::{CochainComplex, LieModel};
use crate::error::{Result, ShlError};
use crate::exterior::{binomial, blades, contract, covector, vector, Blade, Form, Multivector};
use crate::lefschetz::{equivalence_check, LefschetzReport};
use crate::linalg::Matrix;
use crate::scalar::{int, rational_sqrt, Scalar};
use crate::symplectic::{MusicalStar, SymplecticComplex, SymplecticData};

/// Raw foliation data as read from a model file (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationSpec {
    pub leaf: Vec<usize>,
    pub metric: Matrix,
    pub chi_sign: i8,
}

/// One of the three bigraded pieces of `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DPart {
    D10,
    D01,
    DMinus12,
}

impl DPart {
    pub const ALL: [DPart; 3] = [DPart::D10, DPart::D01, DPart::DMinus12];

    /// Change in the leaf count `r`.
    fn leaf_shift(self) -> i64 {
        match self {
            DPart::D10 => 1,
            DPart::D01 => 0,
            DPart::DMinus12 => -1,
        }
    }
}

/// Components `(r, s) ↦ ξ_{r,s}`; only nonzero components are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BigradedForm {
    dim: usize,
    degree: usize,
    parts: BTreeMap<(usize, usize), Form>,
}

impl BigradedForm {
    pub fn component(&self, r: usize, s: usize) -> Form {
        self.parts.get(&(r, s)).cloned().unwrap_or_else(|| Form::zero(self.dim, self.degree))
    }

    pub fn parts(&self) -> &BTreeMap<(usize, usize), Form> { &self.parts }

    pub fn types(&self) -> Vec<(usize, usize)> { self.parts.keys().copied().collect() }

    pub fn total(&self) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for f in self.parts.values() {
            out += f;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Foliation {
    model: LieModel,
    leaf: Vec<usize>,
    transverse: Vec<usize>,
    leaf_mask: Blade,
    metric: Matrix,
    chi: Form,
    basic: SymplecticComplex,
    star_a: MusicalStar,
    kappa: Form,
    t_vector: Vec<Scalar>,
}

impl Foliation {
    pub fn new(model: LieModel, omega: &Form, spec: &FoliationSpec) -> Result<Self> {
        let m = model.dim();
        let bad = |msg: String| Err(ShlError::BadFoliation(msg));
        let leaf_mask = match Blade::from_indices(spec.leaf.iter().copied()) {
            Some(b) if spec.leaf.iter().all(|&i| i < m) => b,
            _ => return bad("leaf indices must be distinct and in range".into()),
        };
        let mut leaf = spec.leaf.clone();
        leaf.sort_unstable();
        let p = leaf.len();
        if p == 0 {
            return bad("empty leaf basis".into());
        }
        if (m - p) % 2 != 0 {
            return Err(ShlError::OddCodimension(m - p));
        }
        let transverse: Vec<usize> = (0..m).filter(|i| !leaf_mask.contains(*i)).collect();
        check_metric(&spec.metric, m, leaf_mask)?;
        for &i in &leaf {
            for &j in &leaf {
                if model.bracket(i, j).iter().enumerate().any(|(k, c)| !c.is_zero() && !leaf_mask.contains(k)) {
                    return bad(format!("leaf basis is not a subalgebra: [e{}, e{}] leaves it", i + 1, j + 1));
                }
            }
        }
        if spec.chi_sign != 1 && spec.chi_sign != -1 {
            return bad(format!("chi_sign must be 1 or -1, got {}", spec.chi_sign));
        }
        if omega.dim() != m || (omega.degree() != 2 && !omega.is_zero()) {
            return Err(ShlError::Parse("omega must be a 2-form on the model".into()));
        }
        if !model.differential(omega).is_zero() {
            return Err(ShlError::OmegaNotClosed);
        }
        if leaf.iter().any(|&i| !contract(&Multivector::basis_from(m, &[i]), omega).is_zero()) {
            return bad("omega is not basic".into());
        }

        let units: Vec<Vec<Scalar>> = transverse.iter().map(|&t| unit(m, t)).collect();
        let transverse_data = SymplecticData::transverse(omega, units)?;
        let basic_cx = basic_complex(&model, &leaf, &transverse)?;
        let basic = SymplecticComplex::new(basic_cx, transverse_data)?;

        let leaf_metric = Matrix::from_rows(leaf.iter().map(|&i| leaf.iter().map(|&j| spec.metric[(i, j)].clone()).collect()).collect());
        let scale = rational_sqrt(&leaf_metric.determinant()).ok_or_else(|| {
            ShlError::BadFoliation("determinant of the leaf metric is not a rational square".into())
        })?;
        let chi = Form::basis(m, leaf_mask).scale(&(int(spec.chi_sign as i64) * scale));

        let covectors: Vec<Form> = (0..m)
            .map(|i| {
                if leaf_mask.contains(i) {
                    covector(&spec.metric.row(i))
                } else {
                    let f = contract(&Multivector::basis_from(m, &[i]), omega);
                    if f.is_zero() { Form::zero(m, 1) } else { f }
                }
            })
            .collect();
        let volume = basic.symplectic().volume().wedge(&chi);
        let all_units: Vec<Vec<Scalar>> = (0..m).map(|i| unit(m, i)).collect();
        let star_a = MusicalStar::new(m, &all_units, &covectors, volume)?;

        let mut fol = Foliation {
            model,
            leaf,
            transverse,
            leaf_mask,
            metric: spec.metric.clone(),
            chi,
            basic,
            star_a,
            kappa: Form::zero(m, 1),
            t_vector: vec![Scalar::zero(); m],
        };
        fol.check_d_split()?;
        fol.kappa = fol.solve_kappa()?;
        fol.t_vector = fol.basic.symplectic().sharp(&fol.kappa)?.to_coords();
        Ok(fol)
    }

    pub fn model(&self) -> &LieModel { &self.model }

    pub fn dim(&self) -> usize { self.model.dim() }

    /// Leaf indices, sorted, 0-based.
    pub fn leaf(&self) -> &[usize] { &self.leaf }

    pub fn transverse(&self) -> &[usize] { &self.transverse }

    pub fn p(&self) -> usize { self.leaf.len() }

    pub fn codim(&self) -> usize { self.transverse.len() }

    pub fn n(&self) -> usize { self.codim() / 2 }

    pub fn metric(&self) -> &Matrix { &self.metric }

    pub fn chi(&self) -> &Form { &self.chi }

    pub fn omega(&self) -> &Form { self.basic.symplectic().omega() }

    /// The basic complex with its transverse symplectic structure.
    pub fn basic(&self) -> &SymplecticComplex { &self.basic }

    pub fn basic_complex(&self) -> &CochainComplex { self.basic.complex() }

    pub fn is_basic(&self, xi: &Form) -> bool { xi.degree() <= self.codim() && self.basic.complex().contains(xi) }

    pub fn star_t(&self, xi: &Form) -> Result<Form> {
        if !self.is_basic(xi) {
            return Err(ShlError::NotBasic);
        }
        self.basic.star(xi)
    }

    /// `⋆_t` rebuilt from another complement of the leaf directions.
    pub fn star_t_with_complement(&self, xi: &Form, complement: Vec<Vec<Scalar>>) -> Result<Form> {
        if !self.is_basic(xi) {
            return Err(ShlError::NotBasic);
        }
        SymplecticData::transverse(self.omega(), complement)?.star(xi)
    }

    /// The `g`-orthogonal complement of the leaf directions, one vector per
    /// transverse index: `∂_t - Σ (g_hh^{-1} g_ht)_l ∂_l`.
    pub fn orthogonal_complement(&self, metric: &Matrix) -> Result<Vec<Vec<Scalar>>> {
        let m = self.dim();
        check_metric(metric, m, Blade::from_bits(0))?;
        let g_hh = Matrix::from_rows(self.leaf.iter().map(|&i| self.leaf.iter().map(|&j| metric[(i, j)].clone()).collect()).collect());
        let inv = g_hh.inverse().ok_or(ShlError::SingularMatrix)?;
        Ok(self
            .transverse
            .iter()
            .map(|&t| {
                let g_ht: Vec<Scalar> = self.leaf.iter().map(|&l| metric[(l, t)].clone()).collect();
                let a = inv.mul_vec(&g_ht);
                let mut v = unit(m, t);
                for (idx, &l) in self.leaf.iter().enumerate() {
                    v[l] = -a[idx].clone();
                }
                v
            })
            .collect())
    }

    /// Number of leaf indices in a blade.
    pub fn leaf_count(&self, b: Blade) -> usize { (b.bits() & self.leaf_mask.bits()).count_ones() as usize }

    pub fn bigrade(&self, xi: &Form) -> BigradedForm {
        let mut parts: BTreeMap<(usize, usize), Form> = BTreeMap::new();
        for (b, c) in xi.terms() {
            let r = self.leaf_count(*b);
            let s = b.degree() - r;
            *parts.entry((r, s)).or_insert_with(|| Form::zero(xi.dim(), xi.degree())) += &Form::basis(xi.dim(), *b).scale(c);
        }
        BigradedForm { dim: xi.dim(), degree: xi.degree(), parts }
    }

    /// One bigraded piece of `d`.
    pub fn d_part(&self, part: DPart, xi: &Form) -> Form {
        let m = self.dim();
        let mut out = Form::zero(m, xi.degree() + 1);
        for (b, c) in xi.terms() {
            let want = self.leaf_count(*b) as i64 + part.leaf_shift();
            let y = self.model.differential(&Form::basis(m, *b).scale(c));
            for (bb, cc) in y.terms() {
                if self.leaf_count(*bb) as i64 == want {
                    out += &Form::basis(m, *bb).scale(cc);
                }
            }
        }
        out
    }

    /// `d = d_{1,0} + d_{0,1} + d_{-1,2}` on every basis form, with no other
    /// components, and `d_{1,0} χ = 0`.
    pub fn check_d_split(&self) -> Result<()> {
        let m = self.dim();
        for k in 0..=m {
            for b in blades(m, k) {
                let f = Form::basis(m, b);
                let mut sum = Form::zero(m, k + 1);
                for part in DPart::ALL {
                    sum += &self.d_part(part, &f);
                }
                if sum != self.model.differential(&f) {
                    return Err(ShlError::BadFoliation(format!(
                        "d has a component outside the three bigraded parts on {f}"
                    )));
                }
            }
        }
        if !self.d_part(DPart::D10, &self.chi).is_zero() {
            return Err(ShlError::BadFoliation("d_{1,0} chi does not vanish".into()));
        }
        Ok(())
    }

    fn solve_kappa(&self) -> Result<Form> {
        let m = self.dim();
        let target = self.d_part(DPart::D01, &self.chi);
        let deg = self.p() + 1;
        let rows = binomial(m, deg);
        let cols: Vec<Vec<Scalar>> = self
            .transverse
            .iter()
            .map(|&t| pad(&Form::basis_from(m, &[t]).wedge(&self.chi), rows))
            .collect();
        let c = Matrix::from_columns(rows, &cols)
            .echelon()
            .solve(&pad(&target, rows))
            .ok_or_else(|| ShlError::IdentityViolated("d_{0,1} chi is not of the form kappa ^ chi".into()))?;
        let mut kappa = Form::zero(m, 1);
        for (ci, &t) in c.iter().zip(&self.transverse) {
            kappa += &Form::basis_from(m, &[t]).scale(ci);
        }
        Ok(kappa)
    }

    /// Mean curvature form.
    pub fn kappa(&self) -> &Form { &self.kappa }

    pub fn is_minimal(&self) -> bool { self.kappa.is_zero() }

    /// `κ` basic.
    pub fn is_tense(&self) -> bool { self.is_basic(&self.kappa) }

    /// Coordinates of `T` with `ι_T ω = κ`, `T ∈ D`.
    pub fn t_vector(&self) -> &[Scalar] { &self.t_vector }

    pub fn star_a(&self, xi: &Form) -> Form { self.star_a.star(xi).expect("every form lies in the domain of star_a") }

    /// `δ_a ξ = (-1)^k ⋆_a d_{0,1} ⋆_a ξ`.
    pub fn delta_a(&self, xi: &Form) -> Form {
        let k = xi.degree();
        let out = self.star_a(&self.d_part(DPart::D01, &self.star_a(xi)));
        if k % 2 == 0 { out } else { -&out }
    }

    /// `(-1)^{p(k-1)} (δ_t ξ + ι_T ξ)` for basic `ξ` of degree `k`.
    pub fn delta_a_predicted(&self, xi: &Form) -> Result<Form> {
        let k = xi.degree() as i64;
        let inner = &self.basic.codifferential(xi)? + &contract(&vector(&self.t_vector), xi);
        Ok(if (self.p() as i64 * (k - 1)).rem_euclid(2) == 0 { inner } else { -&inner })
    }

    /// Both sides of `[Y, δ_a] ξ = (-1)^{p(k-1)+1} (ι_T ω ∧ ξ + dξ)`.
    pub fn bracket_y_delta_a(&self, xi: &Form) -> (Form, Form) {
        let k = xi.degree() as i64;
        let symp = self.basic.symplectic();
        let lhs = &symp.op_y(&self.delta_a(xi)) - &self.delta_a(&symp.op_y(xi));
        let t_omega = contract(&vector(&self.t_vector), self.omega());
        let inner = &t_omega.wedge(xi) + &self.model.differential(xi);
        let rhs = if (self.p() as i64 * (k - 1) + 1).rem_euclid(2) == 0 { inner } else { -&inner };
        (lhs, rhs)
    }

    /// Evaluates the basic-form identities on every basis form of the basic
    /// complex.
    pub fn check_identities(&self) -> Result<FoliatedChecks> {
        let mut out = FoliatedChecks::default();
        for k in 0..=self.codim() {
            for b in self.basic.complex().basis(k) {
                out.evaluated += 1;
                if self.star_a(&b) != self.star_t(&b)?.wedge(&self.chi) {
                    out.star_a_split.push((k, b.to_string()));
                }
                if self.delta_a(&b) != self.delta_a_predicted(&b)? {
                    out.delta_a_identity.push((k, b.to_string()));
                }
                let (l, r) = self.bracket_y_delta_a(&b);
                if l != r {
                    out.bracket.push((k, b.to_string()));
                }
            }
        }
        Ok(out)
    }

    /// `⋆_t` on the whole basic complex agrees with the one built from
    /// `complement`.
    pub fn star_t_independent_of(&self, complement: &[Vec<Scalar>]) -> Result<bool> {
        let other = SymplecticData::transverse(self.omega(), complement.to_vec())?;
        for k in 0..=self.codim() {
            for b in self.basic.complex().basis(k) {
                if self.star_t(&b)? != other.star(&b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Flags for the minimal case, and the equivalence on the basic complex
    /// when `κ = 0`.
    pub fn minimal_case_check(&self) -> Result<MinimalCaseReport> {
        let top = self.basic.complex().betti(self.codim());
        let mut report = MinimalCaseReport {
            minimal: self.is_minimal(),
            tense: self.is_tense(),
            top_basic_cohomology_nonzero: top != 0,
            equivalence: None,
            harmonic_sets_agree: None,
        };
        if !report.minimal {
            return Ok(report);
        }
        report.equivalence = Some(equivalence_check(&self.basic)?);
        let mut agree = true;
        for k in 0..=self.codim() {
            let by_t = self.basic.harmonic_basis(k).to_vec();
            let by_a = self.basic.harmonic_basis_with(k, |f| Ok(self.delta_a(f)))?;
            agree &= same_span(self.dim(), k, &by_t, &by_a);
        }
        if !agree {
            return Err(ShlError::EquivalenceViolated(
                "basic harmonic forms differ between the two codifferentials".into(),
            ));
        }
        report.harmonic_sets_agree = Some(true);
        Ok(report)
    }
}

#[derive(Clone, Debug, Default)]
pub struct FoliatedChecks {
    pub evaluated: usize,
    /// `(degree, basis form)` where `⋆_a ξ ≠ ⋆_t ξ ∧ χ`.
    pub star_a_split: Vec<(usize, String)>,
    pub delta_a_identity: Vec<(usize, String)>,
    pub bracket: Vec<(usize, String)>,
}

impl FoliatedChecks {
    pub fn all_pass(&self) -> bool {
        self.star_a_split.is_empty() && self.delta_a_identity.is_empty() && self.bracket.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct MinimalCaseReport {
    pub minimal: bool,
    pub tense: bool,
    pub top_basic_cohomology_nonzero: bool,
    /// Present only when `κ = 0`.
    pub equivalence: Option<LefschetzReport>,
    pub harmonic_sets_agree: Option<bool>,
}

/// Forms in `Λ(transverse)` with `ι_T dξ = 0` for every leaf direction `T`.
pub fn basic_complex(model: &LieModel, leaf: &[usize], transverse: &[usize]) -> Result<CochainComplex> {
    let m = model.dim();
    let q = transverse.len();
    let mut pieces = Vec::with_capacity(q + 1);
    for k in 0..=q {
        let candidates: Vec<Form> = blades(q, k)
            .into_iter()
            .map(|s| Form::basis_from(m, &s.indices().map(|a| transverse[a]).collect::<Vec<_>>()))
            .collect();
        let rows_per = binomial(m, k);
        let cols: Vec<Vec<Scalar>> = candidates
            .iter()
            .map(|f| {
                let df = model.differential(f);
                leaf.iter().flat_map(|&l| pad(&contract(&Multivector::basis_from(m, &[l]), &df), rows_per)).collect()
            })
            .collect();
        let constraint = Matrix::from_columns(rows_per * leaf.len(), &cols);
        let kernel = constraint.kernel();
        let basis: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|c| {
                let mut f = Form::zero(m, k);
                for (ci, cand) in c.iter().zip(&candidates) {
                    f += &cand.scale(ci);
                }
                pad(&f, rows_per)
            })
            .collect();
        pieces.push(Matrix::from_columns(rows_per, &basis));
    }
    CochainComplex::from_pieces(model.clone(), pieces)
}

fn check_metric(g: &Matrix, m: usize, leaf: Blade) -> Result<()> {
    let bad = |msg: &str| Err(ShlError::BadFoliation(msg.into()));
    if g.rows() != m || g.cols() != m {
        return bad("metric has the wrong shape");
    }
    if g.transpose() != *g {
        return bad("metric is not symmetric");
    }
    for i in 0..m {
        for j in 0..m {
            if leaf.contains(i) != leaf.contains(j) && !g[(i, j)].is_zero() {
                return bad("metric couples leaf and transverse directions");
            }
        }
    }
    // Sylvester's criterion.
    for k in 1..=m {
        let minor = Matrix::from_rows((0..k).map(|i| (0..k).map(|j| g[(i, j)].clone()).collect()).collect());
        if minor.determinant() <= Scalar::zero() {
            return bad("metric is not positive definite");
        }
    }
    Ok(())
}

fn same_span(m: usize, k: usize, a: &[Form], b: &[Form]) -> bool {
    let rows = binomial(m, k);
    let ma = Matrix::from_columns(rows, &a.iter().map(|f| pad(f, rows)).collect::<Vec<_>>());
    let mb = Matrix::from_columns(rows, &b.iter().map(|f| pad(f, rows)).collect::<Vec<_>>());
    let ra = ma.rank();
    ra == mb.rank() && ma.hstack(&mb).rank() == ra
}

fn unit(m: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m];
    v[i] = Scalar::one();
    v
}

fn pad(f: &Form, len: usize) -> Vec<Scalar> {
    if f.is_zero() {
        vec![Scalar::zero(); len]
    } else {
        f.to_coords()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::one;

    fn identity_spec(m: usize, leaf: Vec<usize>) -> FoliationSpec {
        FoliationSpec { leaf, metric: Matrix::identity(m), chi_sign: 1 }
    }

    fn heis_r2() -> Foliation {
        let model = LieModel::new("heis_r2", 5, [(0, 1, 2, one())]).unwrap();
        Foliation::new(model, &Form::parse(5, "e{1,2} + e{4,5}").unwrap(), &identity_spec(5, vec![2])).unwrap()
    }

    fn solv5() -> Foliation {
        let model = LieModel::new("solv5", 5, [(0, 4, 4, one())]).unwrap();
        Foliation::new(model, &Form::parse(5, "e{1,2} + e{3,4}").unwrap(), &identity_spec(5, vec![4])).unwrap()
    }

    #[test]
    fn heis_basic_one_forms() {
        let f = heis_r2();
        let expected: Vec<Form> = [0, 1, 3, 4].iter().map(|&i| Form::basis_from(5, &[i])).collect();
        assert_eq!(f.basic_complex().basis(1), expected);
        assert!(f.is_minimal());
        assert_eq!(f.d_part(DPart::DMinus12, f.chi()), Form::parse(5, "-e{1,2}").unwrap());
        assert!(f.d_part(DPart::D01, f.chi()).is_zero());
    }

    #[test]
    fn solv_kappa_nonzero_and_tense() {
        let f = solv5();
        assert_eq!(f.kappa(), &Form::parse(5, "-e{1}").unwrap());
        assert!(!f.is_minimal());
        assert!(f.is_tense());
        assert_eq!(f.d_part(DPart::D01, f.chi()), Form::parse(5, "-e{1,5}").unwrap());
    }

    #[test]
    fn identities_hold_on_fixtures() {
        for f in [heis_r2(), solv5()] {
            let c = f.check_identities().unwrap();
            assert!(c.all_pass(), "{c:?}");
        }
    }

    #[test]
    fn bigrading_examples() {
        let f = heis_r2();
        let x = Form::parse(5, "e{3,1}").unwrap();
        assert_eq!(f.bigrade(&x).types(), vec![(1, 1)]);
        assert_eq!(f.bigrade(f.chi()).types(), vec![(1, 0)]);
        let y = Form::parse(5, "e{1,2} + e{2,3}").unwrap();
        assert_eq!(f.bigrade(&y).total(), y);
    }

    #[test]
    fn star_a_of_one_is_total_volume() {
        let f = heis_r2();
        assert_eq!(f.star_a(&Form::one(5)), Form::parse(5, "e{1,2,3,4,5}").unwrap());
        assert_eq!(f.star_t(&Form::one(5)).unwrap(), Form::parse(5, "e{1,2,4,5}").unwrap());
        assert_eq!(f.star_t(&Form::parse(5, "e{3}").unwrap()), Err(ShlError::NotBasic));
    }

    #[test]
    fn rejections() {
        let model = LieModel::abelian("a5", 5);
        let omega = Form::parse(5, "e{1,2} + e{3,4}").unwrap();
        let odd = Foliation::new(model.clone(), &omega, &identity_spec(5, vec![3, 4]));
        assert_eq!(odd.unwrap_err(), ShlError::OddCodimension(3));
        let not_basic = Foliation::new(model.clone(), &Form::parse(5, "e{1,5} + e{3,4}").unwrap(), &identity_spec(5, vec![4]));
        assert!(matches!(not_basic, Err(ShlError::BadFoliation(_))));
        let mut g = Matrix::identity(5);
        g[(4, 4)] = int(2);
        let irrational = Foliation::new(model, &omega, &FoliationSpec { leaf: vec![4], metric: g, chi_sign: 1 });
        assert!(matches!(irrational, Err(ShlError::BadFoliation(_))));
    }

    #[test]
    fn minimal_case_runs_equivalence() {
        let r = heis_r2().minimal_case_check().unwrap();
        assert!(r.equivalence.is_some() && r.harmonic_sets_agree == Some(true));
        let r = solv5().minimal_case_check().unwrap();
        assert!(r.equivalence.is_none() && !r.minimal && r.tense);
    }
}
