//! Chevalley–Eilenberg complexes and their subcomplexes.
//!
//! A [`LieModel`] holds structure constants `c^k_{ij}` of a Lie algebra `g`
//! with basis `e_1, …, e_m`. Its differential on `Λ g*` is the derivation
//! `d e^k = -Σ_{i<j} c^k_{ij} e^i ∧ e^j`. A [`CochainComplex`] is a
//! d-stable graded subspace of `Λ g*` (the whole algebra, invariant forms, or
//! basic forms) with exact cohomology and `d`-inversion.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Result, ShlError};
use crate::exterior::{binomial, blades, wedge_sign, Blade, Form};
use crate::linalg::{Echelon, Matrix};
use crate::scalar::Scalar;

/// Structure constants of a finite-dimensional Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModel {
    name: String,
    dim: usize,
    /// `(i, j, k) ↦ c^k_{ij}` for `i < j`, 0-based, nonzero only.
    constants: BTreeMap<(usize, usize, usize), Scalar>,
    /// `d e^k` for each generator.
    d_generators: Vec<Form>,
}

/// Outcome of [`LieModel::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Generators `k` (0-based) with `d² e^k ≠ 0`.
    pub violations: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool { self.violations.is_empty() }
}

impl LieModel {
    /// Builds a model from entries `(i, j, k, c)` meaning `c^k_{ij} = c`
    /// (0-based). Entries with `i > j` are stored as `c^k_{ji} = -c`; a pair
    /// given twice must agree after this normalization.
    pub fn new<I>(name: impl Into<String>, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut constants: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(ShlError::Parse(format!(
                    "bracket index ({}, {}, {}) outside 1..={dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(ShlError::Parse(format!("c^{}_{{{},{}}} must vanish", k + 1, i + 1, j + 1)));
            }
            let (key, value) = if i < j { ((i, j, k), c) } else { ((j, i, k), -c) };
            if let Some(prev) = constants.get(&key) {
                if *prev != value {
                    return Err(ShlError::Parse(format!(
                        "conflicting (non-antisymmetric) entries for c^{}_{{{},{}}}",
                        k + 1,
                        key.0 + 1,
                        key.1 + 1
                    )));
                }
                continue;
            }
            constants.insert(key, value);
        }
        constants.retain(|_, c| !c.is_zero());
        let mut d_generators: Vec<Form> = (0..dim).map(|_| Form::zero(dim, 2)).collect();
        for (&(i, j, k), c) in &constants {
            let term = Form::from_terms(dim, 2, [(Blade::from_indices([i, j]).unwrap(), -c.clone())])?;
            d_generators[k] += &term;
        }
        Ok(LieModel { name: name.into(), dim, constants, d_generators })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        Self::new(name, dim, std::iter::empty()).expect("abelian model is always valid")
    }

    pub fn name(&self) -> &str { &self.name }

    pub fn dim(&self) -> usize { self.dim }

    pub fn is_abelian(&self) -> bool { self.constants.is_empty() }

    /// `c^k_{ij}`, antisymmetric in `i, j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.constants.get(&(i, j, k)).cloned().unwrap_or_else(Scalar::zero),
            std::cmp::Ordering::Greater => {
                -self.constants.get(&(j, i, k)).cloned().unwrap_or_else(Scalar::zero)
            }
            std::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    /// Nonzero constants as `(i, j, k, c)` with `i < j`.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.constants.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.structure_constant(i, j, k)).collect()
    }

    pub fn d_generator(&self, k: usize) -> &Form { &self.d_generators[k] }

    fn d_blade(&self, blade: Blade) -> Form {
        let degree = blade.degree();
        let mut out = Form::zero(self.dim, degree + 1);
        for (pos, i) in blade.indices().enumerate() {
            let de = &self.d_generators[i];
            if de.is_zero() {
                continue;
            }
            let left = Blade::from_bits(blade.bits() & ((1u32 << i) - 1));
            let right = Blade::from_bits(blade.bits() & !((1u32 << (i + 1)) - 1));
            for (b, c) in de.terms() {
                let s1 = wedge_sign(left, *b);
                if s1 == 0 {
                    continue;
                }
                let s2 = wedge_sign(left.union(*b), right);
                if s2 == 0 {
                    continue;
                }
                let s = if pos % 2 == 0 { s1 * s2 } else { -s1 * s2 };
                let coeff = if s < 0 { -c.clone() } else { c.clone() };
                let term = Form::from_terms(self.dim, degree + 1, [(left.union(*b).union(right), coeff)])
                    .expect("well-formed term");
                out += &term;
            }
        }
        out
    }

    /// The Chevalley–Eilenberg differential. Panics on a dimension mismatch;
    /// see [`LieModel::try_differential`].
    pub fn differential(&self, xi: &Form) -> Form {
        self.try_differential(xi).expect("form and model dimensions differ")
    }

    pub fn try_differential(&self, xi: &Form) -> Result<Form> {
        if xi.dim() != self.dim {
            return Err(ShlError::DimensionMismatch { expected: self.dim, found: xi.dim() });
        }
        let mut out = Form::zero(self.dim, xi.degree() + 1);
        for (b, c) in xi.terms() {
            out += &self.d_blade(*b).scale(c);
        }
        Ok(out)
    }

    /// Matrix of `d : Λ^k → Λ^{k+1}` in the colex bases.
    pub fn differential_matrix(&self, k: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            blades(self.dim, k).into_iter().map(|b| self.d_blade(b).to_coords()).collect();
        Matrix::from_columns(binomial(self.dim, k + 1), &cols)
    }

    /// Checks `d² = 0` on every generator (equivalent to the Jacobi identity).
    /// Antisymmetry is enforced at construction.
    pub fn validate(&self) -> ValidationReport {
        let violations = (0..self.dim)
            .filter(|&k| !self.differential(&self.d_generators[k]).is_zero())
            .collect();
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(ShlError::Jacobi { generators: report.violations.iter().map(|k| k + 1).collect() })
        }
    }
}

/// A `d`-stable graded subspace of `Λ g*`, degrees `0..=top`.
///
/// Piece `k` is stored as a matrix whose independent columns are ambient
/// coordinates of a basis of the degree-`k` part.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    model: LieModel,
    pieces: Vec<Matrix>,
    piece_solvers: Vec<OnceLock<Echelon>>,
    d_solvers: Vec<OnceLock<Echelon>>,
    cohomology: Vec<OnceLock<CohomologyBasis>>,
}

impl CochainComplex {
    /// The whole exterior algebra `Λ^0 … Λ^m`.
    pub fn full(model: LieModel) -> Self {
        let m = model.dim();
        let pieces = (0..=m).map(|k| Matrix::identity(binomial(m, k))).collect();
        Self::assemble(model, pieces)
    }

    /// A subcomplex from basis matrices; checks that `d` maps each piece into
    /// the next (and kills the top piece).
    pub fn from_pieces(model: LieModel, pieces: Vec<Matrix>) -> Result<Self> {
        let m = model.dim();
        for (k, p) in pieces.iter().enumerate() {
            if p.rows() != binomial(m, k) {
                return Err(ShlError::DimensionMismatch { expected: binomial(m, k), found: p.rows() });
            }
            if p.rank() != p.cols() {
                return Err(ShlError::Parse(format!("degree-{k} basis is linearly dependent")));
            }
        }
        let complex = Self::assemble(model, pieces);
        for k in 0..=complex.top_degree() {
            for b in complex.basis(k) {
                let db = complex.differential(&b);
                let ok = if k == complex.top_degree() { db.is_zero() } else { complex.contains(&db) };
                if !ok {
                    return Err(ShlError::NotInSubcomplex);
                }
            }
        }
        Ok(complex)
    }

    fn assemble(model: LieModel, pieces: Vec<Matrix>) -> Self {
        let n = pieces.len();
        CochainComplex {
            model,
            pieces,
            piece_solvers: (0..n).map(|_| OnceLock::new()).collect(),
            d_solvers: (0..n).map(|_| OnceLock::new()).collect(),
            cohomology: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn model(&self) -> &LieModel { &self.model }

    pub fn ambient_dim(&self) -> usize { self.model.dim() }

    pub fn top_degree(&self) -> usize { self.pieces.len() - 1 }

    pub fn piece(&self, k: usize) -> &Matrix { &self.pieces[k] }

    /// Dimension of the degree-`k` part (0 outside `0..=top`).
    pub fn dim(&self, k: usize) -> usize { self.pieces.get(k).map_or(0, Matrix::cols) }

    pub fn basis(&self, k: usize) -> Vec<Form> {
        let m = self.ambient_dim();
        match self.pieces.get(k) {
            Some(p) => p.columns().iter().map(|c| Form::from_coords(m, k, c)).collect(),
            None => Vec::new(),
        }
    }

    fn piece_solver(&self, k: usize) -> &Echelon { self.piece_solvers[k].get_or_init(|| self.pieces[k].echelon()) }

    /// Coordinates of `xi` in the basis of its degree piece.
    pub fn coords(&self, xi: &Form) -> Option<Vec<Scalar>> {
        let k = xi.degree();
        if k > self.top_degree() {
            return xi.is_zero().then(Vec::new);
        }
        self.piece_solver(k).solve(&xi.to_coords())
    }

    pub fn contains(&self, xi: &Form) -> bool { xi.dim() == self.ambient_dim() && self.coords(xi).is_some() }

    /// Linear combination of the degree-`k` basis.
    pub fn from_coords(&self, k: usize, coords: &[Scalar]) -> Form {
        Form::from_coords(self.ambient_dim(), k, &self.pieces[k].mul_vec(coords))
    }

    pub fn differential(&self, xi: &Form) -> Form { self.model.differential(xi) }

    /// Ambient matrix of `op` restricted to the degree-`k` piece.
    pub fn restricted_matrix<F>(&self, k: usize, target_degree: usize, mut op: F) -> Matrix
    where
        F: FnMut(&Form) -> Form,
    {
        let cols: Vec<Vec<Scalar>> = self
            .basis(k)
            .iter()
            .map(|b| {
                let img = op(b);
                debug_assert!(img.is_zero() || img.degree() == target_degree);
                pad(&img, target_degree)
            })
            .collect();
        Matrix::from_columns(binomial(self.ambient_dim(), target_degree), &cols)
    }

    fn d_solver(&self, k: usize) -> &Echelon {
        self.d_solvers[k].get_or_init(|| (&self.model.differential_matrix(k) * &self.pieces[k]).echelon())
    }

    /// Some `θ` in the subcomplex with `dθ = target`; free variables of the
    /// echelon system are set to zero.
    pub fn solve_d(&self, target: &Form) -> Result<Form> {
        let k = target.degree();
        if k == 0 {
            return if target.is_zero() { Ok(Form::zero(self.ambient_dim(), 0)) } else { Err(ShlError::NoSolution) };
        }
        if target.is_zero() {
            return Ok(Form::zero(self.ambient_dim(), k - 1));
        }
        if k - 1 > self.top_degree() {
            return Err(ShlError::NoSolution);
        }
        let c = self.d_solver(k - 1).solve(&target.to_coords()).ok_or(ShlError::NoSolution)?;
        Ok(self.from_coords(k - 1, &c))
    }

    /// Cohomology in degree `k ≤ top`, computed once and cached.
    pub fn cohomology(&self, k: usize) -> &CohomologyBasis {
        assert!(k <= self.top_degree(), "degree {k} above the top of the complex");
        self.cohomology[k].get_or_init(|| self.compute_cohomology(k))
    }

    pub fn betti(&self, k: usize) -> usize { if k > self.top_degree() { 0 } else { self.cohomology(k).dim() } }

    fn compute_cohomology(&self, k: usize) -> CohomologyBasis {
        let m = self.ambient_dim();
        let rows = binomial(m, k);
        let d_k = self.model.differential_matrix(k);
        let piece = &self.pieces[k];
        let cycles: Vec<Vec<Scalar>> =
            (&d_k * piece).kernel().iter().map(|c| piece.mul_vec(c)).collect();
        let boundaries: Vec<Vec<Scalar>> = if k == 0 {
            Vec::new()
        } else {
            let img = &self.model.differential_matrix(k - 1) * &self.pieces[k - 1];
            let ech = img.echelon();
            ech.pivots().iter().map(|&j| img.column(j)).collect()
        };
        let mut all = boundaries.clone();
        all.extend(cycles.iter().cloned());
        let ech = Matrix::from_columns(rows, &all).echelon();
        let reps: Vec<Vec<Scalar>> =
            ech.pivots().iter().filter(|&&j| j >= boundaries.len()).map(|&j| all[j].clone()).collect();
        let mut basis_cols = boundaries.clone();
        basis_cols.extend(reps.iter().cloned());
        let solver = Matrix::from_columns(rows, &basis_cols).echelon();
        CohomologyBasis {
            degree: k,
            dim: m,
            representatives: reps.iter().map(|c| Form::from_coords(m, k, c)).collect(),
            boundary_rank: boundaries.len(),
            cycle_dim: cycles.len(),
            solver,
            d_matrix: d_k,
        }
    }

    /// `Σ (-1)^k dim C^k`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_degree()).map(|k| sign(k) * self.dim(k) as i64).sum()
    }

    /// `Σ (-1)^k dim H^k`.
    pub fn cohomology_euler_characteristic(&self) -> i64 {
        (0..=self.top_degree()).map(|k| sign(k) * self.betti(k) as i64).sum()
    }
}

fn sign(k: usize) -> i64 { if k % 2 == 0 { 1 } else { -1 } }

fn pad(xi: &Form, degree: usize) -> Vec<Scalar> {
    if xi.is_zero() {
        vec![Scalar::zero(); binomial(xi.dim(), degree)]
    } else {
        xi.to_coords()
    }
}

/// A basis of `H^k` with coordinate queries.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    dim: usize,
    representatives: Vec<Form>,
    boundary_rank: usize,
    cycle_dim: usize,
    /// Echelon form of `[independent boundaries | representatives]`.
    solver: Echelon,
    d_matrix: Matrix,
}

impl CohomologyBasis {
    pub fn degree(&self) -> usize { self.degree }

    pub fn dim(&self) -> usize { self.representatives.len() }

    pub fn representatives(&self) -> &[Form] { &self.representatives }

    /// `dim ker d_k` inside the subcomplex.
    pub fn cycle_dim(&self) -> usize { self.cycle_dim }

    /// `rank d_{k-1}` inside the subcomplex.
    pub fn boundary_rank(&self) -> usize { self.boundary_rank }

    /// Coordinates of `[ξ]` in the representative basis; zero iff `ξ` is exact.
    pub fn class_coords(&self, xi: &Form) -> Result<Vec<Scalar>> {
        if xi.dim() != self.dim {
            return Err(ShlError::DimensionMismatch { expected: self.dim, found: xi.dim() });
        }
        if xi.is_zero() {
            return Ok(vec![Scalar::zero(); self.dim()]);
        }
        if xi.degree() != self.degree {
            return Err(ShlError::DegreeMismatch { expected: self.degree, found: xi.degree() });
        }
        let v = xi.to_coords();
        if self.d_matrix.mul_vec(&v).iter().any(|x| !x.is_zero()) {
            return Err(ShlError::NotClosed);
        }
        let x = self.solver.solve(&v).ok_or(ShlError::NotInSubcomplex)?;
        Ok(x[self.boundary_rank..].to_vec())
    }

    /// The closed form `Σ c_i r_i`.
    pub fn form_from_coords(&self, coords: &[Scalar]) -> Form {
        assert_eq!(coords.len(), self.dim());
        let mut out = Form::zero(self.dim, self.degree);
        for (c, r) in coords.iter().zip(&self.representatives) {
            out += &r.scale(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, one};

    fn kt() -> LieModel { LieModel::new("kt", 4, [(0, 1, 3, one())]).unwrap() }

    fn e(m: usize, idx: &[usize]) -> Form { Form::basis_from(m, idx) }

    #[test]
    fn kt_differential() {
        let model = kt();
        assert_eq!(model.differential(&e(4, &[3])), -&e(4, &[0, 1]));
        let x = e(4, &[3]).wedge(&e(4, &[2]));
        assert_eq!(model.differential(&x), -&e(4, &[0, 1, 2]));
        assert!(model.validate().is_valid());
    }

    #[test]
    fn abelian_is_trivial() {
        let model = LieModel::abelian("t4", 4);
        let x = Form::parse(4, "e{1,2} - 3 e{2,4}").unwrap();
        assert!(model.differential(&x).is_zero());
        let c = CochainComplex::full(model);
        assert_eq!(c.betti(1), 4);
        assert_eq!(c.betti(4), 1);
    }

    #[test]
    fn antisymmetry_handling() {
        let a = LieModel::new("a", 3, [(1, 0, 2, int(1))]).unwrap();
        assert_eq!(a.structure_constant(0, 1, 2), int(-1));
        assert!(LieModel::new("a", 3, [(0, 1, 2, int(1)), (1, 0, 2, int(-1))]).is_ok());
        assert!(LieModel::new("a", 3, [(0, 1, 2, int(1)), (1, 0, 2, int(1))]).is_err());
        assert!(LieModel::new("a", 3, [(0, 0, 2, int(1))]).is_err());
        assert!(LieModel::new("a", 3, [(0, 5, 2, int(1))]).is_err());
    }

    #[test]
    fn jacobi_violation_is_named() {
        // d e^3 = e^{12}, d e^4 = e^{13}, d e^1 = e^{24}.
        let model =
            LieModel::new("bad", 4, [(0, 1, 2, int(-1)), (0, 2, 3, int(-1)), (1, 3, 0, int(-1))]).unwrap();
        let report = model.validate();
        assert!(report.violations.contains(&3));
        assert!(matches!(model.ensure_valid(), Err(ShlError::Jacobi { .. })));
        // Without the perturbation the model is fine.
        let good = LieModel::new("good", 4, [(0, 1, 2, int(-1)), (0, 2, 3, int(-1))]).unwrap();
        assert!(good.validate().is_valid());
    }

    #[test]
    fn kt_cohomology_degree_one() {
        let c = CochainComplex::full(kt());
        let h1 = c.cohomology(1);
        assert_eq!(h1.dim(), 3);
        assert_eq!(h1.representatives(), &[e(4, &[0]), e(4, &[1]), e(4, &[2])]);
        assert_eq!(c.betti(4), 1);
    }

    #[test]
    fn class_coords_behaviour() {
        let c = CochainComplex::full(kt());
        let h1 = c.cohomology(1);
        assert_eq!(h1.class_coords(&e(4, &[0])).unwrap(), vec![int(1), int(0), int(0)]);
        assert_eq!(h1.class_coords(&e(4, &[3])), Err(ShlError::NotClosed));
        let h2 = c.cohomology(2);
        // d e^4 = -e^{12} is exact.
        assert!(h2.class_coords(&e(4, &[0, 1])).unwrap().iter().all(Zero::is_zero));
        let x = e(4, &[0, 2]);
        let shifted = &x + &c.differential(&e(4, &[3]).scale(&int(5)));
        assert_eq!(h2.class_coords(&x).unwrap(), h2.class_coords(&shifted).unwrap());
    }

    #[test]
    fn solve_d_examples() {
        let c = CochainComplex::full(kt());
        let theta = c.solve_d(&-&e(4, &[0, 1])).unwrap();
        assert_eq!(c.differential(&theta), -&e(4, &[0, 1]));
        assert!(c.solve_d(&Form::zero(4, 2)).unwrap().is_zero());
        let flat = CochainComplex::full(LieModel::abelian("t4", 4));
        assert_eq!(flat.solve_d(&e(4, &[0])), Err(ShlError::NoSolution));
    }

    #[test]
    fn euler_characteristics_agree() {
        let c = CochainComplex::full(kt());
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.cohomology_euler_characteristic(), c.euler_characteristic());
    }
}
