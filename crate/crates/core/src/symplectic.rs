//! Symplectic Hodge operators.
//!
//! [`SymplecticData`] packages a closed 2-form `ω` together with a complement
//! `D` of `ker ω` on which `ω` is nondegenerate. For a symplectic form on the
//! whole space, `D` is everything and `ker ω = 0`; for a transversally
//! symplectic form, `D` is any complement of the leaf directions. The star
//! operator is the composite
//!
//! ```text
//! Λ^k(ann ker ω)  --♯-->  Λ^k D  --ι(·) μ-->  Λ^{2n-k}(ann ker ω)
//! ```
//!
//! with `♭(v) = ι_v ω` and volume `μ = ω^n / n!`. With this normalization and
//! the contraction order fixed in [`crate::exterior`], `⋆² = id`.
//!
//! [`SymplecticComplex`] pairs the data with a [`CochainComplex`] and adds
//! the codifferential `δ = (-1)^k ⋆ d ⋆`, the sl(2) triple
//! `Y = ω ∧ ·`, `X = ⋆ Y ⋆`, `H = (n - k)`, and harmonic spaces.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::complex::CochainComplex;
use crate::error::{Result, ShlError};
use crate::exterior::{binomial, blades, contract, covector, vector, Blade, Form, Multivector};
use crate::linalg::Matrix;
use crate::scalar::{factorial, int, Scalar};

/// Musical isomorphism `v_a ↦ f_a` plus a volume form, tabulated per degree.
#[derive(Clone, Debug)]
pub(crate) struct MusicalStar {
    dim: usize,
    rank: usize,
    volume: Form,
    tables: Vec<StarTable>,
}

#[derive(Clone, Debug)]
struct StarTable {
    /// Columns: `f_A = f_{a_1} ∧ … ∧ f_{a_k}`, a basis of the domain.
    domain: Matrix,
    /// `coords(ξ) ↦` coefficients in the `f_A` basis (valid on the domain).
    left_inverse: Matrix,
    /// Rows that vanish exactly on the domain.
    residual: Matrix,
    /// Columns: ambient coordinates of `v_A = v_{a_1} ∧ … ∧ v_{a_k}`.
    sharp_images: Matrix,
    /// Columns: `ι_{v_A} μ`.
    star_images: Matrix,
}

impl MusicalStar {
    /// `vectors[a]` and `covectors[a] = ♭(vectors[a])`; the volume has degree
    /// `vectors.len()`.
    pub(crate) fn new(dim: usize, vectors: &[Vec<Scalar>], covectors: &[Form], volume: Form) -> Result<Self> {
        let rank = vectors.len();
        assert_eq!(covectors.len(), rank);
        let cov = Matrix::from_columns(dim, &covectors.iter().map(Form::to_coords).collect::<Vec<_>>());
        if cov.rank() != rank {
            return Err(ShlError::OmegaDegenerate("musical map is not injective on the complement".into()));
        }
        let vec_m = Matrix::from_columns(dim, vectors);
        if vec_m.rank() != rank {
            return Err(ShlError::OmegaDegenerate("complement vectors are dependent".into()));
        }
        let vs: Vec<Multivector> = vectors.iter().map(|v| vector(v)).collect();
        let mut tables = Vec::with_capacity(rank + 1);
        for k in 0..=rank {
            let subsets = blades(rank, k);
            let mut dom_cols = Vec::with_capacity(subsets.len());
            let mut sharp_cols = Vec::with_capacity(subsets.len());
            let mut star_cols = Vec::with_capacity(subsets.len());
            for s in &subsets {
                let f = s.indices().fold(Form::one(dim), |acc, a| acc.wedge(&covectors[a]));
                let v = s.indices().fold(Multivector::one(dim), |acc, a| acc.wedge(&vs[a]));
                dom_cols.push(coords_of(&f, dim, k));
                sharp_cols.push(mv_coords(&v, dim, k));
                star_cols.push(coords_of(&contract(&v, &volume), dim, rank - k));
            }
            let domain = Matrix::from_columns(binomial(dim, k), &dom_cols);
            let ech = domain.echelon();
            debug_assert_eq!(ech.rank(), subsets.len());
            let e = ech.transform();
            let r = ech.rank();
            let left_inverse = row_block(e, 0..r);
            let residual = row_block(e, r..e.rows());
            tables.push(StarTable {
                domain,
                left_inverse,
                residual,
                sharp_images: Matrix::from_columns(binomial(dim, k), &sharp_cols),
                star_images: Matrix::from_columns(binomial(dim, rank - k), &star_cols),
            });
        }
        Ok(MusicalStar { dim, rank, volume, tables })
    }

    fn domain_coords(&self, xi: &Form) -> Result<Vec<Scalar>> {
        if xi.dim() != self.dim {
            return Err(ShlError::DimensionMismatch { expected: self.dim, found: xi.dim() });
        }
        let k = xi.degree();
        if k > self.rank {
            return if xi.is_zero() { Ok(Vec::new()) } else { Err(ShlError::OutsideDomain) };
        }
        let t = &self.tables[k];
        let v = xi.to_coords();
        if t.residual.mul_vec(&v).iter().any(|x| !x.is_zero()) {
            return Err(ShlError::OutsideDomain);
        }
        Ok(t.left_inverse.mul_vec(&v))
    }

    pub(crate) fn in_domain(&self, xi: &Form) -> bool { self.domain_coords(xi).is_ok() }

    pub(crate) fn sharp(&self, xi: &Form) -> Result<Multivector> {
        let c = self.domain_coords(xi)?;
        let k = xi.degree();
        Ok(Multivector::from_coords(self.dim, k, &self.tables[k].sharp_images.mul_vec(&c)))
    }

    pub(crate) fn star(&self, xi: &Form) -> Result<Form> {
        let c = self.domain_coords(xi)?;
        let k = xi.degree();
        if k > self.rank {
            // Only the zero form gets here.
            return Ok(Form::zero(self.dim, 0));
        }
        Ok(Form::from_coords(self.dim, self.rank - k, &self.tables[k].star_images.mul_vec(&c)))
    }

    pub(crate) fn domain_basis(&self, k: usize) -> Vec<Form> {
        match self.tables.get(k) {
            Some(t) => t.domain.columns().iter().map(|c| Form::from_coords(self.dim, k, c)).collect(),
            None => Vec::new(),
        }
    }

    pub(crate) fn volume(&self) -> &Form { &self.volume }
}

fn row_block(m: &Matrix, rows: std::ops::Range<usize>) -> Matrix {
    let mut out = Matrix::zeros(rows.len(), m.cols());
    for (i, r) in rows.enumerate() {
        for j in 0..m.cols() {
            out[(i, j)] = m[(r, j)].clone();
        }
    }
    out
}

fn coords_of(xi: &Form, dim: usize, k: usize) -> Vec<Scalar> {
    if xi.is_zero() {
        vec![Scalar::zero(); binomial(dim, k)]
    } else {
        xi.to_coords()
    }
}

fn mv_coords(x: &Multivector, dim: usize, k: usize) -> Vec<Scalar> {
    if x.is_zero() {
        vec![Scalar::zero(); binomial(dim, k)]
    } else {
        x.to_coords()
    }
}

/// Which volume form the star operator contracts into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VolumeNormalization {
    /// `μ = ω^n / n!`; the only choice with `⋆² = id`.
    #[default]
    Factorial,
    /// `μ = ω^n`, kept for negative controls.
    Raw,
}

/// A closed 2-form, nondegenerate on a chosen complement of its kernel.
#[derive(Clone, Debug)]
pub struct SymplecticData {
    dim: usize,
    n: usize,
    omega: Form,
    /// Column `i`: coordinates of `ι_{∂_i} ω`.
    flat_matrix: Matrix,
    poisson: Multivector,
    star: MusicalStar,
}

impl SymplecticData {
    /// `ω` nondegenerate on the whole space.
    pub fn new(omega: &Form) -> Result<Self> { Self::with_normalization(omega, VolumeNormalization::Factorial) }

    pub fn with_normalization(omega: &Form, norm: VolumeNormalization) -> Result<Self> {
        let m = omega.dim();
        if m % 2 != 0 {
            return Err(ShlError::OmegaDegenerate(format!("odd dimension {m}")));
        }
        let complement: Vec<Vec<Scalar>> = (0..m).map(|i| unit(m, i)).collect();
        Self::build(omega, complement, norm)
    }

    /// `ω` with a kernel; `complement` spans a subspace on which it is
    /// nondegenerate and which is complementary to `ker ω`.
    pub fn transverse(omega: &Form, complement: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::build(omega, complement, VolumeNormalization::Factorial)
    }

    fn build(omega: &Form, complement: Vec<Vec<Scalar>>, norm: VolumeNormalization) -> Result<Self> {
        let m = omega.dim();
        if omega.degree() != 2 && !omega.is_zero() {
            return Err(ShlError::DegreeMismatch { expected: 2, found: omega.degree() });
        }
        let omega = if omega.is_zero() { Form::zero(m, 2) } else { omega.clone() };
        let flat_cols: Vec<Vec<Scalar>> =
            (0..m).map(|i| coords_of(&contract(&Multivector::basis(m, Blade::single(i)), &omega), m, 1)).collect();
        let flat_matrix = Matrix::from_columns(m, &flat_cols);
        let r = flat_matrix.rank();
        if r != complement.len() {
            return Err(ShlError::OmegaDegenerate(format!(
                "rank of omega is {r} but the complement has dimension {}",
                complement.len()
            )));
        }
        if r == 0 && m > 0 {
            return Err(ShlError::OmegaDegenerate("omega vanishes".into()));
        }
        let n = r / 2;
        let covectors: Vec<Form> =
            complement.iter().map(|v| contract(&vector(v), &omega)).map(|f| normalize_degree(f, m, 1)).collect();
        let volume = match norm {
            VolumeNormalization::Factorial => omega.power(n).scale(&factorial(n).recip()),
            VolumeNormalization::Raw => omega.power(n),
        };
        let star = MusicalStar::new(m, &complement, &covectors, volume)?;
        let poisson = star.sharp(&omega).map_err(|_| ShlError::OmegaDegenerate("omega outside its own domain".into()))?;
        Ok(SymplecticData { dim: m, n, omega, flat_matrix, poisson, star })
    }

    pub fn dim(&self) -> usize { self.dim }

    /// Half the rank of `ω`.
    pub fn n(&self) -> usize { self.n }

    pub fn omega(&self) -> &Form { &self.omega }

    pub fn volume(&self) -> &Form { self.star.volume() }

    pub fn poisson(&self) -> &Multivector { &self.poisson }

    pub fn flat_matrix(&self) -> &Matrix { &self.flat_matrix }

    /// `∂_i ↦ ι_{∂_i} ω`, extended multiplicatively.
    pub fn flat(&self, x: &Multivector) -> Form {
        let images: Vec<Form> = (0..self.dim).map(|i| covector(&self.flat_matrix.column(i))).collect();
        let mut out = Form::zero(self.dim, x.degree());
        for (b, c) in x.terms() {
            let img = b.indices().fold(Form::one(self.dim), |acc, i| acc.wedge(&images[i]));
            out += &img.scale(c);
        }
        out
    }

    /// Inverse of [`SymplecticData::flat`] on `Λ(ann ker ω)`, landing in `Λ D`.
    pub fn sharp(&self, xi: &Form) -> Result<Multivector> { self.star.sharp(xi) }

    pub fn in_domain(&self, xi: &Form) -> bool { self.star.in_domain(xi) }

    /// Basis `♭(v_A)` of the degree-`k` part of the star domain.
    pub fn domain_basis(&self, k: usize) -> Vec<Form> { self.star.domain_basis(k) }

    pub fn star(&self, xi: &Form) -> Result<Form> { self.star.star(xi) }

    pub fn op_y(&self, xi: &Form) -> Form { self.omega.wedge(xi) }

    /// `Y^k ξ = ω^k ∧ ξ`.
    pub fn y_power(&self, xi: &Form, k: usize) -> Form { (0..k).fold(xi.clone(), |acc, _| self.op_y(&acc)) }

    /// `X = ⋆ Y ⋆`; zero on degrees 0 and 1.
    pub fn op_x(&self, xi: &Form) -> Result<Form> {
        if xi.degree() < 2 {
            self.star(xi)?;
            return Ok(Form::zero(self.dim, 0));
        }
        self.star(&self.op_y(&self.star(xi)?))
    }

    pub fn op_h(&self, xi: &Form) -> Form { xi.scale(&h_eigenvalue(self.n, xi.degree())) }

    /// `X ξ = 0`. By the sl(2) structure this matches `Y^{n-deg+1} ξ = 0`
    /// in degrees `≤ n`; above `n` only `0` is primitive.
    pub fn primitive_test(&self, xi: &Form) -> Result<bool> { Ok(self.op_x(xi)?.is_zero()) }

    /// Primitive forms `p_0, p_1, …` with `ξ = Σ_r Y^r p_r`, `deg p_r = deg ξ - 2r`.
    ///
    /// In degree `j ≤ n` the split `ξ = p + Y β` is found by solving
    /// `X Y β = X ξ` on the domain; above `n`, `ξ = Y^s β` with `s = j - n`
    /// is solved directly. Both systems have unique solutions.
    pub fn lefschetz_decompose(&self, xi: &Form) -> Result<Vec<Form>> {
        let j = xi.degree();
        if !self.in_domain(xi) {
            return Err(ShlError::OutsideDomain);
        }
        let mut parts: Vec<Form> = (0..=j / 2).map(|r| Form::zero(self.dim, j - 2 * r)).collect();
        if xi.is_zero() {
            return Ok(parts);
        }
        if j > 2 * self.n {
            return Err(ShlError::OutsideDomain);
        }
        if j > self.n {
            let s = j - self.n;
            let beta = self.solve_on_domain(j - 2 * s, j, xi, |f| Ok(self.y_power(f, s)))?;
            for (r, p) in self.lefschetz_decompose(&beta)?.into_iter().enumerate() {
                parts[r + s] = p;
            }
            return Ok(parts);
        }
        if j < 2 {
            parts[0] = xi.clone();
            return Ok(parts);
        }
        let x_xi = self.op_x(xi)?;
        let beta = self.solve_on_domain(j - 2, j - 2, &x_xi, |f| self.op_x(&self.op_y(f)))?;
        parts[0] = xi - &self.op_y(&beta);
        for (r, p) in self.lefschetz_decompose(&beta)?.into_iter().enumerate() {
            parts[r + 1] = p;
        }
        Ok(parts)
    }

    /// Solves `op(β) = target` for `β` in the degree-`k` domain.
    fn solve_on_domain<F>(&self, k: usize, target_degree: usize, target: &Form, op: F) -> Result<Form>
    where
        F: Fn(&Form) -> Result<Form>,
    {
        let basis = self.domain_basis(k);
        let cols = basis.iter().map(|f| op(f).map(|g| coords_of(&g, self.dim, target_degree))).collect::<Result<Vec<_>>>()?;
        let a = Matrix::from_columns(binomial(self.dim, target_degree), &cols);
        let c = a.echelon().solve(&coords_of(target, self.dim, target_degree)).ok_or(ShlError::NoSolution)?;
        let mut out = Form::zero(self.dim, k);
        for (ci, f) in c.iter().zip(&basis) {
            out += &f.scale(ci);
        }
        Ok(out)
    }
}

fn unit(m: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m];
    v[i] = int(1);
    v
}

fn normalize_degree(f: Form, m: usize, k: usize) -> Form { if f.is_zero() { Form::zero(m, k) } else { f } }

/// Eigenvalue `n - k` of `H` on degree `k`.
pub fn h_eigenvalue(n: usize, k: usize) -> Scalar { int(n as i64 - k as i64) }

/// A cochain complex with a compatible symplectic structure.
#[derive(Clone, Debug)]
pub struct SymplecticComplex {
    complex: CochainComplex,
    symp: SymplecticData,
    harmonic: Vec<OnceLock<Vec<Form>>>,
}

impl SymplecticComplex {
    /// Checks that `ω` lies in the complex and is closed, that every piece
    /// sits in the star domain, and that `⋆` maps piece `k` onto piece `2n-k`.
    pub fn new(complex: CochainComplex, symp: SymplecticData) -> Result<Self> {
        let n = symp.n();
        if complex.ambient_dim() != symp.dim() {
            return Err(ShlError::DimensionMismatch { expected: complex.ambient_dim(), found: symp.dim() });
        }
        if !complex.differential(symp.omega()).is_zero() {
            return Err(ShlError::OmegaNotClosed);
        }
        if complex.top_degree() != 2 * n {
            return Err(ShlError::OmegaDegenerate(format!(
                "complex has top degree {} but omega has rank {}",
                complex.top_degree(),
                2 * n
            )));
        }
        if !complex.contains(symp.omega()) {
            return Err(ShlError::NotInSubcomplex);
        }
        for k in 0..=2 * n {
            for b in complex.basis(k) {
                let s = symp.star(&b)?;
                if !complex.contains(&s) {
                    return Err(ShlError::NotInSubcomplex);
                }
            }
        }
        Ok(SymplecticComplex { complex, symp, harmonic: (0..=2 * n).map(|_| OnceLock::new()).collect() })
    }

    /// The full Chevalley–Eilenberg complex of `model` with `ω`.
    pub fn full(model: crate::complex::LieModel, omega: &Form) -> Result<Self> {
        Self::new(CochainComplex::full(model), SymplecticData::new(omega)?)
    }

    pub fn complex(&self) -> &CochainComplex { &self.complex }

    pub fn symplectic(&self) -> &SymplecticData { &self.symp }

    pub fn n(&self) -> usize { self.symp.n() }

    pub fn dim(&self) -> usize { self.symp.dim() }

    pub fn differential(&self, xi: &Form) -> Form { self.complex.differential(xi) }

    pub fn star(&self, xi: &Form) -> Result<Form> { self.symp.star(xi) }

    /// `δ ξ = (-1)^k ⋆ d ⋆ ξ`; zero on 0-forms.
    pub fn codifferential(&self, xi: &Form) -> Result<Form> {
        let k = xi.degree();
        if k == 0 {
            self.symp.star(xi)?;
            return Ok(Form::zero(self.dim(), 0));
        }
        let out = self.symp.star(&self.differential(&self.symp.star(xi)?))?;
        Ok(if k % 2 == 0 { out } else { -&out })
    }

    /// Basis of `ker d ∩ ker δ` in degree `k`.
    pub fn harmonic_basis(&self, k: usize) -> &[Form] {
        self.harmonic[k].get_or_init(|| {
            self.harmonic_basis_with(k, |f| self.codifferential(f)).expect("codifferential on the complex")
        })
    }

    /// Basis of `ker d ∩ ker δ'` in degree `k` for another codifferential.
    pub fn harmonic_basis_with<F>(&self, k: usize, codiff: F) -> Result<Vec<Form>>
    where
        F: Fn(&Form) -> Result<Form>,
    {
        let m = self.dim();
        let basis = self.complex.basis(k);
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        let d_cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords_of(&self.differential(b), m, k + 1)).collect();
        let lower = k.saturating_sub(1);
        let delta_cols = basis
            .iter()
            .map(|b| codiff(b).map(|f| if k == 0 { Vec::new() } else { coords_of(&f, m, lower) }))
            .collect::<Result<Vec<_>>>()?;
        let d_mat = Matrix::from_columns(binomial(m, k + 1), &d_cols);
        let stacked = if k == 0 {
            d_mat
        } else {
            d_mat.vstack(&Matrix::from_columns(binomial(m, lower), &delta_cols))
        };
        Ok(stacked.kernel().iter().map(|c| self.complex.from_coords(k, c)).collect())
    }

    /// Matrix of `Y^k` from piece `n-k` into ambient degree `n+k`.
    pub fn y_power_matrix(&self, k: usize) -> Matrix {
        let n = self.n();
        self.complex.restricted_matrix(n - k, n + k, |f| self.symp.y_power(f, k))
    }

    /// Matrix of `X^k` from piece `n+k` into ambient degree `n-k`.
    pub fn x_power_matrix(&self, k: usize) -> Result<Matrix> {
        let n = self.n();
        let mut err = None;
        let m = self.complex.restricted_matrix(n + k, n - k, |f| {
            let mut g = f.clone();
            for _ in 0..k {
                match self.symp.op_x(&g) {
                    Ok(x) => g = x,
                    Err(e) => {
                        err = Some(e);
                        return Form::zero(self.dim(), n - k);
                    }
                }
            }
            if g.is_zero() {
                Form::zero(self.dim(), n - k)
            } else {
                g
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(m),
        }
    }

    /// Evaluates the symplectic Hodge identities on every basis form of every
    /// degree of the complex.
    pub fn check_operator_identities(&self) -> Result<IdentityReport> {
        let n = self.n();
        let symp = &self.symp;
        let d = |f: &Form| self.differential(f);
        let delta = |f: &Form| self.codifferential(f);
        let x = |f: &Form| symp.op_x(f);
        let y = |f: &Form| symp.op_y(f);
        let h = |f: &Form| symp.op_h(f);
        let two = int(2);

        let mut report = IdentityReport::new();
        for k in 0..=2 * n {
            for (idx, b) in self.complex.basis(k).iter().enumerate() {
                let at = (k, idx);
                report.record(Identity::StarSquared, at, diff(&symp.star(&symp.star(b)?)?, b));
                report.record(Identity::DeltaSquared, at, delta(&delta(b)?)?);
                report.record(Identity::XyIsH, at, diff(&sub(&x(&y(b))?, &y(&x(b)?)), &h(b)));
                report.record(Identity::HxIsTwoX, at, diff(&sub(&h(&x(b)?), &x(&h(b))?), &x(b)?.scale(&two)));
                report.record(Identity::HyIsMinusTwoY, at, sum(&sub(&h(&y(b)), &y(&h(b))), &y(b).scale(&two)));
                report.record(Identity::YdCommute, at, sub(&y(&d(b)), &d(&y(b))));
                report.record(Identity::XdeltaCommute, at, sub(&x(&delta(b)?)?, &delta(&x(b)?)?));
                report.record(Identity::XdIsMinusDelta, at, sum(&sub(&x(&d(b))?, &d(&x(b)?)), &delta(b)?));
                report.record(Identity::YdeltaIsMinusD, at, sum(&sub(&y(&delta(b)?), &delta(&y(b))?), &d(b)));
                let hd = sub(&h(&d(b)), &d(&h(b)));
                let hdelta = sub(&h(&delta(b)?), &delta(&h(b))?);
                report.record(Identity::HdCommute, at, hd.clone());
                report.record(Identity::HdeltaCommute, at, hdelta.clone());
                report.record(Identity::HdIsMinusD, at, sum(&hd, &d(b)));
                report.record(Identity::HdeltaIsDelta, at, diff(&hdelta, &delta(b)?));
            }
        }
        Ok(report)
    }
}

fn sub(a: &Form, b: &Form) -> Form { a - b }

fn diff(a: &Form, b: &Form) -> Form { a - b }

fn sum(a: &Form, b: &Form) -> Form { a + b }

/// The identities checked by [`SymplecticComplex::check_operator_identities`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    StarSquared,
    DeltaSquared,
    XyIsH,
    HxIsTwoX,
    HyIsMinusTwoY,
    YdCommute,
    XdeltaCommute,
    XdIsMinusDelta,
    YdeltaIsMinusD,
    /// `[H, d] = 0` as literally stated alongside the other commutators.
    HdCommute,
    /// `[H, δ] = 0` as literally stated alongside the other commutators.
    HdeltaCommute,
    /// `[H, d] = -d`: `d` raises degree by one, so it has `H`-weight `-1`.
    HdIsMinusD,
    /// `[H, δ] = δ`.
    HdeltaIsDelta,
}

impl Identity {
    pub const ALL: [Identity; 13] = [
        Identity::StarSquared,
        Identity::DeltaSquared,
        Identity::XyIsH,
        Identity::HxIsTwoX,
        Identity::HyIsMinusTwoY,
        Identity::YdCommute,
        Identity::XdeltaCommute,
        Identity::XdIsMinusDelta,
        Identity::YdeltaIsMinusD,
        Identity::HdCommute,
        Identity::HdeltaCommute,
        Identity::HdIsMinusD,
        Identity::HdeltaIsDelta,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::StarSquared => "star^2 = id",
            Identity::DeltaSquared => "delta^2 = 0",
            Identity::XyIsH => "[X,Y] = H",
            Identity::HxIsTwoX => "[H,X] = 2X",
            Identity::HyIsMinusTwoY => "[H,Y] = -2Y",
            Identity::YdCommute => "[Y,d] = 0",
            Identity::XdeltaCommute => "[X,delta] = 0",
            Identity::XdIsMinusDelta => "[X,d] = -delta",
            Identity::YdeltaIsMinusD => "[Y,delta] = -d",
            Identity::HdCommute => "[H,d] = 0",
            Identity::HdeltaCommute => "[H,delta] = 0",
            Identity::HdIsMinusD => "[H,d] = -d",
            Identity::HdeltaIsDelta => "[H,delta] = delta",
        }
    }

    /// Whether the identity follows from the definitions of `d`, `δ`, `X`,
    /// `Y`, `H`. `[H,d] = 0` and `[H,δ] = 0` do not: with `H = n - k`,
    /// `[H,Y] = -2Y` forces `[H,d] = -d`, so they hold only when `d = 0`.
    pub fn is_structural(self) -> bool { !matches!(self, Identity::HdCommute | Identity::HdeltaCommute) }
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    evaluated: std::collections::BTreeMap<Identity, usize>,
    /// `(degree, basis index)` of every failing evaluation.
    failures: std::collections::BTreeMap<Identity, Vec<(usize, usize)>>,
}

impl IdentityReport {
    fn new() -> Self { Self::default() }

    fn record(&mut self, id: Identity, at: (usize, usize), residual: Form) {
        *self.evaluated.entry(id).or_default() += 1;
        if !residual.is_zero() {
            self.failures.entry(id).or_default().push(at);
        }
    }

    pub fn passes(&self, id: Identity) -> bool { !self.failures.contains_key(&id) }

    pub fn evaluated(&self, id: Identity) -> usize { self.evaluated.get(&id).copied().unwrap_or(0) }

    pub fn failures(&self, id: Identity) -> &[(usize, usize)] {
        self.failures.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_pass(&self) -> bool { self.failures.is_empty() }

    pub fn failed(&self) -> Vec<Identity> { self.failures.keys().copied().collect() }

    /// Errors if any structural identity fails.
    pub fn ensure_structural(&self) -> Result<()> {
        match self.failures.keys().find(|id| id.is_structural()) {
            None => Ok(()),
            Some(id) => Err(ShlError::IdentityViolated(format!(
                "{} fails at (degree, index) {:?}",
                id.label(),
                self.failures(*id)
            ))),
        }
    }
}
