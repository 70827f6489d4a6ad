//! Lefschetz maps on cohomology, harmonic representability, and
//! constructive harmonization.
//!
//! Two conditions are computed independently on a [`SymplecticComplex`]:
//!
//! * every `L^k : H^{n-k} → H^{n+k}`, `L[ξ] = [ω ∧ ξ]`, is surjective;
//! * every class in every degree has a `d`- and `δ`-closed representative.
//!
//! They are expected to agree. [`equivalence_check`] treats a
//! disagreement as a hard error, never as a result.

use num_traits::Zero;

use crate::error::{Result, ShlError};
use crate::exterior::{binomial, Form};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::symplectic::SymplecticComplex;

/// Matrix of `L^k : H^{n-k} → H^{n+k}` in the cohomology bases of the complex.
pub fn lefschetz_power(sc: &SymplecticComplex, k: usize) -> Result<Matrix> {
    let n = sc.n();
    assert!(k <= n, "L^{k} needs k <= n = {n}");
    let cx = sc.complex();
    let source = cx.cohomology(n - k);
    let target = cx.cohomology(n + k);
    let cols = source
        .representatives()
        .iter()
        .map(|r| target.class_coords(&sc.symplectic().y_power(r, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(target.dim(), &cols))
}

/// Whether the harmonic forms of degree `j` reach every class of `H^j`.
pub fn harmonic_representability(sc: &SymplecticComplex, j: usize) -> Result<bool> {
    Ok(representability(sc, j)?.representable)
}

fn representability(sc: &SymplecticComplex, j: usize) -> Result<Representability> {
    let h = sc.complex().cohomology(j);
    let harmonic = sc.harmonic_basis(j);
    let cols = harmonic.iter().map(|f| h.class_coords(f)).collect::<Result<Vec<_>>>()?;
    let image_rank = Matrix::from_columns(h.dim(), &cols).rank();
    Ok(Representability {
        degree: j,
        betti: h.dim(),
        harmonic_dim: harmonic.len(),
        image_rank,
        representable: image_rank == h.dim(),
    })
}

#[derive(Clone, Debug)]
pub struct LefschetzLevel {
    pub k: usize,
    pub from_degree: usize,
    pub to_degree: usize,
    pub matrix: Matrix,
    pub rank: usize,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representability {
    pub degree: usize,
    pub betti: usize,
    pub harmonic_dim: usize,
    /// Rank of the harmonic forms' image in `H^degree`.
    pub image_rank: usize,
    pub representable: bool,
}

#[derive(Clone, Debug)]
pub struct LefschetzReport {
    pub n: usize,
    /// `k = 0..=n`.
    pub levels: Vec<LefschetzLevel>,
    /// Degrees `0..=2n`.
    pub degrees: Vec<Representability>,
}

impl LefschetzReport {
    /// Computes both sides without comparing them.
    pub fn compute(sc: &SymplecticComplex) -> Result<Self> {
        let n = sc.n();
        let levels = (0..=n)
            .map(|k| {
                let matrix = lefschetz_power(sc, k)?;
                let rank = matrix.rank();
                Ok(LefschetzLevel {
                    k,
                    from_degree: n - k,
                    to_degree: n + k,
                    surjective: rank == matrix.rows(),
                    rank,
                    matrix,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let degrees = (0..=2 * n).map(|j| representability(sc, j)).collect::<Result<Vec<_>>>()?;
        Ok(LefschetzReport { n, levels, degrees })
    }

    /// All `L^k` surjective.
    pub fn lefschetz_side(&self) -> bool { self.levels.iter().all(|l| l.surjective) }

    /// All degrees harmonically representable.
    pub fn harmonic_side(&self) -> bool { self.degrees.iter().all(|d| d.representable) }

    pub fn agree(&self) -> bool { self.lefschetz_side() == self.harmonic_side() }

    pub fn failing_levels(&self) -> Vec<usize> { self.levels.iter().filter(|l| !l.surjective).map(|l| l.k).collect() }

    pub fn failing_degrees(&self) -> Vec<usize> {
        self.degrees.iter().filter(|d| !d.representable).map(|d| d.degree).collect()
    }
}

/// Both sides of the equivalence, with disagreement reported as an error.
pub fn equivalence_check(sc: &SymplecticComplex) -> Result<LefschetzReport> {
    let report = LefschetzReport::compute(sc)?;
    if !report.agree() {
        let levels: Vec<String> = report
            .levels
            .iter()
            .map(|l| format!("L^{}: H^{} -> H^{} rank {}/{}", l.k, l.from_degree, l.to_degree, l.rank, l.matrix.rows()))
            .collect();
        let degrees: Vec<String> = report
            .degrees
            .iter()
            .map(|d| format!("H^{}: harmonic image {}/{}", d.degree, d.image_rank, d.betti))
            .collect();
        return Err(ShlError::EquivalenceViolated(format!(
            "lefschetz side {} but harmonic side {}; {}; {}",
            report.lefschetz_side(),
            report.harmonic_side(),
            levels.join(", "),
            degrees.join(", ")
        )));
    }
    Ok(report)
}

/// For harmonic `h` of degree `n-k`: `[ω^k ∧ h] = L^k [h]`.
pub fn diagram_commutes(sc: &SymplecticComplex, k: usize) -> Result<bool> {
    let n = sc.n();
    let lk = lefschetz_power(sc, k)?;
    let source = sc.complex().cohomology(n - k);
    let target = sc.complex().cohomology(n + k);
    for h in sc.harmonic_basis(n - k) {
        let lhs = target.class_coords(&sc.symplectic().y_power(h, k))?;
        let rhs = lk.mul_vec(&source.class_coords(h)?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A harmonic form cohomologous to the closed form `xi`.
///
/// Degrees 0 and 1 are returned as given (closed forms there are already
/// harmonic). In degree `j = n - k ≥ 2`, closed `η` and `θ` with
/// `ω^{k+2} ∧ η + dθ = ω^{k+1} ∧ ξ` are found in one linear system; then
/// `η = η̄ + dλ` with `η̄` harmonized recursively, `ω^{k+1} ∧ ζ = θ`, and the
/// answer is `ξ - d(ζ + ω ∧ λ)`. Above the middle degree, `ξ` is pulled
/// back to a class `[β]` with `L^s [β] = [ξ]` and the answer is `ω^s ∧ β̄`.
///
/// The surjectivity of every `L` power the recursion needs is checked before
/// any work is done; the postconditions are checked before returning.
pub fn harmonize(sc: &SymplecticComplex, xi: &Form) -> Result<Form> {
    let cx = sc.complex();
    let j = xi.degree();
    if xi.dim() != sc.dim() {
        return Err(ShlError::DimensionMismatch { expected: sc.dim(), found: xi.dim() });
    }
    if j > cx.top_degree() || !cx.contains(xi) {
        return Err(ShlError::NotInSubcomplex);
    }
    if !sc.differential(xi).is_zero() {
        return Err(ShlError::NotClosed);
    }
    check_hypotheses(sc, j)?;
    let out = harmonize_rec(sc, xi)?;
    verify_harmonic(sc, xi, &out)?;
    Ok(out)
}

/// `L^k` levels visited when harmonizing in degree `j`, as
/// `(k, source degree, target degree)`.
pub fn required_levels(n: usize, j: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut j = j;
    if j > n {
        let s = j - n;
        out.push((s, n - s, n + s));
        j = n - s;
    }
    while j >= 2 {
        let k = n - j;
        out.push((k + 2, j - 2, n + k + 2));
        j -= 2;
    }
    out
}

fn check_hypotheses(sc: &SymplecticComplex, j: usize) -> Result<()> {
    for (k, from, to) in required_levels(sc.n(), j) {
        let m = lefschetz_power(sc, k)?;
        if m.rank() != m.rows() {
            return Err(ShlError::HypothesisViolated { k, from_degree: from, to_degree: to });
        }
    }
    Ok(())
}

fn harmonize_rec(sc: &SymplecticComplex, xi: &Form) -> Result<Form> {
    let n = sc.n();
    let j = xi.degree();
    let m = sc.dim();
    let symp = sc.symplectic();
    let cx = sc.complex();
    if xi.is_zero() || j < 2 {
        return Ok(xi.clone());
    }
    if j > n {
        let s = j - n;
        let coords = cx.cohomology(j).class_coords(xi)?;
        let a = lefschetz_power(sc, s)?.echelon().solve(&coords).ok_or(ShlError::NoSolution)?;
        let beta = cx.cohomology(n - s).form_from_coords(&a);
        let beta = if beta.is_zero() { Form::zero(m, n - s) } else { beta };
        return Ok(symp.y_power(&harmonize_rec(sc, &beta)?, s));
    }
    let k = n - j;
    // (a) ω^{k+2} ∧ η + dθ = ω^{k+1} ∧ ξ with η closed of degree j-2.
    let closed = closed_basis(sc, j - 2);
    let theta_basis = cx.basis(n + k + 1);
    let target_degree = n + k + 2;
    let rows = binomial(m, target_degree);
    let mut cols: Vec<Vec<Scalar>> = closed.iter().map(|z| pad(&symp.y_power(z, k + 2), rows)).collect();
    cols.extend(theta_basis.iter().map(|b| pad(&sc.differential(b), rows)));
    let rhs = pad(&symp.y_power(xi, k + 1), rows);
    let sol = Matrix::from_columns(rows, &cols).echelon().solve(&rhs).ok_or(ShlError::NoSolution)?;
    let (ceta, ctheta) = sol.split_at(closed.len());
    let eta = combine(m, j - 2, ceta, &closed);
    let theta = combine(m, n + k + 1, ctheta, &theta_basis);
    // (b) η = η̄ + dλ.
    let eta_bar = harmonize_rec(sc, &eta)?;
    let lambda = if j - 2 == 0 { Form::zero(m, 0) } else { cx.solve_d(&(&eta - &eta_bar))? };
    // (c) ω^{k+1} ∧ ζ = θ.
    let zeta_basis = cx.basis(j - 1);
    let rows = binomial(m, n + k + 1);
    let zcols: Vec<Vec<Scalar>> = zeta_basis.iter().map(|b| pad(&symp.y_power(b, k + 1), rows)).collect();
    let cz = Matrix::from_columns(rows, &zcols).echelon().solve(&pad(&theta, rows)).ok_or(ShlError::NoSolution)?;
    let zeta = combine(m, j - 1, &cz, &zeta_basis);
    // (d)
    let correction = if j - 2 == 0 { zeta } else { &zeta + &symp.op_y(&lambda) };
    Ok(xi - &sc.differential(&correction))
}

fn verify_harmonic(sc: &SymplecticComplex, xi: &Form, out: &Form) -> Result<()> {
    if !sc.differential(out).is_zero() {
        return Err(ShlError::IdentityViolated("harmonize produced a form that is not closed".into()));
    }
    if !sc.codifferential(out)?.is_zero() {
        return Err(ShlError::IdentityViolated("harmonize produced a form that is not co-closed".into()));
    }
    let diff = sc.complex().cohomology(xi.degree()).class_coords(&(xi - out))?;
    if diff.iter().any(|c| !c.is_zero()) {
        return Err(ShlError::IdentityViolated("harmonize changed the cohomology class".into()));
    }
    Ok(())
}

/// Basis of the closed forms in degree `k` of the complex.
pub fn closed_basis(sc: &SymplecticComplex, k: usize) -> Vec<Form> {
    let cx = sc.complex();
    cx.restricted_matrix(k, k + 1, |f| cx.differential(f)).kernel().iter().map(|c| cx.from_coords(k, c)).collect()
}

fn combine(m: usize, k: usize, coeffs: &[Scalar], basis: &[Form]) -> Form {
    let mut out = Form::zero(m, k);
    for (c, b) in coeffs.iter().zip(basis) {
        out += &b.scale(c);
    }
    out
}

fn pad(f: &Form, len: usize) -> Vec<Scalar> {
    if f.is_zero() {
        vec![Scalar::zero(); len]
    } else {
        f.to_coords()
    }
}
