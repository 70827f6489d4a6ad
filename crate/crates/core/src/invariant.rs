//! Finite linear group actions and their invariant subcomplexes.
//!
//! A finite group `G ⊂ GL(m, ℚ)` acting on the model by automorphisms acts on
//! forms by pullback. Averaging over `G` (possible since `|G|` is invertible
//! in ℚ) projects onto the invariant forms, which form a subcomplex. This is
//! the one-chart model of an orbifold quotient.

use std::collections::HashSet;

use num_traits::Zero;

use crate::complex::{CochainComplex, LieModel};
use crate::error::{Result, ShlError};
use crate::exterior::{binomial, blades, pullback_unchecked, Form};
use crate::linalg::Matrix;
use crate::scalar::{int, Scalar};

pub const DEFAULT_MAX_GROUP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GroupAction {
    dim: usize,
    generators: Vec<Matrix>,
    /// Identity first, then in order of discovery.
    elements: Vec<Matrix>,
}

/// Closes `generators` under multiplication, failing once more than `bound`
/// elements have been found.
pub fn close_group(dim: usize, generators: Vec<Matrix>, bound: usize) -> Result<GroupAction> {
    for (i, g) in generators.iter().enumerate() {
        if g.rows() != dim || g.cols() != dim {
            return Err(ShlError::BadGroup(format!("generator {} is not {dim}x{dim}", i + 1)));
        }
        if g.determinant().is_zero() {
            return Err(ShlError::BadGroup(format!("generator {} is singular", i + 1)));
        }
    }
    let id = Matrix::identity(dim);
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut next = 0;
    // In a finite group, closure under products with generators already
    // contains all inverses.
    while next < elements.len() {
        let x = elements[next].clone();
        next += 1;
        for g in &generators {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if elements.len() >= bound {
                    return Err(ShlError::GroupTooLarge { bound });
                }
                elements.push(y);
            }
        }
    }
    Ok(GroupAction { dim, generators, elements })
}

impl GroupAction {
    pub fn trivial(dim: usize) -> Self {
        GroupAction { dim, generators: Vec::new(), elements: vec![Matrix::identity(dim)] }
    }

    pub fn dim(&self) -> usize { self.dim }

    pub fn order(&self) -> usize { self.elements.len() }

    pub fn generators(&self) -> &[Matrix] { &self.generators }

    pub fn elements(&self) -> &[Matrix] { &self.elements }

    /// `(1/|G|) Σ_g g^* ξ`.
    pub fn reynolds(&self, xi: &Form) -> Form {
        assert_eq!(xi.dim(), self.dim, "dimension mismatch");
        let mut out = Form::zero(self.dim, xi.degree());
        for g in &self.elements {
            out += &pullback_unchecked(g, xi);
        }
        out.scale(&int(self.order() as i64).recip())
    }

    /// Matrix of the Reynolds operator on degree `k`.
    pub fn reynolds_matrix(&self, k: usize) -> Matrix {
        let rows = binomial(self.dim, k);
        let cols: Vec<Vec<Scalar>> = blades(self.dim, k)
            .into_iter()
            .map(|b| {
                let f = self.reynolds(&Form::basis(self.dim, b));
                if f.is_zero() {
                    vec![Scalar::zero(); rows]
                } else {
                    f.to_coords()
                }
            })
            .collect();
        Matrix::from_columns(rows, &cols)
    }

    /// Errors naming the first generator (1-based) whose pullback does not
    /// commute with the model differential on the generators `e^k`.
    pub fn ensure_automorphisms(&self, model: &LieModel) -> Result<()> {
        if model.dim() != self.dim {
            return Err(ShlError::DimensionMismatch { expected: model.dim(), found: self.dim });
        }
        for (i, g) in self.generators.iter().enumerate() {
            for k in 0..self.dim {
                let ek = Form::basis_from(self.dim, &[k]);
                let lhs = pullback_unchecked(g, &model.differential(&ek));
                let rhs = model.differential(&pullback_unchecked(g, &ek));
                if lhs != rhs {
                    return Err(ShlError::NotAutomorphism { generator: i + 1 });
                }
            }
        }
        Ok(())
    }

    pub fn preserves(&self, xi: &Form) -> bool { self.generators.iter().all(|g| &pullback_unchecked(g, xi) == xi) }

    /// `R² = R` on every degree.
    pub fn reynolds_is_idempotent(&self) -> bool {
        (0..=self.dim).all(|k| {
            let r = self.reynolds_matrix(k);
            &r * &r == r
        })
    }

    /// `R d = d R` on every basis form.
    pub fn reynolds_commutes_with(&self, model: &LieModel) -> bool {
        (0..=self.dim).all(|k| {
            blades(self.dim, k).into_iter().all(|b| {
                let f = Form::basis(self.dim, b);
                self.reynolds(&model.differential(&f)) == model.differential(&self.reynolds(&f))
            })
        })
    }
}

/// The subcomplex of `G`-invariant forms, built from the images of the
/// Reynolds projectors.
pub fn invariant_complex(model: LieModel, action: &GroupAction) -> Result<CochainComplex> {
    action.ensure_automorphisms(&model)?;
    let pieces = (0..=model.dim())
        .map(|k| {
            let r = action.reynolds_matrix(k);
            let pivots = r.echelon().pivots().to_vec();
            r.select_columns(&pivots)
        })
        .collect();
    CochainComplex::from_pieces(model, pieces)
}
