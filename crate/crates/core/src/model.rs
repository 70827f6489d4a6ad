//! Model files and the built-in fixture catalog.
//!
//! A model file is JSON:
//!
//! ```text
//! {
//!   "name": "kodaira_thurston",
//!   "dim": 4,
//!   "brackets": [[1, 2, 4, "1"]],          // c^k_{ij} as [i, j, k, "p/q"], 1-based
//!   "omega": [[1, 3, "1"], [2, 4, "1"]],   // ω = Σ c e^{ij}, 1-based
//!   "group": [ [["-1","0"],["0","-1"]] ],  // optional generator matrices
//!   "foliation": {                          // optional
//!     "leaf_basis": [3],
//!     "metric": [["1","0"],["0","1"]],
//!     "chi_sign": 1
//!   }
//! }
//! ```
//!
//! Bracket entries with `i > j` are read as `c^k_{ji} = -c`; an entry given
//! twice must agree. `group` and `foliation` are mutually exclusive.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{CochainComplex, LieModel};
use crate::error::{Result, ShlError};
use crate::exterior::{Blade, Form};
use crate::foliated::{Foliation, FoliationSpec};
use crate::invariant::{close_group, invariant_complex, GroupAction};
use crate::linalg::Matrix;
use crate::scalar::{parse_scalar, Scalar};
use crate::symplectic::{SymplecticComplex, SymplecticData};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub omega: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationFile {
    pub leaf_basis: Vec<usize>,
    pub metric: Vec<Vec<String>>,
    pub chi_sign: i8,
}

/// A parsed model; structural checks beyond parsing happen in [`Model::check`].
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub lie: LieModel,
    pub omega: Form,
    pub group: Option<Vec<Matrix>>,
    pub foliation: Option<FoliationSpec>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ShlError::Parse(e.to_string()))
    }

    pub fn to_model(&self) -> Result<Model> {
        let m = self.dim;
        if m == 0 || m > 16 {
            return Err(ShlError::Parse(format!("dimension {m} outside 1..=16")));
        }
        if self.group.is_some() && self.foliation.is_some() {
            return Err(ShlError::Parse("a model cannot have both a group and a foliation".into()));
        }
        let one_based = |i: usize| {
            if i == 0 || i > m {
                Err(ShlError::Parse(format!("index {i} outside 1..={m}")))
            } else {
                Ok(i - 1)
            }
        };
        let brackets = self
            .brackets
            .iter()
            .map(|(i, j, k, c)| Ok((one_based(*i)?, one_based(*j)?, one_based(*k)?, parse_scalar(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let lie = LieModel::new(self.name.clone(), m, brackets)?;

        let mut coeffs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (i, j, c) in &self.omega {
            let (i, j, mut c) = (one_based(*i)?, one_based(*j)?, parse_scalar(c)?);
            if i == j {
                return Err(ShlError::Parse(format!("omega entry with repeated index {}", i + 1)));
            }
            let key = if i < j { (i, j) } else { (j, i) };
            if i > j {
                c = -c;
            }
            if let Some(prev) = coeffs.insert(key, c.clone()) {
                if prev != c {
                    return Err(ShlError::Parse(format!("conflicting omega entries for ({}, {})", key.0 + 1, key.1 + 1)));
                }
            }
        }
        let omega = Form::from_terms(
            m,
            2,
            coeffs.into_iter().map(|((i, j), c)| (Blade::from_indices([i, j]).expect("distinct"), c)),
        )?;

        let group = match &self.group {
            None => None,
            Some(gens) => Some(
                gens.iter()
                    .enumerate()
                    .map(|(g, rows)| {
                        parse_matrix(rows, m).map_err(|e| ShlError::BadGroup(format!("generator {}: {e}", g + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let foliation = match &self.foliation {
            None => None,
            Some(f) => Some(FoliationSpec {
                leaf: f.leaf_basis.iter().map(|&i| one_based(i)).collect::<Result<Vec<_>>>()?,
                metric: parse_matrix(&f.metric, m).map_err(|e| ShlError::BadFoliation(format!("metric: {e}")))?,
                chi_sign: f.chi_sign,
            }),
        };
        Ok(Model { name: self.name.clone(), lie, omega, group, foliation })
    }
}

fn parse_matrix(rows: &[Vec<String>], m: usize) -> std::result::Result<Matrix, String> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(format!("expected a {m}x{m} matrix"));
    }
    let data = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(s).map_err(|e| e.to_string())).collect())
        .collect::<std::result::Result<Vec<Vec<Scalar>>, String>>()?;
    Ok(Matrix::from_rows(data))
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self> { ModelFile::from_json(text)?.to_model() }

    pub fn dim(&self) -> usize { self.lie.dim() }

    /// Full validation: `d² = 0`, then the foliation block or the symplectic
    /// checks on the whole algebra, then the group block.
    pub fn check(&self, max_group: usize) -> Result<()> {
        self.lie.ensure_valid()?;
        if self.foliation.is_some() {
            self.foliation()?;
            return Ok(());
        }
        self.full_complex()?;
        if self.group.is_some() {
            self.group_action(max_group)?;
        }
        Ok(())
    }

    /// The whole algebra with `ω`; fails for foliated models, whose `ω` is
    /// degenerate.
    pub fn full_complex(&self) -> Result<SymplecticComplex> {
        if !self.lie.differential(&self.omega).is_zero() {
            return Err(ShlError::OmegaNotClosed);
        }
        SymplecticComplex::new(CochainComplex::full(self.lie.clone()), SymplecticData::new(&self.omega)?)
    }

    pub fn foliation(&self) -> Result<Option<Foliation>> {
        match &self.foliation {
            None => Ok(None),
            Some(spec) => Foliation::new(self.lie.clone(), &self.omega, spec).map(Some),
        }
    }

    /// The closed group, checked to act by automorphisms preserving `ω`.
    pub fn group_action(&self, max_group: usize) -> Result<Option<GroupAction>> {
        let Some(gens) = &self.group else { return Ok(None) };
        let action = close_group(self.dim(), gens.clone(), max_group)?;
        action.ensure_automorphisms(&self.lie)?;
        if !action.preserves(&self.omega) {
            return Err(ShlError::BadGroup("group does not preserve omega".into()));
        }
        Ok(Some(action))
    }

    /// Invariant forms with `ω`; the trivial group when no block is given,
    /// which for a foliated model means its basic complex.
    pub fn invariant_complex(&self, max_group: usize) -> Result<SymplecticComplex> {
        if self.group.is_none() && self.foliation.is_some() {
            return self.primary_complex();
        }
        let action = self.group_action(max_group)?.unwrap_or_else(|| GroupAction::trivial(self.dim()));
        let cx = invariant_complex(self.lie.clone(), &action)?;
        SymplecticComplex::new(cx, SymplecticData::new(&self.omega)?)
    }

    /// The complex a plain report analyzes: basic forms for foliated models,
    /// everything otherwise.
    pub fn primary_complex(&self) -> Result<SymplecticComplex> {
        match self.foliation()? {
            Some(f) => Ok(f.basic().clone()),
            None => self.full_complex(),
        }
    }
}

/// Built-in fixtures, in catalog order.
pub mod catalog {
    use super::*;

    pub const NAMES: [&str; 6] = ["torus4", "torus6", "kodaira_thurston", "heis_r2", "solv5", "torus4_z2"];

    /// Exact bytes of a fixture file.
    pub fn text(name: &str) -> Result<&'static str> {
        Ok(match name {
            "torus4" => include_str!("../fixtures/torus4.json"),
            "torus6" => include_str!("../fixtures/torus6.json"),
            "kodaira_thurston" => include_str!("../fixtures/kodaira_thurston.json"),
            "heis_r2" => include_str!("../fixtures/heis_r2.json"),
            "solv5" => include_str!("../fixtures/solv5.json"),
            "torus4_z2" => include_str!("../fixtures/torus4_z2.json"),
            _ => return Err(ShlError::UnknownFixture(name.to_string())),
        })
    }

    pub fn load(name: &str) -> Result<Model> { Model::from_json(text(name)?) }
}
