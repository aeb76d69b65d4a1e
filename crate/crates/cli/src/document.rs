//! JSON input documents: a group of triangular type and a subgroup.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use trichar_core::algebra::{AbelianGroup, HAction, NilpotentAlgebra, ValidationReport};
use trichar_core::linalg::{Matrix, Vector};
use trichar_core::resind::SubgroupSpec;
use trichar_core::scalars::{FieldSpec, Fq, FqElem};
use trichar_core::{Error, Result};

/// A field element: a residue of the prime field or a coordinate list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldValue {
    Int(u32),
    Coords(Vec<u32>),
}

impl FieldValue {
    pub fn to_elem(&self, f: &Fq) -> Result<FqElem> {
        match self {
            FieldValue::Int(v) if *v < f.p() => Ok(f.from_int(*v as i64)),
            FieldValue::Int(v) => Err(Error::Validation(format!(
                "residue {v} is not below p = {}",
                f.p()
            ))),
            FieldValue::Coords(c) => f.from_coords(c),
        }
    }

    /// Residues for prime fields, coordinate lists otherwise.
    pub fn from_elem(f: &Fq, a: FqElem) -> Self {
        let c = f.coords(a);
        if c.len() == 1 {
            FieldValue::Int(c[0])
        } else {
            FieldValue::Coords(c)
        }
    }
}

pub fn vector_to_values(f: &Fq, v: &[FqElem]) -> Vec<FieldValue> {
    v.iter().map(|&a| FieldValue::from_elem(f, a)).collect()
}

fn values_to_vector(f: &Fq, v: &[FieldValue]) -> Result<Vector> {
    v.iter().map(|x| x.to_elem(f)).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u32,
    #[serde(default)]
    pub m: Option<u32>,
    /// Low degree first, monic.
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
}

impl FieldDoc {
    pub fn spec(&self) -> Result<FieldSpec> {
        match (&self.modulus, self.m) {
            (Some(modulus), m) => {
                if m.is_some_and(|m| m as usize + 1 != modulus.len()) {
                    return Err(Error::Validation(
                        "field.m disagrees with the modulus degree".into(),
                    ));
                }
                FieldSpec::new(self.p, modulus.clone())
            }
            (None, None | Some(1)) => FieldSpec::prime(self.p),
            (None, Some(m)) => {
                let q = self
                    .p
                    .checked_pow(m)
                    .ok_or_else(|| Error::Capability("field too large".into()))?;
                FieldSpec::builtin(q)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    /// Nonzero structure constants `(i, j, k, c)`: `u_i u_j` has `c` on `u_k`.
    #[serde(default)]
    pub structure: Vec<(usize, usize, usize, FieldValue)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HDoc {
    /// Orders of the cyclic factors.
    pub orders: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionsDoc {
    /// One `dim x dim` matrix (list of rows) per generator of `H`.
    pub left: Vec<Vec<Vec<FieldValue>>>,
    pub right: Vec<Vec<Vec<FieldValue>>>,
}

/// A group `G = H + J` given explicitly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub field: FieldDoc,
    pub algebra: AlgebraDoc,
    pub group: HDoc,
    pub actions: ActionsDoc,
}

/// Parsed but not yet validated group data.
pub struct RawGroup {
    pub algebra: NilpotentAlgebra,
    pub h: AbelianGroup,
    pub action: HAction,
}

impl RawGroup {
    pub fn validate(&self) -> ValidationReport {
        trichar_core::algebra::validate_structure(&self.algebra, &self.h, &self.action)
    }
}

impl GroupDocument {
    pub fn load(&self) -> Result<RawGroup> {
        let field = Arc::new(Fq::new(self.field.spec()?)?);
        let f = &*field;
        let d = self.algebra.dim;
        let entries = self
            .algebra
            .structure
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, c.to_elem(f)?)))
            .collect::<Result<Vec<_>>>()?;
        let algebra = NilpotentAlgebra::from_sparse(field.clone(), d, &entries)?;
        let h = AbelianGroup::full(&self.group.orders)?;
        let r = self.group.orders.len();
        let matrices = |side: &str, ms: &[Vec<Vec<FieldValue>>]| -> Result<Vec<Matrix>> {
            if ms.len() != r {
                return Err(Error::Validation(format!(
                    "actions.{side} has {} matrices for {r} generators",
                    ms.len()
                )));
            }
            ms.iter()
                .enumerate()
                .map(|(g, rows)| {
                    if rows.len() != d || rows.iter().any(|row| row.len() != d) {
                        return Err(Error::Validation(format!(
                            "actions.{side}[{g}] is not {d} x {d}"
                        )));
                    }
                    let rows = rows
                        .iter()
                        .map(|row| values_to_vector(f, row))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Matrix::from_rows(&rows))
                })
                .collect()
        };
        let action = HAction {
            left: matrices("left", &self.actions.left)?,
            right: matrices("right", &self.actions.right)?,
        };
        Ok(RawGroup { algebra, h, action })
    }
}

/// A subgroup `H' + J'`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDocument {
    #[serde(default)]
    pub h_generators: Vec<Vec<u32>>,
    pub j_basis: Vec<Vec<FieldValue>>,
}

impl SubgroupDocument {
    pub fn to_spec(&self, f: &Fq) -> Result<SubgroupSpec> {
        Ok(SubgroupSpec {
            h_generators: self.h_generators.clone(),
            j_basis: self
                .j_basis
                .iter()
                .map(|v| values_to_vector(f, v))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn from_spec(f: &Fq, spec: &SubgroupSpec) -> Self {
        SubgroupDocument {
            h_generators: spec.h_generators.clone(),
            j_basis: spec
                .j_basis
                .iter()
                .map(|v| vector_to_values(f, v))
                .collect(),
        }
    }
}
