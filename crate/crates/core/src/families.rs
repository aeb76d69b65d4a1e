//! Built-in families: `UT(n, q)`, `T(n, q)` and the affine group of `F_q`.

use std::sync::Arc;

use crate::algebra::{AbelianGroup, HAction, NilpotentAlgebra};
use crate::error::{Error, Result};
use crate::group::TriangularGroup;
use crate::linalg::Matrix;
use crate::scalars::{FieldSpec, Fq};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Unitriangular matrices: `H` trivial, `J` strictly upper triangular.
    Ut,
    /// Invertible upper triangular matrices: `H` the diagonal torus.
    T,
    /// `[[a, b], [0, 1]]` with `a != 0`.
    Affine,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "ut" => Ok(Family::Ut),
            "t" => Ok(Family::T),
            "affine" => Ok(Family::Affine),
            other => Err(Error::Usage(format!(
                "unknown family {other:?}; expected ut, t or affine"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ut => "ut",
            Family::T => "t",
            Family::Affine => "affine",
        }
    }
}

/// The raw data of a group of triangular type.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub algebra: NilpotentAlgebra,
    pub h: AbelianGroup,
    pub action: HAction,
    /// Human-readable names of the basis of `J`.
    pub labels: Vec<String>,
}

impl GroupData {
    pub fn build(self) -> Result<TriangularGroup> {
        TriangularGroup::new(self.algebra, self.h, &self.action)
    }
}

/// `n` is ignored for the affine family.
pub fn builtin_family(family: Family, n: usize, q: u32) -> Result<GroupData> {
    let field = Arc::new(Fq::new(FieldSpec::builtin(q)?)?);
    if family != Family::Affine && n < 2 {
        return Err(Error::Usage(format!(
            "family {} needs n >= 2, got {n}",
            family.name()
        )));
    }
    match family {
        Family::Ut => {
            let (algebra, labels) = NilpotentAlgebra::strictly_upper_triangular(field, n);
            let d = algebra.dim();
            Ok(GroupData {
                algebra,
                h: AbelianGroup::full(&[])?,
                action: HAction::trivial(0, d),
                labels: matrix_labels(&labels),
            })
        }
        Family::T => {
            let w = field.primitive_element();
            let (algebra, labels) = NilpotentAlgebra::strictly_upper_triangular(field, n);
            let d = algebra.dim();
            let diag = |pick: &dyn Fn(usize, usize) -> bool| {
                let mut m = Matrix::identity(d);
                for (k, &(i, j)) in labels.iter().enumerate() {
                    if pick(i, j) {
                        m.set(k, k, w);
                    }
                }
                m
            };
            let left = (0..n).map(|g| diag(&|i, _| i == g)).collect();
            let right = (0..n).map(|g| diag(&|_, j| j == g)).collect();
            Ok(GroupData {
                algebra,
                h: AbelianGroup::full(&vec![q - 1; n])?,
                action: HAction { left, right },
                labels: matrix_labels(&labels),
            })
        }
        Family::Affine => {
            let w = field.primitive_element();
            let algebra = NilpotentAlgebra::from_sparse(field, 1, &[])?;
            Ok(GroupData {
                algebra,
                h: AbelianGroup::full(&[q - 1])?,
                action: HAction {
                    left: vec![Matrix::from_rows(&[vec![w]])],
                    right: vec![Matrix::identity(1)],
                },
                labels: vec!["b".into()],
            })
        }
    }
}

fn matrix_labels(labels: &[(usize, usize)]) -> Vec<String> {
    labels
        .iter()
        .map(|&(i, j)| format!("x{}{}", i + 1, j + 1))
        .collect()
}

/// Shorthand for tests and examples.
pub fn ut(n: usize, q: u32) -> Result<TriangularGroup> {
    builtin_family(Family::Ut, n, q)?.build()
}

pub fn t(n: usize, q: u32) -> Result<TriangularGroup> {
    builtin_family(Family::T, n, q)?.build()
}

pub fn affine(q: u32) -> Result<TriangularGroup> {
    builtin_family(Family::Affine, 2, q)?.build()
}
