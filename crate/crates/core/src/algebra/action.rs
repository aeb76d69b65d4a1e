use serde::Serialize;

use super::abelian::AbelianGroup;
use super::nilpotent::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::Fq;

/// Left and right actions of `H` on `J`, one matrix per ambient cyclic
/// generator. Matrices act on column coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HAction {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl HAction {
    pub fn trivial(generators: usize, dim: usize) -> Self {
        HAction {
            left: vec![Matrix::identity(dim); generators],
            right: vec![Matrix::identity(dim); generators],
        }
    }

    /// Per-element matrices `x -> hx` and `x -> xh` for every element of `h`.
    pub fn expand(&self, field: &Fq, h: &AbelianGroup, dim: usize) -> ActionTables {
        let build = |gens: &[Matrix]| -> Vec<Matrix> {
            h.elements()
                .iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .fold(Matrix::identity(dim), |acc, (i, &k)| {
                            if k == 0 {
                                acc
                            } else {
                                acc.mul(field, &gens[i].pow(field, k as u64))
                            }
                        })
                })
                .collect()
        };
        ActionTables {
            left: build(&self.left),
            right: build(&self.right),
        }
    }
}

/// The actions of every element of `H`, indexed like the elements of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTables {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Associativity {
        i: usize,
        j: usize,
        k: usize,
    },
    NotNilpotent,
    CharacteristicDividesOrder {
        p: u32,
        order: usize,
    },
    Shape {
        message: String,
    },
    NotInvertible {
        side: Side,
        generator: usize,
    },
    GeneratorOrder {
        side: Side,
        generator: usize,
        order: u32,
    },
    NotHomomorphism {
        side: Side,
        a: usize,
        b: usize,
    },
    SidesDoNotCommute {
        a: usize,
        b: usize,
    },
    /// `axiom` is one of `h(xy)=(hx)y`, `(xy)h=x(yh)`, `x(hy)=(xh)y`.
    ActionAxiom {
        axiom: &'static str,
        h: usize,
        i: usize,
        j: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Every violated structural axiom, or an empty list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub nilpotency_index: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// The first violation as an error; the characteristic hypothesis is
    /// reported as such.
    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(Violation::CharacteristicDividesOrder { p, order }) => Err(Error::Hypothesis(
                format!("char k divides |H|: p = {p} divides {order}"),
            )),
            Some(v) => Err(Error::Validation(format!(
                "{v:?} ({} violations in total)",
                self.violations.len()
            ))),
        }
    }
}

/// Checks associativity, nilpotency, `p` not dividing `|H|`, and all action
/// axioms (including the composite elements of `H`).
pub fn validate_structure(
    algebra: &NilpotentAlgebra,
    h: &AbelianGroup,
    action: &HAction,
) -> ValidationReport {
    let field = algebra.field();
    let d = algebra.dim();
    let mut violations = Vec::new();
    let r = h.orders().len();
    let shape_ok = action.left.len() == r
        && action.right.len() == r
        && action
            .left
            .iter()
            .chain(&action.right)
            .all(|m| m.rows() == d && m.cols() == d);
    if !shape_ok {
        violations.push(Violation::Shape {
            message: format!("expected {r} left and {r} right matrices of size {d}x{d}"),
        });
    }
    violations.extend(algebra_violations(algebra, h, field.p()));
    let nilpotency_index = algebra.nilpotency_index();
    if !shape_ok {
        return ValidationReport {
            violations,
            nilpotency_index,
        };
    }
    for (side, gens) in [(Side::Left, &action.left), (Side::Right, &action.right)] {
        for (i, m) in gens.iter().enumerate() {
            if m.rank(field) < d {
                violations.push(Violation::NotInvertible { side, generator: i });
            } else if !m.pow(field, h.orders()[i] as u64).is_identity() {
                violations.push(Violation::GeneratorOrder {
                    side,
                    generator: i,
                    order: h.orders()[i],
                });
            }
        }
    }
    let tables = action.expand(field, h, d);
    violations.extend(table_violations(algebra, h, &tables));
    ValidationReport {
        violations,
        nilpotency_index,
    }
}

fn algebra_violations(algebra: &NilpotentAlgebra, h: &AbelianGroup, p: u32) -> Vec<Violation> {
    let mut out: Vec<Violation> = algebra
        .associativity_violations()
        .into_iter()
        .map(|(i, j, k)| Violation::Associativity { i, j, k })
        .collect();
    if algebra.nilpotency_index().is_none() {
        out.push(Violation::NotNilpotent);
    }
    if h.order() % p as usize == 0 {
        out.push(Violation::CharacteristicDividesOrder {
            p,
            order: h.order(),
        });
    }
    out
}

/// Validation of per-element action tables (used for subgroups, whose
/// actions are inherited rather than given by generators).
pub fn validate_tables(
    algebra: &NilpotentAlgebra,
    h: &AbelianGroup,
    tables: &ActionTables,
) -> ValidationReport {
    let mut violations = algebra_violations(algebra, h, algebra.field().p());
    violations.extend(table_violations(algebra, h, tables));
    ValidationReport {
        violations,
        nilpotency_index: algebra.nilpotency_index(),
    }
}

fn table_violations(
    algebra: &NilpotentAlgebra,
    h: &AbelianGroup,
    tables: &ActionTables,
) -> Vec<Violation> {
    let f = algebra.field();
    let d = algebra.dim();
    let mut out = Vec::new();
    let gens = h.generator_indices();
    for a in 0..h.order() {
        for &b in &gens {
            let ab = h.mul(a, b);
            if tables.left[ab] != tables.left[a].mul(f, &tables.left[b]) {
                out.push(Violation::NotHomomorphism {
                    side: Side::Left,
                    a,
                    b,
                });
            }
            if tables.right[ab] != tables.right[b].mul(f, &tables.right[a]) {
                out.push(Violation::NotHomomorphism {
                    side: Side::Right,
                    a,
                    b,
                });
            }
            if tables.left[a].mul(f, &tables.right[b]) != tables.right[b].mul(f, &tables.left[a]) {
                out.push(Violation::SidesDoNotCommute { a, b });
            }
        }
    }
    for hh in 0..h.order() {
        let (l, r) = (&tables.left[hh], &tables.right[hh]);
        for i in 0..d {
            let ui = algebra.basis_vector(i);
            for j in 0..d {
                let uj = algebra.basis_vector(j);
                let uij = algebra.basis_product(i, j);
                if l.apply(f, uij) != algebra.mul(&l.apply(f, &ui), &uj) {
                    out.push(Violation::ActionAxiom {
                        axiom: "h(xy)=(hx)y",
                        h: hh,
                        i,
                        j,
                    });
                }
                if r.apply(f, uij) != algebra.mul(&ui, &r.apply(f, &uj)) {
                    out.push(Violation::ActionAxiom {
                        axiom: "(xy)h=x(yh)",
                        h: hh,
                        i,
                        j,
                    });
                }
                if algebra.mul(&ui, &l.apply(f, &uj)) != algebra.mul(&r.apply(f, &ui), &uj) {
                    out.push(Violation::ActionAxiom {
                        axiom: "x(hy)=(xh)y",
                        h: hh,
                        i,
                        j,
                    });
                }
            }
        }
    }
    out
}

/// Restrict per-element tables of `h` to the subset `members`, expressed in
/// the coordinates of the invariant subspace with the given basis.
pub fn restrict_tables(
    field: &Fq,
    tables: &ActionTables,
    members: &[usize],
    basis: &[linalg::Vector],
) -> Option<ActionTables> {
    let k = basis.len();
    let restrict = |m: &Matrix| -> Option<Matrix> {
        let cols: Option<Vec<_>> = basis
            .iter()
            .map(|b| linalg::coordinates(field, basis, &m.apply(field, b)))
            .collect();
        Some(Matrix::from_columns(k, &cols?))
    };
    let left: Option<Vec<_>> = members.iter().map(|&i| restrict(&tables.left[i])).collect();
    let right: Option<Vec<_>> = members
        .iter()
        .map(|&i| restrict(&tables.right[i]))
        .collect();
    Some(ActionTables {
        left: left?,
        right: right?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FieldSpec, FqElem};
    use std::sync::Arc;

    #[test]
    fn ut3_is_valid() {
        let f = Arc::new(Fq::new(FieldSpec::prime(2).unwrap()).unwrap());
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f, 3);
        let h = AbelianGroup::full(&[]).unwrap();
        let report = validate_structure(&j, &h, &HAction::trivial(0, 3));
        assert!(report.is_valid());
        assert_eq!(report.nilpotency_index, Some(3));
    }

    #[test]
    fn characteristic_hypothesis() {
        let f = Arc::new(Fq::new(FieldSpec::prime(2).unwrap()).unwrap());
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f, 2);
        let h = AbelianGroup::full(&[2]).unwrap();
        let report = validate_structure(&j, &h, &HAction::trivial(1, 1));
        assert!(report
            .violations
            .contains(&Violation::CharacteristicDividesOrder { p: 2, order: 2 }));
        match report.into_result() {
            Err(Error::Hypothesis(m)) => assert!(m.contains("char k divides |H|")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_action_reported() {
        // x -> 2x on the left of UT(3,3) acting only on the first basis vector
        let f = Arc::new(Fq::new(FieldSpec::prime(3).unwrap()).unwrap());
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f.clone(), 3);
        let h = AbelianGroup::full(&[2]).unwrap();
        let mut l = Matrix::identity(3);
        l.set(0, 0, FqElem(2));
        let action = HAction {
            left: vec![l],
            right: vec![Matrix::identity(3)],
        };
        let report = validate_structure(&j, &h, &action);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ActionAxiom { .. })));
    }
}
