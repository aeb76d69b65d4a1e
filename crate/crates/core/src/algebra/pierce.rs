use super::abelian::AbelianGroup;
use super::action::{restrict_tables, ActionTables};
use super::group_algebra::{GroupAlgebraElem, Idempotent, IdempotentLattice};
use super::nilpotent::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

/// The Pierce decomposition of `J` for an idempotent `e`, with `e' = 1 - e`,
/// together with `H(e)` and the quotient `H_e = eH` acting on `J_e = eJe`.
#[derive(Debug, Clone)]
pub struct PierceData {
    pub e: Idempotent,
    pub e_j_e: Vec<Vector>,
    pub e_j_e1: Vec<Vector>,
    pub e1_j_e: Vec<Vector>,
    pub e1_j_e1: Vec<Vector>,
    /// `H(e) = {h : he = e}`.
    pub h_of_e: Vec<usize>,
    /// For each element of `H`, the index of its image `he` in `quotient_reps`.
    pub quotient_of: Vec<usize>,
    /// The least element of each coset of `H(e)`; these index `H_e`.
    pub quotient_reps: Vec<usize>,
    /// `J_e` in the coordinates of `e_j_e`.
    pub local: NilpotentAlgebra,
    /// Actions of `H_e` on `local`, indexed like `quotient_reps`.
    pub local_tables: ActionTables,
}

pub fn pierce(
    algebra: &NilpotentAlgebra,
    h: &AbelianGroup,
    tables: &ActionTables,
    lattice: &IdempotentLattice,
    e: &GroupAlgebraElem,
) -> Result<PierceData> {
    let f = algebra.field();
    let mask = lattice
        .locate(f, h, e)
        .ok_or_else(|| Error::Domain("element is not an idempotent of kH".into()))?;
    let d = algebra.dim();
    let e1 = GroupAlgebraElem::one(h).sub(f, e);
    let (le, re) = (e.left_matrix(f, tables, d), e.right_matrix(f, tables, d));
    let (le1, re1) = (e1.left_matrix(f, tables, d), e1.right_matrix(f, tables, d));
    let component = |l: &Matrix, r: &Matrix| l.mul(f, r).image(f);
    let e_j_e = component(&le, &re);
    let e_j_e1 = component(&le, &re1);
    let e1_j_e = component(&le1, &re);
    let e1_j_e1 = component(&le1, &re1);

    let h_of_e = lattice.stabilizer(mask);
    let mut quotient_of = vec![usize::MAX; h.order()];
    let mut quotient_reps = Vec::new();
    for g in 0..h.order() {
        if quotient_of[g] != usize::MAX {
            continue;
        }
        let class = quotient_reps.len();
        quotient_reps.push(g);
        for &k in &h_of_e {
            quotient_of[h.mul(g, k)] = class;
        }
    }
    // he must be a unit of eA e, with inverse h^{-1} e
    let ge = |g: usize| GroupAlgebraElem::basis(h, g).mul(f, h, e);
    for &g in &quotient_reps {
        if ge(g).mul(f, h, &ge(h.inv(g))) != *e {
            return Err(Error::Consistency(format!(
                "image of H element {g} is not invertible in eAe"
            )));
        }
    }
    let local = algebra.subalgebra(&e_j_e)?;
    let local_tables = restrict_tables(f, tables, &quotient_reps, &e_j_e)
        .ok_or_else(|| Error::Consistency("eJe is not H-invariant".into()))?;
    Ok(PierceData {
        e: mask,
        e_j_e,
        e_j_e1,
        e1_j_e,
        e1_j_e1,
        h_of_e,
        quotient_of,
        quotient_reps,
        local,
        local_tables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::action::HAction;
    use crate::algebra::group_algebra::primitive_idempotents;
    use crate::linalg::Matrix;
    use crate::scalars::{FieldSpec, Fq, FqElem};
    use std::sync::Arc;

    /// Upper triangular 2x2 over F_3: H = diagonal units, J = span(E_12).
    fn t23() -> (
        NilpotentAlgebra,
        AbelianGroup,
        ActionTables,
        IdempotentLattice,
    ) {
        let f = Arc::new(Fq::new(FieldSpec::prime(3).unwrap()).unwrap());
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f.clone(), 2);
        let h = AbelianGroup::full(&[2, 2]).unwrap();
        let two = Matrix::from_rows(&[vec![FqElem(2)]]);
        let one = Matrix::identity(1);
        let action = HAction {
            left: vec![two.clone(), one.clone()],
            right: vec![one, two],
        };
        let tables = action.expand(&f, &h, 1);
        let lat = primitive_idempotents(&f, &h).unwrap();
        (j, h, tables, lat)
    }

    #[test]
    fn extreme_idempotents() {
        let (j, h, tables, lat) = t23();
        let f = j.field().clone();
        let one = pierce(&j, &h, &tables, &lat, &GroupAlgebraElem::one(&h)).unwrap();
        assert_eq!(
            (
                one.e_j_e.len(),
                one.e_j_e1.len(),
                one.e1_j_e.len(),
                one.e1_j_e1.len()
            ),
            (1, 0, 0, 0)
        );
        assert_eq!(one.h_of_e, vec![0]);
        assert_eq!(one.quotient_reps.len(), 4);
        let zero = pierce(&j, &h, &tables, &lat, &GroupAlgebraElem::zero(&h)).unwrap();
        assert_eq!((zero.e_j_e.len(), zero.e1_j_e1.len()), (0, 1));
        assert_eq!(zero.h_of_e, vec![0, 1, 2, 3]);
        assert_eq!(zero.local.dim(), 0);
        // e0 = |H|^{-1} sum h, and |H| = 4 = 1 in F_3
        let e0 = GroupAlgebraElem {
            coeffs: vec![FqElem::ONE; 4],
        };
        assert!(e0.is_idempotent(&f, &h));
        let p = pierce(&j, &h, &tables, &lat, &e0).unwrap();
        assert_eq!(p.h_of_e, vec![0, 1, 2, 3]);
    }

    #[test]
    fn dimensions_and_kernel() {
        let (j, h, tables, lat) = t23();
        let f = j.field().clone();
        for e in lat.all() {
            let el = lat.element(&f, &h, e);
            let p = pierce(&j, &h, &tables, &lat, &el).unwrap();
            assert_eq!(
                p.e_j_e.len() + p.e_j_e1.len() + p.e1_j_e.len() + p.e1_j_e1.len(),
                j.dim()
            );
            assert_eq!(p.h_of_e.len() * p.quotient_reps.len(), h.order());
        }
        let bad = GroupAlgebraElem {
            coeffs: vec![FqElem(2), FqElem::ZERO, FqElem::ZERO, FqElem::ZERO],
        };
        assert!(matches!(
            pierce(&j, &h, &tables, &lat, &bad),
            Err(Error::Domain(_))
        ));
    }
}
