use std::collections::BTreeSet;

use crate::group::TriangularGroup;
use crate::linalg::{self, Vector};
use crate::scalars::FqElem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightStabilizers {
    /// Basis of `J_rt = {y : lambda(yJ) = 0}`.
    pub j_rt: Vec<Vector>,
    /// `{h : lambda(xh) = lambda(x) for all x}`.
    pub h_rt: Vec<usize>,
    /// `{h : lambda(hx) = lambda(x) for all x}`.
    pub h_lt: Vec<usize>,
}

/// Rows `r_j` with `r_j . y = lambda(y u_j)`; `J_rt` is their common kernel.
pub fn right_stabilizer_forms(group: &TriangularGroup, lambda: &[FqElem]) -> Vec<Vector> {
    let f = group.field();
    (0..group.dim())
        .map(|j| group.algebra().right_basis_matrix(j).apply_row(f, lambda))
        .collect()
}

pub fn right_stabilizers(group: &TriangularGroup, lambda: &[FqElem]) -> RightStabilizers {
    let f = group.field();
    let j_rt = linalg::nullspace(f, right_stabilizer_forms(group, lambda), group.dim());
    let tables = group.tables();
    let h_rt = (0..group.h().order())
        .filter(|&h| tables.right[h].apply_row(f, lambda) == lambda)
        .collect();
    let h_lt = (0..group.h().order())
        .filter(|&h| tables.left[h].apply_row(f, lambda) == lambda)
        .collect();
    RightStabilizers { j_rt, h_rt, h_lt }
}

/// Compares the annihilator of `J_rt` in `J^*` with `{y -> lambda(yx) : x in J}`,
/// the latter by enumerating all `x`.
pub fn perp_check(group: &TriangularGroup, lambda: &[FqElem]) -> bool {
    let f = group.field();
    let d = group.dim();
    let j_rt = right_stabilizers(group, lambda).j_rt;
    let annihilator = linalg::nullspace(f, j_rt, d);
    let lhs: BTreeSet<u64> = linalg::enumerate_span(f, &annihilator, d)
        .iter()
        .map(|v| group.encode(v))
        .collect();
    let rhs: BTreeSet<u64> = (0..group.space_size())
        .map(|c| {
            let x = group.decode(c);
            let form = group.algebra().right_mul_matrix(&x).apply_row(f, lambda);
            group.encode(&form)
        })
        .collect();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn zero_form() {
        let g = families::t(2, 3).unwrap();
        let s = right_stabilizers(&g, &[FqElem::ZERO]);
        assert_eq!(s.j_rt.len(), 1);
        assert_eq!(s.h_rt.len(), 4);
        assert_eq!(s.h_lt.len(), 4);
        assert!(perp_check(&g, &[FqElem::ZERO]));
    }

    #[test]
    fn dual_of_x13_brute_force() {
        let g = families::ut(3, 2).unwrap();
        let f = g.field().clone();
        let lambda = g.algebra().basis_vector(2);
        let s = right_stabilizers(&g, &lambda);
        // oracle: all y with lambda(y u_j) = 0 for all j
        let brute: BTreeSet<u64> = (0..8)
            .filter(|&c| {
                let y = g.decode(c);
                (0..3).all(|j| {
                    linalg::dot(
                        &f,
                        &lambda,
                        &g.algebra().mul(&y, &g.algebra().basis_vector(j)),
                    )
                    .is_zero()
                })
            })
            .collect();
        let got: BTreeSet<u64> = linalg::enumerate_span(&f, &s.j_rt, 3)
            .iter()
            .map(|v| g.encode(v))
            .collect();
        assert_eq!(got, brute);
        // lambda(x12 * x23) = 1, so x12 is not in J_rt; x23 and x13 are
        assert_eq!(got.len(), 4);
        assert!(!got.contains(&g.encode(&g.algebra().basis_vector(0))));
    }

    #[test]
    fn square_zero_algebra() {
        let g = families::affine(5).unwrap();
        for c in 0..5 {
            let lambda = g.decode(c);
            assert_eq!(right_stabilizers(&g, &lambda).j_rt.len(), 1);
            assert!(perp_check(&g, &lambda));
        }
    }
}
