use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{Fq, FqElem};

/// A finite-dimensional associative algebra over `F_q` given by structure
/// constants: `u_i u_j = sum_k c[i][j][k] u_k`.
///
/// Construction does not enforce associativity or nilpotency; see
/// [`NilpotentAlgebra::associativity_violations`] and
/// [`NilpotentAlgebra::nilpotency_index`], both run by structure validation.
#[derive(Debug, Clone)]
pub struct NilpotentAlgebra {
    field: Arc<Fq>,
    dim: usize,
    // products[i * dim + j] = u_i u_j
    products: Vec<Vector>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl NilpotentAlgebra {
    /// From sparse structure constants `(i, j, k, c)` meaning `u_i u_j` has `c` at `u_k`.
    pub fn from_sparse(
        field: Arc<Fq>,
        dim: usize,
        entries: &[(usize, usize, usize, FqElem)],
    ) -> Result<Self> {
        let mut products = vec![vec![FqElem::ZERO; dim]; dim * dim];
        let mut seen = HashSet::new();
        for &(i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Validation(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if (c.0 as usize) >= field.q() {
                return Err(Error::Validation(format!(
                    "structure constant value {c:?} is not in F_{}",
                    field.q()
                )));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::Validation(format!(
                    "duplicate structure constant ({i}, {j}, {k})"
                )));
            }
            products[i * dim + j][k] = c;
        }
        Ok(Self::from_products(field, dim, products))
    }

    fn from_products(field: Arc<Fq>, dim: usize, products: Vec<Vector>) -> Self {
        let left = (0..dim)
            .map(|i| {
                let cols: Vec<Vector> = (0..dim).map(|j| products[i * dim + j].clone()).collect();
                Matrix::from_columns(dim, &cols)
            })
            .collect();
        let right = (0..dim)
            .map(|j| {
                let cols: Vec<Vector> = (0..dim).map(|i| products[i * dim + j].clone()).collect();
                Matrix::from_columns(dim, &cols)
            })
            .collect();
        NilpotentAlgebra {
            field,
            dim,
            products,
            left,
            right,
        }
    }

    /// Strictly upper triangular `n x n` matrices with basis `E_ij` (i < j),
    /// ordered by superdiagonal level and then by row. Returns the labels too.
    pub fn strictly_upper_triangular(field: Arc<Fq>, n: usize) -> (Self, Vec<(usize, usize)>) {
        let mut labels = Vec::new();
        for level in 1..n {
            for i in 0..n - level {
                labels.push((i, i + level));
            }
        }
        let index = |a: usize, b: usize| labels.iter().position(|&l| l == (a, b));
        let mut entries = Vec::new();
        for (x, &(i, j)) in labels.iter().enumerate() {
            for (y, &(k, l)) in labels.iter().enumerate() {
                if j == k {
                    entries.push((x, y, index(i, l).expect("product stays upper"), FqElem::ONE));
                }
            }
        }
        let alg =
            Self::from_sparse(field, labels.len(), &entries).expect("well-formed by construction");
        (alg, labels)
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `u_i u_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[FqElem] {
        &self.products[i * self.dim + j]
    }

    /// Sparse structure constants, in index order.
    pub fn structure_entries(&self) -> Vec<(usize, usize, usize, FqElem)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, &c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> u_i x`.
    pub fn left_basis_matrix(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of `x -> x u_j`.
    pub fn right_basis_matrix(&self, j: usize) -> &Matrix {
        &self.right[j]
    }

    /// Matrix of `x -> a x`.
    pub fn left_mul_matrix(&self, a: &[FqElem]) -> Matrix {
        let f = &self.field;
        a.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Matrix::zeros(self.dim, self.dim), |acc, (i, &c)| {
                acc.add(f, &self.left[i].scale(f, c))
            })
    }

    /// Matrix of `x -> x b`.
    pub fn right_mul_matrix(&self, b: &[FqElem]) -> Matrix {
        let f = &self.field;
        b.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Matrix::zeros(self.dim, self.dim), |acc, (j, &c)| {
                acc.add(f, &self.right[j].scale(f, c))
            })
    }

    pub fn mul(&self, x: &[FqElem], y: &[FqElem]) -> Vector {
        let f = &self.field;
        let mut out = vec![FqElem::ZERO; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (slot, &s) in out.iter_mut().zip(&self.products[i * self.dim + j]) {
                    if !s.is_zero() {
                        *slot = f.add(*slot, f.mul(c, s));
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![FqElem::ZERO; self.dim];
        v[i] = FqElem::ONE;
        v
    }

    /// Basis triples `(i, j, k)` with `(u_i u_j) u_k != u_i (u_j u_k)`.
    pub fn associativity_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.dim {
                    let lhs = self.mul(&ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), self.basis_product(j, k));
                    if lhs != rhs {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Bases of `J, J^2, J^3, ...` until the chain becomes zero or stalls.
    pub fn power_chain(&self) -> Vec<Vec<Vector>> {
        let f = &self.field;
        let mut chain = vec![(0..self.dim)
            .map(|i| self.basis_vector(i))
            .collect::<Vec<_>>()];
        loop {
            let last = chain.last().unwrap();
            if last.is_empty() {
                break;
            }
            let mut products = Vec::new();
            for v in last {
                for j in 0..self.dim {
                    let p = self.mul(v, &self.basis_vector(j));
                    if !linalg::is_zero(&p) {
                        products.push(p);
                    }
                }
            }
            let next = linalg::span_basis(f, &products);
            if next.len() == last.len() {
                chain.push(next);
                break;
            }
            chain.push(next);
        }
        chain
    }

    /// Smallest `s` with `J^s = 0`, or `None` if the algebra is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let chain = self.power_chain();
        let last = chain.last().unwrap();
        if last.is_empty() {
            Some(chain.len())
        } else {
            None
        }
    }

    /// Basis of `J^2`.
    pub fn square(&self) -> Vec<Vector> {
        let mut products = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.basis_product(i, j);
                if !linalg::is_zero(p) {
                    products.push(p.to_vec());
                }
            }
        }
        linalg::span_basis(&self.field, &products)
    }

    /// A product of basis vectors of `span(basis)` that leaves the span, if any.
    pub fn closure_witness(&self, basis: &[Vector]) -> Option<(usize, usize)> {
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                if !linalg::in_span(&self.field, basis, &self.mul(x, y)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The subalgebra `span(basis)` in its own coordinates. `basis` must be
    /// linearly independent and closed under multiplication.
    pub fn subalgebra(&self, basis: &[Vector]) -> Result<NilpotentAlgebra> {
        if let Some((a, b)) = self.closure_witness(basis) {
            return Err(Error::Validation(format!(
                "subspace is not closed under multiplication: product of basis vectors {a} and {b} leaves it"
            )));
        }
        let k = basis.len();
        let mut products = Vec::with_capacity(k * k);
        for x in basis {
            for y in basis {
                let p = self.mul(x, y);
                products.push(linalg::coordinates(&self.field, basis, &p).expect("closed"));
            }
        }
        Ok(Self::from_products(self.field.clone(), k, products))
    }

    /// Block direct sum `J (+) J'` with `J J' = J' J = 0`.
    pub fn direct_sum(&self, other: &NilpotentAlgebra) -> NilpotentAlgebra {
        assert_eq!(self.field, other.field);
        let d = self.dim + other.dim;
        let mut products = vec![vec![FqElem::ZERO; d]; d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                products[i * d + j][..self.dim].copy_from_slice(self.basis_product(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                let (a, b) = (self.dim + i, self.dim + j);
                products[a * d + b][self.dim..].copy_from_slice(other.basis_product(i, j));
            }
        }
        Self::from_products(self.field.clone(), d, products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn f2() -> Arc<Fq> {
        Arc::new(Fq::new(FieldSpec::prime(2).unwrap()).unwrap())
    }

    #[test]
    fn ut3_relations() {
        let (j, labels) = NilpotentAlgebra::strictly_upper_triangular(f2(), 3);
        assert_eq!(labels, vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            j.basis_product(0, 1),
            &[FqElem::ZERO, FqElem::ZERO, FqElem::ONE]
        );
        assert!(linalg::is_zero(j.basis_product(1, 0)));
        assert!(j.associativity_violations().is_empty());
        assert_eq!(j.nilpotency_index(), Some(3));
        assert_eq!(j.square(), vec![j.basis_vector(2)]);
    }

    #[test]
    fn nonassociative_sample_is_caught() {
        // e1 e1 = e2, e2 e1 = e3: (e1 e1) e1 = e3 but e1 (e1 e1) = e1 e2 = 0
        let f = f2();
        let j =
            NilpotentAlgebra::from_sparse(f, 3, &[(0, 0, 1, FqElem::ONE), (1, 0, 2, FqElem::ONE)])
                .unwrap();
        let lhs = j.mul(j.basis_product(0, 0), &j.basis_vector(0));
        let rhs = j.mul(&j.basis_vector(0), j.basis_product(0, 0));
        assert_ne!(lhs, rhs);
        assert!(j.associativity_violations().contains(&(0, 0, 0)));
    }

    #[test]
    fn non_nilpotent_detected() {
        let j = NilpotentAlgebra::from_sparse(f2(), 1, &[(0, 0, 0, FqElem::ONE)]).unwrap();
        assert_eq!(j.nilpotency_index(), None);
    }

    #[test]
    fn malformed_entries_rejected() {
        assert!(NilpotentAlgebra::from_sparse(f2(), 2, &[(0, 2, 0, FqElem::ONE)]).is_err());
        assert!(NilpotentAlgebra::from_sparse(
            f2(),
            2,
            &[(0, 1, 0, FqElem::ONE), (0, 1, 0, FqElem::ONE)]
        )
        .is_err());
    }

    #[test]
    fn subalgebra_coordinates() {
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f2(), 3);
        let sub = j
            .subalgebra(&[j.basis_vector(0), j.basis_vector(2)])
            .unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(sub.square().is_empty());
        assert!(j
            .subalgebra(&[j.basis_vector(0), j.basis_vector(1)])
            .is_err());
    }
}
