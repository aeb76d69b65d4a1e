use crate::error::{Error, Result};
use crate::group::{GroupElement, TriangularGroup};
use crate::linalg::{self, Vector};
use crate::scalars::FqElem;

/// A subgroup `G' = H' + J'` named by generators of `H'` (exponent tuples)
/// and a basis of `J'` (coordinate vectors in `J`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub h_generators: Vec<Vec<u32>>,
    pub j_basis: Vec<Vector>,
}

impl SubgroupSpec {
    /// `G' = G`.
    pub fn whole(group: &TriangularGroup) -> Self {
        SubgroupSpec {
            h_generators: group.h().generators().to_vec(),
            j_basis: (0..group.dim())
                .map(|i| group.algebra().basis_vector(i))
                .collect(),
        }
    }

    /// `G' = N = 1 + J`.
    pub fn unipotent(group: &TriangularGroup) -> Self {
        SubgroupSpec {
            h_generators: vec![],
            j_basis: Self::whole(group).j_basis,
        }
    }
}

/// A validated subgroup of triangular type with its embedding into `G`.
#[derive(Debug, Clone)]
pub struct TriangularSubgroup {
    pub spec: SubgroupSpec,
    pub group: TriangularGroup,
    /// Ambient `H` index of each element of `H'`.
    pub h_members: Vec<usize>,
    /// Ambient index of each element of `G'`.
    pub embed: Vec<usize>,
    /// Index in `G'` of each ambient element, `u32::MAX` outside.
    locate: Vec<u32>,
}

impl TriangularSubgroup {
    pub fn order(&self) -> usize {
        self.embed.len()
    }

    pub fn locate(&self, ambient: usize) -> Option<usize> {
        self.locate
            .get(ambient)
            .filter(|&&k| k != u32::MAX)
            .map(|&k| k as usize)
    }
}

/// Validates `spec` against `G` and builds `G'`. Failures are validation
/// errors naming the offending generator, basis vector or product.
pub fn build_subgroup(group: &TriangularGroup, spec: &SubgroupSpec) -> Result<TriangularSubgroup> {
    let f = group.field();
    let d = group.dim();
    let h = group.h();
    let mut gens = Vec::with_capacity(spec.h_generators.len());
    for (i, g) in spec.h_generators.iter().enumerate() {
        let k = h.index_of(g).ok_or_else(|| {
            Error::Validation(format!("H generator {i} = {g:?} is not an element of H"))
        })?;
        gens.push(k);
    }
    for (i, b) in spec.j_basis.iter().enumerate() {
        if b.len() != d {
            return Err(Error::Validation(format!(
                "basis vector {i} has length {}, expected {d}",
                b.len()
            )));
        }
        if b.iter().any(|c| (c.0 as usize) >= f.q()) {
            return Err(Error::Validation(format!(
                "basis vector {i} has an entry outside F_{}",
                f.q()
            )));
        }
        if linalg::in_span(f, &spec.j_basis[..i], b) {
            return Err(Error::Validation(format!(
                "basis vector {i} depends on the previous ones"
            )));
        }
    }
    let basis = &spec.j_basis;
    if let Some((a, b)) = group.algebra().closure_witness(basis) {
        return Err(Error::Validation(format!(
            "J' is not a subalgebra: the product of basis vectors {a} and {b} lies outside it"
        )));
    }
    for &g in &gens {
        for (i, b) in basis.iter().enumerate() {
            if !linalg::in_span(f, basis, &group.left_h(g, b)) {
                return Err(Error::Validation(format!(
                    "J' is not invariant: h{:?} moves basis vector {i} out on the left",
                    h.element(g)
                )));
            }
            if !linalg::in_span(f, basis, &group.right_h(g, b)) {
                return Err(Error::Validation(format!(
                    "J' is not invariant: h{:?} moves basis vector {i} out on the right",
                    h.element(g)
                )));
            }
        }
    }
    let sub = group.restricted(&gens, basis)?;
    let h_members: Vec<usize> = sub
        .h()
        .elements()
        .iter()
        .map(|e| h.index_of(e).expect("subgroup element lies in H"))
        .collect();
    let mut embed = Vec::with_capacity(sub.order());
    let mut locate = vec![u32::MAX; group.order()];
    for i in 0..sub.order() {
        let s = sub.element(i);
        let mut x = vec![FqElem::ZERO; d];
        for (c, b) in s.x.iter().zip(basis) {
            x = linalg::add(f, &x, &linalg::scale(f, *c, b));
        }
        let k = group.index(&GroupElement {
            h: h_members[s.h],
            x,
        });
        locate[k] = i as u32;
        embed.push(k);
    }
    // the embedding must be a homomorphism; spot-check on a grid of pairs
    for i in (0..sub.order()).step_by((sub.order() / 16).max(1)) {
        for j in (0..sub.order()).step_by((sub.order() / 16).max(1)) {
            let lhs = embed[sub.index(&sub.mul(&sub.element(i), &sub.element(j)))];
            let rhs = group.index(&group.mul(&group.element(embed[i]), &group.element(embed[j])));
            if lhs != rhs {
                return Err(Error::Consistency(format!(
                    "embedding of G' is not multiplicative at ({i}, {j})"
                )));
            }
        }
    }
    Ok(TriangularSubgroup {
        spec: spec.clone(),
        group: sub,
        h_members,
        embed,
        locate,
    })
}
