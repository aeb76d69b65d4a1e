use std::sync::Arc;

use crate::algebra::{
    primitive_idempotents, restrict_tables, validate_structure, validate_tables, AbelianGroup,
    ActionTables, GroupAlgebraElem, HAction, Idempotent, IdempotentLattice, NilpotentAlgebra,
};
use crate::error::{Error, Result, MAX_GROUP_ORDER, MAX_SPACE_SIZE};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::{lcm, Fq, FqElem};

/// An element `h + x` of `G = H + J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub h: usize,
    pub x: Vector,
}

/// An element of `A = kH + J`, used to evaluate expressions like `ta(g-1)b^{-1}t^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub kh: Vec<FqElem>,
    pub j: Vector,
}

/// A finite group of triangular type `G = H + J` with multiplication
/// `(h1 + x1)(h2 + x2) = h1 h2 + h1 x2 + x1 h2 + x1 x2`.
///
/// Elements are indexed by `h * q^d + code(x)`, so the identity is index 0.
#[derive(Debug, Clone)]
pub struct TriangularGroup {
    field: Arc<Fq>,
    algebra: NilpotentAlgebra,
    h: AbelianGroup,
    tables: ActionTables,
    lattice: IdempotentLattice,
    left_proj: Vec<Matrix>,
    right_proj: Vec<Matrix>,
    cyclotomic_order: u32,
    space: u64,
}

impl TriangularGroup {
    /// Validates the structure and builds the group.
    pub fn new(algebra: NilpotentAlgebra, h: AbelianGroup, action: &HAction) -> Result<Self> {
        validate_structure(&algebra, &h, action).into_result()?;
        let tables = action.expand(algebra.field(), &h, algebra.dim());
        Self::from_parts(algebra, h, tables, None)
    }

    /// Builds the group from per-element action tables. `cyclotomic_order`
    /// lets a subgroup share the ambient field of its parent.
    pub fn from_tables(
        algebra: NilpotentAlgebra,
        h: AbelianGroup,
        tables: ActionTables,
        cyclotomic_order: Option<u32>,
    ) -> Result<Self> {
        validate_tables(&algebra, &h, &tables).into_result()?;
        Self::from_parts(algebra, h, tables, cyclotomic_order)
    }

    fn from_parts(
        algebra: NilpotentAlgebra,
        h: AbelianGroup,
        tables: ActionTables,
        cyclotomic_order: Option<u32>,
    ) -> Result<Self> {
        let field = algebra.field().clone();
        let q = field.q() as u64;
        let space = q
            .checked_pow(algebra.dim() as u32)
            .filter(|&s| s <= MAX_SPACE_SIZE as u64)
            .ok_or_else(|| {
                Error::Capability(format!(
                    "q^dim J = {}^{} exceeds the limit {MAX_SPACE_SIZE}",
                    q,
                    algebra.dim()
                ))
            })?;
        let order = space.saturating_mul(h.order() as u64);
        if order > MAX_GROUP_ORDER as u64 {
            return Err(Error::Capability(format!(
                "|G| = {order} exceeds the limit {MAX_GROUP_ORDER}"
            )));
        }
        let lattice = primitive_idempotents(&field, &h)?;
        let d = algebra.dim();
        let left_proj = lattice
            .primitives()
            .iter()
            .map(|e| e.left_matrix(&field, &tables, d))
            .collect();
        let right_proj = lattice
            .primitives()
            .iter()
            .map(|e| e.right_matrix(&field, &tables, d))
            .collect();
        let natural = lcm(field.p(), h.ambient_exponent());
        let cyclotomic_order = match cyclotomic_order {
            None => natural,
            Some(n) if n % natural == 0 => n,
            Some(n) => {
                return Err(Error::Usage(format!(
                    "cyclotomic order {n} is not a multiple of {natural}"
                )));
            }
        };
        Ok(TriangularGroup {
            field,
            algebra,
            h,
            tables,
            lattice,
            left_proj,
            right_proj,
            cyclotomic_order,
            space,
        })
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn h(&self) -> &AbelianGroup {
        &self.h
    }

    pub fn tables(&self) -> &ActionTables {
        &self.tables
    }

    pub fn lattice(&self) -> &IdempotentLattice {
        &self.lattice
    }

    /// The order `n` of the ambient cyclotomic field `Q(zeta_n)` for all character values.
    pub fn cyclotomic_order(&self) -> u32 {
        self.cyclotomic_order
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `|J| = q^d`.
    pub fn space_size(&self) -> u64 {
        self.space
    }

    pub fn order(&self) -> usize {
        self.h.order() * self.space as usize
    }

    pub fn unipotent_order(&self) -> usize {
        self.space as usize
    }

    pub fn encode(&self, x: &[FqElem]) -> u64 {
        linalg::encode(self.field.q(), x)
    }

    pub fn decode(&self, code: u64) -> Vector {
        linalg::decode(self.field.q(), self.dim(), code)
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let s = self.space as usize;
        GroupElement {
            h: index / s,
            x: self.decode((index % s) as u64),
        }
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        g.h * self.space as usize + self.encode(&g.x) as usize
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            h: self.h.identity(),
            x: vec![FqElem::ZERO; self.dim()],
        }
    }

    /// `x -> hx`.
    pub fn left_h(&self, h: usize, x: &[FqElem]) -> Vector {
        self.tables.left[h].apply(&self.field, x)
    }

    /// `x -> xh`.
    pub fn right_h(&self, h: usize, x: &[FqElem]) -> Vector {
        self.tables.right[h].apply(&self.field, x)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let hx = self.left_h(a.h, &b.x);
        let xh = self.right_h(b.h, &a.x);
        let xx = self.algebra.mul(&a.x, &b.x);
        let x = hx
            .iter()
            .zip(&xh)
            .zip(&xx)
            .map(|((&p, &q), &r)| f.add(f.add(p, q), r))
            .collect();
        GroupElement {
            h: self.h.mul(a.h, b.h),
            x,
        }
    }

    /// `(h + x)^{-1} = h^{-1} + z h^{-1}` with `1 + z = (1 + h^{-1}x)^{-1}`.
    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        let hi = self.h.inv(g.h);
        let w = self.left_h(hi, &g.x);
        let z = self.unipotent_inverse(&w);
        GroupElement {
            h: hi,
            x: self.right_h(hi, &z),
        }
    }

    /// `v'` with `(1 + v)^{-1} = 1 + v'`, i.e. the finite sum of `(-v)^k`, `k >= 1`.
    pub fn unipotent_inverse(&self, v: &[FqElem]) -> Vector {
        let f = &*self.field;
        let neg: Vector = v.iter().map(|&c| f.neg(c)).collect();
        let mut total = vec![FqElem::ZERO; v.len()];
        let mut power = neg.clone();
        while !linalg::is_zero(&power) {
            total = linalg::add(f, &total, &power);
            power = self.algebra.mul(&power, &neg);
        }
        total
    }

    /// Left projection matrices of the primitive idempotents.
    pub fn primitive_left(&self) -> &[Matrix] {
        &self.left_proj
    }

    pub fn primitive_right(&self) -> &[Matrix] {
        &self.right_proj
    }

    /// `supp(x)`: primitives `e_i` with `e_i x e_j != 0` or `e_j x e_i != 0` for some `j`.
    /// Then `x` lies in `J_f = fJf` iff `supp(x) <= f`.
    pub fn support(&self, x: &[FqElem]) -> Idempotent {
        let f = &*self.field;
        let n = self.lattice.len();
        let left: Vec<Vector> = self.left_proj.iter().map(|m| m.apply(f, x)).collect();
        let mut mask = 0u32;
        for i in 0..n {
            for j in 0..n {
                if !linalg::is_zero(&self.right_proj[j].apply(f, &left[i])) {
                    mask |= 1 << i | 1 << j;
                }
            }
        }
        Idempotent(mask)
    }

    /// Support of a linear form, using `lambda o P_ij` with `P_ij(x) = e_i x e_j`.
    pub fn dual_support(&self, lambda: &[FqElem]) -> Idempotent {
        let f = &*self.field;
        let n = self.lattice.len();
        let left: Vec<Vector> = self
            .left_proj
            .iter()
            .map(|m| m.apply_row(f, lambda))
            .collect();
        let mut mask = 0u32;
        for i in 0..n {
            for j in 0..n {
                if !linalg::is_zero(&self.right_proj[j].apply_row(f, &left[i])) {
                    mask |= 1 << i | 1 << j;
                }
            }
        }
        Idempotent(mask)
    }

    /// `H(e)` as sorted indices into `H`.
    pub fn h_of(&self, e: Idempotent) -> Vec<usize> {
        self.lattice.stabilizer(e)
    }

    pub fn idempotent_element(&self, e: Idempotent) -> GroupAlgebraElem {
        self.lattice.element(&self.field, &self.h, e)
    }

    /// Matrix of `x -> exe`.
    pub fn projection(&self, e: Idempotent) -> Matrix {
        let f = &*self.field;
        let d = self.dim();
        let l = e
            .indices()
            .fold(Matrix::zeros(d, d), |acc, i| acc.add(f, &self.left_proj[i]));
        let r = e.indices().fold(Matrix::zeros(d, d), |acc, i| {
            acc.add(f, &self.right_proj[i])
        });
        l.mul(f, &r)
    }

    /// Basis of `J_e = eJe`.
    pub fn local_basis(&self, e: Idempotent) -> Vec<Vector> {
        self.projection(e).image(&self.field)
    }

    /// Basis of `J_e^* = {lambda o P_e}` inside `J^*`.
    pub fn local_dual_basis(&self, e: Idempotent) -> Vec<Vector> {
        let p = self.projection(e);
        let rows: Vec<Vector> = (0..self.dim()).map(|i| p.row(i).to_vec()).collect();
        linalg::span_basis(&self.field, &rows)
    }

    /// `left_h` extended linearly to `kH`, plus the product in `A = kH + J`.
    pub fn algebra_mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let f = &*self.field;
        let mut kh = vec![FqElem::ZERO; self.h.order()];
        let mut j = self.algebra.mul(&a.j, &b.j);
        for (ha, &ca) in a.kh.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (hb, &cb) in b.kh.iter().enumerate() {
                if !cb.is_zero() {
                    let slot = &mut kh[self.h.mul(ha, hb)];
                    *slot = f.add(*slot, f.mul(ca, cb));
                }
            }
            j = linalg::add(f, &j, &linalg::scale(f, ca, &self.left_h(ha, &b.j)));
        }
        for (hb, &cb) in b.kh.iter().enumerate() {
            if !cb.is_zero() {
                j = linalg::add(f, &j, &linalg::scale(f, cb, &self.right_h(hb, &a.j)));
            }
        }
        AlgebraElement { kh, j }
    }

    /// `h + x` as an element of `A`.
    pub fn as_algebra(&self, g: &GroupElement) -> AlgebraElement {
        let mut kh = vec![FqElem::ZERO; self.h.order()];
        kh[g.h] = FqElem::ONE;
        AlgebraElement { kh, j: g.x.clone() }
    }

    /// `g - 1` as an element of `A`.
    pub fn minus_one(&self, g: &GroupElement) -> AlgebraElement {
        let f = &*self.field;
        let mut a = self.as_algebra(g);
        let id = self.h.identity();
        a.kh[id] = f.sub(a.kh[id], FqElem::ONE);
        a
    }

    /// Inverse of `minus_one`: reads `1 + a` as a group element.
    pub fn plus_one(&self, a: &AlgebraElement) -> Result<GroupElement> {
        let f = &*self.field;
        let mut kh = a.kh.clone();
        let id = self.h.identity();
        kh[id] = f.add(kh[id], FqElem::ONE);
        let mut hs = kh.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (hs.next(), hs.next()) {
            (Some((h, &c)), None) if c == FqElem::ONE => Ok(GroupElement { h, x: a.j.clone() }),
            _ => Err(Error::Consistency(
                "element of A does not lie in H + J".into(),
            )),
        }
    }

    /// The direct product `G x G'` (same field), with `H x H'` acting blockwise.
    pub fn direct_product(&self, other: &TriangularGroup) -> Result<TriangularGroup> {
        if self.field != other.field {
            return Err(Error::Usage("direct product needs a common field".into()));
        }
        let algebra = self.algebra.direct_sum(&other.algebra);
        let h = self.h.direct_product(&other.h)?;
        let (d1, d2) = (self.dim(), other.dim());
        let r1 = self.h.orders().len();
        let block = |a: &Matrix, b: &Matrix| {
            let mut m = Matrix::zeros(d1 + d2, d1 + d2);
            for i in 0..d1 {
                for j in 0..d1 {
                    m.set(i, j, a.get(i, j));
                }
            }
            for i in 0..d2 {
                for j in 0..d2 {
                    m.set(d1 + i, d1 + j, b.get(i, j));
                }
            }
            m
        };
        let mut left = Vec::with_capacity(h.order());
        let mut right = Vec::with_capacity(h.order());
        for e in h.elements() {
            let a = self.h.index_of(&e[..r1]).expect("first factor");
            let b = other.h.index_of(&e[r1..]).expect("second factor");
            left.push(block(&self.tables.left[a], &other.tables.left[b]));
            right.push(block(&self.tables.right[a], &other.tables.right[b]));
        }
        let n = lcm(self.cyclotomic_order, other.cyclotomic_order);
        Self::from_tables(algebra, h, ActionTables { left, right }, Some(n))
    }

    /// The restriction to `H' + J'` for a subgroup `members` of `H` and an
    /// invariant subalgebra with the given basis.
    pub fn restricted(&self, members: &[usize], basis: &[Vector]) -> Result<TriangularGroup> {
        let gens: Vec<Vec<u32>> = members
            .iter()
            .map(|&m| self.h.element(m).to_vec())
            .collect();
        let hsub = AbelianGroup::generated(self.h.orders(), &gens)?;
        let mapped: Vec<usize> = hsub
            .elements()
            .iter()
            .map(|e| self.h.index_of(e).expect("subgroup of H"))
            .collect();
        let algebra = self.algebra.subalgebra(basis)?;
        let tables =
            restrict_tables(&self.field, &self.tables, &mapped, basis).ok_or_else(|| {
                Error::Validation("subspace is not invariant under the subgroup of H".into())
            })?;
        Self::from_tables(algebra, hsub, tables, Some(self.cyclotomic_order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    pub(crate) fn affine(q: u32) -> TriangularGroup {
        let f = Arc::new(Fq::new(FieldSpec::builtin(q).unwrap()).unwrap());
        let j = NilpotentAlgebra::from_sparse(f.clone(), 1, &[]).unwrap();
        let h = AbelianGroup::full(&[q - 1]).unwrap();
        let w = f.primitive_element();
        let action = HAction {
            left: vec![Matrix::from_rows(&[vec![w]])],
            right: vec![Matrix::identity(1)],
        };
        TriangularGroup::new(j, h, &action).unwrap()
    }

    #[test]
    fn affine_matrix_oracle() {
        // [[a, b], [0, 1]] with a = w^k; h + x <-> (a, b) with b = x
        let g = affine(3);
        let f = g.field().clone();
        let w = f.primitive_element();
        let to_pair = |e: &GroupElement| (f.pow(w, e.h as u64), e.x[0]);
        let from_pair = |a: FqElem, b: FqElem| {
            let k = (0..2).find(|&k| f.pow(w, k) == a).unwrap() as usize;
            GroupElement { h: k, x: vec![b] }
        };
        let x = from_pair(FqElem(2), FqElem(1));
        let y = from_pair(FqElem(2), FqElem(2));
        assert_eq!(to_pair(&g.mul(&x, &y)), (FqElem(1), FqElem(2)));
        // exhaustive against matrix multiplication
        for i in 0..g.order() {
            for k in 0..g.order() {
                let (a1, b1) = to_pair(&g.element(i));
                let (a2, b2) = to_pair(&g.element(k));
                let expect = (f.mul(a1, a2), f.add(f.mul(a1, b2), b1));
                assert_eq!(to_pair(&g.mul(&g.element(i), &g.element(k))), expect);
            }
        }
    }

    #[test]
    fn identity_and_inverse() {
        let f = Arc::new(Fq::new(FieldSpec::prime(2).unwrap()).unwrap());
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f, 4);
        let g = TriangularGroup::new(j, AbelianGroup::full(&[]).unwrap(), &HAction::trivial(0, 6))
            .unwrap();
        assert_eq!(g.order(), 64);
        let one = g.identity();
        assert_eq!(g.index(&one), 0);
        for i in 0..g.order() {
            let x = g.element(i);
            assert_eq!(g.index(&x), i);
            assert_eq!(g.mul(&one, &x), x);
            assert_eq!(g.mul(&x, &g.inv(&x)), one);
            assert_eq!(g.mul(&g.inv(&x), &x), one);
        }
    }

    #[test]
    fn algebra_embedding_is_multiplicative() {
        let g = affine(5);
        for i in 0..g.order() {
            for k in 0..g.order() {
                let (a, b) = (g.element(i), g.element(k));
                let prod = g.algebra_mul(&g.as_algebra(&a), &g.as_algebra(&b));
                assert_eq!(prod, g.as_algebra(&g.mul(&a, &b)));
                assert_eq!(g.plus_one(&g.minus_one(&a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn size_guard() {
        let f = Arc::new(Fq::new(FieldSpec::prime(2).unwrap()).unwrap());
        let (j, _) = NilpotentAlgebra::strictly_upper_triangular(f, 7);
        let err = TriangularGroup::new(
            j,
            AbelianGroup::full(&[]).unwrap(),
            &HAction::trivial(0, 21),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Capability(_)));
    }
}
