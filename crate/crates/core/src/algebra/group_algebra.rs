use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::abelian::AbelianGroup;
use super::action::ActionTables;
use crate::error::{Error, Result, MAX_PRIMITIVES};
use crate::linalg::Matrix;
use crate::scalars::{Fq, FqElem};

/// An element of the group algebra `kH`, as coefficients indexed by the elements of `H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupAlgebraElem {
    pub coeffs: Vec<FqElem>,
}

impl GroupAlgebraElem {
    pub fn zero(h: &AbelianGroup) -> Self {
        GroupAlgebraElem {
            coeffs: vec![FqElem::ZERO; h.order()],
        }
    }

    pub fn basis(h: &AbelianGroup, g: usize) -> Self {
        let mut e = Self::zero(h);
        e.coeffs[g] = FqElem::ONE;
        e
    }

    pub fn one(h: &AbelianGroup) -> Self {
        Self::basis(h, h.identity())
    }

    pub fn scalar(h: &AbelianGroup, c: FqElem) -> Self {
        let mut e = Self::zero(h);
        e.coeffs[h.identity()] = c;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, f: &Fq, other: &Self) -> Self {
        GroupAlgebraElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Fq, other: &Self) -> Self {
        GroupAlgebraElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Fq, c: FqElem) -> Self {
        GroupAlgebraElem {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, f: &Fq, h: &AbelianGroup, other: &Self) -> Self {
        let mut out = Self::zero(h);
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, &cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let slot = &mut out.coeffs[h.mul(a, b)];
                *slot = f.add(*slot, f.mul(ca, cb));
            }
        }
        out
    }

    pub fn is_idempotent(&self, f: &Fq, h: &AbelianGroup) -> bool {
        &self.mul(f, h, self) == self
    }

    /// Matrix of `x -> self * x` on `J`.
    pub fn left_matrix(&self, f: &Fq, tables: &ActionTables, dim: usize) -> Matrix {
        combine(f, &self.coeffs, &tables.left, dim)
    }

    /// Matrix of `x -> x * self` on `J`.
    pub fn right_matrix(&self, f: &Fq, tables: &ActionTables, dim: usize) -> Matrix {
        combine(f, &self.coeffs, &tables.right, dim)
    }
}

fn combine(f: &Fq, coeffs: &[FqElem], mats: &[Matrix], dim: usize) -> Matrix {
    coeffs
        .iter()
        .zip(mats)
        .filter(|(c, _)| !c.is_zero())
        .fold(Matrix::zeros(dim, dim), |acc, (&c, m)| {
            acc.add(f, &m.scale(f, c))
        })
}

/// An idempotent of `kH`, as the set of primitive idempotents it is the sum of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Idempotent(pub u32);

impl Idempotent {
    pub const ZERO: Idempotent = Idempotent(0);

    pub fn one(primitives: usize) -> Self {
        Idempotent(((1u64 << primitives) - 1) as u32)
    }

    pub fn le(self, other: Idempotent) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn rank(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn complement(self, primitives: usize) -> Idempotent {
        Idempotent(Self::one(primitives).0 & !self.0)
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "e{{{}}}", items.join(","))
    }
}

/// The primitive idempotents of `kH`; every idempotent is a subset sum.
#[derive(Debug, Clone)]
pub struct IdempotentLattice {
    primitives: Vec<GroupAlgebraElem>,
    // fixes[i][h] iff h e_i = e_i
    fixes: Vec<Vec<bool>>,
}

impl IdempotentLattice {
    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    pub fn primitives(&self) -> &[GroupAlgebraElem] {
        &self.primitives
    }

    pub fn one(&self) -> Idempotent {
        Idempotent::one(self.len())
    }

    /// All `2^n` idempotents, zero first and one last.
    pub fn all(&self) -> impl Iterator<Item = Idempotent> {
        (0..1u32 << self.len()).map(Idempotent)
    }

    pub fn element(&self, f: &Fq, h: &AbelianGroup, e: Idempotent) -> GroupAlgebraElem {
        e.indices().fold(GroupAlgebraElem::zero(h), |acc, i| {
            acc.add(f, &self.primitives[i])
        })
    }

    /// Locate a group-algebra element in the lattice; `None` if it is not idempotent.
    pub fn locate(&self, f: &Fq, h: &AbelianGroup, x: &GroupAlgebraElem) -> Option<Idempotent> {
        let mut mask = 0u32;
        for (i, p) in self.primitives.iter().enumerate() {
            let xp = x.mul(f, h, p);
            if &xp == p {
                mask |= 1 << i;
            } else if !xp.is_zero() {
                return None;
            }
        }
        Some(Idempotent(mask))
    }

    /// `H(e) = {h : he = e}` as sorted element indices.
    pub fn stabilizer(&self, e: Idempotent) -> Vec<usize> {
        let order = self.fixes.first().map_or(1, |v| v.len());
        (0..order)
            .filter(|&hh| e.indices().all(|i| self.fixes[i][hh]))
            .collect()
    }
}

/// Primitive idempotents of `kH` for `p` not dividing `|H|`.
///
/// The idempotents all lie in the commutative subalgebra fixed by the
/// Frobenius map `h -> h^q`, which is spanned by the sums over the orbits of
/// `h -> h^q` and is split semisimple over `F_q`. Starting from `{1}`, every
/// idempotent is refined by the Lagrange eigenprojectors of each orbit sum.
pub fn primitive_idempotents(f: &Fq, h: &AbelianGroup) -> Result<IdempotentLattice> {
    if h.order() % f.p() as usize == 0 {
        return Err(Error::Hypothesis(format!(
            "char k divides |H|: p = {} divides {}",
            f.p(),
            h.order()
        )));
    }
    let q = f.q() as u64;
    let mut seen = vec![false; h.order()];
    let mut orbit_sums = Vec::new();
    for start in 0..h.order() {
        if seen[start] {
            continue;
        }
        let mut sum = GroupAlgebraElem::zero(h);
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            sum.coeffs[x] = FqElem::ONE;
            x = h.pow(x, q);
        }
        orbit_sums.push(sum);
    }
    if orbit_sums.len() > MAX_PRIMITIVES {
        return Err(Error::Capability(format!(
            "kH has {} primitive idempotents, more than the limit {MAX_PRIMITIVES}",
            orbit_sums.len()
        )));
    }
    let mut current = vec![GroupAlgebraElem::one(h)];
    for b in &orbit_sums {
        let mut next = Vec::new();
        for e in &current {
            for c in f.elements() {
                let mut proj = e.clone();
                for c2 in f.elements().filter(|&c2| c2 != c) {
                    let factor = b
                        .sub(f, &GroupAlgebraElem::scalar(h, c2))
                        .scale(f, f.inv(f.sub(c, c2))?);
                    proj = proj.mul(f, h, &factor);
                    if proj.is_zero() {
                        break;
                    }
                }
                if !proj.is_zero() {
                    next.push(proj);
                }
            }
        }
        current = next;
    }
    let primitives: Vec<GroupAlgebraElem> = current
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let one = GroupAlgebraElem::one(h);
    let total = primitives
        .iter()
        .fold(GroupAlgebraElem::zero(h), |acc, p| acc.add(f, p));
    if total != one {
        return Err(Error::Consistency(
            "primitive idempotents do not sum to 1".into(),
        ));
    }
    for (i, a) in primitives.iter().enumerate() {
        for (j, b) in primitives.iter().enumerate() {
            let ab = a.mul(f, h, b);
            let ok = if i == j { &ab == a } else { ab.is_zero() };
            if !ok {
                return Err(Error::Consistency(format!(
                    "primitives {i} and {j} are not orthogonal idempotents"
                )));
            }
        }
    }
    let fixes = primitives
        .iter()
        .map(|p| {
            (0..h.order())
                .map(|g| &GroupAlgebraElem::basis(h, g).mul(f, h, p) == p)
                .collect()
        })
        .collect();
    Ok(IdempotentLattice { primitives, fixes })
}
