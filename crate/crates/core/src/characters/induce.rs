use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::class_function::{ClassFunction, ClassLayout};
use crate::error::{Error, Result};
use crate::group::{GroupElement, SuperclassPartition, TriangularGroup};
use crate::linalg::Vector;
use crate::scalars::{Cyclotomic, FqElem, Rational};

/// Conjugacy classes of `G`; used to evaluate induced characters.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<u32>,
}

/// Conjugacy classes by closure under conjugation by generators of `G`
/// (generators of `H` and of `N`).
pub fn conjugacy_classes(group: &TriangularGroup) -> ConjugacyClasses {
    let zero = vec![FqElem::ZERO; group.dim()];
    let basis: Vec<Vector> = (0..group.dim())
        .map(|i| group.algebra().basis_vector(i))
        .collect();
    let mut gens: Vec<GroupElement> = group
        .h()
        .generator_indices()
        .into_iter()
        .map(|h| GroupElement { h, x: zero.clone() })
        .collect();
    gens.extend(
        group
            .unipotent_generators(&basis)
            .into_iter()
            .map(|x| GroupElement {
                h: group.h().identity(),
                x,
            }),
    );
    let pairs: Vec<(GroupElement, GroupElement)> =
        gens.into_iter().map(|s| (group.inv(&s), s)).collect();
    let n = group.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let g = group.element(members[i]);
            for (si, s) in &pairs {
                let k = group.index(&group.mul(&group.mul(s, &g), si));
                if class_of[k] == u32::MAX {
                    class_of[k] = id;
                    members.push(k);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    ConjugacyClasses { classes, class_of }
}

/// `Ind(xi)(g) = |sub|^{-1} sum_{s in G} xi'(s^{-1} g s)` on every conjugacy
/// class, where `exponent` gives `xi` as a power of `zeta_n` on `sub` and `None` off it.
///
/// Evaluated as `|C_G(g)| / |sub| * sum over the class of g`.
pub fn induce_on_classes<F>(
    group: &TriangularGroup,
    conj: &ConjugacyClasses,
    sub_order: usize,
    exponent: F,
) -> Vec<Cyclotomic>
where
    F: Fn(&GroupElement) -> Option<u32> + Sync,
{
    let n = group.cyclotomic_order();
    conj.classes
        .par_iter()
        .map(|class| {
            let mut counts = vec![0i64; n as usize];
            let mut any = false;
            for &m in class {
                if let Some(k) = exponent(&group.element(m)) {
                    counts[k as usize] += 1;
                    any = true;
                }
            }
            if !any {
                return Cyclotomic::zero(n);
            }
            let centralizer = group.order() / class.len();
            let factor = Rational::new(BigInt::from(centralizer), BigInt::from(sub_order));
            Cyclotomic::from_root_counts(n, &counts).scale(&factor)
        })
        .collect()
}

/// Collapses per-conjugacy-class values to superclass values, failing with a
/// witness if they are not constant on some superclass.
pub fn to_superclass_function(
    layout: &Arc<ClassLayout>,
    partition: &SuperclassPartition,
    conj: &ConjugacyClasses,
    values: &[Cyclotomic],
) -> Result<ClassFunction> {
    let mut out: Vec<Option<&Cyclotomic>> = vec![None; partition.len()];
    for (c, class) in conj.classes.iter().enumerate() {
        for &m in class {
            let k = partition.class_of[m] as usize;
            match out[k] {
                None => out[k] = Some(&values[c]),
                Some(v) if v == &values[c] => {}
                Some(v) => {
                    return Err(Error::Consistency(format!(
                        "not constant on superclass {k}: values {v} and {} (element {m})",
                        values[c]
                    )));
                }
            }
        }
    }
    ClassFunction::new(
        layout.clone(),
        out.into_iter()
            .map(|v| v.expect("classes cover G").clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn classes_partition_and_oracle() {
        // oracle: conjugate by every element
        let g = families::t(2, 3).unwrap();
        let conj = conjugacy_classes(&g);
        for class in &conj.classes {
            let x = g.element(class[0]);
            let mut brute: Vec<usize> = (0..g.order())
                .map(|s| {
                    let s = g.element(s);
                    g.index(&g.mul(&g.mul(&s, &x), &g.inv(&s)))
                })
                .collect();
            brute.sort_unstable();
            brute.dedup();
            assert_eq!(&brute, class);
        }
        // T(2,3) is S3 x Z2
        assert_eq!(conj.classes.len(), 6);
    }

    #[test]
    fn trivial_induction_identities() {
        let g = families::affine(5).unwrap();
        let conj = conjugacy_classes(&g);
        let n = g.cyclotomic_order();
        // from {1}: the regular character
        let reg = induce_on_classes(&g, &conj, 1, |x| (g.index(x) == 0).then_some(0));
        for (c, class) in conj.classes.iter().enumerate() {
            let expect = if class[0] == 0 { g.order() as i64 } else { 0 };
            assert_eq!(reg[c], Cyclotomic::from_int(n, expect));
        }
        // from G: the character itself
        let triv = induce_on_classes(&g, &conj, g.order(), |_| Some(0));
        assert!(triv.iter().all(|v| *v == Cyclotomic::one(n)));
    }
}
