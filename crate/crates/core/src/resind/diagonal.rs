use super::ops::{decompose, product_decompose, SubgroupPair};
use super::subgroup::{build_subgroup, SubgroupSpec};
use crate::characters::{ClassFunction, SupercharacterTheory};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalars::Cyclotomic;

/// Recomputes `chi_i * chi_j` as the restriction of `chi_i x chi_j` from
/// `G x G` to the diagonal, and checks that its decomposition there agrees
/// with [`product_decompose`] on `G`.
pub fn diagonal_product_check(theory: &SupercharacterTheory, i: usize, j: usize) -> Result<()> {
    let g = &theory.group;
    let gg = g.direct_product(g)?;
    let r = g.h().orders().len();
    let d = g.dim();
    let split = |e: &GroupElement| -> (usize, usize) {
        let t = gg.h().element(e.h);
        let a = GroupElement {
            h: g.h().index_of(&t[..r]).expect("factor"),
            x: e.x[..d].to_vec(),
        };
        let b = GroupElement {
            h: g.h().index_of(&t[r..]).expect("factor"),
            x: e.x[d..].to_vec(),
        };
        (g.index(&a), g.index(&b))
    };
    let diag = |k: usize| -> GroupElement {
        let e = g.element(k);
        let t: Vec<u32> = g
            .h()
            .element(e.h)
            .iter()
            .chain(g.h().element(e.h))
            .copied()
            .collect();
        GroupElement {
            h: gg.h().index_of(&t).expect("diagonal"),
            x: e.x.iter().chain(&e.x).copied().collect(),
        }
    };
    let gg_th = SupercharacterTheory::build(gg.clone())?;
    let (ci, cj) = (theory.character(i), theory.character(j));
    let mut values = Vec::with_capacity(gg_th.partition.len());
    for class in &gg_th.partition.classes {
        let (a, b) = split(&gg.element(class.representative));
        let v = ci.eval(&theory.partition, a) * cj.eval(&theory.partition, b);
        for &m in &class.members {
            let (a, b) = split(&gg.element(m));
            if ci.eval(&theory.partition, a) * cj.eval(&theory.partition, b) != v {
                return Err(Error::Consistency(format!(
                    "outer product is not constant on the superclass of {m}"
                )));
            }
        }
        values.push(v);
    }
    let outer = ClassFunction::new(gg_th.layout.clone(), values)?;

    let spec = SubgroupSpec {
        h_generators: g
            .h()
            .generators()
            .iter()
            .map(|t| t.iter().chain(t).copied().collect())
            .collect(),
        j_basis: (0..d)
            .map(|k| {
                let v = g.algebra().basis_vector(k);
                v.iter().chain(&v).copied().collect()
            })
            .collect(),
    };
    let sub = build_subgroup(&gg, &spec)?;
    let sub_th = SupercharacterTheory::build(sub.group.clone())?;
    let pair = SubgroupPair::new(&gg_th, &sub, &sub_th);
    let res = pair.restrict(&outer)?;
    let to_sub = |k: usize| {
        sub.locate(gg.index(&diag(k)))
            .expect("diagonal element lies in the subgroup")
    };
    for k in 0..g.order() {
        let expect = ci.eval(&theory.partition, k) * cj.eval(&theory.partition, k);
        if res.eval(&sub_th.partition, to_sub(k)) != &expect {
            return Err(Error::Consistency(format!(
                "restriction to the diagonal differs from the product at {k}"
            )));
        }
    }
    let via_diag = decompose(&sub_th, &res)?;
    let direct = product_decompose(theory, i, j)?;
    if via_diag.nonneg_integers().is_none() || !via_diag.is_exact() {
        return Err(Error::Consistency(
            "diagonal decomposition is not a nonnegative integer combination".into(),
        ));
    }
    for (eta, c) in via_diag.coefficients.iter().enumerate() {
        let phi = sub_th.character(eta);
        let pulled: Vec<&Cyclotomic> = (0..g.order())
            .map(|k| phi.eval(&sub_th.partition, to_sub(k)))
            .collect();
        let row = (0..theory.len())
            .find(|&a| {
                (0..g.order()).all(|k| theory.character(a).eval(&theory.partition, k) == pulled[k])
            })
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "diagonal supercharacter {eta} matches no supercharacter of G"
                ))
            })?;
        if &direct.coefficients[row] != c {
            return Err(Error::Consistency(format!(
                "coefficient of supercharacter {row}: {} directly, {c} through the diagonal",
                direct.coefficients[row]
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn ut32_all_pairs() {
        let th = SupercharacterTheory::build(families::ut(3, 2).unwrap()).unwrap();
        for i in 0..th.len() {
            diagonal_product_check(&th, i, (i + 2) % th.len()).unwrap();
        }
    }
}
