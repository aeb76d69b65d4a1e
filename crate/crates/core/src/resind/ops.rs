use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::subgroup::TriangularSubgroup;
use crate::characters::{inner_product, ClassFunction, SupercharacterTheory};
use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, Rational};

/// `f = sum_k coefficients[k] * basis[k] + residual`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub coefficients: Vec<Cyclotomic>,
    pub residual: ClassFunction,
}

impl Decomposition {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn rationals(&self) -> Option<Vec<Rational>> {
        self.coefficients
            .iter()
            .map(Cyclotomic::to_rational)
            .collect()
    }

    /// The coefficients, if all are nonnegative integers.
    pub fn nonneg_integers(&self) -> Option<Vec<u64>> {
        self.rationals()?
            .into_iter()
            .map(|r| {
                if r.is_integer() && !r.is_negative() {
                    r.to_integer().try_into().ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Coefficients `(f, chi)/(chi, chi)` in the supercharacter basis of `theory`,
/// with the residual left over.
pub fn decompose(theory: &SupercharacterTheory, f: &ClassFunction) -> Result<Decomposition> {
    let t = &theory.table;
    let mut coefficients = Vec::with_capacity(t.len());
    let mut residual = f.clone();
    for (chi, norm) in t.characters.iter().zip(&t.norms) {
        if norm.is_zero() {
            return Err(Error::Consistency("supercharacter of norm 0".into()));
        }
        let c = inner_product(f, chi)?.scale(&norm.recip());
        residual = residual.sub(&chi.scale(&c))?;
        coefficients.push(c);
    }
    Ok(Decomposition {
        coefficients,
        residual,
    })
}

/// [`decompose`], failing when `f` is not in the span.
pub fn decompose_exact(theory: &SupercharacterTheory, f: &ClassFunction) -> Result<Decomposition> {
    let d = decompose(theory, f)?;
    if !d.is_exact() {
        let k = d
            .residual
            .values()
            .iter()
            .position(|v| !v.is_zero())
            .unwrap_or(0);
        return Err(Error::Domain(format!(
            "not in the span of the supercharacters: residual {} on superclass {k}",
            d.residual.value(k)
        )));
    }
    Ok(d)
}

/// `chi_i * chi_j` in the supercharacter basis.
pub fn product_decompose(
    theory: &SupercharacterTheory,
    i: usize,
    j: usize,
) -> Result<Decomposition> {
    let f = theory.character(i).mul(theory.character(j))?;
    decompose(theory, &f)
}

/// A group `G` with a subgroup `G'`, both with their theories, and the
/// intersection counts `|K cap K'|` for superclasses `K` of `G` and `K'` of `G'`.
pub struct SubgroupPair<'a> {
    pub ambient: &'a SupercharacterTheory,
    pub sub: &'a TriangularSubgroup,
    pub theory: &'a SupercharacterTheory,
    counts: Vec<Vec<usize>>,
}

impl<'a> SubgroupPair<'a> {
    pub fn new(
        ambient: &'a SupercharacterTheory,
        sub: &'a TriangularSubgroup,
        theory: &'a SupercharacterTheory,
    ) -> Self {
        let mut counts = vec![vec![0usize; theory.partition.len()]; ambient.partition.len()];
        for (s, &g) in sub.embed.iter().enumerate() {
            counts[ambient.partition.class_of[g] as usize]
                [theory.partition.class_of[s] as usize] += 1;
        }
        SubgroupPair {
            ambient,
            sub,
            theory,
            counts,
        }
    }

    /// `|K cap K'|`, rows indexed by superclasses of `G`.
    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    /// Pointwise restriction, checked constant on the superclasses of `G'`.
    pub fn restrict(&self, f: &ClassFunction) -> Result<ClassFunction> {
        let mut values = Vec::with_capacity(self.theory.partition.len());
        for (k, class) in self.theory.partition.classes.iter().enumerate() {
            let first = f.eval(&self.ambient.partition, self.sub.embed[class.members[0]]);
            if let Some(&m) = class
                .members
                .iter()
                .find(|&&m| f.eval(&self.ambient.partition, self.sub.embed[m]) != first)
            {
                return Err(Error::Consistency(format!(
                    "restriction is not constant on superclass {k} of G' (element {m})"
                )));
            }
            values.push(first.clone());
        }
        ClassFunction::new(self.theory.layout.clone(), values)
    }

    /// `SInd phi(g) = |G| / (|G'| |K_g|) sum_{k in K_g cap G'} phi(k)`, the
    /// orbit-stabilizer form of `|H|/(|G||G'|) sum_tau phi'(R_tau(g))`.
    pub fn superinduce(&self, phi: &ClassFunction) -> Result<ClassFunction> {
        let n = self.ambient.layout.order;
        let g = BigInt::from(self.ambient.group.order());
        let gs = BigInt::from(self.sub.order());
        let values = self
            .counts
            .iter()
            .zip(&self.ambient.layout.sizes)
            .map(|(row, &size)| {
                let mut total = Cyclotomic::zero(n);
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        let v = phi.value(k).lift(n)?;
                        total = &total + &v.scale(&Rational::from_integer(BigInt::from(c)));
                    }
                }
                Ok(total.scale(&Rational::new(g.clone(), &gs * BigInt::from(size))))
            })
            .collect::<Result<Vec<_>>>()?;
        ClassFunction::new(self.ambient.layout.clone(), values)
    }

    /// Both sides of `(SInd phi, psi) = (phi, Res psi)`.
    pub fn frobenius_check(
        &self,
        phi: &ClassFunction,
        psi: &ClassFunction,
    ) -> Result<FrobeniusReport> {
        let lhs = inner_product(&self.superinduce(phi)?, psi)?;
        let rhs = inner_product(phi, &self.restrict(psi)?)?;
        let equal = lhs == rhs;
        Ok(FrobeniusReport { lhs, rhs, equal })
    }

    /// `m[alpha][eta]`: `Res chi_alpha` in the basis of `G'`; an error if any
    /// restriction leaves a residual.
    pub fn restriction_matrix(&self) -> Result<Vec<Decomposition>> {
        self.ambient
            .table
            .characters
            .par_iter()
            .map(|chi| {
                let d = decompose(self.theory, &self.restrict(chi)?)?;
                if !d.is_exact() {
                    return Err(Error::Consistency(
                        "restricted supercharacter is not a combination".into(),
                    ));
                }
                Ok(d)
            })
            .collect()
    }

    /// `a[eta][alpha]`: `SInd phi_eta` in the basis of `G`.
    pub fn superinduction_matrix(&self) -> Result<Vec<Decomposition>> {
        self.theory
            .table
            .characters
            .par_iter()
            .map(|phi| {
                let d = decompose(self.ambient, &self.superinduce(phi)?)?;
                if !d.is_exact() {
                    return Err(Error::Consistency(
                        "superinduced supercharacter is not a combination".into(),
                    ));
                }
                Ok(d)
            })
            .collect()
    }

    /// The full report for this pair.
    pub fn analyze(&self) -> Result<PairReport> {
        let m = self.restriction_matrix()?;
        let a = self.superinduction_matrix()?;
        let at = &self.ambient.table;
        let st = &self.theory.table;
        let to_rationals = |ds: &[Decomposition]| -> Result<Vec<Vec<Rational>>> {
            ds.iter()
                .map(|d| {
                    d.rationals()
                        .ok_or_else(|| Error::Consistency("irrational coefficient".into()))
                })
                .collect()
        };
        let m_rat = to_rationals(&m)?;
        let a_rat = to_rationals(&a)?;
        let mut restriction_witness = None;
        for (alpha, row) in m.iter().enumerate() {
            if row.nonneg_integers().is_none() && restriction_witness.is_none() {
                let bad = m_rat[alpha]
                    .iter()
                    .position(|r| !r.is_integer() || r.is_negative())
                    .unwrap_or(0);
                restriction_witness = Some(format!("m[{alpha}][{bad}] = {}", m_rat[alpha][bad]));
            }
        }
        let mut formula_witness = None;
        for eta in 0..st.len() {
            for alpha in 0..at.len() {
                let expect = &m_rat[alpha][eta] * &st.norms[eta] / &at.norms[alpha];
                let got = &a_rat[eta][alpha];
                if (got != &expect || got.is_negative()) && formula_witness.is_none() {
                    formula_witness =
                        Some(format!("a[{eta}][{alpha}] = {got}, formula gives {expect}"));
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..st.len())
            .flat_map(|e| (0..at.len()).map(move |a| (e, a)))
            .collect();
        let residuals = pairs
            .par_iter()
            .map(|&(eta, alpha)| {
                let r = self.frobenius_check(&st.characters[eta], &at.characters[alpha])?;
                Ok(r.lhs.try_sub(&r.rhs)?)
            })
            .collect::<Result<Vec<Cyclotomic>>>()?;
        let reciprocity_witness = residuals.iter().position(|r| !r.is_zero()).map(|k| {
            format!(
                "(eta, alpha) = {:?}: lhs - rhs = {}",
                pairs[k], residuals[k]
            )
        });
        let reciprocity_residuals = residuals
            .chunks(at.len())
            .map(|c| {
                c.iter()
                    .map(|r| r.to_rational().unwrap_or_default())
                    .collect()
            })
            .collect();
        Ok(PairReport {
            restriction: m_rat,
            superinduction: a_rat,
            reciprocity_residuals,
            restriction_witness,
            formula_witness,
            reciprocity_witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrobeniusReport {
    pub lhs: Cyclotomic,
    pub rhs: Cyclotomic,
    pub equal: bool,
}

/// Restriction and superinduction matrices for one `(G, G')` pair with the
/// first violation of each theorem, if any.
#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    /// `m[alpha][eta]`.
    #[serde(serialize_with = "ser_matrix")]
    pub restriction: Vec<Vec<Rational>>,
    /// `a[eta][alpha]`.
    #[serde(serialize_with = "ser_matrix")]
    pub superinduction: Vec<Vec<Rational>>,
    /// `(SInd phi_eta, chi_alpha) - (phi_eta, Res chi_alpha)`, indexed `[eta][alpha]`.
    #[serde(serialize_with = "ser_matrix")]
    pub reciprocity_residuals: Vec<Vec<Rational>>,
    pub restriction_witness: Option<String>,
    pub formula_witness: Option<String>,
    pub reciprocity_witness: Option<String>,
}

fn ser_matrix<S: serde::Serializer>(
    m: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = m
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    strings.serialize(s)
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.restriction_witness.is_none()
            && self.formula_witness.is_none()
            && self.reciprocity_witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::super::subgroup::{build_subgroup, SubgroupSpec};
    use super::*;
    use crate::families;
    use crate::group::{AlgebraElement, TriangularGroup};
    use crate::linalg::Vector;
    use crate::scalars::FqElem;

    /// `|H|/(|G||G'|) sum_{t,a,b} phi'(1 + t a (g-1) b' t^{-1})` over all of
    /// `G~`, with `b' = b^{-1}` or `b' = b`.
    fn sind_by_definition(
        g: &TriangularGroup,
        sub: &TriangularSubgroup,
        sub_th: &SupercharacterTheory,
        phi: &ClassFunction,
        elem: usize,
        invert_b: bool,
    ) -> Cyclotomic {
        let n = phi.layout().order;
        let hn = g.h().order();
        let unit = |h: usize| {
            let mut kh = vec![FqElem::ZERO; hn];
            kh[h] = FqElem::ONE;
            AlgebraElement {
                kh,
                j: vec![FqElem::ZERO; g.dim()],
            }
        };
        let one_plus = |v: Vector| {
            let mut a = unit(g.h().identity());
            a.j = v;
            a
        };
        let gm1 = g.minus_one(&g.element(elem));
        let mut total = Cyclotomic::zero(n);
        for t in 0..hn {
            let tt = unit(t);
            let ti = unit(g.h().inv(t));
            for a in 0..g.space_size() {
                let aa = one_plus(g.decode(a));
                for b in 0..g.space_size() {
                    let bv = g.decode(b);
                    let bb = one_plus(if invert_b {
                        g.unipotent_inverse(&bv)
                    } else {
                        bv
                    });
                    let prod = g.algebra_mul(
                        &g.algebra_mul(&g.algebra_mul(&g.algebra_mul(&tt, &aa), &gm1), &bb),
                        &ti,
                    );
                    let img = g.plus_one(&prod).unwrap();
                    if let Some(s) = sub.locate(g.index(&img)) {
                        total = &total + phi.eval(&sub_th.partition, s);
                    }
                }
            }
        }
        total.scale(&Rational::new(
            BigInt::from(hn),
            BigInt::from(g.order() * sub.order()),
        ))
    }

    fn setup(
        g: TriangularGroup,
        spec: fn(&TriangularGroup) -> SubgroupSpec,
    ) -> (
        SupercharacterTheory,
        TriangularSubgroup,
        SupercharacterTheory,
    ) {
        let sub = build_subgroup(&g, &spec(&g)).unwrap();
        let sub_th = SupercharacterTheory::build(sub.group.clone()).unwrap();
        (SupercharacterTheory::build(g).unwrap(), sub, sub_th)
    }

    #[test]
    fn kernel_matches_definition_both_forms() {
        let (th, sub, sub_th) = setup(families::t(2, 3).unwrap(), SubgroupSpec::unipotent);
        let pair = SubgroupPair::new(&th, &sub, &sub_th);
        for phi in &sub_th.table.characters {
            let s = pair.superinduce(phi).unwrap();
            for class in &th.partition.classes {
                let m = class.representative;
                let a = sind_by_definition(&th.group, &sub, &sub_th, phi, m, true);
                let b = sind_by_definition(&th.group, &sub, &sub_th, phi, m, false);
                assert_eq!(a, b);
                assert_eq!(&a, s.eval(&th.partition, m));
            }
        }
    }

    #[test]
    fn whole_group_identities() {
        let (th, sub, sub_th) = setup(families::ut(3, 2).unwrap(), SubgroupSpec::whole);
        let pair = SubgroupPair::new(&th, &sub, &sub_th);
        let one = sub_th.trivial();
        assert_eq!(pair.superinduce(&one).unwrap(), th.trivial());
        assert_eq!(pair.restrict(&th.trivial()).unwrap(), one);
        let report = pair.analyze().unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn restriction_to_n_in_t23() {
        let (th, sub, sub_th) = setup(families::t(2, 3).unwrap(), SubgroupSpec::unipotent);
        let pair = SubgroupPair::new(&th, &sub, &sub_th);
        let reg = pair.restrict(&th.regular()).unwrap();
        assert_eq!(reg.values()[0], Cyclotomic::from_int(th.layout.order, 12));
        assert!(reg.values()[1..].iter().all(Cyclotomic::is_zero));
        let report = pair.analyze().unwrap();
        assert!(report.passed(), "{report:?}");
        let f = pair
            .frobenius_check(&sub_th.trivial(), &th.trivial())
            .unwrap();
        assert!(f.equal);
        assert_eq!(f.lhs, Cyclotomic::one(th.layout.order));
    }

    #[test]
    fn decomposition_basics() {
        let th = SupercharacterTheory::build(families::t(2, 3).unwrap()).unwrap();
        for (i, chi) in th.table.characters.iter().enumerate() {
            let d = decompose_exact(&th, chi).unwrap();
            for (k, c) in d.coefficients.iter().enumerate() {
                assert_eq!(*c, Cyclotomic::from_int(th.layout.order, (i == k) as i64));
            }
        }
        let zero = ClassFunction::zero(th.layout.clone());
        assert!(decompose_exact(&th, &zero)
            .unwrap()
            .coefficients
            .iter()
            .all(Cyclotomic::is_zero));
        let triv = th.trivial_row().unwrap();
        for i in 0..th.len() {
            let d = product_decompose(&th, i, triv).unwrap();
            assert_eq!(
                d.nonneg_integers().unwrap(),
                (0..th.len()).map(|k| (k == i) as u64).collect::<Vec<_>>()
            );
        }
    }
}
