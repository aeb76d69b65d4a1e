use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::class_function::{inner_product, ClassFunction, ClassLayout};
use super::induce::{
    conjugacy_classes, induce_on_classes, to_superclass_function, ConjugacyClasses,
};
use super::linear::{build_g_alpha, superchar_triples, LinearCharacter, SupercharTriple};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::group::{
    superclasses, triple_bijection, LocalOrbitTable, SuperclassPartition, SuperclassTriple,
    TriangularGroup,
};
use crate::scalars::Rational;

/// Supercharacters of `G` (rows) evaluated on superclasses (columns).
#[derive(Debug, Clone)]
pub struct SupercharacterTable {
    pub rows: Vec<SupercharTriple>,
    pub characters: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
    /// `(chi, chi)` for each row.
    pub norms: Vec<Rational>,
    /// `|G_alpha|` for each row.
    pub subgroup_orders: Vec<usize>,
}

impl SupercharacterTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Everything computed for one group: superclasses, their triples, and the
/// supercharacter table.
#[derive(Debug, Clone)]
pub struct SupercharacterTheory {
    pub group: TriangularGroup,
    pub partition: SuperclassPartition,
    pub conjugacy: ConjugacyClasses,
    pub locals: LocalOrbitTable,
    /// The triple of each superclass.
    pub columns: Vec<SuperclassTriple>,
    pub layout: Arc<ClassLayout>,
    pub table: SupercharacterTable,
}

/// `chi_alpha = Ind(xi, G_alpha, G)` as a superclass function.
pub fn induce_linear(
    group: &TriangularGroup,
    conj: &ConjugacyClasses,
    layout: &Arc<ClassLayout>,
    partition: &SuperclassPartition,
    chi: &LinearCharacter,
) -> Result<ClassFunction> {
    let values = induce_on_classes(group, conj, chi.subgroup_order(group), |g| {
        chi.exponent(group, g)
    });
    to_superclass_function(layout, partition, conj, &values)
}

impl SupercharacterTheory {
    /// Builds the theory. Each `chi_alpha` is induced from the least member of
    /// `omega*` and compared with the one induced from the greatest member.
    pub fn build(group: TriangularGroup) -> Result<Self> {
        let partition = superclasses(&group);
        let conjugacy = conjugacy_classes(&group);
        let locals = LocalOrbitTable::build(&group);
        let columns = triple_bijection(&group, &partition, &locals)?;
        let layout = Arc::new(ClassLayout {
            group_order: group.order(),
            sizes: partition.sizes(),
            order: group.cyclotomic_order(),
        });
        let rows = superchar_triples(&group, &locals);
        let built: Vec<(ClassFunction, usize)> = rows
            .par_iter()
            .map(|alpha| {
                let local = &locals.dual[alpha.e.0 as usize];
                let orbit = &local.orbits[local.orbit_index(alpha.omega_star).expect("representative")];
                let first = group.decode(alpha.omega_star);
                let chi = build_g_alpha(&group, &locals, alpha, &first)?;
                let f = induce_linear(&group, &conjugacy, &layout, &partition, &chi)?;
                let last = *orbit.members.last().expect("nonempty orbit");
                if last != alpha.omega_star {
                    let other = build_g_alpha(&group, &locals, alpha, &group.decode(last))?;
                    let g = induce_linear(&group, &conjugacy, &layout, &partition, &other)?;
                    if g != f {
                        return Err(Error::Consistency(format!(
                            "supercharacter {alpha:?} depends on lambda: members {} and {last} disagree",
                            alpha.omega_star
                        )));
                    }
                }
                Ok((f, chi.subgroup_order(&group)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut characters = Vec::with_capacity(rows.len());
        let mut degrees = Vec::with_capacity(rows.len());
        let mut norms = Vec::with_capacity(rows.len());
        let mut subgroup_orders = Vec::with_capacity(rows.len());
        for (alpha, (f, sub)) in rows.iter().zip(built) {
            let degree = f
                .degree()
                .to_rational()
                .filter(|r| r.is_integer() && r.is_positive())
                .ok_or_else(|| {
                    Error::Consistency(format!("degree of {alpha:?} is {}", f.degree()))
                })?;
            let norm = inner_product(&f, &f)?
                .to_rational()
                .ok_or_else(|| Error::Consistency(format!("norm of {alpha:?} is not rational")))?;
            degrees.push(
                degree
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Capability("degree overflow".into()))?,
            );
            norms.push(norm);
            subgroup_orders.push(sub);
            characters.push(f);
        }
        let table = SupercharacterTable {
            rows,
            characters,
            degrees,
            norms,
            subgroup_orders,
        };
        Ok(SupercharacterTheory {
            group,
            partition,
            conjugacy,
            locals,
            columns,
            layout,
            table,
        })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn character(&self, row: usize) -> &ClassFunction {
        &self.table.characters[row]
    }

    pub fn trivial(&self) -> ClassFunction {
        ClassFunction::constant(self.layout.clone(), 1)
    }

    pub fn regular(&self) -> ClassFunction {
        ClassFunction::regular(self.layout.clone())
    }

    /// Index of the row equal to `1_G`.
    pub fn trivial_row(&self) -> Option<usize> {
        let one = self.trivial();
        self.table.characters.iter().position(|c| *c == one)
    }

    /// The axioms of a supercharacter theory and the degree and integrality
    /// properties, each as a separate check.
    pub fn axioms(&self) -> Vec<Check> {
        let t = &self.table;
        let mut out = Vec::new();
        out.push(Check::from_witness(
            "table is square",
            (t.len() != self.partition.len()).then(|| {
                format!(
                    "{} supercharacters, {} superclasses",
                    t.len(),
                    self.partition.len()
                )
            }),
        ));
        out.push(Check::from_witness(
            "{1} is a superclass",
            (self.partition.classes[0].members != [0])
                .then(|| "class of the identity has other members".into()),
        ));
        let pairs: Vec<(usize, usize)> = (0..t.len())
            .flat_map(|i| (i + 1..t.len()).map(move |j| (i, j)))
            .collect();
        let disjoint = pairs.par_iter().find_map_first(|&(i, j)| {
            let ip = inner_product(&t.characters[i], &t.characters[j]).expect("same layout");
            (!ip.is_zero()).then(|| format!("({:?}, {:?}) = {ip}", t.rows[i], t.rows[j]))
        });
        out.push(Check::from_witness("pairwise disjoint", disjoint));
        // constancy holds by construction: values were collapsed from conjugacy
        // classes only after checking they agree on each superclass
        out.push(Check::pass("constant on superclasses"));
        let degree = (0..t.len()).find_map(|i| {
            let expect = self.group.order() / t.subgroup_orders[i];
            (t.degrees[i] as usize != expect || self.group.order() % t.subgroup_orders[i] != 0)
                .then(|| {
                    format!(
                        "{:?}: degree {} but |G|/|G_alpha| = {expect}",
                        t.rows[i], t.degrees[i]
                    )
                })
        });
        out.push(Check::from_witness("degree = [G : G_alpha]", degree));
        let integral = (0..t.len()).find_map(|i| {
            t.characters[i]
                .values()
                .iter()
                .position(|v| !v.is_algebraic_integer())
                .map(|k| format!("{:?} at class {k}: {}", t.rows[i], t.characters[i].value(k)))
        });
        out.push(Check::from_witness("values in Z[zeta_n]", integral));
        out.push(Check::from_witness(
            "regular character identity",
            self.regular_identity_witness(),
        ));
        out
    }

    fn regular_identity_witness(&self) -> Option<String> {
        let t = &self.table;
        let mut sum = ClassFunction::zero(self.layout.clone());
        for i in 0..t.len() {
            if t.norms[i].is_zero() {
                return Some(format!("{:?} has norm 0", t.rows[i]));
            }
            let c = Rational::from_integer(BigInt::from(t.degrees[i])) / &t.norms[i];
            sum = sum
                .add(&t.characters[i].scale_rational(&c))
                .expect("same layout");
        }
        let reg = self.regular();
        (sum != reg).then(|| {
            let k = (0..self.partition.len())
                .find(|&k| sum.value(k) != reg.value(k))
                .unwrap_or(0);
            format!(
                "sum is {} at class {k}, expected {}",
                sum.value(k),
                reg.value(k)
            )
        })
    }

    /// All axioms as one result; a consistency error names the first failure.
    pub fn verify(&self) -> Result<()> {
        match self.axioms().into_iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::Consistency(format!(
                "{}: {}",
                c.name,
                c.witness.unwrap_or_default()
            ))),
        }
    }

    /// Exact coefficient of `chi` on row `i`: `(f, chi_i) / (chi_i, chi_i)`.
    pub fn coefficient(&self, f: &ClassFunction, row: usize) -> Result<Rational> {
        let ip = inner_product(f, &self.table.characters[row])?;
        let norm = &self.table.norms[row];
        if norm.is_zero() {
            return Err(Error::Consistency("supercharacter of norm 0".into()));
        }
        match ip.to_rational() {
            Some(r) => Ok(r / norm),
            None => Err(Error::Domain(format!("inner product {ip} is not rational"))),
        }
    }
}

/// Convenience alias for [`SupercharacterTheory::build`].
pub fn enumerate_supercharacters(group: TriangularGroup) -> Result<SupercharacterTheory> {
    SupercharacterTheory::build(group)
}
