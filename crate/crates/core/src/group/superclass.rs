use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::orbits::{Ambient, LocalOrbitTable};
use super::triangular::{GroupElement, TriangularGroup};
use crate::algebra::Idempotent;
use crate::error::{Error, Result};

/// A `G~`-orbit in `G` under `R_tau(g) = 1 + t a (g - 1) b^{-1} t^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Superclass {
    /// Sorted element indices.
    pub members: Vec<usize>,
    /// The least member.
    pub representative: usize,
}

impl Superclass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct SuperclassPartition {
    /// Ordered by representative; class 0 is `{1}`.
    pub classes: Vec<Superclass>,
    /// Class index of every element.
    pub class_of: Vec<u32>,
}

impl SuperclassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Superclass::size).collect()
    }
}

/// Superclasses by breadth-first closure under the `G~` generators.
pub fn superclasses(group: &TriangularGroup) -> SuperclassPartition {
    let gens = group.gtilde_generators();
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
            for tau in &gens {
                let k = group.index(&group.gtilde_act_group(tau, &g));
                if class_of[k] == u32::MAX {
                    class_of[k] = id;
                    members.push(k);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(Superclass {
            representative: members[0],
            members,
        });
    }
    SuperclassPartition { classes, class_of }
}

/// `beta = (e, h, omega)`: `h` in `H(e)` and `omega` a regular `G~_e`-orbit in
/// `J_e`, named by its least member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SuperclassTriple {
    pub e: Idempotent,
    pub h: usize,
    pub omega: u64,
}

/// All triples, ordered by `(e, h, omega)`.
pub fn superclass_triples(
    group: &TriangularGroup,
    locals: &LocalOrbitTable,
) -> Vec<SuperclassTriple> {
    let mut out = Vec::new();
    for local in locals.side(Ambient::Primal) {
        for h in group.h_of(local.e) {
            for o in local.regular() {
                out.push(SuperclassTriple {
                    e: local.e,
                    h,
                    omega: o.representative,
                });
            }
        }
    }
    out
}

/// The triple of a superclass: among members `h + x` with `h` in
/// `H(supp x)` and `x` in a regular local orbit of `J_{supp x}`, the triple
/// must be unique.
pub fn triple_of_superclass(
    group: &TriangularGroup,
    locals: &LocalOrbitTable,
    class: &Superclass,
) -> Result<SuperclassTriple> {
    let mut found = BTreeSet::new();
    for &m in &class.members {
        let g = group.element(m);
        let e = group.support(&g.x);
        if group.h_of(e).binary_search(&g.h).is_err() {
            continue;
        }
        let local = &locals.primal[e.0 as usize];
        let code = group.encode(&g.x);
        let k = local.orbit_index(code).ok_or_else(|| {
            Error::Consistency(format!("point {code} missing from local orbits of J_{e}"))
        })?;
        let o = &local.orbits[k];
        if o.regular {
            found.insert(SuperclassTriple {
                e,
                h: g.h,
                omega: o.representative,
            });
        }
    }
    let mut it = found.into_iter();
    match (it.next(), it.next()) {
        (Some(t), None) => Ok(t),
        (None, _) => Err(Error::Consistency(format!(
            "superclass of element {} contains no h + omega",
            class.representative
        ))),
        (Some(a), Some(b)) => Err(Error::Consistency(format!(
            "superclass of element {} contains two triples {a:?} and {b:?}",
            class.representative
        ))),
    }
}

/// The superclass containing `h + omega`.
pub fn superclass_of_triple(
    group: &TriangularGroup,
    partition: &SuperclassPartition,
    triple: &SuperclassTriple,
) -> Result<usize> {
    if triple.h >= group.h().order() || triple.omega >= group.space_size() {
        return Err(Error::Usage(format!(
            "triple {triple:?} does not name an element"
        )));
    }
    let g = GroupElement {
        h: triple.h,
        x: group.decode(triple.omega),
    };
    Ok(partition.class_of[group.index(&g)] as usize)
}

/// The triple of every superclass, with the bijection checked in both directions.
pub fn triple_bijection(
    group: &TriangularGroup,
    partition: &SuperclassPartition,
    locals: &LocalOrbitTable,
) -> Result<Vec<SuperclassTriple>> {
    let triples: Vec<SuperclassTriple> = partition
        .classes
        .par_iter()
        .map(|k| triple_of_superclass(group, locals, k))
        .collect::<Result<Vec<_>>>()?;
    for (i, t) in triples.iter().enumerate() {
        let back = superclass_of_triple(group, partition, t)?;
        if back != i {
            return Err(Error::Consistency(format!(
                "triple {t:?} of superclass {i} maps back to {back}"
            )));
        }
    }
    let all = superclass_triples(group, locals);
    let mut sorted = triples.clone();
    sorted.sort();
    if sorted != all {
        return Err(Error::Consistency(format!(
            "{} superclasses but {} triples, or the triple sets differ",
            triples.len(),
            all.len()
        )));
    }
    Ok(triples)
}
