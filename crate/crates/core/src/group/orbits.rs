use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::triangular::TriangularGroup;
use crate::algebra::Idempotent;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    /// `J`, acted on by `rho`.
    Primal,
    /// `J^*`, acted on by `rho^*`.
    Dual,
}

/// A `G~`-orbit, with points given by their coordinate codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub ambient: Ambient,
    pub members: Vec<u64>,
    pub representative: u64,
    /// The unique `e` for which the orbit meets `J_e` in a regular `G~_e`-orbit.
    pub regular_idempotent: Idempotent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    /// The orbit meets `J_e` for `e != 1`; `point` is such a member.
    Singular {
        e: Idempotent,
        point: u64,
    },
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub ambient: Ambient,
    pub orbits: Vec<Orbit>,
    /// Orbit index of every point code.
    pub orbit_of: Vec<u32>,
}

impl TriangularGroup {
    fn point_support(&self, ambient: Ambient, v: &[crate::scalars::FqElem]) -> Idempotent {
        match ambient {
            Ambient::Primal => self.support(v),
            Ambient::Dual => self.dual_support(v),
        }
    }
}

fn apply(
    group: &TriangularGroup,
    ambient: Ambient,
    m: &Matrix,
    v: &[crate::scalars::FqElem],
) -> Vector {
    match ambient {
        Ambient::Primal => m.apply(group.field(), v),
        Ambient::Dual => m.apply_row(group.field(), v),
    }
}

/// Partition of `J` or `J^*` into `G~`-orbits by breadth-first closure under
/// generators. Orbits are listed by their least member, which is the representative.
pub fn orbits(group: &TriangularGroup, ambient: Ambient) -> Result<OrbitPartition> {
    let gens: Vec<Matrix> = group
        .gtilde_generators()
        .iter()
        .map(|t| group.gtilde_matrix(t))
        .collect();
    let size = group.space_size() as usize;
    let mut orbit_of = vec![u32::MAX; size];
    let mut raw: Vec<Vec<u64>> = Vec::new();
    for start in 0..size as u64 {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        orbit_of[start as usize] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let v = group.decode(members[i]);
            for m in &gens {
                let c = group.encode(&apply(group, ambient, m, &v));
                if orbit_of[c as usize] == u32::MAX {
                    orbit_of[c as usize] = id;
                    members.push(c);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        raw.push(members);
    }
    let orbits = raw
        .into_par_iter()
        .map(|members| {
            let supports: BTreeSet<Idempotent> = members
                .iter()
                .map(|&c| group.point_support(ambient, &group.decode(c)))
                .collect();
            let regular_idempotent = unique_minimum(&supports).ok_or_else(|| {
                Error::Consistency(format!(
                    "orbit of {} has no unique minimal support: {:?}",
                    members[0],
                    supports.iter().map(|e| e.to_string()).collect::<Vec<_>>()
                ))
            })?;
            Ok(Orbit {
                ambient,
                representative: members[0],
                members,
                regular_idempotent,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitPartition {
        ambient,
        orbits,
        orbit_of,
    })
}

fn unique_minimum(supports: &BTreeSet<Idempotent>) -> Option<Idempotent> {
    let minimal: Vec<Idempotent> = supports
        .iter()
        .copied()
        .filter(|&e| !supports.iter().any(|&f| f != e && f.le(e)))
        .collect();
    match minimal.as_slice() {
        [e] => Some(*e),
        _ => None,
    }
}

pub fn classify_regular(group: &TriangularGroup, orbit: &Orbit) -> Regularity {
    let one = group.lattice().one();
    for &c in &orbit.members {
        let e = group.point_support(orbit.ambient, &group.decode(c));
        if e != one {
            return Regularity::Singular { e, point: c };
        }
    }
    Regularity::Regular
}

/// A `G~_e`-orbit inside `J_e` or `J_e^*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalOrbit {
    pub members: Vec<u64>,
    pub representative: u64,
    /// Every member has support exactly `e`.
    pub regular: bool,
}

/// The `G~_e = H x N_e x N_e` orbits on `J_e` (or `J_e^*`), with points in
/// the coordinates of `J` (or `J^*`).
#[derive(Debug, Clone)]
pub struct LocalOrbits {
    pub e: Idempotent,
    pub ambient: Ambient,
    pub basis: Vec<Vector>,
    pub orbits: Vec<LocalOrbit>,
    index: HashMap<u64, usize>,
}

impl LocalOrbits {
    pub fn orbit_index(&self, code: u64) -> Option<usize> {
        self.index.get(&code).copied()
    }

    pub fn regular(&self) -> impl Iterator<Item = &LocalOrbit> {
        self.orbits.iter().filter(|o| o.regular)
    }
}

pub fn local_orbits(group: &TriangularGroup, e: Idempotent, ambient: Ambient) -> LocalOrbits {
    let f = group.field();
    let basis = match ambient {
        Ambient::Primal => group.local_basis(e),
        Ambient::Dual => group.local_dual_basis(e),
    };
    let jbasis = group.local_basis(e);
    let gens: Vec<Matrix> = group
        .gtilde_generators_for(&jbasis)
        .iter()
        .map(|t| group.gtilde_matrix(t))
        .collect();
    let mut points: Vec<u64> = linalg::enumerate_span(f, &basis, group.dim())
        .iter()
        .map(|v| group.encode(v))
        .collect();
    points.sort_unstable();
    let mut index: HashMap<u64, usize> = HashMap::with_capacity(points.len());
    let mut orbits = Vec::new();
    for &start in &points {
        if index.contains_key(&start) {
            continue;
        }
        let id = orbits.len();
        index.insert(start, id);
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let v = group.decode(members[i]);
            for m in &gens {
                let c = group.encode(&apply(group, ambient, m, &v));
                if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(c) {
                    slot.insert(id);
                    members.push(c);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let regular = members
            .iter()
            .all(|&c| group.point_support(ambient, &group.decode(c)) == e);
        orbits.push(LocalOrbit {
            representative: members[0],
            members,
            regular,
        });
    }
    LocalOrbits {
        e,
        ambient,
        basis,
        orbits,
        index,
    }
}

/// Local orbits for every idempotent, on both sides, indexed by the idempotent mask.
#[derive(Debug, Clone)]
pub struct LocalOrbitTable {
    pub primal: Vec<LocalOrbits>,
    pub dual: Vec<LocalOrbits>,
}

impl LocalOrbitTable {
    pub fn build(group: &TriangularGroup) -> Self {
        let masks: Vec<Idempotent> = group.lattice().all().collect();
        let primal = masks
            .par_iter()
            .map(|&e| local_orbits(group, e, Ambient::Primal))
            .collect();
        let dual = masks
            .par_iter()
            .map(|&e| local_orbits(group, e, Ambient::Dual))
            .collect();
        LocalOrbitTable { primal, dual }
    }

    pub fn side(&self, ambient: Ambient) -> &[LocalOrbits] {
        match ambient {
            Ambient::Primal => &self.primal,
            Ambient::Dual => &self.dual,
        }
    }
}

/// Counts of regular and singular orbits on both sides, and of orbits by
/// their regular idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub regular_primal: usize,
    pub singular_primal: usize,
    pub regular_dual: usize,
    pub singular_dual: usize,
    pub by_idempotent_primal: Vec<(Idempotent, usize)>,
    pub by_idempotent_dual: Vec<(Idempotent, usize)>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.regular_primal == self.regular_dual
            && self.singular_primal == self.singular_dual
            && self.by_idempotent_primal == self.by_idempotent_dual
    }
}

pub fn orbit_duality(
    group: &TriangularGroup,
    primal: &OrbitPartition,
    dual: &OrbitPartition,
) -> DualityReport {
    let one = group.lattice().one();
    let tally = |p: &OrbitPartition| {
        let mut by: Vec<(Idempotent, usize)> = group.lattice().all().map(|e| (e, 0)).collect();
        for o in &p.orbits {
            by[o.regular_idempotent.0 as usize].1 += 1;
        }
        let regular = by[one.0 as usize].1;
        (regular, p.orbits.len() - regular, by)
    };
    let (rp, sp, bp) = tally(primal);
    let (rd, sd, bd) = tally(dual);
    DualityReport {
        regular_primal: rp,
        singular_primal: sp,
        regular_dual: rd,
        singular_dual: sd,
        by_idempotent_primal: bp,
        by_idempotent_dual: bd,
    }
}

/// For every orbit and idempotent `e`, the intersection with `J_e` is empty
/// or a single `G~_e`-orbit.
pub fn check_orbit_intersections(partition: &OrbitPartition, locals: &[LocalOrbits]) -> Result<()> {
    for local in locals {
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for (k, lo) in local.orbits.iter().enumerate() {
            let global = partition.orbit_of[lo.representative as usize];
            if let Some(prev) = seen.insert(global, k) {
                return Err(Error::Consistency(format!(
                    "orbit {} meets J_{} in two local orbits ({prev} and {k})",
                    partition.orbits[global as usize].representative, local.e
                )));
            }
        }
    }
    Ok(())
}

/// For each regular `y` in `J_e`, `H(e)` equals the two-sided stabilizer of `y` in `H`.
pub fn check_stabilizer_characterization(
    group: &TriangularGroup,
    locals: &[LocalOrbits],
) -> Result<()> {
    for local in locals.iter().filter(|l| l.ambient == Ambient::Primal) {
        let expected = group.h_of(local.e);
        for o in local.regular() {
            let y = group.decode(o.representative);
            let stab: Vec<usize> = (0..group.h().order())
                .filter(|&h| group.left_h(h, &y) == y && group.right_h(h, &y) == y)
                .collect();
            if stab != expected {
                return Err(Error::Consistency(format!(
                    "H({}) = {expected:?} but the stabilizer of regular {} is {stab:?}",
                    local.e, o.representative
                )));
            }
        }
    }
    Ok(())
}
