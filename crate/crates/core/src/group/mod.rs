//! The group `G = H + J`, the group `G~` of triples with its actions on `J`,
//! `J^*` and `G`, orbit enumeration, superclasses and their triples.

mod gtilde;
mod orbits;
mod superclass;
mod triangular;

pub use gtilde::GtildeElement;
pub use orbits::{
    check_orbit_intersections, check_stabilizer_characterization, classify_regular, local_orbits,
    orbit_duality, orbits, Ambient, DualityReport, LocalOrbit, LocalOrbitTable, LocalOrbits, Orbit,
    OrbitPartition, Regularity,
};
pub use superclass::{
    superclass_of_triple, superclass_triples, superclasses, triple_bijection, triple_of_superclass,
    Superclass, SuperclassPartition, SuperclassTriple,
};
pub use triangular::{AlgebraElement, GroupElement, TriangularGroup};
