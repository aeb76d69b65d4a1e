//! Restriction to subgroups of triangular type, superinduction, and
//! decomposition in supercharacter bases.

mod catalog;
mod diagonal;
mod ops;
mod subgroup;

pub use catalog::catalog_subgroups;
pub use diagonal::diagonal_product_check;
pub use ops::{
    decompose, decompose_exact, product_decompose, Decomposition, FrobeniusReport, PairReport,
    SubgroupPair,
};
pub use subgroup::{build_subgroup, SubgroupSpec, TriangularSubgroup};
