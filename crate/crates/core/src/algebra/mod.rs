//! The algebraic substrate of a group of triangular type: the nilpotent
//! algebra `J`, the abelian group `H` with its two actions, the group algebra
//! `kH` with its idempotents, and Pierce decompositions.

mod abelian;
mod action;
mod group_algebra;
mod nilpotent;
mod pierce;
mod subalgebras;

pub use abelian::AbelianGroup;
pub use action::{
    restrict_tables, validate_structure, validate_tables, ActionTables, HAction, Side,
    ValidationReport, Violation,
};
pub use group_algebra::{primitive_idempotents, GroupAlgebraElem, Idempotent, IdempotentLattice};
pub use nilpotent::NilpotentAlgebra;
pub use pierce::{pierce, PierceData};
pub use subalgebras::{invariant_subalgebras, InvariantSubalgebra, MAX_ENUMERATION_DIM};
