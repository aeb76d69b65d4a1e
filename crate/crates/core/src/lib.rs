//! Supercharacter theories of finite groups of triangular type `G = H + J`,
//! computed with exact arithmetic.

pub mod algebra;
pub mod characters;
pub mod check;
pub mod error;
pub mod families;
pub mod group;
pub mod linalg;
pub mod resind;
pub mod scalars;

pub use error::{Error, Result};
