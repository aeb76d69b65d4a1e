//! Supercharacters `chi_alpha = Ind(xi_{theta,lambda}, G_alpha, G)` and the table they form.

mod class_function;
mod induce;
mod linear;
mod stabilizers;
mod theory;

pub use class_function::{inner_product, ClassFunction, ClassLayout};
pub use induce::{conjugacy_classes, induce_on_classes, to_superclass_function, ConjugacyClasses};
pub use linear::{
    build_g_alpha, h_characters, superchar_triples, xi, LinearCharacter, SupercharTriple,
};
pub use stabilizers::{perp_check, right_stabilizer_forms, right_stabilizers, RightStabilizers};
pub use theory::{
    enumerate_supercharacters, induce_linear, SupercharacterTable, SupercharacterTheory,
};
