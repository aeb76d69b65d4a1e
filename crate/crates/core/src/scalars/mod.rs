//! Exact scalars: rationals, cyclotomic numbers and finite fields.

mod cyclotomic;
mod field;

pub use cyclotomic::{
    cyclotomic_polynomial, lcm, parse_rational, Cyclotomic, CyclotomicField, Rational,
};
pub use field::{FieldSpec, Fq, FqElem, MAX_FIELD_SIZE};

/// Exponent `k` such that `eps(t) = zeta_n^k`, where `eps(t) = zeta_p^Tr(t)`.
///
/// `order` is the ambient cyclotomic order and must be divisible by `p`.
pub fn additive_character_exponent(field: &Fq, order: u32, t: FqElem) -> u32 {
    let p = field.p();
    debug_assert_eq!(order % p, 0, "ambient order must be divisible by p");
    (order / p) * field.trace(t)
}

/// The fixed nontrivial additive character `t -> zeta_p^Tr(t)` of `F_q`.
pub fn additive_character(field: &Fq, order: u32, t: FqElem) -> Cyclotomic {
    Cyclotomic::root_of_unity(order, additive_character_exponent(field, order, t) as i64)
}
