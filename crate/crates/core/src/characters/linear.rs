use serde::Serialize;

use super::stabilizers::{right_stabilizer_forms, right_stabilizers};
use crate::algebra::Idempotent;
use crate::error::{Error, Result};
use crate::group::{Ambient, GroupElement, LocalOrbitTable, TriangularGroup};
use crate::linalg::{self, Vector};
use crate::scalars::{additive_character_exponent, Cyclotomic, FqElem};

/// `alpha = (e, theta, omega*)`: `theta` indexes the characters of `H(e)`
/// (see [`h_characters`]) and `omega*` is a regular `G~_e`-orbit in `J_e^*`,
/// named by its least member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SupercharTriple {
    pub e: Idempotent,
    pub theta: usize,
    pub omega_star: u64,
}

/// Characters of `H(e)` as exponent vectors of `zeta_n`, aligned with `group.h_of(e)`.
pub fn h_characters(group: &TriangularGroup, e: Idempotent) -> Vec<Vec<u32>> {
    group
        .h()
        .characters_of(&group.h_of(e), group.cyclotomic_order())
}

/// All triples, ordered by `(e, theta, omega*)`.
pub fn superchar_triples(
    group: &TriangularGroup,
    locals: &LocalOrbitTable,
) -> Vec<SupercharTriple> {
    let mut out = Vec::new();
    for local in locals.side(Ambient::Dual) {
        let count = group.h_of(local.e).len();
        for theta in 0..count {
            for o in local.regular() {
                out.push(SupercharTriple {
                    e: local.e,
                    theta,
                    omega_star: o.representative,
                });
            }
        }
    }
    out
}

/// The linear character `xi(h + x) = theta(h) eps(lambda(x))` of
/// `G_alpha = H(e) + J_{lambda,rt}`.
#[derive(Debug, Clone)]
pub struct LinearCharacter {
    order: u32,
    /// `theta(h)` as an exponent for `h` in `H(e)`, `None` outside.
    theta: Vec<Option<u32>>,
    lambda: Vector,
    /// Rows whose common kernel is `J_rt`.
    rt_forms: Vec<Vector>,
    j_rt: Vec<Vector>,
    h_part: usize,
}

impl LinearCharacter {
    pub fn lambda(&self) -> &[FqElem] {
        &self.lambda
    }

    pub fn j_rt(&self) -> &[Vector] {
        &self.j_rt
    }

    /// `|G_alpha| = |H(e)| q^{dim J_rt}`.
    pub fn subgroup_order(&self, group: &TriangularGroup) -> usize {
        self.h_part * group.field().q().pow(self.j_rt.len() as u32)
    }

    pub fn contains(&self, group: &TriangularGroup, g: &GroupElement) -> bool {
        let f = group.field();
        self.theta[g.h].is_some()
            && self
                .rt_forms
                .iter()
                .all(|r| linalg::dot(f, r, &g.x).is_zero())
    }

    /// `xi(g)` as an exponent of `zeta_n`, or `None` outside `G_alpha`.
    pub fn exponent(&self, group: &TriangularGroup, g: &GroupElement) -> Option<u32> {
        let theta = self.theta[g.h]?;
        let f = group.field();
        if !self
            .rt_forms
            .iter()
            .all(|r| linalg::dot(f, r, &g.x).is_zero())
        {
            return None;
        }
        let eps = additive_character_exponent(f, self.order, linalg::dot(f, &self.lambda, &g.x));
        Some((theta + eps) % self.order)
    }

    /// Elements of `G_alpha` as group indices.
    pub fn elements(&self, group: &TriangularGroup) -> Vec<usize> {
        let f = group.field();
        let xs = linalg::enumerate_span(f, &self.j_rt, group.dim());
        let mut out: Vec<usize> = (0..group.h().order())
            .filter(|&h| self.theta[h].is_some())
            .flat_map(|h| xs.iter().map(move |x| GroupElement { h, x: x.clone() }))
            .map(|g| group.index(&g))
            .collect();
        out.sort_unstable();
        out
    }
}

/// `G_alpha` with its character `xi_{theta,lambda}`; `lambda` must lie in `omega*`.
pub fn build_g_alpha(
    group: &TriangularGroup,
    locals: &LocalOrbitTable,
    alpha: &SupercharTriple,
    lambda: &[FqElem],
) -> Result<LinearCharacter> {
    let local = locals
        .dual
        .get(alpha.e.0 as usize)
        .ok_or_else(|| Error::Usage(format!("idempotent {} is not in the lattice", alpha.e)))?;
    let orbit = local
        .orbit_index(alpha.omega_star)
        .map(|k| &local.orbits[k])
        .filter(|o| o.representative == alpha.omega_star && o.regular)
        .ok_or_else(|| {
            Error::Usage(format!(
                "{} is not a regular orbit representative",
                alpha.omega_star
            ))
        })?;
    if orbit.members.binary_search(&group.encode(lambda)).is_err() {
        return Err(Error::Usage("lambda is not in omega*".into()));
    }
    let h_of_e = group.h_of(alpha.e);
    let chars = h_characters(group, alpha.e);
    let values = chars
        .get(alpha.theta)
        .ok_or_else(|| Error::Usage(format!("H(e) has no character {}", alpha.theta)))?;
    let mut theta = vec![None; group.h().order()];
    for (&h, &v) in h_of_e.iter().zip(values) {
        theta[h] = Some(v);
    }
    let j_rt = right_stabilizers(group, lambda).j_rt;
    Ok(LinearCharacter {
        order: group.cyclotomic_order(),
        theta,
        lambda: lambda.to_vec(),
        rt_forms: right_stabilizer_forms(group, lambda),
        j_rt,
        h_part: h_of_e.len(),
    })
}

/// `xi_{theta,lambda}(g)`; a domain error outside `G_alpha`.
pub fn xi(group: &TriangularGroup, chi: &LinearCharacter, g: &GroupElement) -> Result<Cyclotomic> {
    chi.exponent(group, g)
        .map(|k| Cyclotomic::root_of_unity(chi.order, k as i64))
        .ok_or_else(|| Error::Domain("element is not in G_alpha".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn setup() -> (TriangularGroup, LocalOrbitTable, Vec<SupercharTriple>) {
        let g = families::t(3, 3).unwrap();
        let locals = LocalOrbitTable::build(&g);
        let triples = superchar_triples(&g, &locals);
        (g, locals, triples)
    }

    #[test]
    fn identity_and_trivial() {
        let (g, locals, triples) = setup();
        let alpha = triples[0];
        assert_eq!(alpha.e, Idempotent::ZERO);
        let chi = build_g_alpha(&g, &locals, &alpha, &vec![FqElem::ZERO; g.dim()]).unwrap();
        // e = 0, lambda = 0: G_alpha = G and xi is trivial
        assert_eq!(chi.subgroup_order(&g), g.order());
        for i in (0..g.order()).step_by(7) {
            assert_eq!(
                xi(&g, &chi, &g.element(i)).unwrap(),
                Cyclotomic::one(g.cyclotomic_order())
            );
        }
    }

    #[test]
    fn lambda_outside_orbit_rejected() {
        let (g, locals, triples) = setup();
        let alpha = *triples.iter().find(|a| a.omega_star != 0).unwrap();
        let zero = vec![FqElem::ZERO; g.dim()];
        assert!(matches!(
            build_g_alpha(&g, &locals, &alpha, &zero),
            Err(Error::Usage(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn closed_and_multiplicative(k in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
            let (g, locals, triples) = setup();
            let alpha = triples[k % triples.len()];
            let lambda = g.decode(alpha.omega_star);
            let chi = build_g_alpha(&g, &locals, &alpha, &lambda).unwrap();
            let members = chi.elements(&g);
            prop_assert_eq!(members.len(), chi.subgroup_order(&g));
            let a = g.element(members[i % members.len()]);
            let b = g.element(members[j % members.len()]);
            let ab = g.mul(&a, &b);
            prop_assert!(chi.contains(&g, &ab));
            let n = g.cyclotomic_order();
            prop_assert_eq!(
                chi.exponent(&g, &ab).unwrap(),
                (chi.exponent(&g, &a).unwrap() + chi.exponent(&g, &b).unwrap()) % n
            );
        }
    }
}
