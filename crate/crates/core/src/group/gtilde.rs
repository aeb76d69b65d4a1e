use std::collections::HashSet;

use super::triangular::{GroupElement, TriangularGroup};
use crate::linalg::{self, Matrix, Vector};
use crate::scalars::FqElem;

/// A triple `(t, a, b)` with `t` in `H` and `a = 1 + alpha`, `b = 1 + beta` in `N = 1 + J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GtildeElement {
    pub t: usize,
    pub alpha: Vector,
    pub beta: Vector,
}

impl TriangularGroup {
    pub fn gtilde_identity(&self) -> GtildeElement {
        let z = vec![FqElem::ZERO; self.dim()];
        GtildeElement {
            t: self.h().identity(),
            alpha: z.clone(),
            beta: z,
        }
    }

    /// `(1 + u)(1 + v) - 1`.
    pub fn unipotent_mul(&self, u: &[FqElem], v: &[FqElem]) -> Vector {
        let f = &**self.field();
        linalg::add(f, &linalg::add(f, u, v), &self.algebra().mul(u, v))
    }

    /// `t^{-1} (1 + u) t - 1`.
    fn conjugate_by_inverse(&self, t: usize, u: &[FqElem]) -> Vector {
        self.right_h(t, &self.left_h(self.h().inv(t), u))
    }

    /// `(t1, a1, b1)(t2, a2, b2) = (t1 t2, t2^{-1} a1 t2 a2, t2^{-1} b1 t2 b2)`.
    pub fn gtilde_compose(&self, x: &GtildeElement, y: &GtildeElement) -> GtildeElement {
        GtildeElement {
            t: self.h().mul(x.t, y.t),
            alpha: self.unipotent_mul(&self.conjugate_by_inverse(y.t, &x.alpha), &y.alpha),
            beta: self.unipotent_mul(&self.conjugate_by_inverse(y.t, &x.beta), &y.beta),
        }
    }

    /// `(t, a, b)^{-1} = (t^{-1}, t a^{-1} t^{-1}, t b^{-1} t^{-1})`.
    pub fn gtilde_inverse(&self, x: &GtildeElement) -> GtildeElement {
        let ti = self.h().inv(x.t);
        let conj = |u: &[FqElem]| self.right_h(ti, &self.left_h(x.t, &self.unipotent_inverse(u)));
        GtildeElement {
            t: ti,
            alpha: conj(&x.alpha),
            beta: conj(&x.beta),
        }
    }

    /// `rho_tau(x) = t a x b^{-1} t^{-1}`.
    pub fn gtilde_act(&self, tau: &GtildeElement, x: &[FqElem]) -> Vector {
        let f = &**self.field();
        let ax = linalg::add(f, x, &self.algebra().mul(&tau.alpha, x));
        let binv = self.unipotent_inverse(&tau.beta);
        let axb = linalg::add(f, &ax, &self.algebra().mul(&ax, &binv));
        self.right_h(self.h().inv(tau.t), &self.left_h(tau.t, &axb))
    }

    /// Matrix of `rho_tau` on `J`.
    pub fn gtilde_matrix(&self, tau: &GtildeElement) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| self.gtilde_act(tau, &self.algebra().basis_vector(i)))
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// `rho*_tau(lambda) = lambda o rho_{tau^{-1}}`.
    pub fn gtilde_act_dual(&self, tau: &GtildeElement, lambda: &[FqElem]) -> Vector {
        self.gtilde_matrix(&self.gtilde_inverse(tau))
            .apply_row(self.field(), lambda)
    }

    /// `R_tau(g) = 1 + t a (g - 1) b^{-1} t^{-1}`, evaluated in `A = kH + J`.
    pub fn gtilde_act_group(&self, tau: &GtildeElement, g: &GroupElement) -> GroupElement {
        let h = self.h();
        let n = h.order();
        let unit = |k: usize, j: Vector| {
            let mut kh = vec![FqElem::ZERO; n];
            kh[k] = FqElem::ONE;
            super::triangular::AlgebraElement { kh, j }
        };
        let t = unit(tau.t, vec![FqElem::ZERO; self.dim()]);
        let tinv = unit(h.inv(tau.t), vec![FqElem::ZERO; self.dim()]);
        let a = unit(h.identity(), tau.alpha.clone());
        let binv = unit(h.identity(), self.unipotent_inverse(&tau.beta));
        let mut v = self.algebra_mul(&t, &a);
        v = self.algebra_mul(&v, &self.minus_one(g));
        v = self.algebra_mul(&v, &binv);
        v = self.algebra_mul(&v, &tinv);
        self.plus_one(&v).expect("R_tau preserves H + J")
    }

    /// A generating set of the unipotent group `1 + span(basis)` (the span must
    /// be a subalgebra), as elements `u` standing for `1 + u`.
    ///
    /// Starts from `c * b` for basis vectors `b` and nonzero scalars `c`, and
    /// adds elements until the generated group has the full order `q^k`.
    pub fn unipotent_generators(&self, basis: &[Vector]) -> Vec<Vector> {
        let f = &**self.field();
        let mut gens: Vec<Vector> = Vec::new();
        for b in basis {
            for c in f.elements().filter(|c| !c.is_zero()) {
                gens.push(linalg::scale(f, c, b));
            }
        }
        let target = (f.q() as u64).pow(basis.len() as u32) as usize;
        let zero = vec![FqElem::ZERO; self.dim()];
        let mut reached: HashSet<Vector> = HashSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        loop {
            while let Some(x) = frontier.pop() {
                for g in &gens {
                    let y = self.unipotent_mul(&x, g);
                    if reached.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            if reached.len() >= target {
                return gens;
            }
            // the closure of the old generators is complete; extend by a missing element
            let missing = linalg::enumerate_span(f, basis, self.dim())
                .into_iter()
                .find(|v| !reached.contains(v))
                .expect("span larger than reached set");
            let all: Vec<Vector> = reached.iter().cloned().collect();
            gens.push(missing);
            frontier = all;
        }
    }

    /// Generators of `G~`: `(t_i, 1, 1)` for generators `t_i` of `H`, and
    /// `(1, 1 + u, 1)`, `(1, 1, 1 + u)` for generators `1 + u` of `N`.
    pub fn gtilde_generators(&self) -> Vec<GtildeElement> {
        let basis: Vec<Vector> = (0..self.dim())
            .map(|i| self.algebra().basis_vector(i))
            .collect();
        self.gtilde_generators_for(&basis)
    }

    /// Generators of `G~_e = H x N_e x N_e`, where `basis` spans `J_e`.
    pub fn gtilde_generators_for(&self, basis: &[Vector]) -> Vec<GtildeElement> {
        let id = self.gtilde_identity();
        let mut out: Vec<GtildeElement> = self
            .h()
            .generator_indices()
            .into_iter()
            .map(|t| GtildeElement { t, ..id.clone() })
            .collect();
        for u in self.unipotent_generators(basis) {
            out.push(GtildeElement {
                alpha: u.clone(),
                ..id.clone()
            });
            out.push(GtildeElement {
                beta: u,
                ..id.clone()
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn random_tau(g: &TriangularGroup, seed: &[u64]) -> GtildeElement {
        let t = seed[0] as usize % g.h().order();
        GtildeElement {
            t,
            alpha: g.decode(seed[1] % g.space_size()),
            beta: g.decode(seed[2] % g.space_size()),
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let g = families::ut(3, 2).unwrap();
        let id = g.gtilde_identity();
        for c in 0..g.space_size() {
            let x = g.decode(c);
            assert_eq!(g.gtilde_act(&id, &x), x);
        }
    }

    #[test]
    fn orbit_of_x12_in_ut3() {
        // oracle: all 64 pairs (a, b) applied to x12
        let g = families::ut(3, 2).unwrap();
        let x12 = g.algebra().basis_vector(0);
        let mut images = std::collections::BTreeSet::new();
        for a in 0..8 {
            for b in 0..8 {
                let tau = GtildeElement {
                    t: 0,
                    alpha: g.decode(a),
                    beta: g.decode(b),
                };
                images.insert(g.encode(&g.gtilde_act(&tau, &x12)));
            }
        }
        let x13 = g.algebra().basis_vector(2);
        let expect: std::collections::BTreeSet<u64> = [
            g.encode(&x12),
            g.encode(&linalg::add(g.field(), &x12, &x13)),
        ]
        .into();
        assert_eq!(images, expect);
    }

    #[test]
    fn generators_cover_n() {
        let g = families::ut(4, 2).unwrap();
        let basis: Vec<Vector> = (0..g.dim()).map(|i| g.algebra().basis_vector(i)).collect();
        // basis elements already generate the unitriangular group
        assert_eq!(g.unipotent_generators(&basis).len(), g.dim());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn action_laws(s1 in proptest::collection::vec(any::<u64>(), 3),
                       s2 in proptest::collection::vec(any::<u64>(), 3),
                       xc in any::<u64>(), gi in any::<usize>()) {
            for g in [families::ut(3, 2).unwrap(), families::t(3, 3).unwrap()] {
                let (t1, t2) = (random_tau(&g, &s1), random_tau(&g, &s2));
                let x = g.decode(xc % g.space_size());
                let prod = g.gtilde_compose(&t1, &t2);
                prop_assert_eq!(g.gtilde_act(&prod, &x), g.gtilde_act(&t1, &g.gtilde_act(&t2, &x)));
                let el = g.element(gi % g.order());
                prop_assert_eq!(
                    g.gtilde_act_group(&prod, &el),
                    g.gtilde_act_group(&t1, &g.gtilde_act_group(&t2, &el))
                );
                // <rho*_tau lambda, x> = <lambda, rho_{tau^{-1}} x>
                let lambda = g.decode(s2[0] % g.space_size());
                let lhs = linalg::dot(g.field(), &g.gtilde_act_dual(&t1, &lambda), &x);
                let rhs = linalg::dot(g.field(), &lambda, &g.gtilde_act(&g.gtilde_inverse(&t1), &x));
                prop_assert_eq!(lhs, rhs);
                let id = g.gtilde_compose(&t1, &g.gtilde_inverse(&t1));
                prop_assert_eq!(id, g.gtilde_identity());
            }
        }

        #[test]
        fn r_tau_matches_closed_form(s in proptest::collection::vec(any::<u64>(), 3), gi in any::<usize>()) {
            // R_tau(h + x) = h + t(w + h b1 - b1 + w b1)t^{-1}, w = x + a0 h - a0 + a0 x
            let g = families::t(3, 3).unwrap();
            let f = g.field().clone();
            let tau = random_tau(&g, &s);
            let el = g.element(gi % g.order());
            let a0 = &tau.alpha;
            let b1 = g.unipotent_inverse(&tau.beta);
            let w = linalg::add(&f, &linalg::sub(&f, &linalg::add(&f, &el.x, &g.right_h(el.h, a0)), a0),
                                &g.algebra().mul(a0, &el.x));
            let inner = linalg::add(&f, &linalg::sub(&f, &linalg::add(&f, &w, &g.left_h(el.h, &b1)), &b1),
                                    &g.algebra().mul(&w, &b1));
            let x = g.right_h(g.h().inv(tau.t), &g.left_h(tau.t, &inner));
            prop_assert_eq!(g.gtilde_act_group(&tau, &el), GroupElement { h: el.h, x });
        }
    }
}
