use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

const MAX_ABELIAN_ORDER: usize = 4096;

/// A finite abelian group, realized as a subgroup of an ambient
/// `Z/d_1 x ... x Z/d_r` given by its invariant factors.
///
/// Elements are exponent tuples; they are indexed in lexicographic order, so
/// the identity always has index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u32>,
    generators: Vec<Vec<u32>>,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl AbelianGroup {
    /// The full product of cyclic groups of the given orders.
    pub fn full(orders: &[u32]) -> Result<Self> {
        let gens = (0..orders.len())
            .map(|i| {
                let mut g = vec![0; orders.len()];
                g[i] = 1 % orders[i].max(1);
                g
            })
            .collect::<Vec<_>>();
        Self::generated(orders, &gens)
    }

    /// The subgroup of the ambient product generated by `generators`.
    pub fn generated(orders: &[u32], generators: &[Vec<u32>]) -> Result<Self> {
        if orders.iter().any(|&d| d == 0) {
            return Err(Error::Validation(
                "cyclic factor orders must be positive".into(),
            ));
        }
        let ambient: usize = orders.iter().map(|&d| d as usize).product();
        if ambient > MAX_ABELIAN_ORDER {
            return Err(Error::Capability(format!(
                "abelian group of order {ambient} exceeds the limit {MAX_ABELIAN_ORDER}"
            )));
        }
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != orders.len() {
                return Err(Error::Validation(format!(
                    "group element {g:?} has {} coordinates, expected {}",
                    g.len(),
                    orders.len()
                )));
            }
            gens.push(
                g.iter()
                    .zip(orders)
                    .map(|(&a, &d)| a % d)
                    .collect::<Vec<_>>(),
            );
        }
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            a.iter()
                .zip(b)
                .zip(orders)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect()
        };
        let identity = vec![0u32; orders.len()];
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Vec<u32>> = seen.into_iter().collect();
        let index: HashMap<Vec<u32>, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let n = elements.len();
        let mut mul = vec![0usize; n * n];
        let mut inv = vec![0usize; n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                mul[a * n + b] = index[&add(x, y)];
            }
            let neg: Vec<u32> = x.iter().zip(orders).map(|(&v, &d)| (d - v) % d).collect();
            inv[a] = index[&neg];
        }
        Ok(AbelianGroup {
            orders: orders.to_vec(),
            generators: gens,
            elements,
            index,
            mul,
            inv,
        })
    }

    /// The ambient invariant factors.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Indices of the generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn index_of(&self, tuple: &[u32]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exponent of this (sub)group.
    pub fn exponent(&self) -> u32 {
        (0..self.order())
            .map(|a| self.element_order(a))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Exponent of the ambient product; every ambient character takes values
    /// in the `ambient_exponent`-th roots of unity.
    pub fn ambient_exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &d| acc.lcm(&d))
    }

    /// All subgroups, each as a sorted list of element indices, in a canonical order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity()]];
        found.insert(vec![self.identity()]);
        while let Some(sub) = frontier.pop() {
            for g in 0..self.order() {
                if sub.binary_search(&g).is_ok() {
                    continue;
                }
                let bigger = self.closure(&sub, g);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by_key(|s| (s.len(), s.clone()));
        all
    }

    fn closure(&self, members: &[usize], extra: usize) -> Vec<usize> {
        let mut set: BTreeSet<usize> = members.iter().copied().collect();
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        let gens: Vec<usize> = members.iter().copied().chain([extra]).collect();
        set.insert(extra);
        queue.push_back(extra);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Linear characters of the subset `members` (a subgroup), as exponents of
    /// `zeta_order`; `order` must be a multiple of the ambient exponent.
    ///
    /// Characters are the distinct restrictions of the ambient characters
    /// `h -> prod zeta_{d_i}^{c_i h_i}`, listed in order of the least `c`
    /// producing them.
    pub fn characters_of(&self, members: &[usize], order: u32) -> Vec<Vec<u32>> {
        assert_eq!(order % self.ambient_exponent(), 0);
        let r = self.orders.len();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let total: usize = self.orders.iter().map(|&d| d as usize).product();
        for mut code in 0..total {
            // decode c with the first coordinate most significant
            let mut c = vec![0u32; r];
            for i in (0..r).rev() {
                c[i] = (code % self.orders[i] as usize) as u32;
                code /= self.orders[i] as usize;
            }
            let values: Vec<u32> = members
                .iter()
                .map(|&m| {
                    let h = &self.elements[m];
                    let mut acc = 0u64;
                    for i in 0..r {
                        acc += c[i] as u64 * h[i] as u64 * (order / self.orders[i]) as u64;
                    }
                    (acc % order as u64) as u32
                })
                .collect();
            if seen.insert(values.clone()) {
                out.push(values);
            }
        }
        debug_assert_eq!(out.len(), members.len());
        out
    }

    /// Direct product, with ambient factors concatenated.
    pub fn direct_product(&self, other: &AbelianGroup) -> Result<AbelianGroup> {
        let orders: Vec<u32> = self.orders.iter().chain(&other.orders).copied().collect();
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(
                g.iter()
                    .copied()
                    .chain(std::iter::repeat_n(0, other.orders.len()))
                    .collect(),
            );
        }
        for g in &other.generators {
            gens.push(
                std::iter::repeat_n(0, self.orders.len())
                    .chain(g.iter().copied())
                    .collect(),
            );
        }
        AbelianGroup::generated(&orders, &gens)
    }
}
