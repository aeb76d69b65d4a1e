//! Finite fields `F_q = F_p[t]/(f)` with table-driven arithmetic.
//!
//! Elements are stored as a single index `sum c_i p^i` over the polynomial
//! coordinates `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`, so the prime subfield
//! occupies indices `0..p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field size for which the addition and multiplication tables are built.
pub const MAX_FIELD_SIZE: usize = 256;

/// Description of `F_q`: a prime `p` and a monic irreducible modulus of degree `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Coefficients low degree first, length `m + 1`, leading coefficient 1.
    pub modulus: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p, low degree first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] * lead_inv) % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2)
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(FieldSpec {
            p,
            m: 1,
            modulus: vec![0, 1],
        })
    }

    /// `F_p[t]/(modulus)`; the modulus must be monic and irreducible.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let mut modulus = modulus;
        poly_trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::Domain("modulus must have degree at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Domain(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Domain("modulus must be monic".into()));
        }
        let m = (modulus.len() - 1) as u32;
        if !is_irreducible(&modulus, p) {
            return Err(Error::Domain(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(FieldSpec { p, m, modulus })
    }

    /// Prime fields, plus built-in moduli for q in {4, 8, 9, 16, 25, 27}.
    pub fn builtin(q: u32) -> Result<Self> {
        match q {
            4 => FieldSpec::new(2, vec![1, 1, 1]),
            8 => FieldSpec::new(2, vec![1, 1, 0, 1]),
            9 => FieldSpec::new(3, vec![1, 0, 1]),
            16 => FieldSpec::new(2, vec![1, 1, 0, 0, 1]),
            25 => FieldSpec::new(5, vec![2, 0, 1]),
            27 => FieldSpec::new(3, vec![1, 2, 0, 1]),
            _ if is_prime(q) => FieldSpec::prime(q),
            _ => Err(Error::Capability(format!(
                "no built-in field of order {q}; supply a modulus"
            ))),
        }
    }

    pub fn q(&self) -> usize {
        (self.p as usize).pow(self.m)
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = low;
            for _ in 0..d {
                g.push((rest % p as usize) as u32);
                rest /= p as usize;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// An element of `F_q`, as an index into the field tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(pub u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete finite field with precomputed arithmetic tables.
#[derive(Clone)]
pub struct Fq {
    spec: FieldSpec,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u32>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Fq(p={}, m={}, modulus={:?})",
            self.spec.p, self.spec.m, self.spec.modulus
        )
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Fq {}

impl Fq {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q = spec.q();
        if q > MAX_FIELD_SIZE {
            return Err(Error::Capability(format!(
                "field of order {q} exceeds the table limit {MAX_FIELD_SIZE}"
            )));
        }
        let p = spec.p;
        let m = spec.m as usize;
        let coords = |i: usize| -> Vec<u32> {
            let mut c = Vec::with_capacity(m);
            let mut r = i;
            for _ in 0..m {
                c.push((r % p as usize) as u32);
                r /= p as usize;
            }
            c
        };
        let index = |c: &[u32]| -> u16 {
            c.iter()
                .rev()
                .fold(0usize, |acc, &x| acc * p as usize + x as usize) as u16
        };
        let all: Vec<Vec<u32>> = (0..q).map(coords).collect();

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = all[a]
                    .iter()
                    .zip(&all[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = index(&s);
                let mut prod = vec![0u32; 2 * m];
                for (i, x) in all[a].iter().enumerate() {
                    for (j, y) in all[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &spec.modulus, p);
                r.resize(m, 0);
                mul[a * q + b] = index(&r);
            }
        }
        let neg: Vec<u16> = (0..q)
            .map(|a| {
                let c: Vec<u32> = all[a].iter().map(|&x| (p - x) % p).collect();
                index(&c)
            })
            .collect();
        let mut inv = vec![0u16; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .expect("field has inverses") as u16;
        }
        // Tr(t) = t + t^p + ... + t^(p^(m-1)), lands in the prime subfield.
        let mut trace = vec![0u32; q];
        for (t, slot) in trace.iter_mut().enumerate() {
            let mut acc = 0u16;
            let mut power = t as u16;
            for _ in 0..m {
                acc = add[acc as usize * q + power as usize];
                let mut next = 1u16;
                for _ in 0..p {
                    next = mul[next as usize * q + power as usize];
                }
                power = next;
            }
            debug_assert!((acc as u32) < p);
            *slot = acc as u32;
        }
        Ok(Fq {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            trace,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as u16).map(FqElem)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.0 as usize * self.q + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.0 as usize * self.q + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero in F_q".into()));
        }
        Ok(FqElem(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to the prime field, as a residue in `[0, p)`.
    pub fn trace(&self, a: FqElem) -> u32 {
        self.trace[a.0 as usize]
    }

    /// Embeds an integer residue into the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.spec.p as i64) as u16)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem> {
        let p = self.spec.p;
        if coords.len() > self.spec.m as usize || coords.iter().any(|&c| c >= p) {
            return Err(Error::Domain(format!(
                "{coords:?} is not a coordinate vector of F_{}",
                self.q
            )));
        }
        let idx = coords
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * p as usize + x as usize);
        Ok(FqElem(idx as u16))
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let p = self.spec.p as usize;
        let mut r = a.0 as usize;
        (0..self.spec.m)
            .map(|_| {
                let c = (r % p) as u32;
                r /= p;
                c
            })
            .collect()
    }

    /// Least generator of the cyclic group `F_q^*`.
    pub fn primitive_element(&self) -> FqElem {
        let order = (self.q - 1) as u64;
        let prime_factors: Vec<u64> = (2..=order)
            .filter(|d| order % d == 0 && is_prime(*d as u32))
            .collect();
        self.elements()
            .skip(1)
            .find(|&a| {
                prime_factors
                    .iter()
                    .all(|&r| self.pow(a, order / r) != FqElem::ONE)
            })
            .unwrap_or(FqElem::ONE)
    }
}
