//! Exact arithmetic in the cyclotomic field `Q(zeta_n)`.
//!
//! Elements are coordinate vectors in the power basis `1, z, ..., z^(phi(n)-1)`
//! modulo the n-th cyclotomic polynomial, which makes equality coordinate-wise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer polynomial, low degree first.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd] / lead;
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// n-th cyclotomic polynomial via `x^n - 1 = prod_{d | n} Phi_d(x)`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Shared data for `Q(zeta_n)`: the reductions of every power `zeta^k`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    phi: usize,
    // powers[k] = zeta^k in the power basis, k in 0..n
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    fn build(order: u32) -> Self {
        let phi_poly = cyclotomic_polynomial(order);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![0i64; phi];
        current[0] = 1;
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by zeta: shift, then reduce the overflow coefficient
            let top = current[phi - 1];
            for i in (1..phi).rev() {
                current[i] = current[i - 1];
            }
            current[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    current[i] -= top * phi_poly[i];
                }
            }
        }
        CyclotomicField { order, phi, powers }
    }

    /// Cached field for order `n` (n >= 1).
    pub fn get(order: u32) -> Arc<CyclotomicField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        guard
            .entry(order)
            .or_insert_with(|| Arc::new(CyclotomicField::build(order)))
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order == other.field.order {
            return self.coeffs == other.coeffs;
        }
        match Cyclotomic::align(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let field = CyclotomicField::get(order);
        let coeffs = vec![Rational::zero(); field.phi];
        Cyclotomic { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let field = CyclotomicField::get(order);
        let idx = k.rem_euclid(order as i64) as usize;
        let coeffs = field.powers[idx]
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Cyclotomic { field, coeffs }
    }

    /// `sum_k counts[k] * zeta_n^k`; `counts` has length `n`.
    pub fn from_root_counts(order: u32, counts: &[i64]) -> Self {
        let field = CyclotomicField::get(order);
        assert_eq!(counts.len(), order as usize);
        let mut acc = vec![0i64; field.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (slot, &v) in acc.iter_mut().zip(&field.powers[k]) {
                    *slot += c * v;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| Rational::from_integer(c.into()))
            .collect();
        Cyclotomic { field, coeffs }
    }

    /// Build from raw power-basis coordinates (length must be `phi(n)`).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let field = CyclotomicField::get(order);
        if coeffs.len() != field.phi {
            return Err(Error::Usage(format!(
                "Q(zeta_{order}) has degree {}, got {} coordinates",
                field.phi,
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { field, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if this element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// True when every coordinate is an integer, i.e. the value lies in `Z[zeta_n]`.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True for values in `{0, 1, 2, ...}`.
    pub fn is_nonneg_integer(&self) -> bool {
        self.to_rational()
            .is_some_and(|r| r.is_integer() && !r.is_negative())
    }

    /// Re-express in `Q(zeta_m)` for a multiple `m` of the current order.
    pub fn lift(&self, m: u32) -> Result<Self> {
        let n = self.field.order;
        if m % n != 0 {
            return Err(Error::Usage(format!(
                "cannot lift Q(zeta_{n}) into Q(zeta_{m})"
            )));
        }
        if m == n {
            return Ok(self.clone());
        }
        let step = (m / n) as i64;
        let mut out = Cyclotomic::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &Cyclotomic::root_of_unity(m, step * i as i64).scale(c);
            }
        }
        Ok(out)
    }

    /// Bring two elements into a common field; one order must divide the other.
    pub fn align(a: &Cyclotomic, b: &Cyclotomic) -> Result<(Cyclotomic, Cyclotomic)> {
        let (n, m) = (a.order(), b.order());
        if n == m {
            Ok((a.clone(), b.clone()))
        } else if m % n == 0 {
            Ok((a.lift(m)?, b.clone()))
        } else if n % m == 0 {
            Ok((a.clone(), b.lift(n)?))
        } else {
            Err(Error::Usage(format!(
                "mismatched cyclotomic orders {n} and {m} (neither divides the other)"
            )))
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        let n = self.field.order as usize;
        let mut acc = vec![Rational::zero(); self.field.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = &self.field.powers[(n - i) % n];
            for (slot, &v) in acc.iter_mut().zip(target) {
                if v != 0 {
                    *slot += c * Rational::from_integer(v.into());
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: acc,
        }
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b) = Cyclotomic::align(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Cyclotomic {
            field: a.field,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b) = Cyclotomic::align(self, other)?;
        let field = a.field.clone();
        let n = field.order as usize;
        let mut acc = vec![Rational::zero(); field.phi];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (slot, &v) in acc.iter_mut().zip(&field.powers[(i + j) % n]) {
                    if v != 0 {
                        *slot += &xy * Rational::from_integer(v.into());
                    }
                }
            }
        }
        Ok(Cyclotomic { field, coeffs: acc })
    }

    /// Multiplicative inverse, by solving the multiplication-by-`self` system over `Q`.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero in Q(zeta_n)".into()));
        }
        let order = self.order();
        let phi = self.field.phi;
        // column j = self * zeta^j
        let columns: Vec<Cyclotomic> = (0..phi)
            .map(|j| self * &Cyclotomic::root_of_unity(order, j as i64))
            .collect();
        let mut aug: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = columns.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                row
            })
            .collect();
        for col in 0..phi {
            let pivot = (col..phi)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| Error::Consistency("singular multiplication matrix".into()))?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=phi {
                        let delta = &factor * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|row| row[phi].clone()).collect();
        Ok(Cyclotomic {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b) = Cyclotomic::align(self, other)?;
        a.try_mul(&b.inverse()?)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic orders incompatible")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_sub(rhs).expect("cyclotomic orders incompatible")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic orders incompatible")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Power-basis rendering, e.g. `2+z3^2` or `-1/2*z6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.order;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            let monomial = match i {
                0 => String::new(),
                1 => format!("z{n}"),
                _ => format!("z{n}^{i}"),
            };
            let body = if monomial.is_empty() {
                fmt_rational(&abs)
            } else if abs.is_one() {
                monomial
            } else {
                format!("{}*{}", fmt_rational(&abs), monomial)
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.order, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            order: self.field.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(deserializer)?;
        if repr.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| {
                parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Cyclotomic::from_coeffs(repr.order, coeffs).map_err(D::Error::custom)
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<BigInt>().ok()?,
            b.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Least common multiple helper for choosing an ambient order.
pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}
