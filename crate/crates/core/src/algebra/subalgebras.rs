use super::action::ActionTables;
use super::nilpotent::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::scalars::FqElem;

/// Largest `dim J` accepted by [`invariant_subalgebras`].
pub const MAX_ENUMERATION_DIM: usize = 6;
const MAX_SUBSPACES: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSubalgebra {
    /// Reduced row echelon basis.
    pub basis: Vec<Vector>,
    /// Maximal among the proper invariant subalgebras.
    pub maximal: bool,
}

/// All subalgebras of `J` invariant under the left and right actions of the
/// `H` elements `members`, by enumerating every subspace in reduced row
/// echelon form. For each maximal one, checks `J^2 <= J'` and that `J'` is a
/// two-sided ideal.
pub fn invariant_subalgebras(
    algebra: &NilpotentAlgebra,
    tables: &ActionTables,
    members: &[usize],
) -> Result<Vec<InvariantSubalgebra>> {
    let d = algebra.dim();
    let f = algebra.field();
    let q = f.q() as u64;
    if d > MAX_ENUMERATION_DIM {
        return Err(Error::Capability(format!(
            "subalgebra enumeration needs dim J <= {MAX_ENUMERATION_DIM}, got {d}"
        )));
    }
    let total: u64 = (0..=d)
        .map(|k| gaussian_binomial(d as u64, k as u64, q))
        .sum();
    if total > MAX_SUBSPACES {
        return Err(Error::Capability(format!(
            "{total} subspaces to enumerate exceeds {MAX_SUBSPACES}"
        )));
    }
    let mut found: Vec<Vec<Vector>> = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    ((p + 1)..d)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let count = q.pow(free.len() as u32);
            for mut code in 0..count {
                let mut rows: Vec<Vector> = pivots
                    .iter()
                    .map(|&p| {
                        let mut v = vec![FqElem::ZERO; d];
                        v[p] = FqElem::ONE;
                        v
                    })
                    .collect();
                for &(r, c) in &free {
                    rows[r][c] = FqElem((code % q) as u16);
                    code /= q;
                }
                let invariant = members.iter().all(|&m| {
                    rows.iter().all(|b| {
                        linalg::in_span(f, &rows, &tables.left[m].apply(f, b))
                            && linalg::in_span(f, &rows, &tables.right[m].apply(f, b))
                    })
                });
                if invariant && algebra.closure_witness(&rows).is_none() {
                    found.push(rows);
                }
            }
        }
    }
    let proper: Vec<bool> = found.iter().map(|b| b.len() < d).collect();
    let square = algebra.square();
    let mut out = Vec::with_capacity(found.len());
    for (i, b) in found.iter().enumerate() {
        let maximal = proper[i]
            && !found.iter().enumerate().any(|(j, c)| {
                j != i && proper[j] && c.len() > b.len() && linalg::subspace_contains(f, c, b)
            });
        if maximal {
            if !linalg::subspace_contains(f, b, &square) {
                return Err(Error::Consistency(format!(
                    "maximal invariant subalgebra {b:?} does not contain J^2"
                )));
            }
            let ideal = b.iter().all(|x| {
                (0..d).all(|j| {
                    let u = algebra.basis_vector(j);
                    linalg::in_span(f, b, &algebra.mul(x, &u))
                        && linalg::in_span(f, b, &algebra.mul(&u, x))
                })
            });
            if !ideal {
                return Err(Error::Consistency(format!(
                    "maximal invariant subalgebra {b:?} is not an ideal"
                )));
            }
        }
        out.push(InvariantSubalgebra {
            basis: b.clone(),
            maximal,
        });
    }
    Ok(out)
}

fn gaussian_binomial(n: u64, k: u64, q: u64) -> u64 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den).min(u64::MAX as u128) as u64
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
