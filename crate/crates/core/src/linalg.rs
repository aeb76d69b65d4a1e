//! Dense linear algebra over `F_q`: matrices acting on column vectors,
//! row reduction, kernels and subspace enumeration.

use crate::scalars::{Fq, FqElem};

pub type Vector = Vec<FqElem>;

/// Row-major square or rectangular matrix over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FqElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FqElem::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols)
                    .all(|j| self.get(i, j) == if i == j { FqElem::ONE } else { FqElem::ZERO })
            })
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, f: &Fq, v: &[FqElem]) -> Vector {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = FqElem::ZERO;
                for (a, &b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.add(acc, f.mul(*a, b));
                    }
                }
                acc
            })
            .collect()
    }

    /// `w M` for a row vector `w` (a linear form composed with `M`).
    pub fn apply_row(&self, f: &Fq, w: &[FqElem]) -> Vector {
        debug_assert_eq!(w.len(), self.rows);
        let mut out = vec![FqElem::ZERO; self.cols];
        for (i, &wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            for (slot, &a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *slot = f.add(*slot, f.mul(wi, a));
                }
            }
        }
        out
    }

    pub fn mul(&self, f: &Fq, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Fq, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, f: &Fq, c: FqElem) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, f: &Fq, other: &Matrix) -> Matrix {
        self.add(f, &other.scale(f, f.neg(FqElem::ONE)))
    }

    pub fn pow(&self, f: &Fq, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self, f: &Fq) -> usize {
        rref(f, (0..self.rows).map(|i| self.row(i).to_vec()).collect()).len()
    }

    /// Basis of `{ v : M v = 0 }`.
    pub fn kernel(&self, f: &Fq) -> Vec<Vector> {
        nullspace(
            f,
            (0..self.rows).map(|i| self.row(i).to_vec()).collect(),
            self.cols,
        )
    }

    /// Basis of the column space.
    pub fn image(&self, f: &Fq) -> Vec<Vector> {
        rref(f, (0..self.cols).map(|j| self.column(j)).collect())
    }
}

pub fn is_zero(v: &[FqElem]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add(f: &Fq, a: &[FqElem], b: &[FqElem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn sub(f: &Fq, a: &[FqElem], b: &[FqElem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn scale(f: &Fq, c: FqElem, a: &[FqElem]) -> Vector {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn dot(f: &Fq, a: &[FqElem], b: &[FqElem]) -> FqElem {
    a.iter()
        .zip(b)
        .fold(FqElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Reduced row echelon form; returns the nonzero rows (a basis of the row space).
pub fn rref(f: &Fq, mut rows: Vec<Vector>) -> Vec<Vector> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut lead = 0;
    for col in 0..cols {
        let Some(pivot) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, pivot);
        let inv = f.inv(rows[lead][col]).expect("pivot is nonzero");
        rows[lead] = scale(f, inv, &rows[lead]);
        for r in 0..rows.len() {
            if r != lead && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                let shifted = scale(f, factor, &rows[lead]);
                rows[r] = sub(f, &rows[r], &shifted);
            }
        }
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    rows
}

fn pivots(rows: &[Vector]) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            r.iter()
                .position(|x| !x.is_zero())
                .expect("rref rows are nonzero")
        })
        .collect()
}

/// Basis of the solutions `x` of `rows . x = 0`, for `cols` unknowns.
pub fn nullspace(f: &Fq, rows: Vec<Vector>, cols: usize) -> Vec<Vector> {
    let reduced = rref(f, rows);
    let piv = pivots(&reduced);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![FqElem::ZERO; cols];
            v[fc] = FqElem::ONE;
            for (row, &pc) in reduced.iter().zip(&piv) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Canonical (reduced echelon) basis of the span of `vectors`.
pub fn span_basis(f: &Fq, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    rref(f, vectors.to_vec())
}

pub fn in_span(f: &Fq, basis: &[Vector], v: &[FqElem]) -> bool {
    if is_zero(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    rref(f, rows).len() == rref(f, basis.to_vec()).len()
}

/// Whether span(a) is contained in span(b).
pub fn subspace_contains(f: &Fq, big: &[Vector], small: &[Vector]) -> bool {
    small.iter().all(|v| in_span(f, big, v))
}

/// Coordinates of `v` in a linearly independent `basis`, if `v` lies in the span.
pub fn coordinates(f: &Fq, basis: &[Vector], v: &[FqElem]) -> Option<Vector> {
    let n = v.len();
    let k = basis.len();
    // solve sum c_j basis_j = v via augmented rows (one per ambient coordinate)
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row: Vector = basis.iter().map(|b| b[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let reduced = rref(f, rows);
    let mut c = vec![FqElem::ZERO; k];
    for row in &reduced {
        let p = row.iter().position(|x| !x.is_zero()).unwrap();
        if p == k {
            return None;
        }
        c[p] = row[k];
    }
    Some(c)
}

/// Encode a vector as an integer whose natural order is the lexicographic
/// order on coordinates (first coordinate most significant).
pub fn encode(q: usize, v: &[FqElem]) -> u64 {
    v.iter().fold(0u64, |acc, x| acc * q as u64 + x.0 as u64)
}

pub fn decode(q: usize, dim: usize, mut code: u64) -> Vector {
    let mut v = vec![FqElem::ZERO; dim];
    for slot in v.iter_mut().rev() {
        *slot = FqElem((code % q as u64) as u16);
        code /= q as u64;
    }
    v
}

/// All `q^k` elements of the span of `basis` (ambient dimension `dim`).
pub fn enumerate_span(f: &Fq, basis: &[Vector], dim: usize) -> Vec<Vector> {
    let q = f.q();
    let k = basis.len();
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![FqElem::ZERO; dim];
            for b in basis {
                let c = FqElem((idx % q) as u16);
                idx /= q;
                if !c.is_zero() {
                    v = add(f, &v, &scale(f, c, b));
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    fn f3() -> Fq {
        Fq::new(FieldSpec::prime(3).unwrap()).unwrap()
    }

    fn v(xs: &[u16]) -> Vector {
        xs.iter().map(|&x| FqElem(x)).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let f = f3();
        let m = Matrix::from_rows(&[v(&[1, 2, 0]), v(&[2, 1, 0])]);
        assert_eq!(m.rank(&f), 1);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(is_zero(&m.apply(&f, x)));
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = f3();
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let target = add(&f, &scale(&f, FqElem(2), &basis[0]), &basis[1]);
        assert_eq!(coordinates(&f, &basis, &target), Some(v(&[2, 1])));
        assert_eq!(coordinates(&f, &basis, &v(&[0, 0, 1])), None);
    }

    #[test]
    fn encode_order_is_lexicographic() {
        let a = v(&[0, 2, 2]);
        let b = v(&[1, 0, 0]);
        assert!(encode(3, &a) < encode(3, &b));
        assert_eq!(decode(3, 3, encode(3, &a)), a);
    }

    #[test]
    fn span_enumeration_counts() {
        let f = f3();
        let pts = enumerate_span(&f, &[v(&[1, 0, 1]), v(&[0, 1, 1])], 3);
        let set: std::collections::HashSet<_> = pts.iter().collect();
        assert_eq!(set.len(), 9);
    }
}
