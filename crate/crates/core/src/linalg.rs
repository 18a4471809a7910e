//! Dense linear algebra over F_p: row reduction, nullspaces, ranks and
//! minimal polynomials.

use crate::field;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1 % p);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, len: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field::sub(a, b, self.p)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field::inv(self.get(r, c), p).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, field::mul(v, inv, p));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = field::sub(self.get(i, j), field::mul(f, self.get(r, j), p), p);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace `{v : M v = 0}`, one vector per free
    /// column, each with a 1 in its free coordinate.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field::neg(m.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut acc = Matrix::identity(self.p, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Monic minimal polynomial via the first linear dependence among
    /// `I, M, M^2, ...` (Krylov sequence in matrix space).
    pub fn minimal_polynomial(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let p = self.p;
        let mut powers: Vec<Vec<u32>> = vec![Matrix::identity(p, n).data];
        let mut cur = Matrix::identity(p, n);
        loop {
            cur = cur.mul(self);
            powers.push(cur.data.clone());
            let k = powers.len();
            let m = Matrix::from_columns(p, n * n, &powers);
            let null = m.nullspace();
            if let Some(v) = null.into_iter().find(|v| v[k - 1] != 0) {
                // Dependence with top power M^{k-1}; nullspace is 1-dim here.
                return UniPoly::from_residues(p, v).monic();
            }
        }
    }
}

/// Reduced basis (rows in RREF, zero rows dropped) of the span of `vectors`.
pub fn span_basis(p: u32, len: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::zeros(p, vectors.len(), len);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Dimension of the span of `vectors`.
pub fn span_dim(p: u32, len: usize, vectors: &[Vec<u32>]) -> usize {
    span_basis(p, len, vectors).len()
}

/// Combines basis vectors: `sum_j coeffs[j] * basis[j]`.
pub fn combine(p: u32, len: usize, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b) {
            *o = field::add(*o, field::mul(c, x, p), p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_circulant_mod3() {
        let c = Matrix::from_rows(3, &[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]);
        let null = c.nullspace();
        assert_eq!(null, vec![vec![1, 1, 1]]);
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = Matrix::from_rows(5, &[vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![0, 0, 1, 1]]);
        for v in m.nullspace() {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
        assert_eq!(m.nullspace().len() + m.rank(), 4);
    }

    #[test]
    fn minimal_polynomials() {
        // diag(0, 1) over F_5: t(t-1)
        let d = Matrix::from_rows(5, &[vec![0, 0], vec![0, 1]]);
        assert_eq!(d.minimal_polynomial(), UniPoly::new(5, vec![0, -1, 1]));
        // nilpotent Jordan block: t^2
        let n = Matrix::from_rows(5, &[vec![0, 1], vec![0, 0]]);
        assert_eq!(n.minimal_polynomial(), UniPoly::new(5, vec![0, 0, 1]));
        // zero matrix: t
        assert_eq!(Matrix::zeros(5, 3, 3).minimal_polynomial(), UniPoly::new(5, vec![0, 1]));
        // scalar 2: t - 2
        let s = Matrix::from_rows(7, &[vec![2, 0], vec![0, 2]]);
        assert_eq!(s.minimal_polynomial(), UniPoly::new(7, vec![-2, 1]));
    }

    #[test]
    fn span_helpers() {
        let vs = vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]];
        assert_eq!(span_dim(5, 3, &vs), 2);
        assert_eq!(combine(5, 3, &vs, &[1, 2, 0]), vec![0, 0, 0]);
    }
}
