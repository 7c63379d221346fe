//! Dense linear algebra over a prime field GF(p).

use serde::Serialize;

use crate::field::poly::inv_mod;

/// Row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    /// The matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(p: u32, cols: &[Vec<u32>]) -> Self {
        Self::from_rows(p, cols).transpose()
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

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                (self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u64 = (0..self.cols)
                    .map(|k| self.get(i, k) as u64 * other.get(k, j) as u64)
                    .sum();
                out.set(i, j, (s % p) as u32);
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Matrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&mut self, other: &Matrix) {
        assert_eq!(self.cols, other.cols);
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..self.cols {
                let v = self.get(r, j) as u64 * inv % p;
                self.set(r, j, v as u32);
            }
            for i in 0..self.rows {
                let f = self.get(i, c) as u64;
                if i == r || f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = (self.get(i, j) as u64 + (p - f) * self.get(r, j) as u64) % p;
                    self.set(i, j, v as u32);
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

    /// Basis of `{v : Mv = 0}`, in reduced form.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a.get(r, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// A subspace of GF(p)^dim stored by a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    #[serde(skip)]
    p: u32,
    dim_ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span(p: u32, dim_ambient: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(p, dim_ambient);
        }
        let mut m = Matrix::from_rows(p, vectors);
        let r = m.rref().len();
        let basis = (0..r).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            p,
            dim_ambient,
            basis,
        }
    }

    pub fn zero(p: u32, dim_ambient: usize) -> Self {
        Subspace {
            p,
            dim_ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(p: u32, dim_ambient: usize) -> Self {
        Self::span(p, dim_ambient, &Matrix::identity(p, dim_ambient).rows_vec())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(self.p, &rows).rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.dim_ambient, &rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // v = Σ a_i u_i = Σ b_j w_j: kernel of [U^T | -W^T]
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.p, self.dim_ambient);
        }
        let p = self.p;
        let k = self.dim();
        let mut cols: Vec<Vec<u32>> = self.basis.clone();
        cols.extend(
            other
                .basis
                .iter()
                .map(|w| w.iter().map(|&c| (p - c) % p).collect()),
        );
        let sys = Matrix::from_cols(p, &cols);
        let vecs: Vec<Vec<u32>> = sys
            .kernel()
            .into_iter()
            .map(|coef| combine(p, &self.basis, &coef[..k]))
            .collect();
        Subspace::span(p, self.dim_ambient, &vecs)
    }

    /// Every vector of the subspace, in coordinate-lexicographic order of the
    /// coefficients on the basis.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let total = (self.p as u64).pow(self.dim() as u32);
        (0..total)
            .map(|mut r| {
                let coef: Vec<u32> = (0..self.dim())
                    .map(|_| {
                        let c = (r % self.p as u64) as u32;
                        r /= self.p as u64;
                        c
                    })
                    .collect();
                combine(self.p, &self.basis, &coef)
            })
            .collect()
    }
}

impl Matrix {
    pub fn rows_vec(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// `Σ coef_i · vecs_i` over GF(p).
pub fn combine(p: u32, vecs: &[Vec<u32>], coef: &[u32]) -> Vec<u32> {
    let n = vecs.first().map_or(0, Vec::len);
    let mut out = vec![0u64; n];
    for (v, &c) in vecs.iter().zip(coef) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o += c as u64 * x as u64;
        }
    }
    out.into_iter().map(|x| (x % p as u64) as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_simple_matrix() {
        let m = Matrix::from_rows(3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![2, 1, 0]]);
        assert_eq!(m.mul_vec(&k[0]), vec![0, 0]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(5, 2));
        let sing = Matrix::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(2, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersect(&b);
        assert_eq!(c.basis(), &[vec![0, 1, 0]]);
        assert_eq!(a.sum(&b).dim(), 3);
    }

    fn arb_matrix(p: u32) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |d| {
                let rows: Vec<Vec<u32>> = d.chunks(c).map(<[u32]>::to_vec).collect();
                Matrix::from_rows(p, &rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(3)) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn intersection_dimension_formula(
            a in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..4),
            b in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..4),
        ) {
            let u = Subspace::span(3, 4, &a);
            let w = Subspace::span(3, 4, &b);
            let i = u.intersect(&w);
            prop_assert_eq!(u.dim() + w.dim(), u.sum(&w).dim() + i.dim());
            for v in i.basis() {
                prop_assert!(u.contains(v) && w.contains(v));
            }
        }
    }
}
