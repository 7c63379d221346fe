//! GF(p)-bilinear products on GF(p)^dim, stored by structure constants.
//!
//! A vector `v` has index `Σ v_i p^i`; for products carried by a field this is the
//! field's own element index.

use serde::Serialize;

use crate::linalg::Matrix;

/// Orders below this get a dense multiplication table.
pub const TABLE_THRESHOLD: u64 = 1 << 12;

/// Orders at or below this get a cached index-addition table.
const ADD_TABLE_MAX: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    p: u32,
    dim: usize,
    /// `consts[(i * dim + j) * dim + k]` is coordinate `k` of `e_i * e_j`.
    consts: Vec<u32>,
}

impl Bilinear {
    /// Evaluates `f` on all pairs of standard basis vectors.
    pub fn from_fn(p: u32, dim: usize, f: impl Fn(&[u32], &[u32]) -> Vec<u32>) -> Self {
        let basis: Vec<Vec<u32>> = (0..dim).map(|i| unit(dim, i)).collect();
        let mut consts = Vec::with_capacity(dim * dim * dim);
        for x in &basis {
            for y in &basis {
                let z = f(x, y);
                assert_eq!(z.len(), dim, "product has the wrong length");
                consts.extend(z);
            }
        }
        Bilinear { p, dim, consts }
    }

    pub fn from_consts(p: u32, dim: usize, consts: Vec<u32>) -> Self {
        assert_eq!(consts.len(), dim * dim * dim);
        Bilinear { p, dim, consts }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.dim as u32)
    }

    pub fn consts(&self) -> &[u32] {
        &self.consts
    }

    /// `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.dim + j) * self.dim;
        &self.consts[start..start + self.dim]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let p = self.p as u64;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let c = xi as u64 * yj as u64 % p;
                if c == 0 {
                    continue;
                }
                for (a, &b) in acc.iter_mut().zip(self.basis_product(i, j)) {
                    *a += c * b as u64;
                }
            }
        }
        acc.into_iter().map(|v| (v % p) as u32).collect()
    }

    /// Matrix of `y ↦ x * y`.
    pub fn left_matrix(&self, x: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| self.mul(x, &unit(self.dim, j)))
            .collect();
        Matrix::from_cols(self.p, &cols)
    }

    /// Matrix of `x ↦ x * y`.
    pub fn right_matrix(&self, y: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim)
            .map(|i| self.mul(&unit(self.dim, i), y))
            .collect();
        Matrix::from_cols(self.p, &cols)
    }

    /// The product `(x, y) ↦ A(B x * C y)` for linear maps `A, B, C`.
    pub fn transform(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> Bilinear {
        let bs: Vec<Vec<u32>> = (0..self.dim)
            .map(|i| b.mul_vec(&unit(self.dim, i)))
            .collect();
        let cs: Vec<Vec<u32>> = (0..self.dim)
            .map(|j| c.mul_vec(&unit(self.dim, j)))
            .collect();
        let mut consts = Vec::with_capacity(self.consts.len());
        for bx in &bs {
            for cy in &cs {
                consts.extend(a.mul_vec(&self.mul(bx, cy)));
            }
        }
        Bilinear {
            p: self.p,
            dim: self.dim,
            consts,
        }
    }

    pub fn vector(&self, idx: u64) -> Vec<u32> {
        vector_of(self.p, self.dim, idx)
    }

    pub fn index(&self, v: &[u32]) -> u64 {
        index_of(self.p, v)
    }

    /// Dense index table, or `None` at orders of `TABLE_THRESHOLD` and above.
    pub fn table(&self) -> Option<MulTable> {
        (self.order() < TABLE_THRESHOLD).then(|| self.table_unchecked())
    }

    /// Dense index table regardless of size.
    pub fn table_unchecked(&self) -> MulTable {
        let q = self.order() as usize;
        let d = self.dim;
        let add = IndexAdder::new(self.p, d);
        let pw: Vec<usize> = (0..d).map(|i| (self.p as usize).pow(i as u32)).collect();
        // row of e_i, built incrementally in y
        let mut basis_rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = vec![0u32; q];
            for y in 1..q {
                let j = lowest_digit(y, self.p as usize);
                let col = self.index(self.basis_product(i, j)) as u32;
                row[y] = add.add(row[y - pw[j]], col);
            }
            basis_rows.push(row);
        }
        let mut data = vec![0u32; q * q];
        for x in 1..q {
            let i = lowest_digit(x, self.p as usize);
            let prev = (x - pw[i]) * q;
            let cur = x * q;
            for y in 0..q {
                data[cur + y] = add.add(data[prev + y], basis_rows[i][y]);
            }
        }
        MulTable { order: q, data }
    }
}

/// Position of the lowest nonzero base-`p` digit of a positive integer.
fn lowest_digit(mut x: usize, p: usize) -> usize {
    let mut i = 0;
    while x % p == 0 {
        x /= p;
        i += 1;
    }
    i
}

pub fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    v[i] = 1;
    v
}

pub fn vector_of(p: u32, dim: usize, mut idx: u64) -> Vec<u32> {
    (0..dim)
        .map(|_| {
            let c = (idx % p as u64) as u32;
            idx /= p as u64;
            c
        })
        .collect()
}

pub fn index_of(p: u32, v: &[u32]) -> u64 {
    v.iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Addition of vector indices.
#[derive(Clone, Debug)]
pub struct IndexAdder {
    p: u32,
    dim: usize,
    q: usize,
    table: Option<Vec<u16>>,
}

impl IndexAdder {
    pub fn new(p: u32, dim: usize) -> Self {
        let order = (p as u64).pow(dim as u32);
        let q = order as usize;
        let table = (order <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u16; q * q];
            for x in 0..q {
                for y in x..q {
                    let z = Self::digitwise(p, dim, x as u32, y as u32) as u16;
                    t[x * q + y] = z;
                    t[y * q + x] = z;
                }
            }
            t
        });
        IndexAdder { p, dim, q, table }
    }

    fn digitwise(p: u32, dim: usize, mut x: u32, mut y: u32) -> u32 {
        let mut out = 0u32;
        let mut w = 1u32;
        for _ in 0..dim {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        match &self.table {
            Some(t) => t[x as usize * self.q + y as usize] as u32,
            None if self.p == 2 => x ^ y,
            None => Self::digitwise(self.p, self.dim, x, y),
        }
    }
}

/// Dense multiplication table on indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    order: usize,
    data: Vec<u32>,
}

impl MulTable {
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                data.push(f(x, y));
            }
        }
        MulTable { order, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.data[x * self.order + y]
    }

    pub fn set(&mut self, x: usize, y: usize, z: u32) {
        self.data[x * self.order + y] = z;
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u32] {
        &self.data[x * self.order..(x + 1) * self.order]
    }

    /// Rows of the table, one per left factor.
    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.order)
    }

    /// Header row of right-factor indices, then one row per left factor led by its index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x");
        for y in 0..self.order {
            out.push_str(&format!(",{y}"));
        }
        out.push('\n');
        for (x, row) in self.rows().enumerate() {
            out.push_str(&x.to_string());
            for z in row {
                out.push_str(&format!(",{z}"));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for MulTable {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.rows())
    }
}
