//! Index-addressed lookup tables for small fields, used by the exhaustive sweeps.

use super::FieldCtx;

/// Largest order for which [`FieldTables`] are built (the addition table is quadratic).
pub const MAX_TABLE_ORDER: u64 = 1024;

/// Arithmetic on element indices. Index 0 is zero and index 1 is one.
#[derive(Clone, Debug)]
pub struct FieldTables {
    q: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `exp` has length `2(q-1)` so that `exp[log a + log b]` needs no reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
    inv: Vec<u16>,
    /// `frob[s][x] = x^{p^s}` for `0 ≤ s < m`.
    frob: Vec<Vec<u16>>,
}

impl FieldTables {
    pub(super) fn build(ctx: &FieldCtx) -> Option<Self> {
        if ctx.order() > MAX_TABLE_ORDER {
            return None;
        }
        let q = ctx.order() as usize;
        let elems: Vec<_> = ctx.elements().collect();
        let mut add = vec![0u16; q * q];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate().skip(i) {
                let k = ctx.index(&ctx.add(x, y)) as u16;
                add[i * q + j] = k;
                add[j * q + i] = k;
            }
        }
        let neg = elems
            .iter()
            .map(|x| ctx.index(&ctx.neg(x)) as u16)
            .collect();
        let mut exp = Vec::with_capacity(2 * (q - 1));
        let mut log = vec![u32::MAX; q];
        let g = ctx.generator();
        let mut cur = ctx.one();
        for i in 0..q - 1 {
            let idx = ctx.index(&cur);
            exp.push(idx as u16);
            log[idx as usize] = i as u32;
            cur = ctx.mul(&cur, g);
        }
        exp.extend_from_within(..);
        let mut inv = vec![0u16; q];
        for x in 1..q {
            inv[x] = exp[(q - 1 - log[x] as usize) % (q - 1)];
        }
        let frob = (0..ctx.m())
            .map(|s| {
                elems
                    .iter()
                    .map(|x| ctx.index(&ctx.frobenius_any(x, s)) as u16)
                    .collect()
            })
            .collect();
        Some(FieldTables {
            q,
            add,
            neg,
            exp,
            log,
            inv,
            frob,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.q + y as usize] as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize] as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize] as u32
    }

    /// Inverse of a nonzero index.
    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        self.inv[x as usize] as u32
    }

    #[inline]
    pub fn div(&self, x: u32, y: u32) -> u32 {
        self.mul(x, self.inv(y))
    }

    #[inline]
    pub fn frob(&self, x: u32, s: usize) -> u32 {
        self.frob[s][x as usize] as u32
    }

    /// `x^e` for nonzero `x`, or zero.
    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if x == 0 {
            return u32::from(e == 0);
        }
        let q1 = (self.q - 1) as u64;
        self.exp[((self.log[x as usize] as u64 * (e % q1)) % q1) as usize] as u32
    }

    /// Discrete log of a nonzero index.
    #[inline]
    pub fn log(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    #[inline]
    pub fn exp(&self, k: u32) -> u32 {
        self.exp[(k as usize) % (self.q - 1)] as u32
    }
}
