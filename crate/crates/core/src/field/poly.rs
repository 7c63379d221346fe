//! Dense polynomials over GF(p), coefficients stored low-to-high.
//!
//! Only what the field constructor needs: products, remainders, gcds and the
//! irreducibility test used to pick a default modulus.

/// Inverse of `a` modulo the prime `p`. `a` must be nonzero mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p as u64 - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn sub(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let n = f.len().max(g.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        *o = (a + p - b) % p;
    }
    trim(&mut out);
    out
}

pub fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut acc = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p64;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `f` modulo the nonzero polynomial `g`.
pub fn rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let dg = degree(g).expect("division by the zero polynomial");
    let lead_inv = inv_mod(g[dg], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u32> = f.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - dg;
        for (j, &c) in g.iter().enumerate().take(dg + 1) {
            let sub = factor * c as u64 % p64;
            r[shift + j] = ((r[shift + j] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd of two polynomials.
pub fn gcd_poly(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = inv_mod(a[d], p) as u64;
        for c in a.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    a
}

fn mul_mod(f: &[u32], g: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(f, g, p), modulus, p)
}

/// `base^exp mod modulus`.
pub fn pow_poly_mod(base: &[u32], mut exp: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility of a monic `f` of degree `m ≥ 1`: `gcd(f, t^{p^i} - t) = 1` for
/// every `1 ≤ i ≤ m/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    let t = vec![0u32, 1];
    let mut power = t.clone();
    for _ in 1..=m / 2 {
        power = pow_poly_mod(&power, p as u64, f, p);
        let diff = sub(&power, &t, p);
        let g = gcd_poly(f, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Coefficients of a length-`m` vector enumerated in lexicographic order with the
/// constant coefficient compared first.
pub fn lex_coeffs(rank: u64, p: u32, m: usize) -> Vec<u32> {
    let mut out = vec![0u32; m];
    let mut r = rank;
    for i in (0..m).rev() {
        out[i] = (r % p as u64) as u32;
        r /= p as u64;
    }
    out
}

/// The lexicographically smallest monic irreducible of degree `m` over GF(p),
/// comparing coefficients from the constant term upwards.
pub fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let total = (p as u64).pow(m as u32);
    for rank in 0..total {
        let mut f = lex_coeffs(rank, p, m);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over a finite field")
}
