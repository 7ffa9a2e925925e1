//! Prime tests and irreducibility over prime fields.

use super::poly::IntPoly;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorisation into `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Coefficients mod `p` of an integer polynomial, trailing zeros trimmed.
pub fn reduce_mod(poly: &IntPoly, p: u64) -> Vec<u64> {
    let mut c: Vec<u64> = poly
        .univariate_coeffs()
        .into_iter()
        .map(|v| v.rem_euclid(p as i64) as u64)
        .collect();
    trim(&mut c);
    c
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Remainder of `a` modulo `b` over F_p; `b` must be nonzero.
fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &bc) in b.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p * p - factor * bc % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// Irreducibility by trial division by every monic polynomial of degree
/// `1..=deg/2`. Intended for the small fields this crate materialises.
pub fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let mut f = coeffs.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The smallest monic irreducible of degree `k` over F_p, comparing the
/// coefficient tuples `(c_0, c_1, ..., c_{k-1})` lexicographically.
pub fn default_modulus(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for idx in 0..count {
        // c_0 is the most significant digit of idx
        let mut c = vec![0u64; k as usize + 1];
        let mut v = idx;
        for i in (0..k as usize).rev() {
            c[i] = v % p;
            v /= p;
        }
        c[k as usize] = 1;
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
