//! Polynomial roots over prime fields `F_p` with `p < 2⁶⁴`.
//!
//! Polynomials are ascending coefficient vectors reduced into `[0, p)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Below this modulus roots are found by scanning every residue.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduces an integer into `[0, p)`.
pub fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn reduce_poly(f: &[BigInt], p: u64) -> Vec<u64> {
    trim(f.iter().map(|c| reduce_bigint(c, p)).collect())
}

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn make_monic(f: &mut [u64], p: u64) {
    let lead = *f.last().unwrap();
    if lead != 1 {
        let inv = inv_mod(lead, p);
        for c in f.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

/// Remainder of `a` by `b` (`b` nonzero).
fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let q = mul_mod(*r.last().unwrap(), inv, p);
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(q, c, p), p);
        }
        r = trim(r);
    }
    r
}

fn div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0; a.len() - db];
    for shift in (0..q.len()).rev() {
        let c = mul_mod(r[shift + db], inv, p);
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bc, p), p);
        }
    }
    q
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if !a.is_empty() {
        make_monic(&mut a, p);
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    rem(&out, m, p)
}

fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_rem(&b, &b, m, p);
        }
    }
    acc
}

/// Distinct roots of `f` in `F_p`, ascending. `f` must be nonzero mod `p`.
pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
    let f = trim(f.to_vec());
    assert!(!f.is_empty(), "zero polynomial");
    if f.len() == 1 {
        return Vec::new();
    }
    if p < EXHAUSTIVE_LIMIT {
        return (0..p).filter(|&x| eval(&f, x, p) == 0).collect();
    }
    // g = gcd(f, x^p − x) is the product of the distinct linear factors
    let mut xp = pow_rem(&[0, 1], p, &f, p);
    xp.resize(xp.len().max(2), 0);
    xp[1] = sub_mod(xp[1], 1, p);
    let g = gcd(&f, &xp, p);
    let mut out = Vec::new();
    split(&g, p, 1, &mut out);
    out.sort_unstable();
    out
}

fn split(g: &[u64], p: u64, mut a: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => return,
        2 => {
            // g monic: x + g0
            out.push(sub_mod(0, g[0], p));
            return;
        }
        _ => {}
    }
    loop {
        // gcd((x + a)^{(p−1)/2} − 1, g) for successive shifts a
        let mut h = pow_rem(&[a % p, 1], (p - 1) / 2, g, p);
        if h.is_empty() {
            h.push(0);
        }
        h[0] = sub_mod(h[0], 1, p);
        let d = gcd(g, &h, p);
        a += 1;
        if d.len() > 1 && d.len() < g.len() {
            let other = div_exact(g, &d, p);
            split(&d, p, a, out);
            split(&other, p, a, out);
            return;
        }
    }
}
