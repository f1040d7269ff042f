//! Word-size modular gcd used as a fast coprimality certificate.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::zpoly::ZPoly;

const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_294_967_291, 998_244_353];

fn reduce(p: &ZPoly, m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    let mut v: Vec<u64> = p
        .coeffs()
        .iter()
        .map(|c| {
            let mut r = c % &mb;
            if r < BigInt::zero() {
                r += &mb;
            }
            r.to_u64().unwrap()
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn inv(a: u64, m: u64) -> u64 {
    powmod(a, m - 2, m)
}

/// Remainder of a by b over Z/m (b nonzero, trimmed).
fn rem(mut a: Vec<u64>, b: &[u64], m: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let ib = inv(b[db], m);
    while a.len() > db {
        let top = a.len() - 1;
        let q = mulmod(a[top], ib, m);
        if q != 0 {
            let off = top - db;
            for (j, &bc) in b.iter().enumerate() {
                let t = mulmod(q, bc, m);
                a[off + j] = (a[off + j] + m - t) % m;
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    while !b.is_empty() {
        let r = rem(a, &b, m);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// True only when a and b are provably coprime over Q: some prime not
/// dividing either leading coefficient gives a constant modular gcd.
pub fn certify_coprime(a: &ZPoly, b: &ZPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    for &m in &PRIMES {
        let ra = reduce(a, m);
        let rb = reduce(b, m);
        if ra.len() != a.coeffs().len() || rb.len() != b.coeffs().len() {
            continue;
        }
        if gcd_degree(ra, rb, m) == 0 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_is_sound() {
        let a = ZPoly::from_i64(&[-1, 0, 1]);
        let b = ZPoly::from_i64(&[1, 1]);
        assert!(!certify_coprime(&a, &b));
        let c = ZPoly::from_i64(&[2, 1]);
        assert!(certify_coprime(&a, &c));
    }
}
