//! Exact integer resultants by computation modulo many word-sized primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::ZPoly;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes below `2^31`, largest first.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.0 > 3 {
            self.0 -= 1;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
        None
    }
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn reduce(c: &BigInt, q: u64) -> u64 {
    c.mod_floor(&BigInt::from(q)).to_u64().unwrap()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod b` over `F_q`, where `b` is trimmed and nonzero.
fn rem_mod(mut a: Vec<u64>, b: &[u64], q: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], q);
    trim(&mut a);
    while a.len() > db {
        let k = a.len() - 1;
        let f = a[k] * inv % q;
        let shift = k - db;
        for (j, bj) in b.iter().enumerate() {
            a[shift + j] = (a[shift + j] + q - f * bj % q) % q;
        }
        trim(&mut a);
    }
    a
}

/// Resultant over `F_q` with respect to the actual degrees; `a` and `b` trimmed.
fn resultant_mod(a: &[u64], b: &[u64], q: u64) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = 1;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return acc * pow_mod(b[0], da as u64, q) % q;
        }
        let r = rem_mod(a, &b, q);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = (q - acc) % q;
        }
        acc = acc * pow_mod(b[db], (da - dr) as u64, q) % q;
        a = b;
        b = r;
    }
}

fn norm_bits(p: &ZPoly) -> u64 {
    let sq: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    sq.bits() / 2 + 1
}

/// `Res(p, f)` with `f` taken to have formal degree `formal`, i.e.
/// `lc(p)^formal · Π f(α)` over the roots `α` of `p`, for each `f` in `fs`.
///
/// Each value is recovered exactly by Chinese remaindering past the Hadamard bound.
pub(crate) fn resultants(p: &ZPoly, fs: &[ZPoly], formal: usize) -> Vec<BigInt> {
    let d = p.degree().expect("nonzero polynomial") as u64;
    let pb = norm_bits(p);
    let needed: Vec<u64> = fs.iter().map(|f| formal as u64 * pb + d * norm_bits(f) + 2).collect();
    let target = needed.iter().copied().max().unwrap_or(0);
    let lc = p.lc().unwrap();
    let mut values = vec![BigInt::zero(); fs.len()];
    let mut modulus = BigInt::one();
    for q in Primes(1 << 31) {
        if modulus.bits() > target {
            break;
        }
        let lq = reduce(lc, q);
        if lq == 0 {
            continue;
        }
        let pq: Vec<u64> = p.coeffs().iter().map(|c| reduce(c, q)).collect();
        for (v, f) in values.iter_mut().zip(fs) {
            let mut fq: Vec<u64> = f.coeffs().iter().map(|c| reduce(c, q)).collect();
            trim(&mut fq);
            let r = if fq.is_empty() {
                0
            } else {
                let drop = (formal - (fq.len() - 1)) as u64;
                resultant_mod(&pq, &fq, q) * pow_mod(lq, drop, q) % q
            };
            // v ≡ old (mod modulus), v ≡ r (mod q)
            let old = reduce(v, q);
            let step = (r + q - old) % q * inv_mod(reduce(&modulus, q), q) % q;
            *v += &modulus * BigInt::from(step);
        }
        modulus *= BigInt::from(q);
    }
    let half = &modulus >> 1;
    values
        .into_iter()
        .map(|v| if v > half { v - &modulus } else { v })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Poly, QPoly, Rational};

    fn zp(c: &[i64]) -> ZPoly {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn exact(p: &ZPoly, f: &ZPoly) -> BigInt {
        let q = |z: &ZPoly| -> QPoly { z.map(|c| Rational::from_integer(c.clone())) };
        q(p).resultant(&q(f)).to_integer()
    }

    #[test]
    fn agrees_with_euclid_over_q() {
        let p = zp(&[7, -3, 0, 5, 2]);
        let fs = vec![zp(&[1, 1]), zp(&[-4, 9, 0, 11]), zp(&[123456789, -987654321, 5]), zp(&[0])];
        let got = resultants(&p, &fs, 3);
        for (f, v) in fs.iter().zip(&got) {
            let d = f.degree().map_or(0, |d| d);
            let lc: BigInt = p.lc().unwrap().pow((3 - d) as u32);
            let want = if f.is_zero() { BigInt::zero() } else { exact(&p, f) * lc };
            assert_eq!(*v, want);
        }
    }
}
