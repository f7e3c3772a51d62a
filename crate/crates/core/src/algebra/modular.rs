//! Modular gcd of integer polynomials.
//!
//! Images modulo 31-bit primes decide the gcd degree: a single image of
//! degree zero certifies coprimality outright, and nontrivial gcds are
//! reconstructed by CRT with symmetric lifting and verified by exact
//! (pseudo-)division, so a wrong answer is impossible; prime exhaustion
//! returns `None` and the caller falls back to a pseudo-remainder sequence.

use super::poly::Poly;
use super::rat::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

const PRIME_COUNT: usize = 24;

/// Deterministic Miller-Rabin for u32 (bases 2, 7, 61).
fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = (n - 1) as u64;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'base: for a in [2u64, 7, 61] {
        let mut x = 1u64;
        let mut base = a % n as u64;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = x * base % n as u64;
            }
            base = base * base % n as u64;
            e >>= 1;
        }
        if x == 1 || x == (n - 1) as u64 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u64;
            if x == (n - 1) as u64 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64; PRIME_COUNT] {
    static PRIMES: OnceLock<[u64; PRIME_COUNT]> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = [0u64; PRIME_COUNT];
        let mut n: u32 = u32::MAX / 2; // 2^31 - 1
        let mut k = 0;
        while k < PRIME_COUNT {
            if is_prime_u32(n) {
                out[k] = n as u64;
                k += 1;
            }
            n -= 1;
        }
        out
    })
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("reduced residue fits u64")
}

/// Dense coefficients mod p, lowest degree first, trailing zeros trimmed.
fn reduce_mod(a: &Poly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            bigint_mod(c.numer(), p)
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd mod p by Euclid; `None` encodes the zero polynomial.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lb_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() > db {
            let da = a.len() - 1;
            let q = *a.last().unwrap() % p * lb_inv % p;
            if q != 0 {
                for (k, bc) in b.iter().enumerate() {
                    let idx = da - db + k;
                    let sub = q * bc % p;
                    a[idx] = (a[idx] + p - sub) % p;
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.len() <= db {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    // make monic
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in &mut a {
            *c = *c * inv % p;
        }
    }
    a
}

/// Symmetric representative of `v` modulo `m`.
fn symmetric(v: &BigInt, m: &BigInt) -> BigInt {
    let mut r = v % m;
    if r.is_negative() {
        r += m;
    }
    if &r * 2 > *m {
        r -= m;
    }
    r
}

/// gcd of primitive integer polynomials; `None` when the prime budget is
/// exhausted (caller falls back).
pub(crate) fn gcd_int(a: &Poly, b: &Poly) -> Option<Poly> {
    let lc_gcd = num_integer::Integer::gcd(
        a.leading().unwrap().numer(),
        b.leading().unwrap().numer(),
    );
    let mut crt_mod = BigInt::zero();
    let mut crt_coeffs: Vec<BigInt> = Vec::new();
    let mut best_deg = usize::MAX;
    for &p in primes() {
        if bigint_mod(a.leading().unwrap().numer(), p) == 0
            || bigint_mod(b.leading().unwrap().numer(), p) == 0
        {
            continue;
        }
        let gp = gcd_mod(reduce_mod(a, p), reduce_mod(b, p), p);
        let deg = gp.len() - 1;
        if deg == 0 {
            return Some(Poly::one());
        }
        // scale so the leading coefficient matches gcd(lc a, lc b)
        let scale = bigint_mod(&lc_gcd, p);
        let gp: Vec<u64> = gp.iter().map(|&c| c * scale % p).collect();
        match deg.cmp(&best_deg) {
            std::cmp::Ordering::Greater => continue, // unlucky prime
            std::cmp::Ordering::Less => {
                best_deg = deg;
                crt_mod = BigInt::from(p);
                crt_coeffs = gp.iter().map(|&c| symmetric(&BigInt::from(c), &crt_mod)).collect();
            }
            std::cmp::Ordering::Equal => {
                // CRT combine with the accumulated modulus
                let pb = BigInt::from(p);
                let m_inv = {
                    let m_mod_p = bigint_mod(&crt_mod, p);
                    BigInt::from(inv_mod(m_mod_p, p))
                };
                let new_mod = &crt_mod * &pb;
                for (c, &img) in crt_coeffs.iter_mut().zip(gp.iter()) {
                    let delta = (BigInt::from(img) - &*c) * &m_inv % &pb;
                    let lifted = &*c + &crt_mod * delta;
                    *c = symmetric(&lifted, &new_mod);
                }
                crt_mod = new_mod;
            }
        }
        // trial division confirms the candidate exactly
        let candidate = Poly::new(crt_coeffs.iter().map(|c| Rat::from_bigint(c.clone())).collect());
        if candidate.is_zero() {
            continue;
        }
        let (_, candidate) = candidate.integer_normalized();
        if candidate.divides_int(a) && candidate.divides_int(b) {
            return Some(candidate.monic());
        }
    }
    None
}
