//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty coefficient list and equality is structural.

use super::rat::{positive_divisors, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial from coefficients (lowest degree first), trimming
    /// trailing zeros to canonical form.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `x - a`.
    pub fn x_minus(a: &Rat) -> Self {
        Poly::new(vec![-a, Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a nonzero polynomial; panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant value, if this polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &Rat::from_int(k as i64) * c)
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; panics on zero.
    pub fn monic(&self) -> Poly {
        let lc = self.leading().expect("monic of zero polynomial").clone();
        self.scale(&lc.recip())
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * div + r` and `deg r < deg div`. Panics if `div` is zero.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        if self.is_zero() || self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dlc = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - div.coeffs.len() + 1;
        let mut quot = vec![Rat::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + div.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = &top / &dlc;
            for (i, dc) in div.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k + i] = &rem[k + i] - &t;
            }
            quot[k] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero. Divisions that are
    /// exact over Z (the Bareiss and PRS cases) run entirely in BigInt.
    pub fn exact_div(&self, div: &Poly) -> Poly {
        if self.is_integer_poly() && div.is_integer_poly() {
            if let Some(q) = self.exact_div_int(div) {
                return q;
            }
        }
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// True when the primitive integer polynomial `self` divides the integer
    /// polynomial `a` (equivalently, divides it over Q, by Gauss's lemma).
    pub(crate) fn divides_int(&self, a: &Poly) -> bool {
        if a.is_zero() {
            return true;
        }
        a.exact_div_int(self).is_some()
    }

    /// Synthetic division over Z; `None` when some quotient coefficient is
    /// not an integer (the caller retries over Q).
    fn exact_div_int(&self, div: &Poly) -> Option<Poly> {
        assert!(!div.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.coeffs.len() < div.coeffs.len() {
            return None;
        }
        let d = div.int_coeffs();
        let dlc = d.last().unwrap();
        let mut rem = self.int_coeffs();
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, dlc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(BigInt::is_zero) {
            Some(Poly::from_int_coeffs(quot))
        } else {
            None
        }
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g` and `g`
    /// the monic gcd.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.leading().unwrap().recip();
        (r0.scale(&lc), s0.scale(&lc), t0.scale(&lc))
    }

    /// Inverse of `self` modulo `m`; `None` when `gcd(self, m) != 1`.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.xgcd(m);
        if g.is_one() {
            Some(s.div_rem(m).1)
        } else {
            None
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`. Computed from modular
    /// images (one prime certifies coprimality, the common case in fraction
    /// arithmetic), with a primitive pseudo-remainder sequence as fallback.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return if other.is_zero() {
                Poly::zero()
            } else {
                other.monic()
            };
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let (_, a) = self.integer_normalized();
        let (_, b) = other.integer_normalized();
        if let Some(g) = super::modular::gcd_int(&a, &b) {
            return g;
        }
        Poly::gcd_prs(a, b)
    }

    fn gcd_prs(mut a: Poly, mut b: Poly) -> Poly {
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.monic();
            }
            if r.is_constant() {
                return Poly::one();
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Pseudo-remainder of integer polynomials:
    /// `lc(b)^(deg a - deg b + 1) * a  mod  b`, all arithmetic in Z.
    pub(crate) fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.deg();
        let bc = b.int_coeffs();
        let lb = bc.last().unwrap().clone();
        let mut r = self.int_coeffs();
        loop {
            while r.last().is_some_and(BigInt::is_zero) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
            let dr = r.len() - 1;
            let lr = r.last().unwrap().clone();
            // r <- lb * r - lr * x^{dr-db} * b
            let mut next = vec![BigInt::zero(); dr];
            for (k, slot) in next.iter_mut().enumerate() {
                let mut c = &r[k] * &lb;
                if k + db >= dr {
                    c -= &lr * &bc[k + db - dr];
                }
                *slot = c;
            }
            r = next;
        }
        Poly::from_int_coeffs(r)
    }

    /// Integer content removed, positive leading coefficient.
    fn primitive_part(&self) -> Poly {
        let (_, p) = self.integer_normalized();
        p
    }

    /// Yun's squarefree decomposition: returns `(a_1, ..., a_k)` of monic
    /// squarefree, pairwise coprime factors with
    /// `self = lc * prod a_i^i` (factors of multiplicity `i` land in `a_i`).
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        if self.is_constant() {
            return vec![];
        }
        let f = self.monic();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        let mut c = f.exact_div(&g);
        let mut d = &fp.exact_div(&g) - &c.derivative();
        let mut out = Vec::new();
        loop {
            if c.is_constant() {
                break;
            }
            let a = c.gcd(&d);
            c = c.exact_div(&a);
            d = &d.exact_div(&a) - &c.derivative();
            out.push(a);
        }
        out
    }

    /// The monic squarefree part (product of distinct irreducible factors).
    pub fn squarefree_part(&self) -> Poly {
        let mut acc = Poly::one();
        for a in self.squarefree_decomposition() {
            acc = &acc * &a;
        }
        acc
    }

    /// Clears denominators and content: returns `(c, p)` with integer
    /// coefficients in `p`, positive leading coefficient, content 1, and
    /// `self = c * p`.
    pub fn integer_normalized(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::one(), Poly::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            let g = num_integer::Integer::gcd(&den, c.denom());
            den = &den * c.denom() / g;
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c.numer() * &den / c.denom();
                v
            })
            .collect();
        let mut content = BigInt::zero();
        for v in &scaled {
            content = num_integer::Integer::gcd(&content, v);
        }
        if scaled.last().unwrap().is_negative() {
            content = -content;
        }
        let p = Poly::new(
            scaled
                .iter()
                .map(|v| Rat::from_bigint(v / &content))
                .collect(),
        );
        (Rat::from_big_frac(content, den), p)
    }

    /// All rational roots with multiplicities, in increasing order.
    /// Returns `None` if candidate enumeration exceeds the desk-scale guard.
    pub fn rational_roots(&self) -> Option<Vec<(Rat, usize)>> {
        if self.is_constant() {
            return Some(vec![]);
        }
        let mut f = self.clone();
        let mut roots: Vec<(Rat, usize)> = Vec::new();
        // x = 0 first
        let mut mult0 = 0;
        while !f.is_constant() && f.coeff(0).is_zero() {
            f = f.exact_div(&Poly::x());
            mult0 += 1;
        }
        if mult0 > 0 {
            roots.push((Rat::zero(), mult0));
        }
        if f.is_constant() {
            roots.sort_by(|a, b| a.0.cmp(&b.0));
            return Some(roots);
        }
        let (_, zp) = f.integer_normalized();
        let a0 = zp.coeff(0);
        let an = zp.leading().unwrap().clone();
        let ps = positive_divisors(a0.numer())?;
        let qs = positive_divisors(an.numer())?;
        let mut candidates: Vec<Rat> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rat::from_big_frac(p.clone(), q.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            if f.is_constant() {
                break;
            }
            let mut mult = 0;
            while f.eval(&r).is_zero() {
                f = f.exact_div(&Poly::x_minus(&r));
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Some(roots)
    }

    /// Integer roots (with multiplicities) of a polynomial whose roots are
    /// sought in Z; `None` if enumeration is out of reach.
    pub fn integer_roots(&self) -> Option<Vec<(BigInt, usize)>> {
        let roots = self.rational_roots()?;
        Some(
            roots
                .into_iter()
                .filter_map(|(r, m)| r.to_integer().map(|k| (k, m)))
                .collect(),
        )
    }
}

impl Poly {
    /// All coefficients in Z; gates the BigInt fast paths, which skip the
    /// per-operation normalization of rational arithmetic.
    fn is_integer_poly(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    fn int_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.numer().clone()).collect()
    }

    fn from_int_coeffs(coeffs: Vec<BigInt>) -> Poly {
        Poly::new(coeffs.into_iter().map(Rat::from_bigint).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if self.is_integer_poly() && rhs.is_integer_poly() {
            let (a, b) = (self.int_coeffs(), rhs.int_coeffs());
            let n = a.len().max(b.len());
            let zero = BigInt::zero();
            let coeffs = (0..n)
                .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
                .collect();
            return Poly::from_int_coeffs(coeffs);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        if self.is_integer_poly() && rhs.is_integer_poly() {
            let (a, b) = (self.int_coeffs(), rhs.int_coeffs());
            let n = a.len().max(b.len());
            let zero = BigInt::zero();
            let coeffs = (0..n)
                .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
                .collect();
            return Poly::from_int_coeffs(coeffs);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.is_integer_poly() && rhs.is_integer_poly() {
            return Poly::from_int_coeffs(int_mul(&self.int_coeffs(), &rhs.int_coeffs()));
        }
        // clear denominators, multiply in Z, scale back in one pass
        let (ca, pa) = self.integer_normalized();
        let (cb, pb) = rhs.integer_normalized();
        let scale = &ca * &cb;
        let prod = int_mul(&pa.int_coeffs(), &pb.int_coeffs());
        Poly::new(
            prod.into_iter()
                .map(|v| &Rat::from_bigint(v) * &scale)
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Structural total order (degree, then coefficients from the top); used for
/// deterministic map keys, not for any algebraic meaning.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints `2*x^3 - x + 5/3` style terms, highest degree first. Every product
/// is written with an explicit `*` so output re-parses unambiguously.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", k)?,
            }
        }
        Ok(())
    }
}
