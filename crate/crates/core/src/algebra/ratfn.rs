//! The differential field K = Q(x): reduced rational functions with the
//! derivation d/dx.
//!
//! Canonical form: gcd(num, den) = 1 and den monic, so equality is structural.

use super::poly::Poly;
use super::rat::Rat;
use super::AlgebraError;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Builds `num/den` in canonical form. Panics if `den` is zero; use
    /// [`RatFn::checked_div`] for fallible division.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn x() -> Self {
        RatFn::from_poly(Poly::x())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFn::constant(Rat::from_int(n))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is an element of Q.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<RatFn, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    /// Quotient-rule derivative `(p'q - pq')/q^2`, canonicalized.
    pub fn derivative(&self) -> RatFn {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFn::new(num, den)
    }

    /// Exact evaluation; fails if `x0` is a pole.
    pub fn eval(&self, x0: &Rat) -> Result<Rat, AlgebraError> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(AlgebraError::PoleAtEvaluationPoint(x0.clone()));
        }
        Ok(&self.num.eval(x0) / &d)
    }

    pub fn pow(&self, k: i64) -> Result<RatFn, AlgebraError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFn::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Valuation at infinity: `deg den - deg num` (zero maps to `None`).
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        let n = self.num.degree()?;
        Some(self.den.deg() as i64 - n as i64)
    }

    /// Order of the pole along the squarefree factor `pi`, i.e. the
    /// multiplicity of `pi` in the denominator.
    pub fn pole_order_at(&self, pi: &Poly) -> usize {
        let mut d = self.den.clone();
        let mut ord = 0;
        loop {
            let (q, r) = d.div_rem(pi);
            if !r.is_zero() {
                return ord;
            }
            ord += 1;
            d = q;
        }
    }
}

impl RatFn {
    /// Constructor for operands already known to be coprime; only makes the
    /// denominator monic.
    fn from_reduced(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            return RatFn::zero();
        }
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn add_signed(&self, rhs: &RatFn, negate: bool) -> RatFn {
        // classical reduced addition: when the denominators are coprime the
        // result is already in lowest terms, otherwise only the common part
        // needs a second small gcd
        let d1 = self.den.gcd(&rhs.den);
        let (num, den) = if d1.is_one() {
            let cross = &rhs.num * &self.den;
            let lhs = &self.num * &rhs.den;
            let num = if negate { &lhs - &cross } else { &lhs + &cross };
            (num, &self.den * &rhs.den)
        } else {
            let ad = self.den.exact_div(&d1);
            let bd = rhs.den.exact_div(&d1);
            let cross = &rhs.num * &ad;
            let lhs = &self.num * &bd;
            let t = if negate { &lhs - &cross } else { &lhs + &cross };
            if t.is_zero() {
                return RatFn::zero();
            }
            let d2 = t.gcd(&d1);
            (
                t.exact_div(&d2),
                &(&ad * &d1.exact_div(&d2)) * &bd,
            )
        };
        RatFn::from_reduced(num, den)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.add_signed(rhs, false)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self.add_signed(rhs, true)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        // cross-cancel repeatedly; once both cross-gcds are trivial the
        // product of the reduced parts is itself reduced
        let mut an = self.num.clone();
        let mut ad = self.den.clone();
        let mut bn = rhs.num.clone();
        let mut bd = rhs.den.clone();
        loop {
            let g1 = an.gcd(&bd);
            if !g1.is_one() {
                an = an.exact_div(&g1);
                bd = bd.exact_div(&g1);
            }
            let g2 = bn.gcd(&ad);
            if !g2.is_one() {
                bn = bn.exact_div(&g2);
                ad = ad.exact_div(&g2);
            }
            if g1.is_one() && g2.is_one() {
                break;
            }
        }
        RatFn::from_reduced(&an * &bn, &ad * &bd)
    }
}

/// Panics on division by zero; use [`RatFn::checked_div`] to surface the error.
impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero in Q(x)")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Structural order for deterministic map keys.
impl Ord for RatFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num
            .cmp(&other.num)
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialOrd for RatFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints a fraction of integer-coefficient polynomials, e.g. `1/(2*x)` for
/// the canonical pair (1/2, x). Output re-parses to the same value.
impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (c1, n) = self.num.integer_normalized();
        let (c2, d) = self.den.integer_normalized();
        let c = &c1 / &c2;
        let p = n.scale(&Rat::from_bigint(c.numer().clone()));
        let q = d.scale(&Rat::from_bigint(c.denom().clone()));
        if q.is_one() {
            return write!(f, "{}", p);
        }
        fmt_factor(f, &p)?;
        write!(f, "/")?;
        fmt_factor(f, &q)
    }
}

fn is_atomic(p: &Poly) -> bool {
    // single monomial with coefficient 1, or a bare integer
    match p.degree() {
        None => true,
        Some(0) => p.coeff(0).is_integer() && !p.coeff(0).is_negative(),
        Some(d) => p.leading().unwrap().is_one() && (0..d).all(|k| p.coeff(k).is_zero()),
    }
}

fn fmt_factor(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if is_atomic(p) {
        write!(f, "{}", p)
    } else {
        write!(f, "({})", p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFn {
        RatFn::new(
            Poly::new(num.iter().map(|&c| Rat::from_int(c)).collect()),
            Poly::new(den.iter().map(|&c| Rat::from_int(c)).collect()),
        )
    }

    #[test]
    fn additive_identity() {
        let one_over_x = rf(&[1], &[0, 1]);
        assert_eq!(&one_over_x + &RatFn::zero(), one_over_x);
    }

    #[test]
    fn forced_gcd_cancellation() {
        // (x^2 - 1) * 1/(x - 1) = x + 1
        let a = rf(&[-1, 0, 1], &[1]);
        let b = rf(&[1], &[-1, 1]);
        assert_eq!(&a * &b, rf(&[1, 1], &[1]));
    }

    #[test]
    fn field_inverse() {
        let x = RatFn::x();
        let inv = RatFn::one().checked_div(&x).unwrap();
        assert_eq!(&inv * &x, RatFn::one());
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(RatFn::constant(Rat::frac(7, 3)).derivative().is_zero());
    }

    #[test]
    fn derivative_quotient_rule() {
        // (1/x)' = -1/x^2
        let inv_x = rf(&[1], &[0, 1]);
        assert_eq!(inv_x.derivative(), rf(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn derivative_power_rule() {
        // (x^3 + x)' = 3x^2 + 1
        assert_eq!(rf(&[0, 1, 0, 1], &[1]).derivative(), rf(&[1, 0, 3], &[1]));
    }

    #[test]
    fn eval_and_pole() {
        let inv_x = rf(&[1], &[0, 1]);
        assert_eq!(inv_x.eval(&Rat::from_int(2)).unwrap(), Rat::frac(1, 2));
        assert_eq!(
            inv_x.eval(&Rat::zero()),
            Err(AlgebraError::PoleAtEvaluationPoint(Rat::zero()))
        );
    }

    #[test]
    fn display_exact_fractions() {
        assert_eq!(rf(&[1], &[0, 2]).to_string(), "1/(2*x)");
        assert_eq!(rf(&[0, 1], &[2]).to_string(), "x/2");
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/x^2");
        assert_eq!(rf(&[-1], &[0, 1]).to_string(), "(-1)/x");
        assert_eq!(
            RatFn::new(Poly::new(vec![Rat::frac(1, 2)]), Poly::x()).to_string(),
            "1/(2*x)"
        );
    }

    #[test]
    fn pole_order() {
        let f = rf(&[1], &[0, 0, 1]); // 1/x^2
        assert_eq!(f.pole_order_at(&Poly::x()), 2);
        assert_eq!(f.pole_order_at(&Poly::x_minus(&Rat::one())), 0);
    }
}
