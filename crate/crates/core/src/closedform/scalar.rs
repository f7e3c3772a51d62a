//! Scalars of the closed-form tower: finite K-linear combinations of basic
//! terms `prod (x-a_i)^{e_i} * exp(r) * prod log(x-b_j)^{m_j}` with exact
//! differentiation.
//!
//! Canonical form: integer parts of the power exponents are folded into the
//! rational-function coefficient, terms with the same transcendental
//! signature are merged, and coefficients carry parameter monomials so that
//! Galois images stay in the ring.

use super::params::{Monomial, ParamPoly};
use crate::algebra::{Poly, Rat, RatFn};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Transcendental signature of a basic term. `powers` holds `(alpha, e)`
/// with `0 < e < 1`; `exp_arg == 0` means no exponential factor; `logs`
/// holds `(beta, multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermSig {
    powers: Vec<(Rat, Rat)>,
    exp_arg: RatFn,
    logs: Vec<(Rat, u32)>,
}

impl TermSig {
    pub fn rational() -> Self {
        TermSig {
            powers: vec![],
            exp_arg: RatFn::zero(),
            logs: vec![],
        }
    }

    pub fn is_rational(&self) -> bool {
        self.powers.is_empty() && self.exp_arg.is_zero() && self.logs.is_empty()
    }

    pub fn powers(&self) -> &[(Rat, Rat)] {
        &self.powers
    }

    pub fn exp_arg(&self) -> &RatFn {
        &self.exp_arg
    }

    pub fn logs(&self) -> &[(Rat, u32)] {
        &self.logs
    }

    /// Canonicalizes raw factor data; returns the signature together with the
    /// rational-function correction produced by folding integer exponents.
    fn normalize(
        powers_raw: Vec<(Rat, Rat)>,
        exp_arg: RatFn,
        logs_raw: Vec<(Rat, u32)>,
    ) -> (TermSig, RatFn) {
        let mut merged: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (alpha, e) in powers_raw {
            let cur = merged.remove(&alpha).unwrap_or_else(Rat::zero);
            let s = &cur + &e;
            if !s.is_zero() {
                merged.insert(alpha, s);
            }
        }
        let mut correction = RatFn::one();
        let mut powers = Vec::new();
        for (alpha, e) in merged {
            let k = e.floor();
            let frac = e.fract();
            if let Ok(k) = i64::try_from(k) {
                if k != 0 {
                    let lin = RatFn::from_poly(Poly::x_minus(&alpha));
                    correction = &correction * &lin.pow(k).expect("x - a is nonzero");
                }
            } else {
                panic!("exponent integer part out of range");
            }
            if !frac.is_zero() {
                powers.push((alpha, frac));
            }
        }
        let mut logs_map: BTreeMap<Rat, u32> = BTreeMap::new();
        for (beta, m) in logs_raw {
            if m > 0 {
                *logs_map.entry(beta).or_insert(0) += m;
            }
        }
        (
            TermSig {
                powers,
                exp_arg,
                logs: logs_map.into_iter().collect(),
            },
            correction,
        )
    }

    fn mul(&self, other: &TermSig) -> (TermSig, RatFn) {
        let mut powers = self.powers.clone();
        powers.extend(other.powers.iter().cloned());
        let mut logs = self.logs.clone();
        logs.extend(other.logs.iter().cloned());
        TermSig::normalize(powers, &self.exp_arg + &other.exp_arg, logs)
    }

    /// `d(term)/term` restricted to the power and exponential factors.
    fn logarithmic_derivative(&self) -> RatFn {
        let mut acc = self.exp_arg.derivative();
        for (alpha, e) in &self.powers {
            let t = RatFn::new(Poly::constant(e.clone()), Poly::x_minus(alpha));
            acc = &acc + &t;
        }
        acc
    }
}

/// Coefficient of a basic term: a parameter-monomial combination with Q(x)
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamRatFn(BTreeMap<Monomial, RatFn>);

impl ParamRatFn {
    pub fn zero() -> Self {
        ParamRatFn::default()
    }

    pub fn one() -> Self {
        ParamRatFn::from_ratfn(RatFn::one())
    }

    pub fn from_ratfn(f: RatFn) -> Self {
        let mut m = BTreeMap::new();
        if !f.is_zero() {
            m.insert(Monomial::one(), f);
        }
        ParamRatFn(m)
    }

    pub fn from_param(p: &ParamPoly) -> Self {
        let mut m = BTreeMap::new();
        for (mono, c) in p.terms() {
            m.insert(mono.clone(), RatFn::constant(c.clone()));
        }
        ParamRatFn(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFn)> {
        self.0.iter()
    }

    /// The plain rational function, if no parameters occur.
    pub fn as_ratfn(&self) -> Option<RatFn> {
        match self.0.len() {
            0 => Some(RatFn::zero()),
            1 => {
                let (m, f) = self.0.iter().next().unwrap();
                m.is_one().then(|| f.clone())
            }
            _ => None,
        }
    }

    /// The parameter polynomial, if every coefficient is a constant.
    pub fn as_param_poly(&self) -> Option<ParamPoly> {
        let mut acc = ParamPoly::zero();
        for (m, f) in &self.0 {
            let c = f.as_constant()?;
            acc = &acc + &ParamPoly::monomial(m.clone(), c);
        }
        Some(acc)
    }

    pub fn as_single(&self) -> Option<(&Monomial, &RatFn)> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }

    fn add_term(map: &mut BTreeMap<Monomial, RatFn>, m: Monomial, f: RatFn) {
        if f.is_zero() {
            return;
        }
        match map.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale_ratfn(&self, f: &RatFn) -> ParamRatFn {
        if f.is_zero() {
            return ParamRatFn::zero();
        }
        ParamRatFn(self.0.iter().map(|(m, g)| (m.clone(), g * f)).collect())
    }

    pub fn mul_param(&self, p: &ParamPoly) -> ParamRatFn {
        let mut out = BTreeMap::new();
        for (m1, f) in &self.0 {
            for (m2, c) in p.terms() {
                Self::add_term(&mut out, m1.mul(m2), f * &RatFn::constant(c.clone()));
            }
        }
        ParamRatFn(out)
    }

    pub fn derivative(&self) -> ParamRatFn {
        let mut out = BTreeMap::new();
        for (m, f) in &self.0 {
            Self::add_term(&mut out, m.clone(), f.derivative());
        }
        ParamRatFn(out)
    }
}

impl Add for &ParamRatFn {
    type Output = ParamRatFn;
    fn add(self, rhs: &ParamRatFn) -> ParamRatFn {
        let mut out = self.0.clone();
        for (m, f) in &rhs.0 {
            ParamRatFn::add_term(&mut out, m.clone(), f.clone());
        }
        ParamRatFn(out)
    }
}

impl Neg for &ParamRatFn {
    type Output = ParamRatFn;
    fn neg(self) -> ParamRatFn {
        ParamRatFn(self.0.iter().map(|(m, f)| (m.clone(), -f)).collect())
    }
}

impl Mul for &ParamRatFn {
    type Output = ParamRatFn;
    fn mul(self, rhs: &ParamRatFn) -> ParamRatFn {
        let mut out = BTreeMap::new();
        for (m1, f1) in &self.0 {
            for (m2, f2) in &rhs.0 {
                ParamRatFn::add_term(&mut out, m1.mul(m2), f1 * f2);
            }
        }
        ParamRatFn(out)
    }
}

impl fmt::Display for ParamRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, g) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", g)?;
            } else if g.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "({})*{}", g, m)?;
            }
        }
        Ok(())
    }
}

/// A scalar of the closed-form tower.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClosedForm(BTreeMap<TermSig, ParamRatFn>);

impl ClosedForm {
    pub fn zero() -> Self {
        ClosedForm::default()
    }

    pub fn one() -> Self {
        ClosedForm::from_ratfn(RatFn::one())
    }

    pub fn from_ratfn(f: RatFn) -> Self {
        let mut m = BTreeMap::new();
        if !f.is_zero() {
            m.insert(TermSig::rational(), ParamRatFn::from_ratfn(f));
        }
        ClosedForm(m)
    }

    pub fn from_rat(c: Rat) -> Self {
        ClosedForm::from_ratfn(RatFn::constant(c))
    }

    pub fn from_param(p: &ParamPoly) -> Self {
        let coef = ParamRatFn::from_param(p);
        let mut m = BTreeMap::new();
        if !coef.is_zero() {
            m.insert(TermSig::rational(), coef);
        }
        ClosedForm(m)
    }

    /// `exp(r)`; `exp(0) = 1`.
    pub fn exp(r: RatFn) -> Self {
        let (sig, corr) = TermSig::normalize(vec![], r, vec![]);
        ClosedForm::single(sig, ParamRatFn::from_ratfn(corr))
    }

    /// `log(x - beta)`.
    pub fn log(beta: Rat) -> Self {
        let (sig, corr) = TermSig::normalize(vec![], RatFn::zero(), vec![(beta, 1)]);
        ClosedForm::single(sig, ParamRatFn::from_ratfn(corr))
    }

    /// `(x - alpha)^e` for any rational exponent; integer parts land in the
    /// coefficient.
    pub fn power(alpha: Rat, e: Rat) -> Self {
        let (sig, corr) = TermSig::normalize(vec![(alpha, e)], RatFn::zero(), vec![]);
        ClosedForm::single(sig, ParamRatFn::from_ratfn(corr))
    }

    fn single(sig: TermSig, coef: ParamRatFn) -> Self {
        let mut m = BTreeMap::new();
        if !coef.is_zero() {
            m.insert(sig, coef);
        }
        ClosedForm(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermSig, &ParamRatFn)> {
        self.0.iter()
    }

    /// The plain rational function, if the scalar lies in Q(x).
    pub fn as_ratfn(&self) -> Option<RatFn> {
        match self.0.len() {
            0 => Some(RatFn::zero()),
            1 => {
                let (sig, coef) = self.0.iter().next().unwrap();
                if sig.is_rational() {
                    coef.as_ratfn()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The parameter-ring constant, if the scalar is one.
    pub fn as_param_poly(&self) -> Option<ParamPoly> {
        match self.0.len() {
            0 => Some(ParamPoly::zero()),
            1 => {
                let (sig, coef) = self.0.iter().next().unwrap();
                if sig.is_rational() {
                    coef.as_param_poly()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn add_term(map: &mut BTreeMap<TermSig, ParamRatFn>, sig: TermSig, coef: ParamRatFn) {
        if coef.is_zero() {
            return;
        }
        match map.entry(sig) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coef;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale_ratfn(&self, f: &RatFn) -> ClosedForm {
        ClosedForm(
            self.0
                .iter()
                .filter_map(|(sig, coef)| {
                    let c = coef.scale_ratfn(f);
                    (!c.is_zero()).then(|| (sig.clone(), c))
                })
                .collect(),
        )
    }

    pub fn scale_param(&self, p: &ParamPoly) -> ClosedForm {
        let mut out = BTreeMap::new();
        for (sig, coef) in &self.0 {
            Self::add_term(&mut out, sig.clone(), coef.mul_param(p));
        }
        ClosedForm(out)
    }

    pub fn pow(&self, k: u32) -> ClosedForm {
        let mut acc = ClosedForm::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact derivative: Leibniz rule over basic terms with
    /// `((x-a)^e)' = e (x-a)^{e-1}`, `(exp r)' = r' exp r`,
    /// `(log(x-b))' = 1/(x-b)`.
    pub fn derivative(&self) -> ClosedForm {
        let mut out = BTreeMap::new();
        for (sig, coef) in &self.0 {
            // coefficient derivative
            Self::add_term(&mut out, sig.clone(), coef.derivative());
            // power and exponential factors
            let log_deriv = sig.logarithmic_derivative();
            if !log_deriv.is_zero() {
                Self::add_term(&mut out, sig.clone(), coef.scale_ratfn(&log_deriv));
            }
            // log decrements
            for (idx, (beta, m)) in sig.logs.iter().enumerate() {
                let mut logs = sig.logs.clone();
                if *m == 1 {
                    logs.remove(idx);
                } else {
                    logs[idx].1 = m - 1;
                }
                let new_sig = TermSig {
                    powers: sig.powers.clone(),
                    exp_arg: sig.exp_arg.clone(),
                    logs,
                };
                let factor = RatFn::new(
                    Poly::constant(Rat::from_int(*m as i64)),
                    Poly::x_minus(beta),
                );
                Self::add_term(&mut out, new_sig, coef.scale_ratfn(&factor));
            }
        }
        ClosedForm(out)
    }

    pub fn is_constant(&self) -> bool {
        self.derivative().is_zero()
    }

    /// Inverse of a single-term, log-free scalar whose coefficient is one
    /// parameter monomial with invertible (cyclotomic) parameter part.
    pub fn invert(&self) -> Option<ClosedForm> {
        if self.0.len() != 1 {
            return None;
        }
        let (sig, coef) = self.0.iter().next().unwrap();
        if !sig.logs.is_empty() {
            return None;
        }
        let (mono, rf) = coef.as_single()?;
        if !mono.is_cyclotomic() || rf.is_zero() {
            return None;
        }
        let inv_mono = ParamPoly::monomial(mono.clone(), Rat::one())
            .inverse()
            .expect("cyclotomic monomials are units");
        let mut inv_rf = rf.recip().expect("nonzero coefficient");
        // (x-a)^e inverts to (x-a)^{1-e} / (x-a)
        let mut powers = Vec::new();
        for (alpha, e) in &sig.powers {
            powers.push((alpha.clone(), &Rat::one() - e));
            inv_rf = &inv_rf
                / &RatFn::from_poly(Poly::x_minus(alpha));
        }
        let (new_sig, corr) = TermSig::normalize(powers, -&sig.exp_arg, vec![]);
        let coef = ParamRatFn::from_ratfn(&inv_rf * &corr).mul_param(&inv_mono);
        Some(ClosedForm::single(new_sig, coef))
    }
}

impl Add for &ClosedForm {
    type Output = ClosedForm;
    fn add(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = self.0.clone();
        for (sig, coef) in &rhs.0 {
            ClosedForm::add_term(&mut out, sig.clone(), coef.clone());
        }
        ClosedForm(out)
    }
}

impl Sub for &ClosedForm {
    type Output = ClosedForm;
    fn sub(self, rhs: &ClosedForm) -> ClosedForm {
        self + &(-rhs)
    }
}

impl Neg for &ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        ClosedForm(
            self.0
                .iter()
                .map(|(sig, coef)| (sig.clone(), -coef))
                .collect(),
        )
    }
}

impl Mul for &ClosedForm {
    type Output = ClosedForm;
    fn mul(self, rhs: &ClosedForm) -> ClosedForm {
        let mut out = BTreeMap::new();
        for (s1, c1) in &self.0 {
            for (s2, c2) in &rhs.0 {
                let (sig, corr) = s1.mul(s2);
                let coef = (c1 * c2).scale_ratfn(&corr);
                ClosedForm::add_term(&mut out, sig, coef);
            }
        }
        ClosedForm(out)
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (sig, coef) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (alpha, e) in &sig.powers {
                let base = Poly::x_minus(alpha);
                let base_str = if alpha.is_zero() {
                    "x".to_string()
                } else {
                    format!("({})", base)
                };
                factors.push(format!("{}^({})", base_str, e));
            }
            if !sig.exp_arg.is_zero() {
                factors.push(format!("exp({})", sig.exp_arg));
            }
            for (beta, m) in &sig.logs {
                let base = if beta.is_zero() {
                    "log(x)".to_string()
                } else {
                    format!("log({})", Poly::x_minus(beta))
                };
                if *m == 1 {
                    factors.push(base);
                } else {
                    factors.push(format!("{}^{}", base, m));
                }
            }
            let coef_str = coef.to_string();
            if factors.is_empty() {
                write!(f, "{}", coef_str)?;
            } else if coef_str == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "({})*{}", coef_str, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv_x() -> RatFn {
        RatFn::new(Poly::one(), Poly::x())
    }

    #[test]
    fn exp_derivative_is_itself() {
        let e = ClosedForm::exp(RatFn::x());
        assert_eq!(e.derivative(), e);
    }

    #[test]
    fn log_derivative() {
        let l = ClosedForm::log(Rat::zero());
        assert_eq!(l.derivative(), ClosedForm::from_ratfn(inv_x()));
    }

    #[test]
    fn sqrt_derivative() {
        // (x^{1/2})' = (1/(2x)) * x^{1/2}
        let s = ClosedForm::power(Rat::zero(), Rat::frac(1, 2));
        let expected = s.scale_ratfn(&RatFn::new(
            Poly::constant(Rat::frac(1, 2)),
            Poly::x(),
        ));
        assert_eq!(s.derivative(), expected);
    }

    #[test]
    fn integer_exponents_fold_into_coefficient() {
        // (x - 1)^{5/2} = (x-1)^2 * (x-1)^{1/2}
        let p = ClosedForm::power(Rat::one(), Rat::frac(5, 2));
        let half = ClosedForm::power(Rat::one(), Rat::frac(1, 2));
        let sq = RatFn::from_poly(&Poly::x_minus(&Rat::one()) * &Poly::x_minus(&Rat::one()));
        assert_eq!(p, half.scale_ratfn(&sq));
        // and a negative exponent moves to the denominator
        let q = ClosedForm::power(Rat::zero(), Rat::frac(-1, 2));
        assert_eq!(
            q,
            ClosedForm::power(Rat::zero(), Rat::frac(1, 2)).scale_ratfn(&inv_x())
        );
    }

    #[test]
    fn exp_product_merges_arguments() {
        let a = ClosedForm::exp(RatFn::x());
        let b = ClosedForm::exp(-&RatFn::x());
        assert_eq!(&a * &b, ClosedForm::one());
    }

    #[test]
    fn log_power_derivative() {
        // (log x ^2)' = 2 log(x) / x
        let l2 = ClosedForm::log(Rat::zero()).pow(2);
        let expected = ClosedForm::log(Rat::zero())
            .scale_ratfn(&RatFn::new(Poly::constant(Rat::from_int(2)), Poly::x()));
        assert_eq!(l2.derivative(), expected);
    }

    #[test]
    fn leibniz_rule_randomized() {
        let mut g = crate::testkit::Gen::new(77);
        for _ in 0..30 {
            let parts: Vec<ClosedForm> = vec![
                ClosedForm::from_ratfn(g.ratfn(2)),
                ClosedForm::exp(g.ratfn(1)),
                ClosedForm::power(g.rat(), Rat::frac(g.int(1, 3), 4)),
                ClosedForm::log(g.rat()),
            ];
            let a = &parts[g.int(0, 3) as usize] + &parts[g.int(0, 3) as usize];
            let b = &parts[g.int(0, 3) as usize] + &parts[g.int(0, 3) as usize];
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_matches_ratfn_derivative() {
        let mut g = crate::testkit::Gen::new(78);
        for _ in 0..20 {
            let f = g.ratfn(3);
            assert_eq!(
                ClosedForm::from_ratfn(f.clone()).derivative(),
                ClosedForm::from_ratfn(f.derivative())
            );
        }
    }

    #[test]
    fn invert_single_terms() {
        let e = ClosedForm::exp(RatFn::x());
        assert_eq!(&e.invert().unwrap() * &e, ClosedForm::one());
        let s = ClosedForm::power(Rat::zero(), Rat::frac(1, 2)).scale_ratfn(&RatFn::x());
        assert_eq!(&s.invert().unwrap() * &s, ClosedForm::one());
        assert!(ClosedForm::log(Rat::zero()).invert().is_none());
        let sum = &e + &ClosedForm::one();
        assert!(sum.invert().is_none());
    }

    #[test]
    fn display_shapes() {
        let s = ClosedForm::power(Rat::zero(), Rat::frac(1, 2));
        assert_eq!(s.to_string(), "x^(1/2)");
        let l = ClosedForm::log(Rat::one());
        assert_eq!(l.to_string(), "log(x - 1)");
        let e = ClosedForm::exp(RatFn::x());
        assert_eq!(e.to_string(), "exp(x)");
        let combo = &ClosedForm::one() + &l.scale_ratfn(&RatFn::x());
        assert_eq!(combo.to_string(), "1 + (x)*log(x - 1)");
    }
}
