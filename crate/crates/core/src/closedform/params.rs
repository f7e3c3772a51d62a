//! The extended constants ring: polynomials over Q in named formal
//! parameters, with optional cyclotomic relations `zeta_m^m = 1`.
//!
//! Formal parameters model additive Galois constants (log shifts); cyclotomic
//! parameters model finite-order multiplicative characters. The ring is
//! commutative and reduced, so its units are exactly the units of the
//! cyclotomic part, which we decide by an exact linear solve.

use crate::algebra::Rat;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A named parameter, formal (`order == None`) or cyclotomic of the given
/// order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamSym {
    name: String,
    order: Option<u32>,
}

impl ParamSym {
    pub fn formal(name: impl Into<String>) -> Self {
        ParamSym {
            name: name.into(),
            order: None,
        }
    }

    pub fn cyclotomic(name: impl Into<String>, order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be >= 1");
        ParamSym {
            name: name.into(),
            order: Some(order),
        }
    }

    /// The canonical root-of-unity symbol `zeta<m>`.
    pub fn zeta(order: u32) -> Self {
        ParamSym::cyclotomic(format!("zeta{}", order), order)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }
}

impl fmt::Display for ParamSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A power product of parameters; cyclotomic exponents are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<ParamSym, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(sym: ParamSym) -> Self {
        Monomial::one().times(&sym, 1)
    }

    pub fn times(&self, sym: &ParamSym, k: u32) -> Monomial {
        let mut m = self.clone();
        let e = m.0.get(sym).copied().unwrap_or(0) + k;
        let e = match sym.order {
            Some(ord) => e % ord,
            None => e,
        };
        if e == 0 {
            m.0.remove(sym);
        } else {
            m.0.insert(sym.clone(), e);
        }
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (sym, &e) in &other.0 {
            m = m.times(sym, e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every factor is cyclotomic (hence invertible).
    pub fn is_cyclotomic(&self) -> bool {
        self.0.keys().all(|s| s.order.is_some())
    }

    pub fn syms(&self) -> impl Iterator<Item = &ParamSym> {
        self.0.keys()
    }

    fn exponent(&self, sym: &ParamSym) -> u32 {
        self.0.get(sym).copied().unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (sym, &e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", sym)?;
            } else {
                write!(f, "{}^{}", sym, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial over Q in the parameters, in canonical ordered-monomial form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ParamPoly(BTreeMap<Monomial, Rat>);

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::from_rat(Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Monomial::one(), c);
        }
        ParamPoly(m)
    }

    pub fn from_int(n: i64) -> Self {
        ParamPoly::from_rat(Rat::from_int(n))
    }

    pub fn var(sym: ParamSym) -> Self {
        ParamPoly::monomial(Monomial::var(sym), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(m, c);
        }
        ParamPoly(map)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().is_some_and(|c| c.is_one())
    }

    /// The rational value, if no parameters occur.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.0.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.0.iter()
    }

    pub fn scale(&self, c: &Rat) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly(self.0.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    fn add_term(map: &mut BTreeMap<Monomial, Rat>, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match map.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// All cyclotomic symbols occurring.
    fn cyclotomic_syms(&self) -> Vec<ParamSym> {
        let mut syms: Vec<ParamSym> = Vec::new();
        for m in self.0.keys() {
            for s in m.syms() {
                if s.order.is_some() && !syms.contains(s) {
                    syms.push(s.clone());
                }
            }
        }
        syms.sort();
        syms
    }

    /// True when some monomial contains a formal (non-cyclotomic) parameter.
    pub fn involves_formal(&self) -> bool {
        self.0
            .keys()
            .any(|m| m.syms().any(|s| s.order.is_none()))
    }

    /// Multiplicative inverse in the parameter ring, when `self` is a unit.
    /// Units never involve formal parameters; on the cyclotomic part the
    /// inverse is found by solving `self * v = 1` over the finite monomial
    /// basis.
    pub fn inverse(&self) -> Option<ParamPoly> {
        if self.is_zero() || self.involves_formal() {
            return None;
        }
        if let Some(c) = self.as_rat() {
            return Some(ParamPoly::from_rat(c.recip()));
        }
        let syms = self.cyclotomic_syms();
        let mut basis: Vec<Monomial> = vec![Monomial::one()];
        for s in &syms {
            let ord = s.order.unwrap();
            let mut next = Vec::with_capacity(basis.len() * ord as usize);
            for m in &basis {
                for e in 0..ord {
                    next.push(m.times(s, e));
                }
            }
            basis = next;
            if basis.len() > 4096 {
                return None; // out of desk scale
            }
        }
        basis.sort();
        basis.dedup();
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // columns: self * basis_j in coordinates
        let dim = basis.len();
        let mut mat = vec![vec![Rat::zero(); dim]; dim];
        for (j, bj) in basis.iter().enumerate() {
            for (m, c) in &self.0 {
                let prod = m.mul(bj);
                let row = *index.get(&prod).expect("closed monomial basis");
                mat[row][j] = &mat[row][j] + c;
            }
        }
        let mut rhs = vec![Rat::zero(); dim];
        rhs[*index.get(&Monomial::one()).unwrap()] = Rat::one();
        let v = crate::algebra::linalg::solve_q(&mat, &rhs)?;
        let mut out = BTreeMap::new();
        for (j, c) in v.into_iter().enumerate() {
            Self::add_term(&mut out, basis[j].clone(), c);
        }
        let inv = ParamPoly(out);
        debug_assert!((&inv * self).is_one());
        Some(inv)
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Total degree in the formal parameter `sym`.
    pub fn degree_in(&self, sym: &ParamSym) -> u32 {
        self.0.keys().map(|m| m.exponent(sym)).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.0.clone();
        for (m, c) in &rhs.0 {
            ParamPoly::add_term(&mut out, m.clone(), c.clone());
        }
        ParamPoly(out)
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self + &(-rhs)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                ParamPoly::add_term(&mut out, m1.mul(m2), c1 * c2);
            }
        }
        ParamPoly(out)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.0 {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else if mag.is_integer() {
                write!(f, "{}*{}", mag, m)?;
            } else {
                write!(f, "({})*{}", mag, m)?;
            }
        }
        Ok(())
    }
}
