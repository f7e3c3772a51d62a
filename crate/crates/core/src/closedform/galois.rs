//! Differential Galois generators as finite action tables on the tower.
//!
//! A generator fixes K = Q(x) pointwise and sends
//! `exp(r) -> chi * exp(r)`, `(x-a)^e -> mu * (x-a)^e`,
//! `log(x-b) -> log(x-b) + c`, with chi and mu units of the parameter ring
//! and c any parameter constant. Such a table automatically commutes with
//! the derivation because the twists are constants.

use super::params::ParamPoly;
use super::scalar::ClosedForm;
use super::TowerError;
use crate::algebra::{Rat, RatFn};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGen {
    name: String,
    exp_actions: BTreeMap<RatFn, ParamPoly>,
    power_actions: BTreeMap<(Rat, Rat), ParamPoly>,
    log_actions: BTreeMap<Rat, ParamPoly>,
}

impl GaloisGen {
    pub fn new(name: impl Into<String>) -> Self {
        GaloisGen {
            name: name.into(),
            exp_actions: BTreeMap::new(),
            power_actions: BTreeMap::new(),
            log_actions: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Declares `exp(r) -> chi * exp(r)`; `chi` must be a unit.
    pub fn with_exp(mut self, r: RatFn, chi: ParamPoly) -> Result<Self, TowerError> {
        if !chi.is_unit() {
            return Err(TowerError::TwistNotAUnit {
                generator: self.name.clone(),
                value: chi.to_string(),
            });
        }
        self.exp_actions.insert(r, chi);
        Ok(self)
    }

    /// Declares `(x-alpha)^e -> mu * (x-alpha)^e` for the canonical
    /// fractional exponent `e`; `mu` must be a unit.
    pub fn with_power(mut self, alpha: Rat, e: Rat, mu: ParamPoly) -> Result<Self, TowerError> {
        if !mu.is_unit() {
            return Err(TowerError::TwistNotAUnit {
                generator: self.name.clone(),
                value: mu.to_string(),
            });
        }
        self.power_actions.insert((alpha, e), mu);
        Ok(self)
    }

    /// Declares `log(x-beta) -> log(x-beta) + c`.
    pub fn with_log(mut self, beta: Rat, c: ParamPoly) -> Self {
        self.log_actions.insert(beta, c);
        self
    }

    /// The composite "apply `other`, then `self`": twists multiply, shifts
    /// add. Entries missing from one table act as the identity.
    pub fn compose(&self, other: &GaloisGen) -> GaloisGen {
        let mut exp_actions = self.exp_actions.clone();
        for (r, chi) in &other.exp_actions {
            let cur = exp_actions.remove(r).unwrap_or_else(ParamPoly::one);
            exp_actions.insert(r.clone(), &cur * chi);
        }
        let mut power_actions = self.power_actions.clone();
        for (k, mu) in &other.power_actions {
            let cur = power_actions.remove(k).unwrap_or_else(ParamPoly::one);
            power_actions.insert(k.clone(), &cur * mu);
        }
        let mut log_actions = self.log_actions.clone();
        for (b, c) in &other.log_actions {
            let cur = log_actions.remove(b).unwrap_or_else(ParamPoly::zero);
            log_actions.insert(b.clone(), &cur + c);
        }
        GaloisGen {
            name: format!("{}.{}", self.name, other.name),
            exp_actions,
            power_actions,
            log_actions,
        }
    }
}

/// Applies the generator to a scalar. Every tower generator occurring in `s`
/// must have a table entry.
pub fn galois_act(g: &GaloisGen, s: &ClosedForm) -> Result<ClosedForm, TowerError> {
    let mut out = ClosedForm::zero();
    for (sig, coef) in s.terms() {
        // multiplicative twists for the power and exponential factors
        let mut twist = ParamPoly::one();
        for (alpha, e) in sig.powers() {
            let mu = g
                .power_actions
                .get(&(alpha.clone(), e.clone()))
                .ok_or_else(|| TowerError::UnmappedGenerator {
                    generator: g.name.clone(),
                    tower_element: format!("(x - ({}))^({})", alpha, e),
                })?;
            twist = &twist * mu;
        }
        if !sig.exp_arg().is_zero() {
            let chi = g.exp_actions.get(sig.exp_arg()).ok_or_else(|| {
                TowerError::UnmappedGenerator {
                    generator: g.name.clone(),
                    tower_element: format!("exp({})", sig.exp_arg()),
                }
            })?;
            twist = &twist * chi;
        }
        // rebuild the log-free part of the signature and twist it
        let mut base = ClosedForm::exp(sig.exp_arg().clone());
        for (alpha, e) in sig.powers() {
            base = &base * &ClosedForm::power(alpha.clone(), e.clone());
        }
        let mut image = base.scale_param(&twist);
        // log factors become (log + c)^m
        for (beta, m) in sig.logs() {
            let c = g.log_actions.get(beta).ok_or_else(|| {
                TowerError::UnmappedGenerator {
                    generator: g.name.clone(),
                    tower_element: format!("log(x - ({}))", beta),
                }
            })?;
            let shifted = &ClosedForm::log(beta.clone()) + &ClosedForm::from_param(c);
            image = &image * &shifted.pow(*m);
        }
        // the K-coefficient (and its parameters) is fixed
        let mut contribution = ClosedForm::zero();
        for (mono, rf) in coef.terms() {
            let part = image
                .scale_param(&ParamPoly::monomial(mono.clone(), Rat::one()))
                .scale_ratfn(rf);
            contribution = &contribution + &part;
        }
        out = &out + &contribution;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::params::ParamSym;
    use crate::algebra::Poly;

    fn mu2_gen() -> GaloisGen {
        // x^{1/2} -> -x^{1/2}
        GaloisGen::new("mu2")
            .with_power(Rat::zero(), Rat::frac(1, 2), ParamPoly::from_int(-1))
            .unwrap()
    }

    fn logshift_gen() -> GaloisGen {
        GaloisGen::new("sigma")
            .with_log(Rat::zero(), ParamPoly::var(ParamSym::formal("c1")))
    }

    #[test]
    fn fixes_rational_functions() {
        let g = mu2_gen();
        let f = ClosedForm::from_ratfn(RatFn::new(Poly::one(), Poly::x()));
        assert_eq!(galois_act(&g, &f).unwrap(), f);
    }

    #[test]
    fn log_shift_by_table() {
        let g = logshift_gen();
        let l = ClosedForm::log(Rat::zero());
        let expected = &l + &ClosedForm::from_param(&ParamPoly::var(ParamSym::formal("c1")));
        assert_eq!(galois_act(&g, &l).unwrap(), expected);
    }

    #[test]
    fn k_linearity_on_sqrt() {
        // g(x * x^{1/2}) = -x * x^{1/2}
        let g = mu2_gen();
        let s = ClosedForm::power(Rat::zero(), Rat::frac(1, 2)).scale_ratfn(&RatFn::x());
        assert_eq!(galois_act(&g, &s).unwrap(), -&s);
    }

    #[test]
    fn unmapped_generator_reported() {
        let g = mu2_gen();
        let l = ClosedForm::log(Rat::zero());
        assert!(matches!(
            galois_act(&g, &l),
            Err(TowerError::UnmappedGenerator { .. })
        ));
    }

    #[test]
    fn commutes_with_derivation() {
        let mut gen = crate::testkit::Gen::new(55);
        let g = mu2_gen()
            .with_log(Rat::zero(), ParamPoly::var(ParamSym::formal("c1")))
            .with_exp(RatFn::x(), ParamPoly::from_int(2))
            .unwrap();
        // a fixed family of terms the table covers, closed under derivation
        let sqrt = ClosedForm::power(Rat::zero(), Rat::frac(1, 2));
        let lg = ClosedForm::log(Rat::zero());
        let ex = ClosedForm::exp(RatFn::x());
        let parts: Vec<ClosedForm> = vec![
            ClosedForm::one(),
            sqrt.clone(),
            lg.clone(),
            &lg * &lg,
            ex.clone(),
            &sqrt * &lg,
            &ex * &lg,
            &ex * &sqrt,
        ];
        for _ in 0..100 {
            let mut s = ClosedForm::zero();
            for _ in 0..3 {
                let p = &parts[gen.int(0, 7) as usize];
                s = &s + &p.scale_ratfn(&gen.ratfn(1));
            }
            let lhs = galois_act(&g, &s).unwrap().derivative();
            let rhs = galois_act(&g, &s.derivative()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_multiplies_twists_and_adds_shifts() {
        let g = mu2_gen();
        let gg = g.compose(&g);
        let s = ClosedForm::power(Rat::zero(), Rat::frac(1, 2));
        assert_eq!(galois_act(&gg, &s).unwrap(), s);

        let h = logshift_gen();
        let hh = h.compose(&h);
        let l = ClosedForm::log(Rat::zero());
        let c1 = ParamPoly::var(ParamSym::formal("c1"));
        let expected = &l + &ClosedForm::from_param(&(&c1 + &c1));
        assert_eq!(galois_act(&hh, &l).unwrap(), expected);
    }
}
