//! The gauge action of GL_n(K) on M_n(K) and the group H_n(K).
//!
//! H_n(K) = M_n(K) x GL_n(K) with the product
//! `(A, F)(B, G) = (A + F B F^{-1}, F G)`; the subgroup
//! Delta_n(K) = {(U'U^{-1}, U)} realizes the gauge action
//! `(U, A) -> U'U^{-1} + U A U^{-1}` by conjugating the normal subgroup
//! M_n(K) x {1}.

use crate::algebra::{AlgebraError, MatRF};

/// An element (A, F) of H_n(K); F is invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPair {
    a: MatRF,
    f: MatRF,
}

impl HPair {
    pub fn new(a: MatRF, f: MatRF) -> Result<Self, AlgebraError> {
        a.same_dim(&f)?;
        if !f.is_invertible() {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(HPair { a, f })
    }

    /// The group identity (0, I).
    pub fn identity(n: usize) -> Self {
        HPair {
            a: MatRF::zero(n),
            f: MatRF::identity(n),
        }
    }

    pub fn a(&self) -> &MatRF {
        &self.a
    }

    pub fn f(&self) -> &MatRF {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }
}

/// A gauge class `[A]`, stored as a chosen representative. Class equality is
/// semidecidable and lives in `ratsol::equivalent`; this type only carries
/// the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeClass {
    rep: MatRF,
}

impl GaugeClass {
    pub fn new(rep: MatRF) -> Self {
        GaugeClass { rep }
    }

    pub fn rep(&self) -> &MatRF {
        &self.rep
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }
}

/// `U'U^{-1} + U A U^{-1}`: the gauge action of U on the system matrix A.
pub fn gauge_act(u: &MatRF, a: &MatRF) -> Result<MatRF, AlgebraError> {
    u.same_dim(a)?;
    let u_inv = u.inverse()?;
    Ok(&(&u.derivative() * &u_inv) + &(&(u * a) * &u_inv))
}

/// Group law `(A, F)(B, G) = (A + F B F^{-1}, F G)`.
pub fn h_mul(p: &HPair, q: &HPair) -> Result<HPair, AlgebraError> {
    p.a().same_dim(q.a())?;
    let f_inv = p.f().inverse()?;
    let a = &p.a + &(&(&p.f * &q.a) * &f_inv);
    let f = &p.f * &q.f;
    Ok(HPair { a, f })
}

/// Group inverse `(A, F)^{-1} = (-F^{-1} A F, F^{-1})`.
pub fn h_inv(p: &HPair) -> HPair {
    let f_inv = p.f().inverse().expect("HPair invariant: F invertible");
    let a = -&(&(&f_inv * &p.a) * &p.f);
    HPair { a, f: f_inv }
}

/// The Delta_n(K) element `(U'U^{-1}, U)` attached to U.
pub fn delta_elem(u: &MatRF) -> Result<HPair, AlgebraError> {
    let u_inv = u.inverse()?;
    Ok(HPair {
        a: &u.derivative() * &u_inv,
        f: u.clone(),
    })
}

/// Computes `(U'U^{-1}, U)(A, 1)(0, U^{-1})` through the group law, checks
/// that the second component collapses to the identity, and returns the
/// first component. Always equals `gauge_act(u, a)`.
pub fn conjugation_action_check(u: &MatRF, a: &MatRF) -> Result<MatRF, AlgebraError> {
    u.same_dim(a)?;
    let n = u.n();
    let left = h_mul(&delta_elem(u)?, &HPair::new(a.clone(), MatRF::identity(n))?)?;
    let out = h_mul(&left, &HPair::new(MatRF::zero(n), u.inverse()?)?)?;
    assert!(
        out.f().is_identity(),
        "conjugation of M_n x {{1}} left the normal subgroup"
    );
    Ok(out.a().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, Rat, RatFn};
    use crate::testkit::Gen;

    fn inv_x() -> RatFn {
        RatFn::new(Poly::one(), Poly::x())
    }

    fn upper_unipotent() -> MatRF {
        MatRF::from_rows(vec![
            vec![RatFn::one(), RatFn::x()],
            vec![RatFn::zero(), RatFn::one()],
        ])
        .unwrap()
    }

    fn diag_x_1() -> MatRF {
        MatRF::diagonal(vec![RatFn::x(), RatFn::one()])
    }

    #[test]
    fn identity_acts_trivially() {
        let mut g = Gen::new(11);
        for _ in 0..10 {
            let a = g.matrf(2, 2);
            assert_eq!(gauge_act(&MatRF::identity(2), &a).unwrap(), a);
        }
    }

    #[test]
    fn gauge_act_on_zero_diagonal() {
        // gauge_act(diag(x, 1), 0) = diag(1/x, 0)
        let got = gauge_act(&diag_x_1(), &MatRF::zero(2)).unwrap();
        assert_eq!(got, MatRF::diagonal(vec![inv_x(), RatFn::zero()]));
    }

    #[test]
    fn gauge_act_is_left_action_on_fixture() {
        let u = upper_unipotent();
        let v = diag_x_1();
        let a = MatRF::from_rows(vec![
            vec![RatFn::zero(), RatFn::one()],
            vec![RatFn::zero(), RatFn::zero()],
        ])
        .unwrap();
        let lhs = gauge_act(&u, &gauge_act(&v, &a).unwrap()).unwrap();
        let rhs = gauge_act(&(&u * &v), &a).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_identity_element() {
        let mut g = Gen::new(5);
        let q = HPair::new(g.matrf(2, 2), g.invertible(2, 2)).unwrap();
        assert_eq!(h_mul(&HPair::identity(2), &q).unwrap(), q);
        assert_eq!(h_mul(&q, &HPair::identity(2)).unwrap(), q);
    }

    #[test]
    fn h_inverse_law() {
        let mut g = Gen::new(7);
        for _ in 0..10 {
            let p = HPair::new(g.matrf(2, 1), g.invertible(2, 1)).unwrap();
            assert_eq!(h_mul(&p, &h_inv(&p)).unwrap(), HPair::identity(2));
            assert_eq!(h_mul(&h_inv(&p), &p).unwrap(), HPair::identity(2));
        }
    }

    #[test]
    fn h_mul_scalar_example() {
        // n = 1: (0, x)((a), (1)) = ((a), (x))
        let a = inv_x();
        let p = HPair::new(MatRF::zero(1), MatRF::scalar(RatFn::x())).unwrap();
        let q = HPair::new(MatRF::scalar(a.clone()), MatRF::identity(1)).unwrap();
        let got = h_mul(&p, &q).unwrap();
        assert_eq!(got.a(), &MatRF::scalar(a));
        assert_eq!(got.f(), &MatRF::scalar(RatFn::x()));
    }

    #[test]
    fn h_inv_scalar_example() {
        // (1, x)^{-1} = (-1, 1/x) at n = 1
        let p = HPair::new(MatRF::identity(1), MatRF::scalar(RatFn::x())).unwrap();
        let got = h_inv(&p);
        assert_eq!(got.a(), &MatRF::scalar(RatFn::from_int(-1)));
        assert_eq!(got.f(), &MatRF::scalar(inv_x()));
    }

    #[test]
    fn h_inv_with_identity_frame() {
        let mut g = Gen::new(9);
        let a = g.matrf(2, 2);
        let p = HPair::new(a.clone(), MatRF::identity(2)).unwrap();
        assert_eq!(h_inv(&p).a(), &-&a);
    }

    #[test]
    fn delta_examples() {
        let id = delta_elem(&MatRF::identity(2)).unwrap();
        assert_eq!(id, HPair::identity(2));
        let d = delta_elem(&diag_x_1()).unwrap();
        assert_eq!(d.a(), &MatRF::diagonal(vec![inv_x(), RatFn::zero()]));
        assert_eq!(d.f(), &diag_x_1());
    }

    #[test]
    fn delta_is_a_subgroup_on_fixture() {
        let u = upper_unipotent();
        let v = diag_x_1();
        let lhs = h_mul(&delta_elem(&u).unwrap(), &delta_elem(&v).unwrap()).unwrap();
        assert_eq!(lhs, delta_elem(&(&u * &v)).unwrap());
        assert_eq!(
            h_inv(&delta_elem(&u).unwrap()),
            delta_elem(&u.inverse().unwrap()).unwrap()
        );
    }

    #[test]
    fn conjugation_matches_gauge_action() {
        // n = 1: U = x^2, A = 1/x gives 2/x + 1/x = 3/x
        let u = MatRF::scalar(RatFn::from_poly(&Poly::x() * &Poly::x()));
        let a = MatRF::scalar(inv_x());
        let got = conjugation_action_check(&u, &a).unwrap();
        assert_eq!(
            got,
            MatRF::scalar(RatFn::new(Poly::constant(Rat::from_int(3)), Poly::x()))
        );
        assert_eq!(got, gauge_act(&u, &a).unwrap());

        let mut g = Gen::new(3);
        for _ in 0..10 {
            let u = g.invertible(2, 1);
            let a = g.matrf(2, 1);
            assert_eq!(
                conjugation_action_check(&u, &a).unwrap(),
                gauge_act(&u, &a).unwrap()
            );
        }
    }

    #[test]
    fn normal_subgroup_is_stable() {
        let mut g = Gen::new(21);
        for _ in 0..10 {
            let p = HPair::new(g.matrf(2, 1), g.invertible(2, 1)).unwrap();
            let q = HPair::new(g.matrf(2, 1), MatRF::identity(2)).unwrap();
            let conj = h_mul(&h_mul(&p, &q).unwrap(), &h_inv(&p)).unwrap();
            assert!(conj.f().is_identity());
        }
    }
}
