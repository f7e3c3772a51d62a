//! Automatic exponent bounds for rational solutions of `m' = L m`.
//!
//! At a finite singular point, a rational solution's valuation must be an
//! integer eigenvalue of the residue matrix when the pole is simple, and at
//! infinity its degree growth must be an integer eigenvalue of `lim x*L`.
//! Non-integer eigenvalues therefore never contribute solutions, so the bound
//! uses only the integer spectrum: pole order `max(0, -min integer
//! eigenvalue)` per factor, numerator degree `deg D + max integer eigenvalue
//! at infinity`. Points are grouped by squarefree coprime denominator
//! factors; the residue matrix lives in the quotient ring Q[x]/(pi) and its
//! integer spectrum is read off the characteristic polynomial of the induced
//! Q-linear operator. Either computation degrades to an explicit
//! "supply bounds" error, never to a silently incomplete answer.

use super::{vectorize, DegreeBounds, Provenance, RatSolError, SylvesterSystem};
use crate::algebra::linalg::{self, QMat};
use crate::algebra::{MatRF, Poly, Rat};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Splits a collection of squarefree polynomials into pairwise coprime,
/// squarefree, monic factors with the same root set, pulling rational roots
/// out as linear factors.
pub(crate) fn coprime_refinement(inputs: &[Poly]) -> Vec<Poly> {
    let mut factors: Vec<Poly> = Vec::new();
    for f in inputs {
        if f.is_constant() {
            continue;
        }
        let mut f = f.monic();
        let mut i = 0;
        while i < factors.len() && !f.is_constant() {
            let d = f.gcd(&factors[i]);
            if !d.is_constant() {
                let rest = factors[i].exact_div(&d);
                f = f.exact_div(&d);
                if rest.is_constant() {
                    factors[i] = d;
                } else {
                    factors[i] = rest;
                    factors.push(d);
                }
            }
            i += 1;
        }
        if !f.is_constant() {
            factors.push(f);
        }
    }
    // split off rational roots as individual linear factors
    let mut out = Vec::new();
    for f in factors {
        match f.rational_roots() {
            Some(roots) if !roots.is_empty() => {
                let mut rest = f.clone();
                for (r, _) in &roots {
                    let lin = Poly::x_minus(r);
                    rest = rest.exact_div(&lin);
                    out.push(lin);
                }
                if !rest.is_constant() {
                    out.push(rest);
                }
            }
            _ => out.push(f),
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Denominator factor keys of a system: the coprime refinement of the
/// squarefree parts of all entry denominators of A1 and A2.
pub(crate) fn system_factor_keys(sys: &SylvesterSystem) -> Vec<Poly> {
    let mut parts = Vec::new();
    for m in [sys.a1(), sys.a2()] {
        for e in m.entries() {
            let sf = e.den().squarefree_part();
            if !sf.is_constant() {
                parts.push(sf);
            }
        }
    }
    coprime_refinement(&parts)
}

/// Residue matrix of `L` along the squarefree factor `pi`, as elements of
/// Q[x]/(pi). Fails when some entry has a pole of order >= 2 at a point
/// of `pi`.
fn residue_matrix(l: &MatRF, pi: &Poly) -> Result<Vec<Vec<Poly>>, RatSolError> {
    let n = l.n();
    let pi_prime_inv = pi
        .derivative()
        .inverse_mod(pi)
        .expect("squarefree factor has invertible derivative");
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let e = l.get(i, j);
            let q = e.den();
            let s = q.gcd(pi);
            if s.is_constant() {
                row.push(Poly::zero());
                continue;
            }
            let q1 = q.exact_div(&s);
            let t = q1.gcd(pi);
            if !t.is_constant() {
                // order along t is at least 2
                let mut order = 2;
                let mut rest = q1.exact_div(&t);
                while !rest.gcd(&t).is_constant() {
                    rest = rest.exact_div(&rest.gcd(&t));
                    order += 1;
                }
                return Err(RatSolError::HigherOrderPole { factor: t, order });
            }
            let inv_q1 = q1
                .inverse_mod(pi)
                .expect("denominator cofactor is a unit mod pi");
            let h = &(&e.num().div_rem(pi).1 * &pi.exact_div(&s)) * &inv_q1;
            let res = &h.div_rem(pi).1 * &pi_prime_inv;
            row.push(res.div_rem(pi).1);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Matrix over Q of the multiplication operator `v -> R v` on
/// `(Q[x]/(pi))^n`, in the basis `x^a e_v` ordered by `(v, a)`.
fn q_operator(res: &[Vec<Poly>], pi: &Poly) -> QMat {
    let n = res.len();
    let d = pi.deg();
    let size = n * d;
    let mut big = vec![vec![Rat::zero(); size]; size];
    for v in 0..n {
        for a in 0..d {
            let xa = Poly::monomial(Rat::one(), a);
            for (w, row) in res.iter().enumerate() {
                let prod = (&row[v] * &xa).div_rem(pi).1;
                for b in 0..d {
                    big[w * d + b][v * d + a] = prod.coeff(b);
                }
            }
        }
    }
    big
}

/// Sorted integer eigenvalues (as a set) of the residue data; `None` when
/// root enumeration exceeds the desk-scale guard.
fn integer_spectrum(op: &QMat) -> Option<Vec<BigInt>> {
    let chi = linalg::charpoly_q(op);
    let roots = chi.integer_roots()?;
    Some(roots.into_iter().map(|(k, _)| k).collect())
}

/// The matrix `lim x*L(x)` over Q; errors when some entry does not vanish at
/// infinity (the system is then irregular there).
fn leading_at_infinity(l: &MatRF) -> Result<QMat, RatSolError> {
    let n = l.n();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let e = l.get(i, j);
            match e.valuation_at_infinity() {
                None => {}
                Some(v) if v < 1 => {
                    return Err(RatSolError::IrregularAtInfinity { valuation: v })
                }
                Some(1) => {
                    out[i][j] =
                        e.num().leading().unwrap() / e.den().leading().unwrap();
                }
                Some(_) => {}
            }
        }
    }
    Ok(out)
}

/// Computes complete exponent bounds for the rational solutions of the
/// vectorized system, or reports the obstruction that makes user bounds
/// necessary (higher-order pole, irregular infinity, or an integrality check
/// out of reach).
pub fn denominator_bound(sys: &SylvesterSystem) -> Result<DegreeBounds, RatSolError> {
    let l = vectorize(sys);
    let keys = system_factor_keys(sys);
    let mut pole_orders = BTreeMap::new();
    let mut den_degree: i64 = 0;
    for pi in keys {
        let res = residue_matrix(&l, &pi)?;
        let spectrum = integer_spectrum(&q_operator(&res, &pi)).ok_or_else(|| {
            RatSolError::UnverifiableEigenvalues { factor: pi.clone() }
        })?;
        let bound: u32 = match spectrum.first() {
            Some(min) => {
                let neg = -min.clone();
                if neg > BigInt::from(0) {
                    u32::try_from(neg).expect("pole bound fits u32")
                } else {
                    0
                }
            }
            // no integer local exponent: no rational solution touches this
            // point, so any pole bound (we use 0) keeps the ansatz complete
            None => 0,
        };
        den_degree += bound as i64 * pi.deg() as i64;
        pole_orders.insert(pi, bound);
    }
    let linf = leading_at_infinity(&l)?;
    let spectrum_inf =
        integer_spectrum(&linf).ok_or(RatSolError::UnverifiableEigenvaluesAtInfinity)?;
    let numerator_degree: u32 = match spectrum_inf.last() {
        Some(max) => {
            let d = den_degree + i64::try_from(max.clone()).unwrap_or(i64::MAX / 2);
            if d > 0 {
                u32::try_from(d).expect("numerator bound fits u32")
            } else {
                0
            }
        }
        None => 0,
    };
    Ok(DegreeBounds {
        pole_orders,
        numerator_degree,
        provenance: Provenance::Computed,
    })
}
