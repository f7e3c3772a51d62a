//! The ansatz solve: all intertwiners `M = P/D` with prescribed denominator
//! `D` and numerator degree, found by one exact nullspace computation over Q.

use super::bounds::{denominator_bound, system_factor_keys};
use super::{DegreeBounds, Provenance, RatSolBasis, RatSolError, SylvesterSystem};
use crate::algebra::linalg::{self, QMat};
use crate::algebra::{common_denominator, MatRF, Poly, Rat, RatFn};

/// Checks that user bounds cover every denominator factor of the system.
fn validate_user_bounds(
    bounds: &DegreeBounds,
    sys: &SylvesterSystem,
) -> Result<(), RatSolError> {
    let mut product = Poly::one();
    for pi in bounds.pole_orders.keys() {
        if pi.is_constant() {
            return Err(RatSolError::UncoveredFactor { factor: pi.clone() });
        }
        product = &product * pi;
    }
    for key in system_factor_keys(sys) {
        let g = key.gcd(&product);
        if g.degree() < key.degree() {
            return Err(RatSolError::UncoveredFactor {
                factor: key.exact_div(&g),
            });
        }
    }
    Ok(())
}

/// Returns a Q-basis of all rational solutions of `M' = A2 M - M A1` within
/// the bound-prescribed ansatz space. With computed bounds this is the
/// complete solution space over Q(x); with user bounds it is complete for
/// the stated denominator and degree only. The basis is the canonical
/// reduced-echelon one for the coefficient ordering (matrix entries row-major,
/// numerator powers ascending).
pub fn rational_solutions(
    sys: &SylvesterSystem,
    bounds: Option<&DegreeBounds>,
) -> Result<RatSolBasis, RatSolError> {
    let bounds = match bounds {
        Some(b) => {
            validate_user_bounds(b, sys)?;
            DegreeBounds {
                pole_orders: b
                    .pole_orders
                    .iter()
                    .map(|(k, v)| (k.monic(), *v))
                    .collect(),
                numerator_degree: b.numerator_degree,
                provenance: Provenance::UserSupplied,
            }
        }
        None => denominator_bound(sys)?,
    };
    let n = sys.n();
    let d = bounds.denominator();
    let d_prime = d.derivative();
    let deg_p = bounds.numerator_degree as usize;
    // common polynomial form of Q*A1, Q*A2
    let mut q = common_denominator(sys.a1());
    {
        let q2 = common_denominator(sys.a2());
        let g = q.gcd(&q2);
        q = &q * &q2.exact_div(&g);
    }
    let qa1 = poly_matrix(sys.a1(), &q);
    let qa2 = poly_matrix(sys.a2(), &q);

    // residual, cleared of denominators:
    //   E = Q (P' D - P D') - (Q A2) P D + P (Q A1) D
    // each entry of E is Q-linear in the numerator coefficients
    let unknowns = n * n * (deg_p + 1);
    let mut columns: Vec<Vec<Poly>> = Vec::with_capacity(unknowns);
    let mut max_deg = 0usize;
    for i in 0..n {
        for j in 0..n {
            for k in 0..=deg_p {
                let e = residual_of_unit(i, j, k, n, &q, &qa1, &qa2, &d, &d_prime);
                for entry in &e {
                    if let Some(deg) = entry.degree() {
                        max_deg = max_deg.max(deg);
                    }
                }
                columns.push(e);
            }
        }
    }
    // rows: one equation per (residual entry, power of x)
    let rows = n * n * (max_deg + 1);
    let mut mat: QMat = vec![vec![Rat::zero(); unknowns]; rows];
    for (col, e) in columns.iter().enumerate() {
        for (cell, entry) in e.iter().enumerate() {
            for power in 0..=max_deg {
                let c = entry.coeff(power);
                if !c.is_zero() {
                    mat[cell * (max_deg + 1) + power][col] = c;
                }
            }
        }
    }
    let kernel = linalg::nullspace_q(&mat, unknowns);
    let mut basis = Vec::with_capacity(kernel.len());
    for v in kernel {
        let mut m = MatRF::zero(n);
        for i in 0..n {
            for j in 0..n {
                let base = (i * n + j) * (deg_p + 1);
                let p = Poly::new(v[base..base + deg_p + 1].to_vec());
                m.set(i, j, RatFn::new(p, d.clone()));
            }
        }
        debug_assert!(super::sylvester_residual(&m, sys).unwrap().is_zero());
        basis.push(m);
    }
    Ok(RatSolBasis {
        basis,
        system: sys.clone(),
        bounds_used: bounds,
    })
}

/// `Q * A` as a polynomial matrix (row-major), exact by construction of Q.
fn poly_matrix(a: &MatRF, q: &Poly) -> Vec<Poly> {
    let n = a.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let e = a.get(i, j);
            out.push(&e.num().clone() * &q.exact_div(e.den()));
        }
    }
    out
}

/// Cleared residual of the single-monomial ansatz `P = x^k E_{ij}`, as an
/// n x n polynomial matrix (row-major).
#[allow(clippy::too_many_arguments)]
fn residual_of_unit(
    i: usize,
    j: usize,
    k: usize,
    n: usize,
    q: &Poly,
    qa1: &[Poly],
    qa2: &[Poly],
    d: &Poly,
    d_prime: &Poly,
) -> Vec<Poly> {
    let xk = Poly::monomial(Rat::one(), k);
    let xk_deriv = if k == 0 {
        Poly::zero()
    } else {
        Poly::monomial(Rat::from_int(k as i64), k - 1)
    };
    let mut e = vec![Poly::zero(); n * n];
    // Q (P' D - P D') at entry (i, j)
    e[i * n + j] = &(&xk_deriv * d) - &(&xk * d_prime);
    e[i * n + j] = &e[i * n + j] * q;
    // -(Q A2) P D contributes to column j: -(QA2)[r][i] x^k D
    let xkd = &xk * d;
    for r in 0..n {
        let t = &qa2[r * n + i] * &xkd;
        e[r * n + j] = &e[r * n + j] - &t;
    }
    // P (Q A1) D contributes to row i: x^k (QA1)[j][c] D
    for c in 0..n {
        let t = &qa1[j * n + c] * &xkd;
        e[i * n + c] = &e[i * n + c] + &t;
    }
    e
}
