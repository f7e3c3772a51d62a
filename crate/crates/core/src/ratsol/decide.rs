//! Deciding gauge equivalence `[A] = [B]` and triviality `[A] = [0]`.
//!
//! A witness is an invertible rational solution of `W' = B W - W A`. The
//! search inside the solution space runs in three tiers: basis elements,
//! seeded pseudo-random Q-combinations, and (for n <= 3 and small bases) the
//! generic combination with formal parameters, whose determinant is decided
//! exactly on an evaluation grid. Only when the last tier is out of range
//! does the search report `Inconclusive`.

use super::{rational_solutions, DegreeBounds, RatSolBasis, RatSolError, SylvesterSystem};
use crate::algebra::{MatRF, Rat, RatFn};
use crate::gauge::gauge_act;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default PRNG seed for the random-combination tier; echoed in reports.
pub const DEFAULT_SEED: u64 = 0x7067_6175;

/// Number of seeded random combinations tried before the generic tier.
pub const RANDOM_COMBINATION_TRIES: usize = 8;

const GENERIC_TIER_MAX_N: usize = 3;
const GENERIC_TIER_MAX_DIM: usize = 6;

/// Negative certificate: no invertible element exists in the rational
/// solution space (over the scope stated by `provenance`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Dimension of the rational solution space of the intertwiner equation.
    pub solution_dim: usize,
    /// True when the generic-determinant tier proved that every
    /// Q-combination of the basis is singular (vacuously true for dim 0).
    pub generic_determinant_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionResult {
    /// An invertible U with gauge_act(U, A) = B.
    Witness(MatRF),
    NoneFound(Certificate),
}

/// Outcome of an equivalence or triviality decision, with the data needed to
/// reproduce it.
#[derive(Clone, Debug)]
pub struct Decision {
    pub result: DecisionResult,
    pub seed: u64,
    pub solutions: RatSolBasis,
}

impl Decision {
    pub fn witness(&self) -> Option<&MatRF> {
        match &self.result {
            DecisionResult::Witness(u) => Some(u),
            DecisionResult::NoneFound(_) => None,
        }
    }
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum DecisionError {
    #[error(transparent)]
    RatSol(#[from] RatSolError),
    /// The solution space is nonzero, no invertible element was found, and
    /// the generic-determinant certificate was out of range.
    #[error("inconclusive: {skipped}; solution space dimension {solution_dim}, {tried_random} random combinations tried (seed {seed})")]
    Inconclusive {
        solution_dim: usize,
        tried_random: usize,
        seed: u64,
        skipped: String,
    },
}

/// Searches for an invertible U with `gauge_act(U, A) = B`, i.e. an
/// invertible rational solution of `U' = B U - U A`. `NoneFound` certifies
/// that no such U exists with entries in Q(x) (within user bounds, when
/// supplied; Q-combinations of the basis otherwise cover the whole space).
pub fn equivalent(
    a: &MatRF,
    b: &MatRF,
    bounds: Option<&DegreeBounds>,
    seed: u64,
) -> Result<Decision, DecisionError> {
    equivalent_with(a, b, bounds, seed, 1)
}

/// [`equivalent`] with an explicit worker count for the candidate-evaluation
/// tier. The outcome is bit-identical for every `threads` value; only the
/// evaluation schedule changes.
pub fn equivalent_with(
    a: &MatRF,
    b: &MatRF,
    bounds: Option<&DegreeBounds>,
    seed: u64,
    threads: usize,
) -> Result<Decision, DecisionError> {
    let sys = SylvesterSystem::new(a.clone(), b.clone()).map_err(RatSolError::from)?;
    let solutions = rational_solutions(&sys, bounds)?;
    let dim = solutions.dim();
    if dim == 0 {
        return Ok(Decision {
            result: DecisionResult::NoneFound(Certificate {
                solution_dim: 0,
                generic_determinant_zero: true,
            }),
            seed,
            solutions,
        });
    }

    // tier 1: basis elements
    for m in solutions.basis() {
        if m.is_invertible() {
            return Ok(found(m.clone(), a, b, seed, solutions));
        }
    }

    // tier 2: seeded random Q-combinations; all candidates are generated
    // up front and the first invertible one (by index) wins, so the answer
    // does not depend on the evaluation schedule
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<Vec<Rat>> = (0..RANDOM_COMBINATION_TRIES)
        .map(|_| {
            (0..dim)
                .map(|_| Rat::from_int(rng.gen_range(-5i64..=5)))
                .collect()
        })
        .collect();
    let flags: Vec<bool> = if threads <= 1 {
        candidates
            .iter()
            .map(|c| {
                !c.iter().all(Rat::is_zero) && combine(solutions.basis(), c).is_invertible()
            })
            .collect()
    } else {
        let chunk = candidates.len().div_ceil(threads);
        let basis = solutions.basis();
        let mut flags = Vec::with_capacity(candidates.len());
        std::thread::scope(|scope| {
            let handles: Vec<_> = candidates
                .chunks(chunk)
                .map(|cs| {
                    scope.spawn(move || {
                        cs.iter()
                            .map(|c| {
                                !c.iter().all(Rat::is_zero)
                                    && combine(basis, c).is_invertible()
                            })
                            .collect::<Vec<bool>>()
                    })
                })
                .collect();
            for h in handles {
                flags.extend(h.join().expect("candidate evaluation worker"));
            }
        });
        flags
    };
    if let Some(i) = flags.iter().position(|&f| f) {
        let m = combine(solutions.basis(), &candidates[i]);
        return Ok(found(m, a, b, seed, solutions));
    }

    // tier 3: generic combination over an exact evaluation grid. The
    // determinant of sum(t_i M_i) has degree <= n in each parameter, so it
    // vanishes identically iff it vanishes on a grid with n+1 values per
    // parameter.
    let n = a.n();
    if n <= GENERIC_TIER_MAX_N && dim <= GENERIC_TIER_MAX_DIM {
        let mut point = vec![0u32; dim];
        loop {
            if point.iter().any(|&t| t != 0) {
                let coeffs: Vec<Rat> = point
                    .iter()
                    .map(|&t| Rat::from_int(t as i64))
                    .collect();
                let m = combine(solutions.basis(), &coeffs);
                if m.is_invertible() {
                    return Ok(found(m, a, b, seed, solutions));
                }
            }
            // lexicographic successor over {0..n}^dim
            let mut carry = true;
            for slot in point.iter_mut().rev() {
                if *slot as usize == n {
                    *slot = 0;
                } else {
                    *slot += 1;
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
        return Ok(Decision {
            result: DecisionResult::NoneFound(Certificate {
                solution_dim: dim,
                generic_determinant_zero: true,
            }),
            seed,
            solutions,
        });
    }

    let skipped = if n > GENERIC_TIER_MAX_N {
        format!(
            "generic-determinant tier skipped: n = {} exceeds {}",
            n, GENERIC_TIER_MAX_N
        )
    } else {
        format!(
            "generic-determinant tier skipped: basis size {} exceeds {}",
            dim, GENERIC_TIER_MAX_DIM
        )
    };
    Err(DecisionError::Inconclusive {
        solution_dim: dim,
        tried_random: RANDOM_COMBINATION_TRIES,
        seed,
        skipped,
    })
}

/// Triviality decision: `equivalent(0, A)`. A witness U is a rational
/// fundamental matrix, `U' = A U`.
pub fn is_trivial(
    a: &MatRF,
    bounds: Option<&DegreeBounds>,
    seed: u64,
) -> Result<Decision, DecisionError> {
    equivalent_with(&MatRF::zero(a.n()), a, bounds, seed, 1)
}

/// [`is_trivial`] with an explicit worker count; see [`equivalent_with`].
pub fn is_trivial_with(
    a: &MatRF,
    bounds: Option<&DegreeBounds>,
    seed: u64,
    threads: usize,
) -> Result<Decision, DecisionError> {
    equivalent_with(&MatRF::zero(a.n()), a, bounds, seed, threads)
}

fn combine(basis: &[MatRF], coeffs: &[Rat]) -> MatRF {
    let n = basis[0].n();
    let mut acc = MatRF::zero(n);
    for (m, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &m.scale(&RatFn::constant(c.clone()));
    }
    acc
}

fn found(u: MatRF, a: &MatRF, b: &MatRF, seed: u64, solutions: RatSolBasis) -> Decision {
    debug_assert_eq!(gauge_act(&u, a).unwrap(), *b);
    Decision {
        result: DecisionResult::Witness(u),
        seed,
        solutions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, Rat};

    fn inv_x() -> RatFn {
        RatFn::new(Poly::one(), Poly::x())
    }

    #[test]
    fn self_equivalence_yields_identity() {
        let a = MatRF::from_rows(vec![
            vec![RatFn::zero(), inv_x()],
            vec![RatFn::zero(), RatFn::zero()],
        ])
        .unwrap();
        let d = equivalent(&a, &a, None, DEFAULT_SEED).unwrap();
        assert_eq!(d.witness(), Some(&MatRF::identity(2)));
    }

    #[test]
    fn scalar_log_derivative_witness() {
        // [0] = [1/x] via u = x
        let zero = MatRF::zero(1);
        let b = MatRF::scalar(inv_x());
        let d = equivalent(&zero, &b, None, DEFAULT_SEED).unwrap();
        assert_eq!(d.witness(), Some(&MatRF::scalar(RatFn::x())));
    }

    #[test]
    fn half_exponent_not_equivalent_to_zero() {
        let zero = MatRF::zero(1);
        let b = MatRF::scalar(RatFn::new(
            Poly::constant(Rat::frac(1, 2)),
            Poly::x(),
        ));
        let d = equivalent(&zero, &b, None, DEFAULT_SEED).unwrap();
        match d.result {
            DecisionResult::NoneFound(cert) => {
                assert_eq!(cert.solution_dim, 0);
                assert!(cert.generic_determinant_zero);
            }
            DecisionResult::Witness(_) => panic!("x^(1/2) is not rational"),
        }
    }

    #[test]
    fn trivial_scalar_and_identity() {
        assert_eq!(
            is_trivial(&MatRF::zero(1), None, DEFAULT_SEED)
                .unwrap()
                .witness(),
            Some(&MatRF::identity(1))
        );
        let d = is_trivial(&MatRF::scalar(inv_x()), None, DEFAULT_SEED).unwrap();
        assert_eq!(d.witness(), Some(&MatRF::scalar(RatFn::x())));
    }

    #[test]
    fn unipotent_log_system_is_not_trivial() {
        let a = MatRF::from_rows(vec![
            vec![RatFn::zero(), inv_x()],
            vec![RatFn::zero(), RatFn::zero()],
        ])
        .unwrap();
        let d = is_trivial(&a, None, DEFAULT_SEED).unwrap();
        match d.result {
            DecisionResult::NoneFound(cert) => {
                // matrix solution space is two copies of the vector space
                assert_eq!(cert.solution_dim, 2);
                assert!(cert.generic_determinant_zero);
            }
            DecisionResult::Witness(_) => panic!("needs log x"),
        }
    }

    /// First-kind system with singularities in {0, 1}.
    fn first_kind_system(g: &mut crate::testkit::Gen, n: usize) -> MatRF {
        let entries = (0..n * n)
            .map(|_| {
                let c = Rat::from_int(g.int(-2, 2));
                let d = Rat::from_int(g.int(-2, 2));
                &RatFn::new(Poly::constant(c), Poly::x())
                    + &RatFn::new(Poly::constant(d), Poly::x_minus(&Rat::one()))
            })
            .collect();
        MatRF::new(n, entries)
    }

    /// Gauge matrix that keeps first-kind singularity structure: a scalar
    /// monomial in x and x - 1 times a constant invertible matrix.
    fn first_kind_gauge(g: &mut crate::testkit::Gen, n: usize) -> MatRF {
        let scalar = &Poly::x().pow(g.int(0, 2) as u32)
            * &Poly::x_minus(&Rat::one()).pow(g.int(0, 2) as u32);
        let c = g.invertible_const(n);
        c.scale(&RatFn::from_poly(scalar))
    }

    #[test]
    fn witness_symmetry_and_transitivity() {
        let mut g = crate::testkit::Gen::new(31);
        for _ in 0..8 {
            // b = gauge_act(u, a) for a gauge that preserves first-kind
            // structure, so the automatic bounds always apply and the
            // constructed equivalence must be found
            let a = first_kind_system(&mut g, 2);
            let u = first_kind_gauge(&mut g, 2);
            let b = gauge_act(&u, &a).unwrap();
            let d = equivalent(&a, &b, None, DEFAULT_SEED).unwrap();
            let w = d.witness().expect("constructed equivalence must be found");
            assert_eq!(gauge_act(w, &a).unwrap(), b);
            // inverse witness transports back
            let w_inv = w.inverse().unwrap();
            assert_eq!(gauge_act(&w_inv, &b).unwrap(), a);

            // transitivity: chain with a second constructed equivalence
            let u2 = first_kind_gauge(&mut g, 2);
            let c = gauge_act(&u2, &b).unwrap();
            let d2 = equivalent(&b, &c, None, DEFAULT_SEED).unwrap();
            let v = d2.witness().expect("constructed equivalence must be found");
            assert_eq!(gauge_act(&(v * w), &a).unwrap(), c);
        }
    }
}
