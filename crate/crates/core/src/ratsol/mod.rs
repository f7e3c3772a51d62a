//! Rational solutions of the intertwiner equation `M' = A2·M - M·A1` over
//! Q(x), and the decision procedures built on them: gauge equivalence of two
//! systems and triviality of a class.
//!
//! The solver vectorizes the matrix equation into a first-order system
//! `m' = L m` with `L = I (x) A2 - A1^T (x) I`, bounds denominators and
//! numerator degrees from the singularity structure of `L`, and finishes with
//! one exact linear solve over Q. Everything either certifies completeness
//! (bounds computed from first-kind singularity data) or says explicitly that
//! it ran with user-supplied bounds.

mod bounds;
mod decide;
mod solver;

pub use bounds::denominator_bound;
pub use decide::{
    equivalent, equivalent_with, is_trivial, is_trivial_with, Certificate, Decision,
    DecisionError, DecisionResult, DEFAULT_SEED, RANDOM_COMBINATION_TRIES,
};
pub use solver::rational_solutions;

use crate::algebra::{kron, AlgebraError, MatRF, Poly};
use std::collections::BTreeMap;
use std::fmt;

/// The data of the equation `M' = A2·M - M·A1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterSystem {
    a1: MatRF,
    a2: MatRF,
}

impl SylvesterSystem {
    pub fn new(a1: MatRF, a2: MatRF) -> Result<Self, AlgebraError> {
        a1.same_dim(&a2)?;
        Ok(SylvesterSystem { a1, a2 })
    }

    /// The triviality instance: `M' = A·M`.
    pub fn triviality(a: MatRF) -> Self {
        SylvesterSystem {
            a1: MatRF::zero(a.n()),
            a2: a,
        }
    }

    pub fn a1(&self) -> &MatRF {
        &self.a1
    }

    pub fn a2(&self) -> &MatRF {
        &self.a2
    }

    pub fn n(&self) -> usize {
        self.a1.n()
    }
}

/// `M' - A2·M + M·A1`; zero exactly when M is an intertwiner.
pub fn sylvester_residual(m: &MatRF, sys: &SylvesterSystem) -> Result<MatRF, AlgebraError> {
    m.same_dim(sys.a1())?;
    Ok(&(&m.derivative() - &(sys.a2() * m)) + &(m * sys.a1()))
}

/// The n^2 x n^2 matrix `L = I (x) A2 - A1^T (x) I` of the vectorized
/// equation: column-stacking M turns the residual into `m' - L m`.
pub fn vectorize(sys: &SylvesterSystem) -> MatRF {
    let n = sys.n();
    let id = MatRF::identity(n);
    &kron(&id, sys.a2()) - &kron(&sys.a1().transpose(), &id)
}

/// Who chose the search space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Computed => write!(f, "computed"),
            Provenance::UserSupplied => write!(f, "user_supplied"),
        }
    }
}

/// Exponent bounds for the rational-solution ansatz: a pole-order bound per
/// squarefree denominator factor, plus one numerator degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBounds {
    pub pole_orders: BTreeMap<Poly, u32>,
    pub numerator_degree: u32,
    pub provenance: Provenance,
}

impl DegreeBounds {
    pub fn user(pole_orders: BTreeMap<Poly, u32>, numerator_degree: u32) -> Self {
        DegreeBounds {
            pole_orders,
            numerator_degree,
            provenance: Provenance::UserSupplied,
        }
    }

    /// The prescribed common denominator `prod pi^order`.
    pub fn denominator(&self) -> Poly {
        let mut d = Poly::one();
        for (pi, &e) in &self.pole_orders {
            d = &d * &pi.pow(e);
        }
        d
    }
}

/// A Q-basis of the rational solution space found inside the prescribed
/// ansatz. When `bounds_used.provenance` is `Computed`, this is the complete
/// space of solutions in M_n(Q(x)).
#[derive(Clone, Debug)]
pub struct RatSolBasis {
    basis: Vec<MatRF>,
    system: SylvesterSystem,
    bounds_used: DegreeBounds,
}

impl RatSolBasis {
    pub fn basis(&self) -> &[MatRF] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn system(&self) -> &SylvesterSystem {
        &self.system
    }

    pub fn bounds_used(&self) -> &DegreeBounds {
        &self.bounds_used
    }
}

/// Why the automatic bound (or the solve) could not proceed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RatSolError {
    #[error("singularity at {factor} has a pole of order {order} >= 2; supply degree bounds")]
    HigherOrderPole { factor: Poly, order: usize },
    #[error("irregular at infinity (entry valuation {valuation} < 1); supply degree bounds")]
    IrregularAtInfinity { valuation: i64 },
    #[error("integer-eigenvalue certification out of reach at {factor}; supply degree bounds")]
    UnverifiableEigenvalues { factor: Poly },
    #[error("integer-eigenvalue certification out of reach at infinity; supply degree bounds")]
    UnverifiableEigenvaluesAtInfinity,
    #[error("user bounds do not cover denominator factor {factor}")]
    UncoveredFactor { factor: Poly },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl RatSolError {
    /// True for the obstructions that user-supplied bounds can repair.
    pub fn needs_user_bound(&self) -> bool {
        matches!(
            self,
            RatSolError::HigherOrderPole { .. }
                | RatSolError::IrregularAtInfinity { .. }
                | RatSolError::UnverifiableEigenvalues { .. }
                | RatSolError::UnverifiableEigenvaluesAtInfinity
        )
    }
}
