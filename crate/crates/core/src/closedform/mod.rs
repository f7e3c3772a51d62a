//! A computable stand-in for the Picard-Vessiot extension: a symbolic tower
//! of `(x-a)^e`, `exp(r)`, `log(x-b)` over Q(x) with exact derivation,
//! explicit Galois-generator actions, fundamental matrices for the supported
//! solvable families, and extraction of the constant representation.

mod fundamental;
mod galois;
mod params;
mod rep;
mod scalar;

pub use fundamental::{
    antiderivative, fundamental_2x2_triangular, fundamental_for_diagonal,
    system_from_fundamental, Antiderivative, CfMat, FundamentalMatrix,
};
pub use galois::{galois_act, GaloisGen};
pub use params::{Monomial, ParamPoly, ParamSym};
pub use rep::{rep_conjugation_check, rep_matrix, ParamMat, Representation};
pub use scalar::{ClosedForm, ParamRatFn, TermSig};

use crate::algebra::{AlgebraError, Poly};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("antiderivative needs algebraic numbers: irreducible factor {factor} has no rational roots")]
    NonRationalResidueOrPole { factor: Poly },
    #[error("generator {generator} has no action entry for {tower_element}")]
    UnmappedGenerator {
        generator: String,
        tower_element: String,
    },
    #[error("twist of generator {generator} is not a unit: {value}")]
    TwistNotAUnit { generator: String, value: String },
    #[error("representation entry is not constant: {entry}")]
    NotConstant { entry: String },
    #[error("matrix entry is not rational: {entry}")]
    NotRational { entry: String },
    #[error("tower matrix has no invertible pivot; inverse not representable here")]
    NotInvertibleInTower,
    #[error("representation matrix is not invertible over the parameter ring")]
    RepresentationNotInvertible,
    #[error("a constant rational matrix is required here")]
    ConstantMatrixRequired,
    #[error("unsupported system shape: {reason}")]
    UnsupportedShape { reason: String },
    #[error("the matrix does not satisfy F' = A F for the claimed system")]
    NotAFundamentalMatrix,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
