//! The category of gauge classes: objects are classes `[A]`, arrows are
//! intertwiners `M' = A2 M - M A1` stored as concrete representatives, with
//! composition `N o M = NM`, inverses, gauge transport, and the translation
//! between arrows and constant representation morphisms
//! (`f = F2^{-1} M F1`, `M = F2 f F1^{-1}`).

use crate::algebra::{AlgebraError, MatRF};
use crate::closedform::{rep_matrix, CfMat, FundamentalMatrix, GaloisGen, ParamMat, TowerError};
use crate::gauge::{gauge_act, GaugeClass};
use crate::ratsol::{sylvester_residual, SylvesterSystem};

/// An object: a gauge class with a chosen representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obj {
    cls: GaugeClass,
}

impl Obj {
    pub fn new(rep: MatRF) -> Self {
        Obj {
            cls: GaugeClass::new(rep),
        }
    }

    pub fn rep(&self) -> &MatRF {
        self.cls.rep()
    }

    pub fn n(&self) -> usize {
        self.cls.n()
    }
}

/// An arrow `[A1] -> [A2]`: a matrix M with `M' = A2 M - M A1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    src: Obj,
    dst: Obj,
    m: MatRF,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("matrix is not an intertwiner; residual {residual}")]
    NotAnIntertwiner { residual: MatRF },
    #[error("source and target do not match")]
    SourceTargetMismatch,
    #[error("fundamental matrix does not belong to the arrow endpoint")]
    SystemMismatch,
    #[error("morphism entry is not constant: {entry}")]
    NotConstant { entry: String },
    #[error("intertwining fails for generator {generator}")]
    IntertwiningFails { generator: String },
    #[error("matrix entry is not rational: {entry}")]
    NotRational { entry: String },
    #[error("constant morphism must have entries in Q")]
    ConstantEntriesRequired,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

impl Arrow {
    pub fn src(&self) -> &Obj {
        &self.src
    }

    pub fn dst(&self) -> &Obj {
        &self.dst
    }

    pub fn m(&self) -> &MatRF {
        &self.m
    }

    /// The identity arrow on an object.
    pub fn identity(obj: &Obj) -> Arrow {
        Arrow {
            src: obj.clone(),
            dst: obj.clone(),
            m: MatRF::identity(obj.n()),
        }
    }
}

/// Validates the intertwiner condition and builds the arrow; a nonzero
/// residual is returned as the certificate of failure.
pub fn arrow_new(src: Obj, dst: Obj, m: MatRF) -> Result<Arrow, CategoryError> {
    let sys = SylvesterSystem::new(src.rep().clone(), dst.rep().clone())?;
    let residual = sylvester_residual(&m, &sys)?;
    if !residual.is_zero() {
        return Err(CategoryError::NotAnIntertwiner { residual });
    }
    Ok(Arrow { src, dst, m })
}

/// `g o f` with matrix `g.m * f.m`; requires `f.dst = g.src` (as chosen
/// representatives).
pub fn arrow_compose(g: &Arrow, f: &Arrow) -> Result<Arrow, CategoryError> {
    if f.dst != g.src {
        return Err(CategoryError::SourceTargetMismatch);
    }
    let m = &g.m * &f.m;
    let composed = arrow_new(f.src.clone(), g.dst.clone(), m)
        .expect("composite of intertwiners is an intertwiner");
    Ok(composed)
}

/// The inverse arrow `dst -> src` with matrix `M^{-1}`.
pub fn arrow_inverse(f: &Arrow) -> Result<Arrow, CategoryError> {
    let m_inv = f.m.inverse()?;
    let inv = arrow_new(f.dst.clone(), f.src.clone(), m_inv)
        .expect("inverse of an invertible intertwiner is an intertwiner");
    Ok(inv)
}

/// Gauge transport: replaces the endpoints by `B_i = gauge_act(U_i^{-1}, A_i)`
/// and the matrix by `U2^{-1} M U1`, an arrow `[B1] -> [B2]`.
pub fn arrow_transport(f: &Arrow, u1: &MatRF, u2: &MatRF) -> Result<Arrow, CategoryError> {
    let b1 = gauge_act(&u1.inverse()?, f.src.rep())?;
    let b2 = gauge_act(&u2.inverse()?, f.dst.rep())?;
    let m = &(&u2.inverse()? * &f.m) * u1;
    let transported = arrow_new(Obj::new(b1), Obj::new(b2), m)
        .expect("gauge transport preserves the intertwiner condition");
    Ok(transported)
}

/// Arrow equality in the sense `N = V M U` with U, V invertible over Q(x):
/// two matrices over a field are GLxGL-equivalent exactly when their ranks
/// agree.
pub fn arrow_equal(f: &Arrow, g: &Arrow) -> Result<bool, CategoryError> {
    if f.src != g.src || f.dst != g.dst {
        return Err(CategoryError::SourceTargetMismatch);
    }
    Ok(f.m.rank() == g.m.rank())
}

/// `f = F2^{-1} M F1`: the constant morphism attached to an arrow, computed
/// in the tower. Every entry must be constant; the intertwining relation
/// `f c1(g) = c2(g) f` is verified for each supplied generator.
pub fn to_constant_morphism(
    f: &Arrow,
    f1: &FundamentalMatrix,
    f2: &FundamentalMatrix,
    shared_gens: &[GaloisGen],
) -> Result<ParamMat, CategoryError> {
    if f1.system() != f.src.rep() || f2.system() != f.dst.rep() {
        return Err(CategoryError::SystemMismatch);
    }
    let prod = f2.inv().mul(&CfMat::from_matrf(&f.m)).mul(f1.mat());
    let n = prod.n();
    let mut entries = Vec::with_capacity(n * n);
    for e in prod.entries() {
        if !e.derivative().is_zero() {
            return Err(CategoryError::NotConstant {
                entry: e.to_string(),
            });
        }
        let p = e.as_param_poly().ok_or_else(|| CategoryError::NotConstant {
            entry: e.to_string(),
        })?;
        entries.push(p);
    }
    let morphism = ParamMat::new(n, entries);
    for g in shared_gens {
        let c1 = rep_matrix(f1, g)?;
        let c2 = rep_matrix(f2, g)?;
        if morphism.mul(&c1) != c2.mul(&morphism) {
            return Err(CategoryError::IntertwiningFails {
                generator: g.name().to_string(),
            });
        }
    }
    Ok(morphism)
}

/// `M = F2 c F1^{-1}`: the arrow attached to a constant morphism. Succeeds
/// exactly when all entries land in Q(x).
pub fn from_constant_morphism(
    c: &ParamMat,
    f1: &FundamentalMatrix,
    f2: &FundamentalMatrix,
) -> Result<Arrow, CategoryError> {
    if !c.is_rational_constant() {
        return Err(CategoryError::ConstantEntriesRequired);
    }
    let prod = f2.mat().mul(&c.as_cfmat()).mul(f1.inv());
    let m = prod.as_matrf().ok_or_else(|| {
        let offending = prod
            .entries()
            .iter()
            .find(|e| e.as_ratfn().is_none())
            .map(|e| e.to_string())
            .unwrap_or_default();
        CategoryError::NotRational { entry: offending }
    })?;
    arrow_new(
        Obj::new(f1.system().clone()),
        Obj::new(f2.system().clone()),
        m,
    )
}
