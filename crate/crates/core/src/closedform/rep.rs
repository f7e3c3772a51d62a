//! Extraction of the constant representation matrix: `sigma(F) = F c(sigma)`.

use super::fundamental::{require_constant, FundamentalMatrix};
use super::galois::{galois_act, GaloisGen};
use super::params::ParamPoly;
use super::scalar::ClosedForm;
use super::{CfMat, TowerError};
use crate::algebra::MatRF;
use std::fmt;

/// A square matrix over the parameter ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMat {
    n: usize,
    entries: Vec<ParamPoly>,
}

impl ParamMat {
    pub fn new(n: usize, entries: Vec<ParamPoly>) -> Self {
        assert_eq!(entries.len(), n * n);
        ParamMat { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![ParamPoly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ParamPoly::one();
        }
        ParamMat { n, entries }
    }

    /// Conversion from a constant rational matrix.
    pub fn from_const(m: &MatRF) -> Result<Self, TowerError> {
        require_constant(m)?;
        Ok(ParamMat {
            n: m.n(),
            entries: m
                .entries()
                .iter()
                .map(|e| ParamPoly::from_rat(e.as_constant().unwrap()))
                .collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamPoly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[ParamPoly] {
        &self.entries
    }

    pub fn mul(&self, rhs: &ParamMat) -> ParamMat {
        assert_eq!(self.n, rhs.n, "parameter matrix dimension mismatch");
        let mut entries = vec![ParamPoly::zero(); self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = ParamPoly::zero();
                for k in 0..self.n {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                entries[i * self.n + j] = acc;
            }
        }
        ParamMat { n: self.n, entries }
    }

    /// Determinant by Laplace expansion (representation matrices are small).
    pub fn det(&self) -> ParamPoly {
        fn minor(m: &ParamMat, rows: &[usize], cols: &[usize]) -> ParamPoly {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = ParamPoly::zero();
            let sub_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols
                    .iter()
                    .copied()
                    .filter(|&cc| cc != c)
                    .collect();
                let term = e * &minor(m, sub_rows, &rest);
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        minor(self, &idx, &idx)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// The tower embedding of this matrix.
    pub fn as_cfmat(&self) -> CfMat {
        let mut m = CfMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, ClosedForm::from_param(self.get(i, j)));
            }
        }
        m
    }

    /// True when every entry is a plain rational constant.
    pub fn is_rational_constant(&self) -> bool {
        self.entries.iter().all(|e| e.as_rat().is_some())
    }
}

impl fmt::Display for ParamMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Solves `sigma(F) = F c` for the constant matrix c. Fails with
/// `NotConstant` when the generator table is not differential for F's tower.
pub fn rep_matrix(f: &FundamentalMatrix, g: &GaloisGen) -> Result<ParamMat, TowerError> {
    let n = f.n();
    let mut sigma = CfMat::zero(n);
    for i in 0..n {
        for j in 0..n {
            sigma.set(i, j, galois_act(g, f.mat().get(i, j))?);
        }
    }
    let c = f.inv().mul(&sigma);
    let mut entries = Vec::with_capacity(n * n);
    for e in c.entries() {
        if !e.derivative().is_zero() {
            return Err(TowerError::NotConstant {
                entry: e.to_string(),
            });
        }
        let p = e.as_param_poly().ok_or_else(|| TowerError::NotConstant {
            entry: e.to_string(),
        })?;
        entries.push(p);
    }
    let out = ParamMat { n, entries };
    if !out.is_invertible() {
        return Err(TowerError::RepresentationNotInvertible);
    }
    Ok(out)
}

/// The pair `(rep(F*gamma, g), gamma^{-1} rep(F, g) gamma)`; the two sides
/// agree for every constant invertible gamma.
pub fn rep_conjugation_check(
    f: &FundamentalMatrix,
    gamma: &MatRF,
    g: &GaloisGen,
) -> Result<(ParamMat, ParamMat), TowerError> {
    let recombined = f.recombined(gamma)?;
    let lhs = rep_matrix(&recombined, g)?;
    let gamma_p = ParamMat::from_const(gamma)?;
    let gamma_inv = ParamMat::from_const(&gamma.inverse()?)?;
    let rhs = gamma_inv.mul(&rep_matrix(f, g)?).mul(&gamma_p);
    Ok((lhs, rhs))
}

/// A representation presented by generators: the matrices `c(g)` for a list
/// of Galois generators, each invertible over the parameter ring.
#[derive(Clone, Debug)]
pub struct Representation {
    entries: Vec<(GaloisGen, ParamMat)>,
}

impl Representation {
    /// Extracts `c(g)` for every generator.
    pub fn of(f: &FundamentalMatrix, gens: &[GaloisGen]) -> Result<Self, TowerError> {
        let mut entries = Vec::with_capacity(gens.len());
        for g in gens {
            entries.push((g.clone(), rep_matrix(f, g)?));
        }
        Ok(Representation { entries })
    }

    pub fn entries(&self) -> &[(GaloisGen, ParamMat)] {
        &self.entries
    }
}
