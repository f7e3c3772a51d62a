//! Square matrices over Q(x).

use super::poly::Poly;
use super::rat::Rat;
use super::ratfn::RatFn;
use super::{linalg, AlgebraError};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An n x n matrix with entries in Q(x), stored row-major. Every entry is in
/// canonical form, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatRF {
    n: usize,
    entries: Vec<RatFn>,
}

impl MatRF {
    /// Builds from row-major entries; panics unless `entries.len() == n*n`.
    pub fn new(n: usize, entries: Vec<RatFn>) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        MatRF { n, entries }
    }

    /// Builds from rows, checking that they form a square matrix.
    pub fn from_rows(rows: Vec<Vec<RatFn>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch(row.len(), n));
            }
            entries.extend(row);
        }
        Ok(MatRF { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        MatRF::new(n, vec![RatFn::zero(); n * n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatRF::zero(n);
        for i in 0..n {
            m.set(i, i, RatFn::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<RatFn>) -> Self {
        let n = diag.len();
        let mut m = MatRF::zero(n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// 1x1 matrix.
    pub fn scalar(a: RatFn) -> Self {
        MatRF::new(1, vec![a])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFn) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[RatFn] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFn::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self == &MatRF::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> MatRF {
        let mut t = MatRF::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &RatFn) -> MatRF {
        self.map(|e| e * c)
    }

    pub fn map(&self, f: impl Fn(&RatFn) -> RatFn) -> MatRF {
        MatRF {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise derivative.
    pub fn derivative(&self) -> MatRF {
        self.map(RatFn::derivative)
    }

    /// Exact evaluation at `x0`; fails on any entry with a pole there.
    pub fn eval(&self, x0: &Rat) -> Result<Vec<Vec<Rat>>, AlgebraError> {
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                row.push(self.get(i, j).eval(x0)?);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    pub fn same_dim(&self, other: &MatRF) -> Result<(), AlgebraError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch(self.n, other.n))
        }
    }

    /// Checked arithmetic entry points; the operator impls panic on
    /// dimension mismatch instead.
    pub fn checked_add(&self, other: &MatRF) -> Result<MatRF, AlgebraError> {
        self.same_dim(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MatRF) -> Result<MatRF, AlgebraError> {
        self.same_dim(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MatRF) -> Result<MatRF, AlgebraError> {
        self.same_dim(other)?;
        Ok(self * other)
    }

    /// Determinant, computed by fraction-free elimination on the
    /// denominator-cleared polynomial matrix.
    pub fn det(&self) -> RatFn {
        linalg::det(self)
    }

    /// Exact inverse; fails when det = 0 in Q(x).
    pub fn inverse(&self) -> Result<MatRF, AlgebraError> {
        linalg::inverse(self)
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Rank over the field Q(x).
    pub fn rank(&self) -> usize {
        linalg::rank(self)
    }

    /// Column-stacked coordinates: `(m_11, m_21, ..., m_12, ...)`.
    pub fn column_stack(&self) -> Vec<RatFn> {
        let mut v = Vec::with_capacity(self.n * self.n);
        for j in 0..self.n {
            for i in 0..self.n {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    /// Inverse of [`MatRF::column_stack`].
    pub fn from_column_stack(n: usize, v: Vec<RatFn>) -> Self {
        assert_eq!(v.len(), n * n);
        let mut m = MatRF::zero(n);
        for (k, e) in v.into_iter().enumerate() {
            m.set(k % n, k / n, e);
        }
        m
    }
}

/// Kronecker product; block (i,j) of the result is `a[i][j] * b`.
pub fn kron(a: &MatRF, b: &MatRF) -> MatRF {
    let (na, nb) = (a.n(), b.n());
    let n = na * nb;
    let mut m = MatRF::zero(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    m.set(i * nb + k, j * nb + l, aij * b.get(k, l));
                }
            }
        }
    }
    m
}

impl Add for &MatRF {
    type Output = MatRF;
    fn add(self, rhs: &MatRF) -> MatRF {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        MatRF {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MatRF {
    type Output = MatRF;
    fn sub(self, rhs: &MatRF) -> MatRF {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        MatRF {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &MatRF {
    type Output = MatRF;
    fn mul(self, rhs: &MatRF) -> MatRF {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = MatRF::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFn::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl Neg for &MatRF {
    type Output = MatRF;
    fn neg(self) -> MatRF {
        self.map(|e| -e)
    }
}

impl fmt::Display for MatRF {
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

/// Converts a rational constant matrix into a `MatRF`.
pub fn mat_from_rat(n: usize, rows: &[Vec<Rat>]) -> MatRF {
    let mut m = MatRF::zero(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, RatFn::constant(rows[i][j].clone()));
        }
    }
    m
}

/// Common denominator of all entries (monic lcm of entry denominators).
pub fn common_denominator(m: &MatRF) -> Poly {
    let mut acc = Poly::one();
    for e in m.entries() {
        let g = acc.gcd(e.den());
        acc = &acc * &e.den().exact_div(&g);
    }
    acc
}
