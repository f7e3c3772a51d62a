//! Fundamental matrices in the tower for the two supported families:
//! diagonal systems and the strictly-upper 2x2 unipotent family.
//!
//! The construction runs through exact antiderivatives over Q:
//! `int a = rho + sum e_j log(x - beta_j)` with rho in Q(x), found by
//! Horowitz-Ostrogradsky reduction plus rational residue extraction. Poles
//! and residues outside Q are reported, never approximated.

use super::scalar::ClosedForm;
use super::TowerError;
use crate::algebra::linalg;
use crate::algebra::{MatRF, Poly, Rat, RatFn};
use crate::gauge::gauge_act;

/// A square matrix over the tower scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfMat {
    n: usize,
    entries: Vec<ClosedForm>,
}

impl CfMat {
    pub fn zero(n: usize) -> Self {
        CfMat {
            n,
            entries: vec![ClosedForm::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CfMat::zero(n);
        for i in 0..n {
            m.set(i, i, ClosedForm::one());
        }
        m
    }

    pub fn from_matrf(a: &MatRF) -> Self {
        CfMat {
            n: a.n(),
            entries: a
                .entries()
                .iter()
                .map(|e| ClosedForm::from_ratfn(e.clone()))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ClosedForm {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ClosedForm) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[ClosedForm] {
        &self.entries
    }

    pub fn mul(&self, rhs: &CfMat) -> CfMat {
        assert_eq!(self.n, rhs.n, "tower matrix dimension mismatch");
        let mut out = CfMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = ClosedForm::zero();
                for k in 0..self.n {
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

    pub fn sub(&self, rhs: &CfMat) -> CfMat {
        assert_eq!(self.n, rhs.n);
        CfMat {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ClosedForm::is_zero)
    }

    pub fn derivative(&self) -> CfMat {
        CfMat {
            n: self.n,
            entries: self.entries.iter().map(ClosedForm::derivative).collect(),
        }
    }

    /// The matrix of plain rational functions, if every entry lies in Q(x).
    pub fn as_matrf(&self) -> Option<MatRF> {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for e in &self.entries {
            entries.push(e.as_ratfn()?);
        }
        Some(MatRF::new(self.n, entries))
    }

    /// Gauss-Jordan inverse. Pivots must be invertible single-term scalars;
    /// the matrices produced by the fundamental constructors (and their
    /// products with rational matrices) always have such a pivot structure.
    pub fn inverse(&self) -> Result<CfMat, TowerError> {
        let n = self.n;
        let mut left = self.clone();
        let mut right = CfMat::identity(n);
        for col in 0..n {
            let mut pivot = None;
            for r in col..n {
                if let Some(inv) = left.get(r, col).invert() {
                    pivot = Some((r, inv));
                    break;
                }
            }
            let Some((r, inv)) = pivot else {
                return Err(TowerError::NotInvertibleInTower);
            };
            if r != col {
                for j in 0..n {
                    let a = left.get(r, j).clone();
                    let b = left.get(col, j).clone();
                    left.set(r, j, b);
                    left.set(col, j, a);
                    let a = right.get(r, j).clone();
                    let b = right.get(col, j).clone();
                    right.set(r, j, b);
                    right.set(col, j, a);
                }
            }
            for j in 0..n {
                left.set(col, j, &inv * left.get(col, j));
                right.set(col, j, &inv * right.get(col, j));
            }
            for i in 0..n {
                if i == col || left.get(i, col).is_zero() {
                    continue;
                }
                let factor = left.get(i, col).clone();
                for j in 0..n {
                    let l = left.get(i, j) - &(&factor * left.get(col, j));
                    left.set(i, j, l);
                    let rr = right.get(i, j) - &(&factor * right.get(col, j));
                    right.set(i, j, rr);
                }
            }
        }
        Ok(right)
    }
}

/// `int a` decomposed as `rational + sum coefficient * log(x - point)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antiderivative {
    pub rational: RatFn,
    pub logs: Vec<(Rat, Rat)>,
}

impl Antiderivative {
    /// The integral as a tower scalar.
    pub fn as_closed_form(&self) -> ClosedForm {
        let mut acc = ClosedForm::from_ratfn(self.rational.clone());
        for (beta, e) in &self.logs {
            acc = &acc + &ClosedForm::log(beta.clone()).scale_ratfn(&RatFn::constant(e.clone()));
        }
        acc
    }
}

fn integrate_poly(p: &Poly) -> Poly {
    let mut coeffs = vec![Rat::zero()];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs.push(c / &Rat::from_int(k as i64 + 1));
    }
    Poly::new(coeffs)
}

/// Exact elementary antiderivative of a rational function, when all poles of
/// the logarithmic part are rational points.
pub fn antiderivative(a: &RatFn) -> Result<Antiderivative, TowerError> {
    let (pol, rem) = a.num().div_rem(a.den());
    let mut rational = RatFn::from_poly(integrate_poly(&pol));
    if rem.is_zero() {
        return Ok(Antiderivative {
            rational,
            logs: vec![],
        });
    }
    let q = a.den().monic();
    let d = q.gcd(&q.derivative());
    let f = q.exact_div(&d);
    let deg_d = d.degree().unwrap_or(0);
    let deg_f = f.degree().unwrap_or(0);
    // solve rem = c' f - c (d' f / d) + e d  with deg c < deg d, deg e < deg f
    let dpf_over_d = (&d.derivative() * &f).exact_div(&d);
    let mut columns: Vec<Poly> = Vec::new();
    for k in 0..deg_d {
        let xk = Poly::monomial(Rat::one(), k);
        let dxk = xk.derivative();
        columns.push(&(&dxk * &f) - &(&xk * &dpf_over_d));
    }
    for k in 0..deg_f {
        columns.push(&Poly::monomial(Rat::one(), k) * &d);
    }
    let max_deg = columns
        .iter()
        .filter_map(Poly::degree)
        .chain(rem.degree())
        .max()
        .unwrap_or(0);
    let mat: Vec<Vec<Rat>> = (0..=max_deg)
        .map(|row| columns.iter().map(|col| col.coeff(row)).collect())
        .collect();
    let rhs: Vec<Rat> = (0..=max_deg).map(|row| rem.coeff(row)).collect();
    let sol = linalg::solve_q(&mat, &rhs).expect("Hermite reduction system is solvable");
    let c = Poly::new(sol[..deg_d].to_vec());
    let e = Poly::new(sol[deg_d..].to_vec());
    if !c.is_zero() {
        rational = &rational + &RatFn::new(c, d);
    }
    if e.is_zero() {
        return Ok(Antiderivative {
            rational,
            logs: vec![],
        });
    }
    // reduce e/f first: factors with zero residue drop out entirely
    let g = e.gcd(&f);
    let e = e.exact_div(&g);
    let f = f.exact_div(&g);
    // residues of e/f, f squarefree: all remaining roots must be rational
    let roots = f
        .rational_roots()
        .ok_or_else(|| TowerError::NonRationalResidueOrPole { factor: f.clone() })?;
    let mut remaining = f.clone();
    let mut logs = Vec::new();
    let fp = f.derivative();
    for (beta, _) in roots {
        remaining = remaining.exact_div(&Poly::x_minus(&beta));
        let r = &e.eval(&beta) / &fp.eval(&beta);
        if !r.is_zero() {
            logs.push((beta, r));
        }
    }
    if !remaining.is_constant() {
        return Err(TowerError::NonRationalResidueOrPole { factor: remaining });
    }
    Ok(Antiderivative { rational, logs })
}

/// An invertible tower matrix F with `F' = system * F`, carrying its inverse.
#[derive(Clone, Debug)]
pub struct FundamentalMatrix {
    mat: CfMat,
    inv: CfMat,
    system: MatRF,
}

impl FundamentalMatrix {
    /// Validates `F' = A F` exactly and inverts F in the tower.
    pub fn new(mat: CfMat, system: MatRF) -> Result<Self, TowerError> {
        if mat.n() != system.n() {
            return Err(TowerError::Algebra(
                crate::algebra::AlgebraError::DimensionMismatch(mat.n(), system.n()),
            ));
        }
        let residual = mat.derivative().sub(&CfMat::from_matrf(&system).mul(&mat));
        if !residual.is_zero() {
            return Err(TowerError::NotAFundamentalMatrix);
        }
        let inv = mat.inverse()?;
        Ok(FundamentalMatrix { mat, inv, system })
    }

    pub fn mat(&self) -> &CfMat {
        &self.mat
    }

    pub fn inv(&self) -> &CfMat {
        &self.inv
    }

    pub fn system(&self) -> &MatRF {
        &self.system
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    /// `F * gamma` for a constant invertible gamma: a fundamental matrix of
    /// the same system.
    pub fn recombined(&self, gamma: &MatRF) -> Result<FundamentalMatrix, TowerError> {
        require_constant(gamma)?;
        if !gamma.is_invertible() {
            return Err(TowerError::Algebra(
                crate::algebra::AlgebraError::SingularMatrix,
            ));
        }
        FundamentalMatrix::new(
            self.mat.mul(&CfMat::from_matrf(gamma)),
            self.system.clone(),
        )
    }

    /// `W * F` for rational invertible W: a fundamental matrix of the
    /// gauge-transformed system.
    pub fn transformed(&self, w: &MatRF) -> Result<FundamentalMatrix, TowerError> {
        let new_system = gauge_act(w, &self.system)?;
        FundamentalMatrix::new(CfMat::from_matrf(w).mul(&self.mat), new_system)
    }
}

pub(crate) fn require_constant(m: &MatRF) -> Result<(), TowerError> {
    if m.entries().iter().all(|e| e.as_constant().is_some()) {
        Ok(())
    } else {
        Err(TowerError::ConstantMatrixRequired)
    }
}

/// Fundamental matrix `diag(exp(rho_i) prod (x-beta)^{e_i})` for a diagonal
/// system.
pub fn fundamental_for_diagonal(a: &MatRF) -> Result<FundamentalMatrix, TowerError> {
    if !a.is_diagonal() {
        return Err(TowerError::UnsupportedShape {
            reason: "fundamental_for_diagonal requires a diagonal system".into(),
        });
    }
    let n = a.n();
    let mut mat = CfMat::identity(n);
    for i in 0..n {
        let ant = antiderivative(a.get(i, i))?;
        let mut entry = ClosedForm::exp(ant.rational.clone());
        for (beta, e) in &ant.logs {
            entry = &entry * &ClosedForm::power(beta.clone(), e.clone());
        }
        mat.set(i, i, entry);
    }
    FundamentalMatrix::new(mat, a.clone())
}

/// Fundamental matrix `[[1, int a],[0, 1]]` for `[[0, a],[0, 0]]`.
pub fn fundamental_2x2_triangular(a: &MatRF) -> Result<FundamentalMatrix, TowerError> {
    let shape_ok = a.n() == 2
        && a.get(0, 0).is_zero()
        && a.get(1, 0).is_zero()
        && a.get(1, 1).is_zero();
    if !shape_ok {
        return Err(TowerError::UnsupportedShape {
            reason: "fundamental_2x2_triangular requires the shape [[0, a],[0, 0]]".into(),
        });
    }
    let ant = antiderivative(a.get(0, 1))?;
    let mut mat = CfMat::identity(2);
    mat.set(0, 1, ant.as_closed_form());
    FundamentalMatrix::new(mat, a.clone())
}

/// Recovers the system `D = F' F^{-1}`; succeeds exactly when every entry of
/// the product lies in Q(x).
pub fn system_from_fundamental(f: &FundamentalMatrix) -> Result<MatRF, TowerError> {
    let d = f.mat().derivative().mul(f.inv());
    d.as_matrf().ok_or_else(|| {
        let offending = d
            .entries()
            .iter()
            .find(|e| e.as_ratfn().is_none())
            .map(|e| e.to_string())
            .unwrap_or_default();
        TowerError::NotRational { entry: offending }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFn {
        RatFn::new(
            Poly::new(num.iter().map(|&c| Rat::from_int(c)).collect()),
            Poly::new(den.iter().map(|&c| Rat::from_int(c)).collect()),
        )
    }

    #[test]
    fn antiderivative_of_polynomial() {
        let a = rf(&[1, 2], &[1]); // 1 + 2x -> x + x^2
        let ant = antiderivative(&a).unwrap();
        assert_eq!(ant.rational, rf(&[0, 1, 1], &[1]));
        assert!(ant.logs.is_empty());
    }

    #[test]
    fn antiderivative_with_log_part() {
        // 1/(2x) -> (1/2) log x
        let a = rf(&[1], &[0, 2]);
        let ant = antiderivative(&a).unwrap();
        assert!(ant.rational.is_zero());
        assert_eq!(ant.logs, vec![(Rat::zero(), Rat::frac(1, 2))]);
    }

    #[test]
    fn antiderivative_with_higher_pole() {
        // 1/x^2 -> -1/x, no log
        let a = rf(&[1], &[0, 0, 1]);
        let ant = antiderivative(&a).unwrap();
        assert_eq!(ant.rational, rf(&[-1], &[0, 1]));
        assert!(ant.logs.is_empty());
    }

    #[test]
    fn antiderivative_mixed() {
        // (x^2+1)/x^2 = 1 + 1/x^2 -> x - 1/x
        let a = rf(&[1, 0, 1], &[0, 0, 1]);
        let ant = antiderivative(&a).unwrap();
        assert_eq!(ant.rational, &RatFn::x() + &rf(&[-1], &[0, 1]));
        assert!(ant.logs.is_empty());
    }

    #[test]
    fn antiderivative_rejects_irrational_poles() {
        // 1/(x^2 - 2) has residues at +-sqrt(2)
        let a = rf(&[1], &[-2, 0, 1]);
        assert!(matches!(
            antiderivative(&a),
            Err(TowerError::NonRationalResidueOrPole { .. })
        ));
    }

    #[test]
    fn antiderivative_randomized_roundtrip() {
        let mut g = crate::testkit::Gen::new(13);
        for _ in 0..25 {
            let (a, rho, logs) = g.integrable_ratfn();
            let ant = antiderivative(&a).unwrap();
            // derivative of the result reproduces the input
            let mut back = ant.rational.derivative();
            for (beta, e) in &ant.logs {
                back = &back + &RatFn::new(Poly::constant(e.clone()), Poly::x_minus(beta));
            }
            assert_eq!(back, a, "rho = {rho}, logs = {logs:?}");
        }
    }

    #[test]
    fn diagonal_fundamental_examples() {
        // A = 0 -> F = I
        let f = fundamental_for_diagonal(&MatRF::zero(2)).unwrap();
        assert_eq!(f.mat(), &CfMat::identity(2));
        // A = diag(1/(2x)) -> F = x^{1/2}
        let f = fundamental_for_diagonal(&MatRF::scalar(rf(&[1], &[0, 2]))).unwrap();
        assert_eq!(
            f.mat().get(0, 0),
            &ClosedForm::power(Rat::zero(), Rat::frac(1, 2))
        );
        // A = diag(1) -> F = exp(x)
        let f = fundamental_for_diagonal(&MatRF::identity(1)).unwrap();
        assert_eq!(f.mat().get(0, 0), &ClosedForm::exp(RatFn::x()));
    }

    #[test]
    fn unipotent_fundamental_examples() {
        let zero2 = MatRF::zero(2);
        let f = fundamental_2x2_triangular(&zero2).unwrap();
        assert_eq!(f.mat(), &CfMat::identity(2));

        let mut a = MatRF::zero(2);
        a.set(0, 1, rf(&[1], &[0, 1]));
        let f = fundamental_2x2_triangular(&a).unwrap();
        assert_eq!(f.mat().get(0, 1), &ClosedForm::log(Rat::zero()));

        let mut a = MatRF::zero(2);
        a.set(0, 1, RatFn::one());
        let f = fundamental_2x2_triangular(&a).unwrap();
        assert_eq!(f.mat().get(0, 1), &ClosedForm::from_ratfn(RatFn::x()));
    }

    #[test]
    fn system_recovery() {
        // F = [[1, log x],[0,1]] -> [[0, 1/x],[0,0]]
        let mut a = MatRF::zero(2);
        a.set(0, 1, rf(&[1], &[0, 1]));
        let f = fundamental_2x2_triangular(&a).unwrap();
        assert_eq!(system_from_fundamental(&f).unwrap(), a);

        // F = exp(x^2) -> D = 2x
        let d = MatRF::scalar(rf(&[0, 2], &[1]));
        let f = fundamental_for_diagonal(&d).unwrap();
        assert_eq!(f.mat().get(0, 0), &ClosedForm::exp(rf(&[0, 0, 1], &[1])));
        assert_eq!(system_from_fundamental(&f).unwrap(), d);
    }

    #[test]
    fn identity_recovery() {
        let f = FundamentalMatrix::new(CfMat::identity(2), MatRF::zero(2)).unwrap();
        assert_eq!(system_from_fundamental(&f).unwrap(), MatRF::zero(2));
    }

    #[test]
    fn tower_inverse_of_mixed_rows() {
        // W * F for rational W exercises multi-term pivots
        let mut a = MatRF::zero(2);
        a.set(0, 1, rf(&[1], &[0, 1]));
        let f = fundamental_2x2_triangular(&a).unwrap();
        let w = MatRF::from_rows(vec![
            vec![RatFn::one(), RatFn::one()],
            vec![RatFn::zero(), RatFn::one()],
        ])
        .unwrap();
        let wf = f.transformed(&w).unwrap();
        let prod = wf.mat().mul(wf.inv());
        assert_eq!(prod, CfMat::identity(2));
    }

    #[test]
    fn fundamental_validation_rejects_wrong_system() {
        let mat = CfMat::identity(1);
        let sys = MatRF::scalar(RatFn::one());
        assert!(matches!(
            FundamentalMatrix::new(mat, sys),
            Err(TowerError::NotAFundamentalMatrix)
        ));
    }
}
