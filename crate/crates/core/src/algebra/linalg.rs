//! Exact linear algebra kernels.
//!
//! Determinants and inverses over Q(x) go through fraction-free Bareiss
//! elimination on a denominator-cleared polynomial matrix, so intermediate
//! entries stay polynomial and every division is exact. Rank uses ordinary
//! field elimination. A small toolkit of dense Q-matrix routines (RREF,
//! nullspace, solving, characteristic polynomial) backs the rational-solution
//! machinery.

use super::matrix::MatRF;
use super::poly::Poly;
use super::rat::Rat;
use super::ratfn::RatFn;
use super::AlgebraError;

/// Row-lcm clearing: returns `(P, l)` with `P[i][j] = l[i] * m[i][j]` and
/// every `P[i][j]` an integer polynomial, so the elimination below runs in Z.
fn clear_rows(m: &MatRF) -> (Vec<Vec<Poly>>, Vec<Poly>) {
    let n = m.n();
    let mut rows = Vec::with_capacity(n);
    let mut muls = Vec::with_capacity(n);
    for i in 0..n {
        let mut l = Poly::one();
        for j in 0..n {
            let d = m.get(i, j).den();
            let g = l.gcd(d);
            l = &l * &d.exact_div(&g);
        }
        let mut row: Vec<Poly> = (0..n)
            .map(|j| {
                let e = m.get(i, j);
                &e.num().clone() * &l.exact_div(e.den())
            })
            .collect();
        // clear the rational coefficient content of the whole row
        let mut den = num_bigint::BigInt::from(1);
        for p in &row {
            for c in p.coeffs() {
                den = num_integer::Integer::lcm(&den, c.denom());
            }
        }
        let scale = Rat::from_bigint(den);
        if !scale.is_one() {
            for p in &mut row {
                *p = p.scale(&scale);
            }
            l = l.scale(&scale);
        }
        rows.push(row);
        muls.push(l);
    }
    (rows, muls)
}

/// Fraction-free forward elimination in place. Returns the determinant sign
/// flip count and `None` when the matrix (left `n` columns) is singular.
fn bareiss_forward(t: &mut [Vec<Poly>], n: usize) -> Option<usize> {
    let cols = t[0].len();
    let mut prev = Poly::one();
    let mut swaps = 0;
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !t[r][k].is_zero())?;
        if pivot_row != k {
            t.swap(pivot_row, k);
            swaps += 1;
        }
        for i in k + 1..n {
            for j in k + 1..cols {
                let num = &(&t[k][k] * &t[i][j]) - &(&t[i][k] * &t[k][j]);
                t[i][j] = num.exact_div(&prev);
            }
            t[i][k] = Poly::zero();
        }
        prev = t[k][k].clone();
    }
    Some(swaps)
}

/// Determinant over Q(x).
pub fn det(m: &MatRF) -> RatFn {
    let n = m.n();
    let (mut t, muls) = clear_rows(m);
    let swaps = match bareiss_forward(&mut t, n) {
        Some(s) => s,
        None => return RatFn::zero(),
    };
    // final pivot is the determinant of the cleared, permuted matrix
    let mut den = Poly::one();
    for l in &muls {
        den = &den * l;
    }
    let mut d = RatFn::new(t[n - 1][n - 1].clone(), den);
    if swaps % 2 == 1 {
        d = -&d;
    }
    d
}

/// Exact inverse over Q(x) by Bareiss forward elimination on `[P | I]`
/// followed by field back-substitution.
pub fn inverse(m: &MatRF) -> Result<MatRF, AlgebraError> {
    let n = m.n();
    let (rows, muls) = clear_rows(m);
    let mut t: Vec<Vec<Poly>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            let mut aug = vec![Poly::zero(); n];
            aug[i] = Poly::one();
            row.append(&mut aug);
            row
        })
        .collect();
    if bareiss_forward(&mut t, n).is_none() {
        return Err(AlgebraError::SingularMatrix);
    }
    // back-substitute T * X = S over Q(x)
    let mut x = vec![vec![RatFn::zero(); n]; n];
    for i in (0..n).rev() {
        let piv = RatFn::from_poly(t[i][i].clone());
        for j in 0..n {
            let mut acc = RatFn::from_poly(t[i][n + j].clone());
            for k in i + 1..n {
                if t[i][k].is_zero() {
                    continue;
                }
                acc = &acc - &(&RatFn::from_poly(t[i][k].clone()) * &x[k][j]);
            }
            x[i][j] = &acc / &piv;
        }
    }
    // undo the row clearing: inv(M) = inv(P) * diag(muls)
    let mut out = MatRF::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, &x[i][j] * &RatFn::from_poly(muls[j].clone()));
        }
    }
    Ok(out)
}

/// Rank over the field Q(x).
pub fn rank(m: &MatRF) -> usize {
    let n = m.n();
    let mut rows: Vec<Vec<RatFn>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let piv = rows[rank][col].clone();
        for r in rank + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &piv;
            for c in col..n {
                let t = &f * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &t;
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

// ---- dense Q-matrix helpers ----

pub type QMat = Vec<Vec<Rat>>;

/// Reduced row echelon form in place; returns pivot column indices.
pub fn rref_q(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Canonical (RREF-derived) basis of the nullspace of `m`, one vector per
/// free column, in increasing column order.
pub fn nullspace_q(m: &QMat, cols: usize) -> Vec<Vec<Rat>> {
    let mut work = m.clone();
    let pivots = rref_q(&mut work);
    let pivot_set: std::collections::BTreeMap<usize, usize> = pivots
        .iter()
        .enumerate()
        .map(|(row, &col)| (col, row))
        .collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains_key(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (&pc, &pr) in &pivot_set {
            v[pc] = -&work[pr][free];
        }
        basis.push(v);
    }
    basis
}

/// Exact solve `A v = b`; free variables are set to zero. `None` when
/// inconsistent.
pub fn solve_q(a: &QMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = a[0].len();
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref_q(&mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the constants column
    }
    let mut v = vec![Rat::zero(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        v[col] = aug[row][cols].clone();
    }
    Some(v)
}

/// Rank of a Q-matrix.
pub fn rank_q(m: &QMat) -> usize {
    let mut work = m.clone();
    rref_q(&mut work).len()
}

/// Monic characteristic polynomial of a square Q-matrix via the
/// Faddeev-LeVerrier recurrence; coefficients lowest degree first.
pub fn charpoly_q(a: &QMat) -> Poly {
    let n = a.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut aux: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for k in 1..=n {
        // aux <- A * aux
        let prod: QMat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Rat::zero();
                        for l in 0..n {
                            acc = &acc + &(&a[i][l] * &aux[l][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut tr = Rat::zero();
        for (i, row) in prod.iter().enumerate() {
            tr = &tr + &row[i];
        }
        let c = -&(&tr / &Rat::from_int(k as i64));
        coeffs[n - k] = c.clone();
        aux = prod;
        for (i, row) in aux.iter_mut().enumerate() {
            row[i] = &row[i] + &c;
        }
    }
    Poly::new(coeffs)
}
