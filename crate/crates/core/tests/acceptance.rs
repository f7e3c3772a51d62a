// oracle code favors explicit row/column index loops
#![allow(clippy::needless_range_loop, clippy::ptr_arg)]

//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything is exact; a single mismatch anywhere fails the criterion.

use pvgauge::algebra::{MatRF, Poly, Rat, RatFn};
use pvgauge::category::{
    arrow_compose, arrow_inverse, arrow_new, arrow_transport, from_constant_morphism,
    to_constant_morphism, Arrow, Obj,
};
use pvgauge::closedform::{
    fundamental_2x2_triangular, fundamental_for_diagonal, rep_conjugation_check, rep_matrix,
    system_from_fundamental, FundamentalMatrix, GaloisGen, ParamMat, ParamPoly, ParamSym,
};
use pvgauge::gauge::{conjugation_action_check, delta_elem, gauge_act, h_inv, h_mul, HPair};
use pvgauge::ratsol::{
    equivalent, is_trivial, rational_solutions, DecisionResult, DegreeBounds, SylvesterSystem,
    DEFAULT_SEED,
};
use pvgauge::testkit::Gen;
use std::collections::BTreeMap;

fn inv_x() -> RatFn {
    RatFn::new(Poly::one(), Poly::x())
}

/// Runs independent cases on all available cores. Each case derives its own
/// deterministic seed, so results do not depend on scheduling.
fn par_cases(total: usize, case: impl Fn(usize) + Sync) {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8);
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= total {
                    break;
                }
                case(i);
            });
        }
    });
}

fn unipotent_over_x() -> MatRF {
    let mut a = MatRF::zero(2);
    a.set(0, 1, inv_x());
    a
}

// ---------------------------------------------------------------- criterion 1

#[test]
fn criterion_1_group_law_suite() {
    for n in 1..=3usize {
        par_cases(100, |case| {
            let mut g = Gen::new(0xC1_0000 + ((n as u64) << 8) + case as u64);
            let g = &mut g;
            // H_n(K) axioms on random triples
            let p = HPair::new(g.matrf(n, 2), g.invertible(n, 2)).unwrap();
            let q = HPair::new(g.matrf(n, 2), g.invertible(n, 2)).unwrap();
            let r = HPair::new(g.matrf(n, 2), g.invertible(n, 2)).unwrap();
            let assoc_l = h_mul(&h_mul(&p, &q).unwrap(), &r).unwrap();
            let assoc_r = h_mul(&p, &h_mul(&q, &r).unwrap()).unwrap();
            assert_eq!(assoc_l, assoc_r, "associativity at n = {n}");
            let e = HPair::identity(n);
            assert_eq!(h_mul(&e, &p).unwrap(), p, "left identity");
            assert_eq!(h_mul(&p, &e).unwrap(), p, "right identity");
            assert_eq!(h_mul(&p, &h_inv(&p)).unwrap(), e, "right inverse");
            assert_eq!(h_mul(&h_inv(&p), &p).unwrap(), e, "left inverse");

            // Delta_n closure and inversion
            let u = g.invertible(n, 2);
            let v = g.invertible(n, 2);
            assert_eq!(
                h_mul(&delta_elem(&u).unwrap(), &delta_elem(&v).unwrap()).unwrap(),
                delta_elem(&(&u * &v)).unwrap(),
                "Delta closure"
            );
            assert_eq!(
                h_inv(&delta_elem(&u).unwrap()),
                delta_elem(&u.inverse().unwrap()).unwrap(),
                "Delta inversion"
            );

            // normality of M_n(K) x {1}
            let normal = HPair::new(g.matrf(n, 2), MatRF::identity(n)).unwrap();
            let conj = h_mul(&h_mul(&p, &normal).unwrap(), &h_inv(&p)).unwrap();
            assert!(conj.f().is_identity(), "normal subgroup");

            // gauge action laws
            let a = g.matrf(n, 2);
            assert_eq!(gauge_act(&MatRF::identity(n), &a).unwrap(), a);
            let lhs = gauge_act(&(&u * &v), &a).unwrap();
            let rhs = gauge_act(&u, &gauge_act(&v, &a).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "left action at n = {n}");

            // the action is conjugation of the normal subgroup
            assert_eq!(
                conjugation_action_check(&u, &a).unwrap(),
                gauge_act(&u, &a).unwrap()
            );
        });
    }
    println!("criterion 1 (group-law suite, 100 cases per law, n in 1..3): PASS");
}

// ---------------------------------------------------------------- criterion 2

/// Test-local elimination: reduced row echelon form over Q.
fn oracle_rref(mat: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return vec![];
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pivot);
        let inv = mat[r][c].recip();
        for j in 0..cols {
            mat[r][j] = &mat[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let t = &f * &mat[r][j];
                    mat[i][j] = &mat[i][j] - &t;
                }
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

fn oracle_nullspace(mut mat: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let pivots = oracle_rref(&mut mat);
    let pivot_of_col: BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col.contains_key(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (&pc, &pr) in &pivot_of_col {
            v[pc] = -&mat[pr][free];
        }
        basis.push(v);
    }
    basis
}

/// Is `v` in the span of `basis`? Exact solve by augmenting and eliminating.
fn oracle_in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if basis.is_empty() {
        return v.iter().all(Rat::is_zero);
    }
    let dim = v.len();
    // columns are basis vectors, rhs is v
    let mut mat: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = oracle_rref(&mut mat);
    !pivots.contains(&basis.len())
}

/// Brute-force ansatz oracle: numerator degree <= 8, denominator
/// (x(x-1))^4, conditions imposed by evaluation at 30 rational points.
fn oracle_solutions(a1: &MatRF, a2: &MatRF) -> Vec<Vec<Rat>> {
    let n = a1.n();
    let d = &Poly::x().pow(4) * &Poly::x_minus(&Rat::one()).pow(4);
    let d_prime = d.derivative();
    let deg_p = 8usize;
    let unknowns = n * n * (deg_p + 1);
    let samples: Vec<Rat> = (2..26).map(Rat::from_int).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for x0 in &samples {
        let a1v = a1.eval(x0).unwrap();
        let a2v = a2.eval(x0).unwrap();
        let dv = d.eval(x0);
        let dpv = d_prime.eval(x0);
        // value and derivative of x^k / D at x0
        let mut val = vec![Rat::zero(); deg_p + 1];
        let mut der = vec![Rat::zero(); deg_p + 1];
        let mut xk = Rat::one();
        for k in 0..=deg_p {
            val[k] = &xk / &dv;
            let num = if k == 0 {
                -&(&xk * &dpv)
            } else {
                let xkm1 = {
                    let mut t = Rat::one();
                    for _ in 0..k - 1 {
                        t = &t * x0;
                    }
                    t
                };
                &(&Rat::from_int(k as i64) * &(&xkm1 * &dv)) - &(&xk * &dpv)
            };
            der[k] = &num / &(&dv * &dv);
            xk = &xk * x0;
        }
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Rat::zero(); unknowns];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..=deg_p {
                            let col = (i * n + j) * (deg_p + 1) + k;
                            let mut coeff = Rat::zero();
                            if i == r && j == c {
                                coeff = &coeff + &der[k];
                            }
                            if j == c {
                                coeff = &coeff - &(&a2v[r][i] * &val[k]);
                            }
                            if i == r {
                                coeff = &coeff + &(&val[k] * &a1v[j][c]);
                            }
                            row[col] = coeff;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    oracle_nullspace(rows, unknowns)
}

/// Coefficient vector (same coordinates as the oracle) of a solver solution.
fn solution_coordinates(m: &MatRF, deg_p: usize) -> Vec<Rat> {
    let n = m.n();
    let d = &Poly::x().pow(4) * &Poly::x_minus(&Rat::one()).pow(4);
    let mut v = Vec::with_capacity(n * n * (deg_p + 1));
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j);
            let p = &e.num().clone() * &d.exact_div(e.den());
            for k in 0..=deg_p {
                v.push(p.coeff(k));
            }
        }
    }
    v
}

#[test]
fn criterion_2_solver_matches_bruteforce_oracle() {
    let bounds = DegreeBounds::user(
        BTreeMap::from([(Poly::x(), 4), (Poly::x_minus(&Rat::one()), 4)]),
        8,
    );
    fn part(g: &mut Gen) -> RatFn {
        let c = Rat::from_int(g.int(-2, 2));
        let d = Rat::from_int(g.int(-2, 2));
        let t1 = RatFn::new(Poly::constant(c), Poly::x());
        let t2 = RatFn::new(Poly::constant(d), Poly::x_minus(&Rat::one()));
        &t1 + &t2
    }
    par_cases(50, |case| {
        let mut g = Gen::new(0xC2_0000 + case as u64);
        let g = &mut g;
        let n = 1 + (case % 2);
        let a1 = MatRF::new(n, (0..n * n).map(|_| part(g)).collect());
        let a2 = MatRF::new(n, (0..n * n).map(|_| part(g)).collect());
        let sys = SylvesterSystem::new(a1.clone(), a2.clone()).unwrap();
        let sol = rational_solutions(&sys, Some(&bounds)).unwrap();
        let oracle = oracle_solutions(&a1, &a2);
        assert_eq!(
            sol.dim(),
            oracle.len(),
            "dimension mismatch on case {case}: a1 = {a1}, a2 = {a2}"
        );
        for m in sol.basis() {
            assert!(
                oracle_in_span(&oracle, &solution_coordinates(m, 8)),
                "solver element escapes oracle span on case {case}"
            );
        }
        let solver_coords: Vec<Vec<Rat>> = sol
            .basis()
            .iter()
            .map(|m| solution_coordinates(m, 8))
            .collect();
        for v in &oracle {
            assert!(
                oracle_in_span(&solver_coords, v),
                "oracle element escapes solver span on case {case}"
            );
        }
    });
    println!("criterion 2 (solver vs brute-force oracle, 50 systems): PASS");
}

// ---------------------------------------------------------------- criterion 3

#[test]
fn criterion_3_decision_fixtures() {
    // is_trivial([[1/x]]) = [[x]]
    let d = is_trivial(&MatRF::scalar(inv_x()), None, DEFAULT_SEED).unwrap();
    assert_eq!(d.witness(), Some(&MatRF::scalar(RatFn::x())));

    // is_trivial([[0, 1/x],[0, 0]]) = none-found
    let d = is_trivial(&unipotent_over_x(), None, DEFAULT_SEED).unwrap();
    match &d.result {
        DecisionResult::NoneFound(cert) => {
            assert_eq!(cert.solution_dim, 2);
            assert!(cert.generic_determinant_zero);
        }
        DecisionResult::Witness(w) => panic!("unexpected witness {w}"),
    }

    // equivalent([[0]], [[1/(2x)]]) = none-found over Q(x)
    let half = MatRF::scalar(RatFn::new(Poly::constant(Rat::frac(1, 2)), Poly::x()));
    let d = equivalent(&MatRF::zero(1), &half, None, DEFAULT_SEED).unwrap();
    match &d.result {
        DecisionResult::NoneFound(cert) => assert_eq!(cert.solution_dim, 0),
        DecisionResult::Witness(w) => panic!("unexpected witness {w}"),
    }

    // equivalent([[0]], [[1/x]]) = [[x]]
    let d = equivalent(&MatRF::zero(1), &MatRF::scalar(inv_x()), None, DEFAULT_SEED).unwrap();
    assert_eq!(d.witness(), Some(&MatRF::scalar(RatFn::x())));

    println!("criterion 3 (decision fixtures): PASS");
}

// ---------------------------------------------------------------- criterion 4

fn mu2() -> GaloisGen {
    GaloisGen::new("mu2")
        .with_power(Rat::zero(), Rat::frac(1, 2), ParamPoly::from_int(-1))
        .unwrap()
}

fn logshift() -> GaloisGen {
    GaloisGen::new("sigma").with_log(Rat::zero(), ParamPoly::var(ParamSym::formal("c1")))
}

fn sqrt_fixture() -> FundamentalMatrix {
    let sys = MatRF::scalar(RatFn::new(Poly::constant(Rat::frac(1, 2)), Poly::x()));
    fundamental_for_diagonal(&sys).unwrap()
}

fn log_fixture() -> FundamentalMatrix {
    fundamental_2x2_triangular(&unipotent_over_x()).unwrap()
}

#[test]
fn criterion_4_representation_fixtures() {
    // rep_matrix((x^{1/2}), mu2) = (-1)
    let f_sqrt = sqrt_fixture();
    assert_eq!(
        rep_matrix(&f_sqrt, &mu2()).unwrap(),
        ParamMat::new(1, vec![ParamPoly::from_int(-1)])
    );

    // rep_matrix([[1, log x],[0, 1]], log shift) = [[1, c1],[0, 1]]
    let f_log = log_fixture();
    let c1 = ParamPoly::var(ParamSym::formal("c1"));
    assert_eq!(
        rep_matrix(&f_log, &logshift()).unwrap(),
        ParamMat::new(
            2,
            vec![
                ParamPoly::one(),
                c1,
                ParamPoly::zero(),
                ParamPoly::one()
            ]
        )
    );

    // gauge invariance: rep(W F, g) = rep(F, g) for 20 random rational W
    let mut g = Gen::new(0xC4);
    for _ in 0..20 {
        let w1 = g.invertible(1, 1);
        let wf = f_sqrt.transformed(&w1).unwrap();
        assert_eq!(
            rep_matrix(&wf, &mu2()).unwrap(),
            rep_matrix(&f_sqrt, &mu2()).unwrap()
        );
        let w2 = g.invertible(2, 1);
        let wf = f_log.transformed(&w2).unwrap();
        assert_eq!(
            rep_matrix(&wf, &logshift()).unwrap(),
            rep_matrix(&f_log, &logshift()).unwrap()
        );
    }

    // conjugation identity gamma^{-1} c gamma on the same fixtures
    for _ in 0..20 {
        let gamma1 = g.invertible_const(1);
        let (lhs, rhs) = rep_conjugation_check(&f_sqrt, &gamma1, &mu2()).unwrap();
        assert_eq!(lhs, rhs);
        let gamma2 = g.invertible_const(2);
        let (lhs, rhs) = rep_conjugation_check(&f_log, &gamma2, &logshift()).unwrap();
        assert_eq!(lhs, rhs);
    }

    println!("criterion 4 (representation fixtures + invariance): PASS");
}

// ---------------------------------------------------------------- criterion 5

/// A random chain of three scalar systems with solvable towers, the
/// connecting arrows, and their fundamental matrices.
struct ScalarTriple {
    objs: [Obj; 3],
    arrows: [Arrow; 2],
    fundamentals: [FundamentalMatrix; 3],
}

fn scalar_triple(g: &mut Gen) -> ScalarTriple {
    let (a1, _, _) = g.integrable_ratfn();
    let u1 = g.rational_split_unit();
    let u2 = g.rational_split_unit();
    let a2 = &a1 + &(&u1.derivative() / &u1);
    let a3 = &a2 + &(&u2.derivative() / &u2);
    let m1 = MatRF::scalar(&u1 * &RatFn::constant(g.nonzero_rat()));
    let m2 = MatRF::scalar(&u2 * &RatFn::constant(g.nonzero_rat()));
    let o1 = Obj::new(MatRF::scalar(a1));
    let o2 = Obj::new(MatRF::scalar(a2));
    let o3 = Obj::new(MatRF::scalar(a3));
    let f1 = fundamental_for_diagonal(o1.rep()).unwrap();
    let f2 = fundamental_for_diagonal(o2.rep()).unwrap();
    let f3 = fundamental_for_diagonal(o3.rep()).unwrap();
    let arr1 = arrow_new(o1.clone(), o2.clone(), m1).unwrap();
    let arr2 = arrow_new(o2.clone(), o3.clone(), m2).unwrap();
    ScalarTriple {
        objs: [o1, o2, o3],
        arrows: [arr1, arr2],
        fundamentals: [f1, f2, f3],
    }
}

#[test]
fn criterion_5_theorem_2_identities() {
    // fixture: the unipotent identity arrow translates to I and back
    let f_log = log_fixture();
    let obj = Obj::new(unipotent_over_x());
    let id = Arrow::identity(&obj);
    let c = to_constant_morphism(&id, &f_log, &f_log, &[logshift()]).unwrap();
    assert_eq!(c, ParamMat::identity(2));
    assert_eq!(from_constant_morphism(&c, &f_log, &f_log).unwrap(), id);

    // fixture: rationality failure for incompatible towers
    let f_one = fundamental_for_diagonal(&MatRF::zero(1)).unwrap();
    let f_half = sqrt_fixture();
    assert!(from_constant_morphism(&ParamMat::identity(1), &f_one, &f_half).is_err());

    par_cases(20, |case| {
        let mut g = Gen::new(0xC5_0000 + case as u64);
        let g = &mut g;
        let t = scalar_triple(g);
        let [o1, _, o3] = &t.objs;
        let [f, h] = &t.arrows;
        let [f1, f2, f3] = &t.fundamentals;

        // inverse formula (M^{-1})' = A1 M^{-1} - M^{-1} A2
        let m_inv = f.m().inverse().unwrap();
        let lhs = m_inv.derivative();
        let rhs = &(o1.rep() * &m_inv) - &(&m_inv * t.objs[1].rep());
        assert_eq!(lhs, rhs, "inverse formula, case {case}");
        assert_eq!(arrow_inverse(f).unwrap().m(), &m_inv);

        // composition formula (NM)' = A3 NM - NM A1
        let nm = arrow_compose(h, f).unwrap();
        let lhs = nm.m().derivative();
        let rhs = &(o3.rep() * nm.m()) - &(nm.m() * o1.rep());
        assert_eq!(lhs, rhs, "composition formula, case {case}");

        // covariance with the corrected right-hand subscript:
        // (U2^{-1} M U1)' = B2 (U2^{-1} M U1) - (U2^{-1} M U1) B1
        let u1 = MatRF::scalar(g.rational_split_unit());
        let u2 = MatRF::scalar(g.rational_split_unit());
        let transported = arrow_transport(f, &u1, &u2).unwrap();
        let b1 = gauge_act(&u1.inverse().unwrap(), o1.rep()).unwrap();
        let b2 = gauge_act(&u2.inverse().unwrap(), t.objs[1].rep()).unwrap();
        let lhs = transported.m().derivative();
        let rhs = &(&b2 * transported.m()) - &(transported.m() * &b1);
        assert_eq!(lhs, rhs, "covariance, case {case}");
        assert_eq!(transported.src().rep(), &b1);
        assert_eq!(transported.dst().rep(), &b2);

        // constancy of F2^{-1} M F1 and the round trips
        let c = to_constant_morphism(f, f1, f2, &[]).unwrap();
        let back = from_constant_morphism(&c, f1, f2).unwrap();
        assert_eq!(back.m(), f.m(), "round trip arrow, case {case}");
        let c2 = to_constant_morphism(&back, f1, f2, &[]).unwrap();
        assert_eq!(c, c2, "round trip constant, case {case}");

        // functoriality through the composite
        let c_h = to_constant_morphism(h, f2, f3, &[]).unwrap();
        let c_nm = to_constant_morphism(&nm, f1, f3, &[]).unwrap();
        assert_eq!(c_nm, c_h.mul(&c), "functoriality, case {case}");
    });
    println!("criterion 5 (Theorem-2 identity suite, 20 random triples): PASS");
}

// ---------------------------------------------------------------- criterion 6

#[test]
fn criterion_6_category_axioms() {
    par_cases(50, |case| {
        let mut g = Gen::new(0xC6_0000 + case as u64);
        let g = &mut g;
        let t = scalar_triple(g);
        let [f, h] = &t.arrows;
        let [o1, o2, _] = &t.objs;
        // build a third arrow to get a genuine triple
        let u3 = g.rational_split_unit();
        let a4 = &t.objs[2].rep().get(0, 0).clone() + &(&u3.derivative() / &u3);
        let o4 = Obj::new(MatRF::scalar(a4));
        let k = arrow_new(
            t.objs[2].clone(),
            o4,
            MatRF::scalar(&u3 * &RatFn::constant(g.nonzero_rat())),
        )
        .unwrap();

        let left = arrow_compose(&k, &arrow_compose(h, f).unwrap()).unwrap();
        let right = arrow_compose(&arrow_compose(&k, h).unwrap(), f).unwrap();
        assert_eq!(left, right, "associativity, case {case}");

        assert_eq!(arrow_compose(f, &Arrow::identity(o1)).unwrap(), *f);
        assert_eq!(arrow_compose(&Arrow::identity(o2), f).unwrap(), *f);

        // hom-set Q-linearity: combinations of intertwiners intertwine
        let scaled = f.m().scale(&RatFn::constant(g.rat()));
        let sum = f.m() + &scaled;
        assert!(arrow_new(o1.clone(), o2.clone(), sum).is_ok());
    });
    println!("criterion 6 (category axioms, 50 composable triples): PASS");
}

// ---------------------------------------------------------------- criterion 7

#[test]
fn criterion_7_system_fundamental_roundtrip() {
    par_cases(20, |case| {
        let mut g = Gen::new(0xC7_0000 + case as u64);
        let n = 1 + (case % 3);
        let diag: Vec<RatFn> = (0..n).map(|_| g.integrable_ratfn().0).collect();
        let a = MatRF::diagonal(diag);
        let f = fundamental_for_diagonal(&a).unwrap();
        assert_eq!(system_from_fundamental(&f).unwrap(), a, "diagonal case {case}");
    });
    par_cases(20, |case| {
        let mut g = Gen::new(0xC7_1000 + case as u64);
        let mut a = MatRF::zero(2);
        a.set(0, 1, g.integrable_ratfn().0);
        let f = fundamental_2x2_triangular(&a).unwrap();
        assert_eq!(system_from_fundamental(&f).unwrap(), a, "unipotent case {case}");
    });
    println!("criterion 7 (system <-> fundamental round trip, 40 cases): PASS");
}

// ---------------------------------------------------------------- criterion 8

#[test]
fn criterion_8_cli_determinism() {
    use std::process::Command as Proc;
    let bin = env!("CARGO_BIN_EXE_pvgauge");
    let dir = tempfile::tempdir().unwrap();
    let fixtures: [(&str, &str, &str); 4] = [
        ("trivial", "f1.pv", "matrix A = [[1/x]]\n"),
        ("trivial", "f2.pv", "matrix A = [[0, 1/x],[0, 0]]\n"),
        ("equivalent", "f3.pv", "matrix A = [[0]]\nmatrix B = [[1/(2x)]]\n"),
        ("equivalent", "f4.pv", "matrix A = [[0]]\nmatrix B = [[1/x]]\n"),
    ];
    for (cmd, name, text) in fixtures {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let mut outputs: Vec<(Vec<u8>, Option<i32>)> = Vec::new();
        for threads in ["1", "1", "1", "4"] {
            let out = Proc::new(bin)
                .args([
                    cmd,
                    "--input",
                    path.to_str().unwrap(),
                    "--json",
                    "--threads",
                    threads,
                ])
                .output()
                .unwrap();
            outputs.push((out.stdout, out.status.code()));
        }
        for other in &outputs[1..] {
            assert_eq!(outputs[0].0, other.0, "stdout differs for {name}");
            assert_eq!(outputs[0].1, other.1, "exit code differs for {name}");
        }
        // witness commands exit 0, certified negatives exit 1
        let expect = if name == "f1.pv" || name == "f4.pv" { 0 } else { 1 };
        assert_eq!(outputs[0].1, Some(expect), "exit code for {name}");
    }
    println!("criterion 8 (CLI determinism, 3 repeats + thread variation): PASS");
}
