//! Deterministic random generators for the randomized test suites.
//!
//! Everything is driven by a seeded ChaCha stream so failures reproduce
//! bit-for-bit across machines and thread counts.

use crate::algebra::{MatRF, Poly, Rat, RatFn};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Small rational with numerator in [-3, 3] and denominator in {1, 2}.
    pub fn rat(&mut self) -> Rat {
        Rat::frac(self.int(-3, 3), self.int(1, 2))
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn poly(&mut self, max_deg: usize) -> Poly {
        let deg = self.int(0, max_deg as i64) as usize;
        Poly::new((0..=deg).map(|_| self.rat()).collect())
    }

    pub fn nonzero_poly(&mut self, max_deg: usize) -> Poly {
        loop {
            let p = self.poly(max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Rational function with numerator and denominator degrees `<= max_deg`.
    pub fn ratfn(&mut self, max_deg: usize) -> RatFn {
        RatFn::new(self.poly(max_deg), self.nonzero_poly(max_deg))
    }

    pub fn nonzero_ratfn(&mut self, max_deg: usize) -> RatFn {
        loop {
            let f = self.ratfn(max_deg);
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn matrf(&mut self, n: usize, max_deg: usize) -> MatRF {
        MatRF::new(n, (0..n * n).map(|_| self.ratfn(max_deg)).collect())
    }

    /// Rejection-samples a matrix with nonzero determinant.
    pub fn invertible(&mut self, n: usize, max_deg: usize) -> MatRF {
        loop {
            let m = self.matrf(n, max_deg);
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// Invertible matrix with constant rational entries.
    pub fn invertible_const(&mut self, n: usize) -> MatRF {
        loop {
            let m = MatRF::new(
                n,
                (0..n * n).map(|_| RatFn::constant(self.rat())).collect(),
            );
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// A nonzero rational function whose divisor is supported on rational
    /// points: `c * prod (x - b_i)^{e_i}`. Its logarithmic derivative has an
    /// elementary antiderivative over Q.
    pub fn rational_split_unit(&mut self) -> RatFn {
        let mut u = RatFn::constant(self.nonzero_rat());
        for _ in 0..self.int(1, 2) {
            let b = Rat::from_int(self.int(-2, 2));
            let e = self.int(-2, 2);
            let lin = RatFn::from_poly(Poly::x_minus(&b));
            u = &u * &lin.pow(e).expect("x - b is nonzero");
        }
        u
    }

    /// A rational function with an elementary antiderivative over Q:
    /// `rho' + sum e_j/(x - beta_j)` for random rho, e_j, beta_j. The parts
    /// are returned so tests can reconstruct the expected integral.
    pub fn integrable_ratfn(&mut self) -> (RatFn, RatFn, Vec<(Rat, Rat)>) {
        let rho = self.ratfn(2);
        let k = self.int(0, 2);
        let mut logs: Vec<(Rat, Rat)> = Vec::new();
        for _ in 0..k {
            let beta = Rat::from_int(self.int(-2, 2));
            if logs.iter().any(|(b, _)| *b == beta) {
                continue;
            }
            logs.push((beta, self.nonzero_rat()));
        }
        logs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut a = rho.derivative();
        for (beta, e) in &logs {
            let term = RatFn::new(
                Poly::constant(e.clone()),
                Poly::x_minus(beta),
            );
            a = &a + &term;
        }
        (a, rho, logs)
    }
}
