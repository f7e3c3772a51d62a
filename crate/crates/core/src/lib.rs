//! Gauge classes of linear differential systems over Q(x).
//!
//! The crate computes exactly in K = Q(x): the gauge action
//! `(U, A) -> U'U^{-1} + U A U^{-1}` and the group H_n(K) behind it, rational
//! solutions of the intertwiner equation `M' = A2 M - M A1` with certified
//! degree bounds, decision procedures for gauge equivalence and triviality,
//! closed-form fundamental matrices for solvable families with their Galois
//! representations, and the category whose objects are gauge classes and
//! whose arrows are intertwiners.

// dense matrix kernels index rows and columns simultaneously
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod category;
pub mod cli;
pub mod closedform;
pub mod gauge;
pub mod ratsol;
pub mod testkit;
