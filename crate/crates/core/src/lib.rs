//! Jacobi elliptic solution of the quintic family
//! `e + h·d·Y + c·Y² + h·b·Y³ + a·Y⁴ + h·Y⁵ = 0`.
//!
//! The family is parametrized by `x = dn(u)` and `h = sn(3u)`; its elliptic
//! root is the modulus `Y = k`. Alongside the solver the crate evaluates the
//! trisection value `dn(K/3)`, computes singular moduli, recognizes algebraic
//! numbers by lattice reduction, and audits the closed forms it relies on.

// `!(a < b)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod audit;
pub mod claims;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod modular;
pub mod multiangle;
pub mod poly;
pub mod quintic;
pub mod recognize;
pub mod trisection;

pub use error::{Error, Result};
