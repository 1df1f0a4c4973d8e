//! The Kempner (Smarandache) function and its relatives.
//!
//! `S(n)` is the least `m` with `n | m!`. This crate evaluates it through
//! several independent routes (Legendre search, generalized-scale digits,
//! closed digit-sum formulas) and builds the surrounding family on top:
//!
//! - [`arith`]: factored integers, Legendre exponents, classical multiplicative functions.
//! - [`scales`]: the standard scale `(p)` and the generalized scale `[p]`.
//! - [`kempner`]: `S_p(α)`, `S(n)`, and the links to `φ`, `ζ` and Mangoldt's `Λ`.
//! - [`duals`]: the factorial-triplet companions `S₂ … S₇`.
//! - [`moebius`]: the Möbius inverse `s(n)`, the summatory `F_S`, gcd-matrix determinants.
//! - [`rationals`]: exponent-vector rationals and the extension of `S` to `ℚ*`.
//! - [`lcm_family`]: `ν(n)` and its dual `ν₄(n)`.
//! - [`divisor_product`]: `Θ(n)`, the least `m` whose divisor product is a multiple of `n`.
//!
//! Everything except the `ζ` partial sums and the barrier solver is exact
//! integer arithmetic. The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod det;
pub mod divisor_product;
pub mod duals;
mod error;
pub mod kempner;
pub mod lcm_family;
pub mod moebius;
pub mod rationals;
pub mod scales;

pub use arith::{
    euler_phi, factorize, gcd_lcm, is_prime, lcm_upto, legendre_exponent, moebius_mu, tau,
    FactorSieve, FactoredNat, PrimeTable,
};
pub use error::{Error, Result};
pub use kempner::{smarandache, SmarandacheCtx};
pub use rationals::FactoredRat;
pub use scales::{DigitString, ScaleKind};
