//! Exact arithmetic for Cauchy-Stieltjes kernel (CSK) variance functions.
//!
//! Everything here works on truncated formal power series with rational
//! coefficients. No floating point is used anywhere; every result is an exact
//! rational and re-running a computation reproduces it bit for bit.
//!
//! Layout:
//! - [`series`], [`poly`], [`rational`]: the algebra everything else uses.
//! - [`transforms`], [`noncrossing`]: moments, free cumulants, S-transforms and
//!   the free convolutions, with a brute-force non-crossing partition oracle.
//! - [`varfun`], [`membership`]: the moments <-> variance function bijection,
//!   the operations that build new variance functions from old ones, and
//!   membership criteria.
//! - [`hankel`], [`jacobi`]: Hankel minors and Jacobi coefficients.
//! - [`families`]: polynomial families attached to a variance function and
//!   generalized orthogonality checks.
//! - [`demo`]: the Fuss-number example end to end.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod demo;
mod error;
pub mod families;
pub mod hankel;
pub mod jacobi;
pub mod membership;
pub mod noncrossing;
pub mod poly;
pub mod rational;
pub mod series;
pub mod transforms;
pub mod varfun;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use rational::Rational;
pub use series::Series;
