//! Exact verification of square-root product identities of the form
//! `sqrt(prefactor * prod (1 - 1/d_k^2)) = prod (1 + 1/d_k)`, together
//! with the numerics around them: prime sieving by residue class, the
//! Landau-Ramanujan constant through its Euler product, truncated Euler
//! products against zeta closed forms, and counting integers that are a
//! sum of two squares.
//!
//! Identity checks run in exact rational arithmetic (square roots are
//! decided by squaring, never extracted); floating-point work uses
//! [`BigFloat`], an arbitrary-precision binary float with
//! round-to-nearest-even field operations.

pub mod bigfloat;
pub mod constants;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod primes;
pub mod rational;
pub mod sum_two_squares;

pub use bigfloat::BigFloat;
pub use error::{Error, Result};
pub use rational::{BigInt, BigRational, LinearForm, RationalPoly};
