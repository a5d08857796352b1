//! menonkit-core: exact evaluation and cross-checking of Menon-type
//! gcd/lcm identities.
//!
//! Every identity is implemented twice — a brute-force nested summation
//! and a closed form built from divisor sums, polynomial root counts and
//! exact rational intermediates — and the two routes are compared for
//! exact equality over parameter sweeps. Nothing here is floating point.

pub mod arith;
pub mod congruence;
pub mod error;
mod grid;
pub mod identities;
pub mod multifn;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
