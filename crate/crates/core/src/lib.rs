//! Mertens function, Farey sequence statistics, and the arithmetic identities
//! that connect them.
//!
//! The crate is organised bottom-up:
//!
//! - [`sieves`]: Möbius, totient, von Mangoldt and smallest-prime-factor tables.
//! - [`mertens`]: `M(x)` from the sieve and by memoized recursion, and the
//!   summation identities over `M(⌊x/i⌋)`.
//! - [`farey`]: Farey enumeration, rank, counting, interval counts and the
//!   Franel–Landau sum.
//! - [`convolution`]: Dirichlet and generalized convolutions, residue-class
//!   lines, corollary sums and their log-weighted versions.
//! - [`redheffer`]: Redheffer-type matrices and exact determinants.
//! - [`fitting`]: least-squares fits with confidence intervals.
//! - [`cli`]: the command-line front end behind the `farey-mertens` binary.

pub mod cli;
pub mod convolution;
pub mod error;
pub mod farey;
pub mod fitting;
pub mod mertens;
pub mod quotient;
pub mod redheffer;
pub mod sieves;

pub use error::{Error, Result};
pub use farey::{Boundary, Fraction, IntervalCountSeries, IntervalOptions};
pub use mertens::{mertens_table, MertensMemo, MertensTable};
pub use sieves::{build_sieves, SieveTables};
