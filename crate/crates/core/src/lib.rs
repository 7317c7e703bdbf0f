//! Complexity measures of self-maps of finite fields GF(p^n).
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`field`]: GF(p^n) in a polynomial basis with log/exp tables.
//! - [`poly`]: value tables ([`Func`]), interpolation polynomials ([`Poly`]),
//!   degree and weight.
//! - [`linalg`]: F_p-subspaces, linearised polynomials, subspace polynomials.
//! - [`measures`]: additive index, Carlitz rank, Möbius agreement,
//!   multiplicative index and the aggregated [`MeasureReport`].
//! - [`families`]: constructors for the named function families.
//! - [`bounds`]: inequality checks with exact arithmetic and sweep
//!   accumulation over function spaces.
//!
//! Elements are always handled through their integer encoding
//! `Σ c_i λ^i ↦ Σ c_i p^i`, so a function is simply a table of `q` encodings.
#![no_std]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod families;
pub mod field;
pub mod linalg;
pub mod measures;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use linalg::{LinearisedPoly, Subspace};
pub use measures::{MeasureOptions, MeasureReport};
pub use poly::{Degree, Func, Poly};
