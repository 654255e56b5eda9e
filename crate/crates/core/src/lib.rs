//! Semi-topological Galois groups of Weierstrass polynomials over planar
//! domains, computed by numerical monodromy.

pub mod domain;
pub mod error;
pub mod numerics;
pub mod cli;
pub mod covering;
pub mod perm;
pub mod rationalize;
pub mod realize;
pub mod tracking;
pub mod vandermonde;

pub use error::{Error, Result};
