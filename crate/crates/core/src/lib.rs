//! Semisimple conjugacy classes of the symplectic groups Sp(2m, p) for odd primes p.
//!
//! The crate classifies semisimple matrices by their class descriptor, builds
//! explicit representatives preserving the standard alternating form J, and
//! enumerates and counts the semisimple classes. A brute-force group oracle
//! checks the results on small groups.

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod ffield;
pub mod fmatrix;
pub mod forms;
pub mod fpoly;
pub mod hermitian;
pub mod json;
pub mod oracle;

pub use error::{Error, Result};
