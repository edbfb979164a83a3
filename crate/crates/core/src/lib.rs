//! Exact computations for rings of modular forms with level structure.

pub mod arith;
pub mod decomp;
pub mod eisenstein;
pub mod error;
pub mod exactnum;
pub mod hilbert;
pub mod levels;
pub mod report;
pub mod ringalg;
pub mod suite;

pub use error::{Error, Result};
