//! Numerical toolkit for entanglement measures defined through restricted
//! measurements.
//!
//! All entropic quantities are in bits.

pub mod entropy;
pub mod error;
pub mod harness;
pub mod io;
pub mod matqi;
pub mod povm;
pub mod sepopt;
pub mod steinsim;

pub use error::{Error, Result};
