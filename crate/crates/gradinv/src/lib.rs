//! Graded-division real algebras, their degree-preserving involutions, and
//! the invariants that classify them.

pub mod abgroup;
pub mod cli;
pub mod classify;
pub mod distinguished;
pub mod error;
pub mod exactalg;
pub mod forms;
pub mod involution;
pub mod oracle;

pub use error::{Error, Result};
