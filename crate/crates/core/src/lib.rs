//! Mackey functors for cyclic p-groups and their slice invariants.

pub mod boxprod;
pub mod error;
pub mod mackey;
pub mod random;
pub mod rep;
pub mod slice;
pub mod zmod;

pub use error::{Error, Result};
