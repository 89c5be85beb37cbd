//! Exact tropical geometry on metric graphs.

pub mod curve;
pub mod error;
pub mod io;
pub mod morphism;
pub mod random;
pub mod rat_fun;
pub mod rational;
pub mod realization;
pub mod selftest;
pub mod tropical;

pub use error::{Error, Result};
