//! Descriptive complexity of finite unary structures: exact first-order
//! definitions, lower bounds from formula-size games, and entropy envelopes.

pub mod entropy;
pub mod error;
pub mod game;
pub mod logic;
pub mod oracle;
pub mod semantics;
pub mod structures;
pub mod synthesis;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
