//! Generalized lens categories over finite indexed categories.
//!
//! Everything here is finite and explicit: categories are tables, indexed
//! categories are families of tables with reindexing functors, and every
//! construction can be checked exhaustively against the laws it should obey.

pub mod catkit;
pub mod cli;
pub mod comonoid;
pub mod dynamics;
pub mod error;
pub mod finset;
pub mod indexed;
pub mod instances;
pub mod limit;

pub use error::{Error, Result};
pub use limit::Limit;
