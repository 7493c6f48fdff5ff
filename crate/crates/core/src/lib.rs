//! Exhaustive and SAT-based checks of social choice impossibility theorems
//! and auction properties at small base cases.

pub mod auctions;
pub mod budget;
pub mod error;
pub mod orders;
pub mod ranksets;
pub mod satkit;
pub mod swf;

pub use budget::Budget;
pub use error::{Error, Result};
