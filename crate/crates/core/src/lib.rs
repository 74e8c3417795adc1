pub mod calculus;
pub mod cli;
pub mod config;
pub mod constraints;
pub mod degstruct;
pub mod error;
pub mod factor;
pub mod field;
pub mod gowers;
pub mod io;
pub mod par;
pub mod poly;
pub mod tester;
pub mod torus;

pub use error::{Error, Result};
