pub mod affine;
pub mod algkit;
pub mod cli;
pub mod coalgkit;
pub mod error;
pub mod examples;
pub mod exactlin;
pub mod fixtures;
pub mod ybe;

pub use error::{Error, Result};
