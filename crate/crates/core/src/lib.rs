pub mod branch;
pub mod chars;
pub mod embed;
pub mod error;
pub mod expr;
pub mod gamma;
pub mod oracle;
pub mod paperdata;
pub mod report;
pub mod rootsys;

pub use error::{Error, Result};
