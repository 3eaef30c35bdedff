pub mod cli;
pub mod closed;
pub mod error;
pub mod number;
pub mod oracle;
pub mod poly;
pub mod special;

pub use error::{Error, Result};
