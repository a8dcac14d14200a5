pub mod arith;
pub mod cli;
pub mod error;
pub mod ffpoly;
pub mod hminus;
pub mod intpoly;
pub mod scanner;
pub mod stickelberger;

pub use error::{Error, Result};
