//! The book chapters as doc-test modules, so `cargo test` runs every code
//! block in `book/src`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/power-tables.md")]
pub mod power_tables {}
#[doc = include_str!("../../../book/src/predictor.md")]
pub mod predictor {}
#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/scanning.md")]
pub mod scanning {}
