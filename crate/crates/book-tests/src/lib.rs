//! Keeps the guide honest.
//!
//! Each module's documentation is a chapter of `book/`, included verbatim,
//! so every fenced Rust snippet in the guide compiles and runs as a
//! doc-test of this crate. A chapter that drifts from the library's actual
//! API fails `cargo test --workspace`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/subtraction-games.md")]
pub mod subtraction_games {}

#[doc = include_str!("../../../book/src/periodicity.md")]
pub mod periodicity {}

#[doc = include_str!("../../../book/src/characterization.md")]
pub mod characterization {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
