//! The user guide, embedded as doc-tested modules.
//!
//! The rendered book lives in `book/` at the repository root; each
//! module below carries one chapter as its documentation, so every Rust
//! snippet in the book compiles and runs under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/atmosphere.md")]
pub mod atmosphere {}

#[doc = include_str!("../../../book/src/airframe.md")]
pub mod airframe {}

#[doc = include_str!("../../../book/src/battery.md")]
pub mod battery {}

#[doc = include_str!("../../../book/src/planner.md")]
pub mod planner {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/sweeps.md")]
pub mod sweeps {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
