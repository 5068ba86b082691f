//! The guide in `book/`, included chapter by chapter so that
//! `cargo test` runs every code sample in it.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/classes.md")]
pub mod classes {}

#[doc = include_str!("../../../book/src/conjugation.md")]
pub mod conjugation {}

#[doc = include_str!("../../../book/src/summations.md")]
pub mod summations {}

#[doc = include_str!("../../../book/src/identities.md")]
pub mod identities {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
