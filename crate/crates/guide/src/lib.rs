//! The guide's chapters, compiled so their examples run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/strata.md")]
pub mod strata {}

#[doc = include_str!("../../../book/src/croc.md")]
pub mod croc {}

#[doc = include_str!("../../../book/src/assoc.md")]
pub mod assoc {}

#[doc = include_str!("../../../book/src/mho.md")]
pub mod mho {}

#[doc = include_str!("../../../book/src/quillen.md")]
pub mod quillen {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
