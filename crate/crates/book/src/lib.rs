//! The guide's chapters, compiled so their code samples run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/trees.md")]
pub mod trees {}
#[doc = include_str!("../../../book/src/grothendieck.md")]
pub mod grothendieck {}
#[doc = include_str!("../../../book/src/operad.md")]
pub mod operad {}
#[doc = include_str!("../../../book/src/charpoly.md")]
pub mod charpoly {}
#[doc = include_str!("../../../book/src/symfun.md")]
pub mod symfun {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
