//! Card dealing patterns, their triangles, and the card tricks built on them.

mod error;

pub mod deal;
pub mod lang;
pub mod pattern;
pub mod recursion;
pub mod sequence;
pub mod spelling;
pub mod tricks;

pub use error::{Error, Result};
pub use lang::ParseError;
pub use pattern::{Base, Letter, Pattern};

// The guide's Rust snippets run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/dealing.md")]
    mod dealing {}
    #[doc = include_str!("../../../book/src/recursions.md")]
    mod recursions {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/tricks.md")]
    mod tricks {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
