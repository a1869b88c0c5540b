//! Partition regularity analysis for patterns built from `x`, `y`, sums,
//! ratios and products of shifted variables, with finite-scale checks.
//!
//! See the guide in `book/` for a tour.

pub mod analyzer;
pub mod arith;
pub mod colouring;
pub mod pattern;
pub mod search;

/// The guide's code listings, run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    pub mod arithmetic {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    pub mod patterns {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    pub mod verdicts {}
    #[doc = include_str!("../../../book/src/colourings.md")]
    pub mod colourings {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
