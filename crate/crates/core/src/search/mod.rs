//! Solution enumeration, blocking verification, witness search and
//! finite-sum constructions.

mod blocking;
mod eval;
mod sequences;
mod solutions;
mod witness;

use thiserror::Error;

pub use blocking::{auto_block, propose_blocking, verify_blocking, AutoBlock, BlockReport, EXCEPTIONAL_CAP};
pub use sequences::{
    derive_sequences, fs_ratio_search, fs_set, product_sum_set, ratio_set, ChainError, RatioSet, MAX_FS_LEN,
};
pub use solutions::{enumerate_solutions, find_monochromatic, scan_monochromatic, MonoScan};
pub use witness::{search_witness, WitnessResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("pattern coefficients are too large for the search routines")]
    CoefficientTooLarge,
    #[error("explicit colouring covers 1..={limit} but the search needs 1..={n}")]
    DomainTooSmall { limit: u64, n: u64 },
}

/// A solution `(x, y)` with the value of every piece, in pattern order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionTuple {
    pub x: u64,
    pub y: u64,
    pub values: Vec<u64>,
}
