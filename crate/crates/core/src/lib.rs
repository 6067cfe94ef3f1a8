//! Trigraph contraction sequences and reduced graph parameters.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches
//! files, the command line or threads lives in the `twinreduce` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod diversity;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod product;
pub mod sequence;
pub mod trigraph;

pub use bitset::VertexSet;
pub use graph::Graph;
pub use sequence::{Merge, ReductionSequence};
pub use trigraph::{Partition, Trigraph, TrigraphError};
