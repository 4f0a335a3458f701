//! Free nilpotent groups of small rank and class.

mod collect;
mod hall;
mod lattice;
mod magnus;
mod theorem2;

use thiserror::Error;

pub use collect::{Collector, NormalForm};
pub use hall::{generator_label, hall_basis, BasicCommutator, MAX_CLASS, MAX_RANK};
pub use lattice::{hnf_insert, lattice_index, IntLattice, LatticeIndex};
pub use magnus::{Magnus, MagnusElement};
pub use theorem2::{
    reduced_words, saturate, theorem2_instances, theorem2_symbolic, theorem2_symbolic_capped, verdict,
    LayeredSubgroup, SymbolicOutcome, Verdict, DEFAULT_INSTANCE_CAP,
};

#[derive(Debug, Error)]
pub enum CollectorError {
    #[error("rank {rank} and class {class} must lie in 1..=3 and 1..=5")]
    OutOfRange { rank: usize, class: usize },
    #[error("normal form of rank/class {got:?} used with collector of rank/class {expected:?}")]
    Mismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("vector of length {got} where {expected} was expected")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{needed} instances exceed the cap of {cap}")]
    ResourceCap { needed: usize, cap: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Word(#[from] crate::word::WordError),
}
