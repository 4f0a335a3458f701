//! Finite groups, Engel sets and a nilpotent collector.

pub mod claims;
pub mod collector;
pub mod corpus;
pub mod elemset;
pub mod engel;
pub mod exponent;
pub mod group;
pub mod perm;
pub mod structure;
pub mod word;

pub use elemset::ElementSet;
pub use group::{Elem, FiniteGroup, GroupError};
pub use perm::Permutation;
pub use word::Word;
