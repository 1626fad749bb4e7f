//! Finite-index subgroups of free groups: Schreier transversals, Nielsen-Schreier
//! bases, wreath-product embeddings and the extension of maps from a subgroup basis.

pub mod action;
pub mod cli;
pub mod error;
pub mod extension;
pub mod groups;
pub mod perm;
pub mod residual;
pub mod sample;
pub mod schreier;
pub mod verify;
pub mod words;
pub mod wreath;

pub use action::{PermRep, RepSpec};
pub use error::{Error, Result};
pub use groups::{right_cosets, CosetSpace, Elem, FiniteGroup, GroupSpec, SubgroupSpec};
pub use perm::Permutation;
pub use words::{Alphabet, Letter, Word};
pub use schreier::{Basis, SchreierPair, Transversal};
pub use wreath::{embed, Embedding, WreathContext, WreathElement};
pub use extension::{AssignmentSpec, Extension, FiniteSupportMap};
pub use residual::{separate_all, witness};
