//! Analysis of quadratic normalisations of monoids given by their
//! length-two restriction: axiom checking, class and p-class measurement,
//! normalisation by the universal delta strategy, classification of the
//! induced rewriting system, and Garside-derived normalisation with its
//! left-weighted characterisation.

pub mod analysis;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod garside;
pub mod normaliser;
pub mod qmap;
pub mod report;
pub mod rewriting;
pub mod spec_file;
pub mod words;

pub use error::{Error, Result};
pub use normaliser::{MonoidElement, Strategy};
pub use qmap::{AltStart, AlternatingKind, QuadMap};
pub use words::{Alphabet, Letter, PositionSequence, Word};
