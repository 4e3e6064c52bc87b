//! Exact verification engine for homotopy coexact Batalin–Vilkovisky algebras.
//!
//! Everything is computed over the rationals with arbitrary precision. Multilinear
//! maps are stored as constant-coefficient multi-differential operators on a finite
//! graded basis, optionally tensored with polynomials, so identities between maps are
//! decided by comparing canonical rule tables.

pub mod error;
pub mod homotopy;
pub mod report;
pub mod sample;
pub mod shuffle;
pub mod strict;
pub mod tables;
pub mod tensor;
pub mod ym;

pub use error::{Error, Result};
pub use tensor::{
    hom_differential, insertion_bracket, pre_lie, Basis, Element, GradedCarrier, Mono, MultiMap,
    OpTerm, Permutation, Rational, Sym,
};
