//! Finite models of algebraic geometry over groups.
//!
//! A coefficient group `G` acts on every object through a structure map
//! `G -> H`. On top of finite multiplication tables this crate computes
//! conjugate spans, divisors of zero, the two families of prime ideals and
//! their spectra, affine varieties in `G^n`, the structural sheaf over a
//! finite spectrum and morphisms between the resulting sheafed spaces.
//!
//! Everything is exhaustive: groups are materialized as full tables and
//! spectra have at most 64 points. The crate is `no_std` and only needs
//! `alloc`.

#![no_std]

extern crate alloc;

mod error;
pub mod fingroup;
pub mod freeprod;
pub mod gobject;
pub mod pointset;
pub mod sheaf;
pub mod spectrum;
pub mod variety;

pub use error::{Error, Result};
pub use fingroup::{GroupTable, Homomorphism, QuotientGroup, Subgroup};
pub use freeprod::{Syllable, Word, WordContext};
pub use gobject::{GGroup, GMorphism, Variant};
pub use pointset::PointSet;
pub use spectrum::{ClosedSet, Component, PrimeDef, Spectrum};
pub use variety::{FunctionGroup, VarietySet};
pub use sheaf::{GScheme, SchemeMorphism, SectionSet};



