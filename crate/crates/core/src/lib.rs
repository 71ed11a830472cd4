//! Finite commutative algebra on explicit carriers.
//!
//! Rings and modules are given by dense operation tables over carriers
//! `0..n`, so every structural question (is this ideal prime, is this
//! submodule 2-absorbing, is this map a homomorphism) is decided by
//! exhaustive search with a lexicographically least witness on failure.
//! On top of the table layer sit the glueing constructions: amalgamated
//! rings and modules along an ideal, duplications, idealizations
//! (trivial extensions) and localizations at a multiplicatively closed
//! set. The [`verify`] module packages the algebraic statements the
//! workbench can confirm on families of small instances.
//!
//! The crate is `no_std` (alloc only); everything is immutable after
//! construction and safe to share across threads.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod amalg;
pub mod budget;
pub mod error;
pub mod idealize;
pub mod localize;
pub mod module;
pub mod ring;
pub mod set;
pub mod verdict;
pub mod verify;

pub use budget::Budget;
pub use error::{AlgebraError, Result};
pub use module::{FiniteModule, ModuleHom, Submodule};
pub use ring::{FiniteRing, Ideal, MultSet, RingHom};
pub use verdict::{Verdict, Witness};
