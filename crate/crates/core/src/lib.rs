//! Finite co-Brouwerian semilattices (CBSes) and their dual posets.
//!
//! A CBS is a poset with a least element `0`, binary joins and a difference
//! `a - b` characterised by `a - b <= c  iff  a <= b v c`. Finite CBSes are
//! dual to finite posets with partial P-morphisms: the downsets of a poset
//! form a CBS, and the join-irreducibles of a finite CBS form a poset.
//!
//! The crate builds on that duality:
//!
//! * [`poset`], [`pmorph`]: finite posets, downsets, partial P-morphisms,
//!   fiber partitions and the minimal-chain decomposition.
//! * [`cbs`], [`duality`]: explicit algebras given by join and difference
//!   tables, and the functors between the two categories.
//! * [`minext`]: signatures and minimal extensions.
//! * [`amalgam`]: coamalgamation of surjective P-morphisms and pushouts of
//!   embeddings.
//! * [`axioms`]: the Splitting and Density axioms, their witness
//!   extensions, and realization of signatures using axiom witnesses only.
//! * [`terms`]: terms over `{0, v, -}`, a decision procedure for equations
//!   and the free algebras on at most two generators.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod amalgam;
pub mod axioms;
pub mod catalog;
pub mod cbs;
pub mod duality;
mod error;
pub mod iso;
pub mod minext;
pub mod pmorph;
mod points;
pub mod poset;
pub mod terms;

pub use cbs::{CbsMorphism, FinCbs};
pub use error::{Error, Result};
pub use minext::{Extension, Generators, MinimalExtension, Signature};
pub use pmorph::{FiberPartition, PMorphism};
pub use points::PointSet;
pub use poset::{DownSet, Poset};
pub use terms::Term;
