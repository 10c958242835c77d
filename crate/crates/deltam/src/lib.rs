//! Delta-matroids on small ground sets.
//!
//! A set system is a ground set `{1, ..., n}` with a nonempty family of
//! feasible subsets; a delta-matroid is a set system satisfying the
//! symmetric exchange axiom. This crate provides the standard operations
//! on them — twists, duals, handle slides, elementary minors — together
//! with GF(2) representability deciders, isomorphism testing, and an
//! exhaustive census that verifies the slide dichotomy at desk scale:
//! binary delta-matroids are exactly the delta-matroids that no slide
//! sequence can take outside the class.
//!
//! ```
//! use deltam::SetSystem;
//!
//! let s = SetSystem::from_subsets(3, &[&[], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]).unwrap();
//! assert!(s.is_delta_matroid());
//! assert!(!s.handle_slide(1, 2).unwrap().is_delta_matroid());
//! ```
//!
//! The heavy sweeps (census enumeration, matrix-space search, law
//! verification) run data-parallel under the default `parallel` feature
//! and fall back to single-threaded loops without it; both paths produce
//! identical output.

#![forbid(unsafe_code)]

mod error;
mod iso;
mod mask;
mod par;
mod system;

pub mod binary;
pub mod census;
pub mod format;
pub mod gf2;
pub mod golden;
pub mod transforms;

pub use error::{Error, Result};
pub use gf2::SymmetricBinaryMatrix;
pub use iso::Relabeling;
pub use mask::SubsetMask;
pub use system::{AxiomViolation, SetSystem};
pub use transforms::{Minor, MinorOp, MinorStep, SlideInstruction, SlideWitness};
