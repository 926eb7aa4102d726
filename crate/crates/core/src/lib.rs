//! Antisymmetric matroids over tracts.
//!
//! The crate covers the ground set `±[n]`, tracts and their null sets,
//! antisymmetric matroids in basis and circuit form, restricted
//! Grassmann–Plücker functions and F-circuit sets, Lagrangian matrices over
//! exact fields, basis-graph homotopy checks, and the bridges to ordinary,
//! symmetric and even symmetric matroids and to gaussoids.
//!
//! Everything is exact; there is no floating point anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod antisym;
pub mod bridges;
pub mod error;
pub mod ground;
pub mod homotopy;
pub mod lagrangian;
pub mod linalg;
pub mod matroids;
pub mod rgp;
pub mod tracts;

pub use antisym::{AntisymmetricMatroid, CircuitFamily};
pub use bridges::{Gaussoid, SymmetricMatroid};
pub use error::{Error, Result};
pub use ground::{Classification, ESubset, Element};
pub use homotopy::{CycleReport, CycleVerdict};
pub use lagrangian::LagrangianWitness;
pub use linalg::{Field, FieldMatrix, Scalar};
pub use matroids::{GPFunction, Matroid};
pub use rgp::{FCircuitSet, RGPFunction, RgpMode};
pub use tracts::{FormalSum, Tract, TractElement, TractMorphism, Value};
