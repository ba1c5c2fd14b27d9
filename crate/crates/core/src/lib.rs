//! Extremal families of signed {0,±1}-vectors with a fixed number of `+1`
//! and `-1` coordinates, under forbidden scalar products.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the result cache,
//! wall-clock budgets and the command line live in the `signfam` crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bipartite;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod shifting;
pub mod solver;
pub mod vector;
pub mod witness;

pub use error::{Error, Result};
pub use vector::{enumerate_all, scalar_product, Profile, SignedVector, SuffixMarkers, VectorFamily, MAX_DIM};
