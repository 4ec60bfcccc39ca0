//! Exact-arithmetic toolkit for straightening laws on Grassmannian
//! coordinate rings, Weyl-group and weight combinatorics of diagram
//! extensions, and invariant wedge computations for the associated model
//! varieties.

// Index loops over matrix entries and `% 2` parity tests stay as written;
// the iterator forms clippy prefers read worse in this kind of code.
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod exterior;
pub mod linalg;
pub mod model_checker;
pub mod pluecker;
pub mod rep_theory;
pub mod report;
pub mod root_system;
pub mod sl3;

pub use pluecker::{Column, PlueckerError, Straightening, Tableau};

pub use exterior::{BilinearFormSpec, ExtElement, ExtError, FormKind};
pub use linalg::{rat, rat_int, QMatrix, Rat};
pub use root_system::{
    ExtendedGcm, Family, Gcm, KExtension, RootSystemError, RootVector, Weight, WeylWord, ALPHA0,
    BETA0,
};
