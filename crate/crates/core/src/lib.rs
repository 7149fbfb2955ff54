//! Orbit enumeration and fiber connectivity for the Markoff-type K3 surfaces
//!
//! ```text
//! W_k : x² + y² + z² + x²y²z² + kxyz = 0   in (P¹)³
//! ```
//!
//! and, more generally, for surfaces cut out by symmetric (2,2,2)-forms.
//! Arithmetic runs over prime fields and over exact characteristic-zero towers
//! through the [`fields::Field`] trait, so the same geometry and group code
//! serves finite-field censuses and exact finite-orbit verification.

pub mod autos;
pub mod char0;
pub mod fibers;
pub mod fields;
pub mod geometry;
pub mod golden;
pub mod orbits;

pub use fields::{ExactElem, ExactField, Field, FieldError, PrimeField};
pub use autos::{Generator, GroupWord};
pub use geometry::{Form222, Mk3Surface, P1Elem, P1Triple, Surface, WkSurface};
pub use orbits::{CensusRow, OrbitDecomposition};


