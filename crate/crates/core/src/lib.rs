//! Locally recoverable codes on algebraic curves.
//!
//! The crate builds linear LRC codes as evaluation codes on covering maps of
//! curves and checks them:
//!
//! - [`galois`]: GF(p^a) arithmetic, polynomials, cosets, linear algebra.
//! - [`lrc`]: generator matrices from fibers and fiber-constant functions,
//!   designed parameters, encoding and local recovery.
//! - [`tamo_barg`]: the Reed-Solomon-like family on the projective line.
//! - [`hermitian`]: codes on the Hermitian curve, including the family with
//!   two disjoint recovering sets.
//! - [`gs_tower`]: point enumeration and parameter formulas for the
//!   Garcia-Stichtenoth tower.
//! - [`analysis`]: exhaustive minimum distance, locality certificates,
//!   erasure round trips.
//! - [`bounds`]: Singleton-type, GV-type and asymptotic AG rate bounds.
//! - [`descriptor`]: the JSON code descriptor format.
//!
//! Real-valued bound computations are generic over [`num_traits::Float`];
//! the aliases below fix the scalar to `f64`.

pub mod analysis;
pub mod bounds;
pub mod descriptor;
mod error;
pub mod galois;
pub mod gs_tower;
pub mod hermitian;
pub mod lrc;
pub mod tamo_barg;

pub use error::{Error, Result};
pub use galois::{Elem, FiniteField, UniPoly};
pub use lrc::{Family, LinearCode};

pub type RatePoint = bounds::RatePoint<f64>;
pub type RatePointF32 = bounds::RatePoint<f32>;
pub type SGrid = bounds::SGrid<f64>;
pub type Crossover = bounds::Crossover<f64>;
