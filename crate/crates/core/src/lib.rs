//! Exact computation of intersection cohomology Poincaré and Hodge polynomials
//! for moduli spaces of `K^l`-twisted Higgs bundles and for the Cayley
//! components of several higher rank Teichmüller families.
//!
//! The crate is layered bottom-up:
//!
//! - [`arith`]: rationals, sparse Laurent polynomials and normalized rational
//!   functions over a fixed variable alphabet.
//! - [`partitions`]: integer partitions with arm and leg statistics.
//! - [`series`]: truncated power series in `T` with ordinary and plethystic
//!   logarithm and exponential.
//! - [`pipeline`]: the partition generating series, Donaldson–Thomas invariants
//!   and the `GL(n)` / `PGL(n)` Poincaré polynomials.
//! - [`cayley`]: Hodge and Poincaré polynomials of the Cayley components.

pub mod arith;
pub mod cayley;
mod error;
pub mod group;
pub mod moebius;
pub mod partitions;
pub mod pipeline;
pub mod series;

pub use error::{Error, Result};
pub use group::{ComponentSpec, DegreeLabel, Group, Provenance};
