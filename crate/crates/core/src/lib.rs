//! Scale-indexed Lipschitz derivatives on finite metric samples.
//!
//! A [`SampledMap`] is a function on a [`FiniteMetricSpace`]. The [`scales`]
//! module evaluates the radius-indexed functionals `Lip^r`, `Lip_r`, `lip_r`
//! and `𝕃ip^r` exactly on the sample and estimates their small-scale limits.
//! [`envelope`] builds Baire envelopes of scalar fields, [`setclass`] works in
//! finite topologies, [`zoo`] provides reference functions with known
//! derivatives and [`harness`] checks the structural identities numerically.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod envelope;
pub mod error;
pub mod harness;
pub mod interval;
pub mod io;
pub mod linear;
pub mod metric;
mod par;
pub mod sampled;
pub mod scales;
pub mod setclass;
pub mod zoo;

pub use envelope::ScalarField;
pub use error::{Error, Result};
pub use interval::IntervalUnion;
pub use linear::LinearMapSpec;
pub use metric::{FiniteMetricSpace, Norm, METRIC_TOLERANCE};
pub use sampled::{Codomain, SampledMap};
pub use scales::{PointProfile, ProfileOptions, RadiusGrid, ScaleProfile, ScaleRow};
pub use setclass::{FiniteField, SetFamily};
pub use zoo::{OracleTriple, ZooEntry};
