//! Numerical core for simulating how two qubits coupled to a dc-SQUID
//! transmission line harvest entanglement from the field vacuum when the
//! line emulates the 1-D section of an Ellis wormhole.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. The pieces:
//!
//! - [`geometry`]: shape function, proper radial coordinate and the
//!   effective propagation speed along the line.
//! - [`squid_map`]: external flux bias that reproduces the metric, and the
//!   feasibility arithmetic for a realistic circuit.
//! - [`kinematics`]: the dimensionless light-cone parameters connecting
//!   laboratory and free-falling coordinates.
//! - [`field_model`]: the discretized 1-D field shared by both engines.
//! - [`perturbation`]: second-order amplitudes beyond the rotating-wave
//!   approximation and the resulting concurrence.
//! - [`oracle`]: exact evolution in a truncated Fock space, used as ground
//!   truth for the perturbative engine.
#![no_std]
#![deny(missing_docs)]

extern crate alloc;

pub mod constants;
mod error;
pub mod field_model;
pub mod geometry;
pub mod kinematics;
pub mod linalg;
pub mod oracle;
pub mod perturbation;
pub mod quadrature;
pub mod squid_map;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use field_model::{FieldMode, FieldModeSet, InteractionSpec, ModeBudget, Qubit};
pub use geometry::WormholeGeometry;
pub use kinematics::{LightconeParams, QubitPairConfig};
pub use perturbation::{PerturbativeAmplitudes, TwoQubitXState};
pub use squid_map::{ArraySpec, FeasibilityReport, FeasibilityThresholds};
