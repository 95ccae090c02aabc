//! Augmented variational principles on a single chart.
//!
//! The crate builds Noether currents and superpotentials for a small catalog
//! of field theories, constructs augmented Lagrangians relative to a vacuum
//! configuration and integrates the resulting superpotentials over closed
//! surfaces.

pub mod symker;
pub mod geom;
pub mod noether;
pub mod augment;
pub mod evalnum;
pub mod mech;
pub mod samples;
pub mod suites;
