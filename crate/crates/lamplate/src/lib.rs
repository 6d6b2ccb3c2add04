//! Isogeometric Kirchhoff solver for laminated composite plates.
//!
//! A simply supported cross-ply laminate under a sinusoidal pressure is
//! solved with B-spline Galerkin or collocation discretizations of the
//! homogenized bending problem, and the full interlaminar stress state is
//! reconstructed from the 2D deflection by integrating the 3D equilibrium
//! equations through the thickness.

pub mod collocation;
pub mod config;
pub mod error;
mod fixtures;
pub mod galerkin;
pub mod materials;
pub mod pipeline;
pub mod quadrature;
pub mod recovery;
pub mod reference;
pub mod splines;

pub use error::{Error, Result};
