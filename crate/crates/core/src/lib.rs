//! Exact computations for extrinsic geometry of flag varieties: root
//! systems, graded Lie algebras and their modules, relative prolongations,
//! Lie algebra cohomology with harmonic theory, Kostant-style predictions,
//! and a weighted linear PDE engine for the homogeneous models.

pub mod cohomology;
pub mod error;
pub mod gradedlie;
pub mod kostant;
pub mod linalg;
pub mod parabolic;
pub mod prolong;
pub mod rational;
pub mod repmod;
pub mod rootsys;
pub mod wpde;

pub use error::{Error, Result};
pub use rational::{q, Rat};
