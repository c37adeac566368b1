//! Rotation-free Kirchhoff-Love thin-shell kernel built on Loop subdivision
//! surfaces, with a one-time orthotropic transformation of the shape-function
//! derivatives so that every element carries an orthogonal basis aligned to a
//! global preferred direction.
//!
//! The crate provides the mesh layer (triangle control meshes, generators,
//! OFF/OBJ import), the subdivision basis (quartic box splines on regular
//! patches, composed picking for irregular ones), geometrically nonlinear
//! statics with load/displacement continuation, Newmark dynamics, and the two
//! benchmark studies shipped with the CLI: the pinched hemisphere with a hole
//! and the sheared-sheet wrinkling problem.

pub mod assembly;
pub mod basis;
pub mod boundary;
pub mod config;
pub mod element;
pub mod error;
pub mod kinematics;
pub mod linsolve;
pub mod material;
pub mod mesh;
pub mod newmark;
pub mod orthotropy;
pub mod par;
pub mod statics;
pub mod studies;
pub mod trace;
pub mod vtk;

pub use error::Error;
pub use mesh::{ControlMesh, OneRing, RingNode};
pub use par::Parallelism;

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
