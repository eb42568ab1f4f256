//! Decide whether the representation space of a quiver setting is a
//! spherical variety, i.e. whether the Borel subgroup of the base change
//! group acts with finitely many orbits.
//!
//! Two independent deciders are provided:
//!
//! * [`sphericity::is_spherical_root_criterion`] searches the leg-extended
//!   quiver for a gentle imaginary root below the hat dimension vector;
//! * [`sphericity::is_spherical_structural`] splits a tree setting at thin
//!   cut vertices and checks every piece against the short list of
//!   admissible shapes.
//!
//! [`oracle`] counts orbits over small prime fields by brute force and is
//! used to corroborate both.

pub mod cli;
pub mod error;
pub mod exec;
pub mod leg;
pub mod oracle;
pub mod quiver;
pub mod roots;
pub mod sphericity;
mod unionfind;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use leg::LegExtendedSetting;
pub use quiver::{DimVector, PieceDecomposition, Quiver, QuiverSetting};
pub use roots::{RootClass, RootKind};
pub use sphericity::{Method, SphericityVerdict};
