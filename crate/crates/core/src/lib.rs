//! Workbench for finite unit-norm frames and Grassmannian line packings.
//!
//! - [`frame`]: the [`Frame`] type, validation and the JSON interchange format.
//! - [`analysis`]: coherence, angle sets, tightness, equidistribution, design moments.
//! - [`embedding`]: the traceless spherical embedding and its zero-sum defect.
//! - [`bounds`]: Welch, orthoplex and Toth lower bounds.
//! - [`catalog`]: closed-form optimal frames and seeded random generators.
//! - [`solver`]: multi-start smoothed coherence minimization.
//! - [`rigidity`]: structural checks for biangular tight frames and the
//!   case analysis ruling out tight biangular 5-vector frames in `C^2`.
//! - [`cli`]: the JSON command-line front end.

pub mod analysis;
pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod frame;
pub mod rigidity;
pub mod solver;

pub use error::{Error, Result};
pub use frame::{Field, Frame, Tolerances, TOL_UNIT};
