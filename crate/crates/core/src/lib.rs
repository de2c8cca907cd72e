//! Pedal-point and extremal-triangle constructions for a reference
//! triangle, with brute-force oracles and numeric verification of the
//! six-point circle.

// `!(x < y)` is how thresholds reject NaN throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod exec;
pub mod extremal;
pub mod geom;
pub mod oracle;
pub mod sample;
pub mod six_circle;
pub mod tolerance;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
pub use extremal::{AngleId, AngleTriple, ExtremalConfig, SideAssignment};
pub use geom::{Circle, Line, Point};
pub use tolerance::Tolerances;
pub use triangle::{Side, Triangle};
