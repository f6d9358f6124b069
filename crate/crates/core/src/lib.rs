//! Exact infinite lower-triangular matrices and the generalized
//! Star-of-David (SDR) rule.
//!
//! Triangles are lazy, memoized generator rules over exact rationals;
//! all checking and algebra runs on finite [`Window`]s of their first rows.

pub mod algebra;
pub mod checker;
pub mod error;
pub mod harness;
pub mod minor;
pub mod rational;
pub mod riordan;
pub mod sequence;
pub mod spec;
pub mod triangle;

pub use checker::{check_order, max_order, infinity_evidence, CheckOptions, SdrReport, Verdict};
pub use error::{Error, Result};
pub use rational::Rational;
pub use sequence::SequenceSpec;
pub use spec::TriangleSpec;
pub use triangle::{Builtin, Triangle, TriangleFile, Window};
