//! Markoff-type surfaces `x² + y² + z² − xyz − 2 = k` over prime fields.
//!
//! [`ff`] has the field arithmetic, [`sl2`] the matrix side (trace map,
//! Nielsen moves, towers, subgroup classes), [`surface`] the triples and
//! their orbits, and [`analytics`] the counting and divisibility checks.

pub mod analytics;
pub mod error;
pub mod ff;
pub mod sl2;
pub mod surface;

pub use error::{Error, Result};
