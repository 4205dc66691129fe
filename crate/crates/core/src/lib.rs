//! Combing families of Schröder paths into non-intersecting ones, plus the
//! tooling around that bijection (Delannoy determinants, exhaustive checks,
//! Aztec diamond tilings, SVG output).
//!
//! A family of order `n` is stored as two lower-triangular arrays: `B` holds
//! the step type (`0` horizontal, `1` diagonal) below the diagonal, `D` the
//! number of vertical steps taken in each column. Combing a random bit
//! triangle yields a uniformly random non-intersecting family, hence a
//! uniformly random tiling.

pub mod comb;
pub mod enumerate;
pub mod lgv;
pub mod pathfam;
pub mod render;
pub mod sample;
mod text;
pub mod tiling;

pub use comb::{comb, comb_stages, uncomb, CombError, CombTrace, Precondition};
pub use pathfam::{BitTriangle, FamilyError, PathFamily, Point, Step};
pub use text::ParseError;
