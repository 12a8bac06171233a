//! Exact counting of the ways to divide an `m x n` grid board into `k`
//! connected pieces.
//!
//! * [`brute`]: exhaustive edge-subset sweep, the ground truth for small boards.
//! * [`dpcount`]: column-profile dynamic programming for any width and up to
//!   eight rows.
//! * [`recurrence`]: the two-row column recursions for `d_k(n)` and `s_k(n)`.
//! * [`poly`] and [`closedform`]: exact interpolation of the two-row counts as
//!   polynomials in `n`, verified symbolically against the recursions.
//! * [`symmetry`]: counts up to rotation and reflection via Burnside's lemma.

pub mod board;
pub mod brute;
pub mod closedform;
pub mod division;
pub mod dpcount;
pub mod error;
pub mod poly;
pub mod recurrence;
pub mod symmetry;
pub mod table;
mod unionfind;

pub use board::{BoardShape, Edge, SquareIndex};
pub use brute::{brute_count, enumerate_divisions, is_valid_removal, separation_count, BruteForce};
pub use division::{CutSet, Division};
pub use dpcount::{dp_count, dp_separation_count};
pub use error::{Error, Result};
pub use poly::{Polynomial, Rational};
pub use table::{Provenance, SequenceTable, Series};
