//! Board geometry: shapes, square indexing and the adjacency graph.
//!
//! Squares are numbered column by column: square `rows * col + row` sits in
//! row `row` of column `col`. On a two-row board this puts the top square of
//! column `j` at `2j` and the bottom square at `2j + 1`, so `(i, i + 1)` is a
//! vertical pair exactly when `i` is even and `(i, i + 2)` is always a
//! horizontal pair.

use std::fmt;

use crate::error::{Error, Result};

/// Dimensions of a rectangular board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoardShape {
    rows: usize,
    cols: usize,
}

impl BoardShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape { rows, cols });
        }
        Ok(Self { rows, cols })
    }

    /// The `2 x n` board.
    pub fn ladder(cols: usize) -> Result<Self> {
        Self::new(2, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn squares(&self) -> usize {
        self.rows * self.cols
    }

    /// Number of adjacent pairs: `rows (cols - 1) + (rows - 1) cols`.
    pub fn edge_count(&self) -> usize {
        self.rows * (self.cols - 1) + (self.rows - 1) * self.cols
    }

    pub fn square(&self, row: usize, col: usize) -> SquareIndex {
        debug_assert!(row < self.rows && col < self.cols);
        SquareIndex(self.rows * col + row)
    }

    pub fn position(&self, square: SquareIndex) -> (usize, usize) {
        (square.0 % self.rows, square.0 / self.rows)
    }

    pub fn transposed(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
        }
    }

    /// Whether two squares share a side.
    pub fn are_adjacent(&self, a: SquareIndex, b: SquareIndex) -> bool {
        let n = self.squares();
        if a.0 >= n || b.0 >= n {
            return false;
        }
        let (ra, ca) = self.position(a);
        let (rb, cb) = self.position(b);
        (ca == cb && ra.abs_diff(rb) == 1) || (ra == rb && ca.abs_diff(cb) == 1)
    }

    /// All grid edges, sorted by `(a, b)`.
    pub fn adjacency(&self) -> Vec<Edge> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for col in 0..self.cols {
            for row in 0..self.rows {
                let here = self.square(row, col);
                if row + 1 < self.rows {
                    edges.push(Edge {
                        a: here,
                        b: self.square(row + 1, col),
                    });
                }
                if col + 1 < self.cols {
                    edges.push(Edge {
                        a: here,
                        b: self.square(row, col + 1),
                    });
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

impl fmt::Display for BoardShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Position of a square in the column-major numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareIndex(pub usize);

impl fmt::Display for SquareIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// An unordered pair of adjacent squares, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: SquareIndex,
    b: SquareIndex,
}

impl Edge {
    /// Builds the edge between `a` and `b` if they are adjacent on `shape`.
    pub fn new(shape: &BoardShape, a: usize, b: usize) -> Result<Self> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if !shape.are_adjacent(SquareIndex(lo), SquareIndex(hi)) {
            return Err(Error::NotAnEdge {
                a,
                b,
                rows: shape.rows(),
                cols: shape.cols(),
            });
        }
        Ok(Self {
            a: SquareIndex(lo),
            b: SquareIndex(hi),
        })
    }

    pub fn a(&self) -> SquareIndex {
        self.a
    }

    pub fn b(&self) -> SquareIndex {
        self.b
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a.0, self.b.0)
    }
}
