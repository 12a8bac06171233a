//! Exhaustive edge-subset enumeration.
//!
//! Every subset of the board's edges is removed in turn. A removal is valid
//! when each removed edge joins two squares that end up in different
//! connected components; valid removals are in bijection with divisions, the
//! removed set being exactly the division's cuts.

use std::collections::HashSet;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::board::{BoardShape, Edge};
use crate::division::Division;
use crate::error::{Error, Result};
use crate::unionfind::DisjointSets;

/// Default cap on the number of edges swept (2^26 subsets).
pub const DEFAULT_EDGE_LIMIT: usize = 26;

/// Hard ceiling: masks are `u64` and the sweep must stay finite in practice.
const MAX_EDGE_LIMIT: usize = 48;

/// Below this many subsets the sweep runs on one thread.
const PARALLEL_THRESHOLD: u64 = 1 << 14;

/// Components left after removing `removed`, or `None` if some removed edge
/// has both endpoints in one component.
pub fn is_valid_removal(shape: BoardShape, removed: &[Edge]) -> Result<Option<usize>> {
    let edges = shape.adjacency();
    let lookup: HashSet<Edge> = edges.iter().copied().collect();
    for e in removed {
        if !lookup.contains(e) {
            return Err(Error::NotAnEdge {
                a: e.a().0,
                b: e.b().0,
                rows: shape.rows(),
                cols: shape.cols(),
            });
        }
    }
    let removed: HashSet<Edge> = removed.iter().copied().collect();
    let mut ds = DisjointSets::new(shape.squares());
    for e in edges.iter().filter(|e| !removed.contains(e)) {
        ds.union(e.a().0, e.b().0);
    }
    if removed.iter().any(|e| ds.same(e.a().0, e.b().0)) {
        return Ok(None);
    }
    Ok(Some(ds.set_count()))
}

/// Power-set sweep over one board, guarded by an edge limit.
#[derive(Debug, Clone)]
pub struct BruteForce {
    shape: BoardShape,
    edges: Vec<(usize, usize)>,
}

impl BruteForce {
    pub fn new(shape: BoardShape, edge_limit: usize) -> Result<Self> {
        let edges = shape.edge_count();
        let limit = edge_limit.min(MAX_EDGE_LIMIT);
        if edges > limit {
            return Err(Error::EdgeLimitExceeded { edges, limit });
        }
        Ok(Self {
            shape,
            edges: shape
                .adjacency()
                .iter()
                .map(|e| (e.a().0, e.b().0))
                .collect(),
        })
    }

    pub fn with_default_limit(shape: BoardShape) -> Result<Self> {
        Self::new(shape, DEFAULT_EDGE_LIMIT)
    }

    pub fn shape(&self) -> BoardShape {
        self.shape
    }

    fn subset_count(&self) -> u64 {
        1u64 << self.edges.len()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        let max = self.shape.squares();
        if k == 0 || k > max {
            return Err(Error::PieceCountOutOfRange { k, max });
        }
        Ok(())
    }

    /// Piece count produced by removing the edges in `mask`, if valid.
    fn evaluate(&self, mask: u64, ds: &mut DisjointSets) -> Option<usize> {
        ds.reset();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                ds.union(a, b);
            }
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 && ds.same(a, b) {
                return None;
            }
        }
        Some(ds.set_count())
    }

    fn default_chunks(&self) -> usize {
        if self.subset_count() < PARALLEL_THRESHOLD {
            1
        } else {
            rayon::current_num_threads() * 8
        }
    }

    fn chunk_bounds(&self, chunks: usize) -> Vec<(u64, u64)> {
        let total = self.subset_count();
        let chunks = (chunks.max(1) as u64).min(total);
        (0..chunks)
            .map(|c| (total * c / chunks, total * (c + 1) / chunks))
            .collect()
    }

    /// Counts of divisions by number of pieces; index `k` holds `d_k`.
    pub fn counts_by_pieces(&self) -> Vec<u64> {
        self.counts_by_pieces_in_chunks(self.default_chunks())
    }

    /// Same as [`counts_by_pieces`](Self::counts_by_pieces) with the mask range
    /// split into `chunks` disjoint ranges swept concurrently.
    pub fn counts_by_pieces_in_chunks(&self, chunks: usize) -> Vec<u64> {
        let squares = self.shape.squares();
        self.chunk_bounds(chunks)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut ds = DisjointSets::new(squares);
                let mut counts = vec![0u64; squares + 1];
                for mask in lo..hi {
                    if let Some(k) = self.evaluate(mask, &mut ds) {
                        counts[k] += 1;
                    }
                }
                counts
            })
            .reduce(
                || vec![0u64; squares + 1],
                |mut acc, part| {
                    for (a, p) in acc.iter_mut().zip(part) {
                        *a += p;
                    }
                    acc
                },
            )
    }

    pub fn count(&self, k: usize) -> Result<BigUint> {
        self.check_k(k)?;
        Ok(BigUint::from(self.counts_by_pieces()[k]))
    }

    /// Every division into exactly `k` pieces, sorted by label array.
    pub fn divisions(&self, k: usize) -> Result<Vec<Division>> {
        self.check_k(k)?;
        let squares = self.shape.squares();
        let mut out: Vec<Division> = self
            .chunk_bounds(self.default_chunks())
            .into_par_iter()
            .flat_map_iter(|(lo, hi)| {
                let mut ds = DisjointSets::new(squares);
                let mut found = Vec::new();
                for mask in lo..hi {
                    if self.evaluate(mask, &mut ds) == Some(k) {
                        found.push(Division::from_canonical(self.shape, ds.labels()));
                    }
                }
                found
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Divisions into `k` pieces whose last-column end squares (top and
    /// bottom) lie in different pieces.
    pub fn separation_count(&self, k: usize) -> Result<BigUint> {
        Ok(BigUint::from(
            self.divisions(k)?
                .iter()
                .filter(|d| d.separates_last_column())
                .count(),
        ))
    }
}

pub fn enumerate_divisions(shape: BoardShape, k: usize) -> Result<Vec<Division>> {
    BruteForce::with_default_limit(shape)?.divisions(k)
}

pub fn brute_count(shape: BoardShape, k: usize) -> Result<BigUint> {
    BruteForce::with_default_limit(shape)?.count(k)
}

/// `s_k(n)` by enumeration on the `2 x n` board.
pub fn separation_count(n: usize, k: usize) -> Result<BigUint> {
    BruteForce::with_default_limit(BoardShape::ladder(n)?)?.separation_count(k)
}
