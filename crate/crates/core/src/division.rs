//! Divisions of a board into connected pieces, stored as canonical label arrays.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::board::{BoardShape, Edge, SquareIndex};
use crate::error::{Error, Result};
use crate::unionfind::DisjointSets;

/// Relabels `labels` so that pieces are numbered by first appearance.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    labels
        .iter()
        .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
            Some(&(_, new)) => new,
            None => {
                let new = seen.len();
                seen.push((l, new));
                new
            }
        })
        .collect()
}

/// A partition of every square into nonempty connected pieces.
///
/// Labels are always canonical, so two `Division`s compare equal exactly when
/// they describe the same set partition. Ordering is lexicographic on the
/// label array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Division {
    shape: BoardShape,
    labels: Vec<usize>,
}

impl Division {
    /// Validates and canonicalizes an arbitrary labelling.
    pub fn from_labels(shape: BoardShape, labels: &[usize]) -> Result<Self> {
        if labels.len() != shape.squares() {
            return Err(Error::Parse(format!(
                "expected {} labels for a {shape} board, got {}",
                shape.squares(),
                labels.len()
            )));
        }
        let labels = canonical_labels(labels);
        let pieces = labels.iter().max().map_or(0, |m| m + 1);

        let mut ds = DisjointSets::new(labels.len());
        for e in shape.adjacency() {
            if labels[e.a().0] == labels[e.b().0] {
                ds.union(e.a().0, e.b().0);
            }
        }
        if ds.set_count() != pieces {
            return Err(Error::Parse(format!(
                "labelling {labels:?} has a disconnected piece"
            )));
        }
        Ok(Self { shape, labels })
    }

    /// Trusted constructor for labels that are already canonical and connected.
    pub(crate) fn from_canonical(shape: BoardShape, labels: Vec<usize>) -> Self {
        debug_assert_eq!(canonical_labels(&labels), labels);
        Self { shape, labels }
    }

    pub fn shape(&self) -> BoardShape {
        self.shape
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, square: SquareIndex) -> usize {
        self.labels[square.0]
    }

    pub fn piece_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Squares of each piece, in label order.
    pub fn pieces(&self) -> Vec<Vec<SquareIndex>> {
        let mut pieces = vec![Vec::new(); self.piece_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            pieces[l].push(SquareIndex(i));
        }
        pieces
    }

    /// Adjacent pairs lying in different pieces.
    pub fn cut_set(&self) -> CutSet {
        CutSet {
            edges: self
                .shape
                .adjacency()
                .into_iter()
                .filter(|e| self.labels[e.a().0] != self.labels[e.b().0])
                .collect(),
        }
    }

    /// Whether the two squares of the last column lie in different pieces
    /// (only meaningful on two-row boards, where it defines the `s` family).
    pub fn separates_last_column(&self) -> bool {
        let n = self.labels.len();
        let rows = self.shape.rows();
        self.labels[n - rows] != self.labels[n - 1]
    }

    /// Applies a permutation of squares: square `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut moved = vec![0; self.labels.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            moved[perm[i]] = l;
        }
        Self {
            shape: self.shape,
            labels: canonical_labels(&moved),
        }
    }
}

/// The cuts of a division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub edges: BTreeSet<Edge>,
}

/// Fixture format: a `m n k` header line, then one comma-separated label
/// array per division, LF-terminated.
pub fn write_divisions(shape: BoardShape, k: usize, divisions: &[Division]) -> String {
    let mut out = format!("{} {} {}\n", shape.rows(), shape.cols(), k);
    for d in divisions {
        let mut first = true;
        for l in &d.labels {
            if !first {
                out.push(',');
            }
            first = false;
            write!(out, "{l}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_divisions(text: &str) -> Result<(BoardShape, usize, Vec<Division>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty division file".into()))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad header {header:?}")))
        })
        .collect::<Result<_>>()?;
    let [m, n, k] = fields[..] else {
        return Err(Error::Parse(format!(
            "header must be `m n k`, got {header:?}"
        )));
    };
    let shape = BoardShape::new(m, n)?;
    let mut divisions = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let labels: Vec<usize> = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad label in {line:?}")))
            })
            .collect::<Result<_>>()?;
        let d = Division::from_labels(shape, &labels)?;
        if d.piece_count() != k {
            return Err(Error::Parse(format!(
                "division {line:?} has {} pieces, header says {k}",
                d.piece_count()
            )));
        }
        divisions.push(d);
    }
    Ok((shape, k, divisions))
}
