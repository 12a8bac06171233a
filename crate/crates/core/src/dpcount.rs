//! Column-profile dynamic programming over `m x n` boards.
//!
//! Squares are added one at a time, column by column, top to bottom. The
//! frontier is the last processed square of every row. Each frontier square
//! carries two labels:
//!
//! * the piece it belongs to in the final division, and
//! * the connected component of that piece's processed squares it lies in.
//!
//! A piece may be split into several components while its squares are still
//! being placed, but once one of its components leaves the frontier that
//! component can never grow again, so it must be the whole piece. Counts are
//! kept per profile as a vector indexed by the number of pieces already
//! sealed off the frontier.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::board::BoardShape;
use crate::error::{Error, Result};
use crate::table::{Provenance, SequenceTable, Series};

/// Largest supported board height.
pub const MAX_ROWS: usize = 8;

const ABSENT: u8 = u8::MAX;
const FRESH: u8 = u8::MAX - 1;

/// Frontier state: piece and component labels of the last square in every
/// row, both in restricted-growth form. Rows not yet reached in the first
/// column are absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    rows: u8,
    pieces: [u8; MAX_ROWS],
    comps: [u8; MAX_ROWS],
}

impl Profile {
    fn empty(rows: usize) -> Self {
        Self {
            rows: rows as u8,
            pieces: [ABSENT; MAX_ROWS],
            comps: [ABSENT; MAX_ROWS],
        }
    }

    pub fn pieces(&self) -> &[u8] {
        &self.pieces[..self.rows as usize]
    }

    pub fn components(&self) -> &[u8] {
        &self.comps[..self.rows as usize]
    }

    /// Number of distinct pieces touching the frontier.
    pub fn open_pieces(&self) -> usize {
        self.pieces()
            .iter()
            .filter(|&&p| p != ABSENT)
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Every open piece is a single connected component.
    pub fn is_complete(&self) -> bool {
        let rows = self.rows as usize;
        (0..rows).all(|i| {
            (0..rows).all(|j| self.pieces[i] != self.pieces[j] || self.comps[i] == self.comps[j])
        })
    }

    fn canonical(mut self) -> Self {
        for labels in [&mut self.pieces, &mut self.comps] {
            let mut map: [u8; 256] = [ABSENT; 256];
            let mut next = 0u8;
            for l in labels.iter_mut().filter(|l| **l != ABSENT) {
                if map[*l as usize] == ABSENT {
                    map[*l as usize] = next;
                    next += 1;
                }
                *l = map[*l as usize];
            }
        }
        self
    }

    /// Successor profiles after placing the square in `row` of the next
    /// column to be filled, with the number of pieces sealed (0 or 1).
    fn successors(&self, row: usize) -> Vec<(Profile, u8)> {
        let rows = self.rows as usize;
        let up = (row > 0).then(|| row - 1);
        let left = (self.pieces[row] != ABSENT).then_some(row);

        let mut choices: Vec<u8> = self
            .pieces()
            .iter()
            .copied()
            .filter(|&p| p != ABSENT)
            .collect();
        choices.sort_unstable();
        choices.dedup();
        choices.push(FRESH);

        let mut out = Vec::with_capacity(choices.len());
        for piece in choices {
            let mut next = *self;
            let joins_up = up.is_some_and(|u| self.pieces[u] == piece);
            let joins_left = left.is_some_and(|l| self.pieces[l] == piece);

            let comp = match (joins_up, joins_left) {
                (true, true) => {
                    let keep = self.comps[row - 1];
                    let gone = self.comps[row];
                    for c in next.comps[..rows].iter_mut() {
                        if *c == gone {
                            *c = keep;
                        }
                    }
                    keep
                }
                (true, false) => self.comps[row - 1],
                (false, true) => self.comps[row],
                (false, false) => FRESH,
            };

            next.pieces[row] = piece;
            next.comps[row] = comp;

            let mut sealed = 0;
            if left.is_some() && !joins_left {
                let old_piece = self.pieces[row];
                let old_comp = self.comps[row];
                let comp_survives = (0..rows).any(|i| i != row && next.comps[i] == old_comp);
                if !comp_survives {
                    let piece_survives = (0..rows).any(|i| next.pieces[i] == old_piece);
                    if piece_survives {
                        continue;
                    }
                    sealed = 1;
                }
            }
            out.push((next.canonical(), sealed));
        }
        out
    }
}

/// Totals after the last square of column `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnTally {
    pub n: usize,
    /// Index `k`: divisions of the `rows x n` board into `k` pieces.
    pub divisions: Vec<BigUint>,
    /// Same, restricted to divisions whose top and bottom squares in the
    /// last column lie in different pieces.
    pub separations: Vec<BigUint>,
}

type Transitions = Arc<Vec<(Profile, u8)>>;

/// Profile DP for one board height. Transitions are memoized per
/// `(profile, row)` and reused for every column.
#[derive(Debug)]
pub struct ProfileCounter {
    rows: usize,
    cache: HashMap<(Profile, usize), Transitions>,
}

impl ProfileCounter {
    pub fn new(rows: usize) -> Result<Self> {
        if rows == 0 {
            return Err(Error::InvalidShape { rows, cols: 1 });
        }
        if rows > MAX_ROWS {
            return Err(Error::TooManyRows {
                rows,
                limit: MAX_ROWS,
            });
        }
        Ok(Self {
            rows,
            cache: HashMap::new(),
        })
    }

    fn successors(&mut self, profile: &Profile, row: usize) -> Transitions {
        self.cache
            .entry((*profile, row))
            .or_insert_with(|| Arc::new(profile.successors(row)))
            .clone()
    }

    /// Number of distinct cached transitions so far.
    pub fn cached_transitions(&self) -> usize {
        self.cache.len()
    }

    /// Runs `cols` columns and returns the tally after each one.
    pub fn sweep(&mut self, cols: usize) -> Vec<ColumnTally> {
        let rows = self.rows;
        let mut states: HashMap<Profile, Vec<BigUint>> = HashMap::new();
        states.insert(Profile::empty(rows), vec![BigUint::from(1u32)]);
        let mut tallies = Vec::with_capacity(cols);

        for col in 0..cols {
            for row in 0..rows {
                let mut next: HashMap<Profile, Vec<BigUint>> =
                    HashMap::with_capacity(states.len() * 2);
                for (profile, counts) in &states {
                    for &(succ, sealed) in self.successors(profile, row).iter() {
                        let slot = next.entry(succ).or_default();
                        let need = counts.len() + sealed as usize;
                        if slot.len() < need {
                            slot.resize(need, BigUint::zero());
                        }
                        for (dst, src) in slot[sealed as usize..].iter_mut().zip(counts) {
                            *dst += src;
                        }
                    }
                }
                states = next;
            }
            tallies.push(self.tally(col + 1, &states));
        }
        tallies
    }

    fn tally(&self, n: usize, states: &HashMap<Profile, Vec<BigUint>>) -> ColumnTally {
        let squares = self.rows * n;
        let mut divisions = vec![BigUint::zero(); squares + 1];
        let mut separations = vec![BigUint::zero(); squares + 1];
        for (profile, counts) in states {
            if !profile.is_complete() {
                continue;
            }
            let open = profile.open_pieces();
            let pieces = profile.pieces();
            let separated = pieces[0] != pieces[self.rows - 1];
            for (closed, c) in counts.iter().enumerate() {
                divisions[closed + open] += c;
                if separated {
                    separations[closed + open] += c;
                }
            }
        }
        ColumnTally {
            n,
            divisions,
            separations,
        }
    }
}

/// Divisions of `shape` into every piece count; index `k` holds the count
/// for `k` pieces (index 0 is always zero).
pub fn dp_count(shape: BoardShape) -> Result<Vec<BigUint>> {
    let mut counter = ProfileCounter::new(shape.rows())?;
    Ok(counter
        .sweep(shape.cols())
        .pop()
        .expect("boards have at least one column")
        .divisions)
}

/// `s_k(n)` on the `2 x n` board.
pub fn dp_separation_count(n: usize, k: usize) -> Result<BigUint> {
    let shape = BoardShape::ladder(n)?;
    let mut counter = ProfileCounter::new(2)?;
    let tally = counter.sweep(shape.cols()).pop().expect("n >= 1");
    Ok(tally.separations.get(k).cloned().unwrap_or_default())
}

/// `d` and `s` tables for `rows x n`, `1 <= n <= n_max`, `1 <= k <= k_max`,
/// from a single sweep.
pub fn dp_tables(
    rows: usize,
    n_max: usize,
    k_max: usize,
) -> Result<(SequenceTable, SequenceTable)> {
    let mut counter = ProfileCounter::new(rows)?;
    let mut d = SequenceTable::new(rows, Series::Divisions);
    let mut s = SequenceTable::new(rows, Series::Separations);
    for tally in counter.sweep(n_max) {
        for k in 1..=k_max {
            let get = |v: &Vec<BigUint>| v.get(k).cloned().unwrap_or_default();
            d.insert(tally.n, k, get(&tally.divisions), Provenance::Dp)?;
            s.insert(tally.n, k, get(&tally.separations), Provenance::Dp)?;
        }
    }
    Ok((d, s))
}
