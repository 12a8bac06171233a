//! `(n, k) -> count` tables with per-entry provenance and CSV/JSON export.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Number, Value};

use crate::error::{Error, Result};

/// Which engine produced a table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Recursion,
    Brute,
    Dp,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Recursion => "recursion",
            Provenance::Brute => "brute",
            Provenance::Dp => "dp",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The counted family: all divisions (`d`) or those separating the last
/// column (`s`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    Divisions,
    Separations,
}

impl Series {
    pub fn symbol(&self) -> &'static str {
        match self {
            Series::Divisions => "d",
            Series::Separations => "s",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub count: BigUint,
    /// Engines that produced this value, sorted and deduplicated.
    pub sources: Vec<Provenance>,
}

/// Counts for one board height, indexed densely by column count `n` and
/// sparsely by piece count `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    rows_per_board: usize,
    series: Series,
    rows: Vec<BTreeMap<usize, Entry>>,
}

impl SequenceTable {
    pub fn new(rows_per_board: usize, series: Series) -> Self {
        Self {
            rows_per_board,
            series,
            rows: Vec::new(),
        }
    }

    pub fn board_rows(&self) -> usize {
        self.rows_per_board
    }

    pub fn series(&self) -> Series {
        self.series
    }

    /// Records a count. A second value for the same cell must agree with the
    /// first; agreeing values just add their provenance.
    pub fn insert(&mut self, n: usize, k: usize, count: BigUint, source: Provenance) -> Result<()> {
        if self.rows.len() <= n {
            self.rows.resize_with(n + 1, BTreeMap::new);
        }
        match self.rows[n].get_mut(&k) {
            Some(entry) if entry.count != count => Err(Error::TableConflict {
                n,
                k,
                existing: format!("{} ({})", entry.count, join_sources(&entry.sources)),
                incoming: format!("{count} ({source})"),
            }),
            Some(entry) => {
                if let Err(pos) = entry.sources.binary_search(&source) {
                    entry.sources.insert(pos, source);
                }
                Ok(())
            }
            None => {
                self.rows[n].insert(
                    k,
                    Entry {
                        count,
                        sources: vec![source],
                    },
                );
                Ok(())
            }
        }
    }

    /// Folds every entry of `other` into `self`, failing on the first disagreement.
    pub fn merge(&mut self, other: &SequenceTable) -> Result<()> {
        for (n, k, entry) in other.entries() {
            for &src in &entry.sources {
                self.insert(n, k, entry.count.clone(), src)?;
            }
        }
        Ok(())
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.entry(n, k).map(|e| &e.count)
    }

    pub fn entry(&self, n: usize, k: usize) -> Option<&Entry> {
        self.rows.get(n).and_then(|r| r.get(&k))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entries in `(n, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Entry)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().map(move |(&k, e)| (n, k, e)))
    }

    /// Structural facts every division table must satisfy: one way to keep
    /// the board whole, none to use more pieces than squares, exactly one to
    /// use all of them. Returns a description of each violated cell.
    pub fn violations(&self) -> Vec<String> {
        if self.series != Series::Divisions {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (n, k, e) in self.entries() {
            let squares = self.rows_per_board * n;
            let expected = if k == 1 || k == squares {
                Some(BigUint::one())
            } else if k > squares {
                Some(BigUint::zero())
            } else {
                None
            };
            if let Some(want) = expected {
                if e.count != want {
                    out.push(format!("n={n} k={k}: got {}, expected {want}", e.count));
                }
            }
        }
        out
    }

    /// `n,k,count` with one line per entry, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,count\n");
        for (n, k, e) in self.entries() {
            out.push_str(&format!("{n},{k},{}\n", e.count));
        }
        out
    }

    /// Grid layout with one row per `n` and one column per `k`, headed
    /// `n,k1,k2,...`. Absent cells are empty.
    pub fn to_grid_csv(&self) -> String {
        let ks = self.piece_counts();
        let mut out = String::from("n");
        for k in &ks {
            out.push_str(&format!(",{k}"));
        }
        out.push('\n');
        for (n, row) in self.rows.iter().enumerate().filter(|(_, r)| !r.is_empty()) {
            out.push_str(&n.to_string());
            for k in &ks {
                out.push(',');
                if let Some(e) = row.get(k) {
                    out.push_str(&e.count.to_string());
                }
            }
            out.push('\n');
        }
        out
    }

    /// Every `k` present in some row, ascending.
    pub fn piece_counts(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.rows.iter().flat_map(|r| r.keys().copied()).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn from_csv(
        text: &str,
        rows_per_board: usize,
        series: Series,
        source: Provenance,
    ) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some("n,k,count") {
            return Err(Error::Parse("missing `n,k,count` header".into()));
        }
        let mut table = Self::new(rows_per_board, series);
        for line in lines.filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split(',').collect();
            let [n, k, c] = fields[..] else {
                return Err(Error::Parse(format!("bad row {line:?}")));
            };
            let bad = || Error::Parse(format!("bad row {line:?}"));
            table.insert(
                n.parse().map_err(|_| bad())?,
                k.parse().map_err(|_| bad())?,
                c.parse().map_err(|_| bad())?,
                source,
            )?;
        }
        Ok(table)
    }

    /// Grid layout: one row per `n`, one column per `k` seen anywhere in the
    /// table; absent cells are `null`.
    pub fn to_json(&self) -> Value {
        let ks = self.piece_counts();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(n, r)| {
                let counts: Vec<Value> = ks
                    .iter()
                    .map(|k| r.get(k).map_or(Value::Null, |e| big_number(&e.count)))
                    .collect();
                let provenance: Vec<Value> = ks
                    .iter()
                    .map(|k| {
                        r.get(k)
                            .map_or(Value::Null, |e| Value::String(join_sources(&e.sources)))
                    })
                    .collect();
                json!({ "n": n, "counts": counts, "provenance": provenance })
            })
            .collect();
        json!({
            "series": self.series.symbol(),
            "m": self.rows_per_board,
            "k": ks,
            "rows": rows,
        })
    }
}

fn join_sources(sources: &[Provenance]) -> String {
    sources
        .iter()
        .map(Provenance::as_str)
        .collect::<Vec<_>>()
        .join("+")
}

/// Lossless JSON number for an arbitrary-size integer.
pub fn big_number<T: fmt::Display>(value: &T) -> Value {
    Value::Number(Number::from_str(&value.to_string()).expect("integers are valid JSON numbers"))
}
