//! Exact `d_k(n)` and `s_k(n)` for the `2 x n` board from the column recursions
//!
//! ```text
//! d_k(n+1) = d_{k-2}(n) + 3 d_{k-1}(n) + d_k(n) + 2 s_k(n)
//! s_k(n+1) = d_{k-2}(n) + 2 d_{k-1}(n) + s_k(n)
//! ```
//!
//! anchored at `n = 1`. Both right-hand sides only look at piece counts
//! `<= k`, so truncating a row at `k_max` loses nothing below it.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::table::{Provenance, SequenceTable, Series};

/// `d_k(n)` and `s_k(n)` for one `n`, indexed by `k = 0..=k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRow {
    pub d: Vec<BigUint>,
    pub s: Vec<BigUint>,
}

impl LadderRow {
    pub fn k_max(&self) -> usize {
        self.d.len() - 1
    }

    /// `t_k(n) = d_k(n) - s_k(n)`: divisions keeping the last column together.
    pub fn together(&self, k: usize) -> BigUint {
        &self.d[k] - &self.s[k]
    }
}

/// The `n = 1` row: the single column is either whole or split in two.
pub fn base_vector(k_max: usize) -> LadderRow {
    let mut d = vec![BigUint::zero(); k_max + 1];
    let mut s = vec![BigUint::zero(); k_max + 1];
    if k_max >= 1 {
        d[1] = 1u32.into();
    }
    if k_max >= 2 {
        d[2] = 1u32.into();
        s[2] = 1u32.into();
    }
    LadderRow { d, s }
}

/// Advances one column.
pub fn step(row: &LadderRow) -> LadderRow {
    let len = row.d.len();
    let at = |v: &Vec<BigUint>, k: isize| -> BigUint {
        if k < 0 {
            BigUint::zero()
        } else {
            v[k as usize].clone()
        }
    };
    let mut d = Vec::with_capacity(len);
    let mut s = Vec::with_capacity(len);
    for k in 0..len as isize {
        let two_less = at(&row.d, k - 2);
        let one_less = at(&row.d, k - 1);
        let sk = &row.s[k as usize];
        d.push(&two_less + &one_less * 3u32 + &row.d[k as usize] + sk * 2u32);
        s.push(two_less + one_less * 2u32 + sk);
    }
    LadderRow { d, s }
}

/// Rows for `n = 1..=n_max`; element `i` is the row for `n = i + 1`.
pub fn ladder_rows(k_max: usize, n_max: usize) -> Vec<LadderRow> {
    let mut rows = Vec::with_capacity(n_max);
    if n_max == 0 {
        return rows;
    }
    rows.push(base_vector(k_max));
    while rows.len() < n_max {
        let next = step(rows.last().unwrap());
        rows.push(next);
    }
    rows
}

fn table(k_max: usize, n_max: usize, series: Series) -> SequenceTable {
    let mut t = SequenceTable::new(2, series);
    for (i, row) in ladder_rows(k_max, n_max).into_iter().enumerate() {
        let values = match series {
            Series::Divisions => row.d,
            Series::Separations => row.s,
        };
        for (k, v) in values.into_iter().enumerate().skip(1) {
            t.insert(i + 1, k, v, Provenance::Recursion)
                .expect("fresh table has no conflicts");
        }
    }
    t
}

/// `d_k(n)` for `1 <= n <= n_max`, `1 <= k <= k_max`.
pub fn d_table(k_max: usize, n_max: usize) -> SequenceTable {
    table(k_max, n_max, Series::Divisions)
}

/// `s_k(n)` for `1 <= n <= n_max`, `1 <= k <= k_max`.
pub fn s_table(k_max: usize, n_max: usize) -> SequenceTable {
    table(k_max, n_max, Series::Separations)
}
