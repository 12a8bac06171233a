use clap::ValueEnum;
use gridiv_core::dpcount::{ProfileCounter, MAX_ROWS};
use gridiv_core::recurrence::ladder_rows;
use gridiv_core::{BoardShape, BruteForce};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::failure::Failure;
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Profile DP up to eight rows, brute force beyond (within the edge limit).
    Auto,
    Brute,
    /// Two-row column recursion; requires `--m 2`.
    Recursion,
    Dp,
}

impl Engine {
    pub fn name(&self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::Brute => "brute",
            Engine::Recursion => "recursion",
            Engine::Dp => "dp",
        }
    }

    /// The concrete engine used for boards with `m` rows.
    pub fn resolve(self, m: usize) -> Result<Engine, Failure> {
        match self {
            Engine::Auto if m <= MAX_ROWS => Ok(Engine::Dp),
            Engine::Auto => Ok(Engine::Brute),
            Engine::Recursion if m != 2 => Err(Failure::input(format!(
                "the recursion engine needs m = 2, got m = {m}"
            ))),
            other => Ok(other),
        }
    }
}

/// Counts for one `m x n` board, indexed by `k` (entry 0 unused).
#[derive(Debug, Clone)]
pub struct Column {
    pub n: usize,
    pub divisions: Vec<BigUint>,
    /// Filled only when requested.
    pub separations: Vec<BigUint>,
}

impl Column {
    pub fn division(&self, k: usize) -> BigUint {
        self.divisions.get(k).cloned().unwrap_or_default()
    }

    pub fn separation(&self, k: usize) -> BigUint {
        self.separations.get(k).cloned().unwrap_or_default()
    }
}

/// Columns `ns` of the `m`-row board. Separation counts are computed for
/// `k <= k_max` when `separations` is set.
pub fn columns(
    m: usize,
    ns: Span,
    engine: Engine,
    edge_limit: usize,
    separations: bool,
    k_max: usize,
) -> Result<Vec<Column>, Failure> {
    match engine.resolve(m)? {
        Engine::Dp => {
            let mut counter = ProfileCounter::new(m)?;
            Ok(counter
                .sweep(ns.hi)
                .into_iter()
                .filter(|t| t.n >= ns.lo)
                .map(|t| Column {
                    n: t.n,
                    divisions: t.divisions,
                    separations: if separations {
                        t.separations
                    } else {
                        Vec::new()
                    },
                })
                .collect())
        }
        Engine::Recursion => Ok(ladder_rows(2 * ns.hi, ns.hi)
            .into_iter()
            .enumerate()
            .map(|(i, row)| Column {
                n: i + 1,
                divisions: row.d,
                separations: if separations { row.s } else { Vec::new() },
            })
            .filter(|c| c.n >= ns.lo)
            .collect()),
        Engine::Brute => {
            let boards: Vec<BruteForce> = ns
                .iter()
                .map(|n| BruteForce::new(BoardShape::new(m, n)?, edge_limit))
                .collect::<Result<_, _>>()?;
            boards
                .par_iter()
                .map(|brute| brute_column(brute, separations, k_max))
                .collect()
        }
        Engine::Auto => unreachable!("resolved above"),
    }
}

fn brute_column(brute: &BruteForce, separations: bool, k_max: usize) -> Result<Column, Failure> {
    let shape = brute.shape();
    let divisions: Vec<BigUint> = brute
        .counts_by_pieces()
        .into_iter()
        .map(BigUint::from)
        .collect();
    let mut seps = Vec::new();
    if separations {
        seps.push(BigUint::default());
        for k in 1..=k_max.min(shape.squares()) {
            seps.push(brute.separation_count(k)?);
        }
    }
    Ok(Column {
        n: shape.cols(),
        divisions,
        separations: seps,
    })
}
