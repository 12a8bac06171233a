//! Counting divisions up to rotation and reflection of the rectangle.
//!
//! The group is the order-4 symmetry group of a non-square rectangle, used
//! for every board including square ones.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::board::{BoardShape, SquareIndex};
use crate::brute::{BruteForce, DEFAULT_EDGE_LIMIT};
use crate::division::Division;
use crate::error::{Error, Result};
use crate::table::big_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Identity,
    /// Half turn about the centre.
    Rotate180,
    /// Reflection in the horizontal axis (top and bottom rows swap).
    MirrorHorizontal,
    /// Reflection in the vertical axis (left and right columns swap).
    MirrorVertical,
}

impl GroupElement {
    pub const ALL: [GroupElement; 4] = [
        GroupElement::Identity,
        GroupElement::Rotate180,
        GroupElement::MirrorHorizontal,
        GroupElement::MirrorVertical,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            GroupElement::Identity => "e",
            GroupElement::Rotate180 => "r180",
            GroupElement::MirrorHorizontal => "mH",
            GroupElement::MirrorVertical => "mV",
        }
    }

    /// Group product `self ∘ other` (apply `other` first).
    pub fn compose(self, other: GroupElement) -> GroupElement {
        use GroupElement::*;
        match (self, other) {
            (Identity, g) | (g, Identity) => g,
            (a, b) if a == b => Identity,
            (Rotate180, MirrorHorizontal) | (MirrorHorizontal, Rotate180) => MirrorVertical,
            (Rotate180, MirrorVertical) | (MirrorVertical, Rotate180) => MirrorHorizontal,
            _ => Rotate180,
        }
    }

    pub fn map_square(&self, shape: &BoardShape, square: SquareIndex) -> SquareIndex {
        let (r, c) = shape.position(square);
        let (m, n) = (shape.rows(), shape.cols());
        let (r, c) = match self {
            GroupElement::Identity => (r, c),
            GroupElement::Rotate180 => (m - 1 - r, n - 1 - c),
            GroupElement::MirrorHorizontal => (m - 1 - r, c),
            GroupElement::MirrorVertical => (r, n - 1 - c),
        };
        shape.square(r, c)
    }

    /// `perm[i]` is the image of square `i`.
    pub fn permutation(&self, shape: &BoardShape) -> Vec<usize> {
        (0..shape.squares())
            .map(|i| self.map_square(shape, SquareIndex(i)).0)
            .collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Image of a division under a board symmetry, re-canonicalized.
pub fn apply_isometry(division: &Division, g: GroupElement) -> Division {
    division.permuted(&g.permutation(&division.shape()))
}

fn fixed_in(divisions: &[Division], g: GroupElement) -> BigUint {
    if g == GroupElement::Identity {
        return BigUint::from(divisions.len());
    }
    let perm = g.permutation(&divisions[0].shape());
    BigUint::from(
        divisions
            .iter()
            .filter(|d| d.permuted(&perm) == **d)
            .count(),
    )
}

/// Divisions of `shape` into `k` pieces left unchanged by `g`.
pub fn fixed_count(shape: BoardShape, k: usize, g: GroupElement) -> Result<BigUint> {
    let divisions = BruteForce::new(shape, DEFAULT_EDGE_LIMIT)?.divisions(k)?;
    if divisions.is_empty() {
        return Ok(BigUint::zero());
    }
    Ok(fixed_in(&divisions, g))
}

/// Number of orbits found by explicitly grouping each division with its images.
pub fn direct_orbit_count(divisions: &[Division]) -> usize {
    let mut seen: HashSet<&Division> = HashSet::new();
    let mut orbits = 0;
    let images: Vec<Vec<Division>> = divisions
        .iter()
        .map(|d| {
            GroupElement::ALL
                .iter()
                .map(|&g| apply_isometry(d, g))
                .collect()
        })
        .collect();
    let members: HashSet<&Division> = divisions.iter().collect();
    for (d, imgs) in divisions.iter().zip(&images) {
        if seen.contains(d) {
            continue;
        }
        orbits += 1;
        for img in imgs {
            if let Some(member) = members.get(img) {
                seen.insert(member);
            }
        }
    }
    orbits
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCount {
    pub shape: BoardShape,
    pub k: usize,
    /// All divisions into `k` pieces.
    pub total: BigUint,
    /// Burnside average of the fixed counts.
    pub up_to_isometry: BigUint,
    /// Fixed counts in the order of [`GroupElement::ALL`].
    pub fixed: Vec<(GroupElement, BigUint)>,
}

impl OrbitCount {
    pub fn fixed_by(&self, g: GroupElement) -> &BigUint {
        &self
            .fixed
            .iter()
            .find(|(h, _)| *h == g)
            .expect("all elements present")
            .1
    }

    pub fn to_json(&self) -> Value {
        let fixed: serde_json::Map<String, Value> = self
            .fixed
            .iter()
            .map(|(g, c)| (g.key().to_string(), big_number(c)))
            .collect();
        json!({
            "m": self.shape.rows(),
            "n": self.shape.cols(),
            "k": self.k,
            "fixed": fixed,
            "orbits": big_number(&self.up_to_isometry),
        })
    }
}

/// Burnside count of divisions up to isometry, checked against direct orbit
/// partitioning of the same enumeration.
pub fn orbit_count(shape: BoardShape, k: usize) -> Result<OrbitCount> {
    orbit_count_with_limit(shape, k, DEFAULT_EDGE_LIMIT)
}

pub fn orbit_count_with_limit(
    shape: BoardShape,
    k: usize,
    edge_limit: usize,
) -> Result<OrbitCount> {
    let divisions = BruteForce::new(shape, edge_limit)?.divisions(k)?;
    let fixed: Vec<(GroupElement, BigUint)> = GroupElement::ALL
        .par_iter()
        .map(|&g| {
            let c = if divisions.is_empty() {
                BigUint::zero()
            } else {
                fixed_in(&divisions, g)
            };
            (g, c)
        })
        .collect();
    let sum: BigUint = fixed.iter().map(|(_, c)| c).sum();
    let order = BigUint::from(GroupElement::ALL.len());
    let (orbits, rem) = sum.div_rem(&order);
    if !rem.is_zero() {
        return Err(Error::NonIntegralOrbitCount {
            sum: sum.to_string(),
            order: GroupElement::ALL.len(),
        });
    }
    let direct = BigUint::from(direct_orbit_count(&divisions));
    if direct != orbits {
        return Err(Error::Disagreement {
            context: format!("orbits of {shape} into {k} pieces"),
            left: format!("{orbits} (burnside)"),
            right: format!("{direct} (direct orbit partition)"),
        });
    }
    Ok(OrbitCount {
        shape,
        k,
        total: BigUint::from(divisions.len()),
        up_to_isometry: orbits,
        fixed,
    })
}

/// Two-piece divisions of the `2 x n` board up to isometry: `n (n + 1) / 2`.
pub fn i2_closed_form(n: usize) -> BigUint {
    let n = BigUint::from(n);
    &n * (&n + 1u32) / 2u32
}
