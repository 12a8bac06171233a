//! Cross-checks between engines, and against an enumerator that shares no
//! code with the library: every set partition of the squares, filtered to
//! those whose blocks are connected.

use std::collections::{BTreeSet, VecDeque};

use gridiv_core::closedform::{fit_with_points, verify_recursion_identity, ClosedForms};
use gridiv_core::recurrence::ladder_rows;
use gridiv_core::symmetry::{direct_orbit_count, orbit_count_with_limit};
use gridiv_core::{
    brute_count, dp_count, enumerate_divisions, BoardShape, Error, Polynomial, Rational,
};
use num_bigint::BigUint;

/// All restricted-growth strings of length `len`.
fn set_partitions(len: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, max: usize, len: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for l in 0..=max + 1 {
            prefix.push(l);
            grow(prefix, max.max(l), len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 {
        let mut prefix = vec![0];
        grow(&mut prefix, 0, len, &mut out);
    }
    out
}

/// Column-major square `i` sits at row `i % m`, column `i / m`.
fn blocks_connected(m: usize, labels: &[usize]) -> bool {
    let touching = |a: usize, b: usize| {
        let (ra, ca, rb, cb) = (a % m, a / m, b % m, b / m);
        ra.abs_diff(rb) + ca.abs_diff(cb) == 1
    };
    let pieces = labels.iter().max().unwrap() + 1;
    (0..pieces).all(|p| {
        let members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == p).collect();
        let mut seen = BTreeSet::from([members[0]]);
        let mut queue = VecDeque::from([members[0]]);
        while let Some(a) = queue.pop_front() {
            for &b in &members {
                if touching(a, b) && seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        seen.len() == members.len()
    })
}

fn connected_partitions(m: usize, n: usize, k: usize) -> BTreeSet<Vec<usize>> {
    set_partitions(m * n)
        .into_iter()
        .filter(|p| p.iter().max().unwrap() + 1 == k && blocks_connected(m, p))
        .collect()
}

#[test]
#[allow(clippy::needless_range_loop)]
fn brute_force_lists_exactly_the_connected_partitions() {
    for m in 1..=4 {
        for n in 1..=8 / m {
            let shape = BoardShape::new(m, n).unwrap();
            let dp = dp_count(shape).unwrap();
            for k in 1..=m * n {
                let oracle = connected_partitions(m, n, k);
                let listed: BTreeSet<Vec<usize>> = enumerate_divisions(shape, k)
                    .unwrap()
                    .iter()
                    .map(|d| d.labels().to_vec())
                    .collect();
                assert_eq!(listed, oracle, "{m}x{n} k={k}");
                assert_eq!(dp[k], BigUint::from(oracle.len()), "dp {m}x{n} k={k}");
            }
        }
    }
}

#[test]
fn engines_agree_up_to_twelve_squares() {
    for m in 1..=12 {
        for n in 1..=12 / m {
            let shape = BoardShape::new(m, n).unwrap();
            let dp = dp_count(shape).ok();
            let rec = (m == 2).then(|| ladder_rows(2 * n, n).pop().unwrap().d);
            for k in 1..=m * n {
                let brute = brute_count(shape, k).unwrap();
                if let Some(dp) = &dp {
                    assert_eq!(dp[k], brute, "dp {shape} k={k}");
                }
                if let Some(rec) = &rec {
                    assert_eq!(rec[k], brute, "recursion {shape} k={k}");
                }
            }
        }
    }
}

#[test]
fn dp_reaches_past_the_brute_force_guard() {
    for (m, n) in [(3, 9), (4, 7), (5, 6), (8, 4)] {
        let shape = BoardShape::new(m, n).unwrap();
        assert!(matches!(
            brute_count(shape, 2),
            Err(Error::EdgeLimitExceeded { .. })
        ));
        let dp = dp_count(shape).unwrap();
        if n <= 8 {
            assert_eq!(dp, dp_count(shape.transposed()).unwrap(), "{shape}");
        }
        assert_eq!(dp[1], BigUint::from(1u32));
        assert_eq!(dp[m * n], BigUint::from(1u32));
    }
}

#[test]
fn closed_forms_match_the_recursion_table() {
    let forms = ClosedForms::fit_up_to(10).unwrap();
    let rows = ladder_rows(10, 20);
    for f in forms.families() {
        assert!(f.verified.all(), "k={}", f.k);
        for (i, row) in rows.iter().enumerate() {
            let n = i as i64 + 1;
            let want = |v: &BigUint| Rational::from_integer(v.clone().into());
            assert_eq!(f.d_poly.eval_int(n), want(&row.d[f.k]), "d_{}({n})", f.k);
            assert_eq!(f.s_poly.eval_int(n), want(&row.s[f.k]), "s_{}({n})", f.k);
        }
    }
}

#[test]
fn burnside_matches_direct_orbits_for_small_boards() {
    for m in 1..=4 {
        for n in 1..=8 {
            let shape = BoardShape::new(m, n).unwrap();
            if shape.edge_count() > 14 {
                continue;
            }
            for k in 1..=shape.squares() {
                let report = orbit_count_with_limit(shape, k, 14).unwrap();
                let direct = direct_orbit_count(&enumerate_divisions(shape, k).unwrap());
                assert_eq!(
                    report.up_to_isometry,
                    BigUint::from(direct),
                    "{shape} k={k}"
                );
            }
        }
    }
}

#[test]
fn perturbed_inputs_are_caught() {
    let forms = ClosedForms::fit_up_to(6).unwrap();
    let (f4, f5, f6) = (
        forms.family(4).unwrap(),
        forms.family(5).unwrap(),
        forms.family(6).unwrap(),
    );
    assert!(verify_recursion_identity(f4, f5, f6).holds());

    // Any single coefficient nudged by 1/1000, other than the constant of d,
    // breaks the identity.
    for power in 0..=f6.s_poly.degree().unwrap() {
        let mut bad = f6.clone();
        bad.s_poly =
            &bad.s_poly + &Polynomial::monomial(Rational::new(1.into(), 1000.into()), power);
        assert!(
            !verify_recursion_identity(f4, f5, &bad).holds(),
            "s power {power}"
        );
    }
    for power in 1..=f6.d_poly.degree().unwrap() {
        let mut bad = f6.clone();
        bad.d_poly =
            &bad.d_poly + &Polynomial::monomial(Rational::new(1.into(), 1000.into()), power);
        assert!(
            !verify_recursion_identity(f4, f5, &bad).holds(),
            "d power {power}"
        );
    }

    // A single corrupted table value makes the fit fail its spot check.
    let mut rows = ladder_rows(6, 21);
    rows[15].d[6] += 1u32;
    assert!(matches!(
        fit_with_points(6, 11, 10, &rows),
        Err(Error::Fit { k: 6, n: 16, .. })
    ));
}
