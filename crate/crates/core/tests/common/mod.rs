#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use orbitflip::geometry::{orientation, Orientation};
use orbitflip::{Edge, PointSet};

/// One representative of every order type of 4, 5 and 6 points in general
/// position, with no four points on a circle.
pub const SUITE: &[&[(i64, i64)]] = &[
    &[(2, 9), (12, 12), (1, 4), (1, 7)],
    &[(12, 7), (7, 10), (6, 12), (3, 1)],
    &[(2, 12), (12, 5), (5, 0), (0, 4), (3, 1)],
    &[(3, 12), (11, 6), (7, 2), (5, 11), (7, 5)],
    &[(0, 11), (1, 2), (6, 10), (1, 7), (2, 4)],
    &[(2, 1), (2, 12), (5, 4), (3, 1), (10, 12), (1, 9)],
    &[(0, 0), (12, 12), (4, 8), (11, 7), (1, 4), (9, 7)],
    &[(12, 8), (8, 2), (10, 11), (4, 4), (7, 4), (11, 12)],
    &[(10, 9), (2, 2), (8, 9), (8, 7), (5, 0), (10, 8)],
    &[(9, 12), (9, 7), (0, 10), (1, 7), (4, 8), (0, 2)],
    &[(2, 4), (9, 1), (5, 4), (0, 2), (6, 10), (12, 11)],
    &[(11, 10), (7, 10), (2, 7), (0, 6), (10, 4), (10, 2)],
    &[(7, 9), (11, 7), (12, 9), (1, 11), (12, 3), (0, 12)],
    &[(11, 12), (8, 11), (10, 0), (3, 11), (12, 7), (8, 6)],
    &[(7, 4), (10, 4), (11, 5), (9, 6), (1, 3), (12, 3)],
    &[(4, 9), (7, 7), (7, 0), (6, 4), (2, 8), (9, 12)],
    &[(3, 3), (2, 2), (12, 3), (5, 7), (7, 5), (6, 12)],
    &[(0, 12), (8, 12), (2, 11), (3, 5), (3, 7), (5, 8)],
    &[(4, 9), (10, 1), (8, 7), (11, 11), (5, 9), (9, 6)],
    &[(6, 4), (0, 5), (9, 4), (2, 7), (2, 9), (12, 2)],
    &[(5, 9), (9, 10), (8, 4), (6, 6), (1, 10), (6, 7)],
];

pub fn suite() -> Vec<Arc<PointSet>> {
    SUITE
        .iter()
        .map(|c| Arc::new(PointSet::from_coords(c).expect("suite instance in general position")))
        .collect()
}

/// Points (i, i²) on a parabola, in convex position.
pub fn convex(n: usize) -> Arc<PointSet> {
    let coords: Vec<(i64, i64)> = (0..n as i64).map(|i| (i, i * i)).collect();
    Arc::new(PointSet::from_coords(&coords).unwrap())
}

pub fn pentagon() -> Arc<PointSet> {
    Arc::new(PointSet::from_coords(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 2)]).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical form of the order type: the smallest triple-orientation vector
/// over all relabellings and over mirror images.
pub fn order_type_signature(ps: &PointSet) -> Vec<i8> {
    let n = ps.len();
    let mut best: Option<Vec<i8>> = None;
    for perm in permutations(n) {
        let mut sig = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let o = orientation(ps.point(perm[i]), ps.point(perm[j]), ps.point(perm[k]));
                    sig.push(if o == Orientation::Ccw { 1 } else { -1 });
                }
            }
        }
        let mirror: Vec<i8> = sig.iter().map(|s| -s).collect();
        for cand in [sig, mirror] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("at least one permutation")
}

/// Number of edges of each orbit id among `edges`.
pub fn orbit_counts(
    edges: impl IntoIterator<Item = Edge>,
    orbit_of: impl Fn(Edge) -> usize,
) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for e in edges {
        *out.entry(orbit_of(e)).or_insert(0) += 1;
    }
    out
}

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}
