//! Lawson flips towards the (constrained) Delaunay triangulation.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use super::{FlipSequence, Triangulation};
use crate::error::{Error, Result};
use crate::geometry::{Edge, PointSet};

/// Runs Lawson flips on the edges of `start` outside `constrained` until no
/// flip raises the triangulation in the Delaunay order. Returns the fixed
/// point together with the flips performed.
pub fn constrained_delaunay(
    constrained: &BTreeSet<Edge>,
    start: &Triangulation,
) -> Result<(Triangulation, FlipSequence)> {
    let ps = start.points();
    let list: Vec<Edge> = constrained.iter().copied().collect();
    for (i, &e) in list.iter().enumerate() {
        ps.check_edge(e)?;
        if let Some(&f) = list[i + 1..].iter().find(|&&f| ps.segments_cross(e, f)) {
            return Err(Error::ConstraintCrossing(e, f));
        }
    }
    if let Some(&e) = list.iter().find(|&&e| !start.contains(e)) {
        return Err(Error::ConstraintMissing(e));
    }

    let mut t = start.clone();
    let mut seq = FlipSequence::new();
    let mut queue: VecDeque<Edge> = t
        .edges()
        .iter()
        .copied()
        .filter(|e| !constrained.contains(e))
        .collect();
    let mut queued: HashSet<Edge> = queue.iter().copied().collect();

    while let Some(e) = queue.pop_front() {
        queued.remove(&e);
        if !t.contains(e) || !t.flip_improves(e) {
            continue;
        }
        let (a, b) = (e.a(), e.b());
        let c = t.left_apex(a, b).expect("flippable edge has two faces");
        let d = t.left_apex(b, a).expect("flippable edge has two faces");
        let ev = t.flip(e)?;
        seq.push(ev);
        for side in [
            Edge::new(a, c),
            Edge::new(c, b),
            Edge::new(b, d),
            Edge::new(d, a),
        ] {
            if !constrained.contains(&side) && queued.insert(side) {
                queue.push_back(side);
            }
        }
    }
    Ok((t, seq))
}

/// The Delaunay triangulation, reached by Lawson flips from the greedy one.
pub fn delaunay(points: Arc<PointSet>) -> Triangulation {
    let start = Triangulation::complete(points, &[]).expect("no constraints to cross");
    constrained_delaunay(&BTreeSet::new(), &start)
        .expect("no constraints to violate")
        .0
}
