use std::collections::BTreeSet;
use std::sync::Arc;

use super::{FlipGraph, Limits};
use crate::error::Result;
use crate::geometry::PointSet;

/// A cycle of the flip graph, rotated to start at its smallest node and
/// oriented so the second node is the smaller of the two neighbours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycleRecord {
    pub nodes: Vec<usize>,
    /// Edge slots whose label differs from the start after one traversal.
    pub moved_labels: usize,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub four_cycles: Vec<CycleRecord>,
    pub five_cycles: Vec<CycleRecord>,
    /// Every simple cycle of length at most five, found by direct search.
    pub short_cycles: Vec<Vec<usize>>,
}

impl Census {
    /// Short cycles that are neither an elementary 4-cycle nor 5-cycle.
    pub fn non_elementary(&self) -> Vec<Vec<usize>> {
        let known: BTreeSet<&Vec<usize>> = self
            .four_cycles
            .iter()
            .chain(&self.five_cycles)
            .map(|c| &c.nodes)
            .collect();
        self.short_cycles
            .iter()
            .filter(|c| !known.contains(c))
            .cloned()
            .collect()
    }

    /// Elementary cycles missed by the direct search.
    pub fn unmatched_elementary(&self) -> Vec<Vec<usize>> {
        let found: BTreeSet<&Vec<usize>> = self.short_cycles.iter().collect();
        self.four_cycles
            .iter()
            .chain(&self.five_cycles)
            .filter(|c| !found.contains(&c.nodes))
            .map(|c| c.nodes.clone())
            .collect()
    }

    pub fn four_cycles_fix_labels(&self) -> bool {
        self.four_cycles.iter().all(|c| c.moved_labels == 0)
    }

    pub fn five_cycles_transpose(&self) -> bool {
        self.five_cycles.iter().all(|c| c.moved_labels == 2)
    }

    pub fn is_consistent(&self) -> bool {
        self.non_elementary().is_empty()
            && self.unmatched_elementary().is_empty()
            && self.four_cycles_fix_labels()
            && self.five_cycles_transpose()
    }
}

fn normalize(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).expect("non-empty cycle");
    let fwd: Vec<usize> = (0..k).map(|i| cycle[(start + i) % k]).collect();
    let back: Vec<usize> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
    fwd.min(back)
}

fn moved_labels(graph: &FlipGraph, nodes: &[usize]) -> usize {
    let m = graph.edges(nodes[0]).len();
    let mut labels: Vec<u8> = (0..m as u8).collect();
    for w in 0..nodes.len() {
        let (i, j) = (nodes[w], nodes[(w + 1) % nodes.len()]);
        let arc = graph
            .arcs(i)
            .iter()
            .find(|a| a.to == j)
            .expect("consecutive nodes are adjacent");
        labels = (0..m).map(|s| labels[arc.perm[s] as usize]).collect();
    }
    labels
        .iter()
        .enumerate()
        .filter(|&(s, &l)| s != l as usize)
        .count()
}

fn short_cycles(graph: &FlipGraph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(
        graph: &FlipGraph,
        path: &mut Vec<usize>,
        max_len: usize,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let start = path[0];
        let last = *path.last().expect("non-empty path");
        for j in graph.neighbors(last) {
            if j == start && path.len() >= 3 {
                out.insert(normalize(path));
            } else if j > start && !path.contains(&j) && path.len() < max_len {
                path.push(j);
                extend(graph, path, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..graph.len() {
        extend(graph, &mut vec![s], max_len, &mut out);
    }
    out.into_iter().collect()
}

/// Elementary 4- and 5-cycles, found from pairs of flippable edges in every
/// triangulation, together with a direct search for all cycles shorter than
/// six for comparison.
pub fn elementary_cycle_census(points: Arc<PointSet>, limits: &Limits) -> Result<Census> {
    let graph = FlipGraph::build(points.clone(), limits)?;
    let mut fours = BTreeSet::new();
    let mut fives = BTreeSet::new();
    for i in 0..graph.len() {
        let arcs = graph.arcs(i);
        for (x, ax) in arcs.iter().enumerate() {
            let e = ax.event;
            let quad: BTreeSet<usize> = e
                .removed
                .endpoints()
                .into_iter()
                .chain(e.inserted.endpoints())
                .collect();
            for ay in &arcs[x + 1..] {
                let f = ay.event.removed;
                if f.endpoints().iter().all(|v| quad.contains(v)) {
                    let five: Vec<usize> = quad
                        .iter()
                        .copied()
                        .chain(ay.event.inserted.endpoints())
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect();
                    if points.convex_order(&five).is_none() {
                        continue;
                    }
                    let mut nodes = vec![i];
                    let (mut node, mut next, mut other) = (i, e.removed, f);
                    for _ in 0..4 {
                        let arc = graph
                            .arcs(node)
                            .iter()
                            .find(|a| a.event.removed == next)
                            .expect("pentagon diagonal is flippable");
                        node = arc.to;
                        nodes.push(node);
                        next = other;
                        other = arc.event.inserted;
                    }
                    fives.insert(normalize(&nodes));
                } else {
                    let a = ax.to;
                    let b = graph
                        .flip_target(a, f)
                        .expect("disjoint quadrilateral survives");
                    fours.insert(normalize(&[i, a, b, ay.to]));
                }
            }
        }
    }
    let record = |nodes: Vec<usize>| CycleRecord {
        moved_labels: moved_labels(&graph, &nodes),
        nodes,
    };
    Ok(Census {
        four_cycles: fours.into_iter().map(record).collect(),
        five_cycles: fives.into_iter().map(record).collect(),
        short_cycles: short_cycles(&graph, 5),
    })
}
