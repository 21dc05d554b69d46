use std::cmp::Ordering;
use std::sync::Arc;

use super::{FlipGraph, Limits};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::triangulation::{delaunay, AngleVector};

#[derive(Clone, Debug)]
pub struct ShellingReport {
    /// Flip-graph node indices, largest angle vector first.
    pub order: Vec<usize>,
    /// Positions in `order` at which the shelling condition fails.
    pub failures: Vec<usize>,
    pub delaunay_first: bool,
}

impl ShellingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.delaunay_first
    }
}

/// Orders all triangulations by descending angle vector and checks that each
/// one meets the union of its predecessors in a pure complex of codimension
/// one: every intersection with an earlier triangulation must lie inside an
/// intersection with an earlier flip neighbour.
pub fn verify_shelling(points: Arc<PointSet>, limits: &Limits) -> Result<ShellingReport> {
    let graph = FlipGraph::build(points.clone(), limits)?;
    let vectors: Vec<AngleVector> = graph
        .triangulations()
        .iter()
        .map(|t| t.angle_vector())
        .collect();
    let mut order: Vec<usize> = (0..graph.len()).collect();
    order.sort_by(|&i, &j| vectors[j].cmp(&vectors[i]));
    let ties: Vec<(usize, usize)> = order
        .windows(2)
        .filter(|w| vectors[w[0]].cmp(&vectors[w[1]]) == Ordering::Equal)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    if !ties.is_empty() {
        return Err(Error::DegenerateOrder(ties));
    }
    let mut position = vec![0; graph.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut failures = Vec::new();
    for (p, &j) in order.iter().enumerate().skip(1) {
        let mj = graph.mask(j);
        // the facets T_j \ {e} shared with an earlier neighbour
        let shared: Vec<u128> = graph
            .arcs(j)
            .iter()
            .filter(|a| position[a.to] < p)
            .map(|a| mj & !(1u128 << points.segment_index(a.event.removed)))
            .collect();
        let ok = order[..p].iter().all(|&i| {
            let meet = graph.mask(i) & mj;
            shared.iter().any(|&s| meet & !s == 0)
        });
        if !ok {
            failures.push(p);
        }
    }
    let delaunay_first = *graph.triangulation(order[0]) == delaunay(points);
    Ok(ShellingReport {
        order,
        failures,
        delaunay_first,
    })
}
