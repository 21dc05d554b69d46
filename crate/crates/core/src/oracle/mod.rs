//! Brute-force ground truth for small point sets.
//!
//! Everything here enumerates: all triangulations through the flip graph,
//! all labelled triangulations reachable from a seed, every short cycle of
//! the flip graph. The constructive pipeline is tested against these.

mod census;
mod faces;
mod labelled;
mod shelling;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Edge, PointSet};
use crate::triangulation::{FlipEvent, Triangulation};

pub use census::{elementary_cycle_census, Census, CycleRecord};
pub use faces::{is_boundary_face_by_enumeration, is_interior_face};
pub use labelled::{labelled_reachable, LabelledFlipGraph};
pub use shelling::{verify_shelling, ShellingReport};

/// Size guards for the enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest point set for unlabelled enumeration.
    pub max_unlabelled: usize,
    /// Largest point set for labelled enumeration.
    pub max_labelled: usize,
    /// Largest number of labelled states explored.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_unlabelled: 12,
            max_labelled: 7,
            max_states: 2_000_000,
        }
    }
}

impl Limits {
    pub fn check_unlabelled(&self, ps: &PointSet) -> Result<()> {
        guard(ps.len(), self.max_unlabelled)
    }

    pub fn check_labelled(&self, ps: &PointSet) -> Result<()> {
        guard(ps.len(), self.max_labelled)
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Segment indices fit a `u128` mask up to 16 points.
const MAX_MASK_POINTS: usize = 16;
/// Edge slots per triangulation in a labelled state.
pub(crate) const MAX_SLOTS: usize = 32;

pub(crate) type Mask = u128;

/// A flip from one node of the graph to another. `perm[s]` is the slot in the
/// source triangulation of the edge at slot `s` in the target.
#[derive(Clone, Debug)]
pub struct FlipArc {
    pub to: usize,
    pub event: FlipEvent,
    pub(crate) perm: [u8; MAX_SLOTS],
}

/// All triangulations of a point set with flip adjacency. Node 0 is the
/// lexicographic greedy triangulation; the rest follow in BFS order.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    points: Arc<PointSet>,
    nodes: Vec<Triangulation>,
    /// Sorted edges of each node; the slot of an edge is its position here.
    slots: Vec<Vec<Edge>>,
    masks: Vec<Mask>,
    index: HashMap<Mask, usize>,
    arcs: Vec<Vec<FlipArc>>,
}

impl FlipGraph {
    pub fn build(points: Arc<PointSet>, limits: &Limits) -> Result<Self> {
        limits.check_unlabelled(&points)?;
        guard(points.len(), MAX_MASK_POINTS)?;
        let seed = Triangulation::complete(points.clone(), &[])?;
        let mask_of = |t: &Triangulation| -> Mask {
            t.edges()
                .iter()
                .fold(0, |m, &e| m | (1u128 << points.segment_index(e)))
        };
        let mut nodes = vec![seed.clone()];
        let mut index = HashMap::from([(mask_of(&seed), 0usize)]);
        let mut raw_arcs: Vec<Vec<(usize, FlipEvent)>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut out = Vec::new();
            for e in nodes[i].flippable_edges() {
                let (t, ev) = nodes[i].flipped(e)?;
                let m = mask_of(&t);
                let j = match index.get(&m) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        nodes.push(t);
                        index.insert(m, j);
                        queue.push_back(j);
                        j
                    }
                };
                out.push((j, ev));
            }
            if raw_arcs.len() <= i {
                raw_arcs.resize_with(i + 1, Vec::new);
            }
            raw_arcs[i] = out;
        }
        let slots: Vec<Vec<Edge>> = nodes
            .iter()
            .map(|t| t.edges().iter().copied().collect())
            .collect();
        let masks: Vec<Mask> = nodes.iter().map(mask_of).collect();
        let arcs = raw_arcs
            .into_iter()
            .enumerate()
            .map(|(i, list)| {
                list.into_iter()
                    .map(|(j, event)| {
                        let mut perm = [0u8; MAX_SLOTS];
                        for (s, &g) in slots[j].iter().enumerate().take(MAX_SLOTS) {
                            let src = if g == event.inserted {
                                event.removed
                            } else {
                                g
                            };
                            perm[s] =
                                slots[i].binary_search(&src).expect("edge kept by flip") as u8;
                        }
                        FlipArc { to: j, event, perm }
                    })
                    .collect()
            })
            .collect();
        Ok(FlipGraph {
            points,
            nodes,
            slots,
            masks,
            index,
            arcs,
        })
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn triangulations(&self) -> &[Triangulation] {
        &self.nodes
    }

    pub fn triangulation(&self, i: usize) -> &Triangulation {
        &self.nodes[i]
    }

    pub fn edges(&self, i: usize) -> &[Edge] {
        &self.slots[i]
    }

    pub fn arcs(&self, i: usize) -> &[FlipArc] {
        &self.arcs[i]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs[i].iter().map(|a| a.to)
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn mask(&self, i: usize) -> Mask {
        self.masks[i]
    }

    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        if !t.same_points(&self.nodes[0]) {
            return None;
        }
        let m = t
            .edges()
            .iter()
            .fold(0u128, |m, &e| m | (1u128 << self.points.segment_index(e)));
        self.index.get(&m).copied()
    }

    /// The node reached from `i` by flipping `e`.
    pub fn flip_target(&self, i: usize, e: Edge) -> Option<usize> {
        self.arcs[i]
            .iter()
            .find(|a| a.event.removed == e)
            .map(|a| a.to)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Every triangulation of the point set.
pub fn enumerate_triangulations(
    points: Arc<PointSet>,
    limits: &Limits,
) -> Result<Vec<Triangulation>> {
    Ok(FlipGraph::build(points, limits)?.nodes)
}
