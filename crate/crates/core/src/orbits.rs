//! The quadrilateral graph and its connected components, the orbits.
//!
//! Two segments are adjacent when they cross and their four endpoints bound
//! an empty convex quadrilateral, which is exactly when one can be flipped
//! into the other in some triangulation. A label can therefore only travel
//! within the component of the segment carrying it.

use std::collections::BTreeMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::geometry::{Edge, PointSet};

#[derive(Clone, Debug)]
pub struct QuadrilateralGraph {
    points: Arc<PointSet>,
    /// Indexed by segment index, sorted ascending.
    adjacency: Vec<Vec<Edge>>,
}

impl QuadrilateralGraph {
    pub fn new(points: Arc<PointSet>) -> Self {
        let segments: Vec<Edge> = points.segments().collect();
        let mut adjacency = vec![Vec::new(); segments.len()];
        for (i, &e) in segments.iter().enumerate() {
            for (j, &f) in segments.iter().enumerate().skip(i + 1) {
                if points.crossing_pair_is_empty_quad(e, f) {
                    adjacency[i].push(f);
                    adjacency[j].push(e);
                }
            }
        }
        for list in &mut adjacency {
            list.sort();
        }
        QuadrilateralGraph { points, adjacency }
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, e: Edge) -> &[Edge] {
        &self.adjacency[self.points.segment_index(e)]
    }

    pub fn are_adjacent(&self, e: Edge, f: Edge) -> bool {
        self.neighbors(e).binary_search(&f).is_ok()
    }

    pub fn orbits(&self) -> OrbitPartition {
        let n = self.vertex_count();
        let mut uf = UnionFind::<usize>::new(n);
        for (i, list) in self.adjacency.iter().enumerate() {
            for &f in list {
                uf.union(i, self.points.segment_index(f));
            }
        }
        // number components by their smallest segment
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut orbit_of = Vec::with_capacity(n);
        let mut members: Vec<Vec<Edge>> = Vec::new();
        for (i, e) in self.points.segments().enumerate() {
            let root = uf.find(i);
            let next = ids.len();
            let id = *ids.entry(root).or_insert(next);
            if id == members.len() {
                members.push(Vec::new());
            }
            members[id].push(e);
            orbit_of.push(id);
        }
        OrbitPartition {
            points: self.points.clone(),
            orbit_of,
            members,
        }
    }
}

pub fn quadrilateral_graph(points: Arc<PointSet>) -> QuadrilateralGraph {
    QuadrilateralGraph::new(points)
}

/// Connected components of the quadrilateral graph. Orbit ids are assigned
/// in order of each orbit's smallest segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    points: Arc<PointSet>,
    orbit_of: Vec<usize>,
    members: Vec<Vec<Edge>>,
}

impl OrbitPartition {
    pub fn orbit_id(&self, e: Edge) -> usize {
        self.orbit_of[self.points.segment_index(e)]
    }

    pub fn same_orbit(&self, e: Edge, f: Edge) -> bool {
        self.orbit_id(e) == self.orbit_id(f)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members of each orbit, sorted, indexed by orbit id.
    pub fn orbits(&self) -> &[Vec<Edge>] {
        &self.members
    }

    pub fn members(&self, id: usize) -> &[Edge] {
        &self.members[id]
    }
}

pub fn orbits(points: Arc<PointSet>) -> OrbitPartition {
    QuadrilateralGraph::new(points).orbits()
}

pub fn same_orbit(e: Edge, f: Edge, partition: &OrbitPartition) -> bool {
    partition.same_orbit(e, f)
}
