//! Triangulations of a point set, flips and the angle-vector order.
//!
//! A [`Triangulation`] is stored as its edge set plus an index from each
//! directed edge to the apex of the triangle on its left. The index makes a
//! flippability query a couple of hash lookups and is patched in place by
//! every flip.

mod delaunay;
mod labelled;
mod sequence;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Angle, Edge, Orientation, PointSet};

pub use delaunay::{constrained_delaunay, delaunay};
pub use labelled::{Label, LabelledTriangulation};
pub use sequence::{FlipEvent, FlipSequence};

/// True iff `edges` is pairwise non-crossing and maximal.
pub fn is_triangulation(edges: &BTreeSet<Edge>, ps: &PointSet) -> bool {
    validate_edges(edges, ps).is_ok()
}

fn validate_edges(edges: &BTreeSet<Edge>, ps: &PointSet) -> Result<()> {
    for &e in edges {
        ps.check_edge(e)?;
    }
    let expected = ps.triangulation_size();
    if edges.len() != expected {
        return Err(Error::NotATriangulation(format!(
            "{} edges, a triangulation of this point set has {}",
            edges.len(),
            expected
        )));
    }
    let list: Vec<Edge> = edges.iter().copied().collect();
    for (i, &e) in list.iter().enumerate() {
        for &f in &list[i + 1..] {
            if ps.segments_cross(e, f) {
                return Err(Error::NotATriangulation(format!("edges {e} and {f} cross")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    points: Arc<PointSet>,
    edges: BTreeSet<Edge>,
    /// (a, b) -> c such that (a, b, c) is a counter-clockwise face.
    left: HashMap<(usize, usize), usize>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
            && (Arc::ptr_eq(&self.points, &other.points) || self.points == other.points)
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    pub fn new(points: Arc<PointSet>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        validate_edges(&edges, &points)?;
        Ok(Self::from_valid(points, edges))
    }

    fn from_valid(points: Arc<PointSet>, edges: BTreeSet<Edge>) -> Self {
        let left = face_index(&points, &edges);
        Triangulation {
            points,
            edges,
            left,
        }
    }

    /// Greedy completion: `required` first, then every other segment in
    /// lexicographic order that crosses nothing already chosen.
    pub fn complete(points: Arc<PointSet>, required: &[Edge]) -> Result<Self> {
        let order: Vec<Edge> = points.segments().collect();
        Self::complete_in_order(points, required, &order)
    }

    /// Greedy completion trying the candidates in the given order.
    pub fn complete_in_order(
        points: Arc<PointSet>,
        required: &[Edge],
        order: &[Edge],
    ) -> Result<Self> {
        let mut chosen: Vec<Edge> = Vec::new();
        for &e in required {
            points.check_edge(e)?;
            if chosen.contains(&e) {
                continue;
            }
            if let Some(&f) = chosen.iter().find(|&&f| points.segments_cross(e, f)) {
                return Err(Error::ConstraintCrossing(f, e));
            }
            chosen.push(e);
        }
        for &e in order
            .iter()
            .chain(points.segments().collect::<Vec<_>>().iter())
        {
            if !chosen.contains(&e) && chosen.iter().all(|&f| !points.segments_cross(e, f)) {
                chosen.push(e);
            }
        }
        let edges: BTreeSet<Edge> = chosen.into_iter().collect();
        debug_assert!(is_triangulation(&edges, &points));
        Ok(Self::from_valid(points, edges))
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn same_points(&self, other: &Triangulation) -> bool {
        Arc::ptr_eq(&self.points, &other.points) || self.points == other.points
    }

    /// Apex of the face to the left of the directed edge `a -> b`.
    pub fn left_apex(&self, a: usize, b: usize) -> Option<usize> {
        self.left.get(&(a, b)).copied()
    }

    /// Counter-clockwise faces, each listed once with its smallest vertex first.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = self
            .left
            .iter()
            .filter(|(&(a, b), &c)| a < b && a < c)
            .map(|(&(a, b), &c)| [a, b, c])
            .collect();
        out.sort();
        out
    }

    /// The opposite diagonal of `e` when `e` is flippable.
    pub fn flip_partner(&self, e: Edge) -> Option<Edge> {
        if !self.edges.contains(&e) {
            return None;
        }
        let c = self.left_apex(e.a(), e.b())?;
        let d = self.left_apex(e.b(), e.a())?;
        let g = Edge::new(c, d);
        self.points.segments_cross(e, g).then_some(g)
    }

    pub fn is_flippable(&self, e: Edge) -> bool {
        self.flip_partner(e).is_some()
    }

    pub fn flippable_edges(&self) -> BTreeSet<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&e| self.is_flippable(e))
            .collect()
    }

    pub fn flip(&mut self, e: Edge) -> Result<FlipEvent> {
        if !self.edges.contains(&e) {
            return Err(Error::NotPresent(e));
        }
        let (a, b) = (e.a(), e.b());
        let (c, d) = match (self.left_apex(a, b), self.left_apex(b, a)) {
            (Some(c), Some(d)) => (c, d),
            _ => return Err(Error::NotFlippable(e)),
        };
        let g = Edge::new(c, d);
        if !self.points.segments_cross(e, g) {
            return Err(Error::NotFlippable(e));
        }
        // quad a, d, b, c is counter-clockwise
        self.edges.remove(&e);
        self.edges.insert(g);
        self.left.remove(&(a, b));
        self.left.remove(&(b, a));
        for [x, y, z] in [[a, d, c], [d, b, c]] {
            self.left.insert((x, y), z);
            self.left.insert((y, z), x);
            self.left.insert((z, x), y);
        }
        Ok(FlipEvent::new(e, g))
    }

    pub fn flipped(&self, e: Edge) -> Result<(Triangulation, FlipEvent)> {
        let mut t = self.clone();
        let ev = t.flip(e)?;
        Ok((t, ev))
    }

    /// Applies one event after checking it against the current state.
    pub fn apply_event(&mut self, ev: &FlipEvent) -> std::result::Result<(), String> {
        if !self.contains(ev.removed) {
            return Err(format!("edge {} is not present", ev.removed));
        }
        match self.flip_partner(ev.removed) {
            None => Err(format!("edge {} is not flippable", ev.removed)),
            Some(g) if g != ev.inserted => Err(format!(
                "flipping {} inserts {}, not {}",
                ev.removed, g, ev.inserted
            )),
            Some(_) => {
                self.flip(ev.removed).map_err(|e| e.to_string())?;
                Ok(())
            }
        }
    }

    pub fn apply_sequence(&self, seq: &FlipSequence) -> Result<Triangulation> {
        let mut t = self.clone();
        for (index, ev) in seq.iter().enumerate() {
            t.apply_event(ev)
                .map_err(|reason| Error::InvalidAt { index, reason })?;
        }
        Ok(t)
    }

    pub fn angle_vector(&self) -> AngleVector {
        let p = |i: usize| self.points.point(i);
        let mut angles: Vec<Angle> = self
            .triangles()
            .into_iter()
            .flat_map(|[a, b, c]| {
                [
                    Angle::at(p(a), p(b), p(c)),
                    Angle::at(p(b), p(c), p(a)),
                    Angle::at(p(c), p(a), p(b)),
                ]
            })
            .collect();
        angles.sort();
        AngleVector(angles)
    }

    /// Whether flipping `e` strictly raises this triangulation in the
    /// Delaunay order (angle vector first, then the smaller sorted edge list).
    /// Only the six angles of the quadrilateral change, and the sorted-vector
    /// comparison depends only on the changed part, so the test is local.
    pub fn flip_improves(&self, e: Edge) -> bool {
        let Some(g) = self.flip_partner(e) else {
            return false;
        };
        let (a, b) = (e.a(), e.b());
        let c = self.left[&(a, b)];
        let d = self.left[&(b, a)];
        let p = |i: usize| self.points.point(i);
        let six = |tris: [[usize; 3]; 2]| {
            let mut v: Vec<Angle> = tris
                .iter()
                .flat_map(|&[x, y, z]| {
                    [
                        Angle::at(p(x), p(y), p(z)),
                        Angle::at(p(y), p(z), p(x)),
                        Angle::at(p(z), p(x), p(y)),
                    ]
                })
                .collect();
            v.sort();
            v
        };
        let before = six([[a, b, c], [b, a, d]]);
        let after = six([[a, d, c], [d, b, c]]);
        match after.cmp(&before) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => g < e,
        }
    }
}

fn face_index(ps: &PointSet, edges: &BTreeSet<Edge>) -> HashMap<(usize, usize), usize> {
    let n = ps.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        nbrs[e.a()].push(e.b());
        nbrs[e.b()].push(e.a());
    }
    let mut left = HashMap::with_capacity(edges.len() * 2);
    for (a, list) in nbrs.iter_mut().enumerate() {
        let o = ps.point(a);
        let half = |i: usize| {
            let q = ps.point(i);
            let (dx, dy) = (q.x - o.x, q.y - o.y);
            u8::from(!(dy > 0 || (dy == 0 && dx > 0)))
        };
        list.sort_by(|&u, &v| {
            half(u)
                .cmp(&half(v))
                .then_with(|| match ps.orient(a, u, v) {
                    Orientation::Ccw => Ordering::Less,
                    Orientation::Cw => Ordering::Greater,
                    Orientation::Collinear => Ordering::Equal,
                })
        });
        let k = list.len();
        if k < 2 {
            continue;
        }
        for i in 0..k {
            let (b, c) = (list[i], list[(i + 1) % k]);
            if ps.orient(a, b, c) == Orientation::Ccw {
                left.insert((a, b), c);
            }
        }
    }
    left
}

/// The angles of all triangles, sorted ascending under exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AngleVector(Vec<Angle>);

impl AngleVector {
    pub fn angles(&self) -> &[Angle] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Lexicographic comparison of the sorted angle vectors.
pub fn compare_angle_vectors(t1: &Triangulation, t2: &Triangulation) -> Ordering {
    t1.angle_vector().cmp(&t2.angle_vector())
}

/// Total order used for Delaunay computations: angle vector, then the
/// lexicographically smaller sorted edge list counts as greater.
pub fn delaunay_order(t1: &Triangulation, t2: &Triangulation) -> Ordering {
    compare_angle_vectors(t1, t2).then_with(|| t2.edges.cmp(&t1.edges))
}
