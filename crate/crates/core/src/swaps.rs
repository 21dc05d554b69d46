//! Elementary swaps: exchanging the labels of two edges while every other
//! label returns to where it started.
//!
//! The search runs over the double quadrilateral graph, whose vertices are
//! pairs of non-crossing segments. One edge of a pair moves to a neighbour in
//! the quadrilateral graph while the other is held. A pair whose two edges are
//! diagonals of an empty convex pentagon is a swap vertex: five flips inside
//! the pentagon exchange their labels. Walking the path, swapping, and walking
//! back realizes the swap for the original pair.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flippaths::path_between;
use crate::geometry::{Edge, PointSet};
use crate::orbits::QuadrilateralGraph;
use crate::triangulation::{
    constrained_delaunay, FlipSequence, LabelledTriangulation, Triangulation,
};

/// Two non-crossing segments, stored with `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgePair {
    first: Edge,
    second: Edge,
}

impl EdgePair {
    pub fn new(e: Edge, f: Edge, ps: &PointSet) -> Result<Self> {
        ps.check_edge(e)?;
        ps.check_edge(f)?;
        if e == f {
            return Err(Error::PreconditionViolated(format!(
                "pair repeats edge {e}"
            )));
        }
        if ps.segments_cross(e, f) {
            return Err(Error::ConstraintCrossing(e.min(f), e.max(f)));
        }
        Ok(Self::ordered(e, f))
    }

    fn ordered(e: Edge, f: Edge) -> Self {
        EdgePair {
            first: e.min(f),
            second: e.max(f),
        }
    }

    pub fn first(&self) -> Edge {
        self.first
    }

    pub fn second(&self) -> Edge {
        self.second
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.first == e || self.second == e
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// A walk in the double quadrilateral graph ending at a swap vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPath {
    steps: Vec<EdgePair>,
}

impl PairPath {
    pub fn steps(&self) -> &[EdgePair] {
        &self.steps
    }

    /// Number of moves, one less than the number of pairs visited.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> EdgePair {
        self.steps[0]
    }

    pub fn end(&self) -> EdgePair {
        *self.steps.last().expect("a path has at least one pair")
    }
}

/// Pairs reached by holding one edge and moving the other along the
/// quadrilateral graph to a segment that avoids the held edge. Sorted.
pub fn pair_neighbors(p: EdgePair, graph: &QuadrilateralGraph) -> BTreeSet<EdgePair> {
    let ps = graph.points();
    let mut out = BTreeSet::new();
    for (held, moving) in [(p.first, p.second), (p.second, p.first)] {
        for &next in graph.neighbors(moving) {
            if next != held && !ps.segments_cross(next, held) {
                out.insert(EdgePair::ordered(held, next));
            }
        }
    }
    out
}

/// The empty convex pentagon, counter-clockwise from its smallest vertex, having both edges of the
/// pair as diagonals, if there is one.
pub fn swap_pentagon(p: EdgePair, ps: &PointSet) -> Option<[usize; 5]> {
    let a = p.first.common_endpoint(&p.second)?;
    let (b, c) = (p.first.other(a), p.second.other(a));
    if ps.convex_order(&[a, b, c]).is_none() || !ps.empty_convex_polygon(&[a, b, c]) {
        return None;
    }
    let n = ps.len();
    for x in 0..n {
        if [a, b, c].contains(&x) {
            continue;
        }
        for y in x + 1..n {
            if [a, b, c].contains(&y) {
                continue;
            }
            let Some(ccw) = ps.convex_order(&[a, b, c, x, y]) else {
                continue;
            };
            let at = |v: usize| ccw.iter().position(|&w| w == v).expect("member");
            let ia = at(a);
            let diagonal = |v: usize| {
                let d = (at(v) + 5 - ia) % 5;
                d == 2 || d == 3
            };
            if diagonal(b) && diagonal(c) && ps.polygon_is_empty(&ccw) {
                let start = (0..5).min_by_key(|&i| ccw[i]).expect("five vertices");
                return Some(std::array::from_fn(|i| ccw[(start + i) % 5]));
            }
        }
    }
    None
}

pub fn is_swap_vertex(p: EdgePair, ps: &PointSet) -> bool {
    swap_pentagon(p, ps).is_some()
}

/// Breadth-first search over the double quadrilateral graph with a limit on
/// the number of pairs expanded.
#[derive(Clone, Debug)]
pub struct SwapPlanner {
    graph: Arc<QuadrilateralGraph>,
    budget: Option<usize>,
}

impl SwapPlanner {
    pub fn new(points: Arc<PointSet>) -> Self {
        Self::with_graph(Arc::new(QuadrilateralGraph::new(points)))
    }

    pub fn with_graph(graph: Arc<QuadrilateralGraph>) -> Self {
        SwapPlanner {
            graph,
            budget: None,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn graph(&self) -> &QuadrilateralGraph {
        &self.graph
    }

    pub fn points(&self) -> &Arc<PointSet> {
        self.graph.points()
    }

    pub fn find_pair_path(&self, e: Edge, f: Edge) -> Result<PairPath> {
        let ps = self.points().clone();
        let start = EdgePair::new(e, f, &ps)?;
        let mut parent: HashMap<EdgePair, EdgePair> = HashMap::new();
        parent.insert(start, start);
        let mut queue = VecDeque::from([start]);
        let mut expanded = 0usize;
        while let Some(p) = queue.pop_front() {
            if is_swap_vertex(p, &ps) {
                let mut steps = vec![p];
                let mut cur = p;
                while cur != start {
                    cur = parent[&cur];
                    steps.push(cur);
                }
                steps.reverse();
                return Ok(PairPath { steps });
            }
            if self.budget.is_some_and(|b| expanded >= b) {
                return Err(Error::BudgetExhausted(expanded));
            }
            expanded += 1;
            for q in pair_neighbors(p, &self.graph) {
                if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(q) {
                    slot.insert(p);
                    queue.push_back(q);
                }
            }
        }
        Err(Error::NotFound(start.first, start.second))
    }

    /// Builds σ and π for exchanging the labels of `e` and `f`.
    pub fn plan_swap(
        &self,
        lt: &LabelledTriangulation,
        e: Edge,
        f: Edge,
    ) -> Result<SwapRealization> {
        let tri = lt.triangulation();
        if !Arc::ptr_eq(tri.points(), self.points()) && **tri.points() != **self.points() {
            return Err(Error::PointSetMismatch);
        }
        for g in [e, f] {
            if !tri.contains(g) {
                return Err(Error::NotPresent(g));
            }
        }
        if e == f {
            return Err(Error::PreconditionViolated(format!(
                "cannot swap {e} with itself"
            )));
        }
        let path = self.find_pair_path(e, f)?;
        let ps = tri.points().clone();
        let mut cur = tri.clone();
        let mut sigma = FlipSequence::new();

        for w in path.steps.windows(2) {
            let (p, q) = (w[0], w[1]);
            let held = if q.contains(p.first) {
                p.first
            } else {
                p.second
            };
            let old = if held == p.first { p.second } else { p.first };
            let new = if held == q.first { q.second } else { q.first };
            let quad = ps
                .crossing_quad(old, new)
                .ok_or_else(|| Error::Internal(format!("{old} and {new} do not cross")))?;
            let mut required: Vec<Edge> = (0..4)
                .map(|i| Edge::new(quad[i], quad[(i + 1) % 4]))
                .collect();
            required.extend([held, old]);
            self.walk_to(&mut cur, &mut sigma, &required, [held, old])?;
            let ev = cur.flip(old)?;
            if ev.inserted != new {
                return Err(Error::Internal(format!(
                    "flipping {old} gave {} instead of {new}",
                    ev.inserted
                )));
            }
            sigma.push(ev);
        }

        let end = path.end();
        let pent = swap_pentagon(end, &ps).expect("path ends at a swap vertex");
        let mut required: Vec<Edge> = (0..5)
            .map(|i| Edge::new(pent[i], pent[(i + 1) % 5]))
            .collect();
        required.extend([end.first, end.second]);
        self.walk_to(&mut cur, &mut sigma, &required, [end.first, end.second])?;
        let pi = pentagon_swap_sequence(&cur, pent, end.first, end.second)?;
        Ok(SwapRealization {
            path,
            sigma: sigma.reduced(),
            pi,
        })
    }

    /// The full sequence σ·π·σ⁻¹ exchanging the labels of `e` and `f`.
    pub fn realize_elementary_swap(
        &self,
        lt: &LabelledTriangulation,
        e: Edge,
        f: Edge,
    ) -> Result<FlipSequence> {
        Ok(self.plan_swap(lt, e, f)?.sequence())
    }

    /// Extends `sigma` with flips taking `cur` to the constrained Delaunay
    /// triangulation of `required`, never flipping `pinned`.
    fn walk_to(
        &self,
        cur: &mut Triangulation,
        sigma: &mut FlipSequence,
        required: &[Edge],
        pinned: [Edge; 2],
    ) -> Result<()> {
        let internal = |e: Error| Error::Internal(format!("building swap target: {e}"));
        let seed = Triangulation::complete(cur.points().clone(), required).map_err(internal)?;
        let constrained: BTreeSet<Edge> = required.iter().copied().collect();
        let (target, _) = constrained_delaunay(&constrained, &seed).map_err(internal)?;
        let pinned: BTreeSet<Edge> = pinned.into();
        let seq = path_between(cur, &target, &pinned)?;
        *cur = cur.apply_sequence(&seq)?;
        sigma.append(&seq);
        Ok(())
    }
}

/// The pieces of an elementary swap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapRealization {
    pub path: PairPath,
    /// Flips bringing the two labels onto a pentagon's diagonals.
    pub sigma: FlipSequence,
    /// Five flips inside the pentagon.
    pub pi: FlipSequence,
}

impl SwapRealization {
    pub fn sequence(&self) -> FlipSequence {
        let mut out = self.sigma.clone();
        out.append(&self.pi);
        out.append(&self.sigma.inverse());
        out
    }
}

/// Exchanges the labels of `e` and `f` in `lt`, building the quadrilateral
/// graph from scratch.
pub fn realize_elementary_swap(
    lt: &LabelledTriangulation,
    e: Edge,
    f: Edge,
) -> Result<FlipSequence> {
    SwapPlanner::new(lt.triangulation().points().clone()).realize_elementary_swap(lt, e, f)
}

pub fn find_pair_path(e: Edge, f: Edge, ps: Arc<PointSet>) -> Result<PairPath> {
    SwapPlanner::new(ps).find_pair_path(e, f)
}

/// Five flips around the elementary 5-cycle of an empty convex pentagon that
/// exchange the positions of diagonals `d1` and `d2`. Each flip removes the
/// diagonal that was not just inserted; of the two directions around the
/// cycle the first one found to transpose the tracked diagonals is returned.
pub fn pentagon_swap_sequence(
    t: &Triangulation,
    pent: [usize; 5],
    d1: Edge,
    d2: Edge,
) -> Result<FlipSequence> {
    let ps = t.points();
    let bad = |msg: String| Error::PreconditionViolated(msg);
    let ccw = ps
        .convex_order(&pent)
        .ok_or_else(|| bad("pentagon is not in convex position".into()))?;
    if !ps.polygon_is_empty(&ccw) {
        return Err(bad("pentagon contains a point".into()));
    }
    for i in 0..5 {
        let side = Edge::new(ccw[i], ccw[(i + 1) % 5]);
        if !t.contains(side) {
            return Err(bad(format!("pentagon side {side} missing")));
        }
    }
    let is_diagonal = |d: Edge| {
        d.endpoints().iter().all(|v| ccw.contains(v)) && {
            let at = |v: usize| ccw.iter().position(|&w| w == v).expect("member");
            let gap = (at(d.b()) + 5 - at(d.a())) % 5;
            gap == 2 || gap == 3
        }
    };
    for d in [d1, d2] {
        if !is_diagonal(d) {
            return Err(bad(format!("{d} is not a pentagon diagonal")));
        }
        if !t.contains(d) {
            return Err(bad(format!("diagonal {d} missing")));
        }
    }
    if d1 == d2 {
        return Err(bad("the two diagonals coincide".into()));
    }

    for first in [d1, d2] {
        let mut cur = t.clone();
        let mut seq = FlipSequence::new();
        let (mut at1, mut at2) = (d1, d2);
        let mut next = first;
        let mut other = if first == d1 { d2 } else { d1 };
        for _ in 0..5 {
            let ev = cur.flip(next)?;
            if at1 == ev.removed {
                at1 = ev.inserted;
            } else if at2 == ev.removed {
                at2 = ev.inserted;
            }
            seq.push(ev);
            next = other;
            other = ev.inserted;
        }
        if cur.edges() == t.edges() && at1 == d2 && at2 == d1 {
            return Ok(seq);
        }
    }
    Err(Error::Internal(
        "neither direction around the pentagon transposes the diagonals".into(),
    ))
}
