//! Exact predicates over integer points.
//!
//! Coordinates are bounded by [`MAX_COORD`] so that every predicate here,
//! including the in-circle determinant and the angle comparison, fits in
//! `i128` without overflow. Nothing in a decision path touches floating point.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible absolute coordinate (2^28).
pub const MAX_COORD: i64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Cross product `(q - p) x (r - p)`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ux, uy) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (vx, vy) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    ux * vy - uy * vx
}

#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Sign of the in-circle determinant: `Greater` when `d` lies strictly inside
/// the circle through `a`, `b`, `c` (in either orientation), `Equal` when the
/// four points are cocircular.
pub fn in_circle(a: Point, b: Point, c: Point, d: Point) -> Ordering {
    let diff = |p: Point| ((p.x - d.x) as i128, (p.y - d.y) as i128);
    let (adx, ady) = diff(a);
    let (bdx, bdy) = diff(b);
    let (cdx, cdy) = diff(c);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    let det = alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady);
    match orientation(a, b, c) {
        Orientation::Ccw => det.cmp(&0),
        Orientation::Cw => 0.cmp(&det),
        Orientation::Collinear => Ordering::Equal,
    }
}

/// The interior angle at `apex` between the rays towards two other points,
/// kept as the exact pair (dot product, |cross product|).
///
/// Angles of non-degenerate triangles lie in (0, pi), where the direction
/// `(dot, |cross|)` sits in the open upper half-plane. Two such directions
/// compare by a single cross product, so no norms or square roots are needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Angle {
    dot: i128,
    cross: i128,
}

impl Angle {
    pub fn at(apex: Point, p: Point, q: Point) -> Self {
        let (ux, uy) = ((p.x - apex.x) as i128, (p.y - apex.y) as i128);
        let (vx, vy) = ((q.x - apex.x) as i128, (q.y - apex.y) as i128);
        Angle {
            dot: ux * vx + uy * vy,
            cross: (ux * vy - uy * vx).abs(),
        }
    }

    pub fn dot(&self) -> i128 {
        self.dot
    }

    pub fn cross(&self) -> i128 {
        self.cross
    }

    /// Strictly between 0 and pi.
    pub fn is_proper(&self) -> bool {
        self.cross > 0
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        // atan2(c1, d1) < atan2(c2, d2)  <=>  d1 * c2 > c1 * d2  for c1, c2 > 0
        (self.cross * other.dot).cmp(&(self.dot * other.cross))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A segment between two points of a [`PointSet`], stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    /// Panics if `u == v`.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        if u < v {
            Edge { a: u, b: v }
        } else {
            Edge { a: v, b: u }
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.a, self.b]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }

    /// The shared endpoint, if the edges share exactly one.
    pub fn common_endpoint(&self, other: &Edge) -> Option<usize> {
        if self == other {
            return None;
        }
        if other.contains(self.a) {
            Some(self.a)
        } else if other.contains(self.b) {
            Some(self.b)
        } else {
            None
        }
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Integer points in general position: distinct, no three collinear.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = Error;

    fn try_from(points: Vec<Point>) -> Result<Self> {
        PointSet::new(points)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(ps: PointSet) -> Self {
        ps.points
    }
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        for (i, p) in points.iter().enumerate() {
            if p.x.abs() > MAX_COORD || p.y.abs() > MAX_COORD {
                return Err(Error::CoordinateOutOfRange {
                    index: i,
                    limit: MAX_COORD,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if cross(points[i], points[j], points[k]) == 0 {
                        return Err(Error::Collinear(i, j, k));
                    }
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn orient(&self, i: usize, j: usize, k: usize) -> Orientation {
        orientation(self.points[i], self.points[j], self.points[k])
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        if e.b() < self.len() {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange(e))
        }
    }

    /// Number of segments spanned by the set, `n choose 2`.
    pub fn segment_count(&self) -> usize {
        let n = self.len();
        n * (n - 1) / 2
    }

    /// All `n choose 2` segments in lexicographic order.
    pub fn segments(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| Edge::new(a, b)))
    }

    /// Position of `e` in the order produced by [`PointSet::segments`].
    pub fn segment_index(&self, e: Edge) -> usize {
        let n = self.len();
        e.a() * (2 * n - e.a() - 1) / 2 + (e.b() - e.a() - 1)
    }

    /// Proper crossing. Under general position two distinct segments meet in
    /// a point interior to one of them only if they cross properly.
    pub fn segments_cross(&self, e: Edge, f: Edge) -> bool {
        if e.shares_endpoint(&f) {
            return false;
        }
        let o1 = self.orient(e.a(), e.b(), f.a());
        let o2 = self.orient(e.a(), e.b(), f.b());
        let o3 = self.orient(f.a(), f.b(), e.a());
        let o4 = self.orient(f.a(), f.b(), e.b());
        o1 != o2 && o3 != o4
    }

    /// Convex hull vertices in counter-clockwise order, starting from the
    /// lexicographically smallest point.
    pub fn hull(&self) -> Vec<usize> {
        self.hull_of(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn hull_edges(&self) -> Vec<Edge> {
        let h = self.hull();
        let mut edges: Vec<Edge> = (0..h.len())
            .map(|i| Edge::new(h[i], h[(i + 1) % h.len()]))
            .collect();
        edges.sort();
        edges
    }

    /// Number of edges in any triangulation: `3n - 3 - h`.
    pub fn triangulation_size(&self) -> usize {
        3 * self.len() - 3 - self.hull().len()
    }

    /// Monotone-chain hull of a subset, counter-clockwise.
    pub fn hull_of(&self, indices: &[usize]) -> Vec<usize> {
        let mut idx = indices.to_vec();
        idx.sort_by_key(|&i| self.points[i]);
        idx.dedup();
        if idx.len() < 3 {
            return idx;
        }
        let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
        for &i in &idx {
            while lower.len() >= 2
                && self.orient(lower[lower.len() - 2], lower[lower.len() - 1], i)
                    != Orientation::Ccw
            {
                lower.pop();
            }
            lower.push(i);
        }
        let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
        for &i in idx.iter().rev() {
            while upper.len() >= 2
                && self.orient(upper[upper.len() - 2], upper[upper.len() - 1], i)
                    != Orientation::Ccw
            {
                upper.pop();
            }
            upper.push(i);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        lower
    }

    /// If the indexed points are in convex position, their counter-clockwise
    /// cyclic order.
    pub fn convex_order(&self, indices: &[usize]) -> Option<Vec<usize>> {
        let hull = self.hull_of(indices);
        (hull.len() == indices.len()).then_some(hull)
    }

    /// Whether point `p` lies strictly inside the counter-clockwise convex
    /// polygon `ccw`.
    pub fn strictly_inside(&self, ccw: &[usize], p: usize) -> bool {
        let k = ccw.len();
        (0..k).all(|i| self.orient(ccw[i], ccw[(i + 1) % k], p) == Orientation::Ccw)
    }

    /// Whether no point of the set lies strictly inside the convex polygon.
    pub fn polygon_is_empty(&self, ccw: &[usize]) -> bool {
        (0..self.len())
            .filter(|p| !ccw.contains(p))
            .all(|p| !self.strictly_inside(ccw, p))
    }

    /// True iff the points form a convex polygon with no other point of the
    /// set strictly inside it.
    pub fn empty_convex_polygon(&self, indices: &[usize]) -> bool {
        match self.convex_order(indices) {
            Some(ccw) => self.polygon_is_empty(&ccw),
            None => false,
        }
    }

    /// The counter-clockwise quadrilateral whose diagonals are `e` and `f`,
    /// when the two cross.
    pub fn crossing_quad(&self, e: Edge, f: Edge) -> Option<[usize; 4]> {
        if !self.segments_cross(e, f) {
            return None;
        }
        let (a, b) = (e.a(), e.b());
        // f.a() on the right of a->b means it comes between a and b going ccw
        Some(if self.orient(a, b, f.a()) == Orientation::Cw {
            [a, f.a(), b, f.b()]
        } else {
            [a, f.b(), b, f.a()]
        })
    }

    /// True iff `e` and `f` cross and their endpoints bound an empty convex
    /// quadrilateral.
    pub fn crossing_pair_is_empty_quad(&self, e: Edge, f: Edge) -> bool {
        match self.crossing_quad(e, f) {
            Some(quad) => self.polygon_is_empty(&quad),
            None => false,
        }
    }

    pub fn has_cocircular_quadruple(&self) -> bool {
        let n = self.len();
        let p = &self.points;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if in_circle(p[a], p[b], p[c], p[d]) == Ordering::Equal {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
        )
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        Self::new(
            self.points
                .iter()
                .map(|p| Point::new(p.x * k, p.y * k))
                .collect(),
        )
    }
}
