use std::collections::BTreeSet;

use super::FlipGraph;
use crate::geometry::{Edge, PointSet};

/// Whether the non-crossing edge set `f` is an interior face of the flip
/// complex: it contains every hull edge, and every bounded region cut out by
/// `f` is convex. A region has a reflex corner exactly at a point inside the
/// hull where two angularly consecutive edges of `f` leave a gap of more than
/// a half turn, or where fewer than three edges meet.
pub fn is_interior_face(f: &BTreeSet<Edge>, ps: &PointSet) -> bool {
    if !ps.hull_edges().iter().all(|e| f.contains(e)) {
        return false;
    }
    let on_hull: BTreeSet<usize> = ps.hull().into_iter().collect();
    (0..ps.len())
        .filter(|p| !on_hull.contains(p))
        .all(|p| no_reflex_gap(p, f, ps))
}

fn no_reflex_gap(p: usize, f: &BTreeSet<Edge>, ps: &PointSet) -> bool {
    let o = ps.point(p);
    let mut dirs: Vec<(i64, i64)> = f
        .iter()
        .filter(|e| e.contains(p))
        .map(|e| {
            let q = ps.point(e.other(p));
            (q.x - o.x, q.y - o.y)
        })
        .collect();
    if dirs.len() < 3 {
        return false;
    }
    let cross =
        |u: (i64, i64), v: (i64, i64)| u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128;
    let half = |&(x, y): &(i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    dirs.sort_by(|&u, &v| half(&u).cmp(&half(&v)).then_with(|| 0.cmp(&cross(u, v))));
    let k = dirs.len();
    (0..k).all(|i| cross(dirs[i], dirs[(i + 1) % k]) > 0)
}

/// The defining test by enumeration: `f` is a boundary face iff some
/// triangulation contains it together with an edge outside `f` that cannot
/// be flipped.
pub fn is_boundary_face_by_enumeration(f: &BTreeSet<Edge>, graph: &FlipGraph) -> bool {
    graph.triangulations().iter().any(|t| {
        f.iter().all(|&e| t.contains(e))
            && t.edges()
                .iter()
                .any(|&e| !f.contains(&e) && !t.is_flippable(e))
    })
}
