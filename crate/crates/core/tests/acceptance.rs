//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

mod common;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitflip::cli::random_point_set;
use orbitflip::geometry::{in_circle, Point};
use orbitflip::oracle::{
    elementary_cycle_census, verify_shelling, FlipGraph, LabelledFlipGraph, Limits,
};
use orbitflip::reconfigure::Reconfigurer;
use orbitflip::swaps::SwapPlanner;
use orbitflip::triangulation::{compare_angle_vectors, constrained_delaunay, delaunay};
use orbitflip::{
    Edge, Error, Feasibility, Label, LabelledTriangulation, PointSet, QuadrilateralGraph,
    Triangulation,
};

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("pentagon swap exactness", pentagon_swap),
        (
            "orbit theorem, exhaustive over the order-type suite",
            orbit_theorem,
        ),
        ("orbit structure in convex position", convex_orbits),
        ("pentagon-free point set", pentagon_free),
        ("shelling verification", shelling),
        ("elementary cycle census", census),
        ("Lawson monotonicity and restart invariance", lawson),
        ("elementary swap graph components are cliques", cliques),
        ("Catalan counts in convex position", catalan),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn hull_set(ps: &PointSet) -> BTreeSet<Edge> {
    ps.hull_edges().into_iter().collect()
}

// 1
fn pentagon_swap() -> Result<String, String> {
    let ps = common::pentagon();
    let (d1, d2) = (Edge::new(0, 2), Edge::new(0, 3));
    let t = Triangulation::complete(ps.clone(), &[d1, d2]).map_err(|e| e.to_string())?;
    let lt = LabelledTriangulation::canonical(t);
    let seq = orbitflip::swaps::realize_elementary_swap(&lt, d1, d2).map_err(|e| e.to_string())?;
    ensure(seq.len() == 5, || {
        format!("{} flips instead of 5", seq.len())
    })?;
    let after = lt.apply_sequence(&seq).map_err(|e| e.to_string())?;
    ensure(after.triangulation() == lt.triangulation(), || {
        "edge set changed".into()
    })?;
    for (&e, &l) in lt.labels() {
        let want = if e == d1 {
            lt.label_of(d2).unwrap()
        } else if e == d2 {
            lt.label_of(d1).unwrap()
        } else {
            l
        };
        ensure(after.label_of(e) == Some(want), || {
            format!("label on {e} is wrong")
        })?;
    }
    Ok(format!(
        "5 flips, labels {} and {} exchanged, others fixed",
        lt.label_of(d1).unwrap(),
        lt.label_of(d2).unwrap()
    ))
}

// 2
fn orbit_theorem() -> Result<String, String> {
    let suite = common::suite();
    let signatures: BTreeSet<Vec<i8>> = suite
        .iter()
        .map(|ps| common::order_type_signature(ps))
        .collect();
    ensure(signatures.len() == suite.len(), || {
        "suite repeats an order type".into()
    })?;
    ensure(suite.len() >= 10, || "suite too small".into())?;
    let limits = Limits::default();
    let (mut replays, mut infeasible_checks, mut certified) = (0usize, 0usize, 0u128);
    for (k, ps) in suite.iter().enumerate() {
        ensure(!ps.has_cocircular_quadruple(), || {
            format!("instance {k} has four cocircular points")
        })?;
        let graph = Arc::new(FlipGraph::build(ps.clone(), &limits).map_err(|e| e.to_string())?);
        let r = Reconfigurer::new(ps.clone());
        let orbit_of = |e: Edge| r.orbits().orbit_id(e);
        let seed = LabelledTriangulation::canonical(graph.triangulation(0).clone());
        let lg =
            LabelledFlipGraph::explore(graph.clone(), &seed, &limits).map_err(|e| e.to_string())?;

        // Every labelled triangulation lies in a relabelled copy of the seed's
        // component, so the seed's component decides every pair. Reachable
        // labellings must pass the orbit test, and on each triangulation their
        // number must equal the number of labellings that pass it.
        let states: Vec<LabelledTriangulation> =
            lg.states().into_iter().map(|(lt, _)| lt).collect();
        for lt in &states {
            ensure(r.feasible(&seed, lt) == Ok(Feasibility::Feasible), || {
                format!("instance {k}: reachable labelling judged infeasible")
            })?;
        }
        let base = common::orbit_counts(seed.triangulation().edges().iter().copied(), orbit_of);
        let counts = lg.counts_per_triangulation();
        for (j, &count) in counts.iter().enumerate() {
            let here = common::orbit_counts(graph.edges(j).iter().copied(), orbit_of);
            let expected: u128 = if here == base {
                here.values().map(|&c| common::factorial(c)).product()
            } else {
                0
            };
            ensure(count as u128 == expected, || {
                format!("instance {k}, triangulation {j}: {count} reachable, {expected} feasible")
            })?;
            certified += expected;
        }

        // Every reachable pair: reconfigure replays exactly.
        for a in &states {
            for b in &states {
                let out = r
                    .reconfigure(a, b)
                    .map_err(|e| format!("instance {k}: {e}"))?;
                let got = a.apply_sequence(&out.sequence).map_err(|e| e.to_string())?;
                ensure(got == *b, || format!("instance {k}: replay mismatch"))?;
                replays += 1;
            }
        }

        // Unreachable targets: exchange two labels across orbits.
        for a in &states {
            for b in &states {
                let edges: Vec<Edge> = b.triangulation().edges().iter().copied().collect();
                for (x, &e) in edges.iter().enumerate() {
                    for &f in &edges[x + 1..] {
                        if orbit_of(e) == orbit_of(f) {
                            continue;
                        }
                        let target = b.with_swapped(e, f).unwrap();
                        // a is in the seed's component, so reachability from a
                        // is membership in that component
                        ensure(!lg.contains(&target), || {
                            format!("instance {k}: cross-orbit swap reachable")
                        })?;
                        let smallest = smallest_violation(a, &target, orbit_of);
                        match r.reconfigure(a, &target) {
                            Err(Error::Infeasible { label, .. }) if label == smallest => {}
                            other => {
                                return Err(format!(
                                    "instance {k}: expected Infeasible({smallest}), got {other:?}"
                                ))
                            }
                        }
                        infeasible_checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} order types; {certified} labellings certified by counting; {replays} reconfigurations replayed; {infeasible_checks} infeasible pairs rejected",
        suite.len()
    ))
}

fn smallest_violation(
    a: &LabelledTriangulation,
    b: &LabelledTriangulation,
    orbit_of: impl Fn(Edge) -> usize,
) -> Label {
    a.edges_by_label()
        .iter()
        .find(|(l, &e)| orbit_of(e) != orbit_of(b.edge_of(**l).unwrap()))
        .map(|(&l, _)| l)
        .expect("a violating label")
}

// 3
fn convex_orbits() -> Result<String, String> {
    for n in 5..=12 {
        let ps = common::convex(n);
        let part = QuadrilateralGraph::new(ps.clone()).orbits();
        let hull = hull_set(&ps);
        ensure(part.len() == n + 1, || {
            format!("n = {n}: {} orbits", part.len())
        })?;
        let diagonals: Vec<Edge> = ps.segments().filter(|e| !hull.contains(e)).collect();
        ensure(diagonals.len() == n * (n - 3) / 2, || {
            "diagonal count".into()
        })?;
        let id = part.orbit_id(diagonals[0]);
        ensure(diagonals.iter().all(|&d| part.orbit_id(d) == id), || {
            format!("n = {n}: diagonals split")
        })?;
        ensure(part.members(id).len() == diagonals.len(), || {
            format!("n = {n}: hull edge joins diagonals")
        })?;
        for &h in &hull {
            ensure(part.members(part.orbit_id(h)).len() == 1, || {
                format!("n = {n}: hull edge {h} not alone")
            })?;
        }
    }
    Ok("n = 5..12: one orbit of all diagonals, n singleton hull edges".into())
}

// 4
fn empty_pentagons(ps: &PointSet) -> usize {
    let n = ps.len();
    let mut count = 0;
    let mut idx = [0usize; 5];
    fn rec(ps: &PointSet, start: usize, depth: usize, idx: &mut [usize; 5], count: &mut usize) {
        if depth == 5 {
            if ps.empty_convex_polygon(idx) {
                *count += 1;
            }
            return;
        }
        for i in start..ps.len() {
            idx[depth] = i;
            rec(ps, i + 1, depth + 1, idx, count);
        }
    }
    if n >= 5 {
        rec(ps, 0, 0, &mut idx, &mut count);
    }
    count
}

fn search_pentagon_free(n: usize, rng: &mut ChaCha8Rng) -> Option<PointSet> {
    const GRID: i64 = 40;
    let valid = |pts: &[Point]| {
        PointSet::new(pts.to_vec())
            .ok()
            .filter(|ps| !ps.has_cocircular_quadruple())
    };
    for _ in 0..50 {
        let mut pts: Vec<Point>;
        let mut ps = loop {
            pts = (0..n)
                .map(|_| Point::new(rng.gen_range(0..=GRID), rng.gen_range(0..=GRID)))
                .collect();
            if let Some(ps) = valid(&pts) {
                break ps;
            }
        };
        let mut score = empty_pentagons(&ps);
        for _ in 0..20_000 {
            if score == 0 {
                return Some(ps);
            }
            let i = rng.gen_range(0..n);
            let old = pts[i];
            pts[i] = Point::new(rng.gen_range(0..=GRID), rng.gen_range(0..=GRID));
            match valid(&pts) {
                Some(cand) => {
                    let s = empty_pentagons(&cand);
                    if s <= score {
                        score = s;
                        ps = cand;
                    } else {
                        pts[i] = old;
                    }
                }
                None => pts[i] = old,
            }
        }
    }
    None
}

fn pentagon_free() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ps = (6..=9)
        .rev()
        .find_map(|n| search_pentagon_free(n, &mut rng))
        .ok_or("no pentagon-free set found")?;
    let ps = Arc::new(ps);
    ensure(empty_pentagons(&ps) == 0, || {
        "search returned a set with a pentagon".into()
    })?;
    let limits = Limits {
        max_labelled: 9,
        ..Limits::default()
    };
    let graph = Arc::new(FlipGraph::build(ps.clone(), &limits).map_err(|e| e.to_string())?);
    let mut seeds = 0;
    for i in 0..graph.len() {
        let seed = LabelledTriangulation::canonical(graph.triangulation(i).clone());
        let lg =
            LabelledFlipGraph::explore(graph.clone(), &seed, &limits).map_err(|e| e.to_string())?;
        ensure(
            lg.counts_per_triangulation().iter().all(|&c| c == 1),
            || "some triangulation carries two labellings".into(),
        )?;
        ensure(lg.labellings_on(i) == vec![seed.clone()], || {
            "seed relabelled".into()
        })?;
        seeds += 1;
    }
    let planner = SwapPlanner::new(ps.clone());
    let mut pairs = 0;
    for t in graph.triangulations() {
        let lt = LabelledTriangulation::canonical(t.clone());
        let edges: Vec<Edge> = t.edges().iter().copied().collect();
        for (x, &e) in edges.iter().enumerate() {
            for &f in &edges[x + 1..] {
                match planner.realize_elementary_swap(&lt, e, f) {
                    Err(Error::NotFound(..)) => pairs += 1,
                    other => {
                        return Err(format!("swap {e}, {f}: expected NotFound, got {other:?}"))
                    }
                }
            }
        }
    }
    let coords: Vec<String> = ps
        .points()
        .iter()
        .map(|p| format!("({},{})", p.x, p.y))
        .collect();
    Ok(format!(
        "n = {} [{}]; {} triangulations, {seeds} labelled BFS runs with no relabelling; {pairs} swaps NotFound",
        ps.len(),
        coords.join(" "),
        graph.len()
    ))
}

// 5
fn shelling() -> Result<String, String> {
    let mut total = 0;
    for (k, ps) in common::suite().into_iter().enumerate() {
        let r = verify_shelling(ps.clone(), &Limits::default())
            .map_err(|e| format!("instance {k}: {e}"))?;
        ensure(r.failures.is_empty(), || {
            format!("instance {k}: shelling fails at {:?}", r.failures)
        })?;
        ensure(r.delaunay_first, || {
            format!("instance {k}: first triangulation is not Delaunay")
        })?;
        total += r.order.len();
    }
    let pent =
        verify_shelling(common::pentagon(), &Limits::default()).map_err(|e| e.to_string())?;
    ensure(pent.passed(), || "pentagon".into())?;
    Ok(format!(
        "{} instances, {total} triangulations ordered, Delaunay first each time",
        common::SUITE.len() + 1
    ))
}

// 6
fn census() -> Result<String, String> {
    let (mut fours, mut fives, mut short) = (0, 0, 0);
    let mut sets = common::suite();
    sets.push(common::convex(6));
    for (k, ps) in sets.into_iter().enumerate() {
        let c = elementary_cycle_census(ps, &Limits::default()).map_err(|e| e.to_string())?;
        ensure(c.non_elementary().is_empty(), || {
            format!(
                "instance {k}: non-elementary short cycle {:?}",
                c.non_elementary()
            )
        })?;
        ensure(c.unmatched_elementary().is_empty(), || {
            format!("instance {k}: census cycle missed by search")
        })?;
        ensure(c.four_cycles_fix_labels(), || {
            format!("instance {k}: a 4-cycle moves labels")
        })?;
        ensure(c.five_cycles_transpose(), || {
            format!("instance {k}: a 5-cycle is not a transposition")
        })?;
        fours += c.four_cycles.len();
        fives += c.five_cycles.len();
        short += c.short_cycles.len();
    }
    Ok(format!("{short} cycles shorter than 6, all elementary: {fours} 4-cycles fix labels, {fives} 5-cycles transpose"))
}

// 7
fn lawson() -> Result<String, String> {
    const RUNS: u64 = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut flips = 0usize;
    for run in 0..RUNS {
        let n = 4 + (run as usize % 17);
        let ps = Arc::new(random_point_set(n, 1000, run).map_err(|e| e.to_string())?);
        let mut order: Vec<Edge> = ps.segments().collect();
        order.shuffle(&mut rng);
        let base = Triangulation::complete_in_order(ps.clone(), &[], &order).unwrap();
        let constraints: BTreeSet<Edge> = base
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.25))
            .collect();
        let required: Vec<Edge> = constraints.iter().copied().collect();
        let mut finals = Vec::new();
        for _ in 0..3 {
            order.shuffle(&mut rng);
            let start = Triangulation::complete_in_order(ps.clone(), &required, &order).unwrap();
            let (end, seq) =
                constrained_delaunay(&constraints, &start).map_err(|e| e.to_string())?;
            let mut t = start.clone();
            for ev in &seq {
                let before = t.clone();
                t.apply_event(ev).map_err(|e| format!("run {run}: {e}"))?;
                ensure(
                    compare_angle_vectors(&t, &before) == Ordering::Greater,
                    || format!("run {run}: flip {ev} does not raise the angle vector"),
                )?;
                ensure(!constraints.contains(&ev.removed), || {
                    format!("run {run}: constraint flipped")
                })?;
            }
            ensure(t == end, || format!("run {run}: replay differs"))?;
            flips += seq.len();
            locally_delaunay(&end, &constraints).map_err(|e| format!("run {run}: {e}"))?;
            finals.push(end);
        }
        ensure(finals.windows(2).all(|w| w[0] == w[1]), || {
            format!("run {run}: restarts disagree")
        })?;
        if constraints.is_empty() {
            ensure(finals[0] == delaunay(ps.clone()), || {
                format!("run {run}: not the Delaunay triangulation")
            })?;
        }
    }
    Ok(format!("{RUNS} constraint sets x 3 starts, {flips} flips, all strictly increasing; fixed points agree"))
}

/// No unconstrained edge has the far apex strictly inside the circle through
/// the near triangle.
fn locally_delaunay(t: &Triangulation, constraints: &BTreeSet<Edge>) -> Result<(), String> {
    let ps = t.points();
    for &e in t.edges() {
        if constraints.contains(&e) || !t.is_flippable(e) {
            continue;
        }
        let (a, b) = (e.a(), e.b());
        let (Some(c), Some(d)) = (t.left_apex(a, b), t.left_apex(b, a)) else {
            continue;
        };
        if in_circle(ps.point(a), ps.point(b), ps.point(c), ps.point(d)) == Ordering::Greater {
            return Err(format!("edge {e} is not locally Delaunay"));
        }
    }
    Ok(())
}

// 8
fn cliques() -> Result<String, String> {
    let (mut graphs, mut swaps) = (0, 0);
    for (k, ps) in common::suite().into_iter().enumerate() {
        let planner = SwapPlanner::new(ps.clone());
        let orbits = planner.graph().orbits();
        let all = FlipGraph::build(ps.clone(), &Limits::default()).map_err(|e| e.to_string())?;
        for t in all.triangulations() {
            let lt = LabelledTriangulation::canonical(t.clone());
            let edges: Vec<Edge> = t.edges().iter().copied().collect();
            let mut adj: BTreeMap<Edge, BTreeSet<Edge>> =
                edges.iter().map(|&e| (e, BTreeSet::new())).collect();
            for (x, &e) in edges.iter().enumerate() {
                for &f in &edges[x + 1..] {
                    match planner.realize_elementary_swap(&lt, e, f) {
                        Ok(seq) => {
                            let after = lt.apply_sequence(&seq).map_err(|e| e.to_string())?;
                            ensure(after == lt.with_swapped(e, f).unwrap(), || {
                                format!("instance {k}: swap {e}, {f} replays wrongly")
                            })?;
                            adj.get_mut(&e).unwrap().insert(f);
                            adj.get_mut(&f).unwrap().insert(e);
                            swaps += 1;
                        }
                        Err(Error::NotFound(..)) => {}
                        Err(other) => return Err(format!("instance {k}: {other}")),
                    }
                    ensure(adj[&e].contains(&f) == orbits.same_orbit(e, f), || {
                        format!("instance {k}: swap between {e} and {f} disagrees with orbits")
                    })?;
                }
            }
            for (&e, nbrs) in &adj {
                for &f in nbrs {
                    for &g in &adj[&f] {
                        ensure(g == e || adj[&e].contains(&g), || {
                            format!("instance {k}: {e}~{f}~{g} but not {e}~{g}")
                        })?;
                    }
                }
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} triangulations, {swaps} elementary swaps realized and replayed; every component complete"))
}

// 9
fn catalan() -> Result<String, String> {
    let mut counts = Vec::new();
    for n in 4..=10u64 {
        let k = n - 2;
        let expected = (0..k).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2));
        let g = FlipGraph::build(common::convex(n as usize), &Limits::default())
            .map_err(|e| e.to_string())?;
        ensure(g.len() as u64 == expected, || {
            format!("n = {n}: {} instead of {expected}", g.len())
        })?;
        counts.push(g.len().to_string());
    }
    Ok(format!("n = 4..10: {}", counts.join(", ")))
}
