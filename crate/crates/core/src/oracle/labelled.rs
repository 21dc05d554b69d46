use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use super::{FlipGraph, Limits, MAX_SLOTS};
use crate::error::{Error, Result};
use crate::triangulation::{Label, LabelledTriangulation};

type Slots = [u8; MAX_SLOTS];

/// Labelled triangulations reachable from a seed, with BFS distances. A state
/// is a node of the unlabelled flip graph plus the label on each edge slot.
#[derive(Clone, Debug)]
pub struct LabelledFlipGraph {
    graph: Arc<FlipGraph>,
    seed: (usize, Slots),
    dist: HashMap<(u32, Slots), u32>,
}

impl LabelledFlipGraph {
    pub fn explore(
        graph: Arc<FlipGraph>,
        seed: &LabelledTriangulation,
        limits: &Limits,
    ) -> Result<Self> {
        limits.check_labelled(graph.points())?;
        let m = graph.points().triangulation_size();
        if m > MAX_SLOTS {
            return Err(Error::TooLarge {
                n: graph.points().len(),
                limit: limits.max_labelled,
            });
        }
        let start = encode(&graph, seed)?;
        let mut dist = HashMap::from([((start.0 as u32, start.1), 0u32)]);
        let mut queue = VecDeque::from([(start.0 as u32, start.1)]);
        while let Some(state @ (i, labels)) = queue.pop_front() {
            let d = dist[&state];
            for arc in graph.arcs(i as usize) {
                let mut next = [0u8; MAX_SLOTS];
                for s in 0..m {
                    next[s] = labels[arc.perm[s] as usize];
                }
                let key = (arc.to as u32, next);
                if !dist.contains_key(&key) {
                    if dist.len() >= limits.max_states {
                        return Err(Error::StateBudget(limits.max_states));
                    }
                    dist.insert(key, d + 1);
                    queue.push_back(key);
                }
            }
        }
        Ok(LabelledFlipGraph {
            graph,
            seed: start,
            dist,
        })
    }

    pub fn graph(&self) -> &FlipGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn seed(&self) -> LabelledTriangulation {
        decode(&self.graph, self.seed.0, &self.seed.1)
    }

    pub fn contains(&self, lt: &LabelledTriangulation) -> bool {
        self.distance(lt).is_some()
    }

    /// Number of labelled flips from the seed, if reachable.
    pub fn distance(&self, lt: &LabelledTriangulation) -> Option<usize> {
        let (i, labels) = encode(&self.graph, lt).ok()?;
        self.dist.get(&(i as u32, labels)).map(|&d| d as usize)
    }

    /// How many reachable labellings sit on each unlabelled node.
    pub fn counts_per_triangulation(&self) -> Vec<usize> {
        let mut out = vec![0; self.graph.len()];
        for &(i, _) in self.dist.keys() {
            out[i as usize] += 1;
        }
        out
    }

    /// The reachable labellings of node `i`, sorted by their label maps.
    pub fn labellings_on(&self, i: usize) -> Vec<LabelledTriangulation> {
        let mut raw: Vec<&Slots> = self
            .dist
            .keys()
            .filter(|(j, _)| *j as usize == i)
            .map(|(_, s)| s)
            .collect();
        raw.sort();
        raw.into_iter().map(|s| decode(&self.graph, i, s)).collect()
    }

    /// Every reachable labelled triangulation with its distance, in a fixed
    /// order.
    pub fn states(&self) -> Vec<(LabelledTriangulation, usize)> {
        let mut raw: Vec<(&(u32, Slots), &u32)> = self.dist.iter().collect();
        raw.sort();
        raw.into_iter()
            .map(|(&(i, ref s), &d)| (decode(&self.graph, i as usize, s), d as usize))
            .collect()
    }
}

fn encode(graph: &FlipGraph, lt: &LabelledTriangulation) -> Result<(usize, Slots)> {
    let i = graph
        .index_of(lt.triangulation())
        .ok_or(Error::PointSetMismatch)?;
    let mut labels = [0u8; MAX_SLOTS];
    for (s, &e) in graph.edges(i).iter().enumerate() {
        labels[s] = lt.label_of(e).expect("labelled edge").0 as u8;
    }
    Ok((i, labels))
}

fn decode(graph: &FlipGraph, i: usize, labels: &Slots) -> LabelledTriangulation {
    let map: BTreeMap<_, _> = graph
        .edges(i)
        .iter()
        .enumerate()
        .map(|(s, &e)| (e, Label(labels[s] as u32)))
        .collect();
    LabelledTriangulation::new(graph.triangulation(i).clone(), map).expect("decoded state is valid")
}

/// Labelled BFS from `seed`, enumerating the unlabelled flip graph first.
pub fn labelled_reachable(
    seed: &LabelledTriangulation,
    limits: &Limits,
) -> Result<LabelledFlipGraph> {
    let points = seed.triangulation().points().clone();
    limits.check_labelled(&points)?;
    let graph = Arc::new(FlipGraph::build(points, limits)?);
    LabelledFlipGraph::explore(graph, seed, limits)
}
