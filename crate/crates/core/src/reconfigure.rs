//! Deciding and performing labelled reconfiguration.
//!
//! Feasibility is the per-label orbit test. When it holds, the unlabelled
//! triangulations are joined by a flip path and the labels left out of place
//! are repaired one at a time by elementary swaps, in ascending label order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::flippaths::path_between;
use crate::geometry::{Edge, PointSet};
use crate::orbits::{OrbitPartition, QuadrilateralGraph};
use crate::swaps::SwapPlanner;
use crate::triangulation::{FlipSequence, Label, LabelledTriangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// The smallest label whose two edges lie in different orbits.
    Infeasible(Label),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// A reconfiguring flip sequence with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconfiguration {
    pub sequence: FlipSequence,
    /// Flips spent on the unlabelled path before any label repair.
    pub unlabelled_flips: usize,
    pub swaps: usize,
}

/// Shares the quadrilateral graph and orbits across many queries on one
/// point set.
#[derive(Clone, Debug)]
pub struct Reconfigurer {
    orbits: OrbitPartition,
    planner: SwapPlanner,
}

impl Reconfigurer {
    pub fn new(points: Arc<PointSet>) -> Self {
        let graph = Arc::new(QuadrilateralGraph::new(points));
        Reconfigurer {
            orbits: graph.orbits(),
            planner: SwapPlanner::with_graph(graph),
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.planner = self.planner.with_budget(budget);
        self
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }

    pub fn planner(&self) -> &SwapPlanner {
        &self.planner
    }

    fn check_inputs(&self, lt1: &LabelledTriangulation, lt2: &LabelledTriangulation) -> Result<()> {
        let ps = self.planner.points();
        for lt in [lt1, lt2] {
            if **lt.triangulation().points() != **ps {
                return Err(Error::PointSetMismatch);
            }
        }
        let l1: Vec<Label> = lt1.edges_by_label().keys().copied().collect();
        let l2: Vec<Label> = lt2.edges_by_label().keys().copied().collect();
        if l1 != l2 {
            return Err(Error::LabelUniverseMismatch(format!(
                "{} labels against {}",
                l1.len(),
                l2.len()
            )));
        }
        Ok(())
    }

    pub fn feasible(
        &self,
        lt1: &LabelledTriangulation,
        lt2: &LabelledTriangulation,
    ) -> Result<Feasibility> {
        Ok(match self.first_violation(lt1, lt2)? {
            None => Feasibility::Feasible,
            Some((label, _, _)) => Feasibility::Infeasible(label),
        })
    }

    fn first_violation(
        &self,
        lt1: &LabelledTriangulation,
        lt2: &LabelledTriangulation,
    ) -> Result<Option<(Label, Edge, Edge)>> {
        self.check_inputs(lt1, lt2)?;
        for (&l, &e) in lt1.edges_by_label() {
            let f = lt2.edge_of(l).expect("same label universe");
            if !self.orbits.same_orbit(e, f) {
                return Ok(Some((l, e, f)));
            }
        }
        Ok(None)
    }

    pub fn reconfigure(
        &self,
        lt1: &LabelledTriangulation,
        lt2: &LabelledTriangulation,
    ) -> Result<Reconfiguration> {
        if let Some((label, from, to)) = self.first_violation(lt1, lt2)? {
            return Err(Error::Infeasible { label, from, to });
        }
        let mut sequence = path_between(
            lt1.triangulation(),
            lt2.triangulation(),
            &Default::default(),
        )?;
        let unlabelled_flips = sequence.len();
        let mut cur = lt1.apply_sequence(&sequence)?;
        let swaps = repair_swaps(&cur, lt2);
        for &(e, f) in &swaps {
            let step =
                self.planner
                    .realize_elementary_swap(&cur, e, f)
                    .map_err(|err| match err {
                        Error::NotFound(..) => Error::Internal(format!(
                            "no elementary swap between same-orbit edges {e} and {f}"
                        )),
                        other => other,
                    })?;
            cur = cur.apply_sequence(&step)?;
            sequence.append(&step);
        }
        if cur != *lt2 {
            return Err(Error::Internal(
                "repaired labelling differs from the target".into(),
            ));
        }
        Ok(Reconfiguration {
            sequence: sequence.reduced(),
            unlabelled_flips,
            swaps: swaps.len(),
        })
    }
}

/// The transpositions the repair loop performs to turn the labelling of
/// `current` into that of `target` on the same edge set.
fn repair_swaps(
    current: &LabelledTriangulation,
    target: &LabelledTriangulation,
) -> Vec<(Edge, Edge)> {
    let mut at = current.edges_by_label().clone();
    let mut on = current.labels().clone();
    let mut out = Vec::new();
    for (&l, &f) in target.edges_by_label() {
        let e = at[&l];
        if e == f {
            continue;
        }
        let displaced = on[&f];
        at.insert(l, f);
        at.insert(displaced, e);
        on.insert(f, l);
        on.insert(e, displaced);
        out.push((e, f));
    }
    out
}

pub fn feasible(lt1: &LabelledTriangulation, lt2: &LabelledTriangulation) -> Result<Feasibility> {
    Reconfigurer::new(lt1.triangulation().points().clone()).feasible(lt1, lt2)
}

/// A flip sequence taking `lt1` to `lt2` exactly, or `Error::Infeasible`
/// naming the smallest label that cannot reach its target edge.
pub fn reconfigure(
    lt1: &LabelledTriangulation,
    lt2: &LabelledTriangulation,
) -> Result<FlipSequence> {
    Ok(Reconfigurer::new(lt1.triangulation().points().clone())
        .reconfigure(lt1, lt2)?
        .sequence)
}

/// Number of elementary swaps used to repair `lt1` into `lt2`, which must
/// share their edge set.
pub fn swap_count(lt1: &LabelledTriangulation, lt2: &LabelledTriangulation) -> Result<usize> {
    let r = Reconfigurer::new(lt1.triangulation().points().clone());
    if let Some((label, from, to)) = r.first_violation(lt1, lt2)? {
        return Err(Error::Infeasible { label, from, to });
    }
    if lt1.triangulation().edges() != lt2.triangulation().edges() {
        return Err(Error::PreconditionViolated(
            "swap count needs the same underlying triangulation".into(),
        ));
    }
    Ok(repair_swaps(lt1, lt2).len())
}
