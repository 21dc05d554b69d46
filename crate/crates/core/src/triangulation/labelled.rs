use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FlipEvent, FlipSequence, Triangulation};
use crate::error::{Error, Result};
use crate::geometry::Edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label(pub u32);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A triangulation whose edges carry the labels `1..=m` bijectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTriangulation {
    tri: Triangulation,
    by_edge: BTreeMap<Edge, Label>,
    by_label: BTreeMap<Label, Edge>,
}

impl LabelledTriangulation {
    pub fn new(tri: Triangulation, labels: BTreeMap<Edge, Label>) -> Result<Self> {
        let m = tri.len();
        if labels.len() != m {
            return Err(Error::InvalidLabelling(format!(
                "{} labels for {} edges",
                labels.len(),
                m
            )));
        }
        let mut by_label = BTreeMap::new();
        for (&e, &l) in &labels {
            if !tri.contains(e) {
                return Err(Error::InvalidLabelling(format!(
                    "edge {e} is not in the triangulation"
                )));
            }
            if l.0 == 0 || l.0 as usize > m {
                return Err(Error::InvalidLabelling(format!(
                    "label {l} outside 1..={m}"
                )));
            }
            if by_label.insert(l, e).is_some() {
                return Err(Error::InvalidLabelling(format!("label {l} used twice")));
            }
        }
        Ok(LabelledTriangulation {
            tri,
            by_edge: labels,
            by_label,
        })
    }

    pub fn from_label_map(tri: Triangulation, by_label: BTreeMap<Label, Edge>) -> Result<Self> {
        let mut by_edge = BTreeMap::new();
        for (&l, &e) in &by_label {
            if by_edge.insert(e, l).is_some() {
                return Err(Error::InvalidLabelling(format!(
                    "edge {e} carries two labels"
                )));
            }
        }
        Self::new(tri, by_edge)
    }

    /// Labels `1..=m` in sorted edge order.
    pub fn canonical(tri: Triangulation) -> Self {
        let by_edge: BTreeMap<Edge, Label> = tri
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, Label(i as u32 + 1)))
            .collect();
        let by_label = by_edge.iter().map(|(&e, &l)| (l, e)).collect();
        LabelledTriangulation {
            tri,
            by_edge,
            by_label,
        }
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn label_of(&self, e: Edge) -> Option<Label> {
        self.by_edge.get(&e).copied()
    }

    pub fn edge_of(&self, l: Label) -> Option<Edge> {
        self.by_label.get(&l).copied()
    }

    pub fn labels(&self) -> &BTreeMap<Edge, Label> {
        &self.by_edge
    }

    pub fn edges_by_label(&self) -> &BTreeMap<Label, Edge> {
        &self.by_label
    }

    /// Flips `e` in place, moving its label onto the inserted diagonal.
    pub fn flip(&mut self, e: Edge) -> Result<FlipEvent> {
        let ev = self.tri.flip(e)?;
        let l = self.by_edge.remove(&ev.removed).expect("labelled edge");
        self.by_edge.insert(ev.inserted, l);
        self.by_label.insert(l, ev.inserted);
        Ok(ev)
    }

    pub fn flipped(&self, e: Edge) -> Result<(LabelledTriangulation, FlipEvent)> {
        let mut lt = self.clone();
        let ev = lt.flip(e)?;
        Ok((lt, ev))
    }

    pub fn apply_event(&mut self, ev: &FlipEvent) -> std::result::Result<(), String> {
        self.tri.apply_event(ev)?;
        let l = self.by_edge.remove(&ev.removed).expect("labelled edge");
        self.by_edge.insert(ev.inserted, l);
        self.by_label.insert(l, ev.inserted);
        Ok(())
    }

    pub fn apply_sequence(&self, seq: &FlipSequence) -> Result<LabelledTriangulation> {
        let mut lt = self.clone();
        for (index, ev) in seq.iter().enumerate() {
            lt.apply_event(ev)
                .map_err(|reason| Error::InvalidAt { index, reason })?;
        }
        Ok(lt)
    }

    /// Same triangulation with the labels on `e` and `f` exchanged.
    pub fn with_swapped(&self, e: Edge, f: Edge) -> Result<LabelledTriangulation> {
        let le = self.label_of(e).ok_or(Error::NotPresent(e))?;
        let lf = self.label_of(f).ok_or(Error::NotPresent(f))?;
        let mut out = self.clone();
        out.by_edge.insert(e, lf);
        out.by_edge.insert(f, le);
        out.by_label.insert(lf, e);
        out.by_label.insert(le, f);
        Ok(out)
    }
}
