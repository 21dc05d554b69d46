use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::Edge;

/// One flip: `removed` is replaced by the other diagonal of its quadrilateral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipEvent {
    pub removed: Edge,
    pub inserted: Edge,
}

impl FlipEvent {
    pub fn new(removed: Edge, inserted: Edge) -> Self {
        FlipEvent { removed, inserted }
    }

    pub fn inverse(self) -> Self {
        FlipEvent {
            removed: self.inserted,
            inserted: self.removed,
        }
    }
}

impl fmt::Display for FlipEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "remove {} insert {}", self.removed, self.inserted)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipSequence {
    events: Vec<FlipEvent>,
}

impl FlipSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[FlipEvent] {
        &self.events
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FlipEvent> {
        self.events.iter()
    }

    pub fn push(&mut self, event: FlipEvent) {
        self.events.push(event);
    }

    pub fn append(&mut self, other: &FlipSequence) {
        self.events.extend_from_slice(&other.events);
    }

    /// The walk traversed backwards: events reversed, each one inverted.
    pub fn inverse(&self) -> FlipSequence {
        self.events.iter().rev().map(|e| e.inverse()).collect()
    }

    /// Removes every flip that is immediately undone by the next one,
    /// repeatedly, so that no spur `x x^-1` remains. The result reaches the
    /// same labelled triangulation as the input.
    pub fn reduced(&self) -> FlipSequence {
        let mut out: Vec<FlipEvent> = Vec::with_capacity(self.events.len());
        for &ev in &self.events {
            if out.last() == Some(&ev.inverse()) {
                out.pop();
            } else {
                out.push(ev);
            }
        }
        FlipSequence { events: out }
    }

    pub fn truncated(&self, len: usize) -> FlipSequence {
        self.events.iter().take(len).copied().collect()
    }
}

impl FromIterator<FlipEvent> for FlipSequence {
    fn from_iter<I: IntoIterator<Item = FlipEvent>>(iter: I) -> Self {
        FlipSequence {
            events: iter.into_iter().collect(),
        }
    }
}

impl Extend<FlipEvent> for FlipSequence {
    fn extend<I: IntoIterator<Item = FlipEvent>>(&mut self, iter: I) {
        self.events.extend(iter);
    }
}

impl IntoIterator for FlipSequence {
    type Item = FlipEvent;
    type IntoIter = std::vec::IntoIter<FlipEvent>;

    fn into_iter(self) -> Self::IntoIter {
        self.events.into_iter()
    }
}

impl<'a> IntoIterator for &'a FlipSequence {
    type Item = &'a FlipEvent;
    type IntoIter = std::slice::Iter<'a, FlipEvent>;

    fn into_iter(self) -> Self::IntoIter {
        self.events.iter()
    }
}
