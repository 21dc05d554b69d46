//! Flip sequences between triangulations that never touch a pinned edge set.
//!
//! Both endpoints are driven to the Delaunay triangulation constrained to the
//! pinned edges by Lawson flips; the path is the first cascade followed by the
//! inverse of the second, with back-to-back spurs cancelled.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::Edge;
use crate::triangulation::{constrained_delaunay, FlipSequence, Triangulation};

/// A sequence taking `t1` to `t2` in which no pinned edge is ever flipped.
pub fn path_between(
    t1: &Triangulation,
    t2: &Triangulation,
    pinned: &BTreeSet<Edge>,
) -> Result<FlipSequence> {
    if !t1.same_points(t2) {
        return Err(Error::PointSetMismatch);
    }
    if let Some(&e) = pinned.iter().find(|&&e| !t1.contains(e) || !t2.contains(e)) {
        return Err(Error::PinnedMissing(e));
    }
    let (hub1, mut path) = constrained_delaunay(pinned, t1)?;
    let (hub2, back) = constrained_delaunay(pinned, t2)?;
    if hub1 != hub2 {
        return Err(Error::Internal(
            "Lawson cascades from the two triangulations stopped at different hubs".into(),
        ));
    }
    path.append(&back.inverse());
    Ok(path.reduced())
}
