//! Flippable, simultaneously flippable and pseudo-simultaneously flippable
//! edge sets of a triangulation.

mod decomposition;
mod mis;
mod separability;

use std::collections::BTreeSet;

pub use decomposition::{exact_max_ps_flippable, greedy_ps_flippable, ConvexDecomposition};
pub use mis::ConflictGraph;
pub use separability::{
    decomposition_check, diagnostics, edge_separability, separability_report, Diagnostics,
    EdgeSeparability, SeparabilityReport,
};

use crate::config::Caps;
use crate::error::Result;
use crate::geometry::EdgeKey;
use crate::triangulation::Triangulation;

/// Interior edges whose two triangles form a convex quadrilateral.
pub fn flippable_set(t: &Triangulation) -> BTreeSet<EdgeKey> {
    t.interior_edges()
        .filter(|&e| t.is_flippable(e).expect("edge of t"))
        .collect()
}

/// Conflict graph on the flippable edges: two edges conflict when some
/// triangle of `t` is incident to both. Returns the edges in vertex order.
pub fn conflict_graph(t: &Triangulation) -> (Vec<EdgeKey>, ConflictGraph) {
    let flippable: Vec<EdgeKey> = flippable_set(t).into_iter().collect();
    let mut graph = ConflictGraph::new(flippable.len());
    let mut by_face: Vec<Vec<usize>> = vec![Vec::new(); t.face_count()];
    for (i, &e) in flippable.iter().enumerate() {
        let ef = t.incident_faces(e).expect("edge of t");
        for f in [ef.left, ef.right].into_iter().flatten() {
            by_face[f].push(i);
        }
    }
    for group in &by_face {
        for (j, &u) in group.iter().enumerate() {
            for &v in &group[j + 1..] {
                graph.add_edge(u, v);
            }
        }
    }
    (flippable, graph)
}

/// A maximum set of pairwise simultaneously flippable edges, found as an
/// exact maximum independent set of [`conflict_graph`].
pub fn max_simultaneously_flippable(t: &Triangulation, caps: &Caps) -> Result<BTreeSet<EdgeKey>> {
    Caps::check("exact simultaneous-flip search", t.points().len(), caps.mis)?;
    let (edges, graph) = conflict_graph(t);
    Ok(graph
        .maximum_independent_set()
        .into_iter()
        .map(|i| edges[i])
        .collect())
}

/// Whether no triangle of `t` is incident to two edges of `set` and every
/// edge of `set` is flippable.
pub fn is_simultaneously_flippable(t: &Triangulation, set: &BTreeSet<EdgeKey>) -> bool {
    let mut used = vec![false; t.face_count()];
    for &e in set {
        if !t.is_flippable(e).unwrap_or(false) {
            return false;
        }
        let ef = t.incident_faces(e).expect("flippable edge is in t");
        for f in [ef.left, ef.right].into_iter().flatten() {
            if std::mem::replace(&mut used[f], true) {
                return false;
            }
        }
    }
    true
}
