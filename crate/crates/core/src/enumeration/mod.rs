//! Exhaustive counting on small point sets.
//!
//! Triangulations are enumerated by breadth-first search over the flip graph.
//! Crossing-free graphs are enumerated directly by backtracking over the
//! segments in lexicographic order, so no deduplication is needed there.

mod plane_graphs;
mod spanning;
mod support;
mod triangulations;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::geometry::{EdgeKey, PointSet};

pub use plane_graphs::{count_plane_graphs, plane_graph_census, Predicate};
pub use spanning::{brute_force_spanning_trees, degree_product, spanning_tree_count};
pub use support::{support, verify_support_identity, SupportIdentity, SupportTable};
pub use triangulations::{count_triangulations, enumerate_triangulations};

/// Segment masks are `u128`, which bounds the point count.
pub const MASK_LIMIT: usize = 16;

/// A crossing-free straight-line graph. Isolated vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    points: Arc<PointSet>,
    edges: BTreeSet<EdgeKey>,
}

impl PlaneGraph {
    pub fn new(points: Arc<PointSet>, edges: impl IntoIterator<Item = EdgeKey>) -> Result<Self> {
        let edges: BTreeSet<EdgeKey> = edges.into_iter().collect();
        for e in &edges {
            points.check_vertex(e.b)?;
        }
        let list: Vec<EdgeKey> = edges.iter().copied().collect();
        for (i, &e) in list.iter().enumerate() {
            for &f in &list[i + 1..] {
                if points.edges_cross(e, f) {
                    return Err(Error::CrossingEdges(e, f));
                }
            }
        }
        Ok(PlaneGraph { points, edges })
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn edges(&self) -> &BTreeSet<EdgeKey> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Lexicographic segment numbering shared by the mask-based enumerators.
#[derive(Debug, Clone)]
pub(crate) struct SegmentIndex {
    pub segments: Vec<EdgeKey>,
    n: usize,
}

impl SegmentIndex {
    pub fn new(ps: &PointSet) -> Result<Self> {
        if ps.len() > MASK_LIMIT {
            return Err(Error::InstanceTooLarge {
                what: "segment mask",
                n: ps.len(),
                cap: MASK_LIMIT,
            });
        }
        Ok(SegmentIndex {
            segments: ps.all_segments(),
            n: ps.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn index(&self, e: EdgeKey) -> usize {
        // Row a starts after the (n-1) + (n-2) + ... + (n-a) earlier segments.
        e.a * (2 * self.n - e.a - 1) / 2 + (e.b - e.a - 1)
    }

    pub fn mask<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeKey>) -> u128 {
        edges.into_iter().fold(0, |m, &e| m | 1u128 << self.index(e))
    }

    pub fn edges_of(&self, mask: u128) -> Vec<EdgeKey> {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.segments[i])
            .collect()
    }
}

/// Forest counts: `by_components[k]` is the number of `k`-forests.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCounts {
    pub total: u64,
    pub by_components: BTreeMap<usize, u64>,
}

/// Every counted quantity for one point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub tri: u64,
    pub pg: u64,
    pub by_edge_count: BTreeMap<usize, u64>,
    pub st: u64,
    pub forests: ForestCounts,
    pub quadrangulations: u64,
}

impl CountReport {
    /// The edge-count histogram as CSV with header `m,count`.
    pub fn by_edge_count_csv(&self) -> String {
        let mut out = String::from("m,count\n");
        for (m, c) in &self.by_edge_count {
            out.push_str(&format!("{m},{c}\n"));
        }
        out
    }
}

/// Full [`CountReport`]: one flip-graph search and one plane-graph pass.
pub fn count_report(ps: &Arc<PointSet>, caps: &Caps, parallel: bool) -> Result<CountReport> {
    let tri = count_triangulations(ps, caps, parallel)?;
    let census = plane_graph_census(ps, caps, parallel)?;
    let forests = ForestCounts {
        total: census.forests.values().sum(),
        by_components: census.forests.clone(),
    };
    Ok(CountReport {
        tri,
        pg: census.by_edge_count.values().sum(),
        st: census.forests.get(&1).copied().unwrap_or(0),
        by_edge_count: census.by_edge_count,
        forests,
        quadrangulations: census.quadrangulations,
    })
}
