//! Convex decompositions contained in a triangulation and the ps-flippable
//! edge sets they induce.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::bounds::catalan;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::geometry::{EdgeKey, PointSet, VertexId};
use crate::planar::{bounded_faces, is_strictly_convex, Rotation};
use crate::triangulation::Triangulation;

/// Bounded faces of a subgraph of a triangulation, maintained under edge
/// removal by merging the two faces on either side of the removed edge.
#[derive(Debug, Clone)]
pub(crate) struct FaceState {
    points: Arc<PointSet>,
    faces: Vec<Option<Vec<VertexId>>>,
    /// Directed edge -> bounded face on its left.
    face_of: HashMap<(VertexId, VertexId), usize>,
    edges: BTreeSet<EdgeKey>,
}

impl FaceState {
    pub(crate) fn new(t: &Triangulation) -> Self {
        let mut face_of = HashMap::new();
        for (f, &[a, b, c]) in t.faces().iter().enumerate() {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                face_of.insert((u, v), f);
            }
        }
        FaceState {
            points: t.points().clone(),
            faces: t.faces().iter().map(|f| Some(f.to_vec())).collect(),
            face_of,
            edges: t.edges().collect(),
        }
    }

    /// The polygon obtained by deleting `e`, if `e` separates two bounded faces.
    pub(crate) fn merged_face(&self, e: EdgeKey) -> Option<Vec<VertexId>> {
        let (u, v) = (e.a, e.b);
        let fa = *self.face_of.get(&(u, v))?;
        let fb = *self.face_of.get(&(v, u))?;
        if fa == fb {
            return None;
        }
        let a = self.faces[fa].as_ref()?;
        let b = self.faces[fb].as_ref()?;
        let rotate_from = |cycle: &[VertexId], start: VertexId| -> Vec<VertexId> {
            let i = cycle.iter().position(|&x| x == start).expect("vertex on face");
            cycle[i..].iter().chain(&cycle[..i]).copied().collect()
        };
        // a walks u -> v, so starting at v it ends at u; b likewise from u to v.
        let a_rot = rotate_from(a, v);
        let b_rot = rotate_from(b, u);
        debug_assert_eq!(*a_rot.last().unwrap(), u);
        debug_assert_eq!(*b_rot.last().unwrap(), v);
        let mut merged = a_rot;
        merged.extend_from_slice(&b_rot[1..b_rot.len() - 1]);
        Some(merged)
    }

    /// Whether deleting `e` keeps every bounded face strictly convex.
    pub(crate) fn can_remove(&self, e: EdgeKey) -> bool {
        self.merged_face(e)
            .is_some_and(|merged| is_strictly_convex(&self.points, &merged))
    }

    /// Deletes `e`, merging its two faces. The caller checks removability.
    pub(crate) fn remove(&mut self, e: EdgeKey) {
        let merged = self.merged_face(e).expect("edge separates two bounded faces");
        let fa = self.face_of[&(e.a, e.b)];
        let fb = self.face_of[&(e.b, e.a)];
        let old_b = self.faces[fb].take().expect("live face");
        let k = old_b.len();
        for i in 0..k {
            self.face_of.insert((old_b[i], old_b[(i + 1) % k]), fa);
        }
        self.face_of.remove(&(e.a, e.b));
        self.face_of.remove(&(e.b, e.a));
        self.faces[fa] = Some(merged);
        self.edges.remove(&e);
    }

    pub(crate) fn faces(&self) -> Vec<Vec<VertexId>> {
        self.faces.iter().flatten().cloned().collect()
    }

    pub(crate) fn interior_edges(&self) -> Vec<EdgeKey> {
        self.edges
            .iter()
            .copied()
            .filter(|&e| !self.points.is_hull_edge(e))
            .collect()
    }
}

/// A crossing-free graph containing all hull edges whose bounded faces are
/// strictly convex polygons and which has no isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexDecomposition {
    points: Arc<PointSet>,
    edges: BTreeSet<EdgeKey>,
    faces: Vec<Vec<VertexId>>,
    removed: BTreeSet<EdgeKey>,
}

impl ConvexDecomposition {
    /// Deletes `removed` from `t`. Fails unless the set is ps-flippable.
    pub fn from_triangulation(t: &Triangulation, removed: &BTreeSet<EdgeKey>) -> Result<Self> {
        let mut state = FaceState::new(t);
        for &e in removed {
            if !t.contains(e) {
                return Err(Error::EdgeNotInTriangulation(e));
            }
            if t.points().is_hull_edge(e) {
                return Err(Error::NotPsFlippable(format!("{e} is a hull edge")));
            }
            if !state.can_remove(e) {
                return Err(Error::NotPsFlippable(format!(
                    "removing {e} leaves a non-convex face"
                )));
            }
            state.remove(e);
        }
        let d = Self::from_state(state, removed.clone());
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_state(state: FaceState, removed: BTreeSet<EdgeKey>) -> Self {
        let faces = state.faces();
        ConvexDecomposition {
            points: state.points,
            edges: state.edges,
            faces,
            removed,
        }
    }

    /// A decomposition given directly by its edges; `removed` is empty.
    pub fn from_edges(points: Arc<PointSet>, edges: &[EdgeKey]) -> Result<Self> {
        let set: BTreeSet<EdgeKey> = edges.iter().copied().collect();
        let list: Vec<EdgeKey> = set.iter().copied().collect();
        for (i, &e) in list.iter().enumerate() {
            points.check_vertex(e.a)?;
            points.check_vertex(e.b)?;
            for &f in &list[i + 1..] {
                if points.edges_cross(e, f) {
                    return Err(Error::CrossingEdges(e, f));
                }
            }
        }
        let rotation = Rotation::new(&points, &list);
        let faces = bounded_faces(&points, &rotation);
        let d = ConvexDecomposition {
            points,
            edges: set,
            faces,
            removed: BTreeSet::new(),
        };
        d.validate()?;
        Ok(d)
    }

    /// Checks hull containment, strict convexity of faces and vertex degrees.
    pub fn validate(&self) -> Result<()> {
        let ps = &self.points;
        for e in ps.hull_edges() {
            if !self.edges.contains(&e) {
                return Err(Error::NotPsFlippable(format!("hull edge {e} missing")));
            }
        }
        let mut degree = vec![0usize; ps.len()];
        for e in &self.edges {
            degree[e.a] += 1;
            degree[e.b] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d == 0) {
            return Err(Error::NotPsFlippable(format!("vertex {v} is isolated")));
        }
        if let Some(f) = self.faces.iter().find(|f| !is_strictly_convex(ps, f)) {
            return Err(Error::NotPsFlippable(format!("face {f:?} is not strictly convex")));
        }
        // Euler: a connected plane graph has m - N + 1 bounded faces.
        if self.faces.len() + ps.len() != self.edges.len() + 1 {
            return Err(Error::NotPsFlippable(
                "face count inconsistent with a connected subdivision".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn edges(&self) -> &BTreeSet<EdgeKey> {
        &self.edges
    }

    /// Bounded faces as counterclockwise vertex cycles.
    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    /// The ps-flippable set relative to the source triangulation.
    pub fn removed(&self) -> &BTreeSet<EdgeKey> {
        &self.removed
    }

    pub fn interior_edge_count(&self) -> usize {
        self.edges.len() - self.points.hull_size()
    }

    /// Number of triangulations obtained by triangulating each face
    /// independently: the product of `C(k - 2)` over faces with `k` sides.
    pub fn completion_count(&self) -> BigUint {
        self.faces
            .iter()
            .fold(BigUint::one(), |acc, f| acc * catalan(f.len() - 2))
    }
}

/// The greedy pruning: repeatedly scan interior edges in lexicographic order,
/// deleting every edge whose deletion keeps all faces convex, until a full pass
/// deletes nothing. The result is a locally minimal convex decomposition.
pub fn greedy_ps_flippable(t: &Triangulation) -> (BTreeSet<EdgeKey>, ConvexDecomposition) {
    let mut state = FaceState::new(t);
    let mut removed = BTreeSet::new();
    loop {
        let mut progress = false;
        for e in state.interior_edges() {
            if state.can_remove(e) {
                state.remove(e);
                removed.insert(e);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let d = ConvexDecomposition::from_state(state, removed.clone());
    (removed, d)
}

/// A maximum-cardinality ps-flippable set, by exhaustive search over subsets
/// of the flippable edges (only flippable edges can ever be deleted).
pub fn exact_max_ps_flippable(t: &Triangulation, caps: &Caps) -> Result<BTreeSet<EdgeKey>> {
    Caps::check("exact ps-flippable search", t.points().len(), caps.ps)?;
    let candidates: Vec<EdgeKey> = t
        .interior_edges()
        .filter(|&e| t.is_flippable(e).unwrap_or(false))
        .collect();
    let mut best = Vec::new();
    let mut current = Vec::new();
    search_ps(&candidates, 0, FaceState::new(t), &mut current, &mut best);
    Ok(best.into_iter().collect())
}

fn search_ps(
    candidates: &[EdgeKey],
    i: usize,
    state: FaceState,
    current: &mut Vec<EdgeKey>,
    best: &mut Vec<EdgeKey>,
) {
    if current.len() + (candidates.len() - i) <= best.len() {
        return;
    }
    if i == candidates.len() {
        *best = current.clone();
        return;
    }
    let e = candidates[i];
    // Subsets of ps-flippable sets are ps-flippable, so the removal order is
    // irrelevant and deciding edges one at a time is exhaustive.
    if state.can_remove(e) {
        let mut next = state.clone();
        next.remove(e);
        current.push(e);
        search_ps(candidates, i + 1, next, current, best);
        current.pop();
    }
    search_ps(candidates, i + 1, state, current, best);
}
