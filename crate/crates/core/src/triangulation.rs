//! Triangulations of a labeled point set with edge flips.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{EdgeKey, PointSet, VertexId};
use crate::planar::{bounded_faces, Rotation};

pub type FaceId = usize;

/// The (at most two) triangles bordering an edge `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeFaces {
    /// Triangle to the left of `a -> b`.
    pub left: Option<FaceId>,
    /// Triangle to the left of `b -> a`.
    pub right: Option<FaceId>,
}

impl EdgeFaces {
    pub fn is_interior(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }
}

/// Sorted edge list; equal keys mean identical triangulations of the same set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<EdgeKey>);

/// A triangulation: faces are counterclockwise triples, every interior edge
/// borders two of them and every hull edge one.
#[derive(Debug, Clone)]
pub struct Triangulation {
    points: Arc<PointSet>,
    faces: Vec<[VertexId; 3]>,
    edges: BTreeMap<EdgeKey, EdgeFaces>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.edges.keys().eq(other.edges.keys())
    }
}

impl Eq for Triangulation {}

/// Number of edges of any triangulation: `3n + 2h - 3`.
pub fn expected_edge_count(ps: &PointSet) -> usize {
    3 * ps.interior_count() + 2 * ps.hull_size() - 3
}

/// Number of bounded faces of any triangulation: `2n + h - 2`.
pub fn expected_face_count(ps: &PointSet) -> usize {
    2 * ps.interior_count() + ps.hull_size() - 2
}

impl Triangulation {
    /// Fan from the first hull vertex, then inserts interior points in input
    /// order, splitting the containing triangle into three.
    pub fn build_initial(points: Arc<PointSet>) -> Self {
        let hull = points.hull();
        let apex = hull[0];
        let mut faces: Vec<[VertexId; 3]> = hull
            .windows(2)
            .skip(1)
            .map(|w| [apex, w[0], w[1]])
            .collect();
        for p in (0..points.len()).filter(|&v| !points.is_hull_vertex(v)) {
            let idx = faces
                .iter()
                .position(|&[a, b, c]| {
                    points.orientation(a, b, p).is_ccw()
                        && points.orientation(b, c, p).is_ccw()
                        && points.orientation(c, a, p).is_ccw()
                })
                .expect("interior point lies strictly inside some triangle");
            let [a, b, c] = faces[idx];
            faces[idx] = [a, b, p];
            faces.push([b, c, p]);
            faces.push([c, a, p]);
        }
        Self::from_triangles(points, faces).expect("incremental insertion yields a triangulation")
    }

    /// Builds from a list of triangles, checking every structural invariant.
    pub fn from_triangles(points: Arc<PointSet>, triangles: Vec<[VertexId; 3]>) -> Result<Self> {
        let mut faces = Vec::with_capacity(triangles.len());
        for [a, b, c] in triangles {
            for v in [a, b, c] {
                points.check_vertex(v)?;
            }
            if a == b || b == c || a == c {
                return Err(Error::NotATriangulation(format!(
                    "degenerate triangle ({a}, {b}, {c})"
                )));
            }
            if points.orientation(a, b, c).is_ccw() {
                faces.push([a, b, c]);
            } else {
                faces.push([a, c, b]);
            }
        }
        if faces.len() != expected_face_count(&points) {
            return Err(Error::NotATriangulation(format!(
                "expected {} triangles, got {}",
                expected_face_count(&points),
                faces.len()
            )));
        }
        let mut edges: BTreeMap<EdgeKey, EdgeFaces> = BTreeMap::new();
        for (f, &[a, b, c]) in faces.iter().enumerate() {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                let key = EdgeKey::new(u, v);
                let slot = edges.entry(key).or_insert(EdgeFaces {
                    left: None,
                    right: None,
                });
                let side = if u < v { &mut slot.left } else { &mut slot.right };
                if side.is_some() {
                    return Err(Error::NotATriangulation(format!(
                        "directed edge {u} -> {v} used by two triangles"
                    )));
                }
                *side = Some(f);
            }
        }
        if edges.len() != expected_edge_count(&points) {
            return Err(Error::NotATriangulation(format!(
                "expected {} edges, got {}",
                expected_edge_count(&points),
                edges.len()
            )));
        }
        for (&e, ef) in &edges {
            if ef.is_interior() == points.is_hull_edge(e) {
                return Err(Error::NotATriangulation(format!(
                    "edge {e} has the wrong number of incident triangles"
                )));
            }
        }
        let keys: Vec<EdgeKey> = edges.keys().copied().collect();
        for (i, &e) in keys.iter().enumerate() {
            for &f in &keys[i + 1..] {
                if points.edges_cross(e, f) {
                    return Err(Error::CrossingEdges(e, f));
                }
            }
        }
        Ok(Triangulation {
            points,
            faces,
            edges,
        })
    }

    /// Builds from an edge set by tracing its faces.
    pub fn from_edges(points: Arc<PointSet>, edges: &[EdgeKey]) -> Result<Self> {
        for e in edges {
            points.check_vertex(e.a)?;
            points.check_vertex(e.b)?;
        }
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != expected_edge_count(&points) {
            return Err(Error::NotATriangulation(format!(
                "expected {} edges, got {}",
                expected_edge_count(&points),
                sorted.len()
            )));
        }
        for (i, &e) in sorted.iter().enumerate() {
            for &f in &sorted[i + 1..] {
                if points.edges_cross(e, f) {
                    return Err(Error::CrossingEdges(e, f));
                }
            }
        }
        let rotation = Rotation::new(&points, &sorted);
        let mut triangles = Vec::new();
        for face in bounded_faces(&points, &rotation) {
            let [a, b, c] = face[..] else {
                return Err(Error::NotATriangulation(format!(
                    "bounded face with {} sides",
                    face.len()
                )));
            };
            triangles.push([a, b, c]);
        }
        Self::from_triangles(points, triangles)
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn faces(&self) -> &[[VertexId; 3]] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> [VertexId; 3] {
        self.faces[f]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.edges.keys().copied()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.edges
            .iter()
            .filter(|(_, ef)| ef.is_interior())
            .map(|(&e, _)| e)
    }

    pub fn contains(&self, e: EdgeKey) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn incident_faces(&self, e: EdgeKey) -> Result<EdgeFaces> {
        self.edges
            .get(&e)
            .copied()
            .ok_or(Error::EdgeNotInTriangulation(e))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.keys().filter(|e| e.contains(v)).count()
    }

    /// Vertices opposite to `e = ab` in the triangles left of `a -> b` and
    /// left of `b -> a`. `None` for hull edges.
    fn opposite_vertices(&self, e: EdgeKey) -> Result<Option<(VertexId, VertexId)>> {
        let ef = self.incident_faces(e)?;
        let (Some(l), Some(r)) = (ef.left, ef.right) else {
            return Ok(None);
        };
        let third = |f: FaceId| {
            self.faces[f]
                .into_iter()
                .find(|&v| !e.contains(v))
                .expect("triangle has a vertex off the edge")
        };
        Ok(Some((third(l), third(r))))
    }

    /// An interior edge is flippable iff its two triangles form a strictly
    /// convex quadrilateral. Hull edges never are.
    pub fn is_flippable(&self, e: EdgeKey) -> Result<bool> {
        let Some((c, d)) = self.opposite_vertices(e)? else {
            return Ok(false);
        };
        // Quadrilateral a, d, b, c in counterclockwise order.
        let ps = &self.points;
        Ok(ps.orientation(d, e.b, c).is_ccw() && ps.orientation(c, e.a, d).is_ccw())
    }

    /// The other diagonal of the quadrilateral around `e`, if flippable.
    pub fn flip_partner(&self, e: EdgeKey) -> Result<Option<EdgeKey>> {
        if !self.is_flippable(e)? {
            return Ok(None);
        }
        let (c, d) = self.opposite_vertices(e)?.expect("flippable edges are interior");
        Ok(Some(EdgeKey::new(c, d)))
    }

    /// Replaces `e` by the other diagonal of its quadrilateral.
    pub fn flip(&self, e: EdgeKey) -> Result<Triangulation> {
        if !self.is_flippable(e)? {
            return Err(Error::NotFlippable(e));
        }
        let ef = self.edges[&e];
        let (fl, fr) = (ef.left.unwrap(), ef.right.unwrap());
        let (c, d) = self.opposite_vertices(e)?.unwrap();
        let (a, b) = (e.a, e.b);

        let mut next = self.clone();
        next.edges.remove(&e);
        next.faces[fl] = [a, d, c];
        next.faces[fr] = [d, b, c];
        for f in [fl, fr] {
            let [x, y, z] = next.faces[f];
            for (u, v) in [(x, y), (y, z), (z, x)] {
                let key = EdgeKey::new(u, v);
                let slot = next.edges.entry(key).or_insert(EdgeFaces {
                    left: None,
                    right: None,
                });
                if u < v {
                    slot.left = Some(f);
                } else {
                    slot.right = Some(f);
                }
            }
        }
        Ok(next)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey(self.edges.keys().copied().collect())
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            n_points: self.points.len(),
            edges: self.edges.keys().copied().collect(),
        }
    }

    /// Brute-force check that no two edges cross.
    pub fn is_crossing_free(&self) -> bool {
        let keys: Vec<EdgeKey> = self.edges().collect();
        keys.iter().enumerate().all(|(i, &e)| {
            keys[i + 1..]
                .iter()
                .all(|&f| !self.points.edges_cross(e, f))
        })
    }
}

/// Serialized form `{ "n_points": N, "edges": [[a, b], ...] }`, edges sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n_points: usize,
    pub edges: Vec<EdgeKey>,
}

impl TriangulationJson {
    pub fn into_triangulation(self, points: Arc<PointSet>) -> Result<Triangulation> {
        if self.n_points != points.len() {
            return Err(Error::NotATriangulation(format!(
                "serialized for {} points, point set has {}",
                self.n_points,
                points.len()
            )));
        }
        Triangulation::from_edges(points, &self.edges)
    }
}
