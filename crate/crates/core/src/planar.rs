//! Rotation systems and face tracing for straight-line plane graphs.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::geometry::{cross, EdgeKey, Point, PointSet, VertexId};

/// Compares the directions `a - c` and `b - c` by counterclockwise angle,
/// starting from the positive x axis. Exact.
pub fn angular_cmp(c: Point, a: Point, b: Point) -> Ordering {
    let half = |p: Point| {
        let (dx, dy) = (p.x as i128 - c.x as i128, p.y as i128 - c.y as i128);
        if dy > 0 || (dy == 0 && dx > 0) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| 0.cmp(&cross(c, a, b)))
}

/// Neighbors of every vertex sorted counterclockwise.
#[derive(Debug, Clone)]
pub struct Rotation {
    neighbors: Vec<Vec<VertexId>>,
}

impl Rotation {
    pub fn new<'a>(ps: &PointSet, edges: impl IntoIterator<Item = &'a EdgeKey>) -> Self {
        let mut neighbors = vec![Vec::new(); ps.len()];
        for e in edges {
            neighbors[e.a].push(e.b);
            neighbors[e.b].push(e.a);
        }
        for (v, list) in neighbors.iter_mut().enumerate() {
            let c = ps.point(v);
            list.sort_by(|&a, &b| angular_cmp(c, ps.point(a), ps.point(b)));
        }
        Rotation { neighbors }
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v].len()
    }

    fn position(&self, v: VertexId, w: VertexId) -> usize {
        self.neighbors[v]
            .iter()
            .position(|&x| x == w)
            .expect("neighbor present in rotation")
    }

    /// Counterclockwise successor of `w` around `v`.
    pub fn ccw_next(&self, v: VertexId, w: VertexId) -> VertexId {
        let list = &self.neighbors[v];
        list[(self.position(v, w) + 1) % list.len()]
    }

    /// Clockwise successor of `w` around `v`.
    pub fn cw_next(&self, v: VertexId, w: VertexId) -> VertexId {
        let list = &self.neighbors[v];
        list[(self.position(v, w) + list.len() - 1) % list.len()]
    }

    /// Traces every face as the cyclic vertex sequence with the face on the
    /// left. Each directed edge belongs to exactly one walk.
    pub fn face_walks(&self) -> Vec<Vec<VertexId>> {
        let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut walks = Vec::new();
        for u in 0..self.neighbors.len() {
            for &v in &self.neighbors[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    seen.insert((a, b));
                    walk.push(a);
                    let c = self.cw_next(b, a);
                    a = b;
                    b = c;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        walks
    }
}

/// Twice the signed area enclosed by a closed vertex walk.
pub fn signed_area2(ps: &PointSet, walk: &[VertexId]) -> i128 {
    let k = walk.len();
    let mut sum: i128 = 0;
    for i in 0..k {
        let p = ps.point(walk[i]);
        let q = ps.point(walk[(i + 1) % k]);
        sum += p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128;
    }
    sum
}

/// Every turn strictly left and every vertex distinct.
pub fn is_strictly_convex(ps: &PointSet, cycle: &[VertexId]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if !(0..k).all(|i| {
        ps.orientation(cycle[i], cycle[(i + 1) % k], cycle[(i + 2) % k])
            .is_ccw()
    }) {
        return false;
    }
    // Left turns everywhere still allow a polygon that winds more than once.
    let origin = cycle[0];
    (1..k - 1).all(|i| ps.orientation(origin, cycle[i], cycle[i + 1]).is_ccw())
}

/// Bounded faces of a connected plane graph (walks with positive area).
pub fn bounded_faces(ps: &PointSet, rotation: &Rotation) -> Vec<Vec<VertexId>> {
    rotation
        .face_walks()
        .into_iter()
        .filter(|w| signed_area2(ps, w) > 0)
        .collect()
}

/// Whether the edge set connects every vertex of `ps`.
pub fn is_connected(n: usize, edges: &[EdgeKey]) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for e in edges {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_diagonal_has_two_triangles() {
        let ps = PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let edges = [
            EdgeKey::new(0, 1),
            EdgeKey::new(1, 2),
            EdgeKey::new(2, 3),
            EdgeKey::new(0, 3),
            EdgeKey::new(0, 2),
        ];
        let rot = Rotation::new(&ps, &edges);
        let walks = rot.face_walks();
        assert_eq!(walks.len(), 3);
        let bounded = bounded_faces(&ps, &rot);
        assert_eq!(bounded.len(), 2);
        assert!(bounded.iter().all(|f| f.len() == 3 && is_strictly_convex(&ps, f)));
    }

    #[test]
    fn angular_order_is_total() {
        let c = Point::new(0, 0);
        let mut dirs = vec![
            Point::new(-1, -1),
            Point::new(1, 0),
            Point::new(0, -1),
            Point::new(-1, 0),
            Point::new(1, 1),
            Point::new(0, 1),
        ];
        dirs.sort_by(|&a, &b| angular_cmp(c, a, b));
        assert_eq!(
            dirs,
            vec![
                Point::new(1, 0),
                Point::new(1, 1),
                Point::new(0, 1),
                Point::new(-1, 0),
                Point::new(-1, -1),
                Point::new(0, -1),
            ]
        );
    }

    #[test]
    fn convexity_rejects_reflex_and_repeats() {
        let ps = PointSet::from_coords(&[(0, 0), (4, 0), (4, 4), (0, 4), (3, 2)]).unwrap();
        assert!(is_strictly_convex(&ps, &[0, 1, 2, 3]));
        assert!(!is_strictly_convex(&ps, &[0, 1, 2, 4]));
        assert!(!is_strictly_convex(&ps, &[0, 3, 2, 1]));
        assert!(!is_strictly_convex(&ps, &[0, 1, 0, 1]));
    }
}
