//! Exact integer predicates and the labeled point-set model.
//!
//! Every geometric decision in the crate goes through [`orientation`], which
//! evaluates the sign of a 2x2 determinant in `i128`. Coordinates are limited
//! to magnitude below 2^62 so that neither the differences nor the products
//! can overflow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a point in its owning [`PointSet`], in input order.
pub type VertexId = usize;

/// Largest admissible coordinate magnitude (exclusive).
pub const COORD_LIMIT: i64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn is_ccw(self) -> bool {
        self == Orientation::CounterClockwise
    }

    pub fn is_cw(self) -> bool {
        self == Orientation::Clockwise
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of the triangle `pqr`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ax, ay) = (q.x as i128 - p.x as i128, q.y as i128 - p.y as i128);
    let (bx, by) = (r.x as i128 - p.x as i128, r.y as i128 - p.y as i128);
    ax * by - ay * bx
}

/// Exact sign of the determinant of `(q - p, r - p)`.
#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// Proper crossing of segments `ab` and `cd`: the open segments share a point.
///
/// Segments sharing an endpoint never cross. Under general position this is
/// the only way two distinct segments can touch.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o1 = cross(a, b, c).signum();
    let o2 = cross(a, b, d).signum();
    let o3 = cross(c, d, a).signum();
    let o4 = cross(c, d, b).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Undirected edge between two labeled points, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey {
    pub a: VertexId,
    pub b: VertexId,
}

impl EdgeKey {
    /// Normalizes the endpoint order. Panics on a loop.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert_ne!(u, v, "an edge needs two distinct endpoints");
        if u < v {
            EdgeKey { a: u, b: v }
        } else {
            EdgeKey { a: v, b: u }
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            debug_assert_eq!(self.b, v);
            self.a
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Serialize for EdgeKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom("edge endpoints must differ"));
        }
        Ok(EdgeKey::new(a, b))
    }
}

/// A validated set of labeled points in general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    hull: Vec<VertexId>,
    on_hull: Vec<bool>,
}

impl PointSet {
    /// Validates a raw point list: distinct points, no collinear triple, at
    /// least three points. Invalid input is rejected, never perturbed.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.x.abs() >= COORD_LIMIT || p.y.abs() >= COORD_LIMIT {
                return Err(Error::CoordinateOutOfRange(i));
            }
        }
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if cross(points[i], points[j], points[k]) == 0 {
                        return Err(Error::CollinearTriple(i, j, k));
                    }
                }
            }
        }
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        let hull = convex_hull(&points);
        let mut on_hull = vec![false; n];
        for &v in &hull {
            on_hull[v] = true;
        }
        Ok(PointSet {
            points,
            hull,
            on_hull,
        })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    /// Total number of points, `N`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of hull vertices, `h`.
    pub fn hull_size(&self) -> usize {
        self.hull.len()
    }

    /// Number of interior points, `n = N - h`.
    pub fn interior_count(&self) -> usize {
        self.points.len() - self.hull.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> Point {
        self.points[v]
    }

    /// Hull vertices in counterclockwise order.
    pub fn hull(&self) -> &[VertexId] {
        &self.hull
    }

    pub fn is_hull_vertex(&self, v: VertexId) -> bool {
        self.on_hull[v]
    }

    /// The `h` hull edges.
    pub fn hull_edges(&self) -> Vec<EdgeKey> {
        let h = self.hull.len();
        (0..h)
            .map(|i| EdgeKey::new(self.hull[i], self.hull[(i + 1) % h]))
            .collect()
    }

    pub fn is_hull_edge(&self, e: EdgeKey) -> bool {
        if !(self.on_hull[e.a] && self.on_hull[e.b]) {
            return false;
        }
        let h = self.hull.len();
        let i = self.hull.iter().position(|&v| v == e.a).unwrap();
        self.hull[(i + 1) % h] == e.b || self.hull[(i + h - 1) % h] == e.b
    }

    pub fn orientation(&self, p: VertexId, q: VertexId, r: VertexId) -> Orientation {
        orientation(self.points[p], self.points[q], self.points[r])
    }

    pub fn edges_cross(&self, e: EdgeKey, f: EdgeKey) -> bool {
        let p = &self.points;
        segments_cross(p[e.a], p[e.b], p[f.a], p[f.b])
    }

    /// All `N(N-1)/2` segments in lexicographic order.
    pub fn all_segments(&self) -> Vec<EdgeKey> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                out.push(EdgeKey { a, b });
            }
        }
        out
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    /// Renders the set in the point file format.
    pub fn to_point_file(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }
}

impl FromStr for PointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PointSet::new(parse_points(s)?)
    }
}

/// Parses the point file format: one `x y` pair of base-10 integers per line,
/// lines starting with `#` ignored. Blank lines are skipped as well.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected two integers, got {line:?}")));
        };
        let x = xs
            .parse::<i64>()
            .map_err(|e| parse_err(format!("bad x coordinate {xs:?}: {e}")))?;
        let y = ys
            .parse::<i64>()
            .map_err(|e| parse_err(format!("bad y coordinate {ys:?}: {e}")))?;
        points.push(Point::new(x, y));
    }
    Ok(points)
}

/// Convex hull by Andrew's monotone chain, counterclockwise, starting at the
/// lexicographically smallest point. Assumes distinct points, no three collinear.
pub fn convex_hull(points: &[Point]) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].x, points[i].y));
    if order.len() < 3 {
        return order;
    }
    let mut lower: Vec<VertexId> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && cross(
                points[lower[lower.len() - 2]],
                points[lower[lower.len() - 1]],
                points[i],
            ) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<VertexId> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && cross(
                points[upper[upper.len() - 2]],
                points[upper[upper.len() - 1]],
                points[i],
            ) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
