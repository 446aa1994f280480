//! Separable edges at interior vertices and the edge/face accounting of a
//! locally minimal convex decomposition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ConvexDecomposition;
use crate::error::{Error, Result};
use crate::geometry::{EdgeKey, PointSet, VertexId};
use crate::planar::Rotation;

/// Whether the counterclockwise angles `prev -> mid` and `mid -> next` around
/// `p` sum to more than pi. Decided by orientation tests only.
fn angle_sum_exceeds_pi(ps: &PointSet, p: VertexId, prev: VertexId, mid: VertexId, next: VertexId) -> bool {
    // An angle above pi on its own settles it.
    if ps.orientation(p, prev, mid).is_cw() || ps.orientation(p, mid, next).is_cw() {
        return true;
    }
    // Both angles are below pi, so their sum lies in (0, 2 pi) and exceeds pi
    // exactly when `next` lies clockwise of `prev`.
    ps.orientation(p, prev, next).is_cw()
}

/// Separability of every edge at each of its interior endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeSeparability {
    /// Separable at `a` (always false if `a` is a hull vertex).
    pub at_a: bool,
    pub at_b: bool,
}

impl EdgeSeparability {
    pub fn is_double(&self) -> bool {
        self.at_a && self.at_b
    }

    pub fn any(&self) -> bool {
        self.at_a || self.at_b
    }
}

/// Classifies every edge of `d` at its interior endpoints.
pub fn edge_separability(d: &ConvexDecomposition) -> Result<BTreeMap<EdgeKey, EdgeSeparability>> {
    let ps = d.points();
    let rotation = Rotation::new(ps, d.edges());
    let mut out: BTreeMap<EdgeKey, EdgeSeparability> =
        d.edges().iter().map(|&e| (e, EdgeSeparability::default())).collect();
    for p in (0..ps.len()).filter(|&v| !ps.is_hull_vertex(v)) {
        let nbrs = rotation.neighbors(p);
        let k = nbrs.len();
        if k < 3 {
            return Err(Error::IdentityViolation(format!(
                "interior vertex {p} has degree {k} < 3"
            )));
        }
        for i in 0..k {
            let (prev, q, next) = (nbrs[(i + k - 1) % k], nbrs[i], nbrs[(i + 1) % k]);
            if angle_sum_exceeds_pi(ps, p, prev, q, next) {
                let e = EdgeKey::new(p, q);
                let slot = out.get_mut(&e).expect("edge in decomposition");
                if e.a == p {
                    slot.at_a = true;
                } else {
                    slot.at_b = true;
                }
            }
        }
    }
    Ok(out)
}

/// Vertex and edge classification of a locally minimal convex decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    /// Interior vertices of degree 3.
    pub v3: usize,
    /// Interior vertices of degree at least 4 with 0, 1, 2 separable edges.
    pub v40: usize,
    pub v41: usize,
    pub v42: usize,
    /// Edges separable at both endpoints.
    pub m_double: usize,
    /// `3 v3 + 2 v42 + v41`.
    pub a: usize,
    pub removed_count: usize,
}

/// Builds the report and checks both separability properties together with
/// `m_int = a - m_double` and `removed = 3n + h - 3 - a + m_double`.
///
/// A failure means the decomposition is not locally minimal or the
/// implementation is wrong; it never reflects bad input points.
pub fn separability_report(d: &ConvexDecomposition) -> Result<SeparabilityReport> {
    let ps = d.points();
    let sep = edge_separability(d)?;
    let rotation = Rotation::new(ps, d.edges());
    let (mut v3, mut v40, mut v41, mut v42) = (0, 0, 0, 0);
    for p in (0..ps.len()).filter(|&v| !ps.is_hull_vertex(v)) {
        let nbrs = rotation.neighbors(p);
        let flags: Vec<bool> = nbrs
            .iter()
            .map(|&q| {
                let e = EdgeKey::new(p, q);
                let s = sep[&e];
                if e.a == p {
                    s.at_a
                } else {
                    s.at_b
                }
            })
            .collect();
        let count = flags.iter().filter(|&&f| f).count();
        match (nbrs.len(), count) {
            (3, 3) => v3 += 1,
            (3, c) => {
                return Err(Error::IdentityViolation(format!(
                    "degree-3 interior vertex {p} has only {c} separable edges"
                )))
            }
            (_, 0) => v40 += 1,
            (_, 1) => v41 += 1,
            (k, 2) => {
                let i = flags.iter().position(|&f| f).unwrap();
                if !(flags[(i + 1) % k] || flags[(i + k - 1) % k]) {
                    return Err(Error::IdentityViolation(format!(
                        "separable edges at vertex {p} are not consecutive"
                    )));
                }
                v42 += 1
            }
            (_, c) => {
                return Err(Error::IdentityViolation(format!(
                    "interior vertex {p} of degree >= 4 has {c} separable edges"
                )))
            }
        }
    }
    let m_double = sep.values().filter(|s| s.is_double()).count();
    let a = 3 * v3 + 2 * v42 + v41;
    let report = SeparabilityReport {
        v3,
        v40,
        v41,
        v42,
        m_double,
        a,
        removed_count: d.removed().len(),
    };

    let m_int = d.interior_edge_count() as i64;
    if m_int != a as i64 - m_double as i64 {
        return Err(Error::IdentityViolation(format!(
            "m_int = {m_int} but a - m_double = {}",
            a as i64 - m_double as i64
        )));
    }
    let (n, h) = (ps.interior_count() as i64, ps.hull_size() as i64);
    let predicted = 3 * n + h - 3 - a as i64 + m_double as i64;
    if report.removed_count as i64 != predicted {
        return Err(Error::IdentityViolation(format!(
            "removed {} edges but 3n + h - 3 - a + m_double = {predicted}",
            report.removed_count
        )));
    }
    Ok(report)
}

/// Diagnostics record for a convex decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub v3: usize,
    pub v40: usize,
    pub v41: usize,
    pub v42: usize,
    pub m_double: usize,
    pub removed: usize,
    pub faces: usize,
    pub edges: usize,
    pub identities_ok: bool,
    #[serde(skip)]
    pub violations: Vec<String>,
}

/// Evaluates every identity and bound for `d` and records which fail:
/// Euler (`f = m_int - n + 1`), the face degree sum
/// (`sum (k - 2) f_k = 2n + h - 2`), the separability identities, the face and
/// edge caps `3N/2 - h` and `5N/2 - h - 1`, the refined removal bound
/// `N/2 + v41/2 + 3 v40/2 - 2` and `removed >= max(floor(N/2) - 2, h - 3)`.
pub fn diagnostics(d: &ConvexDecomposition) -> Diagnostics {
    let ps = d.points();
    let (big_n, n, h) = (
        ps.len() as i64,
        ps.interior_count() as i64,
        ps.hull_size() as i64,
    );
    let f = d.faces().len() as i64;
    let m = d.edges().len() as i64;
    let m_int = d.interior_edge_count() as i64;
    let removed = d.removed().len() as i64;
    let mut violations = Vec::new();

    if f != m_int - n + 1 {
        violations.push(format!("Euler: f = {f}, m_int - n + 1 = {}", m_int - n + 1));
    }
    let degree_sum: i64 = d.faces().iter().map(|face| face.len() as i64 - 2).sum();
    if degree_sum != 2 * n + h - 2 {
        violations.push(format!(
            "face degrees: sum (k - 2) f_k = {degree_sum}, 2n + h - 2 = {}",
            2 * n + h - 2
        ));
    }
    if 2 * f > 3 * big_n - 2 * h {
        violations.push(format!("face cap: f = {f} > 3N/2 - h"));
    }
    if 2 * m > 5 * big_n - 2 * h - 2 {
        violations.push(format!("edge cap: m = {m} > 5N/2 - h - 1"));
    }
    let lower = (big_n / 2 - 2).max(h - 3);
    if removed < lower {
        violations.push(format!("removed {removed} < max(floor(N/2) - 2, h - 3) = {lower}"));
    }

    let report = separability_report(d);
    let (v3, v40, v41, v42, m_double) = match &report {
        Ok(r) => {
            let refined = big_n + r.v41 as i64 + 3 * r.v40 as i64 - 4;
            if 2 * removed < refined {
                violations.push(format!(
                    "refined bound: 2 * removed = {} < N + v41 + 3 v40 - 4 = {refined}",
                    2 * removed
                ));
            }
            (r.v3, r.v40, r.v41, r.v42, r.m_double)
        }
        Err(e) => {
            violations.push(e.to_string());
            (0, 0, 0, 0, 0)
        }
    };

    Diagnostics {
        v3,
        v40,
        v41,
        v42,
        m_double,
        removed: removed as usize,
        faces: f as usize,
        edges: m as usize,
        identities_ok: violations.is_empty(),
        violations,
    }
}

/// Like [`diagnostics`] but fails on the first violated identity or bound.
pub fn decomposition_check(d: &ConvexDecomposition) -> Result<Diagnostics> {
    let diag = diagnostics(d);
    match diag.violations.first() {
        Some(v) => Err(Error::BoundViolation(v.clone())),
        None => Ok(diag),
    }
}
