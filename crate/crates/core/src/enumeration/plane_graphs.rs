use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use super::SegmentIndex;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::planar::{bounded_faces, Rotation};
use crate::triangulation::expected_edge_count;

/// Filters for [`count_plane_graphs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    All,
    EdgesExactly(usize),
    EdgesAtMost(usize),
    EdgesAtLeast(usize),
    /// Cycle-free, any number of components.
    Forest,
    SpanningTree,
    /// Cycle-free with exactly `k` components, hence `N - k` edges.
    KForest(usize),
    Quadrangulation,
    /// Maximal crossing-free graphs.
    Triangulation,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::All => write!(f, "all"),
            Predicate::EdgesExactly(m) => write!(f, "eq={m}"),
            Predicate::EdgesAtMost(m) => write!(f, "le={m}"),
            Predicate::EdgesAtLeast(m) => write!(f, "ge={m}"),
            Predicate::Forest => write!(f, "forest"),
            Predicate::SpanningTree => write!(f, "spanning-tree"),
            Predicate::KForest(k) => write!(f, "k-forest={k}"),
            Predicate::Quadrangulation => write!(f, "quadrangulation"),
            Predicate::Triangulation => write!(f, "triangulation"),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    /// Accepts `all`, `eq=M`, `le=M`, `ge=M`, `forest`, `spanning-tree`,
    /// `k-forest=K`, `quadrangulation` and `triangulation`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unknown predicate '{s}'"));
        let (name, arg) = match s.split_once('=') {
            Some((name, arg)) => (name, Some(arg.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (name.replace('_', "-").as_str(), arg) {
            ("all", None) => Predicate::All,
            ("eq", Some(m)) => Predicate::EdgesExactly(m),
            ("le", Some(m)) => Predicate::EdgesAtMost(m),
            ("ge", Some(m)) => Predicate::EdgesAtLeast(m),
            ("forest", None) => Predicate::Forest,
            ("spanning-tree", None) => Predicate::SpanningTree,
            ("k-forest", Some(k)) => Predicate::KForest(k),
            ("quadrangulation", None) => Predicate::Quadrangulation,
            ("triangulation", None) => Predicate::Triangulation,
            _ => return Err(bad()),
        })
    }
}

/// Union-find over at most 16 vertices with undo.
#[derive(Clone)]
struct Components {
    parent: [u8; 16],
    size: [u8; 16],
    history: Vec<Option<u8>>,
    count: usize,
}

impl Components {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; 16];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        Components {
            parent,
            size: [1; 16],
            history: Vec::new(),
            count: n,
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Returns whether `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return true;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u8;
        self.size[ra] += self.size[rb];
        self.history.push(Some(rb as u8));
        self.count -= 1;
        false
    }

    fn undo(&mut self) {
        if let Some(Some(rb)) = self.history.pop() {
            let rb = rb as usize;
            let ra = self.parent[rb] as usize;
            self.size[ra] -= self.size[rb];
            self.parent[rb] = rb as u8;
            self.count += 1;
        }
    }
}

#[derive(Clone, Copy)]
struct Leaf {
    mask: u128,
    edges: usize,
    components: usize,
    acyclic: bool,
}

struct Engine {
    ps: Arc<PointSet>,
    idx: SegmentIndex,
    crossing: Vec<u128>,
    hull_mask: u128,
    quad_edges: Option<usize>,
    tri_edges: usize,
    max_edges: usize,
    min_edges: usize,
    acyclic_only: bool,
}

impl Engine {
    fn new(ps: &Arc<PointSet>, predicate: Option<Predicate>) -> Result<Self> {
        let idx = SegmentIndex::new(ps)?;
        let segs = &idx.segments;
        let crossing = segs
            .iter()
            .map(|&e| {
                segs.iter()
                    .enumerate()
                    .filter(|&(_, &f)| ps.edges_cross(e, f))
                    .fold(0u128, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let n = ps.len();
        let h = ps.hull_size();
        let quad_edges = h.is_multiple_of(2).then(|| 2 * n - 2 - h / 2);
        let tri_edges = expected_edge_count(ps);
        let (min_edges, max_edges, acyclic_only) = match predicate {
            None | Some(Predicate::All) => (0, usize::MAX, false),
            Some(Predicate::EdgesExactly(m)) => (m, m, false),
            Some(Predicate::EdgesAtMost(m)) => (0, m, false),
            Some(Predicate::EdgesAtLeast(m)) => (m, usize::MAX, false),
            Some(Predicate::Forest) => (0, n - 1, true),
            Some(Predicate::SpanningTree) => (n - 1, n - 1, true),
            Some(Predicate::KForest(k)) => (n.saturating_sub(k), n.saturating_sub(k), true),
            Some(Predicate::Quadrangulation) => match quad_edges {
                Some(m) => (m, m, false),
                None => (usize::MAX, 0, false),
            },
            Some(Predicate::Triangulation) => (tri_edges, tri_edges, false),
        };
        Ok(Engine {
            hull_mask: idx.mask(&ps.hull_edges()),
            ps: Arc::clone(ps),
            idx,
            crossing,
            quad_edges,
            tri_edges,
            max_edges,
            min_edges,
            acyclic_only,
        })
    }

    fn is_quadrangulation(&self, leaf: &Leaf) -> bool {
        if Some(leaf.edges) != self.quad_edges
            || leaf.mask & self.hull_mask != self.hull_mask
            || leaf.components != 1
        {
            return false;
        }
        let edges = self.idx.edges_of(leaf.mask);
        let rotation = Rotation::new(&self.ps, &edges);
        bounded_faces(&self.ps, &rotation).iter().all(|f| {
            let mut v = f.clone();
            v.sort_unstable();
            v.dedup();
            f.len() == 4 && v.len() == 4
        })
    }

    /// Independent partial assignments of the first `depth` segments.
    fn prefixes(&self, depth: usize) -> Vec<(u128, usize)> {
        let mut out = vec![(0u128, 0usize)];
        for i in 0..depth {
            let mut next = Vec::with_capacity(out.len() * 2);
            for &(mask, m) in &out {
                next.push((mask, m));
                if self.crossing[i] & mask == 0 && m < self.max_edges {
                    next.push((mask | 1 << i, m + 1));
                }
            }
            out = next;
        }
        out
    }

    fn run<F: FnMut(&Leaf)>(&self, start: usize, mask: u128, visit: &mut F) {
        let mut comps = Components::new(self.ps.len());
        let mut cycles = 0;
        for e in self.idx.edges_of(mask) {
            cycles += comps.union(e.a, e.b) as usize;
        }
        if self.acyclic_only && cycles > 0 {
            return;
        }
        let m = mask.count_ones() as usize;
        self.descend(start, mask, m, cycles, &mut comps, visit);
    }

    fn descend<F: FnMut(&Leaf)>(
        &self,
        i: usize,
        mask: u128,
        m: usize,
        cycles: usize,
        comps: &mut Components,
        visit: &mut F,
    ) {
        if m + (self.idx.len() - i) < self.min_edges {
            return;
        }
        if i == self.idx.len() {
            visit(&Leaf {
                mask,
                edges: m,
                components: comps.count,
                acyclic: cycles == 0,
            });
            return;
        }
        self.descend(i + 1, mask, m, cycles, comps, visit);
        if self.crossing[i] & mask != 0 || m >= self.max_edges {
            return;
        }
        let e = self.idx.segments[i];
        let closes = comps.union(e.a, e.b);
        if !(closes && self.acyclic_only) {
            self.descend(i + 1, mask | 1 << i, m + 1, cycles + closes as usize, comps, visit);
        }
        comps.undo();
    }

    fn matches(&self, p: Predicate, leaf: &Leaf) -> bool {
        let n = self.ps.len();
        match p {
            Predicate::All => true,
            Predicate::EdgesExactly(m) => leaf.edges == m,
            Predicate::EdgesAtMost(m) => leaf.edges <= m,
            Predicate::EdgesAtLeast(m) => leaf.edges >= m,
            Predicate::Forest => leaf.acyclic,
            Predicate::SpanningTree => leaf.acyclic && leaf.edges + 1 == n,
            Predicate::KForest(k) => leaf.acyclic && leaf.components == k,
            Predicate::Quadrangulation => self.is_quadrangulation(leaf),
            Predicate::Triangulation => leaf.edges == self.tri_edges,
        }
    }

    /// Runs `make()`-built accumulators over the search, split into
    /// independent subtrees when `parallel`, and merges them.
    fn fold<A, M, F>(&self, parallel: bool, make: M, visit: F) -> A
    where
        A: Send + Merge,
        M: Fn() -> A + Sync,
        F: Fn(&mut A, &Leaf) + Sync,
    {
        if !parallel {
            let mut acc = make();
            self.run(0, 0, &mut |leaf| visit(&mut acc, leaf));
            return acc;
        }
        let depth = self.idx.len().min(12);
        self.prefixes(depth)
            .into_par_iter()
            .map(|(mask, _)| {
                let mut acc = make();
                self.run(depth, mask, &mut |leaf| visit(&mut acc, leaf));
                acc
            })
            .reduce(&make, |mut a, b| {
                a.merge(b);
                a
            })
    }
}

trait Merge {
    fn merge(&mut self, other: Self);
}

impl Merge for u64 {
    fn merge(&mut self, other: Self) {
        *self += other;
    }
}

/// Number of crossing-free graphs on `ps` satisfying `predicate`. Graphs are
/// edge subsets of the complete segment set, so the empty graph and graphs
/// with isolated vertices count.
pub fn count_plane_graphs(
    ps: &Arc<PointSet>,
    predicate: Predicate,
    caps: &Caps,
    parallel: bool,
) -> Result<u64> {
    Caps::check("plane graph enumeration", ps.len(), caps.pg)?;
    let engine = Engine::new(ps, Some(predicate))?;
    Ok(engine.fold(
        parallel,
        || 0u64,
        |acc, leaf| {
            if engine.matches(predicate, leaf) {
                *acc += 1;
            }
        },
    ))
}

/// Histograms collected in a single unfiltered pass.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlaneGraphCensus {
    pub by_edge_count: BTreeMap<usize, u64>,
    /// Acyclic graphs keyed by their number of components.
    pub forests: BTreeMap<usize, u64>,
    pub quadrangulations: u64,
    pub triangulations: u64,
}

#[derive(Default)]
struct Tally {
    by_edges: Vec<u64>,
    forests: Vec<u64>,
    quads: u64,
    tris: u64,
}

impl Merge for Tally {
    fn merge(&mut self, other: Self) {
        for (a, b) in self.by_edges.iter_mut().zip(other.by_edges) {
            *a += b;
        }
        for (a, b) in self.forests.iter_mut().zip(other.forests) {
            *a += b;
        }
        self.quads += other.quads;
        self.tris += other.tris;
    }
}

pub fn plane_graph_census(
    ps: &Arc<PointSet>,
    caps: &Caps,
    parallel: bool,
) -> Result<PlaneGraphCensus> {
    Caps::check("plane graph enumeration", ps.len(), caps.pg)?;
    let engine = Engine::new(ps, None)?;
    let n = ps.len();
    let tally = engine.fold(
        parallel,
        || Tally {
            by_edges: vec![0; engine.idx.len() + 1],
            forests: vec![0; n + 1],
            ..Tally::default()
        },
        |acc, leaf| {
            acc.by_edges[leaf.edges] += 1;
            if leaf.acyclic {
                acc.forests[leaf.components] += 1;
            }
            if leaf.edges == engine.tri_edges {
                acc.tris += 1;
            }
            if engine.is_quadrangulation(leaf) {
                acc.quads += 1;
            }
        },
    );
    let nonzero = |v: Vec<u64>| -> BTreeMap<usize, u64> {
        v.into_iter().enumerate().filter(|&(_, c)| c > 0).collect()
    };
    Ok(PlaneGraphCensus {
        by_edge_count: nonzero(tally.by_edges),
        forests: nonzero(tally.forests),
        quadrangulations: tally.quads,
        triangulations: tally.tris,
    })
}
