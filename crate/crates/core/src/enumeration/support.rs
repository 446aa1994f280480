use std::collections::{BTreeMap, HashMap};
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{count_plane_graphs, enumerate_triangulations, PlaneGraph, Predicate, SegmentIndex};
use crate::bounds::CatalanTable;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::flippability::greedy_ps_flippable;
use crate::geometry::{EdgeKey, PointSet};
use crate::triangulation::Triangulation;

/// Triangulations of one point set stored as segment masks.
#[derive(Debug, Clone)]
pub struct SupportTable {
    idx: SegmentIndex,
    triangulations: Vec<Triangulation>,
    masks: Vec<u128>,
}

impl SupportTable {
    pub fn new(ps: &Arc<PointSet>, caps: &Caps) -> Result<Self> {
        let idx = SegmentIndex::new(ps)?;
        let triangulations = enumerate_triangulations(ps, caps, false)?;
        let masks = triangulations
            .iter()
            .map(|t| idx.mask(&t.edges().collect::<Vec<_>>()))
            .collect();
        Ok(SupportTable {
            idx,
            triangulations,
            masks,
        })
    }

    pub fn triangulations(&self) -> &[Triangulation] {
        &self.triangulations
    }

    /// Bit `i` set for the `i`-th segment in lexicographic order.
    pub fn mask<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeKey>) -> u128 {
        self.idx.mask(edges)
    }

    pub fn mask_of(&self, g: &PlaneGraph) -> u128 {
        self.idx.mask(g.edges())
    }

    pub fn triangulation_mask(&self, i: usize) -> u128 {
        self.masks[i]
    }

    /// Number of triangulations containing every segment of `mask`.
    pub fn support_mask(&self, mask: u128) -> u64 {
        self.masks.iter().filter(|&&t| t & mask == mask).count() as u64
    }

    pub fn support(&self, g: &PlaneGraph) -> u64 {
        self.support_mask(self.mask_of(g))
    }
}

/// Number of triangulations of `ps` containing `g`.
pub fn support(ps: &Arc<PointSet>, g: &PlaneGraph, caps: &Caps) -> Result<u64> {
    Ok(SupportTable::new(ps, caps)?.support(g))
}

/// Outcome of [`verify_support_identity`].
#[derive(Debug, Clone, PartialEq)]
pub struct SupportIdentity {
    /// `sum_T sum_{G in T} 1 / supp(G)`.
    pub lhs: BigRational,
    pub pg: u64,
    pub tri: u64,
    /// Distinct subgraphs met while summing.
    pub distinct_graphs: u64,
    /// Pairs `(T, G)` with `G` a subgraph of `T`.
    pub pairs: u64,
}

#[derive(Default)]
struct MaskHasher(u64);

impl Hasher for MaskHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        }
    }

    fn write_u128(&mut self, v: u128) {
        let x = (v as u64) ^ ((v >> 64) as u64).rotate_left(32);
        self.0 = (x ^ (x >> 29)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        self.0 ^= self.0 >> 32;
    }
}

/// Checks `sum_T sum_{G in T} 1 / supp(G) = pg(S)` in exact rationals. Along
/// the way checks `supp(G) >= 2^|F \ G|` for `F` the greedy ps-flippable set
/// of every `T` containing `G`, and `C_{i+1} >= 2^i` up to `N`.
pub fn verify_support_identity(ps: &Arc<PointSet>, caps: &Caps) -> Result<SupportIdentity> {
    let table = SupportTable::new(ps, caps)?;
    let pg = count_plane_graphs(ps, Predicate::All, caps, false)?;
    CatalanTable::new(ps.len() + 1).check()?;

    // mask -> (times met, largest |F \ G| over the triangulations met in)
    let mut seen: HashMap<u128, (u64, u32), BuildHasherDefault<MaskHasher>> = HashMap::default();
    let mut pairs = 0u64;
    for (i, t) in table.triangulations.iter().enumerate() {
        let (flippable, _) = greedy_ps_flippable(t);
        let f = table.idx.mask(&flippable);
        let full = table.masks[i];
        let mut g = full;
        loop {
            let j = (f & !g).count_ones();
            let entry = seen.entry(g).or_insert((0, 0));
            entry.0 += 1;
            entry.1 = entry.1.max(j);
            pairs += 1;
            if g == 0 {
                break;
            }
            g = (g - 1) & full;
        }
    }

    let mut weight_by_support: BTreeMap<u64, u64> = BTreeMap::new();
    for (&g, &(times, j)) in &seen {
        let supp = table.support_mask(g);
        if supp < 1u64 << j {
            return Err(Error::IdentityViolation(format!(
                "supp = {supp} < 2^{j} for graph {:?}",
                table.idx.edges_of(g)
            )));
        }
        *weight_by_support.entry(supp).or_default() += times;
    }
    let lhs = weight_by_support
        .into_iter()
        .map(|(supp, w)| BigRational::new(BigInt::from(w), BigInt::from(supp)))
        .fold(BigRational::from_integer(BigInt::from(0)), |a, b| a + b);

    let report = SupportIdentity {
        lhs,
        pg,
        tri: table.triangulations.len() as u64,
        distinct_graphs: seen.len() as u64,
        pairs,
    };
    if report.lhs != BigRational::from_integer(BigInt::from(pg)) || report.distinct_graphs != pg {
        return Err(Error::IdentityViolation(format!(
            "support sum {} differs from pg = {pg} ({} distinct graphs)",
            report.lhs, report.distinct_graphs
        )));
    }
    Ok(report)
}
