use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use flipcount::enumeration::{
    count_plane_graphs, count_triangulations, plane_graph_census, spanning_tree_count,
    Predicate, SupportTable,
};
use flipcount::generators::{gen_convex, gen_double_chain, gen_low_flip, gen_random};
use flipcount::{Caps, EdgeKey, PointSet};

fn spanning_tree_masks(table: &SupportTable, n: usize, edges: &[EdgeKey]) -> Vec<u128> {
    fn find(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    fn go(
        edges: &[EdgeKey],
        bits: &[u128],
        from: usize,
        left: usize,
        mask: u128,
        parent: &mut Vec<usize>,
        out: &mut Vec<u128>,
    ) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in from..edges.len() {
            let (ra, rb) = (find(parent, edges[i].a), find(parent, edges[i].b));
            if ra != rb {
                parent[ra] = rb;
                go(edges, bits, i + 1, left - 1, mask | bits[i], parent, out);
                parent[ra] = ra;
            }
        }
    }
    let bits: Vec<u128> = edges.iter().map(|e| table.mask([e])).collect();
    let mut out = Vec::new();
    go(edges, &bits, 0, n - 1, 0, &mut (0..n).collect(), &mut out);
    out
}

/// Every spanning tree lies in some triangulation; weighting each occurrence
/// by `1 / supp` counts every distinct tree once.
#[test]
fn spanning_tree_count_matches_support_weighted_sum() {
    let caps = Caps::default();
    let sets = [
        gen_convex(6).unwrap(),
        gen_double_chain(3).unwrap(),
        gen_random(7, 1).unwrap(),
        gen_random(7, 2).unwrap(),
    ];
    for ps in sets {
        let ps = Arc::new(ps);
        let table = SupportTable::new(&ps, &caps).unwrap();
        let mut times: HashMap<u128, u64> = HashMap::new();
        let mut matrix_tree_total = BigInt::from(0);
        for t in table.triangulations() {
            let edges: Vec<EdgeKey> = t.edges().collect();
            let trees = spanning_tree_masks(&table, ps.len(), &edges);
            matrix_tree_total += BigInt::from(spanning_tree_count(ps.len(), &edges));
            assert_eq!(BigInt::from(trees.len()), BigInt::from(spanning_tree_count(ps.len(), &edges)));
            for m in trees {
                *times.entry(m).or_default() += 1;
            }
        }
        let weighted = times
            .iter()
            .map(|(&m, &k)| BigRational::new(BigInt::from(k), BigInt::from(table.support_mask(m))))
            .fold(BigRational::from_integer(0.into()), |a, b| a + b);
        let st = count_plane_graphs(&ps, Predicate::SpanningTree, &caps, false).unwrap();
        assert_eq!(weighted, BigRational::from_integer(BigInt::from(st)));
        assert!(matrix_tree_total >= BigInt::from(st));
    }
}

#[test]
fn flip_search_agrees_with_maximal_graphs() {
    let caps = Caps::default();
    for n in 3..=8 {
        let ps = Arc::new(gen_random(n, n as u64).unwrap());
        assert_eq!(
            count_triangulations(&ps, &caps, false).unwrap(),
            count_plane_graphs(&ps, Predicate::Triangulation, &caps, false).unwrap()
        );
    }
    let ps = gen_low_flip(8).unwrap().0;
    assert_eq!(
        count_triangulations(&ps, &caps, false).unwrap(),
        count_plane_graphs(&ps, Predicate::Triangulation, &caps, false).unwrap()
    );
}

/// The region between the chains has `C(2k - 2, k - 1)` triangulations, one
/// per monotone lattice path, and each outer pocket is a convex `k`-gon.
#[test]
fn double_chain_triangulation_counts() {
    let caps = Caps::default();
    let binomial = |n: u64, k: u64| (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i);
    let catalan = |k: u64| binomial(2 * k, k) / (k + 1);
    for k in 2..=5u64 {
        let chain = count_triangulations(&Arc::new(gen_double_chain(k as usize).unwrap()), &caps, false).unwrap();
        assert_eq!(chain, binomial(2 * k - 2, k - 1) * catalan(k - 2).pow(2));
    }
    // 80 < 132 at eight points; the double chain overtakes convex position at ten.
    let tri = |ps: PointSet| count_triangulations(&Arc::new(ps), &caps, false).unwrap();
    assert!(tri(gen_double_chain(4).unwrap()) < tri(gen_convex(8).unwrap()));
    assert!(tri(gen_double_chain(5).unwrap()) > tri(gen_convex(10).unwrap()));
}

#[test]
fn convex_plane_graph_counts_grow() {
    let caps = Caps::default();
    let counts: Vec<u64> = (3..=9)
        .map(|n| count_plane_graphs(&Arc::new(gen_convex(n).unwrap()), Predicate::All, &caps, false).unwrap())
        .collect();
    assert_eq!(counts, [8, 48, 352, 2880, 25216, 231168, 2190848]);
    assert!(counts.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn census_invariants() {
    let caps = Caps::default();
    for ps in [gen_random(8, 9).unwrap(), gen_double_chain(4).unwrap(), gen_convex(7).unwrap()] {
        let n = ps.len();
        let ps: Arc<PointSet> = Arc::new(ps);
        let census = plane_graph_census(&ps, &caps, false).unwrap();
        for (&k, &count) in &census.forests {
            let with_edges = census.by_edge_count.get(&(n - k)).copied().unwrap_or(0);
            assert!(count <= with_edges);
        }
        assert_eq!(census.forests[&n], 1);
        assert_eq!(
            census.triangulations,
            count_triangulations(&ps, &caps, false).unwrap()
        );
    }
}
