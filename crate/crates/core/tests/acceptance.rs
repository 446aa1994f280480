//! Acceptance criteria 1 to 11. Each test writes one PASS or FAIL line to
//! stderr, outside the test harness capture, before asserting.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flipcount::bounds::catalan;
use flipcount::enumeration::{
    brute_force_spanning_trees, count_plane_graphs, count_report, count_triangulations,
    degree_product, enumerate_triangulations, spanning_tree_count, verify_support_identity,
    PlaneGraph, Predicate, SupportTable,
};
use flipcount::flippability::{decomposition_check, greedy_ps_flippable, ConvexDecomposition};
use flipcount::generators::{gen_convex, gen_double_chain, gen_low_flip};
use flipcount::planar::{bounded_faces, Rotation};
use flipcount::verify::{
    bounds_suite, lemma_checks, lemma_corpus, random_sets, ratio_check, tightness_checks, Check,
};
use flipcount::{Caps, EdgeKey, PointSet, Triangulation};

#[allow(clippy::explicit_write)]
fn report(id: u32, title: &str, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {id:>2} {status}: {title}; {detail}");
    for f in failures.iter().take(5) {
        line.push_str(&format!("\n    {f}"));
    }
    writeln!(std::io::stderr(), "{line}").unwrap();
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn failed(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect()
}

fn arc(ps: PointSet) -> Arc<PointSet> {
    Arc::new(ps)
}

fn triangle_with_interior_point() -> Arc<PointSet> {
    arc(PointSet::from_coords(&[(0, 0), (6, 0), (0, 6), (1, 1)]).unwrap())
}

/// Every fixed test set with at most `max_n` points plus `random` seeded sets.
fn small_corpus(max_n: usize, random: usize, seed: u64) -> Vec<(String, Arc<PointSet>)> {
    let mut sets: Vec<(String, Arc<PointSet>)> = (4..=max_n)
        .map(|n| (format!("convex {n}"), arc(gen_convex(n).unwrap())))
        .collect();
    sets.push(("triangle + interior".into(), triangle_with_interior_point()));
    for k in 3..=max_n / 2 {
        sets.push((format!("double chain {}", 2 * k), arc(gen_double_chain(k).unwrap())));
    }
    for n in (8..=max_n).step_by(2) {
        sets.push((format!("low-flip {n}"), gen_low_flip(n).unwrap().0));
    }
    sets.extend(random_sets(seed, random, 5, max_n).unwrap());
    sets
}

#[test]
fn criterion_01_catalan_enumeration() {
    let caps = Caps::default();
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for n in 4..=10 {
        let start = Instant::now();
        let tri = count_triangulations(&arc(gen_convex(n).unwrap()), &caps, false).unwrap();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        if BigUint::from(tri) != catalan(n - 2) {
            failures.push(format!("N = {n}: {tri} != C_{}", n - 2));
        }
        if elapsed > Duration::from_secs(60) {
            failures.push(format!("N = {n} took {elapsed:?}"));
        }
    }
    report(1, "tri(convex N) = C_(N-2), N = 4..10", &failures, &format!("slowest case {slowest:.2?}"));
}

#[test]
fn criterion_02_lemma_suite() {
    let caps = Caps { tri: 12, ..Caps::default() };
    let checks = lemma_checks(1, 10, &caps).unwrap();
    let corpus = lemma_corpus(1, 100, 10).unwrap();
    assert_eq!(checks.len(), corpus.len());
    report(
        2,
        "flip, flip_s and greedy ps-flippable lower bounds",
        &failed(&checks),
        &format!("{} point sets, every triangulation", checks.len()),
    );
}

#[test]
fn criterion_03_tightness() {
    let checks = tightness_checks(&Caps::default()).unwrap();
    report(
        3,
        "low-flip attains N/2 - 2, convex attains N - 3",
        &failed(&checks),
        &format!("{} checks", checks.len()),
    );
}

#[test]
fn criterion_04_support_identity() {
    let caps = Caps::default();
    let start = Instant::now();
    let mut sets: Vec<(String, Arc<PointSet>)> = (4..=7)
        .map(|n| (format!("convex {n}"), arc(gen_convex(n).unwrap())))
        .collect();
    sets.push(("triangle + interior".into(), triangle_with_interior_point()));
    sets.extend(random_sets(4, 20, 4, 8).unwrap());
    let mut failures = Vec::new();
    for (name, ps) in &sets {
        if let Err(e) = verify_support_identity(ps, &caps) {
            failures.push(format!("{name}: {e}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        4,
        "sum_T sum_(G in T) 1/supp(G) = pg(S), exact rationals",
        &failures,
        &format!("{} point sets in {elapsed:.2?}", sets.len()),
    );
}

#[test]
fn criterion_05_support_lower_bound() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut samples = 0u64;
    for (name, ps) in small_corpus(8, 20, 5) {
        let table = SupportTable::new(&ps, &caps).unwrap();
        for (i, t) in table.triangulations().iter().enumerate() {
            let full = table.triangulation_mask(i);
            let (f, _) = greedy_ps_flippable(t);
            let f = table.mask(&f);
            for _ in 0..100 {
                let g = full & rng.gen::<u128>();
                let j = (f & !g).count_ones();
                let supp = table.support_mask(g);
                samples += 1;
                if supp < 1 << j {
                    failures.push(format!("{name}: supp = {supp} < 2^{j}"));
                }
            }
        }
    }

    // A convex 7-gon triangulation minus the diagonals 0-2, 3-5 and 3-6
    // leaves the hull and 0-3: a quadrilateral and a pentagon.
    let ps = arc(gen_convex(7).unwrap());
    let triangles = vec![[0, 1, 2], [0, 2, 3], [3, 4, 5], [3, 5, 6], [3, 6, 0]];
    let t = Triangulation::from_triangles(Arc::clone(&ps), triangles).unwrap();
    let removed: BTreeSet<EdgeKey> = [(0, 2), (3, 5), (3, 6)]
        .iter()
        .map(|&(a, b)| EdgeKey::new(a, b))
        .collect();
    let d = ConvexDecomposition::from_triangulation(&t, &removed).unwrap();
    let g = PlaneGraph::new(Arc::clone(&ps), d.edges().iter().copied()).unwrap();
    let supp = SupportTable::new(&ps, &caps).unwrap().support(&g);
    let completions = d.completion_count();
    if supp != 10 || completions != BigUint::from(10u32) || g.edge_count() != 8 {
        failures.push(format!("quadrilateral + pentagon: supp = {supp}, C_2 C_3 = {completions}"));
    }
    report(
        5,
        "supp(G) >= 2^|F \\ G| on sampled G, quadrilateral + pentagon supp = 10",
        &failures,
        &format!("{samples} samples, supp = {supp}"),
    );
}

#[test]
fn criterion_06_ratio_bound() {
    let caps = Caps::default();
    let mut failures = Vec::new();
    let (mut low, mut high) = (0, 0);
    for (name, ps) in small_corpus(9, 10, 6) {
        let pg = count_plane_graphs(&ps, Predicate::All, &caps, false).unwrap();
        let tri = count_triangulations(&ps, &caps, false).unwrap();
        let (n, h) = (ps.len(), ps.hull_size());
        if 2 * h <= n {
            low += 1;
        } else {
            high += 1;
        }
        let check = ratio_check(&name, pg, tri, n, h).unwrap();
        if !check.passed {
            failures.push(check.to_string());
        }
    }
    if low == 0 || high == 0 {
        failures.push(format!("branches exercised: h <= N/2 {low} times, h > N/2 {high} times"));
    }
    report(
        6,
        "pg(S) <= ratio(N, h) tri(S)",
        &failures,
        &format!("{low} sets with h <= N/2, {high} with h > N/2"),
    );
}

#[test]
fn criterion_07_matrix_tree() {
    let caps = Caps::default();
    let mut failures = Vec::new();
    let mut count = 0;
    for (name, ps) in small_corpus(7, 10, 7) {
        for t in enumerate_triangulations(&ps, &caps, false).unwrap() {
            let edges: Vec<EdgeKey> = t.edges().collect();
            let det = spanning_tree_count(ps.len(), &edges);
            let brute = BigUint::from(brute_force_spanning_trees(ps.len(), &edges));
            let product = degree_product(ps.len(), &edges);
            count += 1;
            if det != brute || det > product {
                failures.push(format!("{name}: det {det}, brute force {brute}, degree product {product}"));
            }
        }
    }
    report(
        7,
        "matrix-tree count = brute force <= degree product",
        &failures,
        &format!("{count} triangulations"),
    );
}

#[test]
fn criterion_08_decomposition_ledger() {
    let caps = Caps { tri: 12, ..Caps::default() };
    let mut failures = Vec::new();
    let mut count = 0;
    for (name, ps) in lemma_corpus(8, 30, 10).unwrap() {
        for t in enumerate_triangulations(&ps, &caps, false).unwrap() {
            let (_, d) = greedy_ps_flippable(&t);
            count += 1;
            if let Err(e) = decomposition_check(&d) {
                failures.push(format!("{name}: {e}"));
            }
        }
    }
    for n in (8..=20).step_by(2) {
        let (ps, t) = gen_low_flip(n).unwrap();
        let (_, d) = greedy_ps_flippable(&t);
        let diag = decomposition_check(&d).unwrap();
        let h = ps.hull_size();
        if 2 * diag.faces != 3 * n - 2 * h || 2 * diag.edges != 5 * n - 2 * h - 2 {
            failures.push(format!("low-flip {n}: f = {}, m = {} not tight", diag.faces, diag.edges));
        }
    }
    report(
        8,
        "decomposition identities, refined bound and face/edge caps",
        &failures,
        &format!("{count} greedy decompositions, low-flip 8..20 tight"),
    );
}

#[test]
fn criterion_09_constants() {
    let start = Instant::now();
    let checks = bounds_suite().unwrap();
    let elapsed = start.elapsed();
    let mut failures = failed(&checks);
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("took {elapsed:?}"));
    }
    report(
        9,
        "published constants reproduced",
        &failures,
        &format!("{} of {} constants within tolerance in {elapsed:.2?}", checks.len() - failures.len(), checks.len()),
    );
}

/// Quadrangulations found by trying every set of `m - h` non-hull segments.
fn quadrangulation_oracle(ps: &PointSet) -> u64 {
    let (n, h) = (ps.len(), ps.hull_size());
    if h % 2 == 1 {
        return 0;
    }
    let m = 2 * n - 2 - h / 2;
    let hull = ps.hull_edges();
    let inner: Vec<EdgeKey> = ps
        .all_segments()
        .into_iter()
        .filter(|&e| !ps.is_hull_edge(e))
        .collect();
    fn choose(
        ps: &PointSet,
        inner: &[EdgeKey],
        from: usize,
        left: usize,
        chosen: &mut Vec<EdgeKey>,
        hull: &[EdgeKey],
    ) -> u64 {
        if left == 0 {
            let mut edges = hull.to_vec();
            edges.extend_from_slice(chosen);
            let rotation = Rotation::new(ps, &edges);
            let walks = rotation.face_walks();
            let faces = bounded_faces(ps, &rotation);
            // A connected plane graph has exactly one unbounded walk.
            let ok = walks.len() == faces.len() + 1
                && faces.iter().all(|f| f.len() == 4 && f.iter().collect::<BTreeSet<_>>().len() == 4);
            return ok as u64;
        }
        let mut total = 0;
        for i in from..inner.len() {
            if chosen.iter().all(|&c| !ps.edges_cross(c, inner[i])) {
                chosen.push(inner[i]);
                total += choose(ps, inner, i + 1, left - 1, chosen, hull);
                chosen.pop();
            }
        }
        total
    }
    choose(ps, &inner, 0, m - h, &mut Vec::new(), &hull)
}

#[test]
fn criterion_10_quadrangulations() {
    let caps = Caps::default();
    let mut failures = Vec::new();
    let count = |ps: &Arc<PointSet>| count_plane_graphs(ps, Predicate::Quadrangulation, &caps, false).unwrap();
    for (n, want) in [(4, 1), (5, 0), (7, 0)] {
        let got = count(&arc(gen_convex(n).unwrap()));
        if got != want {
            failures.push(format!("convex {n}: {got} != {want}"));
        }
    }
    let mut sets: Vec<(String, Arc<PointSet>)> = [6, 8]
        .iter()
        .map(|&n| (format!("convex {n}"), arc(gen_convex(n).unwrap())))
        .collect();
    sets.extend(
        random_sets(10, 40, 6, 8)
            .unwrap()
            .into_iter()
            .filter(|(_, ps)| ps.hull_size() % 2 == 0)
            .take(4),
    );
    let mut seen = Vec::new();
    for (name, ps) in &sets {
        let (got, want) = (count(ps), quadrangulation_oracle(ps));
        seen.push(format!("{name}: {got}"));
        if got != want {
            failures.push(format!("{name}: {got} != oracle {want}"));
        }
    }
    report(10, "quadrangulation counts", &failures, &seen.join(", "));
}

#[test]
fn criterion_11_parallel_equivalence() {
    let caps = Caps::default();
    let mut failures = Vec::new();
    let sets = random_sets(11, 10, 8, 8).unwrap();
    for (name, ps) in &sets {
        let seq = count_report(ps, &caps, false).unwrap();
        let par = count_report(ps, &caps, true).unwrap();
        if seq != par {
            failures.push(format!("{name}: sequential {seq:?} != parallel {par:?}"));
        }
    }
    report(11, "parallel counts identical to sequential", &failures, &format!("{} random N = 8 sets", sets.len()));
}
