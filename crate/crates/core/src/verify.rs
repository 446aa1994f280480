//! Property suites run by the `verify` command and the acceptance tests.
//!
//! Each suite returns a list of named checks; a suite passes when every check
//! passes. Random corpora are derived from a single seed, so runs repeat.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::config::Caps;
use crate::enumeration::{
    count_plane_graphs, enumerate_triangulations, verify_support_identity, Predicate,
};
use crate::error::{Error, Result};
use crate::flippability::{
    diagnostics, exact_max_ps_flippable, flippable_set, greedy_ps_flippable,
    max_simultaneously_flippable, separability_report, Diagnostics, SeparabilityReport,
};
use crate::generators::{gen_convex, gen_double_chain, gen_low_flip, gen_random};
use crate::geometry::PointSet;
use crate::triangulation::Triangulation;

/// Flip statistics of one triangulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub n: usize,
    pub h: usize,
    pub flip: usize,
    /// `None` when the point count exceeds the exact-search cap.
    pub flip_s: Option<usize>,
    pub ps_greedy: usize,
    pub ps_exact: Option<usize>,
    pub diagnostics: Diagnostics,
    pub separability: Option<SeparabilityReport>,
    /// `3N/2 - h - f`, doubled to stay integral.
    pub face_slack2: i64,
    /// `5N/2 - h - 1 - m`, doubled.
    pub edge_slack2: i64,
}

pub fn analyze(t: &Triangulation, caps: &Caps) -> Result<Analysis> {
    let ps = t.points();
    let (n, h) = (ps.len(), ps.hull_size());
    let within = |cap: usize| n <= cap;
    let flip_s = if within(caps.mis) {
        Some(max_simultaneously_flippable(t, caps)?.len())
    } else {
        None
    };
    let ps_exact = if within(caps.ps) {
        Some(exact_max_ps_flippable(t, caps)?.len())
    } else {
        None
    };
    let (greedy, d) = greedy_ps_flippable(t);
    let diag = diagnostics(&d);
    Ok(Analysis {
        n,
        h,
        flip: flippable_set(t).len(),
        flip_s,
        ps_greedy: greedy.len(),
        ps_exact,
        face_slack2: 3 * n as i64 - 2 * h as i64 - 2 * diag.faces as i64,
        edge_slack2: 5 * n as i64 - 2 * h as i64 - 2 - 2 * diag.edges as i64,
        separability: separability_report(&d).ok(),
        diagnostics: diag,
    })
}

pub fn lemma_lower_bounds(n: usize, h: usize) -> (i64, i64, i64) {
    let n = n as i64;
    let flip = (n + 1) / 2 - 2;
    let flip_s = -(-(n - 4)).div_euclid(5);
    let ps = (n / 2 - 2).max(h as i64 - 3);
    (flip, flip_s, ps)
}

/// Violated lower bounds and decomposition identities, empty when all hold.
pub fn lemma_violations(a: &Analysis) -> Vec<String> {
    let (flip, flip_s, ps) = lemma_lower_bounds(a.n, a.h);
    let mut out = Vec::new();
    if (a.flip as i64) < flip {
        out.push(format!("flip = {} < {flip}", a.flip));
    }
    if let Some(s) = a.flip_s {
        if (s as i64) < flip_s {
            out.push(format!("flip_s = {s} < {flip_s}"));
        }
    }
    if (a.ps_greedy as i64) < ps {
        out.push(format!("greedy ps-flippable = {} < {ps}", a.ps_greedy));
    }
    out.extend(a.diagnostics.violations.iter().cloned());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    Lemmas,
    Identity,
    Bounds,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "identity" => Ok(Suite::Identity),
            "bounds" => Ok(Suite::Bounds),
            _ => Err(Error::Config(format!("unknown suite '{s}'"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemmas => "lemmas",
            Suite::Identity => "identity",
            Suite::Bounds => "bounds",
        })
    }
}

pub fn run_suite(suite: Suite, seed: u64, max_n: usize, caps: &Caps) -> Result<Vec<Check>> {
    match suite {
        Suite::Lemmas => lemma_suite(seed, max_n, caps),
        Suite::Identity => identity_suite(seed, max_n, caps),
        Suite::Bounds => bounds_suite(),
    }
}

/// Named point sets for the lemma suite: low-flip 8, 10, 12, convex 4..9,
/// double chains of 6 and 8 points, then `random` seeded sets with
/// `5 <= N <= max_n`.
pub fn lemma_corpus(seed: u64, random: usize, max_n: usize) -> Result<Vec<(String, Arc<PointSet>)>> {
    let mut out = Vec::new();
    for n in [8, 10, 12] {
        out.push((format!("low-flip {n}"), gen_low_flip(n)?.0));
    }
    for n in 4..=9 {
        out.push((format!("convex {n}"), Arc::new(gen_convex(n)?)));
    }
    for k in [3, 4] {
        out.push((format!("double chain {}", 2 * k), Arc::new(gen_double_chain(k)?)));
    }
    out.extend(random_sets(seed, random, 5, max_n)?);
    Ok(out)
}

/// `count` random sets with sizes drawn from `lo..=hi`.
pub fn random_sets(
    seed: u64,
    count: usize,
    lo: usize,
    hi: usize,
) -> Result<Vec<(String, Arc<PointSet>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=hi.max(lo));
            let s: u64 = rng.gen();
            Ok((format!("random n={n} seed={s}"), Arc::new(gen_random(n, s)?)))
        })
        .collect()
}

/// Lower bounds on `flip`, `flip_s` and the greedy ps-flippable set plus all
/// decomposition identities, over every triangulation of every corpus set
/// within `caps.tri`.
pub fn lemma_checks(seed: u64, max_n: usize, caps: &Caps) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, ps) in lemma_corpus(seed, 100, max_n.clamp(5, 10))? {
        // Sets above the enumeration cap are checked on their initial
        // triangulation only.
        let all = if ps.len() <= caps.tri {
            enumerate_triangulations(&ps, caps, false)?
        } else {
            vec![Triangulation::build_initial(Arc::clone(&ps))]
        };
        let mut bad = Vec::new();
        for t in &all {
            let a = analyze(t, &Caps { ps: 0, ..*caps })?;
            let v = lemma_violations(&a);
            if !v.is_empty() {
                bad.push(format!("{:?}: {}", t.canonical_key().0, v.join("; ")));
            }
        }
        let scope = if ps.len() <= caps.tri { "" } else { " (initial only, N above cap)" };
        let detail = match bad.first() {
            None => format!("{} triangulation(s){scope}", all.len()),
            Some(first) => format!("{} of {} violate, first {first}", bad.len(), all.len()),
        };
        checks.push(Check::new(name, bad.is_empty(), detail));
    }
    Ok(checks)
}

/// [`lemma_checks`] followed by [`tightness_checks`].
pub fn lemma_suite(seed: u64, max_n: usize, caps: &Caps) -> Result<Vec<Check>> {
    let mut checks = lemma_checks(seed, max_n, caps)?;
    checks.extend(tightness_checks(caps)?);
    Ok(checks)
}

/// Low-flip sets attain `N/2 - 2` for all three quantities; convex sets have
/// all `N - 3` diagonals ps-flippable.
pub fn tightness_checks(caps: &Caps) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in [8, 10, 12] {
        let (_, t) = gen_low_flip(n)?;
        let a = analyze(&t, caps)?;
        let want = n / 2 - 2;
        let got = (a.flip, a.flip_s, a.ps_exact, a.ps_greedy);
        checks.push(Check::new(
            format!("tight low-flip {n}"),
            got == (want, Some(want), Some(want), want),
            format!("flip, flip_s, exact ps, greedy ps = {got:?}, expected {want}"),
        ));
    }
    for n in 4..=9 {
        let ps = Arc::new(gen_convex(n)?);
        let ts = enumerate_triangulations(&ps, caps, false)?;
        let bad = ts
            .iter()
            .filter(|t| exact_max_ps_flippable(t, caps).map(|s| s.len()).ok() != Some(n - 3))
            .count();
        checks.push(Check::new(
            format!("tight convex {n}"),
            bad == 0,
            format!("{bad} of {} triangulations miss N - 3", ts.len()),
        ));
    }
    Ok(checks)
}

/// `pg(S) <= pg_tri_ratio(N, h) * tri(S)`, compared in logs.
pub fn ratio_check(name: &str, pg: u64, tri: u64, n: usize, h: usize) -> Result<Check> {
    let bound = bounds::pg_tri_ln_ratio(n, h)? + (tri as f64).ln();
    let lhs = (pg as f64).ln();
    let branch = if 2 * h <= n { "h <= N/2" } else { "h > N/2" };
    Ok(Check::new(
        format!("ratio bound {name}"),
        lhs <= bound,
        format!("{branch}: ln pg = {lhs:.4} <= {bound:.4}"),
    ))
}

/// The support identity and the ratio bound on small sets.
pub fn identity_suite(seed: u64, max_n: usize, caps: &Caps) -> Result<Vec<Check>> {
    let max_n = max_n.min(8).min(caps.pg);
    let mut sets: Vec<(String, Arc<PointSet>)> = (3..=max_n.min(7))
        .map(|n| Ok((format!("convex {n}"), Arc::new(gen_convex(n)?))))
        .collect::<Result<_>>()?;
    sets.push((
        "triangle with interior point".into(),
        Arc::new(PointSet::from_coords(&[(0, 0), (6, 0), (0, 6), (1, 1)])?),
    ));
    if max_n >= 6 {
        sets.push(("double chain 6".into(), Arc::new(gen_double_chain(3)?)));
    }
    if max_n >= 8 {
        sets.push(("double chain 8".into(), Arc::new(gen_double_chain(4)?)));
    }
    sets.extend(random_sets(seed, 20, 4, max_n)?);

    let mut checks = Vec::new();
    for (name, ps) in sets {
        match verify_support_identity(&ps, caps) {
            Ok(r) => {
                checks.push(Check::new(
                    format!("support identity {name}"),
                    true,
                    format!("sum = {} = pg over {} triangulations", r.lhs, r.tri),
                ));
                checks.push(ratio_check(&name, r.pg, r.tri, ps.len(), ps.hull_size())?);
            }
            Err(Error::IdentityViolation(msg)) => {
                checks.push(Check::new(format!("support identity {name}"), false, msg));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(checks)
}

/// A computed constant against its reference value.
pub fn constant_check(name: &str, value: f64, target: f64, tol: f64) -> Check {
    Check::new(
        name,
        (value - target).abs() <= tol,
        format!("{value:.6} vs {target} (tolerance {tol})"),
    )
}

/// Every published constant reproduced from its formula.
pub fn bounds_suite() -> Result<Vec<Check>> {
    let root3 = 3f64.sqrt();
    let peak = bounds::PEAK_DENSITY;
    let st = bounds::spanning_tree_ratio()?;
    let forest = bounds::forest_ratio()?;
    let quad = bounds::quadrangulation_bound()?;
    let pgb = bounds::plane_graph_bound();
    let curve = bounds::emit_curve(0.01, 2.99, 1e-3)?;
    let argmax = curve
        .iter()
        .max_by(|a, b| a.b.total_cmp(&b.b))
        .map(|p| p.c)
        .unwrap_or(f64::NAN);
    let abs = |r: &bounds::BoundReport| r.absolute_base.unwrap_or(f64::NAN);
    let opt = |r: &bounds::BoundReport| r.optimizer.unwrap_or(f64::NAN);
    Ok(vec![
        constant_check("B(19/12)", bounds::b_of(peak)?, 4.0 * root3, 1e-9),
        constant_check("t(19/12)", bounds::t_of(peak)?, 1.0 / 6.0, 1e-12),
        constant_check("B(2)", bounds::b_of(2.0)?, 6.1406, 5e-4),
        constant_check(
            "plane graph base, h = o(N)",
            bounds::pg_tri_base(1_000_000_000_000, 3)?,
            6.9283,
            1e-4,
        ),
        constant_check("spanning tree threshold", opt(&st), 0.1687, 1e-3),
        constant_check("spanning tree base", st.base, 4.7022, 5e-4),
        constant_check("forest density", opt(&forest), 0.0285, 1e-3),
        constant_check("forest base", forest.base, 5.3514, 5e-4),
        constant_check("plane graphs absolute", abs(&pgb), 207.85, 0.05),
        constant_check("spanning trees absolute", abs(&st), 141.07, 0.05),
        constant_check("forests absolute", abs(&forest), 160.55, 0.05),
        constant_check("quadrangulations absolute", abs(&quad), 184.22, 0.05),
        constant_check("curve argmax", argmax, peak, 1e-3),
    ])
}

/// Counts crossing-free graphs and triangulations, then checks the ratio
/// bound.
pub fn ratio_check_for(name: &str, ps: &Arc<PointSet>, caps: &Caps) -> Result<Check> {
    let pg = count_plane_graphs(ps, Predicate::All, caps, false)?;
    let tri = enumerate_triangulations(ps, caps, false)?.len() as u64;
    ratio_check(name, pg, tri, ps.len(), ps.hull_size())
}
