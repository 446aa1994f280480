use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::config::Caps;
use crate::error::Result;
use crate::geometry::PointSet;
use crate::triangulation::{CanonicalKey, Triangulation};

fn neighbors(t: &Triangulation) -> Vec<Triangulation> {
    t.interior_edges()
        .filter(|&e| t.is_flippable(e).unwrap_or(false))
        .map(|e| t.flip(e).expect("flippable edge flips"))
        .collect()
}

/// Every triangulation of `ps`, each exactly once, in breadth-first order
/// from [`Triangulation::build_initial`]. The parallel mode expands each BFS
/// level concurrently and merges in frontier order, so the output sequence is
/// the same in both modes.
pub fn enumerate_triangulations(
    ps: &Arc<PointSet>,
    caps: &Caps,
    parallel: bool,
) -> Result<Vec<Triangulation>> {
    Caps::check("triangulation enumeration", ps.len(), caps.tri)?;
    let start = Triangulation::build_initial(Arc::clone(ps));
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    seen.insert(start.canonical_key());
    let mut out = vec![start];
    if !parallel {
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for next in neighbors(&out[i]) {
                if seen.insert(next.canonical_key()) {
                    queue.push_back(out.len());
                    out.push(next);
                }
            }
        }
        return Ok(out);
    }
    let mut level = 0..1;
    while !level.is_empty() {
        let expanded: Vec<Vec<Triangulation>> =
            out[level.clone()].par_iter().map(neighbors).collect();
        let begin = out.len();
        for next in expanded.into_iter().flatten() {
            if seen.insert(next.canonical_key()) {
                out.push(next);
            }
        }
        level = begin..out.len();
    }
    Ok(out)
}

pub fn count_triangulations(ps: &Arc<PointSet>, caps: &Caps, parallel: bool) -> Result<u64> {
    Ok(enumerate_triangulations(ps, caps, parallel)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::catalan;
    use crate::error::Error;
    use crate::generators::{gen_convex, gen_double_chain, gen_random};

    #[test]
    fn convex_counts_are_catalan() {
        for n in 3..=9 {
            let ps = Arc::new(gen_convex(n).unwrap());
            let count = count_triangulations(&ps, &Caps::default(), false).unwrap();
            assert_eq!(count.to_string(), catalan(n - 2).to_string());
        }
    }

    #[test]
    fn single_interior_point() {
        let ps = Arc::new(PointSet::from_coords(&[(0, 0), (6, 0), (0, 6), (1, 1)]).unwrap());
        assert_eq!(count_triangulations(&ps, &Caps::default(), false).unwrap(), 1);
    }

    #[test]
    fn parallel_order_matches_sequential() {
        for ps in [gen_double_chain(4).unwrap(), gen_random(8, 3).unwrap()] {
            let ps = Arc::new(ps);
            let a = enumerate_triangulations(&ps, &Caps::default(), false).unwrap();
            let b = enumerate_triangulations(&ps, &Caps::default(), true).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ps = Arc::new(gen_convex(12).unwrap());
        let err = count_triangulations(&ps, &Caps::default(), false).unwrap_err();
        assert!(matches!(err, Error::InstanceTooLarge { cap: 11, .. }));
    }
}
