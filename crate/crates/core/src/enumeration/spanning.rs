use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::geometry::EdgeKey;

/// Spanning trees of the multigraph-free graph `(0..n, edges)` by the
/// matrix-tree theorem: the determinant of the Laplacian with its last row
/// and column deleted, computed by fraction-free elimination. Zero when the
/// graph is disconnected.
pub fn spanning_tree_count(n: usize, edges: &[EdgeKey]) -> BigUint {
    if n <= 1 {
        return BigUint::one();
    }
    let size = n - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for e in edges {
        for (u, v) in [(e.a, e.b), (e.b, e.a)] {
            if u < size {
                m[u][u] += 1;
                if v < size {
                    m[u][v] -= 1;
                }
            }
        }
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigUint::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = if negate { -prev } else { prev };
    debug_assert!(!det.is_negative());
    det.magnitude().clone()
}

/// Spanning trees counted by trying every `(n - 1)`-edge subset.
pub fn brute_force_spanning_trees(n: usize, edges: &[EdgeKey]) -> u64 {
    fn find(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    fn go(edges: &[EdgeKey], from: usize, left: usize, parent: &mut Vec<usize>) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in from..edges.len() {
            if edges.len() - i < left {
                break;
            }
            let (ra, rb) = (find(parent, edges[i].a), find(parent, edges[i].b));
            if ra != rb {
                parent[ra] = rb;
                total += go(edges, i + 1, left - 1, parent);
                parent[ra] = ra;
            }
        }
        total
    }
    if n <= 1 {
        return 1;
    }
    go(edges, 0, n - 1, &mut (0..n).collect())
}

/// `prod_v deg(v)`, an upper bound on the spanning-tree count.
pub fn degree_product(n: usize, edges: &[EdgeKey]) -> BigUint {
    let mut deg = vec![0u32; n];
    for e in edges {
        deg[e.a] += 1;
        deg[e.b] += 1;
    }
    deg.into_iter().map(BigUint::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<EdgeKey> {
        (0..n).map(|i| EdgeKey::new(i, (i + 1) % n)).collect()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(spanning_tree_count(3, &cycle(3)), BigUint::from(3u32));
        assert_eq!(spanning_tree_count(4, &cycle(4)), BigUint::from(4u32));
        let k4: Vec<EdgeKey> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| EdgeKey::new(a, b)))
            .collect();
        assert_eq!(spanning_tree_count(4, &k4), BigUint::from(16u32));
        assert_eq!(spanning_tree_count(4, &cycle(3)), BigUint::zero());
        assert_eq!(spanning_tree_count(1, &[]), BigUint::one());
    }

    #[test]
    fn determinant_matches_brute_force() {
        // Wheels: a hub joined to a cycle.
        for rim in 3..9 {
            let mut edges = cycle(rim);
            edges.extend((0..rim).map(|i| EdgeKey::new(i, rim)));
            let n = rim + 1;
            let det = spanning_tree_count(n, &edges);
            assert_eq!(det, BigUint::from(brute_force_spanning_trees(n, &edges)));
            assert!(det <= degree_product(n, &edges));
        }
    }
}
