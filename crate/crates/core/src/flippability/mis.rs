//! Exact maximum independent set by branch and bound.
//!
//! Branches on a maximum-degree vertex and prunes with a greedy clique cover,
//! which upper-bounds the independence number of the remaining candidates.

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|&(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + t)
            })
        })
    }
}

/// Simple undirected graph on `0..n` for the solver.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    adjacency: Vec<Bits>,
}

impl ConflictGraph {
    pub fn new(n: usize) -> Self {
        ConflictGraph {
            adjacency: vec![Bits::empty(n); n],
        }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adjacency[u].insert(v);
            self.adjacency[v].insert(u);
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// A maximum independent set, sorted ascending. Ties are broken
    /// deterministically.
    pub fn maximum_independent_set(&self) -> Vec<usize> {
        let n = self.len();
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.branch(Bits::full(n), &mut current, &mut best);
        best.sort_unstable();
        best
    }

    fn clique_cover_bound(&self, cand: &Bits) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            rest.remove(v);
            let mut clique_cands = rest.and(&self.adjacency[v]);
            while let Some(u) = clique_cands.first() {
                rest.remove(u);
                clique_cands = clique_cands.and(&self.adjacency[u]);
            }
            cliques += 1;
        }
        cliques
    }

    fn branch(&self, cand: Bits, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cand.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if current.len() + self.clique_cover_bound(&cand) <= best.len() {
            return;
        }
        let (pivot, degree) = cand
            .iter()
            .map(|v| (v, self.adjacency[v].and(&cand).len()))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .expect("candidates are non-empty");
        if degree == 0 {
            // Remaining candidates are pairwise independent.
            let before = current.len();
            current.extend(cand.iter());
            if current.len() > best.len() {
                *best = current.clone();
            }
            current.truncate(before);
            return;
        }
        let mut closed = self.adjacency[pivot].clone();
        closed.insert(pivot);
        current.push(pivot);
        self.branch(cand.and_not(&closed), current, best);
        current.pop();

        let mut without = cand;
        without.remove(pivot);
        self.branch(without, current, best);
    }
}
