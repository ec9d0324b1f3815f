use std::collections::BTreeMap;

use crate::decomp::StandardTreeDecomposition;
use crate::embed::{is_nested_disks, sorted_intersect, Cycle, Disk, PlaneGraph, VertexId};

/// Rings along a root path, outermost first, with their vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingChain {
    pub rings: Vec<Cycle>,
    sets: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("ring {inner} is not in the closed disk of ring {outer}")]
    NotNested { outer: usize, inner: usize },
    #[error("rings {0} and {1} are equal")]
    Repeated(usize, usize),
    #[error("rings {0}, {1}, {2} are not laminar")]
    NotLaminar(usize, usize, usize),
    #[error("node {0} is not a leaf of the decomposition")]
    NotALeaf(usize),
}

impl RingChain {
    /// A chain of nested rings. Checks consecutive pairs only: disk
    /// containment is transitive, and a repeat further apart would force
    /// two consecutive disks to coincide.
    pub fn new(g: &PlaneGraph, rings: Vec<Cycle>) -> Result<Self, ChainError> {
        let disks: Vec<Disk> = rings.iter().map(|c| g.disk(c).expect("ring is a cycle")).collect();
        for i in 1..rings.len() {
            if rings[i - 1] == rings[i] {
                return Err(ChainError::Repeated(i - 1, i));
            }
            if !is_nested_disks(&disks[i - 1], &disks[i], &rings[i]) {
                return Err(ChainError::NotNested { outer: i - 1, inner: i });
            }
        }
        let sets = rings.iter().map(|c| c.vertex_set().to_vec()).collect();
        Ok(RingChain { rings, sets })
    }

    /// A chain given only by vertex sets (no embedding checks).
    pub fn from_vertex_sets(mut sets: Vec<Vec<VertexId>>) -> Self {
        sets.iter_mut().for_each(|s| {
            s.sort_unstable();
            s.dedup();
        });
        RingChain { rings: Vec::new(), sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn vertex_set(&self, i: usize) -> &[VertexId] {
        &self.sets[i]
    }

    pub fn intersection(&self, i: usize, j: usize) -> Vec<VertexId> {
        sorted_intersect(&self.sets[i], &self.sets[j]).collect()
    }

    /// For all `i < j < l`: `V(C_i) ∩ V(C_l) ⊆ V(C_j)`.
    pub fn check_laminar(&self) -> Result<(), ChainError> {
        let h = self.len();
        for i in 0..h {
            for l in i + 2..h {
                let outer = self.intersection(i, l);
                if outer.is_empty() {
                    continue;
                }
                for j in i + 1..l {
                    if !outer.iter().all(|v| self.sets[j].binary_search(v).is_ok()) {
                        return Err(ChainError::NotLaminar(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    /// For every realised intersection set `X`, a longest subsequence whose
    /// consecutive members meet in exactly `X`. On laminar chains every two
    /// members then meet in `X`. Sorted by `X`.
    pub fn best_per_intersection(&self) -> Vec<(Vec<VertexId>, Vec<usize>)> {
        let h = self.len();
        let mut groups: BTreeMap<Vec<VertexId>, Vec<(usize, usize)>> = BTreeMap::new();
        for j in 0..h {
            for i in 0..j {
                groups.entry(self.intersection(i, j)).or_default().push((i, j));
            }
        }
        let mut out = Vec::with_capacity(groups.len());
        for (x, pairs) in groups {
            // pairs are sorted by j, so best[i] is final when (i, j) is read
            let mut best = vec![1usize; h];
            let mut prev = vec![usize::MAX; h];
            for &(i, j) in &pairs {
                if best[i] + 1 > best[j] {
                    best[j] = best[i] + 1;
                    prev[j] = i;
                }
            }
            let end = (0..h).max_by_key(|&j| (best[j], std::cmp::Reverse(j))).unwrap();
            let mut seq = vec![end];
            while prev[*seq.last().unwrap()] != usize::MAX {
                seq.push(prev[*seq.last().unwrap()]);
            }
            seq.reverse();
            out.push((x, seq));
        }
        out
    }
}

/// Rings from the root to the deepest leaf (smallest id among ties).
pub fn root_path_rings(g: &PlaneGraph, d: &StandardTreeDecomposition) -> Result<RingChain, ChainError> {
    let leaves = d.leaves();
    let leaf = leaves
        .iter()
        .copied()
        .max_by_key(|&t| (d.root_path(t).len(), std::cmp::Reverse(t)))
        .unwrap_or(0);
    root_path_rings_to(g, d, leaf)
}

/// Rings along the path from the root to `leaf`.
pub fn root_path_rings_to(
    g: &PlaneGraph,
    d: &StandardTreeDecomposition,
    leaf: usize,
) -> Result<RingChain, ChainError> {
    if leaf != 0 && !d.leaves().contains(&leaf) {
        return Err(ChainError::NotALeaf(leaf));
    }
    let rings: Vec<Cycle> = d
        .root_path(leaf)
        .iter()
        .filter_map(|&t| d.rings[t].clone())
        .collect();
    let chain = RingChain::new(g, rings)?;
    chain.check_laminar()?;
    Ok(chain)
}

/// A longest subsequence with one common pairwise intersection, if it has
/// at least `m` members. Ties go to the smaller `|X|`, then the smaller `X`.
pub fn constant_intersection_subsequence(chain: &RingChain, m: usize) -> Option<(Vec<usize>, Vec<VertexId>)> {
    if chain.is_empty() {
        return None;
    }
    let mut best: (Vec<usize>, Vec<VertexId>) = (vec![0], Vec::new());
    let mut cands = chain.best_per_intersection();
    cands.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    for (x, seq) in cands {
        if seq.len() > best.0.len() {
            best = (seq, x);
        }
    }
    debug_assert!(is_constant(chain, &best.0, &best.1));
    (best.0.len() >= m).then_some(best)
}

fn is_constant(chain: &RingChain, seq: &[usize], x: &[VertexId]) -> bool {
    seq.iter()
        .enumerate()
        .all(|(a, &i)| seq[a + 1..].iter().all(|&j| chain.intersection(i, j) == x))
}

/// Exhaustive maximum over all subsequences; for short chains only.
pub fn constant_intersection_subsequence_bruteforce(chain: &RingChain) -> usize {
    let h = chain.len();
    assert!(h <= 20, "exhaustive search over {h} rings");
    if h == 0 {
        return 0;
    }
    let mut best = 1;
    for mask in 1u32..(1 << h) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let seq: Vec<usize> = (0..h).filter(|&i| mask >> i & 1 == 1).collect();
        let x = chain.intersection(seq[0], seq[1]);
        if is_constant(chain, &seq, &x) {
            best = size;
        }
    }
    best
}
