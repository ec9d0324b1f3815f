//! Exhaustive ground truth for small graphs: simple cycles, maximum
//! s-nests and maximum disjoint path families.
//!
//! Nothing here calls the disk or nest code in `embed` and `nest`. The
//! inside of a cycle is the set of faces whose dual-tree path from the
//! outer face crosses the cycle an odd number of times.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::decomp::PathMode;
use crate::embed::{Cycle, EdgeId, PlaneGraph, VertexId};
use crate::nest::Nest;

pub const DEFAULT_MAX_VERTICES: usize = 14;
/// Hard limit on graph size; vertex sets are `u64` masks.
const MASK_VERTICES: usize = 64;
const MAX_PATHS: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {what} is {found}, limit {limit}")]
    TooLarge { what: &'static str, found: usize, limit: usize },
}

fn too_large(what: &'static str, found: usize, limit: usize) -> Result<(), OracleError> {
    if found > limit {
        Err(OracleError::TooLarge { what, found, limit })
    } else {
        Ok(())
    }
}

/// Fixed-width bitset over edges or faces (at most 192 of either, which
/// covers every simple plane graph on 64 vertices).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
struct Bits([u64; 3]);

impl Bits {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits([self.0[0] & o.0[0], self.0[1] & o.0[1], self.0[2] & o.0[2]])
    }
    fn xor(&self, o: &Bits) -> Bits {
        Bits([self.0[0] ^ o.0[0], self.0[1] ^ o.0[1], self.0[2] ^ o.0[2]])
    }
    fn is_zero(&self) -> bool {
        self.0 == [0; 3]
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.and(o) == *self
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

#[derive(Debug, Clone)]
pub struct IndexedCycle {
    /// Canonical: smallest vertex first, then the smaller neighbour.
    pub vertices: Vec<VertexId>,
    vmask: u64,
    edges: Bits,
    inside: Bits,
}

impl IndexedCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn inside_face_count(&self) -> usize {
        self.inside.count() as usize
    }
}

/// All simple cycles of a plane graph (up to a length cap) with the
/// relations the nest search needs.
#[derive(Debug, Clone)]
pub struct CycleIndex {
    pub cycles: Vec<IndexedCycle>,
    n: usize,
}

impl CycleIndex {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `j` lies in the closed disk of `i` (and differs from it).
    pub fn nested(&self, i: usize, j: usize) -> bool {
        i != j && self.cycles[j].inside.subset_of(&self.cycles[i].inside)
    }

    pub fn edge_disjoint(&self, i: usize, j: usize) -> bool {
        self.cycles[i].edges.and(&self.cycles[j].edges).is_zero()
    }

    pub fn intersection(&self, i: usize, j: usize) -> Vec<VertexId> {
        mask_vertices(self.cycles[i].vmask & self.cycles[j].vmask)
    }

    pub fn find(&self, vertices: &[VertexId]) -> Option<usize> {
        let canon = canonical(vertices);
        self.cycles.iter().position(|c| c.vertices == canon)
    }

    /// The nest predicate over all pairs: `Some(s)` when `seq` (outermost
    /// first) is an s-nest. A single cycle is a 0-nest.
    pub fn nest_s(&self, seq: &[usize]) -> Option<usize> {
        if seq.is_empty() {
            return None;
        }
        let x = if seq.len() >= 2 {
            self.cycles[seq[0]].vmask & self.cycles[seq[1]].vmask
        } else {
            0
        };
        for (a, &i) in seq.iter().enumerate() {
            for &j in &seq[a + 1..] {
                if !self.nested(i, j) || !self.edge_disjoint(i, j) {
                    return None;
                }
                if self.cycles[i].vmask & self.cycles[j].vmask != x {
                    return None;
                }
            }
        }
        Some(x.count_ones() as usize)
    }
}

fn mask_vertices(mut m: u64) -> Vec<VertexId> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Smallest rotation of the smaller orientation.
pub fn canonical(vertices: &[VertexId]) -> Vec<VertexId> {
    let m = vertices.len();
    let mut best: Option<Vec<VertexId>> = None;
    for start in 0..m {
        for dir in [1, m - 1] {
            let cand: Vec<VertexId> = (0..m).map(|i| vertices[(start + i * dir) % m]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// `max_len = None` means unlimited and then the graph may have at most
/// `max_vertices` vertices.
pub fn enumerate_cycles(g: &PlaneGraph, max_len: Option<usize>) -> Result<CycleIndex, OracleError> {
    enumerate_cycles_capped(g, max_len, DEFAULT_MAX_VERTICES)
}

pub fn enumerate_cycles_capped(
    g: &PlaneGraph,
    max_len: Option<usize>,
    max_vertices: usize,
) -> Result<CycleIndex, OracleError> {
    let n = g.vertex_count();
    too_large("vertex count", n, MASK_VERTICES)?;
    too_large("edge count", g.edge_count(), 192)?;
    too_large("face count", g.face_count(), 192)?;
    if max_len.is_none() {
        too_large("vertex count", n, max_vertices)?;
    }
    let cap = max_len.unwrap_or(n).min(n);
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut a: Vec<VertexId> = g.neighbors(v).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut edge_id: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        edge_id.insert((u.min(v), u.max(v)), e);
    }
    let crossing = dual_tree_crossings(g);

    let mut raw: Vec<Vec<VertexId>> = Vec::new();
    for s in 0..n {
        let mut path = vec![s];
        let mut on = 1u64 << s;
        extend(&adj, s, &mut path, &mut on, cap, &mut raw);
    }
    let cycles = raw
        .into_iter()
        .map(|vs| {
            let mut edges = Bits::default();
            let mut vmask = 0u64;
            for i in 0..vs.len() {
                let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
                edges.set(edge_id[&(a.min(b), a.max(b))]);
                vmask |= 1 << a;
            }
            let mut inside = Bits::default();
            for (f, path) in crossing.iter().enumerate() {
                if path.and(&edges).count() % 2 == 1 {
                    inside.set(f);
                }
            }
            IndexedCycle {
                vertices: vs,
                vmask,
                edges,
                inside,
            }
        })
        .collect();
    Ok(CycleIndex { cycles, n })
}

/// Simple paths from `s` through larger vertices; a cycle is recorded when
/// the path can close at `s` and its second vertex is below its last.
fn extend(
    adj: &[Vec<VertexId>],
    s: VertexId,
    path: &mut Vec<VertexId>,
    on: &mut u64,
    cap: usize,
    out: &mut Vec<Vec<VertexId>>,
) {
    let last = *path.last().unwrap();
    for &w in &adj[last] {
        if w == s && path.len() >= 3 && path[1] < last {
            out.push(path.clone());
        }
        if w > s && *on >> w & 1 == 0 && path.len() < cap {
            path.push(w);
            *on |= 1 << w;
            extend(adj, s, path, on, cap, out);
            *on &= !(1 << w);
            path.pop();
        }
    }
}

/// For every face, the edges crossed by its path in a BFS tree of the
/// dual rooted at the outer face.
fn dual_tree_crossings(g: &PlaneGraph) -> Vec<Bits> {
    let faces = g.faces();
    let mut paths: Vec<Option<Bits>> = vec![None; faces.len()];
    let root = g.outer_face();
    paths[root] = Some(Bits::default());
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let here = paths[f].unwrap();
        for &d in &faces[f] {
            let h = g.face_of(d ^ 1);
            if paths[h].is_none() {
                let mut p = here;
                p.set(d >> 1);
                paths[h] = Some(p);
                queue.push_back(h);
            }
        }
    }
    paths.into_iter().map(|p| p.expect("dual graph is connected")).collect()
}

/// The largest s-nest, by longest-chain search over the nesting order
/// restricted to pairs that are edge-disjoint and meet in exactly `s`
/// vertices, grouped by the shared set. The witness is rechecked with
/// [`CycleIndex::nest_s`] over all pairs.
pub fn max_nest(g: &PlaneGraph, s: usize) -> Result<(usize, Nest), OracleError> {
    let idx = enumerate_cycles(g, None)?;
    max_nest_in(g, &idx, s)
}

pub fn max_nest_in(g: &PlaneGraph, idx: &CycleIndex, s: usize) -> Result<(usize, Nest), OracleError> {
    let cs = &idx.cycles;
    // outermost first: larger inside sets first
    let mut order: Vec<usize> = (0..cs.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(cs[i].inside.count()), i));
    let rank_of = {
        let mut r = vec![0; cs.len()];
        for (p, &i) in order.iter().enumerate() {
            r[i] = p;
        }
        r
    };
    // chain length ending at each cycle, per shared set
    let preds: Vec<Vec<(u64, usize)>> = order
        .par_iter()
        .map(|&j| {
            order[..rank_of[j]]
                .iter()
                .filter_map(|&i| {
                    let x = cs[i].vmask & cs[j].vmask;
                    (x.count_ones() as usize == s && idx.nested(i, j) && idx.edge_disjoint(i, j)).then_some((x, i))
                })
                .collect()
        })
        .collect();
    let mut best: Vec<HashMap<u64, (usize, usize)>> = vec![HashMap::new(); cs.len()];
    let mut top: Option<(usize, u64, usize)> = None;
    for (p, &j) in order.iter().enumerate() {
        for &(x, i) in &preds[p] {
            let len = best[i].get(&x).map_or(1, |b| b.0) + 1;
            let entry = best[j].entry(x).or_insert((0, usize::MAX));
            if len > entry.0 {
                *entry = (len, i);
            }
        }
        for (&x, &(len, _)) in &best[j] {
            if top.map_or(true, |t| len > t.0 || (len == t.0 && (x, j) < (t.1, t.2))) {
                top = Some((len, x, j));
            }
        }
    }
    let seq = match top {
        Some((_, x, j)) => {
            let mut seq = vec![j];
            let mut cur = j;
            while let Some(&(_, i)) = best[cur].get(&x) {
                if i == usize::MAX {
                    break;
                }
                seq.push(i);
                cur = i;
            }
            seq.reverse();
            seq
        }
        // a single cycle is a nest for any X on it
        None => match cs.iter().position(|c| c.len() >= s) {
            Some(i) => vec![i],
            None => return Ok((0, Nest::default())),
        },
    };
    let x_set = if seq.len() >= 2 {
        idx.intersection(seq[0], seq[1])
    } else {
        cs[seq[0]].vertices.iter().copied().take(s).collect::<Vec<_>>()
    };
    debug_assert!(seq.len() < 2 || idx.nest_s(&seq) == Some(s));
    let cycles = seq
        .iter()
        .map(|&i| Cycle::from_vertices(g, &cs[i].vertices).expect("enumerated cycle"))
        .collect();
    let mut x_set = x_set;
    x_set.sort_unstable();
    Ok((seq.len(), Nest { cycles, x_set }))
}

/// The most pairwise disjoint `A`-`B` paths, by exhaustive packing of all
/// simple paths that touch `A ∪ B` only at their ends.
pub fn max_disjoint_paths_bruteforce(
    g: &PlaneGraph,
    a_set: &[VertexId],
    b_set: &[VertexId],
    mode: PathMode,
) -> Result<usize, OracleError> {
    let edges: Vec<(EdgeId, VertexId, VertexId)> =
        g.edges().iter().enumerate().map(|(e, &[u, v])| (e, u, v)).collect();
    max_disjoint_paths_bruteforce_edges(g.vertex_count(), &edges, a_set, b_set, mode)
}

/// As [`max_disjoint_paths_bruteforce`] over an explicit edge list; edges
/// are told apart by position in the list.
pub fn max_disjoint_paths_bruteforce_edges(
    n: usize,
    edges: &[(EdgeId, VertexId, VertexId)],
    a_set: &[VertexId],
    b_set: &[VertexId],
    mode: PathMode,
) -> Result<usize, OracleError> {
    too_large("vertex count", n, MASK_VERTICES)?;
    too_large("edge count", edges.len(), 192)?;
    let in_a = |v: VertexId| a_set.contains(&v);
    let in_b = |v: VertexId| b_set.contains(&v);
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for (i, &(_, u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    // (vertex mask, edge set) per path
    let mut paths: Vec<(u64, Bits)> = Vec::new();
    let mut stack: Vec<(VertexId, u64, Bits)> = Vec::new();
    for &a in a_set {
        if in_b(a) {
            paths.push((1 << a, Bits::default()));
            continue;
        }
        stack.push((a, 1 << a, Bits::default()));
        while let Some((v, vm, em)) = stack.pop() {
            for &(w, i) in &adj[v] {
                if vm >> w & 1 == 1 || (in_a(w) && !in_b(w)) {
                    continue;
                }
                let mut em2 = em;
                em2.set(i);
                if in_b(w) {
                    paths.push((vm | 1 << w, em2));
                    too_large("path count", paths.len(), MAX_PATHS)?;
                } else {
                    stack.push((w, vm | 1 << w, em2));
                }
            }
        }
    }
    paths.sort_by_key(|p| p.1.count());
    paths.dedup();
    let upper = match mode {
        PathMode::Vertex => a_set.len().min(b_set.len()),
        PathMode::Edge => {
            let side = |s: &[VertexId]| s.iter().map(|&v| adj[v].len()).sum::<usize>();
            side(a_set).min(side(b_set))
        }
    };
    let mut best = 0;
    pack(&paths, 0, 0, Bits::default(), 0, mode, upper, &mut best);
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn pack(
    paths: &[(u64, Bits)],
    from: usize,
    used_v: u64,
    used_e: Bits,
    chosen: usize,
    mode: PathMode,
    upper: usize,
    best: &mut usize,
) {
    if chosen > *best {
        *best = chosen;
    }
    if *best >= upper {
        return;
    }
    for i in from..paths.len() {
        if chosen + (paths.len() - i) <= *best {
            return;
        }
        let (vm, em) = &paths[i];
        let free = match mode {
            PathMode::Vertex => used_v & vm == 0,
            PathMode::Edge => used_e.and(em).is_zero(),
        };
        if free {
            pack(paths, i + 1, used_v | vm, used_e.xor(em), chosen + 1, mode, upper, best);
            if *best >= upper {
                return;
            }
        }
    }
}
