//! Refinement of the two-bag decomposition until every bag has at most
//! `12k` vertices, or a 0-nest of size `k` turns up.
//!
//! Each oversized leaf is handled by one of three moves. If its ring `C` is
//! not geodesic inside its disk, the pair `u, v` with the smallest disk
//! distance below the ring distance is cut off by a shortest path, which
//! splits the leaf into two children with shorter rings. Otherwise, if
//! `|C| < 8k`, the ring is pushed one triangle inwards. Otherwise `|C| = 8k`
//! and the ring carries two crossing families of `2k` disjoint paths, from
//! which a 0-nest of size `k` is built.

use serde::{Deserialize, Serialize};

use super::mesh::zero_nest_from_mesh;
use super::paths::{disjoint_paths_within, PathMode};
use super::{check_refine_invariants, initial_decomposition, validate_decomposition, StandardTreeDecomposition};
use crate::embed::{Cycle, Disk, PlaneGraph, VertexId};
use crate::nest::{peel_chain, Nest};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompOutcome {
    ZeroNest(Nest),
    Decomposition(StandardTreeDecomposition),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefineError {
    #[error("graph is not a triangulation")]
    NotATriangulation,
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error("no 0-nest of size {k} found inside a geodesic ring of length {ring}")]
    EndgameFailed { k: usize, ring: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefineOptions {
    /// Validate the whole decomposition after every move.
    pub validate_each_step: bool,
}

/// How the endgame produced its nest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndgameRoute {
    Mesh,
    MeshPeel,
    DiskPeel,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefineStats {
    pub splits: usize,
    pub extends: usize,
    pub endgame: Option<EndgameRoute>,
    /// Reasons the earlier endgame routes were rejected.
    pub endgame_notes: Vec<String>,
}

pub fn refine(g: &PlaneGraph, k: usize) -> Result<DecompOutcome, RefineError> {
    refine_with(g, k, &RefineOptions::default()).map(|(o, _)| o)
}

struct Node {
    parent: Option<usize>,
    children: usize,
    bag: Vec<VertexId>,
    ring: Option<Cycle>,
}

pub fn refine_with(
    g: &PlaneGraph,
    k: usize,
    opts: &RefineOptions,
) -> Result<(DecompOutcome, RefineStats), RefineError> {
    let init = initial_decomposition(g).map_err(|_| RefineError::NotATriangulation)?;
    let k = k.max(1);
    let mut stats = RefineStats::default();
    if 12 * k >= g.vertex_count() {
        return Ok((DecompOutcome::Decomposition(init), stats));
    }
    let mut nodes: Vec<Node> = (0..2)
        .map(|t| Node {
            parent: init.parent[t],
            children: usize::from(t == 0),
            bag: init.bags[t].clone(),
            ring: init.rings[t].clone(),
        })
        .collect();
    let limit = 12 * k;
    // leaves are only ever created, never re-opened, so a cursor suffices
    // for "smallest oversized leaf first"
    let mut cursor = 1;
    loop {
        while cursor < nodes.len() && (nodes[cursor].children > 0 || nodes[cursor].bag.len() <= limit) {
            cursor += 1;
        }
        if cursor == nodes.len() {
            break;
        }
        let t0 = cursor;
        let ring = nodes[t0].ring.clone().expect("non-root node has a ring");
        let disk = g.disk(&ring).map_err(|e| RefineError::InternalInvariantBroken(e.to_string()))?;
        if let Some((u, v)) = shortcut_pair(g, &ring, &disk) {
            let path = g
                .shortest_path(u, v, |e| disk.contains_edge(g, e))
                .ok_or_else(|| RefineError::InternalInvariantBroken("no path inside ring".into()))?;
            if path[1..path.len() - 1].iter().any(|&w| ring.contains_vertex(w)) {
                return Err(RefineError::InternalInvariantBroken(format!(
                    "shortcut {u}-{v} touches the ring"
                )));
            }
            let (c1, c2) = split_cycles(g, &ring, &path)?;
            let mut bag: Vec<VertexId> = ring.vertex_set().to_vec();
            bag.extend_from_slice(&path[1..path.len() - 1]);
            bag.sort_unstable();
            nodes[t0].bag = bag;
            for c in [c1, c2] {
                let child_bag = g
                    .disk(&c)
                    .map_err(|e| RefineError::InternalInvariantBroken(e.to_string()))?
                    .closed_vertices();
                nodes.push(Node {
                    parent: Some(t0),
                    children: 0,
                    bag: child_bag,
                    ring: Some(c),
                });
            }
            nodes[t0].children = 2;
            stats.splits += 1;
        } else if ring.len() < 8 * k {
            let (w, extended) = push_inwards(g, &ring, &disk)?;
            let old_bag = std::mem::take(&mut nodes[t0].bag);
            let mut bag: Vec<VertexId> = ring.vertex_set().to_vec();
            bag.push(w);
            bag.sort_unstable();
            nodes[t0].bag = bag;
            nodes[t0].children = 1;
            nodes.push(Node {
                parent: Some(t0),
                children: 0,
                bag: old_bag,
                ring: Some(extended),
            });
            stats.extends += 1;
        } else {
            let nest = endgame(g, &ring, &disk, k, &mut stats)?;
            return Ok((DecompOutcome::ZeroNest(nest), stats));
        }
        if opts.validate_each_step {
            let d = assemble(&nodes);
            validate_decomposition(g, &d).map_err(|v| RefineError::InternalInvariantBroken(v.to_string()))?;
            check_refine_invariants(g, &d, k).map_err(RefineError::InternalInvariantBroken)?;
        }
    }
    let d = assemble(&nodes);
    validate_decomposition(g, &d).map_err(|v| RefineError::InternalInvariantBroken(v.to_string()))?;
    if d.width() + 1 > limit || d.max_ring_length() > 8 * k {
        return Err(RefineError::InternalInvariantBroken(format!(
            "width {} or ring length {} over budget",
            d.width(),
            d.max_ring_length()
        )));
    }
    Ok((DecompOutcome::Decomposition(d), stats))
}

fn assemble(nodes: &[Node]) -> StandardTreeDecomposition {
    StandardTreeDecomposition {
        parent: nodes.iter().map(|n| n.parent).collect(),
        bags: nodes.iter().map(|n| n.bag.clone()).collect(),
        rings: nodes.iter().map(|n| n.ring.clone()).collect(),
    }
}

/// The ring pair with smallest disk distance among those where it is
/// shorter than the ring distance; ties by `(u, v)`.
fn shortcut_pair(g: &PlaneGraph, ring: &Cycle, disk: &Disk) -> Option<(VertexId, VertexId)> {
    let mut best: Option<(usize, VertexId, VertexId)> = None;
    let vs = ring.vertices();
    for (i, &u) in vs.iter().enumerate() {
        let dist = g.bfs_distances(u, |e| disk.contains_edge(g, e));
        for &v in &vs[i + 1..] {
            let c = ring.arc_distance(u, v).expect("on ring");
            if dist[v] < c {
                let key = (dist[v], u.min(v), u.max(v));
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    best.map(|(_, u, v)| (u, v))
}

/// The two cycles of `ring ∪ path` other than `ring`.
fn split_cycles(g: &PlaneGraph, ring: &Cycle, path: &[VertexId]) -> Result<(Cycle, Cycle), RefineError> {
    let vs = ring.vertices();
    let m = vs.len();
    let (u, v) = (path[0], *path.last().unwrap());
    let pu = ring.position(u).unwrap();
    let pv = ring.position(v).unwrap();
    let arc = |from: usize, to: usize| -> Vec<VertexId> {
        let len = (to + m - from) % m;
        (0..=len).map(|i| vs[(from + i) % m]).collect()
    };
    let inner: Vec<VertexId> = path[1..path.len() - 1].to_vec();
    // arc u..v then back along the path
    let mut a = arc(pu, pv);
    a.extend(inner.iter().rev());
    // arc v..u then forward along the path
    let mut b = arc(pv, pu);
    b.extend(inner.iter());
    let mk = |vs: &[VertexId]| Cycle::from_vertices(g, vs).map_err(|e| RefineError::InternalInvariantBroken(e.to_string()));
    Ok((mk(&a)?, mk(&b)?))
}

/// Replaces the smallest ring edge `uv` by `u w v`, where `uvw` is the
/// triangle on the inner side of `uv`.
fn push_inwards(g: &PlaneGraph, ring: &Cycle, disk: &Disk) -> Result<(VertexId, Cycle), RefineError> {
    let vs = ring.vertices();
    let m = vs.len();
    let i = (0..m)
        .min_by_key(|&i| {
            let (a, b) = (vs[i], vs[(i + 1) % m]);
            (a.min(b), a.max(b))
        })
        .unwrap();
    let (u, v) = (vs[i], vs[(i + 1) % m]);
    let d = g.dart_between(u, v).unwrap();
    let inner_dart = if disk.face_inside(g.face_of(d)) { d } else { d ^ 1 };
    let face = g.face_vertices(g.face_of(inner_dart));
    let w = *face.iter().find(|&&x| x != u && x != v).unwrap();
    if ring.contains_vertex(w) {
        return Err(RefineError::InternalInvariantBroken(format!(
            "inner triangle of {u}-{v} has its apex {w} on the ring"
        )));
    }
    let mut ext = vs.to_vec();
    ext.insert(i + 1, w);
    let c = Cycle::from_vertices(g, &ext).map_err(|e| RefineError::InternalInvariantBroken(e.to_string()))?;
    Ok((w, c))
}

fn endgame(g: &PlaneGraph, ring: &Cycle, disk: &Disk, k: usize, stats: &mut RefineStats) -> Result<Nest, RefineError> {
    let vs = ring.vertices();
    let arc = |a: usize| vs[2 * k * a..2 * k * (a + 1)].to_vec();
    let inside = |e| disk.contains_edge(g, e);
    let p = disjoint_paths_within(g, &arc(0), &arc(2), PathMode::Vertex, inside);
    let q = disjoint_paths_within(g, &arc(1), &arc(3), PathMode::Vertex, inside);
    match zero_nest_from_mesh(g, ring, &p.paths, &q.paths, k) {
        Ok(nest) => {
            stats.endgame = Some(EndgameRoute::Mesh);
            return Ok(nest);
        }
        Err(e) => stats.endgame_notes.push(format!("mesh: {e}")),
    }
    // peel the subgraph formed by the ring and both path families
    let mut keep = vec![false; g.edge_count()];
    for &d in ring.darts() {
        keep[d >> 1] = true;
    }
    for path in p.paths.iter().chain(&q.paths) {
        for w in path.windows(2) {
            keep[g.dart_between(w[0], w[1]).unwrap() >> 1] = true;
        }
    }
    let outer_dart = ring.darts()[0];
    let outer_side = if disk.face_inside(g.face_of(outer_dart)) { outer_dart ^ 1 } else { outer_dart };
    if let Ok(sub) = g.edge_subgraph(|e| keep[e], outer_side) {
        let sub_ring_vs: Vec<VertexId> = vs
            .iter()
            .map(|&v| sub.vertex_map.binary_search(&v).unwrap())
            .collect();
        if let Ok(sub_ring) = Cycle::from_vertices(&sub.graph, &sub_ring_vs) {
            let chain = peel_chain(&sub.graph, &sub_ring, &[], k);
            let lifted: Result<Vec<Cycle>, _> = chain
                .iter()
                .map(|c| Cycle::from_vertices(g, &sub.host_vertices(c.vertices())))
                .collect();
            match lifted.map(|cs| Nest::verified(g, cs)) {
                Ok(Ok(nest)) if nest.size() >= k => {
                    stats.endgame = Some(EndgameRoute::MeshPeel);
                    return Ok(nest);
                }
                Ok(Ok(nest)) => stats.endgame_notes.push(format!("mesh peel: only {} cycles", nest.size())),
                Ok(Err(e)) => stats.endgame_notes.push(format!("mesh peel: {e}")),
                Err(e) => stats.endgame_notes.push(format!("mesh peel: {e}")),
            }
        }
    }
    let chain = peel_chain(g, ring, &[], k);
    if chain.len() >= k {
        if let Ok(nest) = Nest::verified(g, chain) {
            stats.endgame = Some(EndgameRoute::DiskPeel);
            return Ok(nest);
        }
    }
    Err(RefineError::EndgameFailed { k, ring: ring.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;
    use crate::nest::verify_nest;

    fn check(g: &PlaneGraph, k: usize) -> (DecompOutcome, RefineStats) {
        let opts = RefineOptions {
            validate_each_step: true,
        };
        let (out, stats) = refine_with(g, k, &opts).unwrap();
        match &out {
            DecompOutcome::ZeroNest(n) => {
                assert!(n.size() >= k);
                assert_eq!(verify_nest(g, &n.cycles).unwrap().0, 0);
            }
            DecompOutcome::Decomposition(d) => {
                validate_decomposition(g, d).unwrap();
                assert!(d.width() < 12 * k);
                assert!(d.max_ring_length() <= 8 * k);
            }
        }
        (out, stats)
    }

    #[test]
    fn k4_is_already_narrow() {
        let (out, _) = check(&gens::concentric(1), 1);
        assert!(matches!(out, DecompOutcome::Decomposition(d) if d.width() == 3));
    }

    #[test]
    fn small_fixtures() {
        for g in [
            gens::concentric(12),
            gens::bipyramid(16),
            gens::one_nest(8),
            gens::grid_triangulation(8, 8),
            gens::apollonian(4, 2),
        ] {
            for k in 1..=2 {
                check(&g, k);
            }
        }
    }

    #[test]
    fn random_fixtures() {
        for seed in 0..4 {
            let g = gens::random_triangulation(150, seed);
            check(&g, 1);
            check(&g, 2);
        }
    }

    #[test]
    fn large_grid_gives_a_nest() {
        let g = gens::grid_triangulation(20, 20);
        let (out, stats) = refine_with(&g, 1, &RefineOptions::default()).unwrap();
        if let DecompOutcome::ZeroNest(n) = out {
            verify_nest(&g, &n.cycles).unwrap();
            assert!(stats.endgame.is_some());
        }
    }
}
