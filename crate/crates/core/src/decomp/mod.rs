//! Standard tree decompositions of plane triangulations: rooted trees of
//! bags whose tree edges carry nested rings.

mod mesh;
mod paths;
mod refine;

pub use mesh::{zero_nest_from_mesh, MeshError};
pub use paths::{
    check_paths, cut_separates, disjoint_paths, disjoint_paths_within, max_disjoint_paths, DisjointPaths, PathMode,
};
pub use refine::{refine, refine_with, DecompOutcome, EndgameRoute, RefineError, RefineOptions, RefineStats};

use serde::{Deserialize, Serialize};

use crate::embed::{is_nested_disks, Cycle, EmbedError, PlaneGraph, VertexId};

/// A rooted tree decomposition with one ring per tree edge.
///
/// Node 0 is the root. `rings[t]` is the ring of the edge from `t` to its
/// parent (none for the root). Bags are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTreeDecomposition {
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<VertexId>>,
    pub rings: Vec<Option<Cycle>>,
}

/// The first violated condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    #[error("malformed tree: {reason}")]
    Tree { reason: String },
    #[error("T1: vertex {vertex} is in no bag")]
    UncoveredVertex { vertex: VertexId },
    #[error("T1: edge {u}-{v} is in no bag")]
    UncoveredEdge { u: VertexId, v: VertexId },
    #[error("T2: vertex {vertex} is in bags {t} and {t2} but not {middle}")]
    NotConnected {
        vertex: VertexId,
        t: usize,
        middle: usize,
        t2: usize,
    },
    #[error("T3: edge {parent}-{child}: {reason}")]
    BadRing { parent: usize, child: usize, reason: String },
    #[error("T4: ring of node {inner} is not strictly inside ring of node {outer}")]
    NotNested { outer: usize, inner: usize },
}

impl StandardTreeDecomposition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.node_count()];
        for (t, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(t);
            }
        }
        ch
    }

    pub fn degree(&self, t: usize) -> usize {
        self.parent.iter().filter(|&&p| p == Some(t)).count() + usize::from(self.parent[t].is_some())
    }

    pub fn max_ring_length(&self) -> usize {
        self.rings.iter().flatten().map(Cycle::len).max().unwrap_or(0)
    }

    /// Nodes from the root down to `t`.
    pub fn root_path(&self, t: usize) -> Vec<usize> {
        let mut path = vec![t];
        let mut x = t;
        while let Some(p) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    }

    pub fn leaves(&self) -> Vec<usize> {
        let ch = self.children();
        (0..self.node_count()).filter(|&t| t != 0 && ch[t].is_empty()).collect()
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            root: 0,
            parent: self.parent.clone(),
            bags: self.bags.clone(),
            rings: self.rings.iter().map(|r| r.as_ref().map(|c| c.vertices().to_vec())).collect(),
            width: self.width(),
        }
    }

    pub fn from_json(g: &PlaneGraph, j: &DecompositionJson) -> Result<Self, EmbedError> {
        let rings = j
            .rings
            .iter()
            .map(|r| r.as_ref().map(|vs| Cycle::from_vertices(g, vs)).transpose())
            .collect::<Result<Vec<_>, _>>()?;
        let mut bags = j.bags.clone();
        bags.iter_mut().for_each(|b| b.sort_unstable());
        Ok(StandardTreeDecomposition {
            parent: j.parent.clone(),
            bags,
            rings,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<VertexId>>,
    pub rings: Vec<Option<Vec<VertexId>>>,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph is not a triangulation")]
pub struct NotATriangulation;

/// Two nodes: the outer triangle as root bag, every vertex as leaf bag.
pub fn initial_decomposition(g: &PlaneGraph) -> Result<StandardTreeDecomposition, NotATriangulation> {
    if !g.is_triangulation() {
        return Err(NotATriangulation);
    }
    let outer = Cycle::from_darts(g, &g.faces()[g.outer_face()]).map_err(|_| NotATriangulation)?;
    Ok(StandardTreeDecomposition {
        parent: vec![None, Some(0)],
        bags: vec![outer.vertex_set().to_vec(), (0..g.vertex_count()).collect()],
        rings: vec![None, Some(outer)],
    })
}

/// Checks (T1)-(T4) and reports the first failure.
pub fn validate_decomposition(g: &PlaneGraph, d: &StandardTreeDecomposition) -> Result<(), Violation> {
    let m = d.node_count();
    if m == 0 || d.parent.len() != m || d.rings.len() != m {
        return Err(Violation::Tree { reason: "node arrays differ in length or are empty".into() });
    }
    if d.parent[0].is_some() {
        return Err(Violation::Tree { reason: "node 0 must be the root".into() });
    }
    // every non-root node must reach the root without revisiting
    for t in 1..m {
        let mut x = t;
        let mut steps = 0;
        while let Some(p) = d.parent[x] {
            if p >= m || steps > m {
                return Err(Violation::Tree { reason: format!("node {t} does not reach the root") });
            }
            x = p;
            steps += 1;
        }
        if x != 0 {
            return Err(Violation::Tree { reason: format!("node {t} reaches {x}, not the root") });
        }
    }
    let n = g.vertex_count();
    for b in &d.bags {
        if b.iter().any(|&v| v >= n) || b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::Tree { reason: "bags must be sorted, distinct and in range".into() });
        }
    }

    // T1
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, b) in d.bags.iter().enumerate() {
        for &v in b {
            holders[v].push(t);
        }
    }
    if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
        return Err(Violation::UncoveredVertex { vertex: v });
    }
    for &[u, v] in g.edges() {
        let hu = &holders[u];
        let covered = hu.iter().any(|&t| d.bags[t].binary_search(&v).is_ok());
        if !covered {
            return Err(Violation::UncoveredEdge { u: u.min(v), v: u.max(v) });
        }
    }

    // T2: the nodes holding v form a subtree, i.e. exactly one of them has
    // its parent outside the set.
    for v in 0..n {
        let hs = &holders[v];
        let in_set = |t: usize| d.bags[t].binary_search(&v).is_ok();
        let tops: Vec<usize> = hs
            .iter()
            .copied()
            .filter(|&t| d.parent[t].map_or(true, |p| !in_set(p)))
            .collect();
        if tops.len() > 1 {
            let (t, t2) = (tops[0], tops[1]);
            // the parent of whichever top is not an ancestor of the other
            // lies on the tree path between them and misses v
            let middle = if d.root_path(t2).contains(&t) {
                d.parent[t2].unwrap()
            } else {
                d.parent[t].unwrap()
            };
            return Err(Violation::NotConnected { vertex: v, t, middle, t2 });
        }
    }

    // T3
    let mut disks = vec![None; m];
    for t in 1..m {
        let p = d.parent[t].unwrap();
        let bad = |reason: String| Violation::BadRing {
            parent: p,
            child: t,
            reason,
        };
        let Some(c) = &d.rings[t] else {
            return Err(bad("missing ring".into()));
        };
        let inter: Vec<VertexId> = crate::embed::sorted_intersect(&d.bags[p], &d.bags[t]).collect();
        if inter != c.vertex_set() {
            return Err(bad(format!("bag intersection {inter:?} is not the ring {:?}", c.vertices())));
        }
        disks[t] = Some(g.disk(c).map_err(|e| bad(e.to_string()))?);
    }

    // T4 on consecutive tree edges; the general case follows because
    // closed-disk containment is transitive and antisymmetric.
    for t in 1..m {
        let p = d.parent[t].unwrap();
        if p == 0 {
            continue;
        }
        let (outer, inner) = (d.rings[p].as_ref().unwrap(), d.rings[t].as_ref().unwrap());
        let ok = outer != inner && is_nested_disks(disks[p].as_ref().unwrap(), disks[t].as_ref().unwrap(), inner);
        if !ok {
            return Err(Violation::NotNested { outer: p, inner: t });
        }
    }
    Ok(())
}

/// The invariants kept by refinement, beyond (T1)-(T4): tree degree at
/// most three, non-leaf and root bags of size at most `12k`, rings of
/// length at most `8k`, and every non-root leaf bag equal to the vertex set
/// of the closed disk of its ring.
pub fn check_refine_invariants(
    g: &PlaneGraph,
    d: &StandardTreeDecomposition,
    k: usize,
) -> Result<(), String> {
    let ch = d.children();
    for t in 0..d.node_count() {
        if d.degree(t) > 3 {
            return Err(format!("node {t} has tree degree {}", d.degree(t)));
        }
        let leaf = t != 0 && ch[t].is_empty();
        if !leaf && d.bags[t].len() > 12 * k {
            return Err(format!("non-leaf node {t} has bag of size {}", d.bags[t].len()));
        }
        if let Some(c) = &d.rings[t] {
            if c.len() > 8 * k {
                return Err(format!("ring of node {t} has length {}", c.len()));
            }
            let disk = g.disk(c).map_err(|e| e.to_string())?;
            if leaf && disk.closed_vertices() != d.bags[t] {
                return Err(format!("bag of node {t} is not the closed disk of its ring"));
            }
        }
    }
    Ok(())
}
