//! Maximum families of disjoint paths by unit-capacity augmenting paths,
//! with minimum cuts read off the final residual graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::embed::{EdgeId, PlaneGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathMode {
    /// Paths share no vertex at all (endpoints included).
    Vertex,
    /// Paths share no edge.
    Edge,
}

/// A maximum family of disjoint A-B paths and a matching cut.
///
/// Each path starts in A, ends in B, and meets A and B only at its ends.
/// `cut` holds vertex ids in vertex mode and edge ids in edge mode; it has
/// exactly `paths.len()` elements and meets every A-B path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointPaths {
    pub mode: PathMode,
    pub paths: Vec<Vec<VertexId>>,
    pub edge_paths: Vec<Vec<EdgeId>>,
    pub cut: Vec<usize>,
}

impl DisjointPaths {
    pub fn count(&self) -> usize {
        self.paths.len()
    }
}

/// Disjoint paths in the whole plane graph.
pub fn disjoint_paths(g: &PlaneGraph, a: &[VertexId], b: &[VertexId], mode: PathMode) -> DisjointPaths {
    disjoint_paths_within(g, a, b, mode, |_| true)
}

/// Disjoint paths using only edges with `allowed(e)`.
pub fn disjoint_paths_within(
    g: &PlaneGraph,
    a: &[VertexId],
    b: &[VertexId],
    mode: PathMode,
    allowed: impl Fn(EdgeId) -> bool,
) -> DisjointPaths {
    let edges: Vec<(EdgeId, VertexId, VertexId)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| allowed(e))
        .map(|(e, &[u, v])| (e, u, v))
        .collect();
    max_disjoint_paths(g.vertex_count(), &edges, a, b, mode)
}

struct Arc {
    to: usize,
    cap: u32,
    /// Undirected edge behind the arc, if any.
    edge: Option<EdgeId>,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Adds `u → v` with capacity `cap` and its residual partner.
    fn add(&mut self, u: usize, v: usize, cap: u32, edge: Option<EdgeId>) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap, edge });
        self.arcs.push(Arc { to: u, cap: 0, edge });
        self.out[u].push(id);
        self.out[v].push(id + 1);
        id
    }

    /// One BFS augmentation of one unit; false when none exists.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = a;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            v = self.arcs[a ^ 1].to;
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

const INF: u32 = u32::MAX / 4;

/// Maximum disjoint A-B paths in the graph on `n` vertices with the listed
/// `(id, u, v)` edges. A and B must be disjoint.
pub fn max_disjoint_paths(
    n: usize,
    edges: &[(EdgeId, VertexId, VertexId)],
    a: &[VertexId],
    b: &[VertexId],
    mode: PathMode,
) -> DisjointPaths {
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &v in a {
        in_a[v] = true;
    }
    for &v in b {
        assert!(!in_a[v], "terminal sets must be disjoint (vertex {v})");
        in_b[v] = true;
    }
    // vertex mode: v_in = 2v, v_out = 2v + 1; edge mode: node v
    let (nodes, vin, vout): (usize, fn(usize) -> usize, fn(usize) -> usize) = match mode {
        PathMode::Vertex => (2 * n + 2, |v| 2 * v, |v| 2 * v + 1),
        PathMode::Edge => (n + 2, |v| v, |v| v),
    };
    let (s, t) = (nodes - 2, nodes - 1);
    let mut net = Network::new(nodes);
    if mode == PathMode::Vertex {
        for v in 0..n {
            net.add(vin(v), vout(v), 1, None);
        }
    }
    let edge_cap = match mode {
        PathMode::Vertex => INF,
        PathMode::Edge => 1,
    };
    for &(e, u, v) in edges {
        if u == v {
            continue;
        }
        net.add(vout(u), vin(v), edge_cap, Some(e));
        net.add(vout(v), vin(u), edge_cap, Some(e));
    }
    let mut source_arc = vec![usize::MAX; n];
    for v in 0..n {
        if in_a[v] {
            source_arc[v] = net.add(s, vin(v), INF, None);
        }
        if in_b[v] {
            net.add(vout(v), t, INF, None);
        }
    }
    let mut value = 0;
    while net.augment(s, t) {
        value += 1;
    }

    // Net flow per undirected edge direction, cancelling opposite units.
    let mut flow_out: Vec<Vec<(usize, Option<EdgeId>)>> = vec![Vec::new(); nodes];
    let mut used: std::collections::HashMap<(usize, usize, Option<EdgeId>), i32> = Default::default();
    for (i, arc) in net.arcs.iter().enumerate().step_by(2) {
        let from = net.arcs[i + 1].to;
        let sent = net.arcs[i + 1].cap as i32; // residual of partner = flow sent
        if sent > 0 && arc.edge.is_some() {
            *used.entry((from, arc.to, arc.edge)).or_default() += sent;
        }
    }
    let mut keys: Vec<_> = used.keys().copied().collect();
    keys.sort_unstable();
    for (u, v, e) in keys {
        let fwd = used.get(&(u, v, e)).copied().unwrap_or(0);
        let back = match mode {
            PathMode::Edge => used.get(&(v, u, e)).copied().unwrap_or(0),
            PathMode::Vertex => 0,
        };
        for _ in 0..(fwd - back).max(0) {
            flow_out[u].push((v, e));
        }
    }

    let node_vertex = |x: usize| match mode {
        PathMode::Vertex => x / 2,
        PathMode::Edge => x,
    };
    let mut paths = Vec::new();
    let mut edge_paths = Vec::new();
    let starts: Vec<VertexId> = (0..n).filter(|&v| in_a[v]).collect();
    for &a0 in &starts {
        let units = INF - net.arcs[source_arc[a0]].cap;
        for _ in 0..units {
            // walk one unit from a0 until a B vertex is reached; by
            // conservation a non-B vertex always has an unused outgoing unit
            let mut walk = vec![a0];
            let mut walk_edges = Vec::new();
            let mut x = vout(a0);
            loop {
                let (y, e) = flow_out[x].pop().expect("flow conservation");
                let v = node_vertex(y);
                walk.push(v);
                walk_edges.push(e.expect("flow arc carries an edge"));
                if in_b[v] {
                    break;
                }
                x = vout(v);
            }
            let (p, pe) = simplify(walk, walk_edges);
            let (p, pe) = trim_to_terminals(p, pe, &in_a, &in_b);
            paths.push(p);
            edge_paths.push(pe);
        }
    }
    debug_assert_eq!(paths.len(), value);

    let reach = net.reachable(s);
    let cut: Vec<usize> = match mode {
        PathMode::Vertex => (0..n)
            .filter(|&v| reach[vin(v)] && !reach[vout(v)])
            .collect(),
        PathMode::Edge => {
            let mut c: Vec<EdgeId> = edges
                .iter()
                .filter(|&&(_, u, v)| u != v && reach[u] != reach[v])
                .map(|&(e, _, _)| e)
                .collect();
            c.sort_unstable();
            c.dedup();
            c
        }
    };
    DisjointPaths {
        mode,
        paths,
        edge_paths,
        cut,
    }
}

/// Removes closed sub-walks so that no vertex repeats.
fn simplify(walk: Vec<VertexId>, edges: Vec<EdgeId>) -> (Vec<VertexId>, Vec<EdgeId>) {
    let mut pv: Vec<VertexId> = Vec::new();
    let mut pe: Vec<EdgeId> = Vec::new();
    for (i, v) in walk.into_iter().enumerate() {
        if let Some(j) = pv.iter().position(|&x| x == v) {
            pv.truncate(j + 1);
            pe.truncate(j);
        } else {
            if i > 0 {
                pe.push(edges[i - 1]);
            }
            pv.push(v);
        }
    }
    (pv, pe)
}

fn trim_to_terminals(
    p: Vec<VertexId>,
    pe: Vec<EdgeId>,
    in_a: &[bool],
    in_b: &[bool],
) -> (Vec<VertexId>, Vec<EdgeId>) {
    let first_b = p.iter().position(|&v| in_b[v]).unwrap();
    let last_a = p[..=first_b].iter().rposition(|&v| in_a[v]).unwrap();
    (p[last_a..=first_b].to_vec(), pe[last_a..first_b].to_vec())
}

/// Checks that `paths` are A-B paths of the required disjointness, each
/// using only listed edges.
pub fn check_paths(
    edges: &[(EdgeId, VertexId, VertexId)],
    a: &[VertexId],
    b: &[VertexId],
    result: &DisjointPaths,
) -> Result<(), String> {
    let mut used_v = std::collections::HashSet::new();
    let mut used_e = std::collections::HashSet::new();
    for (p, pe) in result.paths.iter().zip(&result.edge_paths) {
        if p.is_empty() || !a.contains(&p[0]) || !b.contains(p.last().unwrap()) {
            return Err(format!("path {p:?} does not join A to B"));
        }
        if pe.len() + 1 != p.len() {
            return Err(format!("path {p:?} has {} edges", pe.len()));
        }
        for (i, &e) in pe.iter().enumerate() {
            let Some(&(_, u, v)) = edges.iter().find(|x| x.0 == e) else {
                return Err(format!("edge {e} not available"));
            };
            let (x, y) = (p[i], p[i + 1]);
            if !((u == x && v == y) || (u == y && v == x)) {
                return Err(format!("edge {e} does not join {x} and {y}"));
            }
            if !used_e.insert(e) {
                return Err(format!("edge {e} used twice"));
            }
        }
        if result.mode == PathMode::Vertex {
            for &v in p {
                if !used_v.insert(v) {
                    return Err(format!("vertex {v} used twice"));
                }
            }
        }
    }
    Ok(())
}

/// True when deleting the cut leaves no A-B path.
pub fn cut_separates(
    n: usize,
    edges: &[(EdgeId, VertexId, VertexId)],
    a: &[VertexId],
    b: &[VertexId],
    mode: PathMode,
    cut: &[usize],
) -> bool {
    let mut blocked_v = vec![false; n];
    let mut blocked_e = std::collections::HashSet::new();
    match mode {
        PathMode::Vertex => cut.iter().for_each(|&v| blocked_v[v] = true),
        PathMode::Edge => cut.iter().for_each(|&e| {
            blocked_e.insert(e);
        }),
    }
    let mut adj = vec![Vec::new(); n];
    for &(e, u, v) in edges {
        if !blocked_e.contains(&e) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<VertexId> = a.iter().copied().filter(|&v| !blocked_v[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(u) = stack.pop() {
        if b.contains(&u) {
            return false;
        }
        for &w in &adj[u] {
            if !seen[w] && !blocked_v[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    true
}
