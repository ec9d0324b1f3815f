//! Combinatorial plane graphs.
//!
//! A [`PlaneGraph`] is a rotation system over darts (directed half-edges)
//! with a designated outer face. Dart `2e` runs from `edges[e][0]` to
//! `edges[e][1]` and dart `2e + 1` is its reversal, so reversal is `d ^ 1`.
//! Faces are traced by `next(d) = succ(rev(d))`, where `succ` is the
//! successor in the rotation at the head of `d`.

mod cycle;
mod disk;
mod json;
mod sub;

pub use cycle::Cycle;
pub use disk::{Disk, DiskSide};
pub(crate) use cycle::sorted_intersect;
pub(crate) use disk::is_nested_disks;
pub use json::{least_rotation, GraphJson, GraphParseError};
pub use sub::SubGraph;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub type Dart = usize;
pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("rotation system is not spherical: V - E + F = {0}")]
    EulerViolation(i64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed rotation system: {0}")]
    Malformed(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("closed walk repeats vertex {0}")]
    CycleIsNotSimple(VertexId),
    #[error("vertex {0} is not on the cycle")]
    VertexNotOnCycle(VertexId),
    #[error("outer face {0:?} is not a face of the embedding")]
    BadOuterFace(Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<Dart>>,
    rot_pos: Vec<usize>,
    outer: Dart,
    faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
    simple: bool,
}

#[inline]
pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

/// Traces the faces of a rotation system and checks it is a connected
/// spherical embedding.
pub fn trace_faces(
    n: usize,
    edges: &[[VertexId; 2]],
    rotation: &[Vec<Dart>],
) -> Result<Vec<Vec<Dart>>, EmbedError> {
    let nd = 2 * edges.len();
    let origin = |d: Dart| edges[d >> 1][d & 1];
    let mut pos = vec![usize::MAX; nd];
    if rotation.len() != n {
        return Err(EmbedError::Malformed(format!(
            "{} rotation lists for {} vertices",
            rotation.len(),
            n
        )));
    }
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &d) in rot.iter().enumerate() {
            if d >= nd || origin(d) != v || pos[d] != usize::MAX {
                return Err(EmbedError::Malformed(format!(
                    "dart {d} misplaced in rotation of vertex {v}"
                )));
            }
            pos[d] = i;
        }
    }
    if let Some(d) = pos.iter().position(|&p| p == usize::MAX) {
        return Err(EmbedError::Malformed(format!("dart {d} missing from rotation")));
    }
    if n == 0 {
        return Err(EmbedError::Disconnected);
    }
    // connectivity
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &d in &rotation[v] {
            let w = origin(d ^ 1);
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(EmbedError::Disconnected);
    }

    let next = |d: Dart| {
        let r = d ^ 1;
        let rot = &rotation[origin(r)];
        rot[(pos[r] + 1) % rot.len()]
    };
    let mut visited = vec![false; nd];
    let mut faces = Vec::new();
    for start in 0..nd {
        if visited[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            face.push(d);
            d = next(d);
        }
        faces.push(face);
    }
    let euler = n as i64 - edges.len() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(EmbedError::EulerViolation(euler));
    }
    Ok(faces)
}

impl PlaneGraph {
    /// Builds a plane graph from explicit edges, per-vertex dart rotations,
    /// and a dart on the outer face.
    pub fn from_darts(
        n: usize,
        edges: Vec<[VertexId; 2]>,
        rotation: Vec<Vec<Dart>>,
        outer: Dart,
    ) -> Result<Self, EmbedError> {
        let faces = trace_faces(n, &edges, &rotation)?;
        if outer >= 2 * edges.len() {
            return Err(EmbedError::Malformed(format!("outer dart {outer} out of range")));
        }
        let mut face_of = vec![0; 2 * edges.len()];
        for (f, face) in faces.iter().enumerate() {
            for &d in face {
                face_of[d] = f;
            }
        }
        let mut rot_pos = vec![0; 2 * edges.len()];
        for rot in &rotation {
            for (i, &d) in rot.iter().enumerate() {
                rot_pos[d] = i;
            }
        }
        let mut seen = std::collections::HashSet::new();
        let simple = edges
            .iter()
            .all(|&[u, v]| u != v && seen.insert((u.min(v), u.max(v))));
        Ok(PlaneGraph {
            n,
            edges,
            rotation,
            rot_pos,
            outer,
            faces,
            face_of,
            simple,
        })
    }

    /// Builds a simple plane graph from its list of faces, each given as a
    /// vertex cycle. Faces must be oriented consistently: every directed
    /// pair `u -> v` occurs in exactly one face and its reversal in another.
    /// `outer` indexes the outer face in `faces`.
    pub fn from_faces(n: usize, faces: &[Vec<VertexId>], outer: usize) -> Result<Self, EmbedError> {
        let mut dart_of: HashMap<(VertexId, VertexId), Dart> = HashMap::new();
        let mut edges: Vec<[VertexId; 2]> = Vec::new();
        for face in faces {
            if face.len() < 2 {
                return Err(EmbedError::Malformed("face with fewer than two vertices".into()));
            }
            for i in 0..face.len() {
                let (u, v) = (face[i], face[(i + 1) % face.len()]);
                if u >= n || v >= n || u == v {
                    return Err(EmbedError::Malformed(format!("bad face pair ({u}, {v})")));
                }
                if dart_of.contains_key(&(u, v)) {
                    return Err(EmbedError::Malformed(format!("directed pair ({u}, {v}) repeated")));
                }
                if let Some(&d) = dart_of.get(&(v, u)) {
                    dart_of.insert((u, v), d ^ 1);
                } else {
                    let e = edges.len();
                    edges.push([u, v]);
                    dart_of.insert((u, v), 2 * e);
                }
            }
        }
        if dart_of.len() != 2 * edges.len() {
            return Err(EmbedError::Malformed("some edge lies on only one face side".into()));
        }
        // succ(v -> prev) = v -> next for each face corner (prev, v, next)
        let mut succ: HashMap<Dart, Dart> = HashMap::new();
        for face in faces {
            let m = face.len();
            for i in 0..m {
                let prev = face[(i + m - 1) % m];
                let v = face[i];
                let next = face[(i + 1) % m];
                succ.insert(dart_of[&(v, prev)], dart_of[&(v, next)]);
            }
        }
        let mut out: Vec<Vec<Dart>> = vec![Vec::new(); n];
        for e in 0..edges.len() {
            out[edges[e][0]].push(2 * e);
            out[edges[e][1]].push(2 * e + 1);
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, ds) in out.iter().enumerate() {
            let Some(&start) = ds.iter().min() else {
                return Err(EmbedError::Disconnected);
            };
            let mut rot = vec![start];
            let mut d = succ[&start];
            while d != start {
                if rot.len() > ds.len() {
                    return Err(EmbedError::Malformed(format!("rotation at {v} is not a cycle")));
                }
                rot.push(d);
                d = succ[&d];
            }
            if rot.len() != ds.len() {
                return Err(EmbedError::Malformed(format!(
                    "faces around vertex {v} do not form a single disk"
                )));
            }
            rotation.push(rot);
        }
        let outer_face = faces.get(outer).ok_or_else(|| EmbedError::Malformed("outer face index".into()))?;
        let outer_dart = dart_of[&(outer_face[0], outer_face[1])];
        Self::from_darts(n, edges, rotation, outer_dart)
    }

    /// Builds a simple plane graph from neighbour rotations (cyclic order of
    /// neighbour ids around each vertex) and the vertex cycle of the outer face.
    pub fn from_neighbor_rotation(
        rotation: &[Vec<VertexId>],
        outer_face: &[VertexId],
    ) -> Result<Self, EmbedError> {
        let n = rotation.len();
        let mut edges: Vec<[VertexId; 2]> = Vec::new();
        let mut dart_of: HashMap<(VertexId, VertexId), Dart> = HashMap::new();
        for (u, nbrs) in rotation.iter().enumerate() {
            for &v in nbrs {
                if v >= n || v == u {
                    return Err(EmbedError::Malformed(format!("bad neighbour {v} of {u}")));
                }
                if dart_of.contains_key(&(u, v)) {
                    return Err(EmbedError::Malformed(format!(
                        "neighbour {v} repeated at {u}; parallel edges need edge_ids"
                    )));
                }
                if let Some(&d) = dart_of.get(&(v, u)) {
                    dart_of.insert((u, v), d ^ 1);
                } else {
                    let e = edges.len();
                    edges.push([u, v]);
                    dart_of.insert((u, v), 2 * e);
                }
            }
        }
        if dart_of.len() != 2 * edges.len() {
            return Err(EmbedError::Malformed("adjacency is not symmetric".into()));
        }
        let rot: Vec<Vec<Dart>> = rotation
            .iter()
            .enumerate()
            .map(|(u, nbrs)| nbrs.iter().map(|&v| dart_of[&(u, v)]).collect())
            .collect();
        Self::with_outer_cycle(n, edges, rot, outer_face)
    }

    /// Like [`from_neighbor_rotation`](Self::from_neighbor_rotation) but with
    /// explicit edge ids per rotation entry, allowing parallel edges.
    pub fn from_rotation_with_edge_ids(
        rotation: &[Vec<VertexId>],
        edge_ids: &[Vec<EdgeId>],
        outer_face: &[VertexId],
    ) -> Result<Self, EmbedError> {
        let n = rotation.len();
        if edge_ids.len() != n {
            return Err(EmbedError::Malformed("edge_ids length mismatch".into()));
        }
        let m = edge_ids.iter().flatten().map(|&e| e + 1).max().unwrap_or(0);
        let mut ends: Vec<Vec<VertexId>> = vec![Vec::new(); m];
        for (u, ids) in edge_ids.iter().enumerate() {
            if ids.len() != rotation[u].len() {
                return Err(EmbedError::Malformed(format!("edge_ids at {u} mismatch rotation")));
            }
            for &e in ids {
                ends[e].push(u);
            }
        }
        let mut edges = Vec::with_capacity(m);
        for (e, end) in ends.iter().enumerate() {
            match end.as_slice() {
                [a, b] => edges.push([*a, *b]),
                _ => return Err(EmbedError::Malformed(format!("edge {e} must have two ends"))),
            }
        }
        let mut used = vec![[false; 2]; m];
        let mut rot = Vec::with_capacity(n);
        for (u, ids) in edge_ids.iter().enumerate() {
            let mut r = Vec::new();
            for (i, &e) in ids.iter().enumerate() {
                let side = if edges[e][0] == u && !used[e][0] { 0 } else { 1 };
                used[e][side] = true;
                if edges[e][side ^ 1] != rotation[u][i] {
                    return Err(EmbedError::Malformed(format!("edge {e} does not reach {}", rotation[u][i])));
                }
                r.push(2 * e + side);
            }
            rot.push(r);
        }
        Self::with_outer_cycle(n, edges, rot, outer_face)
    }

    fn with_outer_cycle(
        n: usize,
        edges: Vec<[VertexId; 2]>,
        rotation: Vec<Vec<Dart>>,
        outer_face: &[VertexId],
    ) -> Result<Self, EmbedError> {
        if outer_face.len() < 2 {
            return Err(EmbedError::BadOuterFace(outer_face.to_vec()));
        }
        let g = Self::from_darts(n, edges, rotation, 0)?;
        for f in 0..g.faces.len() {
            let verts = g.face_vertices(f);
            if verts.len() == outer_face.len() && is_rotation_of(&verts, outer_face) {
                let d = g.faces[f][0];
                return Ok(PlaneGraph { outer: d, ..g });
            }
        }
        Err(EmbedError::BadOuterFace(outer_face.to_vec()))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> VertexId {
        self.edges[d >> 1][d & 1]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.edges[d >> 1][(d & 1) ^ 1]
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn rotation_position(&self, d: Dart) -> usize {
        self.rot_pos[d]
    }

    /// Successor of `d` in the rotation around its origin.
    pub fn succ(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.rot_pos[d] + 1) % rot.len()]
    }

    pub fn pred(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.origin(d)];
        rot[(self.rot_pos[d] + rot.len() - 1) % rot.len()]
    }

    /// Next dart along the face containing `d`.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.succ(d ^ 1)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation[v].iter().map(move |&d| self.head(d))
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn face_vertices(&self, f: usize) -> Vec<VertexId> {
        self.faces[f].iter().map(|&d| self.origin(d)).collect()
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    pub fn outer_face(&self) -> usize {
        self.face_of[self.outer]
    }

    /// Returns the graph with its outer face moved to the face containing `d`.
    pub fn with_outer_dart(&self, d: Dart) -> PlaneGraph {
        PlaneGraph {
            outer: d,
            ..self.clone()
        }
    }

    /// Dart from `u` to `v`, smallest id if there are several.
    pub fn dart_between(&self, u: VertexId, v: VertexId) -> Option<Dart> {
        self.rotation
            .get(u)?
            .iter()
            .copied()
            .filter(|&d| self.head(d) == v)
            .min()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.dart_between(u, v).is_some()
    }

    /// Plain adjacency lists in rotation order.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    /// Simple, connected, and every face (outer included) is a triangle.
    pub fn is_triangulation(&self) -> bool {
        self.simple && self.n >= 3 && self.faces.iter().all(|f| f.len() == 3)
    }

    /// Breadth-first distances from `src` using only edges where `allowed(e)`.
    /// Unreachable vertices get `usize::MAX`.
    pub fn bfs_distances(&self, src: VertexId, allowed: impl Fn(EdgeId) -> bool) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotation[v] {
                if !allowed(d >> 1) {
                    continue;
                }
                let w = self.head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from `src` to `dst` over allowed edges, choosing the
    /// smallest-id predecessor at each BFS layer.
    pub fn shortest_path(
        &self,
        src: VertexId,
        dst: VertexId,
        allowed: impl Fn(EdgeId) -> bool,
    ) -> Option<Vec<VertexId>> {
        let dist = self.bfs_distances(dst, &allowed);
        if dist[src] == usize::MAX {
            return None;
        }
        let mut path = vec![src];
        let mut v = src;
        while v != dst {
            v = self.rotation[v]
                .iter()
                .filter(|&&d| allowed(d >> 1))
                .map(|&d| self.head(d))
                .filter(|&w| dist[w] != usize::MAX && dist[w] + 1 == dist[v])
                .min()?;
            path.push(v);
        }
        Some(path)
    }

    /// Neighbour rotations and outer face cycle, as used by the JSON format.
    pub fn to_json(&self) -> GraphJson {
        GraphJson::from_graph(self)
    }

    /// Per-face vertex cycles, outer face index. Inverse of
    /// [`from_faces`](Self::from_faces) for simple graphs.
    pub fn face_lists(&self) -> (Vec<Vec<VertexId>>, usize) {
        let faces = (0..self.faces.len()).map(|f| self.face_vertices(f)).collect();
        (faces, self.outer_face())
    }

    /// Adds one vertex inside each face selected by `select`, joined to every
    /// corner of that face. Existing dart ids are preserved; new edges are
    /// appended. Returns the new graph and the added apex ids in face order.
    pub fn stack_faces(&self, select: impl Fn(&[Dart]) -> bool) -> (PlaneGraph, Vec<VertexId>) {
        let mut edges = self.edges.clone();
        let mut rotation = self.rotation.clone();
        let mut apexes = Vec::new();
        let mut n = self.n;
        for face in &self.faces {
            if !select(face) {
                continue;
            }
            let z = n;
            n += 1;
            apexes.push(z);
            let m = face.len();
            // spoke i joins z and origin(face[i]); dart 2e goes w_i -> z
            let base = edges.len();
            for &d in face {
                edges.push([self.origin(d), z]);
            }
            for i in 0..m {
                let w_dart = face[i];
                let w = self.origin(w_dart);
                let spoke = 2 * (base + i);
                let rot = &mut rotation[w];
                let at = rot.iter().position(|&x| x == w_dart).expect("face dart in rotation");
                rot.insert(at, spoke);
            }
            // succ(z -> w_{i+1}) = z -> w_i
            let zrot: Vec<Dart> = (0..m).rev().map(|i| 2 * (base + i) + 1).collect();
            rotation.push(zrot);
        }
        let g = PlaneGraph::from_darts(n, edges, rotation, self.outer).expect("stacking preserves planarity");
        (g, apexes)
    }
}

fn is_rotation_of(a: &[VertexId], b: &[VertexId]) -> bool {
    let m = a.len();
    if m != b.len() {
        return false;
    }
    (0..m).any(|s| (0..m).all(|i| a[(s + i) % m] == b[i]))
}
