//! Deterministic generators of plane triangulations with known nests.
//!
//! Every generator builds a consistently oriented face list and hands it to
//! [`PlaneGraph::from_faces`]. Randomised families draw from SplitMix64
//! seeded with the raw 64-bit seed, and map draws to ranges with a
//! multiply-shift, so fixtures are reproducible from the seed alone.

use std::collections::HashMap;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::embed::{PlaneGraph, VertexId};

/// SplitMix64 with a portable bounded draw.
#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::from_seed(seed.to_le_bytes()))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw in `0..n` (multiply-shift, no rejection).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Concentric,
    Bipyramid,
    OneNest,
    Apollonian,
    Grid,
    Random,
}

/// A generator invocation. `size` holds the family parameters: one value for
/// every family except `grid`, which takes width and height.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub size: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{family:?} expects {expected} size parameter(s), got {got}")]
    Arity { family: Family, expected: usize, got: usize },
    #[error("parameter out of range: {0}")]
    Range(String),
}

impl GenSpec {
    pub fn generate(&self) -> Result<PlaneGraph, GenError> {
        let expected = if self.family == Family::Grid { 2 } else { 1 };
        if self.size.len() != expected {
            return Err(GenError::Arity {
                family: self.family,
                expected,
                got: self.size.len(),
            });
        }
        let s = self.size[0];
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(GenError::Range(what.into())) };
        Ok(match self.family {
            Family::Concentric => {
                need(s >= 1, "concentric needs m >= 1")?;
                concentric(s)
            }
            Family::Bipyramid => {
                need(s >= 3, "bipyramid needs n >= 3")?;
                bipyramid(s)
            }
            Family::OneNest => {
                need(s >= 1, "one_nest needs m >= 1")?;
                one_nest(s)
            }
            Family::Apollonian => {
                need(s >= 1, "apollonian needs depth >= 1")?;
                apollonian(s, self.seed)
            }
            Family::Grid => {
                need(s >= 2 && self.size[1] >= 2, "grid needs w, h >= 2")?;
                grid_triangulation(s, self.size[1])
            }
            Family::Random => {
                need(s >= 4, "random needs n >= 4")?;
                random_triangulation(s, self.seed)
            }
        })
    }
}

/// `m` pairwise disjoint nested triangles; ring `r` is `3r, 3r+1, 3r+2`
/// and vertex `3m` is the apex inside the innermost ring. The outer face is
/// ring 0.
pub fn concentric(m: usize) -> PlaneGraph {
    assert!(m >= 1);
    let mut faces = vec![vec![0, 2, 1]];
    for r in 0..m - 1 {
        let a = |i: usize| 3 * r + i % 3;
        let b = |i: usize| 3 * (r + 1) + i % 3;
        for i in 0..3 {
            faces.push(vec![a(i), b(i + 1), b(i)]);
            faces.push(vec![a(i), a(i + 1), b(i + 1)]);
        }
    }
    let z = 3 * m;
    let c = |i: usize| 3 * (m - 1) + i % 3;
    for i in 0..3 {
        faces.push(vec![c(i), c(i + 1), z]);
    }
    PlaneGraph::from_faces(3 * m + 1, &faces, 0).expect("concentric faces")
}

/// The planted 0-nest of [`concentric`], outermost first.
pub fn concentric_nest(m: usize) -> Vec<Vec<VertexId>> {
    (0..m).map(|r| vec![3 * r, 3 * r + 1, 3 * r + 2]).collect()
}

/// Two apexes joined to every vertex of an `n`-cycle. Rim vertices are
/// `0..n`, apex `a = n` sits inside the rim and `b = n + 1` on the outer
/// face `(r_0, r_{n-1}, b)`.
pub fn bipyramid(n: usize) -> PlaneGraph {
    assert!(n >= 3);
    let (a, b) = (n, n + 1);
    let mut faces = Vec::with_capacity(2 * n);
    for i in 0..n {
        faces.push(vec![i, (i + 1) % n, a]);
    }
    for i in 0..n {
        faces.push(vec![(i + 1) % n, i, b]);
    }
    PlaneGraph::from_faces(n + 2, &faces, 2 * n - 1).expect("bipyramid faces")
}

/// The planted 2-nest of [`bipyramid`] through both apexes, outermost first.
pub fn bipyramid_nest(n: usize) -> Vec<Vec<VertexId>> {
    let m = n / 2;
    let (a, b) = (n, n + 1);
    (0..m).rev().map(|j| vec![a, m - 1 - j, b, m + j]).collect()
}

/// `m` nested triangles pinched at vertex `0`. Ring `r` is
/// `0, 2r + 1, 2r + 2`; vertex `2m + 1` is the apex inside the innermost
/// ring. Each pinched annulus is triangulated by three diagonals among the
/// non-shared ring vertices.
pub fn one_nest(m: usize) -> PlaneGraph {
    assert!(m >= 1);
    let x = 0;
    let u = |r: usize| 2 * r + 1;
    let w = |r: usize| 2 * r + 2;
    let mut faces = vec![vec![x, w(0), u(0)]];
    for r in 0..m - 1 {
        let (ur, wr, u2, w2) = (u(r), w(r), u(r + 1), w(r + 1));
        faces.push(vec![x, ur, u2]);
        faces.push(vec![wr, x, w2]);
        faces.push(vec![ur, wr, w2]);
        faces.push(vec![ur, w2, u2]);
    }
    let z = 2 * m + 1;
    let (ul, wl) = (u(m - 1), w(m - 1));
    faces.push(vec![x, ul, z]);
    faces.push(vec![ul, wl, z]);
    faces.push(vec![wl, x, z]);
    PlaneGraph::from_faces(2 * m + 2, &faces, 0).expect("one_nest faces")
}

/// The planted 1-nest of [`one_nest`], outermost first.
pub fn one_nest_cycles(m: usize) -> Vec<Vec<VertexId>> {
    (0..m).map(|r| vec![0, 2 * r + 1, 2 * r + 2]).collect()
}

/// A `w × h` lattice with each cell split along its rising diagonal, and
/// one extra vertex outside joined to the whole boundary.
pub fn grid_triangulation(w: usize, h: usize) -> PlaneGraph {
    assert!(w >= 2 && h >= 2);
    let id = |i: usize, j: usize| j * w + i;
    let apex = w * h;
    let mut faces = Vec::new();
    for j in 0..h - 1 {
        for i in 0..w - 1 {
            let (p00, p10, p11, p01) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            faces.push(vec![p00, p10, p11]);
            faces.push(vec![p00, p11, p01]);
        }
    }
    let mut boundary = Vec::new();
    boundary.extend((0..w).map(|i| id(i, 0)));
    boundary.extend((1..h).map(|j| id(w - 1, j)));
    boundary.extend((0..w - 1).rev().map(|i| id(i, h - 1)));
    boundary.extend((1..h - 1).rev().map(|j| id(0, j)));
    let outer = faces.len();
    let len = boundary.len();
    for k in 0..len {
        faces.push(vec![boundary[(k + 1) % len], boundary[k], apex]);
    }
    PlaneGraph::from_faces(w * h + 1, &faces, outer).expect("grid faces")
}

/// Random stacked triangulation: `depth` rounds, where the first round
/// stacks the single inner face and each later round stacks every inner
/// face independently with probability one half (at least one per round).
pub fn apollonian(depth: usize, seed: u64) -> PlaneGraph {
    let mut rng = SeededRng::new(seed);
    let mut soup = FaceSoup::new(3, vec![vec![0, 1, 2], vec![0, 2, 1]], 1);
    for round in 0..depth {
        let inner: Vec<usize> = (0..soup.faces.len()).filter(|&f| f != soup.outer).collect();
        let mut chosen: Vec<usize> = inner.iter().copied().filter(|_| round == 0 || rng.coin()).collect();
        if chosen.is_empty() {
            chosen.push(inner[rng.below(inner.len())]);
        }
        for f in chosen {
            soup.stack(f);
        }
    }
    soup.to_graph()
}

/// Random insertion into uniformly chosen inner faces, followed by `2n`
/// attempted random edge flips that keep the outer triangle.
pub fn random_triangulation(n: usize, seed: u64) -> PlaneGraph {
    assert!(n >= 4);
    let mut rng = SeededRng::new(seed);
    let mut soup = FaceSoup::new(3, vec![vec![0, 1, 2], vec![0, 2, 1]], 1);
    while soup.n < n {
        let mut f = rng.below(soup.faces.len() - 1);
        if f >= soup.outer {
            f += 1;
        }
        soup.stack(f);
    }
    for _ in 0..2 * n {
        let mut f = rng.below(soup.faces.len() - 1);
        if f >= soup.outer {
            f += 1;
        }
        let i = rng.below(3);
        let (u, v) = (soup.faces[f][i], soup.faces[f][(i + 1) % 3]);
        soup.flip(u, v);
    }
    soup.to_graph()
}

/// Mutable list of oriented faces, indexed by directed vertex pairs.
#[derive(Debug, Clone)]
pub(crate) struct FaceSoup {
    pub n: usize,
    pub faces: Vec<Vec<VertexId>>,
    pub outer: usize,
    dart: HashMap<(VertexId, VertexId), usize>,
    degree: Vec<usize>,
}

impl FaceSoup {
    pub fn new(n: usize, faces: Vec<Vec<VertexId>>, outer: usize) -> Self {
        let mut soup = FaceSoup {
            n,
            faces: Vec::new(),
            outer,
            dart: HashMap::new(),
            degree: vec![0; n],
        };
        for f in faces {
            soup.faces.push(Vec::new());
            let idx = soup.faces.len() - 1;
            soup.set_face(idx, f);
        }
        soup
    }

    pub fn from_graph(g: &PlaneGraph) -> Self {
        let (faces, outer) = g.face_lists();
        Self::new(g.vertex_count(), faces, outer)
    }

    fn set_face(&mut self, idx: usize, face: Vec<VertexId>) {
        let old = std::mem::take(&mut self.faces[idx]);
        for i in 0..old.len() {
            let key = (old[i], old[(i + 1) % old.len()]);
            if self.dart.get(&key) == Some(&idx) {
                self.dart.remove(&key);
                self.degree[key.0] -= 1;
            }
        }
        for i in 0..face.len() {
            let key = (face[i], face[(i + 1) % face.len()]);
            self.dart.insert(key, idx);
            self.degree[key.0] += 1;
        }
        self.faces[idx] = face;
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.degree.push(0);
        self.n - 1
    }

    pub fn face_with(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.dart.get(&(u, v)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.dart.contains_key(&(u, v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v]
    }

    /// Inserts a new vertex inside face `f`, joined to all of its corners.
    pub fn stack(&mut self, f: usize) -> VertexId {
        let face = self.faces[f].clone();
        let z = self.add_vertex();
        let m = face.len();
        self.set_face(f, vec![face[0], face[1], z]);
        for i in 1..m {
            self.faces.push(Vec::new());
            let idx = self.faces.len() - 1;
            self.set_face(idx, vec![face[i], face[(i + 1) % m], z]);
        }
        z
    }

    /// Flips edge `uv` shared by two inner triangles; returns whether the
    /// flip happened.
    pub fn flip(&mut self, u: VertexId, v: VertexId) -> bool {
        let (Some(f), Some(g)) = (self.face_with(u, v), self.face_with(v, u)) else {
            return false;
        };
        if f == self.outer || g == self.outer || self.faces[f].len() != 3 || self.faces[g].len() != 3 {
            return false;
        }
        let a = third(&self.faces[f], u, v);
        let b = third(&self.faces[g], v, u);
        if a == b || self.has_edge(a, b) || self.degree(u) <= 3 || self.degree(v) <= 3 {
            return false;
        }
        self.set_face(f, vec![a, u, b]);
        self.set_face(g, vec![b, v, a]);
        true
    }

    /// Inserts a new vertex on edge `xy`, in both incident faces.
    pub fn subdivide(&mut self, x: VertexId, y: VertexId) -> Option<VertexId> {
        let (f, g) = (self.face_with(x, y)?, self.face_with(y, x)?);
        let c = self.add_vertex();
        for (h, a) in [(f, x), (g, y)] {
            let mut face = self.faces[h].clone();
            let i = face.iter().position(|&w| w == a).unwrap();
            face.insert(i + 1, c);
            self.set_face(h, face);
        }
        Some(c)
    }

    /// Splits face `f` along a new edge `uv` between two of its corners;
    /// the part from `u` to `v` keeps index `f`. Returns the other index.
    pub fn split_face(&mut self, f: usize, u: VertexId, v: VertexId) -> Option<usize> {
        let face = self.faces[f].clone();
        let i = face.iter().position(|&w| w == u)?;
        let mut rot = face.clone();
        rot.rotate_left(i);
        let j = rot.iter().position(|&w| w == v)?;
        if j < 2 || j + 1 >= rot.len() {
            return None;
        }
        let first = rot[..=j].to_vec();
        let mut second = rot[j..].to_vec();
        second.push(u);
        self.set_face(f, first);
        self.faces.push(Vec::new());
        let idx = self.faces.len() - 1;
        self.set_face(idx, second);
        Some(idx)
    }

    /// Deletes edge `uv`, merging its two faces; refuses when the faces
    /// coincide or the merged boundary would repeat a vertex.
    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let (Some(f), Some(g)) = (self.face_with(u, v), self.face_with(v, u)) else {
            return false;
        };
        if f == g {
            return false;
        }
        let rot = |face: &[VertexId], start: VertexId| {
            let i = face.iter().position(|&x| x == start).unwrap();
            let mut r = face.to_vec();
            r.rotate_left(i);
            r
        };
        let ff = rot(&self.faces[f], u); // u, v, ...
        let gg = rot(&self.faces[g], v); // v, u, ...
        let mut merged: Vec<VertexId> = ff[1..].to_vec(); // v ... (ends before u)
        merged.push(u);
        merged.extend_from_slice(&gg[2..]);
        let mut sorted = merged.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || merged.len() < 3 {
            return false;
        }
        let (keep, drop) = (f.min(g), f.max(g));
        self.set_face(drop, Vec::new());
        self.set_face(keep, merged);
        if self.outer == drop {
            self.outer = keep;
        }
        // move the last face into the hole
        let last = self.faces.len() - 1;
        if drop != last {
            let moved = self.faces[last].clone();
            self.set_face(last, Vec::new());
            self.set_face(drop, moved);
            if self.outer == last {
                self.outer = drop;
            }
        }
        self.faces.pop();
        true
    }

    pub fn to_graph(&self) -> PlaneGraph {
        PlaneGraph::from_faces(self.n, &self.faces, self.outer).expect("face soup is a valid embedding")
    }
}

fn third(face: &[VertexId], u: VertexId, v: VertexId) -> VertexId {
    *face.iter().find(|&&x| x != u && x != v).expect("triangle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::Cycle;

    #[test]
    fn concentric_one_is_k4() {
        let g = concentric(1);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        assert!(g.is_triangulation());
    }

    #[test]
    fn bipyramid_four_is_octahedron() {
        let g = bipyramid(4);
        assert_eq!(g.vertex_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 4));
        assert!(g.is_triangulation());
    }

    #[test]
    fn one_nest_one_is_k4() {
        let g = one_nest(1);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        assert!(g.is_triangulation());
    }

    #[test]
    fn small_grid_is_triangulation() {
        assert!(grid_triangulation(2, 2).is_triangulation());
        assert!(grid_triangulation(5, 3).is_triangulation());
    }

    #[test]
    fn generators_are_triangulations() {
        for m in 1..8 {
            assert!(concentric(m).is_triangulation());
            assert!(one_nest(m).is_triangulation());
        }
        for n in 3..12 {
            assert!(bipyramid(n).is_triangulation());
        }
        for seed in 0..20 {
            assert!(random_triangulation(30, seed).is_triangulation());
            assert!(apollonian(3, seed).is_triangulation());
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_triangulation(50, 7), random_triangulation(50, 7));
        assert_ne!(
            random_triangulation(50, 7).to_json(),
            random_triangulation(50, 8).to_json()
        );
    }

    #[test]
    fn apollonian_min_degree_three() {
        let g = apollonian(3, 1);
        assert!(g.is_triangulation());
        assert!((0..g.vertex_count()).all(|v| g.degree(v) >= 3));
    }

    #[test]
    fn planted_cycles_exist() {
        let g = concentric(5);
        for c in concentric_nest(5) {
            Cycle::from_vertices(&g, &c).unwrap();
        }
        let g = bipyramid(8);
        assert_eq!(bipyramid_nest(8).len(), 4);
        for c in bipyramid_nest(8) {
            Cycle::from_vertices(&g, &c).unwrap();
        }
        let g = one_nest(4);
        for c in one_nest_cycles(4) {
            Cycle::from_vertices(&g, &c).unwrap();
        }
    }

    #[test]
    fn spec_roundtrip_and_arity() {
        let spec = GenSpec {
            family: Family::Grid,
            size: vec![3],
            seed: 0,
        };
        assert!(matches!(spec.generate(), Err(GenError::Arity { .. })));
        let spec = GenSpec {
            family: Family::Random,
            size: vec![12],
            seed: 3,
        };
        let s = serde_json::to_string(&spec).unwrap();
        let back: GenSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back.generate().unwrap(), spec.generate().unwrap());
    }
}
