//! Drawings with crossings, kept as combinatorial ledgers: base edges, the
//! order of crossings along each edge, and the rotation system of the
//! planarization. Crossing `i` is planarization vertex `n + i`.

mod bridges;
mod clean;
mod planar;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

pub use bridges::{bridge_report, claim3_violations, nest_minimality_check, nest_minimality_check_capped, Bridge, BridgeError, BridgeReport, MinimalityWitness, OmegaChoice, SingularCut};
pub use clean::{clean_subnest, clean_window, crossings_in_annulus, is_clean, nest_in_drawing, CleanError, DrawingNest};
pub use planar::{euler_accounting, fill_faces, planarize, EulerReport, Planarization};

use crate::embed::{least_rotation, EdgeId, EmbedError, PlaneGraph, VertexId};
use crate::gens::{FaceSoup, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub e1: EdgeId,
    pub e2: EdgeId,
    /// Index of this crossing along `e1`, counted from `edges[e1][0]`.
    pub pos1: usize,
    pub pos2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    /// Base vertices are `0..n`.
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
    pub crossings: Vec<Crossing>,
    /// Neighbour rotation of every planarization vertex (`n + ℓ` entries).
    pub rotation: Vec<Vec<VertexId>>,
    /// Vertex walk of the planarization's outer face.
    pub outer_face: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DrawError {
    #[error("inconsistent crossing ledger: {0}")]
    InconsistentLedger(String),
    #[error("crossing {crossing} has edge {edge} crossing itself")]
    SelfCrossing { crossing: usize, edge: EdgeId },
    #[error("crossings {first} and {second} sit at the same point {pos} of edge {edge}")]
    MoreThanTwoEdges { edge: EdgeId, pos: usize, first: usize, second: usize },
    #[error("crossing {crossing}: adjacent edges {e1} and {e2} cross")]
    AdjacentEdgesCross { crossing: usize, e1: EdgeId, e2: EdgeId },
    #[error("Euler identity fails: {0}")]
    IdentityViolated(String),
    #[error("face filling did not give a triangulation")]
    NotTriangulable,
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Find(#[from] crate::nest::FindError),
}

impl Drawing {
    /// The crossing-free drawing given by an embedding.
    pub fn from_plane_graph(g: &PlaneGraph) -> Drawing {
        Drawing {
            n: g.vertex_count(),
            edges: g.edges().to_vec(),
            crossings: Vec::new(),
            rotation: neighbour_rotation(g),
            outer_face: least_rotation(&g.face_vertices(g.outer_face())),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing_vertex(&self, i: usize) -> VertexId {
        self.n + i
    }

    /// Crossing ids along edge `e` in order.
    pub fn crossings_on(&self, e: EdgeId) -> Vec<usize> {
        let mut on: Vec<(usize, usize)> = Vec::new();
        for (i, c) in self.crossings.iter().enumerate() {
            if c.e1 == e {
                on.push((c.pos1, i));
            }
            if c.e2 == e {
                on.push((c.pos2, i));
            }
        }
        on.sort_unstable();
        on.into_iter().map(|(_, i)| i).collect()
    }

    pub fn to_json(&self) -> DrawingJson {
        DrawingJson {
            graph: BaseGraphJson {
                n: self.n,
                edges: self.edges.clone(),
            },
            rotation: self.rotation.clone(),
            outer_face: self.outer_face.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingJson {
                    e1: self.edges[c.e1],
                    e2: self.edges[c.e2],
                    pos1: c.pos1,
                    pos2: c.pos2,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DrawingJson) -> Result<Drawing, DrawError> {
        let mut id: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for (e, &[u, v]) in j.graph.edges.iter().enumerate() {
            if u >= j.graph.n || v >= j.graph.n || u == v {
                return Err(DrawError::InconsistentLedger(format!("bad base edge {u}-{v}")));
            }
            if id.insert((u.min(v), u.max(v)), e).is_some() {
                return Err(DrawError::InconsistentLedger(format!("repeated base edge {u}-{v}")));
            }
        }
        let lookup = |[u, v]: [VertexId; 2]| {
            id.get(&(u.min(v), u.max(v)))
                .copied()
                .ok_or_else(|| DrawError::InconsistentLedger(format!("no base edge {u}-{v}")))
        };
        let crossings = j
            .crossings
            .iter()
            .map(|c| {
                Ok(Crossing {
                    e1: lookup(c.e1)?,
                    e2: lookup(c.e2)?,
                    pos1: c.pos1,
                    pos2: c.pos2,
                })
            })
            .collect::<Result<_, DrawError>>()?;
        Ok(Drawing {
            n: j.graph.n,
            edges: j.graph.edges.clone(),
            crossings,
            rotation: j.rotation.clone(),
            outer_face: j.outer_face.clone(),
        })
    }
}

fn neighbour_rotation(g: &PlaneGraph) -> Vec<Vec<VertexId>> {
    (0..g.vertex_count())
        .map(|v| g.rotation(v).iter().map(|&d| g.head(d)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseGraphJson {
    pub n: usize,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub e1: [VertexId; 2],
    pub e2: [VertexId; 2],
    pub pos1: usize,
    pub pos2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub graph: BaseGraphJson,
    pub rotation: Vec<Vec<VertexId>>,
    pub outer_face: Vec<VertexId>,
    pub crossings: Vec<CrossingJson>,
}

/// At most two edges per crossing point, no edge crosses itself or an
/// adjacent edge, and positions along each edge are `0..m`.
pub fn check_generic(d: &Drawing) -> Result<(), DrawError> {
    let m = d.edges.len();
    let mut at: HashMap<(EdgeId, usize), usize> = HashMap::new();
    for (i, c) in d.crossings.iter().enumerate() {
        if c.e1 >= m || c.e2 >= m {
            return Err(DrawError::InconsistentLedger(format!("crossing {i} names a missing edge")));
        }
        if c.e1 == c.e2 {
            return Err(DrawError::SelfCrossing { crossing: i, edge: c.e1 });
        }
        for (e, pos) in [(c.e1, c.pos1), (c.e2, c.pos2)] {
            if let Some(first) = at.insert((e, pos), i) {
                return Err(DrawError::MoreThanTwoEdges {
                    edge: e,
                    pos,
                    first,
                    second: i,
                });
            }
        }
        let [a, b] = d.edges[c.e1];
        let [x, y] = d.edges[c.e2];
        if a == x || a == y || b == x || b == y {
            return Err(DrawError::AdjacentEdgesCross {
                crossing: i,
                e1: c.e1,
                e2: c.e2,
            });
        }
    }
    let mut per_edge = vec![0usize; m];
    for &(e, _) in at.keys() {
        per_edge[e] += 1;
    }
    for (&(e, pos), _) in at.iter() {
        if pos >= per_edge[e] {
            return Err(DrawError::InconsistentLedger(format!(
                "edge {e} has {} crossings but one at position {pos}",
                per_edge[e]
            )));
        }
    }
    Ok(())
}

/// Grows a drawing from a plane triangulation by letting new base edges
/// cross existing pieces.
#[derive(Debug, Clone)]
pub struct DrawingBuilder {
    soup: FaceSoup,
    n: usize,
    edges: Vec<[VertexId; 2]>,
    alive: Vec<bool>,
    /// planarization piece (unordered) -> base edge
    piece: HashMap<(VertexId, VertexId), EdgeId>,
    base: HashSet<(VertexId, VertexId)>,
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

impl DrawingBuilder {
    pub fn new(g: &PlaneGraph) -> Self {
        let edges = g.edges().to_vec();
        let piece = edges.iter().enumerate().map(|(e, &[u, v])| (key(u, v), e)).collect();
        let base = edges.iter().map(|&[u, v]| key(u, v)).collect();
        DrawingBuilder {
            soup: FaceSoup::from_graph(g),
            n: g.vertex_count(),
            alive: vec![true; edges.len()],
            edges,
            piece,
            base,
        }
    }

    /// Current planarization pieces with their base edges.
    pub fn pieces(&self) -> Vec<((VertexId, VertexId), EdgeId)> {
        let mut out: Vec<_> = self.piece.iter().map(|(&k, &e)| (k, e)).collect();
        out.sort_unstable();
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.soup.n - self.n
    }

    /// Crosses piece `xy` (two inner triangles `xya`, `yxb`) with a new base
    /// edge `ab`. Returns the new edge's id.
    pub fn cross(&mut self, x: VertexId, y: VertexId) -> Option<EdgeId> {
        let (f, g) = (self.soup.face_with(x, y)?, self.soup.face_with(y, x)?);
        let third = |face: &[VertexId]| face.iter().copied().find(|&w| w != x && w != y);
        let (fa, fb) = (&self.soup.faces[f], &self.soup.faces[g]);
        if fa.len() != 3 || fb.len() != 3 {
            return None;
        }
        let (a, b) = (third(fa)?, third(fb)?);
        self.add_edge_across(a, &[(x, y)], b)
    }

    /// Adds base edge `ab` drawn from `a` across `pieces` in order to `b`.
    /// Consecutive pieces must bound a common face, the first a face at `a`
    /// and the last a face at `b`, none of them the outer face. Refuses
    /// (leaving the drawing unchanged) when `a` or `b` is not a base vertex,
    /// `ab` exists, a crossed edge is adjacent to `ab`, an edge would be
    /// crossed twice, or a face would be entered twice.
    pub fn add_edge_across(&mut self, a: VertexId, pieces: &[(VertexId, VertexId)], b: VertexId) -> Option<EdgeId> {
        if a >= self.n || b >= self.n || a == b || self.base.contains(&key(a, b)) {
            return None;
        }
        // face the new edge runs through before each piece, then the last one
        let mut route = Vec::with_capacity(pieces.len() + 1);
        let mut crossed = HashSet::new();
        let mut cur: Option<usize> = None;
        for &(x, y) in pieces {
            let e = *self.piece.get(&key(x, y))?;
            let [u, v] = self.edges[e];
            if [u, v].contains(&a) || [u, v].contains(&b) || !crossed.insert(e) {
                return None;
            }
            let (f, g) = (self.soup.face_with(x, y)?, self.soup.face_with(y, x)?);
            let here = match cur {
                None => [f, g].into_iter().find(|&h| self.soup.faces[h].contains(&a))?,
                Some(h) if h == f || h == g => h,
                Some(_) => return None,
            };
            route.push(here);
            cur = Some(if here == f { g } else { f });
        }
        let last = cur?;
        if !self.soup.faces[last].contains(&b) {
            return None;
        }
        route.push(last);
        let mut seen = HashSet::new();
        if route.iter().any(|&h| h == self.soup.outer || !seen.insert(h)) {
            return None;
        }
        let new = self.edges.len();
        self.edges.push([a, b]);
        self.alive.push(true);
        self.base.insert(key(a, b));
        let mut prev = a;
        let mut face = route[0];
        for &(x, y) in pieces {
            let e = self.piece.remove(&key(x, y)).unwrap();
            let other = if self.soup.face_with(x, y) == Some(face) {
                self.soup.face_with(y, x).unwrap()
            } else {
                self.soup.face_with(x, y).unwrap()
            };
            let c = self.soup.subdivide(x, y).unwrap();
            self.piece.insert(key(x, c), e);
            self.piece.insert(key(c, y), e);
            self.soup.split_face(face, prev, c).unwrap();
            self.piece.insert(key(prev, c), new);
            prev = c;
            face = other;
        }
        self.soup.split_face(face, prev, b).unwrap();
        self.piece.insert(key(prev, b), new);
        Some(new)
    }

    /// Deletes an uncrossed base edge, merging its two faces.
    pub fn delete_edge(&mut self, e: EdgeId) -> bool {
        let [u, v] = self.edges[e];
        if !self.alive[e] || self.piece.get(&key(u, v)) != Some(&e) {
            return false;
        }
        if !self.soup.delete_edge(u, v) {
            return false;
        }
        self.alive[e] = false;
        self.piece.remove(&key(u, v));
        self.base.remove(&key(u, v));
        true
    }

    pub fn build(&self) -> Drawing {
        let g = self.soup.to_graph();
        let mut new_id = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, &ends) in self.edges.iter().enumerate() {
            if self.alive[e] {
                new_id[e] = edges.len();
                edges.push(ends);
            }
        }
        let ell = self.crossing_count();
        // (edge, position) pairs met at each crossing vertex
        let mut met: Vec<Vec<(EdgeId, usize)>> = vec![Vec::new(); ell];
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            if !self.alive[e] {
                continue;
            }
            let (mut prev, mut cur, mut pos) = (usize::MAX, u, 0);
            while cur != v {
                let next = g
                    .neighbors(cur)
                    .find(|&w| w != prev && self.piece.get(&key(cur, w)) == Some(&e))
                    .expect("pieces of a base edge form a path");
                if next != v {
                    met[next - self.n].push((new_id[e], pos));
                    pos += 1;
                }
                (prev, cur) = (cur, next);
            }
        }
        let crossings = met
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                Crossing {
                    e1: m[0].0,
                    e2: m[1].0,
                    pos1: m[0].1,
                    pos2: m[1].1,
                }
            })
            .collect();
        Drawing {
            n: self.n,
            edges,
            crossings,
            rotation: neighbour_rotation(&g),
            outer_face: least_rotation(&g.face_vertices(g.outer_face())),
        }
    }
}

/// A drawing of `g` with about `crossings` crossings from new edges routed
/// across up to three pieces each, then up to `deletions` uncrossed edges
/// removed, all chosen at random.
pub fn random_drawing(g: &PlaneGraph, crossings: usize, deletions: usize, seed: u64) -> Drawing {
    let mut rng = SeededRng::new(seed);
    let mut b = DrawingBuilder::new(g);
    for _ in 0..crossings * 60 {
        let left = crossings.saturating_sub(b.crossing_count());
        if left == 0 {
            break;
        }
        if let Some((a, pieces, end)) = random_route(&b, &mut rng, left.min(3)) {
            b.add_edge_across(a, &pieces, end);
        }
    }
    let mut deleted = 0;
    for _ in 0..deletions * 20 {
        if deleted >= deletions {
            break;
        }
        let e = rng.below(b.edges.len());
        if b.delete_edge(e) {
            deleted += 1;
        }
    }
    b.build()
}

type Route = (VertexId, Vec<(VertexId, VertexId)>, VertexId);

fn random_route(b: &DrawingBuilder, rng: &mut SeededRng, max_steps: usize) -> Option<Route> {
    let soup = &b.soup;
    let a = rng.below(b.n);
    let at_a: Vec<usize> = (0..soup.faces.len())
        .filter(|&f| f != soup.outer && soup.faces[f].contains(&a))
        .collect();
    if at_a.is_empty() {
        return None;
    }
    let mut face = at_a[rng.below(at_a.len())];
    let mut pieces: Vec<(VertexId, VertexId)> = Vec::new();
    for _ in 0..1 + rng.below(max_steps) {
        let f = &soup.faces[face];
        let m = f.len();
        let options: Vec<(VertexId, VertexId)> = (0..m)
            .map(|i| (f[i], f[(i + 1) % m]))
            .filter(|&(x, y)| x != a && y != a && !pieces.iter().any(|&(p, q)| key(p, q) == key(x, y)))
            .collect();
        if options.is_empty() {
            return None;
        }
        let (x, y) = options[rng.below(options.len())];
        pieces.push((x, y));
        face = soup.face_with(y, x)?;
    }
    let ends: Vec<VertexId> = soup.faces[face].iter().copied().filter(|&w| w < b.n && w != a).collect();
    if ends.is_empty() {
        return None;
    }
    Some((a, pieces, ends[rng.below(ends.len())]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    /// K5 as the triangular bipyramid plus the apex edge across a rim edge.
    pub(crate) fn k5_one_crossing() -> Drawing {
        let g = gens::bipyramid(3);
        let mut b = DrawingBuilder::new(&g);
        let rim = [(0, 1), (1, 2), (2, 0)];
        assert!(rim.iter().any(|&(x, y)| b.cross(x, y).is_some()));
        b.build()
    }

    #[test]
    fn k5_fixture_is_generic() {
        let d = k5_one_crossing();
        assert_eq!((d.n, d.edges.len(), d.crossing_count()), (5, 10, 1));
        check_generic(&d).unwrap();
    }

    #[test]
    fn adjacent_crossing_is_rejected() {
        let mut d = Drawing::from_plane_graph(&gens::concentric(1));
        check_generic(&d).unwrap();
        let e2 = (1..d.edges.len())
            .find(|&e| d.edges[e].iter().any(|v| d.edges[0].contains(v)))
            .unwrap();
        d.crossings.push(Crossing { e1: 0, e2, pos1: 0, pos2: 0 });
        assert!(matches!(check_generic(&d), Err(DrawError::AdjacentEdgesCross { .. })));
    }

    #[test]
    fn shared_point_is_rejected() {
        let mut d = k5_one_crossing();
        let c = d.crossings[0];
        let other = (0..d.edges.len())
            .find(|&e| {
                e != c.e1 && e != c.e2 && !d.edges[e].iter().any(|v| d.edges[c.e1].contains(v))
            })
            .unwrap();
        d.crossings.push(Crossing {
            e1: c.e1,
            e2: other,
            pos1: c.pos1,
            pos2: 0,
        });
        assert!(matches!(check_generic(&d), Err(DrawError::MoreThanTwoEdges { .. })));
    }

    #[test]
    fn json_round_trip() {
        let d = random_drawing(&gens::random_triangulation(20, 1), 4, 2, 9);
        let j = serde_json::to_string(&d.to_json()).unwrap();
        let back = Drawing::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
