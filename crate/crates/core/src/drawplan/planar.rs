use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{check_generic, key, DrawError, Drawing};
use crate::embed::{EdgeId, PlaneGraph, VertexId};

/// The plane graph of a drawing with each crossing turned into a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planarization {
    pub graph: PlaneGraph,
    /// Vertices `0..base_vertices` are the drawing's own.
    pub base_vertices: usize,
    pub v4: Vec<VertexId>,
    /// Face-filling vertices, after [`fill_faces`].
    pub apexes: Vec<VertexId>,
    /// Base edge of every planarization edge; `None` for apex spokes.
    pub origin: Vec<Option<EdgeId>>,
}

impl Planarization {
    pub fn crossing_count(&self) -> usize {
        self.v4.len()
    }

    pub fn is_dummy(&self, v: VertexId) -> bool {
        v >= self.base_vertices
    }

    pub fn max_apex_degree(&self) -> usize {
        self.apexes.iter().map(|&a| self.graph.degree(a)).max().unwrap_or(0)
    }
}

pub fn planarize(d: &Drawing) -> Result<Planarization, DrawError> {
    check_generic(d)?;
    let ell = d.crossings.len();
    if d.rotation.len() != d.n + ell {
        return Err(DrawError::InconsistentLedger(format!(
            "rotation has {} vertices, expected {}",
            d.rotation.len(),
            d.n + ell
        )));
    }
    let mut expected: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
    for (e, &[u, v]) in d.edges.iter().enumerate() {
        let mut chain = vec![u];
        chain.extend(d.crossings_on(e).into_iter().map(|i| d.crossing_vertex(i)));
        chain.push(v);
        for w in chain.windows(2) {
            if expected.insert(key(w[0], w[1]), e).is_some() {
                return Err(DrawError::InconsistentLedger(format!(
                    "two pieces join {} and {}",
                    w[0], w[1]
                )));
            }
        }
    }
    let graph = PlaneGraph::from_neighbor_rotation(&d.rotation, &d.outer_face)?;
    if graph.edge_count() != expected.len() {
        return Err(DrawError::InconsistentLedger(format!(
            "rotation has {} edges, ledger implies {}",
            graph.edge_count(),
            expected.len()
        )));
    }
    let mut origin = Vec::with_capacity(graph.edge_count());
    for &[u, v] in graph.edges() {
        match expected.get(&key(u, v)) {
            Some(&e) => origin.push(Some(e)),
            None => {
                return Err(DrawError::InconsistentLedger(format!("edge {u}-{v} is not a piece")));
            }
        }
    }
    let v4: Vec<VertexId> = (d.n..d.n + ell).collect();
    for &c in &v4 {
        let rot = graph.rotation(c);
        let o: Vec<Option<EdgeId>> = rot.iter().map(|&dart| origin[dart >> 1]).collect();
        if rot.len() != 4 || o[0] != o[2] || o[1] != o[3] || o[0] == o[1] {
            return Err(DrawError::InconsistentLedger(format!(
                "crossing vertex {c} is not a proper crossing of two edges"
            )));
        }
    }
    Ok(Planarization {
        graph,
        base_vertices: d.n,
        v4,
        apexes: Vec::new(),
        origin,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    /// `Σ_v (6 − deg v)`.
    pub vertex_sum: i64,
    /// `Σ_f 2(3 − |f|)`.
    pub face_sum: i64,
    /// `Σ_f (|f| − 3)`.
    pub excess: i64,
    pub non_triangular: usize,
    pub crossings: usize,
    pub r: i64,
    /// `ℓ + r − 6`.
    pub bound: i64,
    /// `Σ (6 − deg v)` over base vertices; the degree hypothesis is
    /// `base_deficit ≤ r`.
    pub base_deficit: i64,
    pub hypothesis: bool,
    pub bound_holds: bool,
    pub largest_face: usize,
}

/// Fails only if the identity does, which means the embedding is broken.
pub fn euler_accounting(p: &Planarization, r: i64) -> Result<EulerReport, DrawError> {
    let g = &p.graph;
    let deficit = |v: VertexId| 6 - g.degree(v) as i64;
    let vertex_sum: i64 = (0..g.vertex_count()).map(deficit).sum();
    let base_deficit: i64 = (0..p.base_vertices).map(deficit).sum();
    let sizes: Vec<i64> = g.faces().iter().map(|f| f.len() as i64).collect();
    let face_sum: i64 = sizes.iter().map(|s| 2 * (3 - s)).sum();
    if vertex_sum + face_sum != 12 {
        return Err(DrawError::IdentityViolated(format!("{vertex_sum} + {face_sum} != 12")));
    }
    let excess: i64 = sizes.iter().map(|s| s - 3).sum();
    let ell = p.crossing_count();
    let bound = ell as i64 + r - 6;
    Ok(EulerReport {
        vertex_sum,
        face_sum,
        excess,
        non_triangular: sizes.iter().filter(|&&s| s > 3).count(),
        crossings: ell,
        r,
        bound,
        base_deficit,
        hypothesis: base_deficit <= r,
        bound_holds: excess <= bound,
        largest_face: sizes.iter().copied().max().unwrap_or(0) as usize,
    })
}

/// One apex inside every non-triangular face, joined to each boundary
/// position. The result is a triangulation when every such face is
/// bounded by a cycle.
pub fn fill_faces(p: &Planarization) -> Planarization {
    let (graph, apexes) = p.graph.stack_faces(|f| f.len() > 3);
    let mut origin = p.origin.clone();
    origin.resize(graph.edge_count(), None);
    let mut all = p.apexes.clone();
    all.extend(apexes);
    Planarization {
        graph,
        base_vertices: p.base_vertices,
        v4: p.v4.clone(),
        apexes: all,
        origin,
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::k5_one_crossing;
    use super::super::random_drawing;
    use super::*;
    use crate::gens;

    #[test]
    fn crossing_free_is_identity() {
        let g = gens::random_triangulation(30, 4);
        let p = planarize(&Drawing::from_plane_graph(&g)).unwrap();
        let sorted = |h: &PlaneGraph| {
            let mut es: Vec<_> = h.edges().iter().map(|&[u, v]| key(u, v)).collect();
            es.sort_unstable();
            es
        };
        assert_eq!(sorted(&p.graph), sorted(&g));
        for v in 0..g.vertex_count() {
            let heads = |h: &PlaneGraph| h.rotation(v).iter().map(|&d| h.head(d)).collect::<Vec<_>>();
            assert_eq!(heads(&p.graph), heads(&g));
        }
        assert!(p.v4.is_empty());
    }

    #[test]
    fn k5_planarization() {
        let p = planarize(&k5_one_crossing()).unwrap();
        assert_eq!((p.graph.vertex_count(), p.graph.edge_count()), (6, 12));
        assert!(p.graph.is_triangulation());
        let rep = euler_accounting(&p, 0).unwrap();
        assert_eq!(rep.non_triangular, 0);
    }

    #[test]
    fn two_crossings_subdivide_in_order() {
        let mut hit = false;
        for seed in 0..40 {
            let d = random_drawing(&gens::random_triangulation(30, seed), 8, 0, seed);
            let p = planarize(&d).unwrap();
            for e in 0..d.edges.len() {
                let ons = d.crossings_on(e);
                if ons.len() < 2 {
                    continue;
                }
                hit = true;
                let [u, v] = d.edges[e];
                let mut chain = vec![u];
                chain.extend(ons.iter().map(|&i| d.crossing_vertex(i)));
                chain.push(v);
                for w in chain.windows(2) {
                    assert!(p.graph.has_edge(w[0], w[1]), "{w:?}");
                }
            }
        }
        assert!(hit, "no edge crossed twice");
    }

    #[test]
    fn bad_ledger_is_reported() {
        let mut d = k5_one_crossing();
        d.rotation[5].swap(0, 1);
        assert!(planarize(&d).is_err());
    }

    #[test]
    fn euler_examples() {
        for g in [gens::bipyramid(4), gens::random_triangulation(12, 0)] {
            let p = planarize(&Drawing::from_plane_graph(&g)).unwrap();
            let rep = euler_accounting(&p, 0).unwrap();
            assert_eq!((rep.vertex_sum, rep.face_sum, rep.excess), (12, 0, 0));
        }
    }

    #[test]
    fn fill_gives_triangulations() {
        let sq = PlaneGraph::from_faces(4, &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]], 1).unwrap();
        let p = planarize(&Drawing::from_plane_graph(&sq)).unwrap();
        let f = fill_faces(&p);
        assert_eq!(f.apexes.len(), 2);
        assert!(f.graph.is_triangulation());
        for seed in 0..20 {
            let d = random_drawing(&gens::random_triangulation(25, seed), 5, 6, seed);
            let p = planarize(&d).unwrap();
            let f = fill_faces(&p);
            assert!(f.graph.is_triangulation());
            let rep = euler_accounting(&p, 0).unwrap();
            assert_eq!(f.apexes.len(), rep.non_triangular);
            let already = fill_faces(&planarize(&Drawing::from_plane_graph(&f.graph)).unwrap());
            assert_eq!(already.apexes.len(), 0);
        }
    }
}
