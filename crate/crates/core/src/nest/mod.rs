//! Nests of cycles: the verifier and the extraction pipeline from ring
//! chains of standard tree decompositions.

mod arcs;
mod budget;
mod chain;
mod find;
mod peel;

pub use arcs::{two_nest_from_arcs, ArcError};
pub use budget::{clean_input_size, nest_target, parameter_budget, Budget};
pub use chain::{
    constant_intersection_subsequence, constant_intersection_subsequence_bruteforce, root_path_rings,
    root_path_rings_to, ChainError, RingChain,
};
pub use find::{find_nest, find_nest_with, FindError, FindOptions, FoundNest, NestSource};
pub use peel::peel_chain;

use serde::{Deserialize, Serialize};

use crate::embed::{is_nested_disks, Cycle, Disk, EmbedError, PlaneGraph, VertexId};

/// An ordered family of cycles, outermost first, pairwise meeting in
/// exactly `x_set`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Nest {
    pub cycles: Vec<Cycle>,
    pub x_set: Vec<VertexId>,
}

impl Nest {
    pub fn size(&self) -> usize {
        self.cycles.len()
    }

    pub fn s(&self) -> usize {
        self.x_set.len()
    }

    /// Builds a nest after checking it with [`verify_nest`].
    pub fn verified(g: &PlaneGraph, cycles: Vec<Cycle>) -> Result<Self, NestViolation> {
        let (_, x_set) = verify_nest(g, &cycles)?;
        Ok(Nest { cycles, x_set })
    }

    pub fn from_vertex_lists(g: &PlaneGraph, lists: &[Vec<VertexId>]) -> Result<Self, NestViolation> {
        let cycles = lists
            .iter()
            .map(|vs| Cycle::from_vertices(g, vs))
            .collect::<Result<Vec<_>, _>>()
            .map_err(NestViolation::BadCycle)?;
        Self::verified(g, cycles)
    }

    pub fn to_json(&self, guaranteed: bool) -> NestJson {
        NestJson {
            s: self.s(),
            x: self.x_set.clone(),
            cycles: self.cycles.iter().map(|c| c.vertices().to_vec()).collect(),
            guaranteed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestJson {
    pub s: usize,
    #[serde(rename = "X")]
    pub x: Vec<VertexId>,
    pub cycles: Vec<Vec<VertexId>>,
    #[serde(default)]
    pub guaranteed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NestViolation {
    #[error("empty cycle family")]
    Empty,
    #[error(transparent)]
    BadCycle(EmbedError),
    #[error("cycles {i} and {j} share edge {edge}")]
    SharedEdge { i: usize, j: usize, edge: usize },
    #[error("cycle {inner} is not in the closed disk of cycle {outer}")]
    NotNested { outer: usize, inner: usize },
    #[error("cycles {i} and {j} meet in {found:?}, expected {expected:?}")]
    WrongIntersection {
        i: usize,
        j: usize,
        found: Vec<VertexId>,
        expected: Vec<VertexId>,
    },
}

impl NestViolation {
    /// The pair of cycle indices the violation is about, if any.
    pub fn witness_pair(&self) -> Option<(usize, usize)> {
        match *self {
            NestViolation::SharedEdge { i, j, .. } | NestViolation::WrongIntersection { i, j, .. } => Some((i, j)),
            NestViolation::NotNested { outer, inner } => Some((outer, inner)),
            _ => None,
        }
    }
}

/// Checks the nest conditions: pairwise edge-disjoint, each cycle in the
/// closed disk of its predecessor, and one common pairwise intersection.
/// Returns `(s, X)`; a single cycle gives `(0, [])`.
pub fn verify_nest(g: &PlaneGraph, cycles: &[Cycle]) -> Result<(usize, Vec<VertexId>), NestViolation> {
    if cycles.is_empty() {
        return Err(NestViolation::Empty);
    }
    for c in cycles {
        if c.darts().iter().any(|&d| d >= g.dart_count()) {
            return Err(NestViolation::BadCycle(EmbedError::NotACycle("dart out of range".into())));
        }
    }
    let x = if cycles.len() >= 2 {
        cycles[0].common_vertices(&cycles[1])
    } else {
        Vec::new()
    };
    let edges: Vec<Vec<usize>> = cycles.iter().map(Cycle::edge_ids).collect();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if let Some(edge) = crate::embed::sorted_intersect(&edges[i], &edges[j]).next() {
                return Err(NestViolation::SharedEdge { i, j, edge });
            }
            let found = cycles[i].common_vertices(&cycles[j]);
            if found != x {
                return Err(NestViolation::WrongIntersection {
                    i,
                    j,
                    found,
                    expected: x,
                });
            }
        }
    }
    let disks: Vec<Disk> = cycles
        .iter()
        .map(|c| g.disk(c))
        .collect::<Result<_, _>>()
        .map_err(NestViolation::BadCycle)?;
    for i in 0..cycles.len().saturating_sub(1) {
        if !is_nested_disks(&disks[i], &disks[i + 1], &cycles[i + 1]) {
            return Err(NestViolation::NotNested { outer: i, inner: i + 1 });
        }
    }
    Ok((x.len(), x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    #[test]
    fn single_cycle_is_a_zero_nest() {
        let g = gens::concentric(1);
        let c = Cycle::from_vertices(&g, &[0, 1, 2]).unwrap();
        assert_eq!(verify_nest(&g, &[c]).unwrap(), (0, vec![]));
    }

    #[test]
    fn planted_nests_verify() {
        let g = gens::concentric(3);
        let n = Nest::from_vertex_lists(&g, &gens::concentric_nest(3)).unwrap();
        assert_eq!((n.size(), n.s()), (3, 0));

        let g = gens::bipyramid(6);
        let n = Nest::from_vertex_lists(&g, &gens::bipyramid_nest(6)).unwrap();
        assert_eq!((n.size(), n.x_set.clone()), (3, vec![6, 7]));

        let g = gens::one_nest(4);
        let n = Nest::from_vertex_lists(&g, &gens::one_nest_cycles(4)).unwrap();
        assert_eq!((n.size(), n.x_set.clone()), (4, vec![0]));
    }

    #[test]
    fn reversed_order_is_rejected() {
        let g = gens::concentric(3);
        let mut lists = gens::concentric_nest(3);
        lists.reverse();
        let r = Nest::from_vertex_lists(&g, &lists);
        assert_eq!(r, Err(NestViolation::NotNested { outer: 0, inner: 1 }));
    }

    #[test]
    fn shared_edges_and_mixed_intersections_are_rejected() {
        let g = gens::concentric(1);
        let a = Cycle::from_vertices(&g, &[0, 1, 2]).unwrap();
        let b = Cycle::from_vertices(&g, &[0, 1, 3]).unwrap();
        assert!(matches!(verify_nest(&g, &[a, b]), Err(NestViolation::SharedEdge { .. })));

        let g = gens::concentric(4);
        let mut lists = gens::concentric_nest(4);
        // ring 1 replaced by a cycle meeting ring 0 at one vertex
        lists[1] = vec![0, 4, 3];
        let r = Nest::from_vertex_lists(&g, &lists);
        assert!(matches!(r, Err(NestViolation::WrongIntersection { i: 0, j: 2, .. })), "{r:?}");
    }
}
