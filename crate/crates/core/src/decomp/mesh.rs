//! A 0-nest from two crossing families of disjoint paths inside a ring.

use crate::embed::{Cycle, PlaneGraph, VertexId};
use crate::nest::{Nest, NestViolation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MeshError {
    #[error("need {needed} paths in each family, got {p} and {q}")]
    TooFewPaths { needed: usize, p: usize, q: usize },
    #[error("a path does not start on the ring")]
    OffRing,
    #[error("path p{p} never meets path q{q}")]
    NoIntersection { p: usize, q: usize },
    #[error("cycle {0} of the mesh is not simple")]
    NotSimple(usize),
    #[error("mesh cycles do not form a 0-nest: {0}")]
    Verify(#[from] NestViolation),
}

/// `c` has length `8k` with vertices `v_1..v_8k` in walk order; `p_paths`
/// join `v_1..v_2k` to `v_4k+1..v_6k` and `q_paths` join `v_2k+1..v_4k` to
/// `v_6k+1..v_8k`, each family pairwise vertex-disjoint.
///
/// Both families are sorted by where they start on `c`. Cycle `i` runs
/// along `p_i` between its first meetings with `q_i` and `q_{2k+1-i}`, along
/// `q_{2k+1-i}` to `p_{2k+1-i}`, back along `p_{2k+1-i}`, and closes along
/// `q_i`. The result is verified.
pub fn zero_nest_from_mesh(
    g: &PlaneGraph,
    c: &Cycle,
    p_paths: &[Vec<VertexId>],
    q_paths: &[Vec<VertexId>],
    k: usize,
) -> Result<Nest, MeshError> {
    let m = 2 * k;
    if p_paths.len() < m || q_paths.len() < m {
        return Err(MeshError::TooFewPaths {
            needed: m,
            p: p_paths.len(),
            q: q_paths.len(),
        });
    }
    let sorted = |paths: &[Vec<VertexId>]| -> Result<Vec<Vec<VertexId>>, MeshError> {
        let mut keyed = paths
            .iter()
            .map(|p| c.position(p[0]).map(|i| (i, p.clone())).ok_or(MeshError::OffRing))
            .collect::<Result<Vec<_>, _>>()?;
        keyed.sort();
        Ok(keyed.into_iter().take(m).map(|(_, p)| p).collect())
    };
    let p = sorted(p_paths)?;
    let q = sorted(q_paths)?;
    let corner = |pi: usize, qi: usize, from_q: bool| -> Result<usize, MeshError> {
        // index on p (or on q when `from_q`) of the first vertex of p on q
        let hit = p[pi]
            .iter()
            .position(|v| q[qi].contains(v))
            .ok_or(MeshError::NoIntersection { p: pi, q: qi })?;
        Ok(if from_q {
            q[qi].iter().position(|&v| v == p[pi][hit]).unwrap()
        } else {
            hit
        })
    };
    let segment = |path: &[VertexId], a: usize, b: usize| -> Vec<VertexId> {
        if a <= b {
            path[a..=b].to_vec()
        } else {
            path[b..=a].iter().rev().copied().collect()
        }
    };
    let mut cycles = Vec::with_capacity(k);
    for i in 0..k {
        let j = m - 1 - i;
        let mut walk = segment(&p[i], corner(i, i, false)?, corner(i, j, false)?);
        let s2 = segment(&q[j], corner(i, j, true)?, corner(j, j, true)?);
        let s3 = segment(&p[j], corner(j, j, false)?, corner(j, i, false)?);
        let s4 = segment(&q[i], corner(j, i, true)?, corner(i, i, true)?);
        for s in [s2, s3, s4] {
            walk.extend_from_slice(&s[1..]);
        }
        walk.pop(); // back at the first corner
        let mut sorted_walk = walk.clone();
        sorted_walk.sort_unstable();
        if walk.len() < 3 || sorted_walk.windows(2).any(|w| w[0] == w[1]) {
            return Err(MeshError::NotSimple(i));
        }
        cycles.push(Cycle::from_vertices(g, &walk).map_err(|_| MeshError::NotSimple(i))?);
    }
    Ok(Nest::verified(g, cycles)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{disjoint_paths_within, PathMode};
    use crate::gens;

    #[test]
    fn grid_ring_mesh() {
        // 8 × 8 grid: its boundary has 28 vertices; use a 16-vertex ring
        // around the central 5 × 5 block
        let g = gens::grid_triangulation(9, 9);
        let id = |i: usize, j: usize| j * 9 + i;
        let mut ring = Vec::new();
        ring.extend((2..6).map(|i| id(i, 2)));
        ring.extend((2..6).map(|j| id(6, j)));
        ring.extend((3..7).rev().map(|i| id(i, 6)));
        ring.extend((3..7).rev().map(|j| id(2, j)));
        let c = Cycle::from_vertices(&g, &ring).unwrap();
        assert_eq!(c.len(), 16);
        let disk = g.disk(&c).unwrap();
        let vs = c.vertices();
        let k = 2;
        let arc = |a: usize| vs[2 * k * a..2 * k * (a + 1)].to_vec();
        let inside = |e| disk.contains_edge(&g, e);
        let p = disjoint_paths_within(&g, &arc(0), &arc(2), PathMode::Vertex, inside);
        let q = disjoint_paths_within(&g, &arc(1), &arc(3), PathMode::Vertex, inside);
        assert_eq!((p.count(), q.count()), (4, 4));
        let nest = zero_nest_from_mesh(&g, &c, &p.paths, &q.paths, k).unwrap();
        assert_eq!((nest.size(), nest.s()), (2, 0));
    }

    #[test]
    fn too_few_paths() {
        let g = gens::concentric(2);
        let c = Cycle::from_vertices(&g, &[0, 1, 2]).unwrap();
        assert!(matches!(
            zero_nest_from_mesh(&g, &c, &[], &[], 1),
            Err(MeshError::TooFewPaths { .. })
        ));
    }
}
