//! Bridges of `H = C2 ∪ C4` for two crossing-free nest cycles, their
//! interior/exterior classes with respect to a face `Ω` of `H`, and the
//! edge-disjoint path counts between the two sides of `Ω`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::decomp::{max_disjoint_paths, PathMode};
use crate::embed::{sorted_intersect, Cycle, EdgeId, PlaneGraph, VertexId};
use crate::nest::Nest;
use crate::oracle::{enumerate_cycles_capped, OracleError, DEFAULT_MAX_VERTICES};

/// Which face of `H` touching both cycles plays `Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaChoice {
    /// The candidate holding the most bridges (smallest index on ties).
    Auto,
    /// Index into [`BridgeReport::omega_candidates`].
    Candidate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    /// Vertices off `H`; empty for a chord.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub attachments: Vec<VertexId>,
    /// Face of `H` the bridge is drawn in.
    pub region: usize,
    pub interior: bool,
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularCut {
    pub bridge: usize,
    /// Edge-disjoint paths inside the bridge joining the two vertices of X.
    pub paths: usize,
    pub cut: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub bridges: Vec<Bridge>,
    /// Number of faces of `H`.
    pub regions: usize,
    pub omega_candidates: Vec<usize>,
    pub omega: usize,
    pub omega_auto: bool,
    /// Vertices of `C2` and `C4` on the boundary of `Ω`.
    pub p2: Vec<VertexId>,
    pub p4: Vec<VertexId>,
    pub d1: usize,
    pub d2: usize,
    /// Minimum cuts matching `d1` and `d2`.
    pub f1: Vec<EdgeId>,
    pub f2: Vec<EdgeId>,
    pub singular_cuts: Vec<SingularCut>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BridgeError {
    #[error("invalid H: {0}")]
    InvalidH(String),
    #[error("omega candidate {choice} out of range ({available} available)")]
    NoSuchOmega { choice: usize, available: usize },
}

pub fn bridge_report(
    g: &PlaneGraph,
    c2: &Cycle,
    c4: &Cycle,
    x_set: &[VertexId],
    omega: OmegaChoice,
) -> Result<BridgeReport, BridgeError> {
    let invalid = |s: String| Err(BridgeError::InvalidH(s));
    if c2.shares_edge_with(c4) {
        return invalid("C2 and C4 share an edge".into());
    }
    if !g.is_nested(c2, c4).map_err(|e| BridgeError::InvalidH(e.to_string()))? {
        return invalid("C4 is not inside C2".into());
    }
    let mut x: Vec<VertexId> = x_set.to_vec();
    x.sort_unstable();
    let common: Vec<VertexId> = sorted_intersect(c2.vertex_set(), c4.vertex_set()).collect();
    if common != x {
        return invalid(format!("C2 and C4 meet in {common:?}, not X = {x:?}"));
    }
    let n = g.vertex_count();
    let mut in_h = vec![false; g.edge_count()];
    let mut on_h = vec![false; n];
    for c in [c2, c4] {
        for &d in c.darts() {
            in_h[d >> 1] = true;
        }
        for &v in c.vertices() {
            on_h[v] = true;
        }
    }

    // faces of H: faces of g joined across edges off H
    let nf = g.face_count();
    let mut region = vec![usize::MAX; nf];
    let mut regions = 0;
    for f0 in 0..nf {
        if region[f0] != usize::MAX {
            continue;
        }
        region[f0] = regions;
        let mut queue = VecDeque::from([f0]);
        while let Some(f) = queue.pop_front() {
            for &d in &g.faces()[f] {
                let h = g.face_of(d ^ 1);
                if !in_h[d >> 1] && region[h] == usize::MAX {
                    region[h] = regions;
                    queue.push_back(h);
                }
            }
        }
        regions += 1;
    }
    let touches = |c: &Cycle| -> Vec<bool> {
        let mut t = vec![false; regions];
        for &d in c.darts() {
            t[region[g.face_of(d)]] = true;
            t[region[g.face_of(d ^ 1)]] = true;
        }
        t
    };
    let (t2, t4) = (touches(c2), touches(c4));
    let omega_candidates: Vec<usize> = (0..regions).filter(|&r| t2[r] && t4[r]).collect();

    let mut bridges = enumerate_bridges(g, &in_h, &on_h);
    for b in &mut bridges {
        b.region = region[g.face_of(2 * b.edges[0])];
        b.singular = b.attachments == x;
    }
    let (omega, omega_auto) = match omega {
        OmegaChoice::Candidate(i) => (
            *omega_candidates.get(i).ok_or(BridgeError::NoSuchOmega {
                choice: i,
                available: omega_candidates.len(),
            })?,
            false,
        ),
        OmegaChoice::Auto => {
            let best = omega_candidates
                .iter()
                .copied()
                .max_by_key(|&r| (bridges.iter().filter(|b| b.region == r).count(), std::cmp::Reverse(r)))
                .ok_or_else(|| BridgeError::InvalidH("no face of H touches both cycles".into()))?;
            (best, true)
        }
    };
    for b in &mut bridges {
        b.interior = b.region == omega;
    }

    let side = |c: &Cycle| -> Vec<VertexId> {
        let mut vs = Vec::new();
        for &d in c.darts() {
            if region[g.face_of(d)] == omega || region[g.face_of(d ^ 1)] == omega {
                vs.push(g.origin(d));
                vs.push(g.head(d));
            }
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let (p2, p4) = (side(c2), side(c4));
    let off_x = |vs: &[VertexId]| -> Vec<VertexId> { vs.iter().copied().filter(|v| !x.contains(v)).collect() };
    let flow = |interior: bool| {
        let edges: Vec<(EdgeId, VertexId, VertexId)> = bridges
            .iter()
            .filter(|b| b.interior == interior)
            .flat_map(|b| b.edges.iter().copied())
            .map(|e| (e, g.edges()[e][0], g.edges()[e][1]))
            .filter(|&(_, u, v)| !x.contains(&u) && !x.contains(&v))
            .collect();
        max_disjoint_paths(n, &edges, &off_x(&p2), &off_x(&p4), PathMode::Edge)
    };
    let (r1, r2) = (flow(true), flow(false));

    let mut singular_cuts = Vec::new();
    if x.len() == 2 {
        for (i, b) in bridges.iter().enumerate().filter(|(_, b)| b.singular) {
            let edges: Vec<_> = b.edges.iter().map(|&e| (e, g.edges()[e][0], g.edges()[e][1])).collect();
            let r = max_disjoint_paths(n, &edges, &x[..1], &x[1..], PathMode::Edge);
            singular_cuts.push(SingularCut {
                bridge: i,
                paths: r.count(),
                cut: r.cut,
            });
        }
    }
    Ok(BridgeReport {
        bridges,
        regions,
        omega_candidates,
        omega,
        omega_auto,
        p2,
        p4,
        d1: r1.count(),
        d2: r2.count(),
        f1: r1.cut,
        f2: r2.cut,
        singular_cuts,
    })
}

/// Chords of `H` and components of `g − V(H)` with their edges to `H`.
fn enumerate_bridges(g: &PlaneGraph, in_h: &[bool], on_h: &[bool]) -> Vec<Bridge> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if on_h[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut vertices = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !on_h[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    vertices.push(w);
                    queue.push_back(w);
                }
            }
        }
        vertices.sort_unstable();
        out.push(Bridge {
            vertices,
            edges: Vec::new(),
            attachments: Vec::new(),
            region: 0,
            interior: false,
            singular: false,
        });
    }
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        if in_h[e] {
            continue;
        }
        if on_h[u] && on_h[v] {
            out.push(Bridge {
                vertices: Vec::new(),
                edges: vec![e],
                attachments: vec![u.min(v), u.max(v)],
                region: 0,
                interior: false,
                singular: false,
            });
            continue;
        }
        let b = if on_h[u] { comp[v] } else { comp[u] };
        out[b].edges.push(e);
        for w in [u, v] {
            if on_h[w] {
                out[b].attachments.push(w);
            }
        }
    }
    for b in &mut out {
        b.attachments.sort_unstable();
        b.attachments.dedup();
    }
    // isolated components (no edges) cannot occur in a connected graph
    out.retain(|b| !b.edges.is_empty());
    out
}

/// Exterior bridges with at least two attachments that are neither the
/// bridge holding an edge of `c1`, nor the one holding an edge of `c5`,
/// nor singular.
pub fn claim3_violations(report: &BridgeReport, c1: &Cycle, c5: &Cycle) -> Vec<usize> {
    let holding = |c: &Cycle| -> Option<usize> {
        let es = c.edge_ids();
        report.bridges.iter().position(|b| b.edges.iter().any(|e| es.contains(e)))
    };
    let (b1, b5) = (holding(c1), holding(c5));
    report
        .bridges
        .iter()
        .enumerate()
        .filter(|(i, b)| {
            !b.interior && b.attachments.len() >= 2 && !b.singular && Some(*i) != b1 && Some(*i) != b5
        })
        .map(|(i, _)| i)
        .collect()
}

/// A cycle that could replace nest cycle `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityWitness {
    pub index: usize,
    /// 1: its disk contains that of the replaced cycle (outer half);
    /// 2: its disk lies inside it (inner half).
    pub condition: u8,
    pub cycle: Vec<VertexId>,
}

/// For the outer half of the nest (indices `1..mid`, 0-based, with
/// `mid = (h−1)/2`), no cycle `D ≠ D_i` with a larger disk keeps
/// `D_{i−1}, D, D_{i+1}` a nest with the same `s`; for the inner half
/// (`mid+1..h−1`), none with a smaller disk does. `Ok(None)` when both
/// hold.
pub fn nest_minimality_check(g: &PlaneGraph, nest: &Nest) -> Result<Option<MinimalityWitness>, OracleError> {
    nest_minimality_check_capped(g, nest, DEFAULT_MAX_VERTICES)
}

/// As [`nest_minimality_check`] with an explicit cap on the vertex count.
pub fn nest_minimality_check_capped(
    g: &PlaneGraph,
    nest: &Nest,
    max_vertices: usize,
) -> Result<Option<MinimalityWitness>, OracleError> {
    let h = nest.size();
    if h < 3 {
        return Ok(None);
    }
    let idx = enumerate_cycles_capped(g, None, max_vertices)?;
    let ids: Vec<usize> = nest
        .cycles
        .iter()
        .map(|c| idx.find(c.vertices()).expect("nest cycle is enumerated"))
        .collect();
    let s = nest.s();
    let mid = (h - 1) / 2;
    for i in 1..h - 1 {
        let condition = if i < mid {
            1
        } else if i > mid {
            2
        } else {
            continue;
        };
        for dd in 0..idx.len() {
            if dd == ids[i] {
                continue;
            }
            let larger = if condition == 1 {
                idx.nested(dd, ids[i])
            } else {
                idx.nested(ids[i], dd)
            };
            if larger && idx.nest_s(&[ids[i - 1], dd, ids[i + 1]]) == Some(s) {
                return Ok(Some(MinimalityWitness {
                    index: i,
                    condition,
                    cycle: idx.cycles[dd].vertices.clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;
    use crate::oracle::max_disjoint_paths_bruteforce_edges;

    fn ring(g: &PlaneGraph, r: usize) -> Cycle {
        Cycle::from_vertices(g, &[3 * r, 3 * r + 1, 3 * r + 2]).unwrap()
    }

    #[test]
    fn concentric_annulus() {
        let g = gens::concentric(3);
        let rep = bridge_report(&g, &ring(&g, 0), &ring(&g, 2), &[], OmegaChoice::Auto).unwrap();
        assert_eq!(rep.regions, 3);
        assert_eq!(rep.omega_candidates.len(), 1);
        for b in &rep.bridges {
            let connects = b.attachments.iter().any(|&v| v < 3) && b.attachments.iter().any(|&v| (6..9).contains(&v));
            if connects {
                assert!(b.interior);
            }
        }
        assert_eq!(rep.d2, 0);
        assert_eq!(rep.f1.len(), rep.d1);
        let interior: Vec<_> = rep
            .bridges
            .iter()
            .filter(|b| b.interior)
            .flat_map(|b| b.edges.iter().map(|&e| (e, g.edges()[e][0], g.edges()[e][1])))
            .collect();
        let brute = max_disjoint_paths_bruteforce_edges(g.vertex_count(), &interior, &rep.p2, &rep.p4, PathMode::Edge).unwrap();
        assert_eq!(rep.d1, brute);
        assert_eq!(rep.d1, 6);
    }

    #[test]
    fn bipyramid_sides() {
        let g = gens::bipyramid(6);
        let cs = gens::bipyramid_nest(6);
        let c2 = Cycle::from_vertices(&g, &cs[0]).unwrap();
        let c4 = Cycle::from_vertices(&g, &cs[2]).unwrap();
        let a = bridge_report(&g, &c2, &c4, &[6, 7], OmegaChoice::Candidate(0)).unwrap();
        let b = bridge_report(&g, &c2, &c4, &[6, 7], OmegaChoice::Candidate(1)).unwrap();
        assert_eq!(a.regions, 4);
        assert_eq!(a.omega_candidates.len(), 2);
        // the two faces between the cycles swap interior and exterior
        for (x, y) in a.bridges.iter().zip(&b.bridges) {
            if a.omega_candidates.contains(&x.region) {
                assert_ne!(x.interior, y.interior);
            }
        }
        // every bridge also touches a rim vertex of the cycles
        assert!(a.bridges.iter().all(|b| !b.singular));
        assert_eq!(a.singular_cuts.len(), a.bridges.iter().filter(|b| b.singular).count());
        for sc in &a.singular_cuts {
            assert_eq!(sc.cut.len(), sc.paths);
        }
        assert!(matches!(
            bridge_report(&g, &c2, &c4, &[6, 7], OmegaChoice::Candidate(2)),
            Err(BridgeError::NoSuchOmega { .. })
        ));
        assert!(matches!(
            bridge_report(&g, &c2, &c4, &[6], OmegaChoice::Auto),
            Err(BridgeError::InvalidH(_))
        ));
    }

    #[test]
    fn minimality() {
        let g = gens::one_nest(6);
        let lists = gens::one_nest_cycles(6);
        let nest = |rs: &[usize]| {
            let cs = rs.iter().map(|&r| Cycle::from_vertices(&g, &lists[r]).unwrap()).collect();
            Nest::verified(&g, cs).unwrap()
        };
        assert_eq!(nest_minimality_check(&g, &nest(&[0, 1, 2])).unwrap(), None);
        assert_eq!(nest_minimality_check(&g, &nest(&[3])).unwrap(), None);
        for (rs, index, condition) in [([0, 2, 3, 4, 5], 1, 1), ([0, 1, 2, 3, 5], 3, 2)] {
            let w = nest_minimality_check(&g, &nest(&rs)).unwrap().unwrap();
            assert_eq!((w.index, w.condition), (index, condition));
            let mut seq: Vec<Cycle> = nest(&rs).cycles;
            seq[index] = Cycle::from_vertices(&g, &w.cycle).unwrap();
            assert_eq!(crate::nest::verify_nest(&g, &seq[index - 1..=index + 1]).unwrap().0, 1);
        }
        assert!(nest_minimality_check(&gens::concentric(6), &Nest::default()).unwrap().is_none());
    }
}
