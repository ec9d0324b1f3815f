//! 2-nests from nested cycles that pairwise meet in the same set `X`,
//! `|X| ≥ 2`, by cutting each cycle into arcs between consecutive members
//! of `X` and pairing the arcs of one index from the outside in.

use super::{Nest, NestViolation};
use crate::embed::{Cycle, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArcError {
    #[error("need |X| >= 2, got {0}")]
    SmallX(usize),
    #[error("need at least two cycles")]
    TooFewCycles,
    #[error("cycle {0} does not meet the others exactly in X")]
    NotThroughX(usize),
    #[error("X appears in a different cyclic order on cycle {0}")]
    InconsistentOrder(usize),
    #[error("best arc index has {found} arcs with an internal vertex, need {needed}")]
    InsufficientInteriorArcs { found: usize, needed: usize },
    #[error("paired arcs do not form a nest: {0}")]
    Verify(#[from] NestViolation),
}

/// Pairs arcs `Q_j ∪ Q_{2k+1-j}` for `j = 1..k`; see the module docs.
///
/// For `|X| = 2` the two arcs of every cycle are numbered by side: the arc
/// leaving `x_1` first in rotation order, measured from the first cycle's
/// inner side, gets index 1. Numbering each cycle independently can pair an
/// outer arc on one side with an inner arc on the other and break nesting.
pub fn two_nest_from_arcs(g: &PlaneGraph, d_cycles: &[Cycle], x_set: &[VertexId], k: usize) -> Result<Nest, ArcError> {
    let arcs = arc_families(g, d_cycles, x_set)?;
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (i, family) in arcs.iter().enumerate() {
        let with_interior: Vec<usize> = (0..family.len()).filter(|&j| family[j].len() >= 3).collect();
        if best.as_ref().map_or(true, |(_, b)| with_interior.len() > b.len()) {
            best = Some((i, with_interior));
        }
    }
    let (i, js) = best.expect("at least two arc families");
    if js.len() < 2 * k {
        return Err(ArcError::InsufficientInteriorArcs {
            found: js.len(),
            needed: 2 * k,
        });
    }
    let q: Vec<&Vec<VertexId>> = js[..2 * k].iter().map(|&j| &arcs[i][j]).collect();
    let mut cycles = Vec::with_capacity(k);
    for j in 0..k {
        let (a, b) = (q[j], q[2 * k - 1 - j]);
        let mut vs = a.clone();
        vs.extend(b[1..b.len() - 1].iter().rev());
        cycles.push(Cycle::from_vertices(g, &vs).map_err(NestViolation::BadCycle)?);
    }
    Ok(Nest::verified(g, cycles)?)
}

/// `arcs[i][j]`: the path of cycle `j` from `x_i` to `x_{i+1}` (indices mod
/// `|X|`) avoiding the rest of `X`.
pub(crate) fn arc_families(
    g: &PlaneGraph,
    d_cycles: &[Cycle],
    x_set: &[VertexId],
) -> Result<Vec<Vec<Vec<VertexId>>>, ArcError> {
    let t = x_set.len();
    if t < 2 {
        return Err(ArcError::SmallX(t));
    }
    if d_cycles.len() < 2 {
        return Err(ArcError::TooFewCycles);
    }
    for (j, c) in d_cycles.iter().enumerate() {
        if !x_set.iter().all(|&x| c.contains_vertex(x)) {
            return Err(ArcError::NotThroughX(j));
        }
    }
    // x_1..x_t in the order met along the first cycle
    let first = &d_cycles[0];
    let mut order: Vec<VertexId> = first.vertices().iter().copied().filter(|v| x_set.contains(v)).collect();
    let oriented: Vec<Vec<VertexId>> = if t == 2 {
        order = vec![order[0], order[1]];
        orient_by_side(g, d_cycles, order[0])?
    } else {
        d_cycles
            .iter()
            .enumerate()
            .map(|(j, c)| orient_like(c, &order).ok_or(ArcError::InconsistentOrder(j)))
            .collect::<Result<_, _>>()?
    };
    let mut arcs = vec![Vec::with_capacity(d_cycles.len()); t];
    for walk in &oriented {
        // walk starts at order[0] and meets X in the order of `order`
        let m = walk.len();
        let mut pos: Vec<usize> = order.iter().map(|x| walk.iter().position(|v| v == x).unwrap()).collect();
        pos.push(m);
        for i in 0..t {
            let mut path: Vec<VertexId> = walk[pos[i]..pos[i + 1]].to_vec();
            path.push(walk[pos[i + 1] % m]);
            arcs[i].push(path);
        }
    }
    Ok(arcs)
}

/// The cycle's vertices starting at `order[0]`, in the direction that meets
/// `order` in sequence.
fn orient_like(c: &Cycle, order: &[VertexId]) -> Option<Vec<VertexId>> {
    let m = c.len();
    let s = c.position(order[0])?;
    let fwd: Vec<VertexId> = (0..m).map(|i| c.vertices()[(s + i) % m]).collect();
    let bwd: Vec<VertexId> = (0..m).map(|i| c.vertices()[(s + m - i) % m]).collect();
    [fwd, bwd]
        .into_iter()
        .find(|w| w.iter().filter(|v| order.contains(v)).copied().eq(order.iter().copied()))
}

/// For `|X| = 2`: every cycle's walk from `x1`, starting along the arc that
/// comes first in the rotation at `x1` scanned from the first cycle's inner
/// side. The first cycle's own first arc is its outer arc on that side.
fn orient_by_side(g: &PlaneGraph, d_cycles: &[Cycle], x1: VertexId) -> Result<Vec<Vec<VertexId>>, ArcError> {
    let rot = g.rotation(x1);
    let deg = rot.len();
    let darts_at = |c: &Cycle| -> (usize, usize) {
        let p = c.position(x1).unwrap();
        let m = c.len();
        // leaving darts along both directions of the walk
        let out_fwd = c.darts()[p];
        let out_bwd = c.darts()[(p + m - 1) % m] ^ 1;
        (g.rotation_position(out_fwd), g.rotation_position(out_bwd))
    };
    let (p, q) = darts_at(&d_cycles[0]);
    let (a2, _) = darts_at(&d_cycles[1]);
    let between = |from: usize, to: usize, x: usize| (x + deg - from) % deg < (to + deg - from) % deg;
    // scan start: the first cycle's dart whose forward interval holds the
    // second cycle
    let start = if between(p, q, a2) { p } else { q };
    let mut out = Vec::with_capacity(d_cycles.len());
    for (j, c) in d_cycles.iter().enumerate() {
        let (f, b) = darts_at(c);
        let off = |x: usize| (x + deg - start) % deg;
        let m = c.len();
        let s = c.position(x1).unwrap();
        let fwd: Vec<VertexId> = (0..m).map(|i| c.vertices()[(s + i) % m]).collect();
        let bwd: Vec<VertexId> = (0..m).map(|i| c.vertices()[(s + m - i) % m]).collect();
        if j > 0 && (off(f) == 0 || off(b) == 0) {
            return Err(ArcError::InconsistentOrder(j));
        }
        out.push(if off(f) <= off(b) { fwd } else { bwd });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    fn cycles(g: &PlaneGraph, lists: &[Vec<VertexId>]) -> Vec<Cycle> {
        lists.iter().map(|l| Cycle::from_vertices(g, l).unwrap()).collect()
    }

    #[test]
    fn bipyramid_pairs_into_a_two_nest() {
        for k in 1..=3 {
            let n = 4 * k;
            let g = gens::bipyramid(n);
            let d = cycles(&g, &gens::bipyramid_nest(n));
            let nest = two_nest_from_arcs(&g, &d, &[n, n + 1], k).unwrap();
            assert_eq!(nest.size(), k);
            if k > 1 {
                assert_eq!(nest.x_set, vec![n, n + 1]);
            }
        }
    }

    #[test]
    fn arcs_numbered_independently_can_break_nesting() {
        // the outer arc on one side paired with an inner arc on the other
        let g = gens::bipyramid(8);
        let d = cycles(&g, &gens::bipyramid_nest(8));
        let arcs = arc_families(&g, &d, &[8, 9]).unwrap();
        let mut vs = arcs[0][0].clone();
        let other = &arcs[1][3];
        vs.extend(other[1..other.len() - 1].iter());
        let outer = Cycle::from_vertices(&g, &vs).unwrap();
        let mut ws = arcs[1][1].clone();
        let other = &arcs[0][2];
        ws.extend(other[1..other.len() - 1].iter());
        let inner = Cycle::from_vertices(&g, &ws).unwrap();
        assert!(Nest::verified(&g, vec![outer, inner]).is_err());
    }

    /// `0` and `1` joined by an edge (leftmost) and by paths through
    /// `2..=6`, left to right.
    fn theta() -> PlaneGraph {
        let mut faces = vec![vec![0, 2, 1]];
        for a in 2..6 {
            faces.push(vec![0, a + 1, 1, a]);
        }
        faces.push(vec![0, 1, 6]);
        PlaneGraph::from_faces(7, &faces, 5).unwrap()
    }

    #[test]
    fn arc_family_with_a_single_edge_is_skipped() {
        let g = theta();
        let d = cycles(&g, &[vec![0, 1, 6], vec![0, 2, 1, 5], vec![0, 3, 1, 4]]);
        crate::nest::verify_nest(&g, &d).unwrap();
        let arcs = arc_families(&g, &d, &[0, 1]).unwrap();
        let interior = |i: usize| arcs[i].iter().filter(|p| p.len() >= 3).count();
        assert_eq!({ let mut c = [interior(0), interior(1)]; c.sort(); c }, [2, 3]);
        let nest = two_nest_from_arcs(&g, &d, &[0, 1], 1).unwrap();
        assert!(!nest.cycles[0].edge_ids().contains(&(g.dart_between(0, 1).unwrap() >> 1)));
    }

    #[test]
    fn precondition_errors() {
        let g = gens::bipyramid(6);
        let d = cycles(&g, &gens::bipyramid_nest(6));
        assert!(matches!(two_nest_from_arcs(&g, &d, &[6], 1), Err(ArcError::SmallX(1))));
        assert!(matches!(
            two_nest_from_arcs(&g, &d, &[6, 7], 2),
            Err(ArcError::InsufficientInteriorArcs { found: 3, needed: 4 })
        ));
    }
}
