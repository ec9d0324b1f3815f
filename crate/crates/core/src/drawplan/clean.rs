use serde::{Deserialize, Serialize};

use super::{fill_faces, planarize, DrawError, Drawing, Planarization};
use crate::embed::{Cycle, Disk, PlaneGraph};
use crate::nest::{find_nest_with, nest_target, verify_nest, FindOptions, Nest};

/// A nest in a drawing, as cycles of the planarization that avoid every
/// crossing and apex vertex (so their edges are uncrossed base edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawingNest {
    pub nest: Nest,
    pub target: usize,
    /// Size asked of the triangulated planarization.
    pub searched: usize,
    /// Size found there, before dropping cycles through dummy vertices.
    pub found: usize,
    pub dropped: usize,
    pub guaranteed: bool,
}

/// Planarize, fill faces, look for a nest of size `t' = k + 2ℓ + r − 6`
/// (at least `k`), and keep the cycles made of base vertices only.
pub fn nest_in_drawing(d: &Drawing, k: usize, r: usize) -> Result<DrawingNest, DrawError> {
    let p = planarize(d)?;
    let filled = fill_faces(&p);
    if !filled.graph.is_triangulation() {
        return Err(DrawError::NotTriangulable);
    }
    let searched = nest_target(k as u64, p.crossing_count() as u64, r as u64) as usize;
    let found = find_nest_with(&filled.graph, searched, &FindOptions::default())?;
    let total = found.nest.size();
    let kept: Vec<Cycle> = found
        .nest
        .cycles
        .iter()
        .filter(|c| c.vertices().iter().all(|&v| !filled.is_dummy(v)))
        .map(|c| Cycle::from_vertices(&p.graph, c.vertices()))
        .collect::<Result<_, _>>()?;
    let dropped = total - kept.len();
    let nest = if kept.is_empty() {
        Nest::default()
    } else {
        let (_, x_set) = verify_nest(&p.graph, &kept).map_err(|e| DrawError::InconsistentLedger(e.to_string()))?;
        Nest { cycles: kept, x_set }
    };
    Ok(DrawingNest {
        guaranteed: nest.size() >= k,
        nest,
        target: k,
        searched,
        found: total,
        dropped,
    })
}

fn disks(g: &PlaneGraph, nest: &Nest) -> Vec<Disk> {
    nest.cycles.iter().map(|c| g.disk(c).expect("nest cycle")).collect()
}

/// Crossings (by index) inside annulus `i`: the closed disk of cycle `i`
/// minus the open disk of cycle `i + 1`, both 0-based.
pub fn crossings_in_annulus(p: &Planarization, nest: &Nest, i: usize) -> Vec<usize> {
    assert!(i + 1 < nest.size(), "annulus {i} of a nest of size {}", nest.size());
    let outer = p.graph.disk(&nest.cycles[i]).expect("nest cycle");
    let inner = p.graph.disk(&nest.cycles[i + 1]).expect("nest cycle");
    p.v4.iter()
        .enumerate()
        .filter(|&(_, &c)| outer.in_closed(c) && !inner.in_open(c))
        .map(|(j, _)| j)
        .collect()
}

/// First `j` such that annuli `j..j + t − 1` hold no crossing.
pub fn clean_window(p: &Planarization, nest: &Nest, t: usize) -> Option<usize> {
    let h = nest.size();
    if t == 0 || t > h {
        return None;
    }
    let ds = disks(&p.graph, nest);
    let busy: Vec<bool> = (0..h.saturating_sub(1))
        .map(|i| p.v4.iter().any(|&c| ds[i].in_closed(c) && !ds[i + 1].in_open(c)))
        .collect();
    (0..=h - t).find(|&j| busy[j..j + t - 1].iter().all(|b| !b))
}

/// Every crossing lies in the innermost open disk or outside the
/// outermost closed disk.
pub fn is_clean(p: &Planarization, nest: &Nest) -> bool {
    if nest.size() == 0 {
        return true;
    }
    let ds = disks(&p.graph, nest);
    let (outer, inner) = (&ds[0], &ds[ds.len() - 1]);
    p.v4.iter().all(|&c| inner.in_open(c) || !outer.in_closed(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum CleanError {
    #[error("nest has {size} cycles, need (k+1)(t-1)+1 = {needed}")]
    PreconditionNestTooSmall { size: usize, needed: usize },
    #[error("drawing has {found} crossings, more than k = {k}")]
    TooManyCrossings { found: usize, k: usize },
    #[error("no clean window of {t} cycles")]
    NoWindow { t: usize },
}

/// `t` consecutive cycles with crossing-free annuli between them. Needs a
/// nest of size `(k+1)(t−1)+1` and at most `k` crossings.
pub fn clean_subnest(p: &Planarization, nest: &Nest, k: usize, t: usize) -> Result<Nest, CleanError> {
    let needed = crate::nest::clean_input_size(k as u64, t as u64) as usize;
    if nest.size() < needed {
        return Err(CleanError::PreconditionNestTooSmall {
            size: nest.size(),
            needed,
        });
    }
    if p.crossing_count() > k {
        return Err(CleanError::TooManyCrossings {
            found: p.crossing_count(),
            k,
        });
    }
    let j = clean_window(p, nest, t).ok_or(CleanError::NoWindow { t })?;
    Ok(Nest {
        cycles: nest.cycles[j..j + t].to_vec(),
        x_set: nest.x_set.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::DrawingBuilder;
    use super::*;
    use crate::gens;

    fn rings(g: &PlaneGraph, m: usize) -> Nest {
        let cs = (0..m)
            .map(|r| Cycle::from_vertices(g, &[3 * r, 3 * r + 1, 3 * r + 2]).unwrap())
            .collect();
        Nest::verified(g, cs).unwrap()
    }

    /// Crosses one zigzag edge between rings `i` and `i + 1`.
    fn cross_annulus(b: &mut DrawingBuilder, i: usize) -> bool {
        let ring = |v: usize| v / 3;
        for ((x, y), _) in b.pieces() {
            if x < 3 * (i + 2) && y < 3 * (i + 2) && ring(x.min(y)) == i && ring(x.max(y)) == i + 1 && b.cross(x, y).is_some() {
                return true;
            }
        }
        false
    }

    #[test]
    fn annulus_bookkeeping() {
        let g = gens::concentric(6);
        let p0 = planarize(&Drawing::from_plane_graph(&g)).unwrap();
        let nest = rings(&p0.graph, 6);
        for i in 0..5 {
            assert!(crossings_in_annulus(&p0, &nest, i).is_empty());
        }
        let mut b = DrawingBuilder::new(&g);
        assert!(cross_annulus(&mut b, 0));
        let p = planarize(&b.build()).unwrap();
        let nest = rings(&p.graph, 6);
        assert_eq!(crossings_in_annulus(&p, &nest, 0), vec![0]);
        for i in 1..5 {
            assert!(crossings_in_annulus(&p, &nest, i).is_empty());
        }
        // a crossing beyond the innermost ring of a shorter nest
        let mut b = DrawingBuilder::new(&g);
        assert!(cross_annulus(&mut b, 4));
        let p = planarize(&b.build()).unwrap();
        let short = rings(&p.graph, 4);
        for i in 0..3 {
            assert!(crossings_in_annulus(&p, &short, i).is_empty());
        }
        assert!(is_clean(&p, &short));
    }

    #[test]
    fn clean_examples() {
        let g = gens::concentric(3);
        let mut b = DrawingBuilder::new(&g);
        assert!(cross_annulus(&mut b, 0));
        let p = planarize(&b.build()).unwrap();
        let nest = rings(&p.graph, 3);
        let sub = clean_subnest(&p, &nest, 1, 2).unwrap();
        assert_eq!(sub.cycles, nest.cycles[1..3].to_vec());
        assert!(is_clean(&p, &sub));

        let p0 = planarize(&Drawing::from_plane_graph(&g)).unwrap();
        let sub = clean_subnest(&p0, &rings(&p0.graph, 3), 0, 3).unwrap();
        assert_eq!(sub.size(), 3);

        let g = gens::concentric(7);
        let mut b = DrawingBuilder::new(&g);
        assert!(cross_annulus(&mut b, 1) && cross_annulus(&mut b, 4));
        let p = planarize(&b.build()).unwrap();
        let nest = rings(&p.graph, 7);
        let sub = clean_subnest(&p, &nest, 2, 3).unwrap();
        assert_eq!(sub.cycles, nest.cycles[2..5].to_vec());

        assert!(matches!(
            clean_subnest(&p, &rings(&p.graph, 6), 2, 3),
            Err(CleanError::PreconditionNestTooSmall { size: 6, needed: 7 })
        ));
    }

    #[test]
    fn crossing_free_concentric_nest() {
        let g = gens::concentric(5);
        let dn = nest_in_drawing(&Drawing::from_plane_graph(&g), 3, 0).unwrap();
        assert!(dn.guaranteed && dn.nest.size() >= 3 && dn.nest.s() == 0);
    }

    #[test]
    fn crossing_near_the_centre_is_avoided() {
        let g = gens::concentric(6);
        let mut b = DrawingBuilder::new(&g);
        assert!(cross_annulus(&mut b, 4));
        let d = b.build();
        let dn = nest_in_drawing(&d, 4, 0).unwrap();
        assert!(dn.nest.size() >= 4, "{dn:?}");
        let p = planarize(&d).unwrap();
        for c in &dn.nest.cycles {
            assert!(c.vertices().iter().all(|&v| !p.is_dummy(v)));
        }
    }
}
