use std::collections::VecDeque;

use super::{Cycle, EdgeId, EmbedError, PlaneGraph, VertexId};

/// Position of a vertex relative to the closed disk bounded by a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiskSide {
    Inside,
    Outside,
    OnCycle,
}

/// The two sides of a cycle, computed by flooding faces across non-cycle
/// edges. "Inside" is the side that does not contain the outer face.
#[derive(Debug, Clone)]
pub struct Disk {
    inside_face: Vec<bool>,
    side: Vec<DiskSide>,
    on_cycle_edge: Vec<bool>,
}

impl Disk {
    pub fn side(&self, v: VertexId) -> DiskSide {
        self.side[v]
    }

    pub fn sides(&self) -> &[DiskSide] {
        &self.side
    }

    pub fn face_inside(&self, f: usize) -> bool {
        self.inside_face[f]
    }

    pub fn inside_faces(&self) -> &[bool] {
        &self.inside_face
    }

    /// Vertex lies in the closed disk.
    pub fn in_closed(&self, v: VertexId) -> bool {
        self.side[v] != DiskSide::Outside
    }

    /// Vertex lies in the open disk.
    pub fn in_open(&self, v: VertexId) -> bool {
        self.side[v] == DiskSide::Inside
    }

    pub fn is_cycle_edge(&self, e: EdgeId) -> bool {
        self.on_cycle_edge[e]
    }

    /// Edge is drawn in the closed disk.
    pub fn contains_edge(&self, g: &PlaneGraph, e: EdgeId) -> bool {
        self.on_cycle_edge[e] || self.inside_face[g.face_of(2 * e)]
    }

    /// Vertices of the closed disk, increasing.
    pub fn closed_vertices(&self) -> Vec<VertexId> {
        (0..self.side.len()).filter(|&v| self.in_closed(v)).collect()
    }

    pub fn inside_face_count(&self) -> usize {
        self.inside_face.iter().filter(|&&b| b).count()
    }
}

impl PlaneGraph {
    /// Splits the faces of the graph by the cycle `c`.
    pub fn disk(&self, c: &Cycle) -> Result<Disk, EmbedError> {
        let mut on_cycle_edge = vec![false; self.edge_count()];
        for &d in c.darts() {
            if d >= self.dart_count() {
                return Err(EmbedError::NotACycle(format!("dart {d} out of range")));
            }
            on_cycle_edge[d >> 1] = true;
        }
        let nf = self.face_count();
        let mut comp = vec![usize::MAX; nf];
        let mut ncomp = 0;
        for start in 0..nf {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = ncomp;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for &d in &self.faces()[f] {
                    if on_cycle_edge[d >> 1] {
                        continue;
                    }
                    let h = self.face_of(d ^ 1);
                    if comp[h] == usize::MAX {
                        comp[h] = ncomp;
                        queue.push_back(h);
                    }
                }
            }
            ncomp += 1;
        }
        if ncomp != 2 {
            return Err(EmbedError::NotACycle(format!("cycle separates the faces into {ncomp} regions")));
        }
        let outer_comp = comp[self.outer_face()];
        let inside_face: Vec<bool> = comp.iter().map(|&x| x != outer_comp).collect();
        let mut side = vec![DiskSide::Outside; self.vertex_count()];
        for v in 0..self.vertex_count() {
            if c.contains_vertex(v) {
                side[v] = DiskSide::OnCycle;
            } else if let Some(&d) = self.rotation(v).first() {
                if inside_face[self.face_of(d)] {
                    side[v] = DiskSide::Inside;
                }
            }
        }
        Ok(Disk {
            inside_face,
            side,
            on_cycle_edge,
        })
    }

    /// Classifies every vertex against the closed disk bounded by `c`.
    pub fn disk_vertices(&self, c: &Cycle) -> Result<Vec<DiskSide>, EmbedError> {
        Ok(self.disk(c)?.side)
    }

    /// `inner` lies in the closed disk bounded by `outer`.
    pub fn is_nested(&self, outer: &Cycle, inner: &Cycle) -> Result<bool, EmbedError> {
        let a = self.disk(outer)?;
        let b = self.disk(inner)?;
        Ok(is_nested_disks(&a, &b, inner))
    }

    /// `(c_dist, d_dist)`: hop distance along the shorter arc of `c`, and
    /// breadth-first distance in the subgraph drawn in the closed disk of `c`.
    pub fn cycle_metric(&self, c: &Cycle, u: VertexId, v: VertexId) -> Result<(usize, usize), EmbedError> {
        let cd = c.arc_distance(u, v)?;
        let disk = self.disk(c)?;
        let dist = self.bfs_distances(u, |e| disk.contains_edge(self, e));
        Ok((cd, dist[v]))
    }
}

pub(crate) fn is_nested_disks(outer: &Disk, inner: &Disk, inner_cycle: &Cycle) -> bool {
    let faces_ok = inner
        .inside_faces()
        .iter()
        .zip(outer.inside_faces())
        .all(|(&i, &o)| !i || o);
    faces_ok && inner_cycle.vertices().iter().all(|&v| outer.in_closed(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    #[test]
    fn concentric_two_outer_and_inner() {
        let g = gens::concentric(2);
        let outer = Cycle::from_vertices(&g, &[0, 1, 2]).unwrap();
        let sides = g.disk_vertices(&outer).unwrap();
        assert!(sides.iter().all(|&s| s != DiskSide::Outside));
        let inner = Cycle::from_vertices(&g, &[3, 4, 5]).unwrap();
        let sides = g.disk_vertices(&inner).unwrap();
        let on = sides.iter().filter(|&&s| s == DiskSide::OnCycle).count();
        let out = sides.iter().filter(|&&s| s == DiskSide::Outside).count();
        assert_eq!((on, out), (3, 3));
    }

    #[test]
    fn octahedron_face_triangle() {
        let g = gens::bipyramid(4);
        let outer_f = g.outer_face();
        let f = (0..g.face_count()).find(|&f| f != outer_f).unwrap();
        let c = Cycle::from_darts(&g, &g.faces()[f]).unwrap();
        let sides = g.disk_vertices(&c).unwrap();
        assert_eq!(sides.iter().filter(|&&s| s == DiskSide::OnCycle).count(), 3);
        assert_eq!(sides.iter().filter(|&&s| s == DiskSide::Outside).count(), 3);
    }

    #[test]
    fn nesting_in_concentric_three() {
        let g = gens::concentric(3);
        let r: Vec<Cycle> = (0..3)
            .map(|i| Cycle::from_vertices(&g, &[3 * i, 3 * i + 1, 3 * i + 2]).unwrap())
            .collect();
        assert!(g.is_nested(&r[0], &r[0]).unwrap());
        assert!(g.is_nested(&r[0], &r[1]).unwrap());
        assert!(!g.is_nested(&r[2], &r[0]).unwrap());
    }

    #[test]
    fn wheel_antipodal_metric() {
        // hub 6, rim 0..5
        let mut faces: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6, 6]).collect();
        faces.push((0..6).rev().collect());
        let g = PlaneGraph::from_faces(7, &faces, 6).unwrap();
        let rim = Cycle::from_vertices(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(g.cycle_metric(&rim, 0, 3).unwrap(), (3, 2));
        assert_eq!(g.cycle_metric(&rim, 0, 1).unwrap(), (1, 1));
        assert!(matches!(g.cycle_metric(&rim, 0, 6), Err(EmbedError::VertexNotOnCycle(6))));
    }

    #[test]
    fn flipping_outer_face_swaps_sides() {
        let g = gens::concentric(3);
        let c = Cycle::from_vertices(&g, &[3, 4, 5]).unwrap();
        let before = g.disk_vertices(&c).unwrap();
        let disk = g.disk(&c).unwrap();
        let inner_face = (0..g.face_count()).find(|&f| disk.face_inside(f)).unwrap();
        let h = g.with_outer_dart(g.faces()[inner_face][0]);
        let after = h.disk_vertices(&c).unwrap();
        for (a, b) in before.iter().zip(&after) {
            match a {
                DiskSide::OnCycle => assert_eq!(b, &DiskSide::OnCycle),
                DiskSide::Inside => assert_eq!(b, &DiskSide::Outside),
                DiskSide::Outside => assert_eq!(b, &DiskSide::Inside),
            }
        }
    }
}
