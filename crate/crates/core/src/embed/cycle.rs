use super::{Dart, EdgeId, EmbedError, PlaneGraph, VertexId};

/// A simple cycle of a plane graph, stored as a closed dart walk.
///
/// Cycles are kept in canonical form: the walk starts at its smallest vertex
/// and, for length at least three, runs towards the smaller of that vertex's
/// two cycle neighbours. Two cycles with the same edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    darts: Vec<Dart>,
    vertices: Vec<VertexId>,
    sorted: Vec<VertexId>,
}

impl Cycle {
    pub fn from_darts(g: &PlaneGraph, darts: &[Dart]) -> Result<Self, EmbedError> {
        if darts.is_empty() {
            return Err(EmbedError::NotACycle("empty walk".into()));
        }
        for &d in darts {
            if d >= g.dart_count() {
                return Err(EmbedError::NotACycle(format!("dart {d} out of range")));
            }
        }
        let m = darts.len();
        for i in 0..m {
            if g.head(darts[i]) != g.origin(darts[(i + 1) % m]) {
                return Err(EmbedError::NotACycle(format!("darts {} and {} do not meet", darts[i], darts[(i + 1) % m])));
            }
        }
        let vertices: Vec<VertexId> = darts.iter().map(|&d| g.origin(d)).collect();
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(EmbedError::CycleIsNotSimple(w[0]));
        }
        if m == 1 && g.head(darts[0]) == g.origin(darts[0]) {
            // loop
        } else if m == 1 {
            return Err(EmbedError::NotACycle("single non-loop dart".into()));
        }
        if m == 2 && darts[0] >> 1 == darts[1] >> 1 {
            return Err(EmbedError::NotACycle("walk reuses an edge".into()));
        }
        Ok(Self::canonical(darts.to_vec(), vertices, sorted))
    }

    /// Cycle through the given vertices in order, using the smallest dart
    /// between consecutive vertices. Intended for simple graphs.
    pub fn from_vertices(g: &PlaneGraph, vertices: &[VertexId]) -> Result<Self, EmbedError> {
        let m = vertices.len();
        if m < 3 {
            return Err(EmbedError::NotACycle(format!("{m} vertices")));
        }
        let mut darts = Vec::with_capacity(m);
        for i in 0..m {
            let (u, v) = (vertices[i], vertices[(i + 1) % m]);
            if u >= g.vertex_count() || v >= g.vertex_count() {
                return Err(EmbedError::NotACycle(format!("vertex out of range in ({u}, {v})")));
            }
            let d = g
                .dart_between(u, v)
                .ok_or_else(|| EmbedError::NotACycle(format!("no edge {u}-{v}")))?;
            darts.push(d);
        }
        Self::from_darts(g, &darts)
    }

    fn canonical(mut darts: Vec<Dart>, mut vertices: Vec<VertexId>, sorted: Vec<VertexId>) -> Self {
        let m = darts.len();
        if m >= 3 {
            let start = (0..m).min_by_key(|&i| vertices[i]).unwrap();
            let reverse = vertices[(start + m - 1) % m] < vertices[(start + 1) % m];
            if reverse {
                // walk backwards: vertex order v_s, v_{s-1}, ... using reversed darts
                let mut nd = Vec::with_capacity(m);
                let mut nv = Vec::with_capacity(m);
                for i in 0..m {
                    let vi = (start + m - i) % m;
                    nv.push(vertices[vi]);
                    nd.push(darts[(vi + m - 1) % m] ^ 1);
                }
                darts = nd;
                vertices = nv;
            } else {
                darts.rotate_left(start);
                vertices.rotate_left(start);
            }
        } else if m == 2 {
            let start = if darts[0] ^ 1 < darts[1] ^ 1 { 0 } else { 1 };
            darts.rotate_left(start);
            vertices.rotate_left(start);
        }
        Cycle { darts, vertices, sorted }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Vertices in walk order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Vertices in increasing id order.
    pub fn vertex_set(&self) -> &[VertexId] {
        &self.sorted
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.sorted.binary_search(&v).is_ok()
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut e: Vec<EdgeId> = self.darts.iter().map(|&d| d >> 1).collect();
        e.sort_unstable();
        e
    }

    pub fn shares_edge_with(&self, other: &Cycle) -> bool {
        let a = self.edge_ids();
        let b = other.edge_ids();
        let found = sorted_intersect(&a, &b).next().is_some();
        found
    }

    /// Sorted `V(self) ∩ V(other)`.
    pub fn common_vertices(&self, other: &Cycle) -> Vec<VertexId> {
        sorted_intersect(&self.sorted, &other.sorted).collect()
    }

    /// Position of `v` along the walk.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// Number of edges on the shorter arc between two cycle vertices.
    pub fn arc_distance(&self, u: VertexId, v: VertexId) -> Result<usize, EmbedError> {
        let i = self.position(u).ok_or(EmbedError::VertexNotOnCycle(u))?;
        let j = self.position(v).ok_or(EmbedError::VertexNotOnCycle(v))?;
        let m = self.len();
        let a = (i + m - j) % m;
        Ok(a.min(m - a))
    }
}

pub(crate) fn sorted_intersect<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let mut i = 0;
    let mut j = 0;
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let x = a[i];
                    i += 1;
                    j += 1;
                    return Some(x);
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::tests::k4;

    #[test]
    fn canonical_form_ignores_start_and_direction() {
        let g = k4();
        let a = Cycle::from_vertices(&g, &[1, 3, 2]).unwrap();
        let b = Cycle::from_vertices(&g, &[2, 1, 3]).unwrap();
        let c = Cycle::from_vertices(&g, &[3, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.vertices(), &[1, 2, 3]);
    }

    #[test]
    fn rejects_non_cycles() {
        let g = k4();
        assert!(Cycle::from_vertices(&g, &[0, 1]).is_err());
        assert!(matches!(
            Cycle::from_vertices(&g, &[0, 1, 0, 2]),
            Err(EmbedError::CycleIsNotSimple(0))
        ));
    }

    #[test]
    fn arc_distance_on_four_cycle() {
        let g = k4();
        let c = Cycle::from_vertices(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.arc_distance(0, 2).unwrap(), 2);
        assert_eq!(c.arc_distance(1, 0).unwrap(), 1);
    }
}
