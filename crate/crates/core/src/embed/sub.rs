use super::{Dart, EdgeId, EmbedError, PlaneGraph, VertexId};

/// A subgraph with the inherited embedding and maps back to the host ids.
#[derive(Debug, Clone)]
pub struct SubGraph {
    pub graph: PlaneGraph,
    /// New vertex id → host vertex id.
    pub vertex_map: Vec<VertexId>,
    /// New edge id → host edge id; dart `2e + b` maps to host dart
    /// `2 edge_map[e] + b`.
    pub edge_map: Vec<EdgeId>,
}

impl SubGraph {
    pub fn host_dart(&self, d: Dart) -> Dart {
        2 * self.edge_map[d >> 1] + (d & 1)
    }

    pub fn host_vertices(&self, vs: &[VertexId]) -> Vec<VertexId> {
        vs.iter().map(|&v| self.vertex_map[v]).collect()
    }
}

impl PlaneGraph {
    /// The subgraph formed by the edges with `keep(e)` and their ends, with
    /// rotations restricted from the host. `outer` is a kept host dart whose
    /// face in the subgraph becomes the outer face. Fails if the kept edges
    /// do not form a connected graph.
    pub fn edge_subgraph(&self, keep: impl Fn(EdgeId) -> bool, outer: Dart) -> Result<SubGraph, EmbedError> {
        let edge_map: Vec<EdgeId> = (0..self.edge_count()).filter(|&e| keep(e)).collect();
        if edge_map.is_empty() || !keep(outer >> 1) {
            return Err(EmbedError::Malformed("outer dart is not kept".into()));
        }
        let mut new_edge = vec![usize::MAX; self.edge_count()];
        for (i, &e) in edge_map.iter().enumerate() {
            new_edge[e] = i;
        }
        let mut new_vertex = vec![usize::MAX; self.vertex_count()];
        let mut vertex_map = Vec::new();
        for v in 0..self.vertex_count() {
            if self.rotation(v).iter().any(|&d| new_edge[d >> 1] != usize::MAX) {
                new_vertex[v] = vertex_map.len();
                vertex_map.push(v);
            }
        }
        let edges: Vec<[VertexId; 2]> = edge_map
            .iter()
            .map(|&e| {
                let [u, v] = self.edges()[e];
                [new_vertex[u], new_vertex[v]]
            })
            .collect();
        let rotation: Vec<Vec<Dart>> = vertex_map
            .iter()
            .map(|&v| {
                self.rotation(v)
                    .iter()
                    .filter(|&&d| new_edge[d >> 1] != usize::MAX)
                    .map(|&d| 2 * new_edge[d >> 1] + (d & 1))
                    .collect()
            })
            .collect();
        let outer_new = 2 * new_edge[outer >> 1] + (outer & 1);
        let graph = PlaneGraph::from_darts(vertex_map.len(), edges, rotation, outer_new)?;
        Ok(SubGraph {
            graph,
            vertex_map,
            edge_map,
        })
    }
}
