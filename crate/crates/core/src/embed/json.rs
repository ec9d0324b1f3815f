use serde::{Deserialize, Serialize};

use super::{EmbedError, PlaneGraph, VertexId};

/// Wire format for plane graphs.
///
/// `rotation[v]` lists the neighbours of `v` in cyclic order. When the graph
/// has parallel edges, `edge_ids[v][i]` names the edge behind `rotation[v][i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub rotation: Vec<Vec<VertexId>>,
    pub outer_face: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_ids: Option<Vec<Vec<usize>>>,
}

impl GraphJson {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        let rotation = g.adjacency();
        let edge_ids = (!g.is_simple()).then(|| {
            (0..g.vertex_count())
                .map(|v| g.rotation(v).iter().map(|&d| d >> 1).collect())
                .collect()
        });
        GraphJson {
            n: g.vertex_count(),
            rotation,
            outer_face: least_rotation(&g.face_vertices(g.outer_face())),
            edge_ids,
        }
    }

    pub fn to_graph(&self) -> Result<PlaneGraph, EmbedError> {
        if self.rotation.len() != self.n {
            return Err(EmbedError::Malformed(format!(
                "n = {} but {} rotation lists",
                self.n,
                self.rotation.len()
            )));
        }
        match &self.edge_ids {
            Some(ids) => PlaneGraph::from_rotation_with_edge_ids(&self.rotation, ids, &self.outer_face),
            None => PlaneGraph::from_neighbor_rotation(&self.rotation, &self.outer_face),
        }
    }
}

/// The lexicographically smallest rotation of a closed walk, so that a
/// face is always written the same way.
pub fn least_rotation(walk: &[VertexId]) -> Vec<VertexId> {
    (0..walk.len())
        .map(|i| walk[i..].iter().chain(&walk[..i]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl PlaneGraph {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json")
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphParseError> {
        let j: GraphJson = serde_json::from_str(s)?;
        Ok(j.to_graph()?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}
