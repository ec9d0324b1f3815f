//! Plane-graph toolkit for finding nests of cycles, standard tree
//! decompositions and cleaned planarized drawings.
pub mod decomp;
pub mod drawplan;
pub mod embed;
pub mod gens;
pub mod nest;
pub mod oracle;

pub use decomp::{refine, DecompOutcome, StandardTreeDecomposition, Violation};
pub use embed::{Cycle, Dart, Disk, DiskSide, EdgeId, EmbedError, GraphJson, PlaneGraph, VertexId};
pub use nest::{find_nest, parameter_budget, verify_nest, Budget, Nest, NestViolation};
