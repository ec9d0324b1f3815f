//! Fixtures shared by the benchmarks.

use nestkit::gens;
use nestkit::PlaneGraph;

/// Named triangulations of a few hundred vertices.
pub fn fixtures() -> Vec<(&'static str, PlaneGraph)> {
    vec![
        ("concentric_40", gens::concentric(40)),
        ("grid_20x20", gens::grid_triangulation(20, 20)),
        ("random_500", gens::random_triangulation(500, 7)),
        ("apollonian_5", gens::apollonian(5, 3)),
    ]
}
