use serde::{Deserialize, Serialize};

use super::arcs::arc_families;
use super::peel::peel_from_outer;
use super::{root_path_rings_to, two_nest_from_arcs, verify_nest, Nest};
use crate::decomp::{initial_decomposition, refine, DecompOutcome, RefineError, StandardTreeDecomposition};
use crate::embed::{Cycle, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindOptions {
    /// Only accept nests with this many shared vertices.
    pub s: Option<usize>,
    /// Keep searching after a nest of size `k` is found.
    pub exhaustive: bool,
    /// Also peel from the outer face with `|X| = 1` through every vertex
    /// when the graph has at most this many vertices (otherwise only
    /// through outer-face vertices).
    pub single_x_limit: usize,
    /// Peel with `|X| = 2` through every vertex pair up to this size.
    pub pair_x_limit: usize,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions {
            s: None,
            exhaustive: false,
            single_x_limit: 200,
            pair_x_limit: 40,
        }
    }
}

/// Where a nest came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NestSource {
    /// The 0-nest branch of decomposition refinement.
    Refinement,
    /// A constant-intersection subsequence of root-path rings.
    RingChain,
    /// Arc pairing on a constant-intersection subsequence.
    ArcPairing,
    /// Successive outer boundaries from the outer face.
    Peeling,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundNest {
    pub nest: Nest,
    /// The verified nest has at least `k` cycles.
    pub guaranteed: bool,
    pub source: NestSource,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FindError {
    #[error("graph is not a triangulation")]
    NotATriangulation,
    #[error("decomposition failed: {0}")]
    Refine(#[from] RefineError),
    #[error("no nest with s = {0} found")]
    NoNest(usize),
}

pub fn find_nest(g: &PlaneGraph, k: usize) -> Result<FoundNest, FindError> {
    find_nest_with(g, k, &FindOptions::default())
}

/// Runs refinement, ring-chain extraction and peeling, and returns the
/// largest verified nest (smaller `s` on ties). Stops at the first nest of
/// size `k` unless `exhaustive`.
pub fn find_nest_with(g: &PlaneGraph, k: usize, opts: &FindOptions) -> Result<FoundNest, FindError> {
    if !g.is_triangulation() {
        return Err(FindError::NotATriangulation);
    }
    let k = k.max(1);
    let mut search = Search {
        g,
        k,
        opts,
        best: None,
    };
    search.run()?;
    match search.best {
        Some((nest, source)) => Ok(FoundNest {
            guaranteed: nest.size() >= k,
            nest,
            source,
        }),
        None => Err(FindError::NoNest(opts.s.unwrap_or(0))),
    }
}

struct Search<'a> {
    g: &'a PlaneGraph,
    k: usize,
    opts: &'a FindOptions,
    best: Option<(Nest, NestSource)>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        !self.opts.exhaustive && self.best.as_ref().is_some_and(|(n, _)| n.size() >= self.k)
    }

    /// `x_hint` is the intended `X`; a single cycle carries no pairwise
    /// constraint, so it is a nest for any `X` on it.
    fn offer(&mut self, cycles: Vec<Cycle>, x_hint: &[VertexId], source: NestSource) {
        if cycles.is_empty() {
            return;
        }
        let Ok((mut s, mut x_set)) = verify_nest(self.g, &cycles) else {
            return;
        };
        if cycles.len() == 1 {
            if let Some(want) = self.opts.s {
                let c = &cycles[0];
                let mut x: Vec<VertexId> = x_hint.iter().copied().filter(|&v| c.contains_vertex(v)).collect();
                x.extend(c.vertex_set().iter().copied().filter(|v| !x_hint.contains(v)));
                x.truncate(want);
                x.sort_unstable();
                if x.len() == want {
                    (s, x_set) = (want, x);
                }
            }
        }
        if self.opts.s.is_some_and(|want| want != s) {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((b, _)) => cycles.len() > b.size() || (cycles.len() == b.size() && s < b.s()),
        };
        if better {
            self.best = Some((Nest { cycles, x_set }, source));
        }
    }

    fn run(&mut self) -> Result<(), FindError> {
        let g = self.g;
        let n = g.vertex_count();
        let decomposition = if 12 * self.k < n {
            match refine(g, self.k)? {
                DecompOutcome::ZeroNest(nest) => {
                    self.offer(nest.cycles, &[], NestSource::Refinement);
                    None
                }
                DecompOutcome::Decomposition(d) => Some(d),
            }
        } else {
            Some(initial_decomposition(g).map_err(|_| FindError::NotATriangulation)?)
        };
        if let Some(d) = decomposition {
            self.from_decomposition(&d);
        }
        if self.done() {
            return Ok(());
        }
        self.peel(&[]);
        let singles: Vec<VertexId> = if n <= self.opts.single_x_limit {
            (0..n).collect()
        } else {
            g.face_vertices(g.outer_face())
        };
        for x in singles {
            if self.done() {
                return Ok(());
            }
            self.peel(&[x]);
        }
        if n <= self.opts.pair_x_limit {
            for x in 0..n {
                for y in x + 1..n {
                    if self.done() {
                        return Ok(());
                    }
                    self.peel(&[x, y]);
                }
            }
        }
        Ok(())
    }

    fn peel(&mut self, x: &[VertexId]) {
        if self.opts.s.is_some_and(|s| s != x.len()) {
            return;
        }
        let chain = peel_from_outer(self.g, x, usize::MAX);
        self.offer(chain, x, NestSource::Peeling);
    }

    /// Every maximal root path, every realised intersection set.
    fn from_decomposition(&mut self, d: &StandardTreeDecomposition) {
        for leaf in d.leaves() {
            if self.done() {
                return;
            }
            let Ok(chain) = root_path_rings_to(self.g, d, leaf) else {
                continue;
            };
            if chain.len() == 1 {
                self.offer(chain.rings.clone(), &[], NestSource::RingChain);
                continue;
            }
            for (x, seq) in chain.best_per_intersection() {
                let cycles: Vec<Cycle> = seq.iter().map(|&i| chain.rings[i].clone()).collect();
                if x.len() >= 2 && seq.len() >= 2 && self.opts.s.map_or(true, |s| s == 2) {
                    self.pair_arcs(&cycles, &x);
                }
                self.offer(cycles, &x, NestSource::RingChain);
            }
        }
    }

    fn pair_arcs(&mut self, cycles: &[Cycle], x: &[VertexId]) {
        let Ok(arcs) = arc_families(self.g, cycles, x) else {
            return;
        };
        let most = arcs
            .iter()
            .map(|f| f.iter().filter(|p| p.len() >= 3).count())
            .max()
            .unwrap_or(0);
        if most / 2 >= 1 {
            if let Ok(nest) = two_nest_from_arcs(self.g, cycles, x, most / 2) {
                self.offer(nest.cycles, x, NestSource::ArcPairing);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    #[test]
    fn generator_guarantees() {
        for m in 1..=10 {
            let f = find_nest(&gens::concentric(m), m).unwrap();
            assert!(f.guaranteed && f.nest.size() >= m && f.nest.s() == 0, "concentric({m})");
        }
        for m in 1..=8 {
            let opts = FindOptions {
                s: Some(1),
                ..Default::default()
            };
            let f = find_nest_with(&gens::one_nest(m), m, &opts).unwrap();
            assert!(f.guaranteed && f.nest.s() == 1, "one_nest({m})");
        }
        for k in 1..=3 {
            let opts = FindOptions {
                s: Some(2),
                ..Default::default()
            };
            let f = find_nest_with(&gens::bipyramid(4 * k + 2), k, &opts).unwrap();
            assert!(f.guaranteed && f.nest.s() == 2, "bipyramid({})", 4 * k + 2);
        }
    }

    #[test]
    fn random_triangulations_yield_verified_nests() {
        for seed in 0..5 {
            let g = gens::random_triangulation(120, seed);
            let f = find_nest(&g, 2).unwrap();
            verify_nest(&g, &f.nest.cycles).unwrap();
        }
    }
}
