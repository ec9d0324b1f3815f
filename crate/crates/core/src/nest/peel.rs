//! Successive outer boundaries inside a disk.
//!
//! One step takes a cycle `C` and a set `X ⊆ V(C)`, deletes the vertices of
//! `C` outside `X` together with the edges of `C`, and returns a cycle on
//! the outer boundary of what remains inside the disk of `C`. The result
//! lies in the closed disk of `C`, shares no edge with it and meets it
//! exactly in `X`, so repeated steps produce a nest.

use crate::embed::{Cycle, Dart, PlaneGraph, VertexId};

/// `start` followed by repeated peeling steps, at most `max_len` cycles.
pub fn peel_chain(g: &PlaneGraph, start: &Cycle, x: &[VertexId], max_len: usize) -> Vec<Cycle> {
    let mut chain = vec![start.clone()];
    while chain.len() < max_len {
        match peel_step(g, chain.last().unwrap(), x) {
            Some(c) => chain.push(c),
            None => break,
        }
    }
    chain
}

/// Peeling from the outer face: the outer face cycle itself if it contains
/// `x`, otherwise a first step that deletes only the outer face's edges,
/// then further steps.
pub(crate) fn peel_from_outer(g: &PlaneGraph, x: &[VertexId], max_len: usize) -> Vec<Cycle> {
    let Ok(outer) = Cycle::from_darts(g, &g.faces()[g.outer_face()]) else {
        return Vec::new();
    };
    if x.iter().all(|&v| outer.contains_vertex(v)) {
        return peel_chain(g, &outer, x, max_len);
    }
    match boundary_step(g, &outer, x, true) {
        Some(first) => peel_chain(g, &first, x, max_len),
        None => Vec::new(),
    }
}

/// One peeling step; `None` when no cycle through `x` remains.
pub(crate) fn peel_step(g: &PlaneGraph, c: &Cycle, x: &[VertexId]) -> Option<Cycle> {
    if !x.iter().all(|&v| c.contains_vertex(v)) {
        return None;
    }
    boundary_step(g, c, x, false)
}

/// With `keep_ring`, vertices of `c` stay and only its edges go, so the
/// result may meet `c` outside `x`.
fn boundary_step(g: &PlaneGraph, c: &Cycle, x: &[VertexId], keep_ring: bool) -> Option<Cycle> {
    let disk = g.disk(c).ok()?;
    let keep_vertex = |v: VertexId| keep_ring || disk.in_open(v) || x.contains(&v);
    let in_r: Vec<bool> = (0..g.edge_count())
        .map(|e| {
            let [u, v] = g.edges()[e];
            !disk.is_cycle_edge(e) && disk.contains_edge(g, e) && keep_vertex(u) && keep_vertex(v)
        })
        .collect();
    let touches_removed: Vec<bool> = g
        .faces()
        .iter()
        .map(|f| f.iter().any(|&d| !in_r[d >> 1]))
        .collect();

    // rotation restricted to the remaining darts
    let succ_r = |d: Dart| -> Dart {
        let mut e = g.succ(d);
        while !in_r[e >> 1] {
            e = g.succ(e);
        }
        e
    };
    let mut seen = vec![false; g.dart_count()];
    let mut best: Option<(usize, Cycle)> = None;
    for d0 in 0..g.dart_count() {
        if seen[d0] || !in_r[d0 >> 1] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = d0;
        loop {
            seen[d] = true;
            orbit.push(d);
            d = succ_r(d ^ 1);
            if d == d0 {
                break;
            }
        }
        if !orbit.iter().any(|&d| touches_removed[g.face_of(d)]) {
            continue;
        }
        for cyc in split_closed_walk(g, &orbit) {
            if !x.iter().all(|&v| cyc.contains_vertex(v)) {
                continue;
            }
            let Ok(dk) = g.disk(&cyc) else { continue };
            let size = dk.inside_face_count();
            let better = match &best {
                None => true,
                Some((s, b)) => size > *s || (size == *s && cyc.vertices() < b.vertices()),
            };
            if better {
                best = Some((size, cyc));
            }
        }
    }
    best.map(|(_, c)| c)
}

/// Splits a closed dart walk into its simple closed sub-walks of length at
/// least three, cutting at the first repeated vertex each time.
fn split_closed_walk(g: &PlaneGraph, walk: &[Dart]) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut stack: Vec<Dart> = Vec::new();
    let mut pos: std::collections::HashMap<VertexId, usize> = Default::default();
    let start = g.origin(walk[0]);
    pos.insert(start, 0);
    for &d in walk {
        stack.push(d);
        let v = g.head(d);
        if let Some(&p) = pos.get(&v) {
            let piece: Vec<Dart> = stack.drain(p..).collect();
            for &pd in &piece {
                pos.remove(&g.head(pd));
            }
            pos.insert(v, p);
            if piece.len() >= 3 {
                if let Ok(c) = Cycle::from_darts(g, &piece) {
                    out.push(c);
                }
            }
        } else {
            pos.insert(v, stack.len());
        }
    }
    out
}
