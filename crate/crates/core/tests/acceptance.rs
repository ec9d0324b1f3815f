//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line before asserting.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nestkit::decomp::{
    check_paths, check_refine_invariants, cut_separates, max_disjoint_paths, validate_decomposition, PathMode,
};
use nestkit::drawplan::{
    clean_subnest, clean_window, crossings_in_annulus, euler_accounting, planarize, random_drawing, Drawing,
    DrawingBuilder, Planarization,
};
use nestkit::gens::{self, SeededRng};
use nestkit::nest::{
    constant_intersection_subsequence, constant_intersection_subsequence_bruteforce, find_nest, find_nest_with,
    root_path_rings_to, FindOptions, RingChain,
};
use nestkit::oracle::{enumerate_cycles, enumerate_cycles_capped, max_disjoint_paths_bruteforce_edges, max_nest_in};
use nestkit::{parameter_budget, refine, verify_nest, Cycle, DecompOutcome, Nest, PlaneGraph};

fn report(id: u32, what: &str, result: Result<String, String>) {
    match result {
        Ok(detail) => println!("PASS criterion {id} ({what}): {detail}"),
        Err(why) => {
            println!("FAIL criterion {id} ({what}): {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn decomposition_fixtures() -> Vec<(String, PlaneGraph)> {
    let mut out = vec![
        ("concentric(12)".to_string(), gens::concentric(12)),
        ("bipyramid(16)".to_string(), gens::bipyramid(16)),
        ("one_nest(8)".to_string(), gens::one_nest(8)),
        ("grid_triangulation(20,20)".to_string(), gens::grid_triangulation(20, 20)),
    ];
    for seed in 0..10 {
        out.push((format!("random_triangulation(500,{seed})"), gens::random_triangulation(500, seed)));
    }
    out
}

struct Refined {
    name: String,
    k: usize,
    graph: PlaneGraph,
    outcome: Result<DecompOutcome, String>,
    elapsed: Duration,
}

/// Criterion 1 runs refine once per (fixture, k); criterion 8 reuses it.
fn refined() -> &'static [Refined] {
    static CELL: OnceLock<Vec<Refined>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for (name, g) in decomposition_fixtures() {
            for k in 1..=3 {
                let start = Instant::now();
                let outcome = refine(&g, k).map_err(|e| e.to_string());
                out.push(Refined {
                    name: name.clone(),
                    k,
                    graph: g.clone(),
                    outcome,
                    elapsed: start.elapsed(),
                });
            }
        }
        out
    })
}

fn check_outcome(r: &Refined) -> Result<&'static str, String> {
    let g = &r.graph;
    match r.outcome.as_ref()? {
        DecompOutcome::ZeroNest(nest) => {
            let (s, _) = verify_nest(g, &nest.cycles).map_err(|e| e.to_string())?;
            ensure(s == 0 && nest.size() >= r.k, || format!("nest of size {} with s = {s}", nest.size()))?;
            Ok("0-nest")
        }
        DecompOutcome::Decomposition(d) => {
            validate_decomposition(g, d).map_err(|e| e.to_string())?;
            check_refine_invariants(g, d, r.k)?;
            ensure(d.width() + 1 <= 12 * r.k, || format!("width {}", d.width()))?;
            ensure(d.max_ring_length() <= 8 * r.k, || format!("ring length {}", d.max_ring_length()))?;
            Ok("decomposition")
        }
    }
}

#[test]
fn criterion_1_decomposition_contract() {
    let result = (|| {
        let (mut nests, mut decs, mut slowest) = (0, 0, Duration::ZERO);
        for r in refined() {
            let kind = check_outcome(r).map_err(|e| format!("{} k={}: {e}", r.name, r.k))?;
            if kind == "0-nest" {
                nests += 1;
            } else {
                decs += 1;
            }
            ensure(r.elapsed < Duration::from_secs(10), || {
                format!("{} k={} took {:?}", r.name, r.k, r.elapsed)
            })?;
            slowest = slowest.max(r.elapsed);
        }
        Ok(format!("{decs} decompositions, {nests} 0-nests, slowest {slowest:.2?}"))
    })();
    report(1, "decomposition contract", result);
}

#[test]
fn criterion_7_parameter_budget() {
    let result = (|| {
        for (k, ell, t, t_prime) in [(2, 21.0, 177, 213), (1, 18.5, 79, 110)] {
            let b = parameter_budget(k, 0);
            ensure((b.ell(), b.t, b.t_prime) == (ell, t, t_prime), || {
                format!("k={k}: got ({}, {}, {})", b.ell(), b.t, b.t_prime)
            })?;
        }
        Ok("(21, 177, 213) and (18.5, 79, 110)".to_string())
    })();
    report(7, "parameter budget", result);
}

fn chains() -> Vec<(String, RingChain)> {
    let mut out = Vec::new();
    for r in refined() {
        if let Ok(DecompOutcome::Decomposition(d)) = &r.outcome {
            for leaf in d.leaves() {
                let chain = root_path_rings_to(&r.graph, d, leaf).expect("root path rings");
                out.push((format!("{} k={} leaf {leaf}", r.name, r.k), chain));
            }
        }
    }
    out
}

#[test]
fn criterion_8_laminarity_and_dp() {
    let result = (|| {
        let all = chains();
        let mut exhaustive = 0;
        for (name, chain) in &all {
            chain.check_laminar().map_err(|e| format!("{name}: {e}"))?;
            let h = chain.len();
            for i in 0..h {
                for j in i + 1..h {
                    for l in j + 1..h {
                        let outer = chain.intersection(i, l);
                        ensure(outer.iter().all(|v| chain.vertex_set(j).contains(v)), || {
                            format!("{name}: triple ({i},{j},{l})")
                        })?;
                    }
                }
            }
            if h <= 12 {
                let dp = constant_intersection_subsequence(chain, 0).map_or(0, |(seq, _)| seq.len());
                let brute = constant_intersection_subsequence_bruteforce(chain);
                ensure(dp == brute, || format!("{name}: dp {dp}, exhaustive {brute}"))?;
                exhaustive += 1;
            }
        }
        ensure(!all.is_empty(), || "no chains".into())?;
        Ok(format!("{} chains laminar, {exhaustive} checked exhaustively", all.len()))
    })();
    report(8, "laminarity and DP exactness", result);
}

/// Generator fixtures with at most 12 vertices.
fn small_fixtures() -> Vec<(String, PlaneGraph)> {
    let mut out = Vec::new();
    for m in 1..=3 {
        out.push((format!("concentric({m})"), gens::concentric(m)));
    }
    for n in 3..=10 {
        out.push((format!("bipyramid({n})"), gens::bipyramid(n)));
    }
    for m in 1..=5 {
        out.push((format!("one_nest({m})"), gens::one_nest(m)));
    }
    for (w, h) in [(2, 2), (2, 3), (3, 3), (3, 4), (2, 5), (2, 6)] {
        out.push((format!("grid_triangulation({w},{h})"), gens::grid_triangulation(w, h)));
    }
    for (depth, seed) in [(1, 0), (2, 0), (2, 1), (3, 2)] {
        out.push((format!("apollonian({depth},{seed})"), gens::apollonian(depth, seed)));
    }
    for n in 4..=12 {
        out.push((format!("random_triangulation({n},{n})"), gens::random_triangulation(n, n as u64)));
    }
    out.retain(|(_, g)| g.vertex_count() <= 12);
    out
}

/// A random cycle sequence: half the time built along nested cycles so
/// that valid nests are probed too.
fn probe(idx: &nestkit::oracle::CycleIndex, rng: &mut SeededRng) -> Vec<usize> {
    let len = 1 + rng.below(4);
    let mut seq = vec![rng.below(idx.len())];
    let along = rng.coin();
    while seq.len() < len {
        let last = *seq.last().unwrap();
        let next = if along {
            let inner: Vec<usize> = (0..idx.len()).filter(|&j| j != last && idx.nested(last, j)).collect();
            if inner.is_empty() {
                break;
            }
            inner[rng.below(inner.len())]
        } else {
            rng.below(idx.len())
        };
        seq.push(next);
    }
    seq
}

#[test]
fn criterion_2_oracle_equivalence() {
    let result = (|| {
        let fixtures = small_fixtures();
        let mut valid_probes = 0;
        for (name, g) in &fixtures {
            let idx = enumerate_cycles(g, None).map_err(|e| format!("{name}: {e}"))?;
            for s in 0..=2 {
                let (best, witness) = max_nest_in(g, &idx, s).map_err(|e| format!("{name}: {e}"))?;
                if best > 0 {
                    let (ws, _) = verify_nest(g, &witness.cycles).map_err(|e| format!("{name}: witness {e}"))?;
                    // a single cycle counts for every s
                    ensure((best == 1 || ws == s) && witness.size() == best, || {
                        format!("{name} s={s}: bad oracle witness")
                    })?;
                }
                let opts = FindOptions {
                    s: Some(s),
                    exhaustive: true,
                    ..FindOptions::default()
                };
                let found = find_nest_with(g, g.vertex_count(), &opts).map_or(0, |f| f.nest.size());
                ensure(found <= best, || format!("{name} s={s}: find {found} > oracle {best}"))?;
            }
            let mut rng = SeededRng::new(0x5eed ^ g.vertex_count() as u64);
            for _ in 0..1000 {
                let seq = probe(&idx, &mut rng);
                let cycles: Vec<Cycle> = seq
                    .iter()
                    .map(|&i| Cycle::from_vertices(g, &idx.cycles[i].vertices).unwrap())
                    .collect();
                let ours = verify_nest(g, &cycles).ok().map(|(s, _)| s);
                let theirs = idx.nest_s(&seq);
                ensure(ours == theirs, || format!("{name}: {seq:?} verify {ours:?} oracle {theirs:?}"))?;
                valid_probes += usize::from(ours.is_some());
            }
        }
        Ok(format!(
            "{} fixtures, s in 0..=2, {} probes ({valid_probes} valid nests), 0 disagreements",
            fixtures.len(),
            1000 * fixtures.len()
        ))
    })();
    report(2, "oracle equivalence", result);
}

#[test]
fn criterion_3_generator_guarantees() {
    let result = (|| {
        for m in 1..=10 {
            let f = find_nest(&gens::concentric(m), m).map_err(|e| format!("concentric({m}): {e}"))?;
            ensure(f.guaranteed && f.nest.size() == m && f.nest.s() == 0, || {
                format!("concentric({m}): size {} s {}", f.nest.size(), f.nest.s())
            })?;
        }
        for m in 1..=8 {
            let opts = FindOptions {
                s: Some(1),
                ..FindOptions::default()
            };
            let f = find_nest_with(&gens::one_nest(m), m, &opts).map_err(|e| format!("one_nest({m}): {e}"))?;
            ensure(f.guaranteed && f.nest.size() == m && f.nest.s() == 1, || {
                format!("one_nest({m}): size {} s {}", f.nest.size(), f.nest.s())
            })?;
        }
        for k in 1..=3 {
            let n = 4 * k + 2;
            let g = gens::bipyramid(n);
            let opts = FindOptions {
                s: Some(2),
                ..FindOptions::default()
            };
            let f = find_nest_with(&g, k, &opts).map_err(|e| format!("bipyramid({n}): {e}"))?;
            ensure(f.nest.size() >= k && f.nest.s() == 2, || {
                format!("bipyramid({n}): size {} s {}", f.nest.size(), f.nest.s())
            })?;
            let idx = enumerate_cycles_capped(&g, None, g.vertex_count()).map_err(|e| e.to_string())?;
            let (best, _) = max_nest_in(&g, &idx, 2).map_err(|e| e.to_string())?;
            ensure(best >= k && f.nest.size() <= best, || format!("bipyramid({n}): oracle {best}"))?;
        }
        Ok("concentric m<=10, one_nest m<=8, bipyramid(4k+2) k<=3 oracle-confirmed".to_string())
    })();
    report(3, "generator guarantees", result);
}

/// The identity, and the face bound under `r = max(base deficit, 0)`,
/// which satisfies the degree hypothesis by construction.
fn euler_holds(p: &Planarization) -> Result<(), String> {
    let rep = euler_accounting(p, 0).map_err(|e| e.to_string())?;
    ensure(rep.vertex_sum + rep.face_sum == 12, || format!("{rep:?}"))?;
    let rep = euler_accounting(p, rep.base_deficit.max(0)).map_err(|e| e.to_string())?;
    ensure(rep.hypothesis && rep.bound_holds && rep.non_triangular as i64 <= rep.bound, || {
        format!("bound fails: {rep:?}")
    })
}

#[test]
fn criterion_4_euler() {
    let result = (|| {
        let mut count = 0;
        let mut max_ell = 0;
        for seed in 0..200u64 {
            let mut rng = SeededRng::new(seed);
            let n = 10 + rng.below(60);
            let g = gens::random_triangulation(n, seed);
            let d = random_drawing(&g, 1 + rng.below(10), rng.below(n), seed);
            ensure(d.crossing_count() <= 10, || format!("seed {seed}: {} crossings", d.crossing_count()))?;
            let p = planarize(&d).map_err(|e| format!("seed {seed}: {e}"))?;
            euler_holds(&p).map_err(|e| format!("seed {seed}: {e}"))?;
            max_ell = max_ell.max(d.crossing_count());
            count += 1;
        }
        for (name, g) in small_fixtures().into_iter().chain(decomposition_fixtures()) {
            let p = planarize(&Drawing::from_plane_graph(&g)).map_err(|e| format!("{name}: {e}"))?;
            euler_holds(&p).map_err(|e| format!("{name}: {e}"))?;
            count += 1;
        }
        Ok(format!("{count} planarizations (200 random drawings, up to {max_ell} crossings)"))
    })();
    report(4, "Euler identity", result);
}

/// Crosses a random zigzag edge of annulus `i` of a concentric drawing.
fn cross_in_annulus(b: &mut DrawingBuilder, base: usize, i: usize, rng: &mut SeededRng) -> bool {
    let ring = |v: usize| v / 3;
    let mut options: Vec<(usize, usize)> = b
        .pieces()
        .into_iter()
        .map(|(xy, _)| xy)
        .filter(|&(x, y)| x < base && y < base && ring(x.min(y)) == i && ring(x.max(y)) == i + 1)
        .collect();
    while !options.is_empty() {
        let (x, y) = options.swap_remove(rng.below(options.len()));
        if b.cross(x, y).is_some() {
            return true;
        }
    }
    false
}

fn rings(g: &PlaneGraph, m: usize) -> Nest {
    Nest::from_vertex_lists(g, &gens::concentric_nest(m)).expect("planted nest")
}

#[test]
fn criterion_5_clean_pigeonhole() {
    let result = (|| {
        let mut runs = 0;
        for k in 1..=3 {
            for t in 2..=4 {
                let m = (k + 1) * (t - 1) + 1;
                let g = gens::concentric(m);
                let base = 3 * m;
                for seed in 0..500u64 {
                    let mut rng = SeededRng::new(seed * 31 + (k * 7 + t) as u64);
                    let mut b = DrawingBuilder::new(&g);
                    let want = rng.below(k + 1);
                    for _ in 0..want {
                        let i = rng.below(m - 1);
                        cross_in_annulus(&mut b, base, i, &mut rng);
                    }
                    let p = planarize(&b.build()).map_err(|e| e.to_string())?;
                    euler_holds(&p)?;
                    let nest = rings(&p.graph, m);
                    let sub = clean_subnest(&p, &nest, k, t).map_err(|e| format!("k={k} t={t} seed {seed}: {e}"))?;
                    let j = nest.cycles.iter().position(|c| *c == sub.cycles[0]).unwrap();
                    ensure(sub.size() == t && sub.cycles[..] == nest.cycles[j..j + t], || {
                        format!("k={k} t={t} seed {seed}: not {t} consecutive cycles")
                    })?;
                    for a in 0..t - 1 {
                        ensure(crossings_in_annulus(&p, &sub, a).is_empty(), || {
                            format!("k={k} t={t} seed {seed}: annulus {a} has a crossing")
                        })?;
                    }
                    runs += 1;
                }
            }
        }
        // one cycle fewer: exhaustive over every single-crossing placement
        let (k, t) = (1, 2);
        let m = (k + 1) * (t - 1);
        let g = gens::concentric(m);
        let b0 = DrawingBuilder::new(&g);
        let mut counterexample = None;
        for ((x, y), _) in b0.pieces() {
            let mut b = b0.clone();
            if b.cross(x, y).is_none() {
                continue;
            }
            let p = planarize(&b.build()).map_err(|e| e.to_string())?;
            euler_holds(&p)?;
            if clean_window(&p, &rings(&p.graph, m), t).is_none() {
                counterexample = Some((x, y));
                break;
            }
        }
        let (x, y) = counterexample.ok_or("no counterexample at size (k+1)(t-1)")?;
        Ok(format!("{runs} placements clean; size {m} fails for (1,2) by crossing {x}-{y}"))
    })();
    report(5, "clean-nest pigeonhole", result);
}

#[test]
fn criterion_6_disjoint_paths() {
    let result = (|| {
        let mut total = 0;
        for seed in 0..100u64 {
            let mut rng = SeededRng::new(1000 + seed);
            let n = 5 + rng.below(8);
            let g = gens::random_triangulation(n, seed);
            let n = g.vertex_count();
            let edges: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|_| rng.below(10) < 7)
                .map(|(e, &[u, v])| (e, u, v))
                .collect();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.below(i + 1));
            }
            let na = 1 + rng.below(3);
            let nb = 1 + rng.below(3.min(n - na));
            let (a, b) = (&perm[..na], &perm[na..na + nb]);
            let mode = if seed % 2 == 0 { PathMode::Vertex } else { PathMode::Edge };
            let flow = max_disjoint_paths(n, &edges, a, b, mode);
            let brute = max_disjoint_paths_bruteforce_edges(n, &edges, a, b, mode).map_err(|e| e.to_string())?;
            ensure(flow.count() == brute, || format!("seed {seed}: flow {} brute {brute}", flow.count()))?;
            check_paths(&edges, a, b, &flow).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(flow.cut.len() == flow.count(), || format!("seed {seed}: cut size"))?;
            ensure(cut_separates(n, &edges, a, b, mode, &flow.cut), || {
                format!("seed {seed}: cut does not separate")
            })?;
            total += brute;
        }
        Ok(format!("100 instances agree (total {total} paths), cuts certified"))
    })();
    report(6, "disjoint paths and Menger cuts", result);
}
