//! One function per subcommand, each turning a parsed input into an
//! [`Outcome`]. Exit codes: 0 success, 1 verified negative, 2 bad input.

use std::collections::BTreeMap;

use nestkit::decomp::{check_refine_invariants, validate_decomposition, DecompositionJson};
use nestkit::drawplan::{
    bridge_report, claim3_violations, clean_subnest, euler_accounting, fill_faces, nest_in_drawing,
    nest_minimality_check_capped, planarize, random_drawing, Drawing, DrawingJson, OmegaChoice, Planarization,
};
use nestkit::gens::{Family, GenSpec};
use nestkit::nest::{clean_input_size, find_nest_with, FindError, FindOptions, NestJson};
use nestkit::oracle::{enumerate_cycles_capped, max_nest_in};
use nestkit::{
    parameter_budget, refine, verify_nest, Cycle, DecompOutcome, GraphJson, Nest, PlaneGraph, StandardTreeDecomposition,
    VertexId,
};
use serde_json::{json, Value};

use crate::args::Format;
use crate::render::{layout, render_svg};

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Json(Value),
    Svg(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: Body,
    pub sizes: BTreeMap<String, u64>,
    pub guaranteed: Option<bool>,
}

impl Outcome {
    fn ok(body: Body) -> Self {
        Outcome {
            code: 0,
            body,
            sizes: BTreeMap::new(),
            guaranteed: None,
        }
    }

    fn negative(value: Value) -> Self {
        Outcome {
            code: 1,
            ..Outcome::ok(Body::Json(value))
        }
    }

    pub fn input_error(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            ..Outcome::ok(Body::Json(json!({ "error": "input", "message": msg.into() })))
        }
    }

    fn size(mut self, key: &str, value: usize) -> Self {
        self.sizes.insert(key.to_string(), value as u64);
        self
    }

    fn guaranteed(mut self, g: bool) -> Self {
        self.guaranteed = Some(g);
        self
    }
}

type Step<T> = Result<T, Outcome>;

fn bad<E: std::fmt::Display>(e: E) -> Outcome {
    Outcome::input_error(e.to_string())
}

pub fn graph_of(v: &Value) -> Step<PlaneGraph> {
    let j: GraphJson = serde_json::from_value(v.clone()).map_err(|e| bad(format!("not a graph: {e}")))?;
    j.to_graph().map_err(bad)
}

pub fn drawing_of(v: &Value) -> Step<Drawing> {
    let j: DrawingJson = serde_json::from_value(v.clone()).map_err(|e| bad(format!("not a drawing: {e}")))?;
    Drawing::from_json(&j).map_err(bad)
}

fn nest_json_of(v: &Value) -> Step<NestJson> {
    serde_json::from_value(v.clone()).map_err(|e| bad(format!("not a nest: {e}")))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// `base` with the fields of `extra` added.
fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn cycle_lists(nest: &Nest) -> Vec<Vec<VertexId>> {
    nest.cycles.iter().map(|c| c.vertices().to_vec()).collect()
}

fn nest_sizes(o: Outcome, nest: &Nest) -> Outcome {
    o.size("nest_size", nest.size()).size("s", nest.s())
}

pub fn gen(spec: &GenSpec, crossings: Option<usize>, deletions: usize, format: Format) -> Outcome {
    let g = match spec.generate() {
        Ok(g) => g,
        Err(e) => return bad(e),
    };
    let sized = |o: Outcome| o.size("vertices", g.vertex_count()).size("edges", g.edge_count());
    match crossings {
        None => match format {
            Format::Json => sized(Outcome::ok(Body::Json(to_value(&GraphJson::from_graph(&g))))),
            Format::Svg => sized(Outcome::ok(Body::Svg(render_svg(&g, &highlight_for(spec, &g), None)))),
        },
        Some(ell) => {
            let d = random_drawing(&g, ell, deletions, spec.seed);
            let o = match format {
                Format::Json => Outcome::ok(Body::Json(to_value(&d.to_json()))),
                Format::Svg => match planarize(&d) {
                    Ok(p) => Outcome::ok(Body::Svg(render_svg(&p.graph, &[], Some(p.base_vertices)))),
                    Err(e) => return bad(e),
                },
            };
            o.size("vertices", d.n).size("edges", d.edges.len()).size("crossings", d.crossing_count())
        }
    }
}

/// The planted nest of a generated graph, for `gen --format svg`.
fn highlight_for(spec: &GenSpec, g: &PlaneGraph) -> Vec<Vec<VertexId>> {
    use nestkit::gens::{bipyramid_nest, concentric_nest, one_nest_cycles};
    let n = spec.size[0];
    let lists = match spec.family {
        Family::Concentric => concentric_nest(n),
        Family::OneNest => one_nest_cycles(n),
        Family::Bipyramid => bipyramid_nest(n),
        _ => Vec::new(),
    };
    lists.into_iter().filter(|c| Cycle::from_vertices(g, c).is_ok()).collect()
}

pub fn find_nest(v: &Value, k: usize, s: Option<usize>, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = graph_of(v)?;
        let opts = FindOptions {
            s,
            ..FindOptions::default()
        };
        match find_nest_with(&g, k, &opts) {
            Ok(f) => {
                let body = match format {
                    Format::Json => Body::Json(merge(
                        to_value(&f.nest.to_json(f.guaranteed)),
                        json!({ "size": f.nest.size(), "source": f.source }),
                    )),
                    Format::Svg => Body::Svg(render_svg(&g, &cycle_lists(&f.nest), None)),
                };
                Ok(nest_sizes(Outcome::ok(body), &f.nest).guaranteed(f.guaranteed))
            }
            Err(FindError::NoNest(s)) => Ok(Outcome::negative(json!({ "error": "no_nest", "s": s, "k": k }))),
            Err(e) => Err(bad(e)),
        }
    };
    run().unwrap_or_else(|e| e)
}

pub fn decompose(v: &Value, k: usize, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = graph_of(v)?;
        let outcome = refine(&g, k).map_err(bad)?;
        Ok(match outcome {
            DecompOutcome::ZeroNest(nest) => {
                let guaranteed = nest.size() >= k;
                let body = match format {
                    Format::Json => Body::Json(merge(json!({ "outcome": "nest" }), to_value(&nest.to_json(guaranteed)))),
                    Format::Svg => Body::Svg(render_svg(&g, &cycle_lists(&nest), None)),
                };
                nest_sizes(Outcome::ok(body), &nest).guaranteed(guaranteed)
            }
            DecompOutcome::Decomposition(d) => {
                let body = match format {
                    Format::Json => Body::Json(merge(
                        json!({ "outcome": "decomposition", "max_ring_length": d.max_ring_length() }),
                        to_value(&d.to_json()),
                    )),
                    Format::Svg => Body::Svg(render_svg(&g, &ring_lists(&d), None)),
                };
                Outcome::ok(body)
                    .size("width", d.width())
                    .size("nodes", d.node_count())
                    .size("max_ring_length", d.max_ring_length())
            }
        })
    };
    run().unwrap_or_else(|e| e)
}

fn ring_lists(d: &StandardTreeDecomposition) -> Vec<Vec<VertexId>> {
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    for c in d.rings.iter().flatten() {
        let vs = c.vertices().to_vec();
        if !out.contains(&vs) {
            out.push(vs);
        }
    }
    out
}

pub fn verify_nest_file(graph: &Value, nest: &Value) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = graph_of(graph)?;
        let claimed = nest_json_of(nest)?;
        let invalid = |violation: String, witness: Option<(usize, usize)>| {
            Outcome::negative(json!({ "valid": false, "violation": violation, "witness": witness }))
        };
        let cycles: Vec<Cycle> = match claimed.cycles.iter().map(|c| Cycle::from_vertices(&g, c)).collect() {
            Ok(cs) => cs,
            Err(e) => return Ok(invalid(e.to_string(), None)),
        };
        let (s, x) = match verify_nest(&g, &cycles) {
            Ok(r) => r,
            Err(v) => return Ok(invalid(v.to_string(), v.witness_pair())),
        };
        let mut claimed_x = claimed.x.clone();
        claimed_x.sort_unstable();
        if claimed.s != s || claimed_x != x {
            return Ok(invalid(format!("file claims s = {} and X = {:?}, cycles give s = {s} and X = {x:?}", claimed.s, claimed.x), None));
        }
        Ok(Outcome::ok(Body::Json(json!({ "valid": true, "s": s, "X": x, "size": cycles.len() })))
            .size("nest_size", cycles.len())
            .size("s", s))
    };
    run().unwrap_or_else(|e| e)
}

pub fn verify_decomposition_file(graph: &Value, dec: &Value, k: Option<usize>) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = graph_of(graph)?;
        let j: DecompositionJson =
            serde_json::from_value(dec.clone()).map_err(|e| bad(format!("not a decomposition: {e}")))?;
        let d = match StandardTreeDecomposition::from_json(&g, &j) {
            Ok(d) => d,
            Err(e) => return Ok(Outcome::negative(json!({ "valid": false, "violation": e.to_string() }))),
        };
        if let Err(v) = validate_decomposition(&g, &d) {
            return Ok(Outcome::negative(json!({ "valid": false, "violation": v.to_string(), "detail": v })));
        }
        if let Some(k) = k {
            if let Err(msg) = check_refine_invariants(&g, &d, k) {
                return Ok(Outcome::negative(json!({ "valid": false, "violation": msg })));
            }
        }
        Ok(Outcome::ok(Body::Json(json!({
            "valid": true,
            "width": d.width(),
            "nodes": d.node_count(),
            "max_ring_length": d.max_ring_length(),
        })))
        .size("width", d.width())
        .size("nodes", d.node_count()))
    };
    run().unwrap_or_else(|e| e)
}

fn planarization_json(p: &Planarization) -> Value {
    json!({
        "graph": GraphJson::from_graph(&p.graph),
        "base_vertices": p.base_vertices,
        "v4": p.v4,
        "apexes": p.apexes,
    })
}

pub fn planarize_drawing(v: &Value, r: u64, fill: bool, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let d = drawing_of(v)?;
        let p = planarize(&d).map_err(bad)?;
        let rep = match euler_accounting(&p, r as i64) {
            Ok(rep) => rep,
            Err(e) => return Ok(Outcome::negative(json!({ "error": "euler", "message": e.to_string() }))),
        };
        let shown = if fill { fill_faces(&p) } else { p.clone() };
        let body = match format {
            Format::Json => Body::Json(merge(planarization_json(&shown), json!({ "euler": rep }))),
            Format::Svg => Body::Svg(render_svg(&shown.graph, &[], Some(shown.base_vertices))),
        };
        Ok(Outcome::ok(body)
            .size("vertices", shown.graph.vertex_count())
            .size("crossings", p.crossing_count())
            .size("non_triangular", rep.non_triangular))
    };
    run().unwrap_or_else(|e| e)
}

pub fn clean(v: &Value, t: usize, k: Option<usize>, r: u64, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let d = drawing_of(v)?;
        let k = k.unwrap_or(d.crossing_count());
        let needed = clean_input_size(k as u64, t as u64) as usize;
        let dn = nest_in_drawing(&d, needed, r as usize).map_err(bad)?;
        let p = planarize(&d).map_err(bad)?;
        match clean_subnest(&p, &dn.nest, k, t) {
            Ok(sub) => {
                let start = dn.nest.cycles.iter().position(|c| *c == sub.cycles[0]).unwrap_or(0);
                let body = match format {
                    Format::Json => Body::Json(merge(
                        to_value(&sub.to_json(true)),
                        json!({ "k": k, "t": t, "input_nest_size": dn.nest.size(), "window_start": start }),
                    )),
                    Format::Svg => Body::Svg(render_svg(&p.graph, &cycle_lists(&sub), Some(p.base_vertices))),
                };
                Ok(nest_sizes(Outcome::ok(body), &sub).size("input_nest_size", dn.nest.size()).guaranteed(true))
            }
            Err(e) => Ok(Outcome::negative(merge(to_value(&e), json!({ "message": e.to_string() })))
                .size("input_nest_size", dn.nest.size())
                .guaranteed(false)),
        }
    };
    run().unwrap_or_else(|e| e)
}

pub struct BridgesArgs<'a> {
    pub c2: usize,
    pub c4: usize,
    pub omega: &'a str,
    pub minimality: bool,
    pub oracle_cap: usize,
}

pub fn bridges(graph: &Value, nest: &Value, a: &BridgesArgs, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = graph_of(graph)?;
        let nj = nest_json_of(nest)?;
        let nest = Nest::from_vertex_lists(&g, &nj.cycles).map_err(|e| bad(format!("nest: {e}")))?;
        let h = nest.size();
        if a.c2 >= a.c4 || a.c4 >= h {
            return Err(bad(format!("need c2 < c4 < {h}, got c2 = {}, c4 = {}", a.c2, a.c4)));
        }
        let omega = match a.omega {
            "auto" => OmegaChoice::Auto,
            s => OmegaChoice::Candidate(s.parse().map_err(|_| bad(format!("--omega {s:?} is not auto or an index")))?),
        };
        let (c2, c4) = (&nest.cycles[a.c2], &nest.cycles[a.c4]);
        let report = bridge_report(&g, c2, c4, &nest.x_set, omega).map_err(bad)?;
        let claim3 = (a.c2 >= 1 && a.c4 + 1 < h)
            .then(|| claim3_violations(&report, &nest.cycles[a.c2 - 1], &nest.cycles[a.c4 + 1]));
        let mut extra = json!({ "claim3_violations": claim3 });
        let mut code = 0;
        if a.minimality {
            let w = nest_minimality_check_capped(&g, &nest, a.oracle_cap).map_err(bad)?;
            code = i32::from(w.is_some());
            extra = merge(extra, json!({ "minimal": w.is_none(), "minimality_witness": w }));
        }
        let body = match format {
            Format::Json => Body::Json(merge(to_value(&report), extra)),
            Format::Svg => Body::Svg(render_svg(&g, &[c2.vertices().to_vec(), c4.vertices().to_vec()], None)),
        };
        Ok(Outcome {
            code,
            ..Outcome::ok(body)
                .size("bridges", report.bridges.len())
                .size("regions", report.regions)
                .size("d1", report.d1)
                .size("d2", report.d2)
        })
    };
    run().unwrap_or_else(|e| e)
}

pub fn oracle(v: &Value, s: usize, cap: usize, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let g = graph_of(v)?;
        let idx = enumerate_cycles_capped(&g, None, cap).map_err(bad)?;
        let (best, nest) = max_nest_in(&g, &idx, s).map_err(bad)?;
        let body = match format {
            Format::Json => Body::Json(merge(
                to_value(&nest.to_json(true)),
                json!({ "size": best, "requested_s": s, "cycles_enumerated": idx.len() }),
            )),
            Format::Svg => Body::Svg(render_svg(&g, &cycle_lists(&nest), None)),
        };
        Ok(nest_sizes(Outcome::ok(body), &nest).size("cycles_enumerated", idx.len()))
    };
    run().unwrap_or_else(|e| e)
}

/// `v` is a graph or a drawing; drawings are shown through their
/// planarization with crossings marked.
pub fn render(v: &Value, highlight: Option<&Value>, format: Format) -> Outcome {
    let run = || -> Step<Outcome> {
        let (g, dummy_from) = if v.get("crossings").is_some() {
            let p = planarize(&drawing_of(v)?).map_err(bad)?;
            (p.graph, Some(p.base_vertices))
        } else {
            (graph_of(v)?, None)
        };
        let cycles: Vec<Vec<VertexId>> = match highlight {
            None => Vec::new(),
            Some(h) if h.get("bags").is_some() => {
                let j: DecompositionJson = serde_json::from_value(h.clone()).map_err(bad)?;
                j.rings.into_iter().flatten().collect()
            }
            Some(h) => nest_json_of(h)?.cycles,
        };
        for c in &cycles {
            Cycle::from_vertices(&g, c).map_err(|e| bad(format!("highlight: {e}")))?;
        }
        let body = match format {
            Format::Svg => Body::Svg(render_svg(&g, &cycles, dummy_from)),
            Format::Json => {
                let (pos, degenerate) = layout(&g);
                Body::Json(json!({ "positions": pos, "degenerate": degenerate }))
            }
        };
        Ok(Outcome::ok(body).size("vertices", g.vertex_count()).size("highlighted", cycles.len()))
    };
    run().unwrap_or_else(|e| e)
}

pub fn budget(k: u64, r: u64) -> Outcome {
    let b = parameter_budget(k, r);
    let body = json!({
        "k": b.k,
        "r": b.r,
        "ell": b.ell(),
        "t": b.t,
        "t_prime": b.t_prime,
        "clean_target": b.clean_target,
        "clean_input": b.clean_input,
    });
    Outcome::ok(Body::Json(body)).size("t", b.t as usize).size("t_prime", b.t_prime as usize)
}
