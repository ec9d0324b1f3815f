//! Straight-line SVG drawings. Coordinates exist only here.

use std::fmt::Write as _;

use nestkit::{PlaneGraph, VertexId};

pub type Point = (f64, f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("barycentric layout is degenerate")]
pub struct LayoutDegenerate;

/// Outer face on a regular polygon, every other vertex at the barycentre of
/// its neighbours. Needs an outer face without repeated vertices and every
/// vertex connected to it; positions must come out pairwise distinct.
pub fn tutte_layout(g: &PlaneGraph) -> Result<Vec<Point>, LayoutDegenerate> {
    let n = g.vertex_count();
    let outer = g.face_vertices(g.outer_face());
    let mut fixed = vec![false; n];
    for &v in &outer {
        if fixed[v] {
            return Err(LayoutDegenerate);
        }
        fixed[v] = true;
    }
    if outer.len() < 3 {
        return Err(LayoutDegenerate);
    }
    let mut pos = vec![(0.0, 0.0); n];
    for (i, &v) in outer.iter().enumerate() {
        pos[v] = on_circle(i, outer.len());
    }
    let inner: Vec<VertexId> = (0..n).filter(|&v| !fixed[v]).collect();
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in inner.iter().enumerate() {
        slot[v] = i;
    }
    let adj = g.adjacency();
    for axis in 0..2 {
        let coord = |p: &Point| if axis == 0 { p.0 } else { p.1 };
        // Laplacian restricted to inner vertices: deg(v) x_v - sum of inner neighbours
        let b: Vec<f64> = inner
            .iter()
            .map(|&v| adj[v].iter().filter(|&&w| fixed[w]).map(|&w| coord(&pos[w])).sum())
            .collect();
        let apply = |x: &[f64]| -> Vec<f64> {
            inner
                .iter()
                .map(|&v| {
                    let own = adj[v].len() as f64 * x[slot[v]];
                    own - adj[v].iter().filter(|&&w| !fixed[w]).map(|&w| x[slot[w]]).sum::<f64>()
                })
                .collect()
        };
        let x = conjugate_gradient(apply, &b, 4 * inner.len() + 50);
        for (i, &v) in inner.iter().enumerate() {
            if axis == 0 {
                pos[v].0 = x[i];
            } else {
                pos[v].1 = x[i];
            }
        }
    }
    let mut sorted: Vec<Point> = pos.clone();
    if sorted.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(LayoutDegenerate);
    }
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.windows(2).any(|w| (w[0].0 - w[1].0).abs() < 1e-9 && (w[0].1 - w[1].1).abs() < 1e-9) {
        return Err(LayoutDegenerate);
    }
    Ok(pos)
}

fn conjugate_gradient(apply: impl Fn(&[f64]) -> Vec<f64>, b: &[f64], max_iter: usize) -> Vec<f64> {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut x = vec![0.0; b.len()];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    for _ in 0..max_iter {
        if rr < 1e-26 {
            break;
        }
        let ap = apply(&p);
        let alpha = rr / dot(&p, &ap);
        for i in 0..x.len() {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let next = dot(&r, &r);
        for i in 0..p.len() {
            p[i] = r[i] + next / rr * p[i];
        }
        rr = next;
    }
    x
}

fn on_circle(i: usize, m: usize) -> Point {
    // first vertex at the top, counter-clockwise in SVG's flipped y
    let a = std::f64::consts::TAU * i as f64 / m as f64 + std::f64::consts::FRAC_PI_2;
    (a.cos(), -a.sin())
}

pub fn circular_layout(n: usize) -> Vec<Point> {
    (0..n).map(|i| on_circle(i, n.max(1))).collect()
}

/// Barycentric layout, or the circular one when it degenerates.
pub fn layout(g: &PlaneGraph) -> (Vec<Point>, bool) {
    match tutte_layout(g) {
        Ok(p) => (p, false),
        Err(LayoutDegenerate) => (circular_layout(g.vertex_count()), true),
    }
}

const SIZE: f64 = 600.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn screen(p: Point) -> Point {
    let half = (SIZE - 2.0 * MARGIN) / 2.0;
    (MARGIN + half * (1.0 + p.0), MARGIN + half * (1.0 + p.1))
}

/// SVG of `g` with each of `highlight` stroked in its own colour. Vertices
/// from `dummy_from` on (crossings, apexes) are drawn as small squares.
pub fn render_svg(g: &PlaneGraph, highlight: &[Vec<VertexId>], dummy_from: Option<usize>) -> String {
    let (pos, degenerate) = layout(g);
    let pos: Vec<Point> = pos.into_iter().map(screen).collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    if degenerate {
        s.push_str("<!-- circular fallback layout -->\n");
    }
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str("<g class=\"edges\" stroke=\"#999\" stroke-width=\"1\">\n");
    for &[u, v] in g.edges() {
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            pos[u].0, pos[u].1, pos[v].0, pos[v].1
        );
    }
    s.push_str("</g>\n<g class=\"highlight\" fill=\"none\" stroke-width=\"3\" stroke-linejoin=\"round\">\n");
    for (i, cycle) in highlight.iter().enumerate() {
        let points: Vec<String> = cycle.iter().map(|&v| format!("{:.2},{:.2}", pos[v].0, pos[v].1)).collect();
        let _ = writeln!(
            s,
            "<polygon class=\"cycle\" data-index=\"{i}\" stroke=\"{}\" points=\"{}\"/>",
            PALETTE[i % PALETTE.len()],
            points.join(" ")
        );
    }
    s.push_str("</g>\n<g class=\"vertices\" fill=\"black\">\n");
    for (v, &(x, y)) in pos.iter().enumerate() {
        if dummy_from.is_some_and(|d| v >= d) {
            let _ = writeln!(s, "<rect class=\"dummy\" x=\"{:.2}\" y=\"{:.2}\" width=\"4\" height=\"4\" fill=\"#d62728\"/>", x - 2.0, y - 2.0);
        } else {
            let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"><title>{v}</title></circle>");
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
