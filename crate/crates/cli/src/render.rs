//! SVG drawing of a plane 2/2-map as closed curves.
//!
//! Every edge is subdivided twice, one extra point next to each of its darts,
//! which removes loops and parallel edges. The longest face is pinned to a
//! circle and every other point is placed at the average of its neighbours
//! (Tutte's barycentric method, solved by Gauss-Seidel sweeps). Each curve is
//! then drawn as a closed polyline through the crossings it meets.

use std::fmt::Write;

use gauss_core::{CombMap, Orientation, Sign};

const SIZE: f64 = 600.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

/// Point ids: crossings are `0..V`, the subdivision point next to dart `d`
/// is `V + d`.
fn layout(m: &CombMap) -> Vec<(f64, f64)> {
    let nv = m.num_vertices();
    let n = nv + m.num_darts();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for d in 0..m.num_darts() {
        adj[m.vertex_of(d)].push(nv + d);
        adj[nv + d].push(m.vertex_of(d));
        adj[nv + d].push(nv + m.alpha(d));
    }
    let outer = m.faces().into_iter().max_by_key(Vec::len).unwrap_or_default();
    let mut boundary = Vec::new();
    let mut on_boundary = vec![false; n];
    for &d in &outer {
        for p in [m.vertex_of(d), nv + d, nv + m.alpha(d)] {
            if !on_boundary[p] {
                on_boundary[p] = true;
                boundary.push(p);
            }
        }
    }
    let mut pos = vec![(0.0, 0.0); n];
    let k = boundary.len().max(1) as f64;
    for (i, &p) in boundary.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / k;
        pos[p] = (t.cos(), t.sin());
    }
    let free: Vec<usize> = (0..n).filter(|&p| !on_boundary[p]).collect();
    for _ in 0..4000 {
        let mut moved: f64 = 0.0;
        for &p in &free {
            let deg = adj[p].len() as f64;
            let (sx, sy) = adj[p].iter().fold((0.0, 0.0), |(x, y), &q| (x + pos[q].0, y + pos[q].1));
            let next = (sx / deg, sy / deg);
            moved = moved.max((next.0 - pos[p].0).abs() + (next.1 - pos[p].1).abs());
            pos[p] = next;
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

fn to_screen((x, y): (f64, f64)) -> (f64, f64) {
    let half = SIZE / 2.0;
    (half + x * (half - 30.0), half - y * (half - 30.0))
}

/// Renders the curves of a plane 2/2-map. `labels` names the crossings.
pub fn svg(m: &CombMap, sign: &Orientation, labels: &[String]) -> String {
    let nv = m.num_vertices();
    let pos: Vec<(f64, f64)> = layout(m).into_iter().map(to_screen).collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mut seen = vec![false; m.num_darts()];
    let mut curve = 0;
    for start in 0..m.num_darts() {
        if seen[start] || sign.sign(start) != Sign::Plus {
            continue;
        }
        let mut points = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            // arrive at the crossing by `d`, leave straight ahead
            let out_dart = m.tau(m.tau(d));
            points.push(pos[m.vertex_of(d)]);
            points.push(pos[nv + out_dart]);
            points.push(pos[nv + m.alpha(out_dart)]);
            d = m.alpha(out_dart);
        }
        let path = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(
            out,
            r#"<polygon points="{path}" fill="none" stroke="{}" stroke-width="2" stroke-linejoin="round"/>"#,
            PALETTE[curve % PALETTE.len()]
        );
        curve += 1;
    }
    for (v, &(x, y)) in pos.iter().enumerate().take(nv) {
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let label = labels.get(v).map(String::as_str).unwrap_or("");
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{label}</text>"#, x + 6.0, y - 6.0);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gauss_core::orient::Flips;
    use gauss_core::{embed_paragraph, parse_paragraph};

    #[test]
    fn draws_one_polygon_per_curve() {
        let p = parse_paragraph("1 2 / 1 2").unwrap();
        let r = embed_paragraph(&p, &Flips::none());
        let labels: Vec<String> = p.alphabet().iter().map(|c| c.to_string()).collect();
        let s = svg(&r.medial, r.premap.sign(), &labels);
        assert_eq!(s.matches("<polygon").count(), 2);
        assert_eq!(s.matches("<circle").count(), 2);
        assert!(s.starts_with("<svg"));
        assert!(!s.contains("NaN"));
    }

    #[test]
    fn boundary_points_lie_on_the_circle() {
        let p = parse_paragraph("1 2 3 4 2 1 4 3").unwrap();
        let r = embed_paragraph(&p, &Flips::none());
        let pos = layout(&r.medial);
        assert!(pos.iter().all(|&(x, y)| x * x + y * y <= 1.0 + 1e-9));
    }
}
