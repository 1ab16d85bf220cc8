//! SVG diagrams from a Tutte barycentric drawing of the realization.

use std::fmt::Write;

use crate::polycycle::Polycycle;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

/// Boundary on a regular polygon, every other vertex at the average of its
/// neighbours.
pub fn tutte_layout(poly: &Polycycle) -> Vec<(f64, f64)> {
    let m = poly.map();
    let n = m.n();
    let b = m.boundary();
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let rad = SIZE / 2.0 - MARGIN;
    for (i, &v) in b.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / b.len() as f64;
        pos[v as usize] = (SIZE / 2.0 + rad * a.cos(), SIZE / 2.0 - rad * a.sin());
        fixed[v as usize] = true;
    }
    for _ in 0..5000 {
        let mut delta: f64 = 0.0;
        for v in 0..n {
            if fixed[v] {
                continue;
            }
            let nb = m.rotation(v as u32);
            let (sx, sy) = nb.iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w as usize].0, y + pos[w as usize].1));
            let p = (sx / nb.len() as f64, sy / nb.len() as f64);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < 1e-9 {
            break;
        }
    }
    pos
}

pub fn render_svg(poly: &Polycycle) -> String {
    let m = poly.map();
    let pos = tutte_layout(poly);
    let bnd = m.boundary_mask();
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    for f in m.interior_faces() {
        let pts: Vec<String> = m.face(f).iter().map(|&v| format!("{:.2},{:.2}", pos[v as usize].0, pos[v as usize].1)).collect();
        let _ = writeln!(s, r##"<polygon class="face" points="{}" fill="#dfe8f5" stroke="none"/>"##, pts.join(" "));
    }
    for (a, b) in m.edges() {
        let (p, q) = (pos[a as usize], pos[b as usize]);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"/>"#,
            p.0, p.1, q.0, q.1
        );
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        let fill = if bnd[v] { "white" } else { "black" };
        let class = if bnd[v] { "boundary" } else { "interior" };
        let _ = writeln!(s, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{fill}" stroke="black"/>"#);
    }
    s.push_str("</svg>\n");
    s
}
