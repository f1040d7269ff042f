//! SVG figures: the subdivided Newton triangle, the tropical curve and the
//! skeleton.

use std::fmt::Write;

use hyperflex_exact::{format_scalar, roots::to_f64};

use crate::patchwork::{PatchworkFamily, Subdivision};
use crate::tropical::{EdgeShape, MetrizedComplex, SkeletonVertex, TropicalPlaneCurve};

const MARGIN: f64 = 40.0;

fn header(out: &mut String, w: f64, h: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"  <defs><marker id="arrow" markerWidth="8" markerHeight="6" refX="8" refY="3" orient="auto"><polygon points="0 0, 8 3, 0 6"/></marker></defs>"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), extra: &str) {
    writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" {extra}/>"#,
        a.0, a.1, b.0, b.1
    )
    .unwrap();
}

fn text(out: &mut String, p: (f64, f64), s: &str) {
    writeln!(out, r#"  <text x="{:.2}" y="{:.2}">{s}</text>"#, p.0, p.1).unwrap();
}

fn dot(out: &mut String, p: (f64, f64), r: f64, fill: &str) {
    writeln!(out, r#"  <circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}" stroke="black"/>"#, p.0, p.1).unwrap();
}

/// Δ with the faces of Θ, each lattice point labelled by ν.
pub fn subdivision_svg(fam: &PatchworkFamily, sub: &Subdivision) -> String {
    let g = fam.genus as f64;
    let unit = 60.0;
    let w = (2.0 * g + 1.0) * unit + 2.0 * MARGIN;
    let h = 2.0 * unit + 2.0 * MARGIN;
    let at = |p: (i64, i64)| (MARGIN + p.0 as f64 * unit, h - MARGIN - p.1 as f64 * unit);
    let mut out = String::new();
    header(&mut out, w, h);
    for face in &sub.faces {
        let pts: Vec<String> = face.vertices.iter().map(|&v| {
            let (x, y) = at(v);
            format!("{x:.2},{y:.2}")
        }).collect();
        writeln!(out, r##"  <polygon points="{}" fill="#eef3fb" stroke="black"/>"##, pts.join(" ")).unwrap();
    }
    for e in &sub.edges {
        line(&mut out, at(e.ends[0]), at(e.ends[1]), r#"stroke-width="1.5""#);
    }
    for i in 1..=2 * fam.genus + 1 {
        let p = at((i as i64, 0));
        dot(&mut out, p, 3.0, "black");
        let label = fam.nu.get(i).map_or_else(|| "∞".to_string(), |v| v.to_string());
        text(&mut out, (p.0 - 4.0, p.1 + 18.0), &label);
    }
    let top = at((0, 2));
    dot(&mut out, top, 3.0, "black");
    text(&mut out, (top.0 + 6.0, top.1 - 6.0), "0");
    out.push_str("</svg>\n");
    out
}

/// Vertices u_i, bounded edges and rays, with weights on every edge.
pub fn tropical_svg(t: &TropicalPlaneCurve) -> String {
    let pts: Vec<(f64, f64)> = t.vertices.iter().map(|v| (to_f64(&v.0), to_f64(&v.1))).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &pts {
        x0 = x0.min(p.0);
        x1 = x1.max(p.0);
        y0 = y0.min(p.1);
        y1 = y1.max(p.1);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let scale = 300.0 / span;
    let ray = 0.6 * span;
    let w = 300.0 + 2.0 * (MARGIN + ray * scale);
    let h = w;
    let at = |p: (f64, f64)| (w / 2.0 + (p.0 - (x0 + x1) / 2.0) * scale, h / 2.0 - (p.1 - (y0 + y1) / 2.0) * scale);
    let mut out = String::new();
    header(&mut out, w, h);
    for e in &t.edges {
        let (a, b, marker) = match e.shape {
            EdgeShape::Bounded { from, to } => (pts[from], pts[to], ""),
            EdgeShape::Ray { from, direction } => {
                let n = ((direction.0 * direction.0 + direction.1 * direction.1) as f64).sqrt();
                let p = pts[from];
                (p, (p.0 + ray * direction.0 as f64 / n, p.1 + ray * direction.1 as f64 / n), r#"marker-end="url(#arrow)""#)
            }
        };
        let (pa, pb) = (at(a), at(b));
        line(&mut out, pa, pb, marker);
        if e.weight > 1 {
            text(&mut out, ((pa.0 + pb.0) / 2.0 + 6.0, (pa.1 + pb.1) / 2.0 - 6.0), &e.weight.to_string());
        }
        if let Some(l) = &e.length {
            text(&mut out, ((pa.0 + pb.0) / 2.0 - 10.0, (pa.1 + pb.1) / 2.0 + 16.0), &format!("ℓ={}", format_scalar(l)));
        }
    }
    for (i, (p, v)) in pts.iter().zip(&t.vertices).enumerate() {
        let q = at(*p);
        dot(&mut out, q, 4.0, "black");
        text(&mut out, (q.0 + 8.0, q.1 - 8.0), &format!("u{} ({}, {})", i + 1, format_scalar(&v.0), format_scalar(&v.1)));
    }
    out.push_str("</svg>\n");
    out
}

/// Type II vertices on a line with their finite edges; infinite edges as
/// labelled arrows.
pub fn skeleton_svg(s: &MetrizedComplex) -> String {
    let g = s.genus;
    let gap = 160.0;
    let w = (g as f64 - 1.0) * gap + 2.0 * (MARGIN + 110.0);
    let h = 260.0;
    let pos = |i: usize| (MARGIN + 110.0 + (i - 1) as f64 * gap, h / 2.0);
    let mut out = String::new();
    header(&mut out, w, h);
    for e in &s.edges {
        let (a, b) = (e.ends[0], e.ends[1]);
        match (a, b) {
            (SkeletonVertex::Elliptic(i), SkeletonVertex::Elliptic(j)) => {
                let (pa, pb) = (pos(i), pos(j));
                line(&mut out, pa, pb, r#"stroke-width="2""#);
                let l = e.length.as_ref().map(format_scalar).unwrap_or_default();
                text(&mut out, ((pa.0 + pb.0) / 2.0 - 14.0, pa.1 - 10.0), &format!("{} = {l}", e.label));
            }
            (SkeletonVertex::Elliptic(i), v) => {
                let p = pos(i);
                let (dx, dy) = match v {
                    SkeletonVertex::Zero => (-90.0, 0.0),
                    SkeletonVertex::Infinity => (90.0, 0.0),
                    SkeletonVertex::Root(_, 1) => (-35.0, 90.0),
                    _ => (35.0, 90.0),
                };
                let q = (p.0 + dx, p.1 + dy);
                line(&mut out, p, q, r#"marker-end="url(#arrow)""#);
                text(&mut out, (q.0 - 12.0, q.1 + if dy > 0.0 { 16.0 } else { -8.0 }), &v.to_string());
            }
            _ => {}
        }
    }
    for c in &s.curves {
        let p = pos(c.vertex);
        dot(&mut out, p, 9.0, "#fde9b8");
        text(&mut out, (p.0 - 8.0, p.1 - 16.0), &format!("v{}", c.vertex));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patchwork::{assemble_family, glue_roots};
    use crate::tropical::{build_skeleton, tropicalize};
    use hyperflex_exact::int;

    #[test]
    fn figures_are_well_formed() {
        for g in [1, 2, 3] {
            let roots: Vec<_> = (0..g).map(|_| (int(3), int(2))).collect();
            let fam = assemble_family(&glue_roots(int(1), &roots).unwrap(), None).unwrap();
            let sub = fam.subdivision().unwrap();
            let docs = [
                subdivision_svg(&fam, &sub),
                tropical_svg(&tropicalize(&fam).unwrap()),
                skeleton_svg(&build_skeleton(&fam).unwrap()),
            ];
            for d in &docs {
                assert!(d.starts_with("<svg") && d.trim_end().ends_with("</svg>"));
                assert!(!d.contains("NaN") && !d.contains("inf\""));
            }
            assert_eq!(docs[0].matches("<polygon points=\"").count(), g + 1);
            assert_eq!(docs[2].matches("<circle").count(), g);
        }
    }
}
