//! SVG drawing of a strip complex with its gluings, compact leaves and caps.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::complex::DartKind;
use super::layout::Q;
use super::realize::SideAnalysis;

const STRIP_W: f64 = 60.0;
const STRIP_H: f64 = 160.0;
const GAP_X: f64 = 12.0;
const ROW_GAP: f64 = 70.0;
const MARGIN: f64 = 40.0;

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Top-left corner of a strip.
fn origin(side: &SideAnalysis, strip: usize) -> (f64, f64) {
    let s = side.complex.strips[strip];
    let x = MARGIN + s.index as f64 * (STRIP_W + GAP_X);
    let y = MARGIN + s.rect as f64 * (STRIP_H + ROW_GAP);
    (x, y)
}

fn y_at(side: &SideAnalysis, strip: usize, h: f64) -> f64 {
    origin(side, strip).1 + (1.0 - h) * STRIP_H
}

/// Segment of a side dart: x and the two y ends.
fn side_segment(side: &SideAnalysis, dart: usize) -> Option<(f64, f64, f64)> {
    let d = &side.complex.darts[dart];
    let (lo, hi) = d.span.as_ref()?;
    let (x0, _) = origin(side, d.face);
    let x = match d.kind.side()? {
        super::complex::EdgeSide::Left => x0,
        super::complex::EdgeSide::Right => x0 + STRIP_W,
    };
    Some((x, y_at(side, d.face, f(lo)), y_at(side, d.face, f(hi))))
}

/// Renders one side of a type. With `color` false everything is drawn in
/// shades of grey.
pub fn render_svg(side: &SideAnalysis, color: bool) -> String {
    let cx = &side.complex;
    let t = &cx.source;
    let max_v = t.v().iter().copied().max().unwrap_or(0);
    let width = 2.0 * MARGIN + (max_v + 1) as f64 * (STRIP_W + GAP_X);
    let height = 2.0 * MARGIN + t.n() as f64 * (STRIP_H + ROW_GAP);
    let paint = |i: usize| if color { PALETTE[i % PALETTE.len()] } else { "#555555" };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r#"<title>{} surface</title>"#, cx.kind.name());

    s.push_str("<g id=\"caps\">\n");
    for cap in &side.caps {
        for &d in &side.census.circles[cap.circle].darts {
            if let Some((x, y0, y1)) = side_segment(side, d) {
                let dx = if matches!(cx.darts[d].kind.side(), Some(super::complex::EdgeSide::Left)) { -10.0 } else { 0.0 };
                let _ = writeln!(
                    s,
                    r##"<rect class="cap" x="{:.2}" y="{:.2}" width="10" height="{:.2}" fill="#bbbbbb" fill-opacity="0.6"/>"##,
                    x + dx,
                    y0.min(y1),
                    (y1 - y0).abs()
                );
            }
        }
    }
    s.push_str("</g>\n<g id=\"strips\">\n");
    for (i, strip) in cx.strips.iter().enumerate() {
        let (x, y) = origin(side, i);
        let _ = writeln!(
            s,
            r##"<rect class="strip" x="{x:.2}" y="{y:.2}" width="{STRIP_W}" height="{STRIP_H}" fill="#f4f4f4" stroke="#222222"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            x + STRIP_W / 2.0,
            y + STRIP_H + 14.0,
            strip.label()
        );
    }
    s.push_str("</g>\n<g id=\"gluings\">\n");
    for (g, gl) in cx.gluings.iter().enumerate() {
        for &(inner, band) in &gl.pairs {
            let (Some(a), Some(b)) = (side_segment(side, inner), side_segment(side, band)) else { continue };
            for (x, y0, y1) in [a, b] {
                let _ = writeln!(
                    s,
                    r#"<line class="glued" x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" stroke="{}" stroke-width="3"/>"#,
                    paint(g)
                );
            }
            let (ma, mb) = ((a.0, (a.1 + a.2) / 2.0), (b.0, (b.1 + b.2) / 2.0));
            let ctrl = ((ma.0 + mb.0) / 2.0, ma.1.min(mb.1) - ROW_GAP / 2.0);
            let _ = writeln!(
                s,
                r#"<path class="arc" d="M {:.2} {:.2} Q {:.2} {:.2} {:.2} {:.2}" fill="none" stroke="{}" stroke-dasharray="4 3"/>"#,
                ma.0,
                ma.1,
                ctrl.0,
                ctrl.1,
                mb.0,
                mb.1,
                paint(g)
            );
        }
    }
    s.push_str("</g>\n<g id=\"leaves\">\n");
    for leaf in &side.traces {
        let mut pts = String::new();
        for step in &leaf.steps {
            let (x, _) = origin(side, step.strip);
            let y = y_at(side, step.strip, f(&step.height));
            let _ = write!(pts, "{x:.2},{y:.2} {:.2},{y:.2} ", x + STRIP_W);
        }
        let _ = writeln!(
            s,
            r##"<polyline class="leaf" data-cycle="{}" points="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
            side.cycles[leaf.cycle].label(),
            pts.trim_end()
        );
    }
    s.push_str("</g>\n");
    let free: Vec<usize> = cx.free_darts().filter(|&d| !matches!(cx.darts[d].kind, DartKind::Bottom | DartKind::Top)).collect();
    s.push_str("<g id=\"free\">\n");
    for d in free {
        if let Some((x, y0, y1)) = side_segment(side, d) {
            let _ = writeln!(
                s,
                r##"<line class="free" x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y1:.2}" stroke="#999999" stroke-dasharray="2 2"/>"##
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
