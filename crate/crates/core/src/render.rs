//! Polygon rendering: a deterministic ASCII grid and a simple SVG dump.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::polygon::PolygonView;
use crate::rat::{pretty, Rat};

/// ASCII picture: one column per distinct abscissa, `*` for vertices, `.`
/// for other marked points, plus edge and vertex listings.
pub fn render_ascii(view: &PolygonView) -> String {
    let mut us: BTreeSet<Rat> = BTreeSet::new();
    let mut vmax = 0u32;
    for m in &view.points {
        us.insert(m.point.u.clone());
        vmax = vmax.max(m.point.v);
    }
    for v in &view.vertices {
        us.insert(v.point.u.clone());
        vmax = vmax.max(v.point.v);
    }
    let cols: Vec<Rat> = us.into_iter().collect();
    let labels: Vec<String> = cols.iter().map(pretty).collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(1) + 1;

    let is_vertex = |u: &Rat, v: u32| {
        view.vertices
            .iter()
            .any(|x| &x.point.u == u && x.point.v == v)
    };
    let is_marked = |u: &Rat, v: u32| {
        view.points
            .iter()
            .any(|m| &m.point.u == u && m.point.v == v)
    };

    let mut out = String::new();
    for v in (0..=vmax).rev() {
        out.push_str(&format!("{:>3} |", v));
        for u in &cols {
            let ch = if is_vertex(u, v) {
                '*'
            } else if is_marked(u, v) {
                '.'
            } else {
                ' '
            };
            out.push_str(&format!("{:>width$}", ch, width = width));
        }
        out.push('\n');
    }
    out.push_str(&format!("    +{}\n", "-".repeat(width * cols.len())));
    out.push_str("  u: ");
    for l in &labels {
        out.push_str(&format!("{:>width$}", l, width = width));
    }
    out.push('\n');
    if view.edges.is_empty() {
        out.push_str("edges: none\n");
    } else {
        out.push_str("edges:\n");
        for e in &view.edges {
            out.push_str(&format!(
                "  mu={}  (a={}, b={})  {} -- {}\n",
                pretty(&e.mu),
                e.a,
                e.b,
                e.upper,
                e.lower
            ));
        }
    }
    out.push_str("vertices:\n");
    for v in &view.vertices {
        out.push_str(&format!(
            "  {}  inclinations ({}, {})\n",
            v.point, v.mu_low, v.mu_high
        ));
    }
    out
}

const SCALE: i64 = 48;
const MARGIN: i64 = 40;

/// Exact rational -> scaled integer pixel offset.
fn px(value: &Rat, min: &Rat) -> i64 {
    let scaled = (value - min) * Rat::from(BigInt::from(SCALE));
    // round to nearest integer, exactly
    let rounded = (scaled * Rat::from(BigInt::from(2)) + Rat::from(BigInt::from(1)))
        .floor()
        .numer()
        / BigInt::from(2);
    let v: BigInt = rounded + BigInt::from(MARGIN);
    i64::try_from(v).expect("svg coordinate overflow")
}

/// SVG rendering with exact rational coordinates scaled into the viewbox.
pub fn render_svg(view: &PolygonView) -> String {
    let mut umin: Option<Rat> = None;
    let mut umax: Option<Rat> = None;
    let mut vmax = 0u32;
    for m in &view.points {
        if umin.as_ref().is_none_or(|x| &m.point.u < x) {
            umin = Some(m.point.u.clone());
        }
        if umax.as_ref().is_none_or(|x| &m.point.u > x) {
            umax = Some(m.point.u.clone());
        }
        vmax = vmax.max(m.point.v);
    }
    let umin = umin.unwrap_or_else(|| Rat::from(BigInt::from(0)));
    let umax = umax.unwrap_or_else(|| Rat::from(BigInt::from(1)));
    let w = px(&umax, &umin) + MARGIN;
    let h = SCALE * (vmax as i64) + 2 * MARGIN;
    let y_of = |v: u32| h - MARGIN - SCALE * v as i64;

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n",
        w, h
    ));
    s.push_str("  <style>text { font: 12px monospace; }</style>\n");
    for e in &view.edges {
        let (x1, y1) = (px(&e.upper.u, &umin), y_of(e.upper.v));
        let (x2, y2) = (px(&e.lower.u, &umin), y_of(e.lower.v));
        s.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            x1, y1, x2, y2
        ));
        let label = format!("mu={}", pretty(&e.mu));
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\">{}</text>\n",
            (x1 + x2) / 2 + 6,
            (y1 + y2) / 2 - 6,
            label
        ));
    }
    for m in &view.points {
        let vertex = view
            .vertices
            .iter()
            .any(|v| v.point == m.point);
        let r = if vertex { 4 } else { 2 };
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            px(&m.point.u, &umin),
            y_of(m.point.v),
            r,
            if vertex { "black" } else { "gray" }
        ));
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\">{}</text>\n",
            px(&m.point.u, &umin) + 6,
            y_of(m.point.v) + 14,
            m.point
        ));
    }
    s.push_str("</svg>\n");
    s
}
