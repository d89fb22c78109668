//! Static SVG plots of vertex fields.
//!
//! Vertices sit at their exact rational coordinates scaled into a
//! 1100x1100 view box (50-unit margin); positions are computed with
//! integer arithmetic and values quantized to 8-bit channel ramps, so the
//! output bytes depend only on the inputs.
//!
//! Color map: a blue-white-red diverging ramp, symmetric around zero.
//! Negative values interpolate white (247,247,247) toward blue
//! (33,102,172), positives toward red (178,24,43); the zero field renders
//! entirely at the white midpoint.

use std::fmt::Write;

use vicsek_core::graph::{EigenfunctionField, LevelGraph};
use vicsek_core::Rational;

const MARGIN: i64 = 50;
const SPAN: i64 = 1000;

fn scaled(r: &Rational) -> i64 {
    // round(SPAN * num/den) + MARGIN, exactly in integers
    let num = r.numerator() as i128 * SPAN as i128;
    let den = r.denominator() as i128;
    let rounded = (2 * num + den) / (2 * den);
    rounded as i64 + MARGIN
}

const WHITE: [i64; 3] = [247, 247, 247];
const BLUE: [i64; 3] = [33, 102, 172];
const RED: [i64; 3] = [178, 24, 43];

fn color(value: f64, scale: f64) -> String {
    let t = if scale > 0.0 {
        (value / scale).clamp(-1.0, 1.0)
    } else {
        0.0
    };
    let target = if t < 0.0 { BLUE } else { RED };
    let steps = (t.abs() * 255.0).round() as i64;
    let mut rgb = [0i64; 3];
    for (i, c) in rgb.iter_mut().enumerate() {
        *c = WHITE[i] + (target[i] - WHITE[i]) * steps / 255;
    }
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}

fn radius(level: u32) -> i64 {
    (14 - 2 * level as i64).max(3)
}

/// SVG y grows downward; mirror inside the 1100-unit box.
fn flip(v: i64) -> i64 {
    2 * MARGIN + SPAN - v
}

/// Renders the field as colored vertices over the graph's edges.
pub fn render(g: &LevelGraph, field: &EigenfunctionField) -> String {
    assert_eq!(g.level(), field.level);
    let scale = field.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1100 1100\">\n");
    out.push_str("<g stroke=\"#999999\" stroke-width=\"2\">\n");
    for (a, b) in g.edges() {
        let pa = g.coordinate(a);
        let pb = g.coordinate(b);
        writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            scaled(&pa.x),
            flip(scaled(&pa.y)),
            scaled(&pb.x),
            flip(scaled(&pb.y)),
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    let r = radius(g.level());
    for id in 0..g.vertex_count() as u32 {
        let p = g.coordinate(id);
        writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            scaled(&p.x),
            flip(scaled(&p.y)),
            r,
            color(field.value(id), scale),
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use vicsek_core::graph::build_graph;

    #[test]
    fn level0_plot_counts_and_determinism() {
        let g = build_graph(0).unwrap();
        let u = EigenfunctionField::new(0, vec![1.0, 0.0, 0.0, -1.0]);
        let svg = render(&g, &u);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 6);
        assert_eq!(svg, render(&g, &u));
        // u(q1) = 1 renders fully red, u(q4) = -1 fully blue
        assert!(svg.contains("fill=\"#b2182b\""));
        assert!(svg.contains("fill=\"#2166ac\""));
    }

    #[test]
    fn zero_field_renders_at_midpoint() {
        let g = build_graph(1).unwrap();
        let u = EigenfunctionField::new(1, vec![0.0; 16]);
        let svg = render(&g, &u);
        assert_eq!(svg.matches("fill=\"#f7f7f7\"").count(), 16);
    }

    #[test]
    fn vertex_and_edge_counts_scale_with_level() {
        let g = build_graph(2).unwrap();
        let u = EigenfunctionField::new(2, vec![0.5; g.vertex_count()]);
        let svg = render(&g, &u);
        assert_eq!(svg.matches("<circle").count(), 76);
        assert_eq!(svg.matches("<line").count(), 150);
    }
}
