//! Deterministic SVG 1.1 rendering: vertices as colored disks, spiral edges
//! bold and solid, non-spiral edges thin and dashed, faces optionally filled
//! for entire colorings.

use std::fmt::Write as _;

use crate::embedding::PlanarEmbedding;
use crate::layout::LayoutResult;
use crate::spiral::SpiralDecomposition;
use crate::Color;

/// Optional color layers for the rendering.
#[derive(Clone, Debug, Default)]
pub struct RenderColors {
    pub vertices: Option<Vec<Color>>,
    pub edges: Option<Vec<Color>>,
    pub faces: Option<Vec<Color>>,
}

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// Fixed palette for the first slots, then a deterministic angle formula.
fn palette_hex(c: Color) -> String {
    const BASE: [&str; 12] = [
        "#2e9940", "#d43d3d", "#e3c800", "#2f6fd4", "#9340bf", "#e08b2e", "#2eb8a8", "#b8336a",
        "#6b8e23", "#8b5a2b", "#4a4a8f", "#708090",
    ];
    if c == 0 {
        return "#cccccc".into();
    }
    if c <= BASE.len() {
        return BASE[c - 1].into();
    }
    let hue = (c as f64 * 47.0) % 360.0;
    format!("hsl({hue:.0},65%,45%)")
}

fn sx(layout: &LayoutResult, x: f64) -> f64 {
    let _ = layout;
    MARGIN + (x + 1.0) * (SIZE - 2.0 * MARGIN) / 2.0
}

fn sy(layout: &LayoutResult, y: f64) -> f64 {
    let _ = layout;
    MARGIN + (1.0 - y) * (SIZE - 2.0 * MARGIN) / 2.0
}

/// Render the embedding to an SVG document. Deterministic for identical
/// inputs: fixed float formatting, element order by ids.
pub fn render_svg(
    emb: &PlanarEmbedding,
    layout: &LayoutResult,
    colors: &RenderColors,
    dec: Option<&SpiralDecomposition>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#ffffff\"/>");

    // Faces under everything else; the outer face is skipped.
    if let Some(face_colors) = &colors.faces {
        for (fid, face) in emb.faces().iter().enumerate() {
            if fid == emb.outer_face().0 {
                continue;
            }
            let mut d = String::new();
            for (i, v) in face.vertices.iter().enumerate() {
                let (x, y) = layout.positions[v.0];
                let cmd = if i == 0 { 'M' } else { 'L' };
                let _ = write!(d, "{cmd}{:.3},{:.3} ", sx(layout, x), sy(layout, y));
            }
            d.push('Z');
            let fill = palette_hex(face_colors[fid]);
            let _ = writeln!(
                out,
                "<path d=\"{d}\" fill=\"{fill}\" fill-opacity=\"0.35\" stroke=\"none\"/>"
            );
        }
    }

    for (eid, &(u, v)) in emb.edges().iter().enumerate() {
        let (x1, y1) = layout.positions[u.0];
        let (x2, y2) = layout.positions[v.0];
        let spiral = dec
            .map(|d| d.is_spiral_edge(crate::embedding::EdgeId(eid)))
            .unwrap_or(true);
        let stroke = colors
            .edges
            .as_ref()
            .map(|ec| palette_hex(ec[eid]))
            .unwrap_or_else(|| "#333333".into());
        let style = if spiral {
            format!("stroke=\"{stroke}\" stroke-width=\"3\"")
        } else {
            format!("stroke=\"{stroke}\" stroke-width=\"1\" stroke-dasharray=\"6,4\"")
        };
        let _ = writeln!(
            out,
            "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" {style}/>",
            sx(layout, x1),
            sy(layout, y1),
            sx(layout, x2),
            sy(layout, y2),
        );
    }

    for v in 0..emb.n() {
        let (x, y) = layout.positions[v];
        let fill = colors
            .vertices
            .as_ref()
            .map(|vc| palette_hex(vc[v]))
            .unwrap_or_else(|| "#ffffff".into());
        let _ = writeln!(
            out,
            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"9\" fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            sx(layout, x),
            sy(layout, y),
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"9\" text-anchor=\"middle\" dy=\"3\">{v}</text>",
            sx(layout, x),
            sy(layout, y),
        );
    }

    out.push_str("</svg>\n");
    out
}
