//! JSON document schemas for decomposition dumps and coloring outputs.
//! Serialization is deterministic: struct field order, ids ascending, and no
//! wall-clock fields.

use serde::{Deserialize, Serialize};

use crate::edge_color::EdgeColoring;
use crate::embedding::{EdgeId, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::spiral::{classify_triangles, SpiralDecomposition, TriangleClass};
use crate::total_color::{EntireColoring, TotalColoring};
use crate::vertex_color::{RunStats, VertexColoring};
use crate::Color;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub u: usize,
    pub v: usize,
    pub tag: crate::spiral::EdgeTag,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceClassEntry {
    pub face: usize,
    pub class: TriangleClass,
}

/// Decomposition dump: chains, edge tags, face classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionDump {
    pub n: usize,
    pub start: usize,
    pub direction: crate::spiral::Direction,
    pub chains: Vec<Vec<usize>>,
    pub edges: Vec<EdgeEntry>,
    pub face_classes: Option<Vec<FaceClassEntry>>,
}

impl DecompositionDump {
    pub fn build(emb: &PlanarEmbedding, dec: &SpiralDecomposition) -> Self {
        let chains = dec
            .chains
            .iter()
            .map(|c| c.vertices.iter().map(|v| v.0).collect())
            .collect();
        let edges = emb
            .edges()
            .iter()
            .enumerate()
            .map(|(eid, &(u, v))| EdgeEntry { u: u.0, v: v.0, tag: dec.edge_tags[eid] })
            .collect();
        let face_classes = classify_triangles(dec, emb).ok().map(|classes| {
            classes
                .iter()
                .map(|(f, class)| FaceClassEntry { face: f.0, class: *class })
                .collect()
        });
        DecompositionDump {
            n: emb.n(),
            start: dec.start.0,
            direction: dec.direction,
            chains,
            edges,
            face_classes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dump serializes") + "\n"
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeColorEntry {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

/// Coloring output: element-to-color maps plus the run statistics block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringDump {
    pub kind: String,
    pub palette: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Color>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeColorEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Color>>,
    pub stats: RunStats,
}

impl ColoringDump {
    pub fn vertex(emb: &PlanarEmbedding, col: &VertexColoring, stats: &RunStats) -> Self {
        let _ = emb;
        ColoringDump {
            kind: "vertex".into(),
            palette: col.palette,
            vertices: Some(col.colors.clone()),
            edges: None,
            faces: None,
            stats: stats.clone(),
        }
    }

    pub fn edge(emb: &PlanarEmbedding, col: &EdgeColoring, stats: &RunStats) -> Self {
        ColoringDump {
            kind: "edge".into(),
            palette: col.palette,
            vertices: None,
            edges: Some(edge_entries(emb, &col.colors)),
            faces: None,
            stats: stats.clone(),
        }
    }

    pub fn total(emb: &PlanarEmbedding, col: &TotalColoring, stats: &RunStats) -> Self {
        ColoringDump {
            kind: "total".into(),
            palette: col.palette,
            vertices: Some(col.vertices.clone()),
            edges: Some(edge_entries(emb, &col.edges)),
            faces: None,
            stats: stats.clone(),
        }
    }

    pub fn entire(emb: &PlanarEmbedding, col: &EntireColoring, stats: &RunStats) -> Self {
        ColoringDump {
            kind: "entire".into(),
            palette: col.palette,
            vertices: Some(col.vertices.clone()),
            edges: Some(edge_entries(emb, &col.edges)),
            faces: Some(col.faces.clone()),
            stats: stats.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dump serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("coloring json: {e}")))
    }

    /// Edge colors re-indexed against an embedding's edge ids.
    pub fn edge_colors_for(&self, emb: &PlanarEmbedding) -> Result<Option<Vec<Color>>> {
        let Some(entries) = &self.edges else { return Ok(None) };
        let mut colors = vec![0usize; emb.m()];
        for entry in entries {
            let e: EdgeId = emb
                .edge_between(VertexId(entry.u), VertexId(entry.v))
                .ok_or_else(|| {
                    Error::Parse(format!("edge {}-{} not present in the graph", entry.u, entry.v))
                })?;
            colors[e.0] = entry.color;
        }
        Ok(Some(colors))
    }
}

fn edge_entries(emb: &PlanarEmbedding, colors: &[Color]) -> Vec<EdgeColorEntry> {
    emb.edges()
        .iter()
        .enumerate()
        .map(|(eid, &(u, v))| EdgeColorEntry { u: u.0, v: v.0, color: colors[eid] })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named_instance;
    use crate::spiral::{decompose, Direction};
    use crate::vertex_color::{four_color, RepairBudget};

    #[test]
    fn dumps_are_deterministic_and_round_trip() {
        let emb = named_instance("k4").unwrap();
        let dec = decompose(&emb, VertexId(0), Direction::Clockwise);
        let dump = DecompositionDump::build(&emb, &dec);
        assert_eq!(dump.to_json(), DecompositionDump::build(&emb, &dec).to_json());

        let (col, stats) = four_color(&emb, &dec, &RepairBudget::default()).unwrap();
        let cd = ColoringDump::vertex(&emb, &col, &stats);
        let text = cd.to_json();
        let parsed = ColoringDump::from_json(&text).unwrap();
        assert_eq!(parsed.vertices.unwrap(), col.colors);
        // Wall time never serializes.
        assert!(!text.contains("wall_time"));
    }
}
