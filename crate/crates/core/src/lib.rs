//! Spiral-chain decomposition and coloring algorithms for plane graphs.
//!
//! The crate covers the full pipeline: combinatorial embeddings from rotation
//! systems, reproducible instance generation, spiral-chain decomposition with
//! triangle classification, vertex 4-coloring, edge coloring, total and
//! entire coloring with Kempe-style repair loops, independent validity
//! checkers and exact exponential oracles, plus Tutte layouts, SVG rendering,
//! and a corpus harness.

pub mod corpus;
pub mod edge_color;
pub mod embedding;
pub mod error;
pub mod gen;
pub mod json;
pub mod layout;
pub mod oracle;
pub mod render;
pub mod spiral;
pub mod total_color;
pub mod verify;
pub mod vertex_color;

pub use embedding::{
    build_embedding, build_embedding_with_outer, DualGraph, EdgeId, Face, FaceId,
    PlanarEmbedding, RotationSystem, VertexId,
};
pub use error::{Error, Result};
pub use gen::{gen_maximal_planar, gen_triangle_free, named_instance, GenKind, GenSpec, SplitMix64};
pub use spiral::{
    config_sequence, decompose, find_sailing_boats, nonspiral_structure, segment, Direction,
    NonSpiralStructure, SailingBoat, SpiralChain, SpiralDecomposition, SpiralSegment,
    TriangleClass, TriangleSide,
};

/// Colors are small 1-based integers; the mnemonic palette G, R, Y, B maps to
/// 1, 2, 3, 4.
pub type Color = usize;

pub const GREEN: Color = 1;
pub const RED: Color = 2;
pub const YELLOW: Color = 3;
pub const BLUE: Color = 4;

pub use edge_color::{
    config_case_table, kempe_switch_edge, resolve_impasse, spiral_edge_color, ConfigCensus,
    EdgeColoring,
};
pub use total_color::{entire_color, m_kempe_switch, total_color, EntireColoring, MKempeChain, TotalColoring};
pub use verify::{
    verify_edge, verify_entire, verify_total, verify_vertex, Violation, ViolationKind,
};
pub use oracle::{
    chromatic_index_exact, chromatic_number_exact, entire_chromatic_exact, total_chromatic_exact,
};
pub use vertex_color::{
    cycle_bicolor_probe, four_color, kempe_switch_vertex, three_color_forest,
    three_color_steinberg, three_color_triangle_free, CycleProbe, ProbeMeet, RepairBudget,
    RunStats, VertexColoring,
};
pub use layout::{tutte_layout, LayoutResult};
pub use render::render_svg;
pub use corpus::{run_corpus, AlgorithmKind, CorpusReport, CorpusSpec, InstanceReport};
