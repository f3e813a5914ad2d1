//! Validity checkers for all four coloring kinds. A coloring is proper when
//! any two distinct adjacent or incident elements receive distinct colors;
//! the checkers enumerate every violating pair.
//!
//! Incidence rules (shared with the exact oracles through
//! [`entire_conflict_pairs`]): vertices are adjacent via edges; edges are
//! adjacent when they share an endpoint; an edge is incident to its
//! endpoints; a face is incident to its boundary vertices and edges; two
//! faces are adjacent when they share an edge (multiplicity collapses).

use serde::{Deserialize, Serialize};

use crate::embedding::{EdgeId, FaceId, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::Color;

/// A graph element reference in a violation report.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(VertexId),
    Edge(EdgeId),
    Face(FaceId),
}

/// Kind of offending pair.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    VertexVertex,
    EdgeEdge,
    VertexEdge,
    FaceFace,
    FaceVertex,
    FaceEdge,
}

/// One same-colored adjacent/incident element pair.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub a: Element,
    pub b: Element,
    pub color: Color,
}

fn check_complete(colors: &[Color], want: usize, what: &str) -> Result<()> {
    if colors.len() != want {
        return Err(Error::IncompleteColoring(format!(
            "{what}: expected {want} colors, got {}",
            colors.len()
        )));
    }
    if let Some(i) = colors.iter().position(|&c| c == 0) {
        return Err(Error::IncompleteColoring(format!("{what} element {i} is uncolored")));
    }
    Ok(())
}

/// Enumerate vertex-vertex violations.
pub fn verify_vertex(emb: &PlanarEmbedding, colors: &[Color]) -> Result<Vec<Violation>> {
    check_complete(colors, emb.n(), "vertex coloring")?;
    let mut out = Vec::new();
    for (eid, &(u, v)) in emb.edges().iter().enumerate() {
        let _ = eid;
        if colors[u.0] == colors[v.0] {
            out.push(Violation {
                kind: ViolationKind::VertexVertex,
                a: Element::Vertex(u),
                b: Element::Vertex(v),
                color: colors[u.0],
            });
        }
    }
    Ok(out)
}

/// Enumerate edge-edge violations (shared endpoint, same color).
pub fn verify_edge(emb: &PlanarEmbedding, colors: &[Color]) -> Result<Vec<Violation>> {
    check_complete(colors, emb.m(), "edge coloring")?;
    let mut out = Vec::new();
    for v in 0..emb.n() {
        let slots = emb.edge_slots(VertexId(v));
        for i in 0..slots.len() {
            for j in (i + 1)..slots.len() {
                let (a, b) = (slots[i], slots[j]);
                if colors[a.0] == colors[b.0] {
                    let (a, b) = (a.min(b), a.max(b));
                    out.push(Violation {
                        kind: ViolationKind::EdgeEdge,
                        a: Element::Edge(a),
                        b: Element::Edge(b),
                        color: colors[a.0],
                    });
                }
            }
        }
    }
    out.sort_by_key(|v| (element_key(v.a), element_key(v.b)));
    out.dedup();
    Ok(out)
}

/// Enumerate violations of a total coloring: vertex-vertex, edge-edge, and
/// vertex-edge incidences.
pub fn verify_total(
    emb: &PlanarEmbedding,
    vertex_colors: &[Color],
    edge_colors: &[Color],
) -> Result<Vec<Violation>> {
    let mut out = verify_vertex(emb, vertex_colors)?;
    out.extend(verify_edge(emb, edge_colors)?);
    for (eid, &(u, v)) in emb.edges().iter().enumerate() {
        for endpoint in [u, v] {
            if edge_colors[eid] == vertex_colors[endpoint.0] {
                out.push(Violation {
                    kind: ViolationKind::VertexEdge,
                    a: Element::Vertex(endpoint),
                    b: Element::Edge(EdgeId(eid)),
                    color: edge_colors[eid],
                });
            }
        }
    }
    Ok(out)
}

/// Enumerate violations of an entire coloring: all total-coloring pairs plus
/// face-face, face-vertex, and face-edge incidences. The outer face
/// participates like any other face.
pub fn verify_entire(
    emb: &PlanarEmbedding,
    vertex_colors: &[Color],
    edge_colors: &[Color],
    face_colors: &[Color],
) -> Result<Vec<Violation>> {
    check_complete(face_colors, emb.f(), "face coloring")?;
    let mut out = verify_total(emb, vertex_colors, edge_colors)?;
    for eid in 0..emb.m() {
        let [fa, fb] = emb.faces_of_edge(EdgeId(eid));
        if fa != fb && face_colors[fa.0] == face_colors[fb.0] {
            let (fa, fb) = (fa.min(fb), fa.max(fb));
            out.push(Violation {
                kind: ViolationKind::FaceFace,
                a: Element::Face(fa),
                b: Element::Face(fb),
                color: face_colors[fa.0],
            });
        }
    }
    for (fid, face) in emb.faces().iter().enumerate() {
        let mut verts: Vec<VertexId> = face.vertices.clone();
        verts.sort_unstable();
        verts.dedup();
        for v in verts {
            if face_colors[fid] == vertex_colors[v.0] {
                out.push(Violation {
                    kind: ViolationKind::FaceVertex,
                    a: Element::Face(FaceId(fid)),
                    b: Element::Vertex(v),
                    color: face_colors[fid],
                });
            }
        }
        let mut es: Vec<EdgeId> = face.edges.clone();
        es.sort_unstable();
        es.dedup();
        for e in es {
            if face_colors[fid] == edge_colors[e.0] {
                out.push(Violation {
                    kind: ViolationKind::FaceEdge,
                    a: Element::Face(FaceId(fid)),
                    b: Element::Edge(e),
                    color: face_colors[fid],
                });
            }
        }
    }
    out.sort_by_key(|v| (element_key(v.a), element_key(v.b)));
    out.dedup();
    Ok(out)
}

fn element_key(e: Element) -> (u8, usize) {
    match e {
        Element::Vertex(v) => (0, v.0),
        Element::Edge(e) => (1, e.0),
        Element::Face(f) => (2, f.0),
    }
}

/// All conflicting element pairs of the entire-coloring universe, as indices
/// into the flattened element list `V ++ E ++ F`. The exact entire oracle
/// colors exactly this graph, so checker and oracle share one incidence
/// definition.
pub fn entire_conflict_pairs(emb: &PlanarEmbedding) -> Vec<(usize, usize)> {
    let n = emb.n();
    let m = emb.m();
    let vert = |v: VertexId| v.0;
    let edge = |e: EdgeId| n + e.0;
    let face = |f: FaceId| n + m + f.0;
    let mut pairs = Vec::new();
    for (eid, &(u, v)) in emb.edges().iter().enumerate() {
        let e = EdgeId(eid);
        pairs.push((vert(u), vert(v)));
        pairs.push((vert(u), edge(e)));
        pairs.push((vert(v), edge(e)));
    }
    for v in 0..n {
        let slots = emb.edge_slots(VertexId(v));
        for i in 0..slots.len() {
            for j in (i + 1)..slots.len() {
                pairs.push((edge(slots[i]), edge(slots[j])));
            }
        }
    }
    for eid in 0..m {
        let [fa, fb] = emb.faces_of_edge(EdgeId(eid));
        if fa != fb {
            pairs.push((face(fa), face(fb)));
        }
    }
    for (fid, f) in emb.faces().iter().enumerate() {
        for &v in &f.vertices {
            pairs.push((face(FaceId(fid)), vert(v)));
        }
        for &e in &f.edges {
            pairs.push((face(FaceId(fid)), edge(e)));
        }
    }
    for p in &mut pairs {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named_instance;

    #[test]
    fn monochromatic_k4_has_six_violations() {
        let emb = named_instance("k4").unwrap();
        let v = verify_vertex(&emb, &[1, 1, 1, 1]).unwrap();
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|x| x.kind == ViolationKind::VertexVertex));
    }

    #[test]
    fn k4_reference_total_witness_is_clean() {
        // Vertices 1..4; edges on the {1..5} palette: the opposite pairs
        // (01,23), (02,13), (03,12) colored 5/5, 2/1, 3/4.
        let emb = named_instance("k4").unwrap();
        let vc = vec![1, 2, 3, 4];
        let mut ec = vec![0; emb.m()];
        let pairs: [((usize, usize), Color); 6] = [
            ((0, 1), 5),
            ((2, 3), 5),
            ((0, 2), 2),
            ((1, 3), 1),
            ((0, 3), 3),
            ((1, 2), 4),
        ];
        for ((a, b), c) in pairs {
            let e = emb.edge_between(VertexId(a), VertexId(b)).unwrap();
            ec[e.0] = c;
        }
        let v = verify_total(&emb, &vc, &ec).unwrap();
        assert!(v.is_empty(), "violations: {v:?}");
    }

    #[test]
    fn flipping_one_vertex_yields_its_degree_in_violations() {
        let emb = named_instance("cube").unwrap();
        // Proper 2-coloring of the bipartite cube.
        let mut colors = vec![0usize; emb.n()];
        let dist = emb.bfs_distances(VertexId(0));
        for v in 0..emb.n() {
            colors[v] = 1 + dist[v] % 2;
        }
        assert!(verify_vertex(&emb, &colors).unwrap().is_empty());
        // Flip vertex 0 to its neighbors' color.
        colors[0] = 2;
        let v = verify_vertex(&emb, &colors).unwrap();
        assert_eq!(v.len(), emb.degree(VertexId(0)));
    }

    #[test]
    fn incomplete_coloring_is_rejected() {
        let emb = named_instance("k4").unwrap();
        assert!(matches!(
            verify_vertex(&emb, &[1, 2, 3]).unwrap_err(),
            Error::IncompleteColoring(_)
        ));
        assert!(matches!(
            verify_vertex(&emb, &[1, 2, 3, 0]).unwrap_err(),
            Error::IncompleteColoring(_)
        ));
    }
}
