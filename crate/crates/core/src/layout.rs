//! Barycentric straight-line layout: the outer face is pinned to a regular
//! polygon and every interior vertex is placed at the average of its
//! neighbors, solved iteratively to a tight residual. For 3-connected plane
//! inputs the drawing is planar.

use serde::{Deserialize, Serialize};

use crate::embedding::{PlanarEmbedding, VertexId};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayoutResult {
    /// Unitless coordinates per vertex.
    pub positions: Vec<(f64, f64)>,
    /// Vertices pinned to the outer polygon, in boundary order.
    pub outer_polygon: Vec<VertexId>,
    /// Set when the input is not 3-connected, in which case planarity of the
    /// drawing is not guaranteed.
    pub not_three_connected: bool,
}

/// Place the graph with the barycentric rule. Deterministic: fixed iteration
/// order, convergence at residual < 1e-9 (or 200 * n sweeps).
pub fn tutte_layout(emb: &PlanarEmbedding) -> LayoutResult {
    let n = emb.n();
    let outer_face = emb.face(emb.outer_face());
    let mut outer_polygon: Vec<VertexId> = Vec::new();
    for &v in &outer_face.vertices {
        if !outer_polygon.contains(&v) {
            outer_polygon.push(v);
        }
    }
    let k = outer_polygon.len().max(1);
    let mut positions = vec![(0.0f64, 0.0f64); n];
    let mut pinned = vec![false; n];
    for (i, &v) in outer_polygon.iter().enumerate() {
        let angle = std::f64::consts::TAU * (i as f64) / (k as f64);
        positions[v.0] = (angle.cos(), angle.sin());
        pinned[v.0] = true;
    }

    // Gauss-Seidel sweeps of the averaging rule.
    let max_sweeps = 200 * n.max(1);
    for _ in 0..max_sweeps {
        let mut residual = 0.0f64;
        for v in 0..n {
            if pinned[v] {
                continue;
            }
            let rot = emb.rotation(VertexId(v));
            if rot.is_empty() {
                continue;
            }
            let (mut sx, mut sy) = (0.0, 0.0);
            for &u in rot {
                sx += positions[u.0].0;
                sy += positions[u.0].1;
            }
            let nx = sx / rot.len() as f64;
            let ny = sy / rot.len() as f64;
            residual = residual
                .max((nx - positions[v].0).abs())
                .max((ny - positions[v].1).abs());
            positions[v] = (nx, ny);
        }
        if residual < 1e-9 {
            break;
        }
    }

    LayoutResult {
        positions,
        outer_polygon,
        not_three_connected: !is_three_connected(emb),
    }
}

/// Exact 3-connectivity at desk scale: n > 3 and no vertex pair disconnects
/// the graph.
pub fn is_three_connected(emb: &PlanarEmbedding) -> bool {
    let n = emb.n();
    if n <= 3 {
        return n == 3 && emb.m() == 3;
    }
    if emb.min_degree() < 3 {
        return false;
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !connected_without(emb, a, b) {
                return false;
            }
        }
    }
    true
}

fn connected_without(emb: &PlanarEmbedding, a: usize, b: usize) -> bool {
    let n = emb.n();
    let start = (0..n).find(|&v| v != a && v != b);
    let Some(start) = start else { return true };
    let mut seen = vec![false; n];
    seen[a] = true;
    seen[b] = true;
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in emb.rotation(VertexId(v)) {
            if !seen[u.0] {
                seen[u.0] = true;
                count += 1;
                stack.push(u.0);
            }
        }
    }
    count == n - 2
}

/// Segment intersection test used as the planarity oracle for drawings:
/// true if any two non-incident edges cross.
pub fn has_crossings(emb: &PlanarEmbedding, layout: &LayoutResult) -> bool {
    let edges = emb.edges();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_cross(
                layout.positions[a.0],
                layout.positions[b.0],
                layout.positions[c.0],
                layout.positions[d.0],
            ) {
                return true;
            }
        }
    }
    false
}

fn segments_cross(p1: (f64, f64), p2: (f64, f64), p3: (f64, f64), p4: (f64, f64)) -> bool {
    fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
    }
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named_instance;

    #[test]
    fn k4_inner_vertex_at_centroid() {
        let emb = named_instance("k4").unwrap();
        let layout = tutte_layout(&emb);
        assert!(!layout.not_three_connected);
        // Vertex 3 is interior; the centroid of the unit triangle is origin.
        assert!(layout.positions[3].0.abs() < 1e-8);
        assert!(layout.positions[3].1.abs() < 1e-8);
    }

    #[test]
    fn octahedron_drawing_has_no_crossings() {
        let emb = named_instance("octahedron").unwrap();
        let layout = tutte_layout(&emb);
        assert!(!layout.not_three_connected);
        assert!(!has_crossings(&emb, &layout));
    }

    #[test]
    fn layout_is_deterministic() {
        let emb = named_instance("icosahedron").unwrap();
        let a = tutte_layout(&emb);
        let b = tutte_layout(&emb);
        for (p, q) in a.positions.iter().zip(&b.positions) {
            assert!((p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
        }
    }

    #[test]
    fn path_is_flagged_not_three_connected() {
        let emb = crate::embedding::build_embedding(&crate::embedding::RotationSystem::new(vec![
            vec![1],
            vec![0, 2],
            vec![1],
        ]))
        .unwrap();
        let layout = tutte_layout(&emb);
        assert!(layout.not_three_connected);
    }
}
