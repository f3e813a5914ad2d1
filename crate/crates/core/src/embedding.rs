//! Combinatorial plane embeddings: rotation systems, face tracing, duals, and
//! the structural predicates the coloring algorithms rely on.
//!
//! A graph is given as a rotation system (per-vertex clockwise neighbor
//! order). Faces are traced with the next-dart rule: after arriving at `v`
//! along the dart `(u, v)`, leave by the neighbor following `u` in `v`'s
//! clockwise rotation. The Euler formula `n - m + f = 2` certifies that the
//! rotation system describes a sphere embedding; no planarity testing of
//! abstract graphs is attempted.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense 0-based vertex index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Dense 0-based undirected edge index. Each edge has two directed darts.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

/// Dense 0-based face index.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct FaceId(pub usize);

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Per-vertex cyclic neighbor order, interpreted as clockwise in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub neighbors: Vec<Vec<VertexId>>,
}

impl RotationSystem {
    pub fn new(neighbors: Vec<Vec<usize>>) -> Self {
        RotationSystem {
            neighbors: neighbors
                .into_iter()
                .map(|l| l.into_iter().map(VertexId).collect())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Parse the `.rot` text format: line 1 is `n`, then `n` lines
    /// `vid: u1 u2 ... uk` (clockwise neighbors), optionally followed by
    /// `outer: f` selecting the outer face index.
    pub fn parse_rot(text: &str) -> Result<(RotationSystem, Option<FaceId>)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut neighbors = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut outer = None;
        for line in lines {
            let (head, tail) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `vid: ...` line, got {line:?}")))?;
            let head = head.trim();
            if head == "outer" {
                let f: usize = tail
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad outer face index: {e}")))?;
                outer = Some(FaceId(f));
                continue;
            }
            let vid: usize = head
                .parse()
                .map_err(|e| Error::Parse(format!("bad vertex id {head:?}: {e}")))?;
            if vid >= n {
                return Err(Error::Parse(format!("vertex id {vid} out of range 0..{n}")));
            }
            if seen[vid] {
                return Err(Error::Parse(format!("duplicate rotation line for vertex {vid}")));
            }
            seen[vid] = true;
            for tok in tail.split_whitespace() {
                let u: usize = tok
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad neighbor {tok:?}: {e}")))?;
                if u >= n {
                    return Err(Error::Parse(format!("neighbor {u} out of range 0..{n}")));
                }
                neighbors[vid].push(VertexId(u));
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            if !neighbors.iter().all(|l| l.is_empty()) {
                return Err(Error::Parse(format!("missing rotation line for vertex {missing}")));
            }
        }
        Ok((RotationSystem { neighbors }, outer))
    }
}

/// One face of the embedding, as parallel closed walks over vertices and the
/// edges between consecutive walk vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

/// Immutable plane embedding of a simple connected graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<VertexId>>,
    /// Edge id at each rotation slot, parallel to `rotation`.
    edge_slots: Vec<Vec<EdgeId>>,
    /// Endpoints with `u < v`.
    edges: Vec<(VertexId, VertexId)>,
    faces: Vec<Face>,
    /// Per edge: face of dart `u -> v` and face of dart `v -> u` (with `u < v`).
    dart_faces: Vec<[FaceId; 2]>,
    outer: FaceId,
    /// Whether the outer face was given explicitly rather than derived.
    outer_overridden: bool,
    /// Position of `u` in `rotation[v]`.
    #[serde(skip)]
    pos_in: HashMap<(usize, usize), usize>,
}

/// Dual graph: one vertex per face, one edge per primal edge. Multi-edges and
/// loops are retained so face adjacency multiplicity is preserved.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub face_count: usize,
    /// `(face of u->v dart, face of v->u dart, primal edge)`.
    pub edges: Vec<(FaceId, FaceId, EdgeId)>,
    /// Around each face, the neighboring face for every boundary dart, in
    /// boundary order; parallel to the primal face walks.
    pub rotation: Vec<Vec<(FaceId, EdgeId)>>,
}

/// Validate a rotation system and trace its faces.
///
/// Errors: `NonSimple` (self-loops, repeated or asymmetric neighbor lists),
/// `Disconnected`, `NotPlanarEmbedding` (Euler check failed). The outer face
/// defaults to the longest face, ties broken by lexicographically smallest
/// sorted vertex list, then smallest dart sequence.
pub fn build_embedding(rotation: &RotationSystem) -> Result<PlanarEmbedding> {
    build_embedding_with_outer(rotation, None)
}

/// `build_embedding` with an explicit outer face override.
pub fn build_embedding_with_outer(
    rotation: &RotationSystem,
    outer: Option<FaceId>,
) -> Result<PlanarEmbedding> {
    let n = rotation.vertex_count();
    if n == 0 {
        return Err(Error::Parse("empty graph".into()));
    }
    let rot = rotation.neighbors.clone();

    // Simplicity checks.
    let mut pos_in = HashMap::new();
    for (v, list) in rot.iter().enumerate() {
        for (i, &u) in list.iter().enumerate() {
            if u.0 >= n {
                return Err(Error::NonSimple(format!("neighbor {} out of range", u.0)));
            }
            if u.0 == v {
                return Err(Error::NonSimple(format!("self-loop at vertex {v}")));
            }
            if pos_in.insert((u.0, v), i).is_some() {
                return Err(Error::NonSimple(format!("repeated neighbor {} at vertex {v}", u.0)));
            }
        }
    }
    for (v, list) in rot.iter().enumerate() {
        for &u in list {
            if !pos_in.contains_key(&(v, u.0)) {
                return Err(Error::NonSimple(format!(
                    "asymmetric adjacency: {v} lists {} but not vice versa",
                    u.0
                )));
            }
        }
    }

    // Connectivity.
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &u in &rot[v] {
            if !seen[u.0] {
                seen[u.0] = true;
                reached += 1;
                queue.push_back(u.0);
            }
        }
    }
    if reached != n {
        return Err(Error::Disconnected);
    }

    // Edge ids.
    let mut edges = Vec::new();
    let mut edge_slots: Vec<Vec<EdgeId>> = rot.iter().map(|l| vec![EdgeId(0); l.len()]).collect();
    let mut edge_of = HashMap::new();
    for (v, list) in rot.iter().enumerate() {
        for (i, &u) in list.iter().enumerate() {
            let key = (v.min(u.0), v.max(u.0));
            let eid = *edge_of.entry(key).or_insert_with(|| {
                edges.push((VertexId(key.0), VertexId(key.1)));
                EdgeId(edges.len() - 1)
            });
            edge_slots[v][i] = eid;
        }
    }
    let m = edges.len();

    // Face tracing over darts. A dart is (v, slot) = the dart v -> rot[v][slot].
    let slot_base: Vec<usize> = rot
        .iter()
        .scan(0usize, |acc, l| {
            let b = *acc;
            *acc += l.len();
            Some(b)
        })
        .collect();
    let dart_count = 2 * m;
    let mut face_of_slot = vec![usize::MAX; dart_count];
    let mut faces = Vec::new();
    for v0 in 0..n {
        for s0 in 0..rot[v0].len() {
            if face_of_slot[slot_base[v0] + s0] != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut fverts = Vec::new();
            let mut fedges = Vec::new();
            let (mut v, mut s) = (v0, s0);
            loop {
                face_of_slot[slot_base[v] + s] = fid;
                fverts.push(VertexId(v));
                fedges.push(edge_slots[v][s]);
                let u = rot[v][s].0;
                // Arrived at u along (v, u): leave by the neighbor after v.
                let pv = pos_in[&(v, u)];
                let ns = (pv + 1) % rot[u].len();
                v = u;
                s = ns;
                if v == v0 && s == s0 {
                    break;
                }
            }
            faces.push(Face { vertices: fverts, edges: fedges });
        }
    }
    let f = faces.len();
    if n + f != m + 2 {
        return Err(Error::NotPlanarEmbedding { n, m, f });
    }

    // Per-edge dart faces.
    let mut dart_faces = vec![[FaceId(0); 2]; m];
    for (v, list) in rot.iter().enumerate() {
        for (i, &u) in list.iter().enumerate() {
            let eid = edge_slots[v][i].0;
            let side = usize::from(v > u.0);
            dart_faces[eid][side] = FaceId(face_of_slot[slot_base[v] + i]);
        }
    }

    // Outer face selection.
    let outer_overridden = outer.is_some();
    let outer = match outer {
        Some(fid) => {
            if fid.0 >= f {
                return Err(Error::Parse(format!("outer face index {} out of range 0..{f}", fid.0)));
            }
            fid
        }
        None => {
            let mut best = FaceId(0);
            for cand in 1..f {
                if outer_key(&faces[cand]) < outer_key(&faces[best.0]) {
                    best = FaceId(cand);
                }
            }
            best
        }
    };

    Ok(PlanarEmbedding {
        rotation: rot,
        edge_slots,
        edges,
        faces,
        dart_faces,
        outer,
        outer_overridden,
        pos_in,
    })
}

/// Ordering key for outer-face selection: longest first, then smallest sorted
/// vertex list, then smallest dart sequence.
fn outer_key(face: &Face) -> (isize, Vec<usize>, Vec<usize>) {
    let mut sorted: Vec<usize> = face.vertices.iter().map(|v| v.0).collect();
    sorted.sort_unstable();
    // Canonical dart start: rotate the walk to begin at the smallest dart.
    let k = face.len();
    let mut best_rot = 0;
    for i in 1..k {
        let a = (face.vertices[i].0, face.vertices[(i + 1) % k].0);
        let b = (face.vertices[best_rot].0, face.vertices[(best_rot + 1) % k].0);
        if a < b {
            best_rot = i;
        }
    }
    let walk: Vec<usize> = (0..k).map(|i| face.vertices[(best_rot + i) % k].0).collect();
    (-(face.len() as isize), sorted, walk)
}

impl PlanarEmbedding {
    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn f(&self) -> usize {
        self.faces.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    /// Clockwise neighbor order of `v`.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v.0]
    }

    /// Edge ids parallel to `rotation(v)`.
    pub fn edge_slots(&self, v: VertexId) -> &[EdgeId] {
        &self.edge_slots[v.0]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.0]
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let pos = self.pos_in.get(&(u.0, v.0))?;
        Some(self.edge_slots[v.0][*pos])
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.pos_in.contains_key(&(u.0, v.0))
    }

    /// Position of `u` in `v`'s rotation.
    pub fn position_in_rotation(&self, v: VertexId, u: VertexId) -> Option<usize> {
        self.pos_in.get(&(u.0, v.0)).copied()
    }

    /// All faces, in trace order. The sum of face lengths is `2m`.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f.0]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn outer_overridden(&self) -> bool {
        self.outer_overridden
    }

    /// Face on the side of the dart `v -> u`.
    pub fn face_of_dart(&self, v: VertexId, u: VertexId) -> FaceId {
        let e = self.edge_between(v, u).expect("dart endpoints must be adjacent");
        self.dart_faces[e.0][usize::from(v.0 > u.0)]
    }

    /// The two faces incident to an edge (equal for bridges).
    pub fn faces_of_edge(&self, e: EdgeId) -> [FaceId; 2] {
        self.dart_faces[e.0]
    }

    /// Faces around `v`: entry `i` is the face in the sector between
    /// `rotation(v)[i]` and `rotation(v)[i+1]` (clockwise order).
    pub fn sector_faces(&self, v: VertexId) -> Vec<FaceId> {
        let d = self.degree(v);
        (0..d)
            .map(|i| {
                let u = self.rotation[v.0][(i + 1) % d];
                self.face_of_dart(v, u)
            })
            .collect()
    }

    /// Maximal plane graph: every face, including the outer one, is a
    /// triangle, and `n >= 3`.
    pub fn is_maximal_planar(&self) -> bool {
        self.n() >= 3 && self.faces.iter().all(|f| f.len() == 3)
    }

    /// True if the graph (not merely the face set) has no 3-cycle.
    pub fn is_triangle_free(&self) -> bool {
        for &(u, v) in &self.edges {
            let (s, l) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
            for &w in &self.rotation[s.0] {
                if w != l && self.adjacent(w, l) {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Exact detection of cycles with length in `lengths`; supported lengths
    /// are `3..=6` (bounded DFS, each cycle canonicalized at its smallest
    /// vertex).
    pub fn has_cycles_of_length(&self, lengths: &std::collections::BTreeSet<usize>) -> bool {
        assert!(
            lengths.iter().all(|&l| (3..=6).contains(&l)),
            "cycle detection supports lengths 3..=6"
        );
        let Some(&max_len) = lengths.iter().max() else {
            return false;
        };
        // DFS simple paths anchored at their minimum vertex.
        let mut path = Vec::new();
        let mut on_path = vec![false; self.n()];
        for a in 0..self.n() {
            path.clear();
            path.push(a);
            on_path[a] = true;
            if self.cycle_dfs(a, a, 1, max_len, lengths, &mut path, &mut on_path) {
                return true;
            }
            on_path[a] = false;
        }
        false
    }

    fn cycle_dfs(
        &self,
        anchor: usize,
        v: usize,
        depth: usize,
        max_len: usize,
        lengths: &std::collections::BTreeSet<usize>,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
    ) -> bool {
        for &u in &self.rotation[v] {
            let u = u.0;
            if u == anchor && depth >= 3 && lengths.contains(&depth) {
                return true;
            }
            if u <= anchor || on_path[u] || depth + 1 > max_len {
                continue;
            }
            path.push(u);
            on_path[u] = true;
            if self.cycle_dfs(anchor, u, depth + 1, max_len, lengths, path, on_path) {
                return true;
            }
            on_path[u] = false;
            path.pop();
        }
        false
    }

    /// Dual graph, multi-edges and loops retained.
    pub fn dual(&self) -> DualGraph {
        let edges: Vec<(FaceId, FaceId, EdgeId)> = (0..self.m())
            .map(|e| {
                let [fa, fb] = self.dart_faces[e];
                (fa, fb, EdgeId(e))
            })
            .collect();
        let rotation = self
            .faces
            .iter()
            .enumerate()
            .map(|(fid, face)| {
                face.edges
                    .iter()
                    .map(|&e| {
                        let [fa, fb] = self.dart_faces[e.0];
                        let nb = if fa.0 == fid { fb } else { fa };
                        (nb, e)
                    })
                    .collect()
            })
            .collect();
        DualGraph { face_count: self.f(), edges, rotation }
    }

    /// BFS hop distances from `src` over the full graph.
    pub fn bfs_distances(&self, src: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[src.0] = 0;
        let mut queue = VecDeque::from([src.0]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.rotation[v] {
                if dist[u.0] == usize::MAX {
                    dist[u.0] = dist[v] + 1;
                    queue.push_back(u.0);
                }
            }
        }
        dist
    }

    /// Serialize to the `.rot` format. Output always carries the outer face
    /// line, so serialize-parse-serialize is byte-stable.
    pub fn to_rot_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n());
        for (v, list) in self.rotation.iter().enumerate() {
            let neigh: Vec<String> = list.iter().map(|u| u.0.to_string()).collect();
            let _ = writeln!(out, "{v}: {}", neigh.join(" "));
        }
        let _ = writeln!(out, "outer: {}", self.outer.0);
        out
    }

    /// Parse a `.rot` document into a validated embedding.
    pub fn from_rot_str(text: &str) -> Result<PlanarEmbedding> {
        let (rot, outer) = RotationSystem::parse_rot(text)?;
        build_embedding_with_outer(&rot, outer)
    }

    /// DIMACS-like `.col` edge list export (1-based vertex ids).
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.n(), self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u.0 + 1, v.0 + 1);
        }
        out
    }

    /// The rotation system restricted to `keep` (induced sub-embedding).
    /// Vertex ids are compacted in increasing order; returns the mapping.
    pub fn restrict(&self, keep: &[VertexId]) -> (RotationSystem, Vec<VertexId>) {
        let mut included = vec![false; self.n()];
        for &v in keep {
            included[v.0] = true;
        }
        let mut order: Vec<VertexId> = keep.to_vec();
        order.sort_unstable();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v.0] = i;
        }
        let neighbors = order
            .iter()
            .map(|&v| {
                self.rotation[v.0]
                    .iter()
                    .filter(|u| included[u.0])
                    .map(|u| VertexId(new_id[u.0]))
                    .collect()
            })
            .collect();
        (RotationSystem { neighbors }, order)
    }
}

impl DualGraph {
    /// Simple rotation system over faces: loops dropped, parallel edges
    /// collapsed to the first occurrence. Suitable for coloring the dual.
    pub fn simple_rotation(&self) -> RotationSystem {
        let neighbors = self
            .rotation
            .iter()
            .enumerate()
            .map(|(fid, ring)| {
                let mut seen = std::collections::HashSet::new();
                ring.iter()
                    .filter(|(nb, _)| nb.0 != fid && seen.insert(nb.0))
                    .map(|(nb, _)| VertexId(nb.0))
                    .collect()
            })
            .collect();
        RotationSystem { neighbors }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::named_instance;

    pub(crate) fn k4_rotation() -> RotationSystem {
        RotationSystem::new(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]])
    }

    #[test]
    fn k4_counts_and_outer() {
        let emb = build_embedding(&k4_rotation()).unwrap();
        assert_eq!((emb.n(), emb.m(), emb.f()), (4, 6, 4));
        assert!(emb.is_maximal_planar());
        assert!(!emb.is_triangle_free());
        assert_eq!(emb.max_degree(), 3);
        let outer: Vec<usize> = {
            let mut s: Vec<usize> = emb.face(emb.outer_face()).vertices.iter().map(|v| v.0).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(outer, vec![0, 1, 2]);
    }

    #[test]
    fn triangle_faces() {
        let rot = RotationSystem::new(vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        let emb = build_embedding(&rot).unwrap();
        assert_eq!(emb.f(), 2);
        assert!(emb.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn cube_faces_and_predicates() {
        let emb = named_instance("cube").unwrap();
        assert_eq!((emb.n(), emb.m(), emb.f()), (8, 12, 6));
        assert!(emb.faces().iter().all(|f| f.len() == 4));
        assert!(!emb.is_maximal_planar());
        assert!(emb.is_triangle_free());
        assert_eq!(emb.max_degree(), 3);
    }

    #[test]
    fn face_walk_total_length_is_2m() {
        let emb = build_embedding(&k4_rotation()).unwrap();
        let total: usize = emb.faces().iter().map(Face::len).sum();
        assert_eq!(total, 2 * emb.m());
    }

    #[test]
    fn c5_cycle_lengths() {
        let emb = named_instance("c5").unwrap();
        let has = |ls: &[usize]| emb.has_cycles_of_length(&ls.iter().copied().collect());
        assert!(has(&[4, 5]));
        assert!(!has(&[3, 4]));
        assert!(has(&[5]));
    }

    #[test]
    fn disconnected_and_nonsimple_rejected() {
        let rot = RotationSystem::new(vec![vec![1], vec![0], vec![3], vec![2]]);
        assert_eq!(build_embedding(&rot).unwrap_err(), Error::Disconnected);

        let rot = RotationSystem::new(vec![vec![1, 1], vec![0, 0]]);
        assert!(matches!(build_embedding(&rot).unwrap_err(), Error::NonSimple(_)));

        let rot = RotationSystem::new(vec![vec![1, 2], vec![0], vec![]]);
        assert!(matches!(build_embedding(&rot).unwrap_err(), Error::NonSimple(_)));
    }

    /// No cyclic neighbor orders make K5 pass the Euler check: exhaustive
    /// oracle over all rotation systems for n = 5.
    #[test]
    fn k5_admits_no_plane_rotation() {
        // All cyclic orders of a 4-element neighbor list, first element fixed.
        fn cyclic_orders(list: [usize; 4]) -> Vec<Vec<usize>> {
            let mut res = Vec::new();
            let rest = [list[1], list[2], list[3]];
            let mut perm = rest;
            // 3! permutations of the tail.
            let idx = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for ord in idx {
                for (i, &j) in ord.iter().enumerate() {
                    perm[i] = rest[j];
                }
                res.push(vec![list[0], perm[0], perm[1], perm[2]]);
            }
            res
        }
        let neighbor_sets: Vec<[usize; 4]> = (0..5)
            .map(|v| {
                let mut it = (0..5).filter(|&u| u != v);
                [it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
            })
            .collect();
        let options: Vec<Vec<Vec<usize>>> =
            neighbor_sets.into_iter().map(cyclic_orders).collect();
        let mut counter = [0usize; 5];
        let mut found_planar = false;
        'outer: loop {
            let rot = RotationSystem::new((0..5).map(|v| options[v][counter[v]].clone()).collect());
            if build_embedding(&rot).is_ok() {
                found_planar = true;
                break;
            }
            for i in 0..5 {
                counter[i] += 1;
                if counter[i] < options[i].len() {
                    continue 'outer;
                }
                counter[i] = 0;
            }
            break;
        }
        assert!(!found_planar, "K5 must fail the Euler certificate for every rotation");
    }

    #[test]
    fn dual_of_c3_is_two_vertices_three_parallel_edges() {
        let rot = RotationSystem::new(vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        let emb = build_embedding(&rot).unwrap();
        let dual = emb.dual();
        assert_eq!(dual.face_count, 2);
        assert_eq!(dual.edges.len(), 3);
        assert!(dual.edges.iter().all(|&(a, b, _)| a != b));
    }

    #[test]
    fn dual_of_k4_is_k4() {
        let emb = build_embedding(&k4_rotation()).unwrap();
        let dual = emb.dual();
        assert_eq!(dual.face_count, 4);
        assert_eq!(dual.edges.len(), 6);
        let simple = dual.simple_rotation();
        assert!(simple.neighbors.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn rot_round_trip_is_byte_exact() {
        let emb = build_embedding(&k4_rotation()).unwrap();
        let text = emb.to_rot_string();
        let emb2 = PlanarEmbedding::from_rot_str(&text).unwrap();
        assert_eq!(emb2.to_rot_string(), text);
    }

    #[test]
    fn restrict_keeps_embedding_valid() {
        let emb = build_embedding(&k4_rotation()).unwrap();
        let (sub, order) = emb.restrict(&[VertexId(0), VertexId(1), VertexId(2)]);
        assert_eq!(order, vec![VertexId(0), VertexId(1), VertexId(2)]);
        let sub_emb = build_embedding(&sub).unwrap();
        assert_eq!((sub_emb.n(), sub_emb.m(), sub_emb.f()), (3, 3, 2));
    }
}
