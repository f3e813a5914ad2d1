//! Spiral-chain decomposition of a plane embedding, with triangle
//! classification, chain segmentation, sailing-boat detection, per-vertex
//! configuration sequences, and the non-spiral structure used by the
//! triangle-free coloring pathway.
//!
//! Construction walks the outer cycle clockwise from the start vertex and
//! keeps turning inward: at each vertex the walk continues to the first
//! unvisited neighbor scanning the clockwise rotation from the predecessor.
//! When no unvisited neighbor remains, a new chain starts at the unvisited
//! vertex closest (BFS hops, ties to the smallest id) to the last one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embedding::{EdgeId, Face, FaceId, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};

/// Spiral walk direction. Clockwise follows the outer face's dart cycle.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Clockwise,
    Counterclockwise,
}

/// Tag of every graph edge under a decomposition.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeTag {
    Spiral,
    NonSpiral,
}

/// Internal triangular face class by spiral edge count: alpha has none,
/// beta one, gamma two.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleClass {
    Alpha,
    Beta,
    Gamma,
}

/// Side of a triangle relative to a chain vertex: lower faces sit toward
/// earlier spiral revolutions, upper faces toward later ones.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleSide {
    Lower,
    Upper,
}

/// One spiral chain: an ordered vertex path; consecutive pairs are spiral
/// edges, and the link edges are the spiral edges descending between
/// boundary layers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpiralChain {
    pub vertices: Vec<VertexId>,
    pub link_edges: Vec<EdgeId>,
}

impl SpiralChain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Spiral edges of this chain in walk order.
    pub fn spiral_edges(&self, emb: &PlanarEmbedding) -> Vec<EdgeId> {
        self.vertices
            .windows(2)
            .map(|w| emb.edge_between(w[0], w[1]).expect("chain edges exist"))
            .collect()
    }
}

/// The full decomposition: chains partition the vertex set and every edge is
/// tagged spiral or non-spiral.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpiralDecomposition {
    pub chains: Vec<SpiralChain>,
    pub edge_tags: Vec<EdgeTag>,
    /// Global visit index of every vertex.
    pub spiral_order: Vec<usize>,
    /// Chain index of every vertex.
    pub chain_of: Vec<usize>,
    /// Position of every vertex inside its chain.
    pub index_in_chain: Vec<usize>,
    pub direction: Direction,
    pub start: VertexId,
}

impl SpiralDecomposition {
    pub fn is_spiral_edge(&self, e: EdgeId) -> bool {
        self.edge_tags[e.0] == EdgeTag::Spiral
    }

    /// Chain predecessor of `v`, if any.
    pub fn chain_prev(&self, v: VertexId) -> Option<VertexId> {
        let c = &self.chains[self.chain_of[v.0]];
        let i = self.index_in_chain[v.0];
        (i > 0).then(|| c.vertices[i - 1])
    }

    /// Chain successor of `v`, if any.
    pub fn chain_next(&self, v: VertexId) -> Option<VertexId> {
        let c = &self.chains[self.chain_of[v.0]];
        let i = self.index_in_chain[v.0];
        c.vertices.get(i + 1).copied()
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }
}

/// Decompose the embedding into spiral chains starting at `start`.
///
/// Isolated-vertex chains are permitted; chains always partition the vertex
/// set and the spiral/non-spiral tags partition the edge set. Descent
/// choices are searched with a bounded lookahead so the walk completes as a
/// single chain whenever the turn rule admits one (the internal-face census
/// identity needs exactly that); instances that defeat the budget fall back
/// to the greedy walk with restarts at the closest unvisited vertex.
pub fn decompose(emb: &PlanarEmbedding, start: VertexId, direction: Direction) -> SpiralDecomposition {
    // The outer cycle tolerates either traversal sense relative to its
    // stored trace; whichever keeps the inward turn rule hugging the
    // previous revolution wins. Revolution-level search first, then the
    // bounded turn-rule search as a rescue, then the greedy layered walk.
    for outer_dir in [direction, direction.flip()] {
        let forced = forced_outer_prefix(emb, start, outer_dir);
        if let Some(walk) = single_chain_search(emb, &forced, direction, 30_000, 0) {
            return assemble(emb, vec![walk], start, direction);
        }
    }
    // Suffix-rotation walks relocate a stuck end without giving up the
    // prefix; salted attempts explore different rotation schedules.
    for salt in 0..=10u64 {
        for outer_dir in [direction, direction.flip()] {
            let forced = forced_outer_prefix(emb, start, outer_dir);
            if let Some(walk) = rotation_walk_search(emb, &forced, direction, salt) {
                return assemble(emb, vec![walk], start, direction);
            }
        }
    }
    for outer_dir in [direction, direction.flip()] {
        let forced = forced_outer_prefix(emb, start, outer_dir);
        if let Some(walk) = revolution_search(emb, &forced, direction, 30_000) {
            return assemble(emb, vec![walk], start, direction);
        }
    }
    // Salted restarts perturb the turn-rule search: low salts jitter ties,
    // higher salts blur the degree heuristic itself.
    for salt in 1..=10u64 {
        for outer_dir in [direction, direction.flip()] {
            let forced = forced_outer_prefix(emb, start, outer_dir);
            if let Some(walk) =
                single_chain_search(emb, &forced, direction, 200_000, salt)
            {
                return assemble(emb, vec![walk], start, direction);
            }
        }
    }
    let mut best: Option<Vec<Vec<VertexId>>> = None;
    for outer_dir in [direction, direction.flip()] {
        let chains = layered_chains(emb, start, outer_dir, direction);
        if best.as_ref().map_or(true, |b| chains.len() < b.len()) {
            best = Some(chains);
        }
    }
    assemble(emb, best.expect("layered walk always returns chains"), start, direction)
}

/// Depth-first search over revolution sweeps: at each chain end, candidate
/// sweeps are the first-occurrence boundary walks from every descent target
/// in both boundary directions, tried best-tier first. A residual that falls
/// apart into several components prunes the branch (a single path cannot
/// cover both sides of a separation).
fn revolution_search(
    emb: &PlanarEmbedding,
    forced: &[VertexId],
    direction: Direction,
    sweep_budget: usize,
) -> Option<Vec<VertexId>> {
    use std::collections::HashSet;
    let gface_keys: HashSet<Vec<(usize, usize)>> = emb.faces().iter().map(face_key).collect();
    let n = emb.n();
    let mut visited = vec![false; n];
    let mut chain: Vec<VertexId> = forced.to_vec();
    for &v in forced {
        visited[v.0] = true;
    }
    let mut budget = sweep_budget;
    // Failed (chain end, visited count) states: full-boundary sweeps make
    // the visited set layer-determined, so this memo collapses the search.
    let mut dead: HashSet<(usize, usize)> = HashSet::new();
    if rec_revolutions(emb, direction, &gface_keys, &mut chain, &mut visited, &mut budget, &mut dead) {
        Some(chain)
    } else {
        None
    }
}

/// Candidate sweeps from the current chain end, deduped; each is tagged
/// with whether it finishes the whole residual component.
fn sweep_candidates(
    emb: &PlanarEmbedding,
    targets: &[VertexId],
    visited: &[bool],
    gface_keys: &std::collections::HashSet<Vec<(usize, usize)>>,
) -> Option<(usize, Vec<(bool, Vec<VertexId>)>)> {
    let (comp_size, walk) = hole_boundary(emb, targets[0], visited, gface_keys)?;
    if comp_size == 1 {
        return Some((1, vec![(true, vec![targets[0]])]));
    }
    let mut cands: Vec<(bool, Vec<VertexId>)> = Vec::new();
    for reversed in [false, true] {
        for &t in targets {
            if !walk.contains(&t) {
                continue;
            }
            let sweep = first_occurrence_sweep(emb, &walk, t, reversed);
            if cands.iter().any(|(_, s)| *s == sweep) {
                continue;
            }
            let end = *sweep.last().unwrap();
            let finishes = sweep.len() == comp_size;
            let exits_with_descent = emb
                .rotation(end)
                .iter()
                .any(|u| !visited[u.0] && !sweep.contains(u));
            if finishes || exits_with_descent {
                cands.push((finishes, sweep));
            }
        }
    }
    Some((comp_size, cands))
}

/// Greedy completion length from the current state: repeatedly take the
/// longest available sweep. Used as a rollout score to order branches.
fn rollout_len(
    emb: &PlanarEmbedding,
    direction: Direction,
    gface_keys: &std::collections::HashSet<Vec<(usize, usize)>>,
    end: VertexId,
    prev: Option<VertexId>,
    visited: &mut Vec<bool>,
) -> usize {
    let mut added: Vec<VertexId> = Vec::new();
    let mut cur = end;
    let mut cur_prev = prev;
    loop {
        let targets = scan_candidates(emb, cur, cur_prev, direction, visited);
        if targets.is_empty() {
            break;
        }
        let Some((_, cands)) = sweep_candidates(emb, &targets, visited, gface_keys) else {
            break;
        };
        let Some((_, sweep)) = cands.into_iter().map(|(f, s)| (f, s)).max_by_key(|(f, s)| (*f, s.len()))
        else {
            break;
        };
        for &w in &sweep {
            visited[w.0] = true;
            added.push(w);
        }
        cur_prev = if sweep.len() >= 2 { Some(sweep[sweep.len() - 2]) } else { Some(cur) };
        cur = *sweep.last().unwrap();
    }
    let len = added.len();
    for &w in &added {
        visited[w.0] = false;
    }
    len
}

fn rec_revolutions(
    emb: &PlanarEmbedding,
    direction: Direction,
    gface_keys: &std::collections::HashSet<Vec<(usize, usize)>>,
    chain: &mut Vec<VertexId>,
    visited: &mut Vec<bool>,
    budget: &mut usize,
    dead: &mut std::collections::HashSet<(usize, usize)>,
) -> bool {
    let n = emb.n();
    if chain.len() == n {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let vc = *chain.last().unwrap();
    if dead.contains(&(vc.0, chain.len())) {
        return false;
    }
    let prev = if chain.len() >= 2 { Some(chain[chain.len() - 2]) } else { None };
    let targets = scan_candidates(emb, vc, prev, direction, visited);
    if targets.is_empty() {
        dead.insert((vc.0, chain.len()));
        return false;
    }
    let Some((comp_size, cands)) = sweep_candidates(emb, &targets, visited, gface_keys) else {
        dead.insert((vc.0, chain.len()));
        return false;
    };
    // Prune: the unvisited residual must be one component.
    if chain.len() + comp_size != n {
        dead.insert((vc.0, chain.len()));
        return false;
    }
    // Order candidates by rollout score, finishing sweeps first.
    let mut scored: Vec<(usize, Vec<VertexId>)> = Vec::with_capacity(cands.len());
    for (finishes, sweep) in cands {
        if finishes {
            scored.push((2 * n, sweep));
            continue;
        }
        for &w in &sweep {
            visited[w.0] = true;
        }
        let end = *sweep.last().unwrap();
        let sp = if sweep.len() >= 2 { Some(sweep[sweep.len() - 2]) } else { Some(vc) };
        let score = sweep.len() + rollout_len(emb, direction, gface_keys, end, sp, visited);
        for &w in &sweep {
            visited[w.0] = false;
        }
        scored.push((score, sweep));
    }
    scored.sort_by(|a, b| b.0.cmp(&a.0));
    for (_, sweep) in scored {
        for &w in &sweep {
            visited[w.0] = true;
            chain.push(w);
        }
        if rec_revolutions(emb, direction, gface_keys, chain, visited, budget, dead) {
            return true;
        }
        for &w in sweep.iter().rev() {
            chain.pop();
            visited[w.0] = false;
        }
    }
    dead.insert((vc.0, chain.len()));
    false
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Clockwise => Direction::Counterclockwise,
            Direction::Counterclockwise => Direction::Clockwise,
        }
    }
}

/// Extend-and-rotate walk: grow greedily (fewest onward options first) and,
/// when the end has no unvisited neighbor, reverse a suffix after one of the
/// end's visited neighbors so the walk continues from a fresh end. The
/// forced prefix is never disturbed. Deterministic per salt.
fn rotation_walk_search(
    emb: &PlanarEmbedding,
    forced: &[VertexId],
    direction: Direction,
    salt: u64,
) -> Option<Vec<VertexId>> {
    let n = emb.n();
    if forced.len() == n {
        return Some(forced.to_vec());
    }
    let mut rng = crate::gen::SplitMix64::new(0x51A17 ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut walk: Vec<VertexId> = forced.to_vec();
    let mut visited = vec![false; n];
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in walk.iter().enumerate() {
        visited[v.0] = true;
        pos[v.0] = i;
    }
    let mut ud: Vec<usize> = (0..n)
        .map(|v| {
            emb.rotation(VertexId(v))
                .iter()
                .filter(|u| !visited[u.0])
                .count()
        })
        .collect();
    let max_steps = 600 * n;
    for _ in 0..max_steps {
        if walk.len() == n {
            return Some(walk);
        }
        let end = *walk.last().unwrap();
        let prev = (walk.len() >= 2).then(|| walk[walk.len() - 2]);
        let cands = scan_candidates(emb, end, prev, direction, &visited);
        if let Some(&u) = cands.iter().min_by_key(|u| {
            let mut x = (u.0 as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt;
            x ^= x >> 31;
            (ud[u.0], if salt == 0 { 0 } else { x & 7 })
        }) {
            visited[u.0] = true;
            pos[u.0] = walk.len();
            walk.push(u);
            for &w in emb.rotation(u) {
                ud[w.0] = ud[w.0].saturating_sub(1);
            }
            continue;
        }
        // Stuck: rotate. Candidate pivots are visited neighbors of the end
        // whose walk successor lies after the forced prefix.
        let min_idx = forced.len().max(1);
        let mut pivots: Vec<usize> = emb
            .rotation(end)
            .iter()
            .filter_map(|w| {
                let i = pos[w.0];
                (i + 1 >= min_idx && i + 1 < walk.len() - 1).then_some(i + 1)
            })
            .collect();
        if pivots.is_empty() {
            return None;
        }
        // Prefer a rotation whose new end can extend immediately.
        pivots.sort_unstable();
        let productive: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&s| ud[walk[s].0] > 0)
            .collect();
        let s = if !productive.is_empty() {
            productive[rng.below(productive.len())]
        } else {
            pivots[rng.below(pivots.len())]
        };
        walk[s..].reverse();
        for (i, &v) in walk.iter().enumerate().skip(s) {
            pos[v.0] = i;
        }
    }
    None
}

/// Greedy layered fallback: at each chain end take the best available sweep
/// (longest, preferring exits that still have a descent), starting new
/// chains at the closest unvisited vertex when the walk dies.
fn layered_chains(
    emb: &PlanarEmbedding,
    start: VertexId,
    outer_dir: Direction,
    direction: Direction,
) -> Vec<Vec<VertexId>> {
    use std::collections::HashSet;
    let gface_keys: HashSet<Vec<(usize, usize)>> = emb.faces().iter().map(face_key).collect();
    let n = emb.n();
    let mut visited = vec![false; n];
    let mut chains = Vec::new();
    let mut chain: Vec<VertexId> = forced_outer_prefix(emb, start, outer_dir);
    for &v in &chain {
        visited[v.0] = true;
    }
    loop {
        loop {
            let vc = *chain.last().unwrap();
            let prev = if chain.len() >= 2 { Some(chain[chain.len() - 2]) } else { None };
            let targets = scan_candidates(emb, vc, prev, direction, &visited);
            if targets.is_empty() {
                break;
            }
            let sweep = best_greedy_sweep(emb, &targets, &visited, &gface_keys)
                .unwrap_or_else(|| vec![targets[0]]);
            for &w in &sweep {
                visited[w.0] = true;
                chain.push(w);
            }
        }
        chains.push(chain);
        let Some(next) = closest_unvisited(emb, *chains.last().unwrap().last().unwrap(), &visited)
        else {
            break;
        };
        visited[next.0] = true;
        chain = vec![next];
    }
    chains
}

fn best_greedy_sweep(
    emb: &PlanarEmbedding,
    targets: &[VertexId],
    visited: &[bool],
    gface_keys: &std::collections::HashSet<Vec<(usize, usize)>>,
) -> Option<Vec<VertexId>> {
    let (comp_size, walk) = hole_boundary(emb, targets[0], visited, gface_keys)?;
    if comp_size == 1 {
        return Some(vec![targets[0]]);
    }
    let mut best: Option<(usize, Vec<VertexId>)> = None;
    for reversed in [false, true] {
        for &t in targets {
            if !walk.contains(&t) {
                continue;
            }
            let sweep = first_occurrence_sweep(emb, &walk, t, reversed);
            let end = *sweep.last().unwrap();
            let descent = emb
                .rotation(end)
                .iter()
                .any(|u| !visited[u.0] && !sweep.contains(u));
            let score = (sweep.len() == comp_size, descent, sweep.len());
            let score = (score.0 as usize * 2 + score.1 as usize) * (emb.n() + 1) + score.2;
            if best.as_ref().map_or(true, |(s, _)| score > *s) {
                best = Some((score, sweep));
            }
        }
    }
    best.map(|(_, s)| s)
}

fn closest_unvisited(emb: &PlanarEmbedding, from: VertexId, visited: &[bool]) -> Option<VertexId> {
    let dist = emb.bfs_distances(from);
    (0..emb.n())
        .filter(|&v| !visited[v])
        .min_by_key(|&v| (dist[v], v))
        .map(VertexId)
}

/// Canonical dart-cycle key of a face, rotation-normalized.
fn face_key(face: &Face) -> Vec<(usize, usize)> {
    let k = face.len();
    let darts: Vec<(usize, usize)> = (0..k)
        .map(|i| (face.vertices[i].0, face.vertices[(i + 1) % k].0))
        .collect();
    let best = (0..k).min_by_key(|&i| darts[i]).unwrap_or(0);
    (0..k).map(|i| darts[(best + i) % k]).collect()
}

/// Residual component size and the hole boundary walk through `entry`: the
/// face of the restricted embedding that is not a face of the full graph.
fn hole_boundary(
    emb: &PlanarEmbedding,
    entry: VertexId,
    visited: &[bool],
    gface_keys: &std::collections::HashSet<Vec<(usize, usize)>>,
) -> Option<(usize, Vec<VertexId>)> {
    let mut comp = vec![entry];
    let mut in_comp = vec![false; emb.n()];
    in_comp[entry.0] = true;
    let mut qi = 0;
    while qi < comp.len() {
        let v = comp[qi];
        qi += 1;
        for &u in emb.rotation(v) {
            if !visited[u.0] && !in_comp[u.0] {
                in_comp[u.0] = true;
                comp.push(u);
            }
        }
    }
    if comp.len() == 1 {
        return Some((1, vec![entry]));
    }
    let (rot, order) = emb.restrict(&comp);
    let sub = crate::embedding::build_embedding(&rot).ok()?;
    for face in sub.faces() {
        let orig = Face {
            vertices: face.vertices.iter().map(|v| order[v.0]).collect(),
            edges: face.edges.clone(),
        };
        if !gface_keys.contains(&face_key(&orig)) && orig.vertices.contains(&entry) {
            return Some((comp.len(), orig.vertices));
        }
    }
    None
}

/// First occurrences along the boundary walk from `entry`, kept while each
/// next vertex stays adjacent to the sweep end.
fn first_occurrence_sweep(
    emb: &PlanarEmbedding,
    walk: &[VertexId],
    entry: VertexId,
    reversed: bool,
) -> Vec<VertexId> {
    let k = walk.len();
    let pos = walk.iter().position(|&v| v == entry).unwrap();
    let mut out = vec![entry];
    let mut seen = std::collections::HashSet::from([entry]);
    for j in 1..k {
        let w = if reversed { walk[(pos + k - j % k) % k] } else { walk[(pos + j) % k] };
        if seen.contains(&w) {
            continue;
        }
        if !emb.adjacent(*out.last().unwrap(), w) {
            break;
        }
        seen.insert(w);
        out.push(w);
    }
    out
}

/// The outer cycle portion of the first chain, walked against the face-trace
/// direction (the outer trace runs opposite to interior faces, and the
/// inward turn rule is interior-oriented). Degenerate boundaries (cut
/// vertices, trees) stop early and fall through to the turn rule.
fn forced_outer_prefix(emb: &PlanarEmbedding, start: VertexId, direction: Direction) -> Vec<VertexId> {
    let mut verts = vec![start];
    let outer = emb.face(emb.outer_face());
    if let Some(pos) = outer.vertices.iter().position(|&v| v == start) {
        let k = outer.len();
        let mut seen = vec![false; emb.n()];
        seen[start.0] = true;
        for j in 1..k {
            let idx = match direction {
                Direction::Clockwise => (pos + k - j % k) % k,
                Direction::Counterclockwise => (pos + j) % k,
            };
            let w = outer.vertices[idx];
            let end = *verts.last().unwrap();
            if seen[w.0] || !emb.adjacent(end, w) {
                break;
            }
            seen[w.0] = true;
            verts.push(w);
        }
    }
    verts
}

/// Unvisited neighbors of `v` in turn-rule scan order.
fn scan_candidates(
    emb: &PlanarEmbedding,
    v: VertexId,
    prev: Option<VertexId>,
    direction: Direction,
    visited: &[bool],
) -> Vec<VertexId> {
    let rot = emb.rotation(v);
    let d = rot.len();
    if d == 0 {
        return Vec::new();
    }
    let anchor = match prev {
        Some(p) => emb.position_in_rotation(v, p).expect("predecessor is a neighbor"),
        None => d - 1,
    };
    (1..=d)
        .map(|step| match direction {
            Direction::Clockwise => rot[(anchor + step) % d],
            Direction::Counterclockwise => rot[(anchor + d - step % d) % d],
        })
        .filter(|u| !visited[u.0])
        .collect()
}

/// Depth-first search over turn-rule choices for a walk that covers every
/// vertex in one chain. The first candidate at each step is the plain turn
/// rule, so when the greedy walk already succeeds no branching happens.
/// Pruning: a branch dies as soon as some unvisited vertex is stranded
/// (no unvisited neighbors and not adjacent to the walk end) or two pendant
/// vertices compete for the walk's tail; pendant candidates are taken first.
fn single_chain_search(
    emb: &PlanarEmbedding,
    forced: &[VertexId],
    direction: Direction,
    node_budget: usize,
    salt: u64,
) -> Option<Vec<VertexId>> {
    let n = emb.n();
    let mut visited = vec![false; n];
    // Unvisited-neighbor counts for the stranding prunes.
    let mut ud: Vec<usize> = (0..n).map(|v| emb.degree(VertexId(v))).collect();
    let mut walk: Vec<VertexId> = Vec::with_capacity(n);
    let visit = |v: VertexId, visited: &mut Vec<bool>, ud: &mut Vec<usize>| {
        visited[v.0] = true;
        for &u in emb.rotation(v) {
            ud[u.0] -= 1;
        }
    };
    let unvisit = |v: VertexId, visited: &mut Vec<bool>, ud: &mut Vec<usize>| {
        visited[v.0] = false;
        for &u in emb.rotation(v) {
            ud[u.0] += 1;
        }
    };
    for &v in forced {
        visit(v, &mut visited, &mut ud);
        walk.push(v);
    }

    // A position is viable while no unvisited vertex is cut off (zero
    // unvisited neighbors and not reachable as the next step), at most one
    // pendant competes for the walk's tail, and the unvisited subgraph is
    // still connected.
    let viable = |end: VertexId, visited: &[bool], ud: &[usize]| -> bool {
        let mut pendants = 0;
        let mut first_unvisited = None;
        let mut unvisited_count = 0;
        for w in 0..n {
            if visited[w] {
                continue;
            }
            unvisited_count += 1;
            if first_unvisited.is_none() {
                first_unvisited = Some(w);
            }
            let near_end = emb.adjacent(end, VertexId(w));
            match ud[w] {
                0 if !near_end => return false,
                0 | 1 => {
                    if !near_end {
                        pendants += 1;
                        if pendants > 1 {
                            return false;
                        }
                    }
                }
                _ => {}
            }
        }
        let Some(seed) = first_unvisited else { return true };
        let mut seen = vec![false; n];
        seen[seed] = true;
        let mut stack = vec![seed];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in emb.rotation(VertexId(v)) {
                if !visited[u.0] && !seen[u.0] {
                    seen[u.0] = true;
                    reached += 1;
                    stack.push(u.0);
                }
            }
        }
        reached == unvisited_count
    };

    let order_candidates = |v: VertexId, prev: Option<VertexId>, visited: &[bool], ud: &[usize]| {
        let mut cands = scan_candidates(emb, v, prev, direction, visited);
        // Fewest onward options first (stable, so ties keep the scan order);
        // a nonzero salt jitters tie-breaking for the restart schedule.
        if salt == 0 {
            cands.sort_by_key(|u| ud[u.0]);
        } else {
            cands.sort_by_key(|u| {
                let mut x = (u.0 as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    ^ salt.wrapping_mul(0xBF58_476D_1CE4_E5B9);
                x ^= x >> 29;
                let blur = if salt > 6 { (x & 1) as usize } else { 0 };
                (ud[u.0] + blur, x & 15)
            });
        }
        cands
    };

    let mut stack: Vec<(Vec<VertexId>, usize)> = Vec::new();
    let mut budget = node_budget;
    loop {
        if walk.len() == n {
            return Some(walk);
        }
        if budget == 0 {
            // Roll back to the forced prefix before giving up.
            while walk.len() > forced.len() {
                let dropped = walk.pop().unwrap();
                unvisit(dropped, &mut visited, &mut ud);
            }
            return None;
        }
        budget -= 1;
        let v = *walk.last().unwrap();
        let prev = if walk.len() >= 2 { Some(walk[walk.len() - 2]) } else { None };
        let cands = if viable(v, &visited, &ud) {
            order_candidates(v, prev, &visited, &ud)
        } else {
            Vec::new()
        };
        stack.push((cands, 0));
        // Advance to the next untried candidate, backtracking as needed.
        loop {
            let Some((cands, idx)) = stack.last_mut() else { return None };
            if *idx < cands.len() {
                let u = cands[*idx];
                *idx += 1;
                visit(u, &mut visited, &mut ud);
                walk.push(u);
                break;
            }
            stack.pop();
            if walk.len() <= forced.len() {
                return None;
            }
            let dropped = walk.pop().unwrap();
            unvisit(dropped, &mut visited, &mut ud);
        }
    }
}

fn assemble(
    emb: &PlanarEmbedding,
    chains_vertices: Vec<Vec<VertexId>>,
    start: VertexId,
    direction: Direction,
) -> SpiralDecomposition {
    let n = emb.n();
    let mut spiral_order = vec![usize::MAX; n];
    let mut chain_of = vec![usize::MAX; n];
    let mut index_in_chain = vec![usize::MAX; n];
    let mut spiral_edge = vec![false; emb.m()];
    let layer = boundary_layers(emb);
    let mut order_counter = 0usize;
    let mut chains = Vec::with_capacity(chains_vertices.len());
    for (cid, verts) in chains_vertices.into_iter().enumerate() {
        for (i, &v) in verts.iter().enumerate() {
            spiral_order[v.0] = order_counter;
            order_counter += 1;
            chain_of[v.0] = cid;
            index_in_chain[v.0] = i;
        }
        for w in verts.windows(2) {
            let e = emb.edge_between(w[0], w[1]).expect("chain edges exist");
            spiral_edge[e.0] = true;
        }
        let link_edges = verts
            .windows(2)
            .filter(|w| layer[w[0].0] != layer[w[1].0])
            .map(|w| emb.edge_between(w[0], w[1]).unwrap())
            .collect();
        chains.push(SpiralChain { vertices: verts, link_edges });
    }
    let edge_tags = spiral_edge
        .into_iter()
        .map(|s| if s { EdgeTag::Spiral } else { EdgeTag::NonSpiral })
        .collect();
    SpiralDecomposition {
        chains,
        edge_tags,
        spiral_order,
        chain_of,
        index_in_chain,
        direction,
        start,
    }
}

/// Vertex depth as BFS distance from the outer boundary; spiral edges that
/// cross depths are the link edges.
fn boundary_layers(emb: &PlanarEmbedding) -> Vec<usize> {
    let mut layer = vec![usize::MAX; emb.n()];
    let mut frontier: Vec<usize> = Vec::new();
    for &v in &emb.face(emb.outer_face()).vertices {
        if layer[v.0] == usize::MAX {
            layer[v.0] = 0;
            frontier.push(v.0);
        }
    }
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for &u in emb.rotation(VertexId(v)) {
                if layer[u.0] == usize::MAX {
                    layer[u.0] = depth;
                    next.push(u.0);
                }
            }
        }
        frontier = next;
    }
    layer
}

/// Classify every internal face of the decomposition by its spiral edge
/// count. Errors with `NotMaximal` if an internal face is not a triangle.
pub fn classify_triangles(
    dec: &SpiralDecomposition,
    emb: &PlanarEmbedding,
) -> Result<BTreeMap<FaceId, TriangleClass>> {
    let marked: Vec<bool> = dec.edge_tags.iter().map(|t| *t == EdgeTag::Spiral).collect();
    classify_by_marked_edges(emb, &marked)
}

/// Triangle classification against an arbitrary marked edge set: gamma has
/// two marked edges, beta one, alpha none. Used both for spiral tags and for
/// the outer-Hamiltonian-cycle census on maximal outerplanar inputs.
pub fn classify_by_marked_edges(
    emb: &PlanarEmbedding,
    marked: &[bool],
) -> Result<BTreeMap<FaceId, TriangleClass>> {
    let outer = emb.outer_face();
    let mut map = BTreeMap::new();
    for (fid, face) in emb.faces().iter().enumerate() {
        if FaceId(fid) == outer {
            continue;
        }
        if face.len() != 3 {
            return Err(Error::NotMaximal);
        }
        let count = face.edges.iter().filter(|e| marked[e.0]).count();
        let class = match count {
            0 => TriangleClass::Alpha,
            1 => TriangleClass::Beta,
            2 => TriangleClass::Gamma,
            _ => unreachable!("a triangle has at most two path edges"),
        };
        map.insert(FaceId(fid), class);
    }
    Ok(map)
}

/// Internal-face census `(alpha, beta, gamma)`.
pub fn census(classes: &BTreeMap<FaceId, TriangleClass>) -> (usize, usize, usize) {
    let mut c = (0, 0, 0);
    for class in classes.values() {
        match class {
            TriangleClass::Alpha => c.0 += 1,
            TriangleClass::Beta => c.1 += 1,
            TriangleClass::Gamma => c.2 += 1,
        }
    }
    c
}

/// A contiguous slice of one chain inducing an outerplanar sub-embedding;
/// index 1 is the core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralSegment {
    pub chain: usize,
    /// 1-based segment index within its chain.
    pub index: usize,
    pub start: usize,
    pub end: usize,
}

impl SpiralSegment {
    pub fn vertices<'a>(&self, dec: &'a SpiralDecomposition) -> &'a [VertexId] {
        &dec.chains[self.chain].vertices[self.start..self.end]
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Split one chain into greedy maximal prefixes whose vertices induce an
/// outerplanar sub-embedding (all vertices on one face of the induced
/// rotation). The first segment is the core.
pub fn segment(dec: &SpiralDecomposition, emb: &PlanarEmbedding, chain: usize) -> Vec<SpiralSegment> {
    let verts = &dec.chains[chain].vertices;
    let mut segments = Vec::new();
    let mut seg_start = 0usize;
    let mut index = 1usize;
    let mut i = 0usize;
    while i < verts.len() {
        // Extend while the induced subgraph keeps all vertices on one face.
        let mut end = i + 1;
        while end < verts.len() && induces_outerplanar(emb, &verts[seg_start..=end]) {
            end += 1;
        }
        segments.push(SpiralSegment { chain, index, start: seg_start, end });
        index += 1;
        seg_start = end;
        i = end;
    }
    segments
}

/// All segments of all chains.
pub fn all_segments(dec: &SpiralDecomposition, emb: &PlanarEmbedding) -> Vec<Vec<SpiralSegment>> {
    (0..dec.chains.len()).map(|c| segment(dec, emb, c)).collect()
}

fn induces_outerplanar(emb: &PlanarEmbedding, verts: &[VertexId]) -> bool {
    let (rot, order) = emb.restrict(verts);
    let Ok(sub) = crate::embedding::build_embedding(&rot) else {
        return false;
    };
    let want = order.len();
    sub.faces().iter().any(|f| {
        let mut distinct: Vec<usize> = f.vertices.iter().map(|v| v.0).collect();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len() == want
    })
}

/// The wheel-on-five-vertices pattern between two chain stretches: a gamma
/// triangle on the lower chain whose hub also spans three beta triangles to a
/// consecutive upper pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SailingBoat {
    /// Lower-chain triple; the middle vertex is the wheel hub.
    pub lower: [VertexId; 3],
    /// Consecutive upper pair; `upper[0]` is adjacent to `lower[0]`.
    pub upper: [VertexId; 2],
    pub gamma_face: FaceId,
    pub beta_faces: [FaceId; 3],
}

/// Detect every sailing boat of the decomposition.
pub fn find_sailing_boats(dec: &SpiralDecomposition, emb: &PlanarEmbedding) -> Vec<SailingBoat> {
    let mut boats = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let non_spiral = |a: VertexId, b: VertexId| {
        emb.edge_between(a, b)
            .map(|e| !dec.is_spiral_edge(e))
            .unwrap_or(false)
    };
    // Candidate gamma triples (a, b, c) consecutive on a chain with the
    // closing edge non-spiral.
    for chain in &dec.chains {
        for w in chain.vertices.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            if !non_spiral(a, c) {
                continue;
            }
            // Candidate upper pairs (r, s), consecutive on any chain.
            for upper_chain in &dec.chains {
                for p in upper_chain.vertices.windows(2) {
                    for &(r, s) in &[(p[0], p[1]), (p[1], p[0])] {
                        if [r, s].iter().any(|x| [a, b, c].contains(x)) {
                            continue;
                        }
                        if !(non_spiral(r, a) && non_spiral(r, b) && non_spiral(s, b) && non_spiral(s, c)) {
                            continue;
                        }
                        let Some(gamma) = face_of_triangle(emb, a, b, c) else { continue };
                        let Some(b1) = face_of_triangle(emb, a, r, b) else { continue };
                        let Some(b2) = face_of_triangle(emb, b, r, s) else { continue };
                        let Some(b3) = face_of_triangle(emb, b, s, c) else { continue };
                        if seen.insert((gamma, b2)) {
                            boats.push(SailingBoat {
                                lower: [a, b, c],
                                upper: [r, s],
                                gamma_face: gamma,
                                beta_faces: [b1, b2, b3],
                            });
                        }
                    }
                }
            }
        }
    }
    boats
}

fn face_of_triangle(emb: &PlanarEmbedding, x: VertexId, y: VertexId, z: VertexId) -> Option<FaceId> {
    let e = emb.edge_between(x, y)?;
    let mut want: Vec<usize> = vec![x.0, y.0, z.0];
    want.sort_unstable();
    for fid in emb.faces_of_edge(e) {
        let face = emb.face(fid);
        if face.len() == 3 {
            let mut got: Vec<usize> = face.vertices.iter().map(|v| v.0).collect();
            got.sort_unstable();
            if got == want {
                return Some(fid);
            }
        }
    }
    None
}

/// The cyclic triangle-type sequence around a vertex, listed anticlockwise
/// starting from the first lower triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSequence {
    pub entries: Vec<(TriangleClass, TriangleSide)>,
    /// Outer-cycle vertices have one fewer face and every triangle lower.
    pub boundary: bool,
}

impl ConfigSequence {
    /// Compact display form, e.g. `<gl al bl bl bu bu>`.
    pub fn compact(&self) -> String {
        let mut s = String::from("<");
        for (i, (class, side)) in self.entries.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push(match class {
                TriangleClass::Alpha => 'a',
                TriangleClass::Beta => 'b',
                TriangleClass::Gamma => 'g',
            });
            s.push(match side {
                TriangleSide::Lower => 'l',
                TriangleSide::Upper => 'u',
            });
        }
        s.push('>');
        s
    }
}

/// Triangle configuration around `v` under the decomposition. Internal
/// vertices yield `deg(v)` entries; boundary vertices yield `deg(v) - 1`
/// all-lower entries with the boundary flag set.
pub fn config_sequence(
    dec: &SpiralDecomposition,
    emb: &PlanarEmbedding,
    v: VertexId,
) -> Result<ConfigSequence> {
    let classes = classify_triangles(dec, emb)?;
    let outer = emb.outer_face();
    // Anticlockwise fan of sector faces.
    let mut fan: Vec<FaceId> = emb.sector_faces(v);
    fan.reverse();
    let boundary = fan.iter().any(|&f| f == outer);

    let prev = dec.chain_prev(v);
    let next = dec.chain_next(v);
    let order = &dec.spiral_order;
    let side_of = |fid: FaceId| -> TriangleSide {
        let face = emb.face(fid);
        let witnesses: Vec<usize> = face
            .vertices
            .iter()
            .filter(|&&u| u != v && Some(u) != prev && Some(u) != next)
            .map(|u| order[u.0])
            .collect();
        if boundary {
            return TriangleSide::Lower;
        }
        match witnesses.iter().min() {
            Some(&w) => {
                if w < order[v.0] {
                    TriangleSide::Lower
                } else {
                    TriangleSide::Upper
                }
            }
            // Corner triangle {prev, v, next}: hugs the inward turn.
            None => TriangleSide::Upper,
        }
    };

    let mut entries: Vec<(TriangleClass, TriangleSide)> = Vec::new();
    let mut rotate_anchor = 0usize;
    let internal: Vec<FaceId> = fan.iter().copied().filter(|&f| f != outer).collect();
    for &fid in &internal {
        let class = *classes.get(&fid).ok_or(Error::NotMaximal)?;
        entries.push((class, side_of(fid)));
    }
    // Start at the first lower triangle (beginning of a lower run).
    let k = entries.len();
    if k > 0 {
        if boundary {
            // Start just after the outer face in the anticlockwise fan.
            let outer_pos = fan.iter().position(|&f| f == outer).unwrap();
            rotate_anchor = internal
                .iter()
                .position(|&f| f == fan[(outer_pos + 1) % fan.len()])
                .unwrap_or(0);
        } else {
            for i in 0..k {
                let prev_side = entries[(i + k - 1) % k].1;
                if entries[i].1 == TriangleSide::Lower && prev_side != TriangleSide::Lower {
                    rotate_anchor = i;
                    break;
                }
            }
        }
        entries.rotate_left(rotate_anchor);
    }
    Ok(ConfigSequence { entries, boundary })
}

/// One tree or cyclic component of the non-spiral edge subgraph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleComponent {
    pub vertices: Vec<VertexId>,
    /// Fundamental cycles of the component, each as a vertex list.
    pub cycles: Vec<Vec<VertexId>>,
}

/// Components of the non-spiral subgraph over all vertices (isolated
/// vertices count as singleton trees), with the odd-cycle count.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonSpiralStructure {
    pub trees: Vec<Vec<VertexId>>,
    pub cycle_components: Vec<CycleComponent>,
    pub odd_cycle_count: usize,
}

impl NonSpiralStructure {
    pub fn spans(&self, n: usize) -> bool {
        let total: usize = self.trees.iter().map(Vec::len).sum::<usize>()
            + self.cycle_components.iter().map(|c| c.vertices.len()).sum::<usize>();
        total == n
    }
}

/// Classify the connected components of the non-spiral edge subgraph.
pub fn nonspiral_structure(dec: &SpiralDecomposition, emb: &PlanarEmbedding) -> NonSpiralStructure {
    let n = emb.n();
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (eid, tag) in dec.edge_tags.iter().enumerate() {
        if *tag == EdgeTag::NonSpiral {
            let (u, v) = emb.endpoints(EdgeId(eid));
            adj[u.0].push(v);
            adj[v.0].push(u);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        if comp[v] != usize::MAX {
            continue;
        }
        let cid = components.len();
        let mut stack = vec![v];
        comp[v] = cid;
        let mut verts = Vec::new();
        while let Some(x) = stack.pop() {
            verts.push(VertexId(x));
            for &u in &adj[x] {
                if comp[u.0] == usize::MAX {
                    comp[u.0] = cid;
                    stack.push(u.0);
                }
            }
        }
        verts.sort_unstable();
        components.push(verts);
    }

    let mut trees = Vec::new();
    let mut cycle_components = Vec::new();
    let mut odd = 0usize;
    for verts in components {
        let edge_count: usize = verts
            .iter()
            .map(|v| adj[v.0].len())
            .sum::<usize>()
            / 2;
        if edge_count < verts.len() {
            trees.push(verts);
            continue;
        }
        // Fundamental cycles from a DFS tree of the component.
        let cycles = fundamental_cycles(&adj, &verts);
        odd += cycles.iter().filter(|c| c.len() % 2 == 1).count();
        cycle_components.push(CycleComponent { vertices: verts, cycles });
    }
    NonSpiralStructure { trees, cycle_components, odd_cycle_count: odd }
}

fn fundamental_cycles(adj: &[Vec<VertexId>], verts: &[VertexId]) -> Vec<Vec<VertexId>> {
    use std::collections::HashMap;
    let root = verts[0];
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut depth: HashMap<usize, usize> = HashMap::new();
    parent.insert(root.0, root.0);
    depth.insert(root.0, 0);
    let mut order = vec![root.0];
    let mut qi = 0;
    while qi < order.len() {
        let v = order[qi];
        qi += 1;
        for &u in &adj[v] {
            if !parent.contains_key(&u.0) {
                parent.insert(u.0, v);
                depth.insert(u.0, depth[&v] + 1);
                order.push(u.0);
            }
        }
    }
    let mut cycles = Vec::new();
    let mut seen_extra = std::collections::HashSet::new();
    for &v in verts {
        for &u in &adj[v.0] {
            if parent[&v.0] == u.0 || parent[&u.0] == v.0 {
                continue;
            }
            let key = (v.0.min(u.0), v.0.max(u.0));
            if !seen_extra.insert(key) {
                continue;
            }
            // Path v..lca..u plus the extra edge.
            let (mut a, mut b) = (v.0, u.0);
            let mut pa = vec![a];
            let mut pb = vec![b];
            while depth[&a] > depth[&b] {
                a = parent[&a];
                pa.push(a);
            }
            while depth[&b] > depth[&a] {
                b = parent[&b];
                pb.push(b);
            }
            while a != b {
                a = parent[&a];
                b = parent[&b];
                pa.push(a);
                pb.push(b);
            }
            pb.pop();
            pb.reverse();
            pa.extend(pb);
            cycles.push(pa.into_iter().map(VertexId).collect());
        }
    }
    cycles
}
