//! Exact exponential oracles for small instances: minimum palette sizes for
//! vertex, edge, total, and entire colorings via saturation-ordered
//! backtracking with the first element pinned to color 1.

use crate::embedding::{PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::verify::entire_conflict_pairs;

const MAX_ORACLE_VERTICES: usize = 14;
const MAX_ORACLE_EDGES: usize = 24;

/// Exact chromatic number (n <= 14).
pub fn chromatic_number_exact(emb: &PlanarEmbedding, cap: usize) -> Result<usize> {
    if emb.n() > MAX_ORACLE_VERTICES {
        return Err(Error::TooLarge(format!("n = {} > {MAX_ORACLE_VERTICES}", emb.n())));
    }
    let pairs: Vec<(usize, usize)> =
        emb.edges().iter().map(|&(u, v)| (u.0, v.0)).collect();
    exact_min_colors(emb.n(), &pairs, cap)
}

/// Exact chromatic index (m <= 24).
pub fn chromatic_index_exact(emb: &PlanarEmbedding, cap: usize) -> Result<usize> {
    if emb.m() > MAX_ORACLE_EDGES {
        return Err(Error::TooLarge(format!("m = {} > {MAX_ORACLE_EDGES}", emb.m())));
    }
    let mut pairs = Vec::new();
    for v in 0..emb.n() {
        let slots = emb.edge_slots(VertexId(v));
        for i in 0..slots.len() {
            for j in (i + 1)..slots.len() {
                pairs.push((slots[i].0, slots[j].0));
            }
        }
    }
    exact_min_colors(emb.m(), &pairs, cap)
}

/// Exact total chromatic number over V and E (m <= 24).
pub fn total_chromatic_exact(emb: &PlanarEmbedding, cap: usize) -> Result<usize> {
    if emb.m() > MAX_ORACLE_EDGES {
        return Err(Error::TooLarge(format!("m = {} > {MAX_ORACLE_EDGES}", emb.m())));
    }
    let n = emb.n();
    let mut pairs = Vec::new();
    for (eid, &(u, v)) in emb.edges().iter().enumerate() {
        pairs.push((u.0, v.0));
        pairs.push((u.0, n + eid));
        pairs.push((v.0, n + eid));
    }
    for v in 0..n {
        let slots = emb.edge_slots(VertexId(v));
        for i in 0..slots.len() {
            for j in (i + 1)..slots.len() {
                pairs.push((n + slots[i].0, n + slots[j].0));
            }
        }
    }
    exact_min_colors(n + emb.m(), &pairs, cap)
}

/// Exact entire chromatic number over V, E, and F (m <= 24). The conflict
/// graph is the one `verify_entire` enforces.
pub fn entire_chromatic_exact(emb: &PlanarEmbedding, cap: usize) -> Result<usize> {
    if emb.m() > MAX_ORACLE_EDGES {
        return Err(Error::TooLarge(format!("m = {} > {MAX_ORACLE_EDGES}", emb.m())));
    }
    let pairs = entire_conflict_pairs(emb);
    exact_min_colors(emb.n() + emb.m() + emb.f(), &pairs, cap)
}

/// Minimum colors of the conflict graph given as `pairs` over `size`
/// elements: iterative deepening over k with DSATUR-ordered backtracking.
/// Element 0 is pinned to color 1 and new colors are introduced in order, so
/// color-permutation symmetry is broken.
pub fn exact_min_colors(size: usize, pairs: &[(usize, usize)], cap: usize) -> Result<usize> {
    if size == 0 {
        return Ok(0);
    }
    let mut adj = vec![Vec::new(); size];
    for &(a, b) in pairs {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    let lower = greedy_clique_size(&adj);
    for k in lower..=cap {
        let mut colors = vec![0usize; size];
        if color_with(&adj, &mut colors, k, 0) {
            return Ok(k);
        }
    }
    Err(Error::CapExceeded(cap))
}

fn greedy_clique_size(adj: &[Vec<usize>]) -> usize {
    let Some(start) = (0..adj.len()).max_by_key(|&v| adj[v].len()) else {
        return 1;
    };
    let mut clique = vec![start];
    let mut candidates: Vec<usize> = adj[start].clone();
    while let Some(&next) = candidates
        .iter()
        .max_by_key(|&&v| adj[v].iter().filter(|u| candidates.contains(u)).count())
    {
        clique.push(next);
        candidates.retain(|&u| u != next && adj[next].binary_search(&u).is_ok());
    }
    clique.len().max(1)
}

fn color_with(adj: &[Vec<usize>], colors: &mut [usize], k: usize, colored: usize) -> bool {
    if colored == colors.len() {
        return true;
    }
    // DSATUR choice: max distinct neighbor colors, ties by degree.
    let mut best: Option<(usize, usize, usize)> = None;
    for v in 0..colors.len() {
        if colors[v] != 0 {
            continue;
        }
        let mut mask = 0u64;
        for &u in &adj[v] {
            if colors[u] != 0 {
                mask |= 1 << colors[u];
            }
        }
        let sat = mask.count_ones() as usize;
        let key = (sat, adj[v].len(), usize::MAX - v);
        if best.map_or(true, |(s, d, w)| key > (s, d, w)) {
            best = Some(key);
        }
    }
    let (_, _, wv) = best.unwrap();
    let v = usize::MAX - wv;
    let mut used = 0u64;
    let mut max_used = 0usize;
    for u in 0..colors.len() {
        max_used = max_used.max(colors[u]);
    }
    for &u in &adj[v] {
        if colors[u] != 0 {
            used |= 1 << colors[u];
        }
    }
    // New colors introduced in order: at most one fresh color is tried.
    let limit = k.min(max_used + 1);
    for c in 1..=limit {
        if used & (1 << c) == 0 {
            colors[v] = c;
            if color_with(adj, colors, k, colored + 1) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}
