//! Spiral-chain edge coloring: chains are visited innermost first, each
//! traversed from its inner end back toward its start, and at every vertex
//! the uncolored incident edges are colored anticlockwise from the reference
//! spiral edge with the first available color. Impasses are resolved by a
//! cyclic fan shift, two-color Kempe switches, and a fan-rotation fallback
//! that guarantees the hard cap of one extra color; a demotion pass then
//! tries to eliminate the extra color entirely.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embedding::{EdgeId, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::spiral::{config_sequence, SpiralDecomposition, TriangleClass, TriangleSide};
use crate::vertex_color::{RepairBudget, RunStats};
use crate::Color;

/// Proper assignment of palette colors to all edges (0 marks an uncolored
/// edge in working states).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub colors: Vec<Color>,
    pub palette: usize,
}

impl EdgeColoring {
    pub fn colors_used(&self) -> std::collections::BTreeSet<Color> {
        self.colors.iter().copied().filter(|&c| c != 0).collect()
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

fn used_at(colors: &[Color], emb: &PlanarEmbedding, v: VertexId) -> u64 {
    let mut mask = 0u64;
    for &e in emb.edge_slots(v) {
        if colors[e.0] != 0 {
            mask |= 1 << colors[e.0];
        }
    }
    mask
}

fn edge_proper(colors: &[Color], emb: &PlanarEmbedding, e: EdgeId, c: Color) -> bool {
    let (u, v) = emb.endpoints(e);
    (used_at(colors, emb, u) | used_at(colors, emb, v)) & (1 << c) == 0
}

fn first_available(colors: &[Color], emb: &PlanarEmbedding, e: EdgeId, cap: usize) -> Option<Color> {
    let (u, v) = emb.endpoints(e);
    let used = used_at(colors, emb, u) | used_at(colors, emb, v);
    (1..=cap).find(|&c| used & (1 << c) == 0)
}

/// Visit order: chains in reverse construction order, vertices within each
/// chain reversed, and at each vertex the anticlockwise fan of edge slots
/// starting at the reference spiral edge.
fn edge_visit_plan(emb: &PlanarEmbedding, dec: &SpiralDecomposition) -> Vec<(VertexId, Vec<EdgeId>)> {
    let mut plan = Vec::with_capacity(emb.n());
    for chain in dec.chains.iter().rev() {
        let verts = &chain.vertices;
        for (i, &v) in verts.iter().enumerate().rev() {
            // Reference: edge toward the previously visited chain vertex
            // (the chain successor), else toward the predecessor.
            let reference = verts
                .get(i + 1)
                .or_else(|| i.checked_sub(1).and_then(|j| verts.get(j)))
                .copied();
            let rot = emb.rotation(v);
            let d = rot.len();
            if d == 0 {
                plan.push((v, Vec::new()));
                continue;
            }
            let anchor = reference
                .and_then(|r| emb.position_in_rotation(v, r))
                .unwrap_or(0);
            // Anticlockwise = reverse rotation order, starting at the anchor.
            let fan: Vec<EdgeId> = (0..d)
                .map(|step| emb.edge_slots(v)[(anchor + d - step % d) % d])
                .collect();
            plan.push((v, fan));
        }
    }
    plan
}

/// Spiral-chain edge coloring with target palette equal to the maximum
/// degree and a hard cap one above it. Overflow and repair events are
/// counted; the result always verifies at no more than the cap.
pub fn spiral_edge_color(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(EdgeColoring, RunStats)> {
    let t0 = std::time::Instant::now();
    let delta = emb.max_degree();
    let target = delta.max(1);
    let cap = budget.palette_cap.unwrap_or(delta + 1).max(target);
    let mut first: Option<(EdgeColoring, RunStats)> = None;
    // Salted retries are part of the bounded repair loop; the primary
    // attempt resolves ties by lowest color index.
    for salt in 0..6u64 {
        let (coloring, mut stats) = color_once(emb, dec, target, cap, budget, salt)?;
        if salt > 0 {
            stats.fallback_events += 1 + first.as_ref().map(|(_, s)| s.fallback_events).unwrap_or(0);
            stats.kempe_switches += first.as_ref().map(|(_, s)| s.kempe_switches).unwrap_or(0);
            stats.overflow_events += first.as_ref().map(|(_, s)| s.overflow_events).unwrap_or(0);
        }
        let done = coloring.max_color() <= target;
        if first.is_none() || done {
            first = Some((coloring, stats));
        }
        if done {
            break;
        }
    }
    let (coloring, mut stats) = first.expect("at least one attempt ran");
    stats.palette_used = coloring.max_color();
    stats.wall_time_micros = t0.elapsed().as_micros() as u64;
    Ok((coloring, stats))
}

fn color_once(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    target: usize,
    cap: usize,
    budget: &RepairBudget,
    salt: u64,
) -> Result<(EdgeColoring, RunStats)> {
    let mut stats = RunStats {
        chain_count: dec.chain_count(),
        ..RunStats::default()
    };
    let mut colors = vec![0usize; emb.m()];
    let mut switch_budget = budget.max_kempe_switches;
    let pick = |colors: &[Color], e: EdgeId, bound: usize| -> Option<Color> {
        if salt == 0 {
            return first_available(colors, emb, e, bound);
        }
        let (u, v) = emb.endpoints(e);
        let used = used_at(colors, emb, u) | used_at(colors, emb, v);
        (0..bound)
            .map(|i| {
                let mut x = (e.0 as u64 + i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt;
                x ^= x >> 31;
                (x, 1 + i)
            })
            .filter(|&(_, c)| used & (1 << c) == 0)
            .min()
            .map(|(_, c)| c)
    };

    let plan = edge_visit_plan(emb, dec);
    for (v, fan) in &plan {
        for &e in fan {
            if colors[e.0] != 0 {
                continue;
            }
            if let Some(c) = pick(&colors, e, target) {
                colors[e.0] = c;
                continue;
            }
            if resolve_edge(&mut colors, emb, *v, e, target, &mut switch_budget, &mut stats) {
                continue;
            }
            // Full palette with the fan-rotation closer.
            stats.overflow_events += 1;
            if let Some(c) = first_available(&colors, emb, e, cap) {
                colors[e.0] = c;
            } else {
                fan_insert(&mut colors, emb, e, cap)?;
            }
        }
    }

    // Demotion passes: clear colors above the target via direct recolor,
    // Kempe paths, and fan rotations restricted to the target palette.
    let mut passes = 0;
    while colors.iter().any(|&c| c > target) && switch_budget > 0 && passes < 8 {
        passes += 1;
        let over: Vec<EdgeId> = (0..emb.m())
            .filter(|&e| colors[e] > target)
            .map(EdgeId)
            .collect();
        let mut progressed = false;
        for e in over {
            if colors[e.0] <= target {
                continue;
            }
            if let Some(c) = first_available(&colors, emb, e, target) {
                colors[e.0] = c;
                progressed = true;
                continue;
            }
            let old = colors[e.0];
            colors[e.0] = 0;
            if demote_via_kempe(&mut colors, emb, e, target, &mut switch_budget, &mut stats) {
                progressed = true;
                continue;
            }
            let snapshot = colors.clone();
            match fan_insert(&mut colors, emb, e, target) {
                Ok(()) => {
                    stats.kempe_switches += 1;
                    progressed = true;
                }
                Err(_) => {
                    colors = snapshot;
                    colors[e.0] = old;
                }
            }
        }
        if !progressed {
            break;
        }
    }

    Ok((EdgeColoring { colors, palette: cap }, stats))
}

/// Resolve an impasse at `v`: cyclic one-step shifts of the colored fan,
/// then two-color Kempe switches freeing a shared color for the stuck edge.
fn resolve_edge(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    v: VertexId,
    e: EdgeId,
    cap: usize,
    switch_budget: &mut usize,
    stats: &mut RunStats,
) -> bool {
    // (a) Cyclic shift of the colored incident fan, both directions.
    let fan: Vec<EdgeId> = emb
        .edge_slots(v)
        .iter()
        .copied()
        .filter(|x| colors[x.0] != 0)
        .collect();
    if fan.len() >= 2 {
        for dir in [1usize, fan.len() - 1] {
            let olds: Vec<Color> = fan.iter().map(|x| colors[x.0]).collect();
            for (i, &x) in fan.iter().enumerate() {
                colors[x.0] = olds[(i + dir) % fan.len()];
            }
            let shift_ok = fan.iter().all(|&x| {
                let (a, b) = emb.endpoints(x);
                let other = if a == v { b } else { a };
                let c = colors[x.0];
                emb.edge_slots(other)
                    .iter()
                    .filter(|y| y.0 != x.0)
                    .all(|y| colors[y.0] != c)
            });
            if shift_ok {
                if let Some(c) = first_available(colors, emb, e, cap) {
                    colors[e.0] = c;
                    stats.kempe_switches += 1;
                    return true;
                }
            }
            for (i, &x) in fan.iter().enumerate() {
                colors[x.0] = olds[i];
            }
        }
    }

    // (b) Kempe switch: free(v) x free(u) alternating paths.
    let (a_end, b_end) = emb.endpoints(e);
    let u = if a_end == v { b_end } else { a_end };
    let free_v: Vec<Color> = (1..=cap).filter(|&c| used_at(colors, emb, v) & (1 << c) == 0).collect();
    let free_u: Vec<Color> = (1..=cap).filter(|&c| used_at(colors, emb, u) & (1 << c) == 0).collect();
    for &a in &free_v {
        for &b in &free_u {
            if a == b {
                colors[e.0] = a;
                return true;
            }
            if *switch_budget == 0 {
                return false;
            }
            *switch_budget -= 1;
            // Invert the maximal (a, b) path from u, starting along u's
            // a-colored edge; if it does not reach v, a comes free at u too.
            let path = alternating_path_from(colors, emb, u, a, b);
            if path.iter().any(|&(x, _)| x == v) {
                continue;
            }
            for &(_, pe) in &path {
                colors[pe.0] = if colors[pe.0] == a { b } else { a };
            }
            debug_assert!(edge_proper(colors, emb, e, a));
            colors[e.0] = a;
            stats.kempe_switches += 1;
            return true;
        }
    }
    false
}

/// Maximal alternating path leaving `start` along its `first`-colored edge,
/// switching to `second` and back. Returns (endpoint reached, edge) steps.
fn alternating_path_from(
    colors: &[Color],
    emb: &PlanarEmbedding,
    start: VertexId,
    first: Color,
    second: Color,
) -> Vec<(VertexId, EdgeId)> {
    let mut path = Vec::new();
    let mut at = start;
    let mut want = first;
    let mut prev_edge: Option<EdgeId> = None;
    loop {
        let next = emb
            .edge_slots(at)
            .iter()
            .copied()
            .find(|&x| colors[x.0] == want && Some(x) != prev_edge);
        let Some(x) = next else { break };
        let nxt = emb.other_endpoint(x, at);
        path.push((nxt, x));
        prev_edge = Some(x);
        at = nxt;
        want = if want == first { second } else { first };
        if at == start {
            break;
        }
    }
    path
}

/// Demote one uncolored slot by re-inserting the edge within `cap` using
/// single Kempe switches at its endpoints.
fn demote_via_kempe(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    e: EdgeId,
    cap: usize,
    switch_budget: &mut usize,
    stats: &mut RunStats,
) -> bool {
    let (u, v) = emb.endpoints(e);
    let free_v: Vec<Color> = (1..=cap).filter(|&c| used_at(colors, emb, v) & (1 << c) == 0).collect();
    let free_u: Vec<Color> = (1..=cap).filter(|&c| used_at(colors, emb, u) & (1 << c) == 0).collect();
    for &a in &free_v {
        if free_u.contains(&a) {
            colors[e.0] = a;
            return true;
        }
    }
    for &a in &free_v {
        for &b in &free_u {
            if a == b || *switch_budget == 0 {
                continue;
            }
            *switch_budget -= 1;
            let path = alternating_path_from(colors, emb, u, a, b);
            if path.iter().any(|&(x, _)| x == v) {
                continue;
            }
            for &(_, pe) in &path {
                colors[pe.0] = if colors[pe.0] == a { b } else { a };
            }
            colors[e.0] = a;
            stats.kempe_switches += 1;
            return true;
        }
    }
    false
}

/// Fan-rotation insertion (Misra-Gries style): places the edge within `cap`
/// colors provided `cap` exceeds the maximum degree.
fn fan_insert(colors: &mut [Color], emb: &PlanarEmbedding, e: EdgeId, cap: usize) -> Result<()> {
    let (u, v) = emb.endpoints(e);
    let free = |colors: &[Color], x: VertexId| -> Option<Color> {
        let used = used_at(colors, emb, x);
        (1..=cap).find(|&c| used & (1 << c) == 0)
    };
    // Maximal fan of u starting at v.
    let mut fan = vec![v];
    loop {
        let w = *fan.last().unwrap();
        let used_w = used_at(colors, emb, w);
        let next = emb.edge_slots(u).iter().copied().find(|&x| {
            let y = emb.other_endpoint(x, u);
            colors[x.0] != 0 && used_w & (1 << colors[x.0]) == 0 && !fan.contains(&y)
        });
        match next {
            Some(x) => fan.push(emb.other_endpoint(x, u)),
            None => break,
        }
    }
    let c = free(colors, u).ok_or_else(|| {
        Error::BudgetExhausted(format!("no free color at {u} within cap {cap}"))
    })?;
    let d = free(colors, *fan.last().unwrap()).ok_or_else(|| {
        Error::BudgetExhausted(format!("no free color at fan end within cap {cap}"))
    })?;
    if c != d {
        // Invert the maximal (c, d) path through u.
        let path = alternating_path_from(colors, emb, u, d, c);
        for &(_, pe) in &path {
            colors[pe.0] = if colors[pe.0] == c { d } else { c };
        }
    }
    // w = longest fan prefix end with d free (fan validity rechecked).
    let mut w_idx = 0;
    let mut valid_prefix = 0;
    for i in 0..fan.len() {
        if i > 0 {
            let x = emb.edge_between(u, fan[i]).unwrap();
            let cx = colors[x.0];
            if cx == 0 || used_at(colors, emb, fan[i - 1]) & (1 << cx) != 0 {
                break;
            }
        }
        valid_prefix = i;
        if used_at(colors, emb, fan[i]) & (1 << d) == 0 {
            w_idx = i;
        }
    }
    let w_idx = w_idx.min(valid_prefix);
    // Rotate the fan up to w: each (u, fan[i]) takes the next edge's color.
    for i in 0..w_idx {
        let cur = emb.edge_between(u, fan[i]).unwrap();
        let nxt = emb.edge_between(u, fan[i + 1]).unwrap();
        colors[cur.0] = colors[nxt.0];
    }
    let last = emb.edge_between(u, fan[w_idx]).unwrap();
    colors[last.0] = d;
    debug_assert!({
        let ok = crate::verify::verify_edge(
            emb,
            &colors.iter().map(|&c| if c == 0 { cap + 1 } else { c }).collect::<Vec<_>>(),
        );
        ok.map(|v| v.iter().all(|x| {
            // Ignore the placeholder color used for still-uncolored edges.
            x.color == cap + 1
        }))
        .unwrap_or(false)
    });
    Ok(())
}

/// Public impasse resolver: completes every uncolored edge incident to `v`
/// within the budgeted palette cap.
pub fn resolve_impasse(
    coloring: &EdgeColoring,
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    v: VertexId,
    budget: &RepairBudget,
) -> Result<EdgeColoring> {
    let _ = dec;
    let mut out = coloring.clone();
    let cap = budget.palette_cap.unwrap_or(emb.max_degree() + 1);
    let mut switch_budget = budget.max_kempe_switches;
    let mut stats = RunStats::default();
    let fan: Vec<EdgeId> = emb.edge_slots(v).to_vec();
    for e in fan {
        if out.colors[e.0] != 0 {
            continue;
        }
        if let Some(c) = first_available(&out.colors, emb, e, cap) {
            out.colors[e.0] = c;
            continue;
        }
        if resolve_edge(&mut out.colors, emb, v, e, cap, &mut switch_budget, &mut stats) {
            continue;
        }
        fan_insert(&mut out.colors, emb, e, cap)?;
    }
    out.palette = out.palette.max(cap);
    Ok(out)
}

/// Exchange the two colors along the maximal alternating path or cycle
/// through `e`.
pub fn kempe_switch_edge(
    coloring: &EdgeColoring,
    emb: &PlanarEmbedding,
    e: EdgeId,
    pair: (Color, Color),
) -> Result<EdgeColoring> {
    let (ci, cj) = pair;
    if coloring.colors[e.0] != ci && coloring.colors[e.0] != cj {
        return Err(Error::ColorNotInPair);
    }
    let mut out = coloring.clone();
    let (u, v) = emb.endpoints(e);
    let here = out.colors[e.0];
    let other = if here == ci { cj } else { ci };
    let mut edges = vec![e];
    for (start, come_back) in [(u, v), (v, u)] {
        let _ = come_back;
        let mut path = alternating_path_from(&out.colors, emb, start, other, here);
        // Drop a wrap-around duplicate when the component is a cycle.
        path.retain(|&(_, pe)| pe != e && !edges.contains(&pe));
        edges.extend(path.iter().map(|&(_, pe)| pe));
    }
    for pe in edges {
        out.colors[pe.0] = if out.colors[pe.0] == ci { cj } else { ci };
    }
    Ok(out)
}

/// Census over the catalogued degree-6 configuration sequences plus the
/// terminal boundary families; uncatalogued degree-6 sequences are flagged
/// for review.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConfigCensus {
    /// Counts keyed `entry_1` .. `entry_12`, `boundary_deg5`, `boundary_deg4`.
    pub counts: BTreeMap<String, usize>,
    pub unmatched: usize,
    /// Degree-6 vertices whose sequence is outside the catalogue.
    pub uncatalogued_deg6: Vec<(VertexId, String)>,
}

type Entry = &'static [(TriangleClass, TriangleSide)];

const fn e(class: TriangleClass, side: TriangleSide) -> (TriangleClass, TriangleSide) {
    (class, side)
}

use TriangleClass::{Alpha as A, Beta as B, Gamma as G};
use TriangleSide::{Lower as L, Upper as U};

/// The twelve catalogued sequences, in catalogue order.
pub const CONFIG_CATALOGUE: [Entry; 12] = [
    &[e(B, L), e(B, L), e(B, L), e(B, L), e(B, L)],
    &[e(B, L), e(B, L), e(B, L), e(B, L), e(B, U), e(B, U)],
    &[e(G, L), e(A, L), e(A, L), e(G, L), e(B, U), e(B, U)],
    &[e(B, L), e(B, L), e(A, L), e(G, L), e(B, U), e(B, U)],
    &[e(G, L), e(A, L), e(B, L), e(B, L), e(B, U), e(B, U)],
    &[e(G, L), e(B, L), e(A, L), e(B, L), e(B, U), e(B, U)],
    &[e(B, L), e(A, L), e(B, L), e(G, L), e(B, U), e(B, U)],
    &[e(G, L), e(A, L), e(B, L), e(B, U), e(B, U), e(B, U)],
    &[e(B, L), e(A, L), e(G, L), e(B, U), e(B, U), e(B, U)],
    &[e(G, L), e(A, L), e(B, L), e(B, U), e(A, U), e(B, U)],
    &[e(B, L), e(A, L), e(G, L), e(B, U), e(A, U), e(B, U)],
    &[e(B, L), e(B, L), e(B, L), e(B, U), e(B, U), e(B, U)],
];

const BOUNDARY_DEG5: Entry = &[e(B, L), e(B, L), e(B, L), e(B, L)];
const BOUNDARY_DEG4: Entry = &[e(B, L), e(B, L), e(B, L)];

fn rotate_to_lower_run(seq: &mut Vec<(TriangleClass, TriangleSide)>) {
    let k = seq.len();
    for i in 0..k {
        let prev = seq[(i + k - 1) % k].1;
        if seq[i].1 == L && prev != L {
            seq.rotate_left(i);
            return;
        }
    }
}

/// Match a sequence against the catalogue, allowing the mirror image (the
/// catalogue is closed under reflection). Returns the 1-based entry index.
pub fn match_catalogue(entries: &[(TriangleClass, TriangleSide)]) -> Option<usize> {
    let direct = entries.to_vec();
    let mut reflected: Vec<(TriangleClass, TriangleSide)> = entries.to_vec();
    reflected.reverse();
    rotate_to_lower_run(&mut reflected);
    for cand in [direct, reflected] {
        for (i, entry) in CONFIG_CATALOGUE.iter().enumerate() {
            if cand.as_slice() == *entry {
                return Some(i + 1);
            }
        }
    }
    None
}

/// Per-vertex configuration census of the decomposition.
pub fn config_case_table(dec: &SpiralDecomposition, emb: &PlanarEmbedding) -> Result<ConfigCensus> {
    let mut census = ConfigCensus::default();
    for v in 0..emb.n() {
        let v = VertexId(v);
        let seq = config_sequence(dec, emb, v)?;
        if let Some(idx) = match_catalogue(&seq.entries) {
            *census.counts.entry(format!("entry_{idx}")).or_insert(0) += 1;
            continue;
        }
        if seq.entries.as_slice() == BOUNDARY_DEG5 {
            *census.counts.entry("boundary_deg5".into()).or_insert(0) += 1;
            continue;
        }
        if seq.entries.as_slice() == BOUNDARY_DEG4 {
            *census.counts.entry("boundary_deg4".into()).or_insert(0) += 1;
            continue;
        }
        census.unmatched += 1;
        if emb.degree(v) == 6 {
            census.uncatalogued_deg6.push((v, seq.compact()));
        }
    }
    Ok(census)
}
