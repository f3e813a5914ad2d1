//! Vertex colorings driven by the spiral decomposition: 4-coloring with
//! color-class alternation and sailing-boat exchanges, triangle-free
//! 3-coloring with priority colors and Kempe alignment, the forest variant
//! over non-spiral trees, the no-short-cycle 3-coloring mode, and the
//! two-walk cycle probe.
//!
//! Every algorithm carries a bounded repair loop; exhausting a budget is a
//! reported failure, never a silent palette widening.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::embedding::{PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::spiral::{
    all_segments, census, classify_triangles, find_sailing_boats, nonspiral_structure,
    SpiralDecomposition,
};
use crate::{Color, BLUE, GREEN, RED, YELLOW};

/// Proper assignment of palette colors to all vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColoring {
    pub colors: Vec<Color>,
    /// Declared palette bound (colors are 1..=palette).
    pub palette: usize,
}

impl VertexColoring {
    pub fn colors_used(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.colors_used().len()
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn count_of(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }
}

/// Bounds on the repair loops. Runs exceeding a bound fail loudly.
#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct RepairBudget {
    pub max_kempe_switches: usize,
    pub max_backtrack_nodes: usize,
    /// Optional override of the algorithm's hard palette cap.
    pub palette_cap: Option<usize>,
}

impl Default for RepairBudget {
    fn default() -> Self {
        RepairBudget {
            max_kempe_switches: 20_000,
            max_backtrack_nodes: 2_000_000,
            palette_cap: None,
        }
    }
}

/// Internal-face census of a decomposition.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCensus {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

/// Per-run metrics. Wall time is measured but excluded from serialization so
/// that reports stay byte-deterministic.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RunStats {
    pub palette_used: usize,
    pub kempe_switches: usize,
    pub boat_switches: usize,
    pub m_kempe_switches: usize,
    /// Assignments outside the scheduled color class, and other non-switch
    /// deviations.
    pub fallback_events: usize,
    pub backtrack_nodes: usize,
    /// Colorings completed above the target palette.
    pub overflow_events: usize,
    /// Vertices that needed the fourth color.
    pub fourth_color_uses: usize,
    /// Vertices left on the third color in the 3-coloring pathways.
    pub third_color_uses: usize,
    pub reconciliation_activated: bool,
    pub chain_count: usize,
    pub segment_counts: Vec<usize>,
    pub triangle_census: Option<TriangleCensus>,
    #[serde(skip)]
    pub wall_time_micros: u64,
}

impl RunStats {
    /// Repair work beyond the plain schedule: the counter the census-style
    /// checks gate on.
    pub fn fallback_switches(&self) -> usize {
        self.boat_switches + self.kempe_switches + self.backtrack_nodes
    }
}

/// The two alternating three-color classes.
const CC1: [Color; 3] = [GREEN, RED, YELLOW];
const CC2: [Color; 3] = [RED, YELLOW, BLUE];

fn proper(colors: &[Color], emb: &PlanarEmbedding, v: VertexId, c: Color) -> bool {
    emb.rotation(v).iter().all(|&u| colors[u.0] != c)
}

/// Exchange the two colors on the {ci, cj} component containing `v`.
pub fn kempe_switch_vertex(
    coloring: &VertexColoring,
    emb: &PlanarEmbedding,
    v: VertexId,
    pair: (Color, Color),
) -> Result<VertexColoring> {
    let mut out = coloring.clone();
    kempe_switch_in_place(&mut out.colors, emb, v, pair)?;
    Ok(out)
}

fn kempe_component(colors: &[Color], emb: &PlanarEmbedding, v: VertexId, pair: (Color, Color)) -> Vec<usize> {
    let (ci, cj) = pair;
    let mut comp = vec![v.0];
    let mut seen = vec![false; emb.n()];
    seen[v.0] = true;
    let mut qi = 0;
    while qi < comp.len() {
        let x = comp[qi];
        qi += 1;
        for &u in emb.rotation(VertexId(x)) {
            if !seen[u.0] && (colors[u.0] == ci || colors[u.0] == cj) {
                seen[u.0] = true;
                comp.push(u.0);
            }
        }
    }
    comp
}

fn kempe_switch_in_place(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    v: VertexId,
    pair: (Color, Color),
) -> Result<()> {
    let (ci, cj) = pair;
    if colors[v.0] != ci && colors[v.0] != cj {
        return Err(Error::ColorNotInPair);
    }
    for x in kempe_component(colors, emb, v, pair) {
        if colors[x] == ci {
            colors[x] = cj;
        } else if colors[x] == cj {
            colors[x] = ci;
        }
    }
    Ok(())
}

/// Spiral-chain vertex 4-coloring.
///
/// Chains are colored in reverse construction order; within a chain the core
/// segment takes class {G, R, Y} and later segments alternate the two
/// classes, preferring non-safe colors. Impasses go through the sailing-boat
/// exchange, single Kempe switches, out-of-class assignment, and a bounded
/// backtracking fallback, in that order, all counted.
pub fn four_color(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(VertexColoring, RunStats)> {
    let t0 = std::time::Instant::now();
    let cap = budget.palette_cap.unwrap_or(4);
    let mut stats = RunStats {
        chain_count: dec.chain_count(),
        ..RunStats::default()
    };
    let segments = all_segments(dec, emb);
    stats.segment_counts = segments.iter().map(Vec::len).collect();
    if let Ok(classes) = classify_triangles(dec, emb) {
        let (alpha, beta, gamma) = census(&classes);
        stats.triangle_census = Some(TriangleCensus { alpha, beta, gamma });
    }
    let boats = find_sailing_boats(dec, emb);

    // Coloring order: chains reversed, vertices forward, class by segment
    // parity (segment 1 is the core).
    let mut order: Vec<(VertexId, usize)> = Vec::with_capacity(emb.n());
    for (ci, chain) in dec.chains.iter().enumerate().rev() {
        for seg in &segments[ci] {
            for &v in seg.vertices(dec) {
                order.push((v, seg.index));
            }
        }
        let _ = chain;
    }

    let mut colors = vec![0usize; emb.n()];
    let mut switch_budget = budget.max_kempe_switches;
    let mut stuck = None;
    for &(v, seg_index) in &order {
        let pref: [Color; 3] = if seg_index == 1 {
            CC1
        } else if seg_index % 2 == 1 {
            [RED, YELLOW, GREEN]
        } else {
            CC2
        };
        if try_class(&mut colors, emb, v, &pref) {
            continue;
        }
        if boat_exchange(&mut colors, emb, dec, &boats, v, seg_index, &mut stats) {
            continue;
        }
        if kempe_restore(&mut colors, emb, v, &pref, cap, &mut switch_budget, &mut stats) {
            continue;
        }
        // Out-of-class direct assignment.
        if let Some(c) = (1..=cap).find(|&c| proper(&colors, emb, v, c)) {
            colors[v.0] = c;
            stats.fallback_events += 1;
            continue;
        }
        if neighbor_recolor(&mut colors, emb, v, cap, &mut stats) {
            continue;
        }
        stuck = Some(v);
        break;
    }

    if stuck.is_some() {
        // Bounded Kempe/min-conflict completion seeded with the partial
        // schedule, then seeded restarts from scratch.
        stats.fallback_events += 1;
        let mut nodes = budget.max_backtrack_nodes;
        let mut done = false;
        for salt in 0..8u64 {
            let mut attempt = if salt == 0 { colors.clone() } else { vec![0; emb.n()] };
            // One bad basin must not drain the whole budget.
            let mut share = nodes.min(50_000 + 2_000 * emb.n());
            let before = share;
            let ok = kempe_minconflict(emb, &mut attempt, cap, &mut share, salt);
            nodes = nodes.saturating_sub(before - share);
            if ok {
                colors = attempt;
                done = true;
                break;
            }
            if nodes == 0 {
                break;
            }
        }
        stats.backtrack_nodes += budget.max_backtrack_nodes - nodes;
        if !done {
            return Err(Error::BudgetExhausted(format!(
                "no {cap}-coloring found within {} repair steps",
                budget.max_backtrack_nodes
            )));
        }
    }

    stats.palette_used = colors.iter().copied().max().unwrap_or(0);
    stats.fourth_color_uses = colors.iter().filter(|&&c| c == BLUE).count();
    stats.wall_time_micros = t0.elapsed().as_micros() as u64;
    Ok((VertexColoring { colors, palette: cap }, stats))
}

fn try_class(colors: &mut [Color], emb: &PlanarEmbedding, v: VertexId, pref: &[Color; 3]) -> bool {
    for &c in pref {
        if proper(colors, emb, v, c) {
            colors[v.0] = c;
            return true;
        }
    }
    false
}

/// The sailing-boat exchange: the lower gamma vertex adjacent to the stuck
/// upper vertex takes the safe color of its own class, freeing its old
/// non-safe color for the stuck vertex.
fn boat_exchange(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    boats: &[crate::spiral::SailingBoat],
    v: VertexId,
    seg_index: usize,
    stats: &mut RunStats,
) -> bool {
    for boat in boats {
        let w = if boat.upper[0] == v {
            boat.lower[0]
        } else if boat.upper[1] == v {
            boat.lower[2]
        } else {
            continue;
        };
        if colors[w.0] == 0 {
            continue;
        }
        // Safe color relative to the lower vertex's position: chains colored
        // with CC1 reserve B, chains on CC2 reserve G.
        let _ = dec;
        let safe = if seg_index % 2 == 0 { BLUE } else { GREEN };
        let old = colors[w.0];
        if old == safe || !proper(colors, emb, w, safe) {
            continue;
        }
        colors[w.0] = safe;
        if proper(colors, emb, v, old) {
            colors[v.0] = old;
            stats.boat_switches += 1;
            return true;
        }
        colors[w.0] = old;
    }
    false
}

/// Move one blocking neighbor to another of its proper colors so a palette
/// color comes free at `v`.
fn neighbor_recolor(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    v: VertexId,
    cap: usize,
    stats: &mut RunStats,
) -> bool {
    let mut neighbors: Vec<VertexId> = emb
        .rotation(v)
        .iter()
        .copied()
        .filter(|u| colors[u.0] != 0)
        .collect();
    neighbors.sort_unstable();
    for &u in &neighbors {
        let cu = colors[u.0];
        for d in 1..=cap {
            if d == cu || !proper(colors, emb, u, d) {
                continue;
            }
            colors[u.0] = d;
            if let Some(c) = (1..=cap).find(|&c| proper(colors, emb, v, c)) {
                colors[v.0] = c;
                stats.fallback_events += 1;
                return true;
            }
            colors[u.0] = cu;
        }
    }
    false
}

/// Try single Kempe switches around `v` until a class color fits.
fn kempe_restore(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    v: VertexId,
    pref: &[Color; 3],
    cap: usize,
    switch_budget: &mut usize,
    stats: &mut RunStats,
) -> bool {
    let mut neighbors: Vec<VertexId> = emb
        .rotation(v)
        .iter()
        .copied()
        .filter(|u| colors[u.0] != 0)
        .collect();
    neighbors.sort_unstable();
    for &u in &neighbors {
        let cu = colors[u.0];
        for d in 1..=cap {
            if d == cu || *switch_budget == 0 {
                continue;
            }
            *switch_budget -= 1;
            kempe_switch_in_place(colors, emb, u, (cu, d)).expect("u is colored cu");
            let fit = pref
                .iter()
                .copied()
                .find(|&c| proper(colors, emb, v, c))
                .or_else(|| (1..=cap).find(|&c| proper(colors, emb, v, c)));
            if let Some(c) = fit {
                colors[v.0] = c;
                stats.kempe_switches += 1;
                return true;
            }
            // Involution: undo.
            kempe_switch_in_place(colors, emb, u, (cu, d)).expect("switch is an involution");
        }
    }
    false
}

/// Kempe-switch plus min-conflict repair toward a proper coloring within
/// `cap` colors: uncolored slots fill min-conflict first, then the conflict
/// set is worked down by free colors, improving Kempe switches, and
/// min-conflict random-walk steps. Conflict counts are maintained
/// incrementally. Deterministic per salt.
fn kempe_minconflict(
    emb: &PlanarEmbedding,
    colors: &mut Vec<Color>,
    cap: usize,
    steps: &mut usize,
    salt: u64,
) -> bool {
    let n = emb.n();
    let mut rng = crate::gen::SplitMix64::new(0xC010 ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for v in 0..n {
        if colors[v] == 0 {
            let c = (1..=cap)
                .min_by_key(|&c| {
                    emb.rotation(VertexId(v)).iter().filter(|u| colors[u.0] == c).count()
                })
                .unwrap();
            colors[v] = c;
        }
    }
    let mut conf = vec![0usize; n];
    for v in 0..n {
        conf[v] = emb
            .rotation(VertexId(v))
            .iter()
            .filter(|u| colors[u.0] == colors[v])
            .count();
    }
    // Recolor v and propagate conflict-count deltas.
    fn recolor(
        emb: &PlanarEmbedding,
        colors: &mut [Color],
        conf: &mut [usize],
        v: usize,
        c: Color,
    ) {
        let old = colors[v];
        if old == c {
            return;
        }
        colors[v] = c;
        let mut own = 0;
        for &u in emb.rotation(VertexId(v)) {
            if colors[u.0] == old {
                conf[u.0] -= 1;
            } else if colors[u.0] == c {
                conf[u.0] += 1;
                own += 1;
            }
        }
        conf[v] = own;
    }
    loop {
        if *steps == 0 {
            return conf.iter().all(|&c| c == 0);
        }
        let conflicted: Vec<usize> = (0..n).filter(|&v| conf[v] > 0).collect();
        if conflicted.is_empty() {
            return true;
        }
        // A batch of min-conflict moves between full rescans.
        let batch = 1 + conflicted.len() / 2;
        for _ in 0..batch {
            if *steps == 0 {
                break;
            }
            *steps -= 1;
            let picks: Vec<usize> = (0..n).filter(|&v| conf[v] > 0).collect();
            let Some(&v) = picks.get(rng.below(picks.len().max(1))) else { break };
            let counts: Vec<usize> = (0..=cap)
                .map(|c| {
                    if c == 0 {
                        usize::MAX
                    } else {
                        emb.rotation(VertexId(v)).iter().filter(|u| colors[u.0] == c).count()
                    }
                })
                .collect();
            if let Some(c) = (1..=cap).find(|&c| counts[c] == 0) {
                recolor(emb, colors, &mut conf, v, c);
                continue;
            }
            // Improving Kempe switch at v.
            let mut improved = false;
            for d in 1..=cap {
                let a = colors[v];
                if d == a {
                    continue;
                }
                let comp = kempe_component(colors, emb, VertexId(v), (a, d));
                let before: usize = comp.iter().map(|&x| conf[x]).sum();
                let mut snapshot: Vec<(usize, Color)> =
                    comp.iter().map(|&x| (x, colors[x])).collect();
                for &(x, cx) in &snapshot {
                    let flip = if cx == a { d } else { a };
                    recolor(emb, colors, &mut conf, x, flip);
                }
                let after: usize = comp.iter().map(|&x| conf[x]).sum();
                if after < before {
                    improved = true;
                    break;
                }
                snapshot.reverse();
                for &(x, cx) in &snapshot {
                    recolor(emb, colors, &mut conf, x, cx);
                }
            }
            if improved {
                continue;
            }
            // Random min-conflict walk.
            let best = (1..=cap).filter(|&c| c != colors[v]).map(|c| counts[c]).min().unwrap();
            let ties: Vec<Color> = (1..=cap)
                .filter(|&c| c != colors[v] && counts[c] == best)
                .collect();
            recolor(emb, colors, &mut conf, v, ties[rng.below(ties.len())]);
        }
    }
}

// ---------------------------------------------------------------------------
// Triangle-free 3-coloring.

/// Priority 3-coloring of a triangle-free plane graph.
///
/// Degree-<=2 vertices are peeled first and re-inserted greedily. Remaining
/// vertices are colored in reverse chain order with priority G > Y > R;
/// forced-R events are resolved by aligning the (G, Y) Kempe components of
/// the colored neighborhood, falling back to (R, G)/(R, Y) switches, and a
/// final sweep tries to clear surviving R vertices the same way.
pub fn three_color_triangle_free(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(VertexColoring, RunStats)> {
    if !emb.is_triangle_free() {
        return Err(Error::PreconditionViolated("graph has a triangle".into()));
    }
    priority_three_color(emb, dec, budget)
}

/// The engine shared by the triangle-free and no-short-cycle pathways.
fn priority_three_color(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(VertexColoring, RunStats)> {
    let t0 = std::time::Instant::now();
    let cap = budget.palette_cap.unwrap_or(3);
    let mut stats = RunStats {
        chain_count: dec.chain_count(),
        ..RunStats::default()
    };

    // Degree-<=2 peeling.
    let n = emb.n();
    let mut deg: Vec<usize> = (0..n).map(|v| emb.degree(VertexId(v))).collect();
    let mut peeled = vec![false; n];
    let mut peel_order = Vec::new();
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] <= 2).collect();
    while let Some(v) = queue.pop() {
        if peeled[v] || deg[v] > 2 {
            continue;
        }
        peeled[v] = true;
        peel_order.push(v);
        for &u in emb.rotation(VertexId(v)) {
            if !peeled[u.0] {
                deg[u.0] -= 1;
                if deg[u.0] <= 2 {
                    queue.push(u.0);
                }
            }
        }
    }

    let mut colors = vec![0usize; n];
    let mut switch_budget = budget.max_kempe_switches;

    // Reverse chain order over the unpeeled core.
    let order: Vec<VertexId> = dec
        .chains
        .iter()
        .rev()
        .flat_map(|c| c.vertices.iter().copied())
        .filter(|v| !peeled[v.0])
        .collect();
    for &v in &order {
        color_priority_vertex(&mut colors, emb, v, cap, &mut switch_budget, &mut stats)?;
    }
    // Re-insert peeled vertices, most recently peeled first.
    for &v in peel_order.iter().rev() {
        color_priority_vertex(&mut colors, emb, VertexId(v), cap, &mut switch_budget, &mut stats)?;
    }

    // Final sweep: try to clear surviving R vertices.
    let mut changed = true;
    while changed && switch_budget > 0 {
        changed = false;
        for v in 0..n {
            if colors[v] != RED {
                continue;
            }
            let old = colors[v];
            colors[v] = 0;
            if align_components(&mut colors, emb, VertexId(v), &mut switch_budget, &mut stats) {
                changed = true;
            } else {
                colors[v] = old;
            }
        }
    }

    stats.palette_used = colors.iter().copied().max().unwrap_or(0);
    stats.third_color_uses = colors.iter().filter(|&&c| c == RED).count();
    stats.wall_time_micros = t0.elapsed().as_micros() as u64;
    Ok((VertexColoring { colors, palette: cap }, stats))
}

fn color_priority_vertex(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    v: VertexId,
    cap: usize,
    switch_budget: &mut usize,
    stats: &mut RunStats,
) -> Result<()> {
    const PRIORITY: [Color; 3] = [GREEN, YELLOW, RED];
    for &c in PRIORITY.iter().take(2) {
        if proper(colors, emb, v, c) {
            colors[v.0] = c;
            return Ok(());
        }
    }
    // Both high-priority colors blocked: align neighbors first.
    if align_components(colors, emb, v, switch_budget, stats) {
        return Ok(());
    }
    if proper(colors, emb, v, RED) {
        colors[v.0] = RED;
        return Ok(());
    }
    // R blocked too (only possible with triangles or earlier R's nearby):
    // paper-style (R, G) / (R, Y) switches at the blocking neighbors.
    let mut neighbors: Vec<VertexId> = emb
        .rotation(v)
        .iter()
        .copied()
        .filter(|u| colors[u.0] != 0)
        .collect();
    neighbors.sort_unstable();
    for &u in &neighbors {
        let cu = colors[u.0];
        for d in 1..=cap {
            if d == cu || *switch_budget == 0 {
                continue;
            }
            *switch_budget -= 1;
            kempe_switch_in_place(colors, emb, u, (cu, d)).expect("u colored");
            if let Some(c) = [GREEN, YELLOW, RED].into_iter().find(|&c| proper(colors, emb, v, c)) {
                colors[v.0] = c;
                stats.kempe_switches += 1;
                return Ok(());
            }
            kempe_switch_in_place(colors, emb, u, (cu, d)).expect("involution");
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no 3-coloring move for {v} within the switch budget"
    )))
}

/// Flip (G, Y) components of `v`'s colored neighborhood so one of the two
/// priority colors comes free at `v`. Succeeds only when every component
/// seen by `v` is single-colored toward one target.
fn align_components(
    colors: &mut [Color],
    emb: &PlanarEmbedding,
    v: VertexId,
    switch_budget: &mut usize,
    stats: &mut RunStats,
) -> bool {
    for target in [GREEN, YELLOW] {
        let other = if target == GREEN { YELLOW } else { GREEN };
        if emb.rotation(v).iter().any(|&u| colors[u.0] == RED && target == RED) {
            continue;
        }
        // Collect the (G, Y) components holding neighbors of v.
        let mut comp_of = vec![usize::MAX; emb.n()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut feasible = true;
        let mut flips: Vec<usize> = Vec::new();
        for &u in emb.rotation(v) {
            let cu = colors[u.0];
            if cu != GREEN && cu != YELLOW {
                if cu == RED && false {
                    feasible = false;
                }
                continue;
            }
            if comp_of[u.0] == usize::MAX {
                let comp = kempe_component(colors, emb, u, (GREEN, YELLOW));
                let id = comps.len();
                for &x in &comp {
                    comp_of[x] = id;
                }
                comps.push(comp);
            }
        }
        // Each component must present a single color to v.
        let mut want_flip = vec![None::<bool>; comps.len()];
        for &u in emb.rotation(v) {
            let cu = colors[u.0];
            if cu != GREEN && cu != YELLOW {
                continue;
            }
            let id = comp_of[u.0];
            let needs = cu == target; // flip so u shows `other`
            match want_flip[id] {
                None => want_flip[id] = Some(needs),
                Some(prev) if prev == needs => {}
                Some(_) => {
                    feasible = false;
                    break;
                }
            }
        }
        if !feasible {
            continue;
        }
        for (id, flip) in want_flip.iter().enumerate() {
            if *flip == Some(true) {
                flips.push(id);
            }
        }
        if flips.len() > *switch_budget {
            continue;
        }
        for &id in &flips {
            for &x in &comps[id] {
                colors[x] = if colors[x] == GREEN {
                    YELLOW
                } else if colors[x] == YELLOW {
                    GREEN
                } else {
                    colors[x]
                };
            }
            *switch_budget -= 1;
            stats.kempe_switches += 1;
        }
        let _ = other;
        if proper(colors, emb, v, target) {
            colors[v.0] = target;
            return true;
        }
        // R neighbors may still block the target; flip back.
        for &id in &flips {
            for &x in &comps[id] {
                colors[x] = if colors[x] == GREEN {
                    YELLOW
                } else if colors[x] == YELLOW {
                    GREEN
                } else {
                    colors[x]
                };
            }
            stats.kempe_switches -= 1;
            *switch_budget += 1;
        }
    }
    false
}

/// Forest-based 3-coloring: 2-color each non-spiral tree with {G, Y}
/// (root = smallest id gets G), then recolor the later endpoint of every
/// monochromatic spiral pair to R, followed by a bounded local repair.
///
/// Errors with `StructureMismatch` when the non-spiral subgraph has a cyclic
/// component — callers fall back to the priority pathway.
pub fn three_color_forest(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
) -> Result<(VertexColoring, RunStats)> {
    let t0 = std::time::Instant::now();
    let ns = nonspiral_structure(dec, emb);
    if !ns.cycle_components.is_empty() {
        return Err(Error::StructureMismatch(format!(
            "{} cyclic non-spiral component(s)",
            ns.cycle_components.len()
        )));
    }
    let mut stats = RunStats {
        chain_count: dec.chain_count(),
        ..RunStats::default()
    };
    let n = emb.n();
    let mut colors = vec![0usize; n];
    for tree in &ns.trees {
        let root = tree[0];
        colors[root.0] = GREEN;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &u in emb.rotation(x) {
                if colors[u.0] == 0 && tree.contains(&u) {
                    if let Some(e) = emb.edge_between(x, u) {
                        if !dec.is_spiral_edge(e) {
                            colors[u.0] = if colors[x.0] == GREEN { YELLOW } else { GREEN };
                            stack.push(u);
                        }
                    }
                }
            }
        }
    }

    // Monochromatic spiral pairs: later endpoint in spiral order goes R.
    for chain in &dec.chains {
        for w in chain.vertices.windows(2) {
            let (u, v) = (w[0], w[1]);
            if colors[u.0] != 0 && colors[u.0] == colors[v.0] {
                let later = if dec.spiral_order[u.0] > dec.spiral_order[v.0] { u } else { v };
                colors[later.0] = RED;
                stats.third_color_uses += 1;
            }
        }
    }

    // Local repair of any remaining conflicts (R-R pairs and the like).
    let mut passes = 0;
    loop {
        let mut conflict = None;
        'scan: for &(u, v) in emb.edges() {
            if colors[u.0] == colors[v.0] {
                conflict = Some((u, v));
                break 'scan;
            }
        }
        let Some((u, v)) = conflict else { break };
        passes += 1;
        if passes > 10 * n {
            return Err(Error::BudgetExhausted("forest repair did not converge".into()));
        }
        let fix = if dec.spiral_order[u.0] > dec.spiral_order[v.0] { u } else { v };
        let alt = [GREEN, YELLOW, RED]
            .into_iter()
            .find(|&c| proper(&colors, emb, fix, c));
        match alt {
            Some(c) => {
                if colors[fix.0] == RED && c != RED {
                    stats.third_color_uses = stats.third_color_uses.saturating_sub(1);
                }
                if c == RED && colors[fix.0] != RED {
                    stats.third_color_uses += 1;
                }
                colors[fix.0] = c;
                stats.fallback_events += 1;
            }
            None => {
                let other = if fix == u { v } else { u };
                let alt2 = [GREEN, YELLOW, RED]
                    .into_iter()
                    .find(|&c| proper(&colors, emb, other, c));
                match alt2 {
                    Some(c) => {
                        colors[other.0] = c;
                        stats.fallback_events += 1;
                    }
                    None => {
                        return Err(Error::BudgetExhausted(
                            "forest repair stuck on an edge with no proper recolor".into(),
                        ))
                    }
                }
            }
        }
    }

    stats.palette_used = colors.iter().copied().max().unwrap_or(0);
    stats.third_color_uses = colors.iter().filter(|&&c| c == RED).count();
    stats.wall_time_micros = t0.elapsed().as_micros() as u64;
    Ok((VertexColoring { colors, palette: 3 }, stats))
}

/// 3-coloring for plane graphs without 4- or 5-cycles (triangles allowed).
/// Same engine as the triangle-free pathway over {G, Y, R}.
pub fn three_color_steinberg(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(VertexColoring, RunStats)> {
    let forbidden: BTreeSet<usize> = [4usize, 5].into_iter().collect();
    if emb.has_cycles_of_length(&forbidden) {
        return Err(Error::PreconditionViolated("graph has a 4- or 5-cycle".into()));
    }
    priority_three_color(emb, dec, budget)
}

/// Where the two simultaneous walks of the cycle probe end up.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMeet {
    SameVertex,
    AdjacentPair,
}

/// Result of the two-walk bicoloring probe on a cycle.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleProbe {
    pub meets_at: ProbeMeet,
    pub conflict: bool,
}

/// Simulate the two simultaneous walks around a cycle of the given length:
/// clockwise coloring 1,3,1,3,... and counterclockwise 1,2,1,2,... from the
/// same start. Even lengths meet at one vertex; odd lengths end on an
/// adjacent pair, which clashes exactly when the length is 1 mod 4.
pub fn cycle_bicolor_probe(cycle_length: usize) -> CycleProbe {
    assert!(cycle_length >= 3, "probe needs a cycle of length >= 3");
    let len = cycle_length;
    let mut colors = vec![0usize; len];
    colors[0] = 1;
    let meets_at;
    let mut t = 1usize;
    loop {
        let cw = t;
        let ccw = len - t;
        let cw_color = if t % 2 == 0 { 1 } else { 3 };
        let ccw_color = if t % 2 == 0 { 1 } else { 2 };
        if cw == ccw {
            colors[cw] = if cw_color == ccw_color { cw_color } else { ccw_color };
            meets_at = ProbeMeet::SameVertex;
            break;
        }
        colors[cw] = cw_color;
        colors[ccw] = ccw_color;
        if cw + 1 == ccw {
            meets_at = ProbeMeet::AdjacentPair;
            break;
        }
        t += 1;
    }
    let conflict = (0..len).any(|i| colors[i] == colors[(i + 1) % len]);
    CycleProbe { meets_at, conflict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_maximal_planar, gen_triangle_free, named_instance, GenSpec};
    use crate::spiral::{decompose, Direction};
    use crate::verify::verify_vertex;

    fn dec_of(emb: &PlanarEmbedding) -> SpiralDecomposition {
        decompose(emb, VertexId(0), Direction::Clockwise)
    }

    #[test]
    fn k4_uses_all_four_colors() {
        let emb = named_instance("k4").unwrap();
        let dec = dec_of(&emb);
        let (col, stats) = four_color(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert_eq!(col.colors_used().len(), 4);
        assert_eq!(stats.palette_used, 4);
    }

    #[test]
    fn icosahedron_four_colored_and_oracle_tight() {
        let emb = named_instance("icosahedron").unwrap();
        let dec = dec_of(&emb);
        let (col, _) = four_color(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert!(col.max_color() <= 4);
        let exact = crate::oracle::chromatic_number_exact(&emb, 6).unwrap();
        assert_eq!(exact, 4);
        assert!(col.distinct_count() >= exact);
    }

    #[test]
    fn random_maximal_instances_four_colored() {
        for seed in 1..25u64 {
            let n = 10 + (seed as usize * 7) % 60;
            let emb = gen_maximal_planar(&GenSpec::maximal(n, seed, n)).unwrap();
            let dec = dec_of(&emb);
            let (col, _) = four_color(&emb, &dec, &RepairBudget::default()).unwrap();
            assert!(
                verify_vertex(&emb, &col.colors).unwrap().is_empty(),
                "seed {seed} n {n}"
            );
            assert!(col.max_color() <= 4);
        }
    }

    #[test]
    fn kempe_switch_contracts() {
        let emb = named_instance("c5").unwrap();
        let coloring = VertexColoring { colors: vec![1, 2, 1, 2, 3], palette: 3 };
        // Swap twice restores the original.
        let once = kempe_switch_vertex(&coloring, &emb, VertexId(0), (1, 2)).unwrap();
        let twice = kempe_switch_vertex(&once, &emb, VertexId(0), (1, 2)).unwrap();
        assert_eq!(twice, coloring);
        // Wrong pair is rejected.
        assert_eq!(
            kempe_switch_vertex(&coloring, &emb, VertexId(4), (1, 2)).unwrap_err(),
            Error::ColorNotInPair
        );
        // Even path alternation swaps along the whole path.
        let swapped = kempe_switch_vertex(&coloring, &emb, VertexId(0), (1, 2)).unwrap();
        assert_eq!(&swapped.colors[..4], &[2, 1, 2, 1]);
    }

    #[test]
    fn isolated_vertex_switch_changes_only_it() {
        let emb = named_instance("c5").unwrap();
        let coloring = VertexColoring { colors: vec![1, 2, 1, 2, 3], palette: 3 };
        let out = kempe_switch_vertex(&coloring, &emb, VertexId(4), (3, 4)).unwrap();
        assert_eq!(out.colors, vec![1, 2, 1, 2, 4]);
    }

    #[test]
    fn cube_two_colors_suffice() {
        let emb = named_instance("cube").unwrap();
        let dec = dec_of(&emb);
        let (col, stats) = three_color_triangle_free(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert_eq!(stats.third_color_uses, 0, "bipartite input must avoid R");
        assert!(col.distinct_count() <= 2);
    }

    #[test]
    fn c5_needs_exactly_one_r() {
        let emb = named_instance("c5").unwrap();
        let dec = dec_of(&emb);
        let (col, stats) = three_color_triangle_free(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert_eq!(stats.third_color_uses, 1);
        assert_eq!(col.count_of(RED), 1);
    }

    #[test]
    fn quadrangulations_three_colored_with_zero_r() {
        for seed in 1..20u64 {
            let n = 10 + (seed as usize * 5) % 60;
            let emb = gen_triangle_free(&GenSpec::triangle_free(n, seed)).unwrap();
            let dec = dec_of(&emb);
            let (col, stats) = three_color_triangle_free(&emb, &dec, &RepairBudget::default()).unwrap();
            assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty(), "seed {seed}");
            assert!(col.max_color() <= 3);
            let ns = nonspiral_structure(&dec, &emb);
            assert!(
                stats.third_color_uses <= ns.odd_cycle_count,
                "seed {seed}: R-count {} exceeds odd cycles {}",
                stats.third_color_uses,
                ns.odd_cycle_count
            );
        }
    }

    #[test]
    fn forest_pathway_on_cube() {
        let emb = named_instance("cube").unwrap();
        let dec = dec_of(&emb);
        let (col, _) = three_color_forest(&emb, &dec).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert!(col.max_color() <= 3);
    }

    /// Two trees joined by two monochromatic-G spiral edges: the literal rule
    /// flips the later endpoints to R, and the repair pass restores
    /// properness with exactly one R left.
    #[test]
    fn forest_recolor_rule_flips_later_endpoints() {
        // Cycle 0-2-3-1-0: spiral edges (0,2) and (1,3) form the two chains,
        // non-spiral edges (0,1) and (2,3) are the two trees.
        let emb = crate::embedding::build_embedding(&crate::embedding::RotationSystem::new(vec![
            vec![2, 1],
            vec![3, 0],
            vec![0, 3],
            vec![2, 1],
        ]))
        .unwrap();
        let mut edge_tags = vec![crate::spiral::EdgeTag::NonSpiral; emb.m()];
        for (a, b) in [(0usize, 2usize), (1, 3)] {
            let e = emb.edge_between(VertexId(a), VertexId(b)).unwrap();
            edge_tags[e.0] = crate::spiral::EdgeTag::Spiral;
        }
        let dec = SpiralDecomposition {
            chains: vec![
                crate::spiral::SpiralChain { vertices: vec![VertexId(0), VertexId(2)], link_edges: vec![] },
                crate::spiral::SpiralChain { vertices: vec![VertexId(1), VertexId(3)], link_edges: vec![] },
            ],
            edge_tags,
            spiral_order: vec![0, 2, 1, 3],
            chain_of: vec![0, 1, 0, 1],
            index_in_chain: vec![0, 0, 1, 1],
            direction: Direction::Clockwise,
            start: VertexId(0),
        };
        // Both trees root at their smallest vertex with G, so both spiral
        // edges start monochromatic: (0,2) G-G and (1,3) Y-Y.
        let (col, _) = three_color_forest(&emb, &dec).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert_eq!(col.colors[2], RED, "later endpoint of the G-G pair flips");
        assert_eq!(col.count_of(RED), 1);
    }

    #[test]
    fn steinberg_pathway() {
        // C7: odd cycle, no 4/5-cycles, single R.
        let neighbors = (0..7).map(|i| vec![(i + 6) % 7, (i + 1) % 7]).collect();
        let emb = crate::embedding::build_embedding(&crate::embedding::RotationSystem::new(neighbors)).unwrap();
        let dec = dec_of(&emb);
        let (col, stats) = three_color_steinberg(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert_eq!(stats.third_color_uses, 1);

        // K3: all three colors.
        let emb = crate::embedding::build_embedding(&crate::embedding::RotationSystem::new(vec![
            vec![1, 2],
            vec![0, 2],
            vec![0, 1],
        ]))
        .unwrap();
        let dec = dec_of(&emb);
        let (col, _) = three_color_steinberg(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert_eq!(col.distinct_count(), 3);

        // C4 violates the precondition.
        let emb = crate::embedding::build_embedding(&crate::embedding::RotationSystem::new(vec![
            vec![1, 3],
            vec![0, 2],
            vec![1, 3],
            vec![2, 0],
        ]))
        .unwrap();
        let dec = dec_of(&emb);
        assert!(matches!(
            three_color_steinberg(&emb, &dec, &RepairBudget::default()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    /// Two triangles sharing one vertex: 3-colorable, shared vertex's color
    /// reused across both triangles (checked against the exhaustive oracle).
    #[test]
    fn gadget_two_triangles_sharing_a_vertex() {
        let faces: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 3, 4]];
        // Hand-build the bowtie embedding: hub 0.
        let emb = crate::embedding::build_embedding(&crate::embedding::RotationSystem::new(vec![
            vec![1, 2, 3, 4],
            vec![0, 2],
            vec![0, 1],
            vec![0, 4],
            vec![0, 3],
        ]))
        .unwrap();
        let _ = faces;
        let dec = dec_of(&emb);
        let (col, _) = three_color_steinberg(&emb, &dec, &RepairBudget::default()).unwrap();
        assert!(verify_vertex(&emb, &col.colors).unwrap().is_empty());
        assert!(col.max_color() <= 3);
        let exact = crate::oracle::chromatic_number_exact(&emb, 5).unwrap();
        assert_eq!(exact, 3);
    }

    #[test]
    fn probe_matches_mod_four_analysis() {
        for len in 3..=64usize {
            let probe = cycle_bicolor_probe(len);
            if len % 2 == 0 {
                assert_eq!(probe.meets_at, ProbeMeet::SameVertex, "len {len}");
                assert!(!probe.conflict, "len {len}");
            } else if len % 4 == 3 {
                assert_eq!(probe.meets_at, ProbeMeet::AdjacentPair, "len {len}");
                assert!(!probe.conflict, "len {len}");
            } else {
                assert_eq!(probe.meets_at, ProbeMeet::AdjacentPair, "len {len}");
                assert!(probe.conflict, "len {len}");
            }
        }
    }
}
