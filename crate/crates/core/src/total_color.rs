//! Total coloring (vertices and edges over one palette, maximum degree plus
//! two as the target) with mixed Kempe-chain repair, and entire coloring
//! (vertices, edges, and faces, maximum degree plus four) via a 4-coloring
//! of the dual with a reconciliation pass for face-versus-element clashes.

use serde::{Deserialize, Serialize};

use crate::embedding::{EdgeId, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::spiral::{decompose, Direction, SpiralDecomposition};
use crate::vertex_color::{four_color, RepairBudget, RunStats};
use crate::Color;

/// Simultaneous proper coloring of vertices and edges over one palette.
/// Construction reserves colors 1..4 for vertices first and lets edges reuse
/// low indices whenever proper.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalColoring {
    pub vertices: Vec<Color>,
    pub edges: Vec<Color>,
    pub palette: usize,
}

impl TotalColoring {
    pub fn colors_used(&self) -> std::collections::BTreeSet<Color> {
        self.vertices
            .iter()
            .chain(self.edges.iter())
            .copied()
            .filter(|&c| c != 0)
            .collect()
    }

    pub fn max_color(&self) -> Color {
        self.colors_used().iter().copied().max().unwrap_or(0)
    }
}

/// Entire coloring: a total coloring plus face colors drawn from the last
/// four palette slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntireColoring {
    pub vertices: Vec<Color>,
    pub edges: Vec<Color>,
    pub faces: Vec<Color>,
    pub palette: usize,
}

impl EntireColoring {
    pub fn colors_used(&self) -> std::collections::BTreeSet<Color> {
        self.vertices
            .iter()
            .chain(self.edges.iter())
            .chain(self.faces.iter())
            .copied()
            .filter(|&c| c != 0)
            .collect()
    }

    pub fn max_color(&self) -> Color {
        self.colors_used().iter().copied().max().unwrap_or(0)
    }
}

/// A mixed Kempe chain: a two-colored edge path whose terminal vertex
/// continues the alternation and can absorb the exchanged color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MKempeChain {
    pub edges: Vec<EdgeId>,
    pub terminal: VertexId,
    pub pair: (Color, Color),
}

fn edge_used_at(total: &TotalColoring, emb: &PlanarEmbedding, v: VertexId) -> u64 {
    let mut mask = 0u64;
    for &e in emb.edge_slots(v) {
        if total.edges[e.0] != 0 {
            mask |= 1 << total.edges[e.0];
        }
    }
    mask
}

fn total_edge_ok(total: &TotalColoring, emb: &PlanarEmbedding, e: EdgeId, c: Color) -> bool {
    let (u, v) = emb.endpoints(e);
    if total.vertices[u.0] == c || total.vertices[v.0] == c {
        return false;
    }
    (edge_used_at(total, emb, u) | edge_used_at(total, emb, v)) & (1 << c) == 0
}

/// Apply the mixed Kempe switch: the two pair colors are exchanged along the
/// chain edges and on the terminal vertex. Preconditions and resulting
/// properness are checked; any failure reports `NotAnMChain`.
pub fn m_kempe_switch(
    total: &TotalColoring,
    emb: &PlanarEmbedding,
    chain: &MKempeChain,
) -> Result<TotalColoring> {
    let (ci, cj) = chain.pair;
    if chain.edges.is_empty() {
        return Err(Error::NotAnMChain("empty chain".into()));
    }
    // Walk the path and check alternation.
    let mut seq = Vec::with_capacity(chain.edges.len() + 1);
    let (a0, b0) = emb.endpoints(chain.edges[0]);
    // Orient the first edge so the walk ends at the terminal.
    let mut candidates = vec![vec![a0, b0], vec![b0, a0]];
    let walk = loop {
        let Some(mut path) = candidates.pop() else {
            return Err(Error::NotAnMChain("edges do not form a path to the terminal".into()));
        };
        let mut ok = true;
        for &e in &chain.edges[1..] {
            let (x, y) = emb.endpoints(e);
            let last = *path.last().unwrap();
            if x == last {
                path.push(y);
            } else if y == last {
                path.push(x);
            } else {
                ok = false;
                break;
            }
        }
        if ok && *path.last().unwrap() == chain.terminal {
            break path;
        }
        if candidates.is_empty() {
            return Err(Error::NotAnMChain("edges do not form a path to the terminal".into()));
        }
    };
    seq.extend(walk);

    let mut expect = total.edges[chain.edges[0].0];
    if expect != ci && expect != cj {
        return Err(Error::NotAnMChain("chain edge outside the color pair".into()));
    }
    for &e in &chain.edges {
        if total.edges[e.0] != expect {
            return Err(Error::NotAnMChain("chain edges do not alternate the pair".into()));
        }
        expect = if expect == ci { cj } else { ci };
    }
    let tcolor = total.vertices[chain.terminal.0];
    if tcolor != expect {
        return Err(Error::NotAnMChain("terminal vertex breaks the alternation".into()));
    }
    let incoming = if tcolor == ci { cj } else { ci };
    // The definition's terminal condition: no neighbor already wears the
    // color the terminal will take.
    if emb
        .rotation(chain.terminal)
        .iter()
        .any(|&w| total.vertices[w.0] == incoming)
    {
        return Err(Error::NotAnMChain("terminal neighbor wears the incoming color".into()));
    }

    let mut out = total.clone();
    for &e in &chain.edges {
        out.edges[e.0] = if out.edges[e.0] == ci { cj } else { ci };
    }
    out.vertices[chain.terminal.0] = incoming;

    // Properness check on everything the switch touched.
    for &e in &chain.edges {
        let c = out.edges[e.0];
        let (u, v) = emb.endpoints(e);
        if out.vertices[u.0] == c || out.vertices[v.0] == c {
            return Err(Error::NotAnMChain("switch collides an edge with an endpoint".into()));
        }
        for x in [u, v] {
            for &e2 in emb.edge_slots(x) {
                if e2 != e && out.edges[e2.0] == c {
                    return Err(Error::NotAnMChain("switch collides adjacent edges".into()));
                }
            }
        }
    }
    for &e2 in emb.edge_slots(chain.terminal) {
        if out.edges[e2.0] == incoming {
            return Err(Error::NotAnMChain("terminal collides with an incident edge".into()));
        }
    }
    Ok(out)
}

/// Spiral total coloring: vertex 4-coloring on colors 1..4, then the spiral
/// edge traversal with priority to low indices over the shared palette, with
/// mixed Kempe chains resolving late conflicts. Target `max_degree + 2`, hard
/// cap one above it with every overflow counted.
pub fn total_color(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(TotalColoring, RunStats)> {
    let t0 = std::time::Instant::now();
    let delta = emb.max_degree();
    if delta < 2 {
        return Err(Error::PreconditionViolated(format!("total coloring needs max degree >= 2, got {delta}")));
    }
    let target = delta + 2;
    let cap = budget.palette_cap.unwrap_or(delta + 3).max(target);

    let (vcol, mut stats) = four_color(emb, dec, budget)?;
    let mut total = TotalColoring {
        vertices: vcol.colors,
        edges: vec![0; emb.m()],
        palette: target,
    };
    let mut switch_budget = budget.max_kempe_switches;

    let plan = edge_plan(emb, dec);
    for &e in &plan {
        if total.edges[e.0] != 0 {
            continue;
        }
        if let Some(c) = (1..=target).find(|&c| total_edge_ok(&total, emb, e, c)) {
            total.edges[e.0] = c;
            continue;
        }
        if try_mkempe_repairs(&mut total, emb, e, target, &mut stats) {
            continue;
        }
        if total_edge_kempe(&mut total, emb, e, target, &mut switch_budget, &mut stats) {
            continue;
        }
        // Overflow to the hard cap.
        stats.overflow_events += 1;
        match (target + 1..=cap).find(|&c| total_edge_ok(&total, emb, e, c)) {
            Some(c) => total.edges[e.0] = c,
            None => {
                return Err(Error::BudgetExhausted(format!(
                    "edge {} stuck even at the hard cap {cap}",
                    e.0
                )))
            }
        }
    }

    // Demotion: try to pull overflow edges back under the target.
    if total.edges.iter().any(|&c| c > target) {
        for e in 0..emb.m() {
            if total.edges[e] <= target {
                continue;
            }
            let e = EdgeId(e);
            let old = total.edges[e.0];
            total.edges[e.0] = 0;
            if let Some(c) = (1..=target).find(|&c| total_edge_ok(&total, emb, e, c)) {
                total.edges[e.0] = c;
            } else if !try_mkempe_repairs(&mut total, emb, e, target, &mut stats)
                && !total_edge_kempe(&mut total, emb, e, target, &mut switch_budget, &mut stats)
            {
                total.edges[e.0] = old;
            }
        }
    }

    stats.palette_used = total.max_color();
    stats.wall_time_micros = t0.elapsed().as_micros() as u64;
    Ok((total, stats))
}

/// Edge visit order shared with the plain edge coloring: reversed chains,
/// reversed vertices, anticlockwise fans.
fn edge_plan(emb: &PlanarEmbedding, dec: &SpiralDecomposition) -> Vec<EdgeId> {
    let mut plan = Vec::with_capacity(emb.m());
    let mut seen = vec![false; emb.m()];
    for chain in dec.chains.iter().rev() {
        let verts = &chain.vertices;
        for (i, &v) in verts.iter().enumerate().rev() {
            let reference = verts
                .get(i + 1)
                .or_else(|| i.checked_sub(1).and_then(|j| verts.get(j)))
                .copied();
            let rot = emb.rotation(v);
            let d = rot.len();
            if d == 0 {
                continue;
            }
            let anchor = reference
                .and_then(|r| emb.position_in_rotation(v, r))
                .unwrap_or(0);
            for step in 0..d {
                let e = emb.edge_slots(v)[(anchor + d - step % d) % d];
                if !seen[e.0] {
                    seen[e.0] = true;
                    plan.push(e);
                }
            }
        }
    }
    plan
}

/// The paper-style two-edge rotation: tentatively give the stuck edge the
/// color of a nearby vertex and exchange the pair along the mixed chain.
fn try_mkempe_repairs(
    total: &mut TotalColoring,
    emb: &PlanarEmbedding,
    e: EdgeId,
    cap: usize,
    stats: &mut RunStats,
) -> bool {
    let (a, b) = emb.endpoints(e);
    for (near, _far) in [(b, a), (a, b)] {
        let mut slots: Vec<EdgeId> = emb.edge_slots(near).to_vec();
        slots.sort_unstable();
        for e2 in slots {
            if e2 == e || total.edges[e2.0] == 0 {
                continue;
            }
            let x = emb.other_endpoint(e2, near);
            let g = total.vertices[x.0];
            let h = total.edges[e2.0];
            if g == h || g == 0 || g > cap || h > cap {
                continue;
            }
            // Tentative: e takes g (conflicts allowed; the switch clears them).
            let saved = total.edges[e.0];
            total.edges[e.0] = g;
            let chain = MKempeChain { edges: vec![e, e2], terminal: x, pair: (g, h) };
            match m_kempe_switch(total, emb, &chain) {
                Ok(fixed) => {
                    // The switch validated local properness; accept if the
                    // stuck edge itself is now clean.
                    if total_edge_ok_except(&fixed, emb, e) {
                        *total = fixed;
                        stats.m_kempe_switches += 1;
                        return true;
                    }
                    total.edges[e.0] = saved;
                }
                Err(_) => {
                    total.edges[e.0] = saved;
                }
            }
        }
    }
    false
}

fn total_edge_ok_except(total: &TotalColoring, emb: &PlanarEmbedding, e: EdgeId) -> bool {
    let c = total.edges[e.0];
    let (u, v) = emb.endpoints(e);
    if total.vertices[u.0] == c || total.vertices[v.0] == c {
        return false;
    }
    for x in [u, v] {
        for &e2 in emb.edge_slots(x) {
            if e2 != e && total.edges[e2.0] == c {
                return false;
            }
        }
    }
    true
}

/// Two-color edge Kempe switch constrained by vertex colors; applied checked.
fn total_edge_kempe(
    total: &mut TotalColoring,
    emb: &PlanarEmbedding,
    e: EdgeId,
    cap: usize,
    switch_budget: &mut usize,
    stats: &mut RunStats,
) -> bool {
    let (u, v) = emb.endpoints(e);
    let free = |total: &TotalColoring, x: VertexId| -> Vec<Color> {
        let used = edge_used_at(total, emb, x);
        (1..=cap)
            .filter(|&c| used & (1 << c) == 0 && total.vertices[x.0] != c)
            .collect()
    };
    for a in free(total, v) {
        for b in free(total, u) {
            if a == b {
                if total_edge_ok(total, emb, e, a) {
                    total.edges[e.0] = a;
                    return true;
                }
                continue;
            }
            if *switch_budget == 0 {
                return false;
            }
            *switch_budget -= 1;
            // Swap colors a and b along the alternating path from u; vertex
            // colors must stay compatible, so apply checked.
            let mut path = Vec::new();
            let mut at = u;
            let mut want = a;
            let mut prev: Option<EdgeId> = None;
            loop {
                let next = emb
                    .edge_slots(at)
                    .iter()
                    .copied()
                    .find(|&x| total.edges[x.0] == want && Some(x) != prev);
                let Some(x) = next else { break };
                at = emb.other_endpoint(x, at);
                path.push(x);
                prev = Some(x);
                want = if want == a { b } else { a };
                if at == u {
                    break;
                }
            }
            if at == v || path.is_empty() {
                continue;
            }
            let mut ok = true;
            for &pe in &path {
                let swapped = if total.edges[pe.0] == a { b } else { a };
                let (x, y) = emb.endpoints(pe);
                if total.vertices[x.0] == swapped || total.vertices[y.0] == swapped {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for &pe in &path {
                total.edges[pe.0] = if total.edges[pe.0] == a { b } else { a };
            }
            if total_edge_ok(total, emb, e, a) {
                total.edges[e.0] = a;
                stats.kempe_switches += 1;
                return true;
            }
            for &pe in &path {
                total.edges[pe.0] = if total.edges[pe.0] == a { b } else { a };
            }
        }
    }
    false
}

/// Entire coloring: total coloring, then a spiral 4-coloring of the dual on
/// the last four palette slots, then reconciliation of face-versus-element
/// clashes (face-color permutations, dual Kempe switches, and a faces-first
/// re-pipeline when the pinned mechanisms cannot win).
pub fn entire_color(
    emb: &PlanarEmbedding,
    dec: &SpiralDecomposition,
    budget: &RepairBudget,
) -> Result<(EntireColoring, RunStats)> {
    let t0 = std::time::Instant::now();
    let delta = emb.max_degree();
    if delta < 3 {
        return Err(Error::PreconditionViolated(format!(
            "entire coloring needs max degree >= 3, got {delta}"
        )));
    }
    let target = delta + 4;
    let cap = budget.palette_cap.unwrap_or(delta + 5).max(target);
    let last_four: Vec<Color> = (delta + 1..=delta + 4).collect();

    let (total, mut stats) = total_color(emb, dec, budget)?;
    let face_classes = color_dual(emb, budget)?;
    // Literal mapping: dual color i -> palette slot delta + i.
    let mut faces: Vec<Color> = face_classes.iter().map(|&c| delta + c).collect();

    let mut entire = EntireColoring {
        vertices: total.vertices.clone(),
        edges: total.edges.clone(),
        faces: faces.clone(),
        palette: target,
    };
    let initial = clash_count(&entire, emb);
    if initial > 0 {
        stats.reconciliation_activated = true;
        // Stage 1: the best of the 24 face-color permutations.
        let (best_perm, best_clashes) = best_face_permutation(&total, emb, &face_classes, delta);
        faces = face_classes.iter().map(|&c| best_perm[c - 1]).collect();
        entire.faces = faces.clone();
        let mut clashes = best_clashes;

        // Stage 2: dual Kempe switches, greedily accepted on improvement.
        if clashes > 0 {
            let dual_adj = dual_adjacency(emb);
            let mut rounds = 0;
            while clashes > 0 && rounds < 40 {
                rounds += 1;
                let mut improved = false;
                for f in 0..emb.f() {
                    if !face_clashes(&entire, emb, f) {
                        continue;
                    }
                    let cf = entire.faces[f];
                    for &alt in &last_four {
                        if alt == cf {
                            continue;
                        }
                        let comp = dual_kempe_component(&dual_adj, &entire.faces, f, (cf, alt));
                        let mut cand = entire.clone();
                        for &x in &comp {
                            cand.faces[x] = if cand.faces[x] == cf { alt } else { cf };
                        }
                        let c2 = clash_count(&cand, emb);
                        if c2 < clashes {
                            entire = cand;
                            clashes = c2;
                            stats.kempe_switches += 1;
                            improved = true;
                            break;
                        }
                    }
                    if improved {
                        break;
                    }
                }
                if !improved {
                    break;
                }
            }
        }

        // Stage 3: faces-first re-pipeline with an exact finish at desk scale.
        if clash_count(&entire, emb) > 0 {
            stats.fallback_events += 1;
            match faces_first_pipeline(emb, &entire.faces, delta, target, budget) {
                Some((vcols, ecols)) => {
                    entire.vertices = vcols;
                    entire.edges = ecols;
                }
                None => {
                    // Hard-cap escape: recolor clashing edges upward.
                    stats.overflow_events += 1;
                    for e in 0..emb.m() {
                        let e = EdgeId(e);
                        if edge_clashes_faces(&entire, emb, e) {
                            if let Some(c) = (1..=cap).find(|&c| {
                                entire_edge_ok(&entire, emb, e, c)
                            }) {
                                entire.edges[e.0] = c;
                            }
                        }
                    }
                }
            }
        }
    }

    stats.palette_used = entire.max_color();
    stats.wall_time_micros = t0.elapsed().as_micros() as u64;
    Ok((entire, stats))
}

/// 4-color the faces via a spiral coloring of the simplified dual, falling
/// back to bounded exact search for degenerate duals.
fn color_dual(emb: &PlanarEmbedding, budget: &RepairBudget) -> Result<Vec<Color>> {
    let dual = emb.dual();
    let rot = dual.simple_rotation();
    if rot.vertex_count() > 1 {
        if let Ok(demb) = crate::embedding::build_embedding(&rot) {
            let ddec = decompose(&demb, VertexId(0), Direction::Clockwise);
            let inner = RepairBudget { palette_cap: Some(4), ..*budget };
            if let Ok((col, _)) = four_color(&demb, &ddec, &inner) {
                return Ok(col.colors);
            }
        }
    }
    // Degenerate dual: exact search over the simple adjacency.
    let mut adj = vec![Vec::new(); dual.face_count];
    for &(a, b, _) in &dual.edges {
        if a != b {
            adj[a.0].push(b.0);
            adj[b.0].push(a.0);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    let pairs: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(a, l)| l.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
        .collect();
    match crate::oracle::exact_min_colors(dual.face_count, &pairs, 4) {
        Ok(_) => {
            // Rebuild the witness coloring greedily within 4 colors.
            let mut colors = vec![0usize; dual.face_count];
            for v in 0..dual.face_count {
                let used: u64 = adj[v].iter().map(|&u| 1u64 << colors[u]).fold(0, |a, b| a | b);
                colors[v] = (1..=4).find(|&c| used & (1 << c) == 0).ok_or_else(|| {
                    Error::BudgetExhausted("greedy dual coloring exceeded four colors".into())
                })?;
            }
            Ok(colors)
        }
        Err(e) => Err(e),
    }
}

fn dual_adjacency(emb: &PlanarEmbedding) -> Vec<Vec<usize>> {
    let dual = emb.dual();
    let mut adj = vec![Vec::new(); dual.face_count];
    for &(a, b, _) in &dual.edges {
        if a != b {
            adj[a.0].push(b.0);
            adj[b.0].push(a.0);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    adj
}

fn dual_kempe_component(
    adj: &[Vec<usize>],
    faces: &[Color],
    start: usize,
    pair: (Color, Color),
) -> Vec<usize> {
    let mut comp = vec![start];
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut qi = 0;
    while qi < comp.len() {
        let x = comp[qi];
        qi += 1;
        for &u in &adj[x] {
            if !seen[u] && (faces[u] == pair.0 || faces[u] == pair.1) {
                seen[u] = true;
                comp.push(u);
            }
        }
    }
    comp
}

fn clash_count(entire: &EntireColoring, emb: &PlanarEmbedding) -> usize {
    let mut count = 0;
    for (fid, face) in emb.faces().iter().enumerate() {
        let cf = entire.faces[fid];
        for &v in &face.vertices {
            if entire.vertices[v.0] == cf {
                count += 1;
            }
        }
        for &e in &face.edges {
            if entire.edges[e.0] == cf {
                count += 1;
            }
        }
    }
    count
}

fn face_clashes(entire: &EntireColoring, emb: &PlanarEmbedding, fid: usize) -> bool {
    let face = emb.face(crate::embedding::FaceId(fid));
    let cf = entire.faces[fid];
    face.vertices.iter().any(|&v| entire.vertices[v.0] == cf)
        || face.edges.iter().any(|&e| entire.edges[e.0] == cf)
}

fn edge_clashes_faces(entire: &EntireColoring, emb: &PlanarEmbedding, e: EdgeId) -> bool {
    emb.faces_of_edge(e)
        .iter()
        .any(|f| entire.faces[f.0] == entire.edges[e.0])
}

fn entire_edge_ok(entire: &EntireColoring, emb: &PlanarEmbedding, e: EdgeId, c: Color) -> bool {
    let (u, v) = emb.endpoints(e);
    if entire.vertices[u.0] == c || entire.vertices[v.0] == c {
        return false;
    }
    if emb.faces_of_edge(e).iter().any(|f| entire.faces[f.0] == c) {
        return false;
    }
    for x in [u, v] {
        for &e2 in emb.edge_slots(x) {
            if e2 != e && entire.edges[e2.0] == c {
                return false;
            }
        }
    }
    true
}

/// All 24 bijections of the four dual classes onto the last four slots,
/// scored by clash count; the first minimum wins.
fn best_face_permutation(
    total: &TotalColoring,
    emb: &PlanarEmbedding,
    face_classes: &[Color],
    delta: usize,
) -> (Vec<Color>, usize) {
    let slots: Vec<Color> = (delta + 1..=delta + 4).collect();
    let mut best: Option<(Vec<Color>, usize)> = None;
    let perms = permutations4();
    for p in perms {
        let mapping: Vec<Color> = p.iter().map(|&i| slots[i]).collect();
        let mut clashes = 0;
        for (fid, face) in emb.faces().iter().enumerate() {
            let cf = mapping[face_classes[fid] - 1];
            clashes += face.vertices.iter().filter(|v| total.vertices[v.0] == cf).count();
            clashes += face.edges.iter().filter(|e| total.edges[e.0] == cf).count();
        }
        if best.as_ref().map_or(true, |(_, b)| clashes < *b) {
            let done = clashes == 0;
            best = Some((mapping, clashes));
            if done {
                break;
            }
        }
    }
    best.unwrap()
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let items = [0usize, 1, 2, 3];
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([items[a], items[b], items[c], items[d]]);
            }
        }
    }
    out
}

/// Faces fixed, everything else re-derived: vertices as a list coloring over
/// the full palette avoiding incident faces, then edges the same way. Exact
/// at desk scale via saturation backtracking with forbidden masks.
fn faces_first_pipeline(
    emb: &PlanarEmbedding,
    faces: &[Color],
    delta: usize,
    target: usize,
    budget: &RepairBudget,
) -> Option<(Vec<Color>, Vec<Color>)> {
    let _ = delta;
    let n = emb.n();
    let m = emb.m();
    if n + m > 220 {
        return None;
    }
    // Elements 0..n are vertices, n..n+m edges.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for (eid, &(u, v)) in emb.edges().iter().enumerate() {
        adj[u.0].push(v.0);
        adj[v.0].push(u.0);
        adj[u.0].push(n + eid);
        adj[v.0].push(n + eid);
        adj[n + eid].push(u.0);
        adj[n + eid].push(v.0);
    }
    for v in 0..n {
        let slots = emb.edge_slots(VertexId(v));
        for i in 0..slots.len() {
            for j in (i + 1)..slots.len() {
                adj[n + slots[i].0].push(n + slots[j].0);
                adj[n + slots[j].0].push(n + slots[i].0);
            }
        }
    }
    let mut forbidden = vec![0u64; n + m];
    for (fid, face) in emb.faces().iter().enumerate() {
        for &v in &face.vertices {
            forbidden[v.0] |= 1 << faces[fid];
        }
        for &e in &face.edges {
            forbidden[n + e.0] |= 1 << faces[fid];
        }
    }
    let mut nodes = budget.max_backtrack_nodes;
    let colors = budgeted_list_coloring(&adj, &forbidden, target, &mut nodes)?;
    Some((colors[..n].to_vec(), colors[n..].to_vec()))
}

fn budgeted_list_coloring(
    adj: &[Vec<usize>],
    forbidden: &[u64],
    k: usize,
    nodes: &mut usize,
) -> Option<Vec<Color>> {
    fn rec(
        adj: &[Vec<usize>],
        forbidden: &[u64],
        colors: &mut [Color],
        k: usize,
        done: usize,
        nodes: &mut usize,
    ) -> bool {
        if done == colors.len() {
            return true;
        }
        if *nodes == 0 {
            return false;
        }
        *nodes -= 1;
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..colors.len() {
            if colors[v] != 0 {
                continue;
            }
            let mut mask = forbidden[v];
            for &u in &adj[v] {
                if colors[u] != 0 {
                    mask |= 1 << colors[u];
                }
            }
            let key = (mask.count_ones() as usize, adj[v].len(), usize::MAX - v);
            if best.map_or(true, |b| key > b) {
                best = Some(key);
            }
        }
        let v = usize::MAX - best.unwrap().2;
        let mut used = forbidden[v];
        for &u in &adj[v] {
            if colors[u] != 0 {
                used |= 1 << colors[u];
            }
        }
        for c in 1..=k {
            if used & (1 << c) == 0 {
                colors[v] = c;
                if rec(adj, forbidden, colors, k, done + 1, nodes) {
                    return true;
                }
                colors[v] = 0;
                if *nodes == 0 {
                    return false;
                }
            }
        }
        false
    }
    let mut colors = vec![0usize; adj.len()];
    rec(adj, forbidden, &mut colors, k, 0, nodes).then_some(colors)
}
