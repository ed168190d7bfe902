//! Recursive optimal coloring with clique certificates.
//!
//! Large graphs are split along the cutset of a maximal structure's good
//! strip after an even-pair sequence has been extracted from it; the two
//! recursive colorings are aligned on the extracted pairs by Kempe swaps
//! and merged. Prism-free graphs fall back to contracting even pairs, and
//! small graphs go straight to the exponential reference routines.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, DEFAULT_STEPS};
use crate::detect::find_prism;
use crate::error::{Error, Result};
use crate::evenpair::{
    build_all_orders, even_pair_sequence, resolve_convergence, OrdersOutcome, StripContext,
};
use crate::graph::{Graph, Parity, VertSet};
use crate::hyperprism::grow_maximal;
use crate::oracle::{
    chromatic_number_exact, find_any_even_pair, max_clique_exact, verify_coloring, CliqueWitness,
    Coloring,
};

/// Largest graph handed directly to the reference routines.
pub const ORACLE_LEAF: usize = 8;

/// Smallest side size worth a second thread.
const PARALLEL_MIN: usize = 12;

#[derive(Debug, Clone)]
pub struct Options {
    pub budget_steps: u64,
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            budget_steps: DEFAULT_STEPS,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NodeKind {
    CompleteLeaf,
    OracleLeaf,
    ContractionLeaf { steps: usize, oracle_fallback: bool },
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionNode {
    pub vertices: usize,
    pub kind: NodeKind,
    /// One vertex from each separated middle set, witnessing that both
    /// halves are proper subgraphs.
    pub mark: Option<(usize, usize)>,
    pub cutset: VertSet,
    pub restarts: usize,
    pub children: Vec<DecompositionNode>,
}

fn leaf(vertices: usize, kind: NodeKind) -> DecompositionNode {
    DecompositionNode {
        vertices,
        kind,
        mark: None,
        cutset: VertSet::EMPTY,
        restarts: 0,
        children: Vec::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperprismEvent {
    pub vertices: usize,
    pub good_strip_size: usize,
    pub restarts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionEvent {
    pub vertices: usize,
    pub pairs: usize,
}

/// Cumulative wall-clock time per pipeline phase in microseconds, summed
/// over every recursion node. Child-call time lands in `recurse_us` at each
/// enclosing node, so nested work counts once per ancestor there.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub detect_us: u64,
    pub grow_us: u64,
    pub orders_us: u64,
    pub split_us: u64,
    pub recurse_us: u64,
    pub merge_us: u64,
}

impl PhaseTimings {
    fn absorb(&mut self, other: &PhaseTimings) {
        self.detect_us += other.detect_us;
        self.grow_us += other.grow_us;
        self.orders_us += other.orders_us;
        self.split_us += other.split_us;
        self.recurse_us += other.recurse_us;
        self.merge_us += other.merge_us;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTrace {
    pub restarts: usize,
    pub oracle_fallbacks: usize,
    pub hyperprism_events: Vec<HyperprismEvent>,
    pub extraction_events: Vec<ExtractionEvent>,
    pub recolor_swaps: usize,
    pub phases: PhaseTimings,
    pub elapsed_ms: u64,
}

impl RunTrace {
    fn absorb(&mut self, other: RunTrace) {
        self.restarts += other.restarts;
        self.oracle_fallbacks += other.oracle_fallbacks;
        self.hyperprism_events.extend(other.hyperprism_events);
        self.extraction_events.extend(other.extraction_events);
        self.recolor_swaps += other.recolor_swaps;
        self.phases.absorb(&other.phases);
    }

    /// Copy with all wall-clock fields cleared, for determinism comparisons.
    pub fn timing_free(&self) -> RunTrace {
        let mut t = self.clone();
        t.phases = PhaseTimings::default();
        t.elapsed_ms = 0;
        t
    }
}

#[derive(Debug, Clone)]
pub struct ColoredResult {
    pub coloring: Coloring,
    pub clique: CliqueWitness,
    pub tree: DecompositionNode,
    pub trace: RunTrace,
}

/// Fuses a non-adjacent pair into a fresh vertex adjacent to the union of
/// their neighborhoods. The fresh id is one past the current maximum.
pub fn contract_even_pair(g: &Graph, a: usize, b: usize) -> Result<(Graph, usize)> {
    if a == b || !g.contains(a) || !g.contains(b) {
        return Err(Error::invalid("contraction needs two distinct vertices"));
    }
    if g.are_adjacent(a, b) {
        return Err(Error::invalid("contraction needs a non-adjacent pair"));
    }
    let fused = g.max_id().expect("graph is nonempty") + 1;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (u, v) in g.edges() {
        if u == a || u == b || v == a || v == b {
            continue;
        }
        edges.push((u, v));
    }
    for u in g.neighbors(a).union(g.neighbors(b)).iter() {
        edges.push((u, fused));
    }
    let verts = g.vertices().without(a).without(b).with(fused);
    Ok((Graph::from_parts(verts, &edges)?, fused))
}

/// Pushes a coloring of the contracted graph back: both pair ends inherit
/// the fused vertex's color.
pub fn lift_coloring(c: &Coloring, fused: usize, a: usize, b: usize) -> Result<Coloring> {
    let color = c
        .color_of(fused)
        .ok_or_else(|| Error::invalid("fused vertex is uncolored"))?;
    let mut assignment: BTreeMap<usize, usize> = c.iter().collect();
    assignment.remove(&fused);
    assignment.insert(a, color);
    assignment.insert(b, color);
    Coloring::from_assignment(assignment)
}

/// Pushes a clique of the contracted graph back. A clique through the fused
/// vertex must fit entirely around one of the two ends; splitting between
/// them would trace an odd chordless path joining the pair.
fn lift_clique(
    before: &Graph,
    clique: &CliqueWitness,
    fused: usize,
    a: usize,
    b: usize,
) -> Result<CliqueWitness> {
    if !clique.members().contains(fused) {
        return Ok(clique.clone());
    }
    let rest = clique.members().without(fused);
    for end in [a, b] {
        if rest.iter().all(|u| before.are_adjacent(end, u)) {
            return Ok(CliqueWitness::new(rest.with(end)));
        }
    }
    Err(Error::lemma(
        "pair clique lift",
        format!("clique through the fused vertex splits between {a} and {b}"),
    ))
}

fn color_complete(g: &Graph) -> (Coloring, CliqueWitness) {
    let assignment = g.vertices().iter().enumerate().map(|(c, v)| (v, c)).collect();
    let coloring = Coloring::from_assignment(assignment).expect("consecutive colors");
    (coloring, CliqueWitness::new(g.vertices()))
}

fn color_by_oracle(g: &Graph, steps: u64) -> Result<(Coloring, CliqueWitness)> {
    let (chi, coloring) = chromatic_number_exact(g, &mut Budget::new(steps))?;
    let clique = max_clique_exact(g, &mut Budget::new(steps))?;
    if clique.len() != chi {
        return Err(Error::lemma(
            "chromatic clique equality",
            format!("chromatic number {chi} against clique size {}", clique.len()),
        ));
    }
    Ok((coloring, clique))
}

/// Coloring route for graphs without any prism: contract even pairs until
/// the remainder is complete or small, then lift coloring and clique back
/// through the chain. A non-complete remainder without an even pair is
/// handed to the reference routines and counted as a fallback.
fn color_prism_free(
    g: &Graph,
    opts: &Options,
) -> Result<(Coloring, CliqueWitness, DecompositionNode, RunTrace)> {
    let mut trace = RunTrace::default();
    let mut stack: Vec<(Graph, usize, usize, usize)> = Vec::new();
    let mut cur = g.clone();
    let mut fallback = false;
    let (mut coloring, mut clique) = loop {
        if cur.is_complete_graph() {
            break color_complete(&cur);
        }
        if cur.vertex_count() <= ORACLE_LEAF {
            break color_by_oracle(&cur, opts.budget_steps)?;
        }
        match find_any_even_pair(&cur, &mut Budget::new(opts.budget_steps))? {
            Some((a, b)) => {
                let (next, fused) = contract_even_pair(&cur, a, b)?;
                stack.push((cur, fused, a, b));
                cur = next;
            }
            None => {
                fallback = true;
                trace.oracle_fallbacks += 1;
                break color_by_oracle(&cur, opts.budget_steps)?;
            }
        }
    };
    let steps = stack.len();
    for (before, fused, a, b) in stack.into_iter().rev() {
        coloring = lift_coloring(&coloring, fused, a, b)?;
        clique = lift_clique(&before, &clique, fused, a, b)?;
        debug_assert!(coloring.is_proper(&before));
    }
    let node = leaf(
        g.vertex_count(),
        NodeKind::ContractionLeaf {
            steps,
            oracle_fallback: fallback,
        },
    );
    Ok((coloring, clique, node, trace))
}

/// Component of the subgraph induced by two color classes, reached from
/// `start`.
fn kempe_component(
    g: &Graph,
    colors: &BTreeMap<usize, usize>,
    start: usize,
    i: usize,
    j: usize,
) -> VertSet {
    let mut comp = VertSet::singleton(start);
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for u in g.neighbors(v).iter() {
            if comp.contains(u) {
                continue;
            }
            if colors.get(&u) == Some(&i) || colors.get(&u) == Some(&j) {
                comp.insert(u);
                queue.push(u);
            }
        }
    }
    comp
}

/// Shortest path inside two color classes. Such a path is chordless: a
/// same-colored chord would break properness and a cross-colored one would
/// shortcut the path. Its ends wear different colors, so it is odd.
fn shortest_two_color_path(
    g: &Graph,
    colors: &BTreeMap<usize, usize>,
    from: usize,
    to: usize,
    i: usize,
    j: usize,
) -> Vec<usize> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    parent.insert(from, from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for u in g.neighbors(v).iter() {
            if parent.contains_key(&u) {
                continue;
            }
            if colors.get(&u) == Some(&i) || colors.get(&u) == Some(&j) {
                parent.insert(u, v);
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[&v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Rewrites a coloring so extracted pair `h` wears color `h` on both ends.
///
/// Processed pairs stay pinned: both side sets are cliques, so the pair at
/// slot `h` cannot wear a color below `h`, and later swaps touch only
/// colors at or above their own slot. Returns the swap count.
pub fn recolor_to_pairs(
    g: &Graph,
    coloring: &Coloring,
    pairs: &[(usize, usize)],
) -> Result<(Coloring, usize)> {
    let mut colors: BTreeMap<usize, usize> = coloring.iter().collect();
    let original = coloring.num_colors();
    let mut swaps = 0usize;
    for (h, &(a, b)) in pairs.iter().enumerate() {
        let i = *colors
            .get(&a)
            .ok_or_else(|| Error::invalid("pair vertex is uncolored"))?;
        let j = *colors
            .get(&b)
            .ok_or_else(|| Error::invalid("pair vertex is uncolored"))?;
        if i < h || j < h {
            return Err(Error::lemma(
                "pair color floor",
                format!("pair ({a}, {b}) wears ({i}, {j}) below slot {h}"),
            ));
        }
        if i != j {
            let comp = kempe_component(g, &colors, a, i, j);
            if comp.contains(b) {
                let path = shortest_two_color_path(g, &colors, a, b, i, j);
                return Err(Error::lemma(
                    "extracted pair evenness",
                    format!("two-colored chordless path {path:?} joins pair ({a}, {b})"),
                ));
            }
            for v in comp.iter() {
                let c = colors[&v];
                colors.insert(v, if c == i { j } else { i });
            }
            swaps += 1;
        }
        let have = colors[&a];
        if have != h {
            for c in colors.values_mut() {
                if *c == have {
                    *c = h;
                } else if *c == h {
                    *c = have;
                }
            }
            swaps += 1;
        }
    }
    let recolored = Coloring::from_assignment(colors)
        .map_err(|e| Error::lemma("recolor color count", e.to_string()))?;
    if recolored.num_colors() != original {
        return Err(Error::lemma(
            "recolor color count",
            format!("count moved from {original} to {}", recolored.num_colors()),
        ));
    }
    if !recolored.is_proper(g) {
        return Err(Error::lemma("recolor propriety", "a swap broke an edge"));
    }
    Ok((recolored, swaps))
}

/// Splits along the good strip's cutset: majors plus both of its sides.
/// One half keeps the components meeting the strip's middle set, the other
/// keeps everything else; both halves keep the cutset.
pub fn split(g: &Graph, ctx: &StripContext) -> Result<(Graph, Graph, VertSet, (usize, usize))> {
    let hp = ctx.hyperprism();
    let shared = ctx.majors().union(hp.a[0]).union(hp.b[0]);
    let mut x = VertSet::EMPTY;
    let mut y = VertSet::EMPTY;
    for comp in g.components(shared) {
        if !comp.intersect(hp.c[0]).is_empty() {
            x = x.union(comp);
        } else {
            y = y.union(comp);
        }
    }
    if !hp.c[1].is_subset_of(y) || !hp.c[2].is_subset_of(y) {
        return Err(Error::lemma(
            "middle separation",
            "a component joins the selected middle set to another",
        ));
    }
    let mark = (
        hp.c[0].min().expect("middle sets are nonempty"),
        hp.c[1].min().expect("middle sets are nonempty"),
    );
    if g.are_adjacent(mark.0, mark.1) {
        return Err(Error::lemma(
            "middle separation",
            format!("middle vertices {} and {} touch", mark.0, mark.1),
        ));
    }
    let gx = g.induced(x.union(shared))?;
    let gy = g.induced(y.union(shared))?;
    Ok((gx, gy, shared, mark))
}

/// Joins two recolored halves. Pair colors map identically; the leftover
/// cutset is a clique whose members, adjacent to every aligned pair end,
/// wear colors past the pair range on both sides and force the rest of the
/// bijection. Remaining colors fill the smallest free slots.
fn merge(
    g: &Graph,
    shared: VertSet,
    pairs: &[(usize, usize)],
    cx: &Coloring,
    cy: &Coloring,
) -> Result<Coloring> {
    let k = pairs.len();
    let pair_verts: VertSet = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let q = shared.minus(pair_verts);
    if !g.is_clique(q) {
        return Err(Error::lemma(
            "merge clique",
            format!("residual cutset {:?} is not a clique", q.to_vec()),
        ));
    }
    let target = cx.num_colors().max(cy.num_colors());
    let mut sigma: BTreeMap<usize, usize> = (0..k).map(|c| (c, c)).collect();
    let mut used: BTreeSet<usize> = (0..k).collect();
    for v in q.iter() {
        let from = cy
            .color_of(v)
            .ok_or_else(|| Error::invalid("cutset vertex is uncolored"))?;
        let to = cx
            .color_of(v)
            .ok_or_else(|| Error::invalid("cutset vertex is uncolored"))?;
        if from < k || to < k {
            return Err(Error::lemma(
                "merge exclusivity",
                format!("cutset vertex {v} wears a pair color ({from} or {to})"),
            ));
        }
        match sigma.get(&from) {
            Some(&t) if t == to => {}
            Some(&t) => {
                return Err(Error::lemma(
                    "merge bijection",
                    format!("color {from} maps to both {t} and {to}"),
                ));
            }
            None => {
                if !used.insert(to) {
                    return Err(Error::lemma(
                        "merge bijection",
                        format!("target color {to} is claimed twice"),
                    ));
                }
                sigma.insert(from, to);
            }
        }
    }
    for c in 0..cy.num_colors() {
        if !sigma.contains_key(&c) {
            let t = (0..target)
                .find(|t| !used.contains(t))
                .ok_or_else(|| Error::lemma("merge bijection", "no free target color"))?;
            used.insert(t);
            sigma.insert(c, t);
        }
    }
    let mut assignment: BTreeMap<usize, usize> = cx.iter().collect();
    for (v, c) in cy.iter() {
        let mapped = sigma[&c];
        match assignment.get(&v) {
            Some(&existing) if existing != mapped => {
                return Err(Error::lemma(
                    "merge agreement",
                    format!("vertex {v} gets colors {existing} and {mapped}"),
                ));
            }
            _ => {
                assignment.insert(v, mapped);
            }
        }
    }
    Coloring::from_assignment(assignment).map_err(|e| Error::lemma("merge prefix", e.to_string()))
}

fn color_rec(
    g: &Graph,
    opts: &Options,
) -> Result<(Coloring, CliqueWitness, DecompositionNode, RunTrace)> {
    let n = g.vertex_count();
    if g.is_complete_graph() {
        let (coloring, clique) = color_complete(g);
        return Ok((coloring, clique, leaf(n, NodeKind::CompleteLeaf), RunTrace::default()));
    }
    if n <= ORACLE_LEAF {
        let (coloring, clique) = color_by_oracle(g, opts.budget_steps)?;
        return Ok((coloring, clique, leaf(n, NodeKind::OracleLeaf), RunTrace::default()));
    }
    let clock = std::time::Instant::now();
    let found = find_prism(g, &mut Budget::new(opts.budget_steps))?;
    let detect_us = clock.elapsed().as_micros() as u64;
    let Some(prism) = found else {
        let (coloring, clique, node, mut tr) = color_prism_free(g, opts)?;
        tr.phases.detect_us += detect_us;
        return Ok((coloring, clique, node, tr));
    };
    if prism.parity == Parity::Odd {
        return Err(Error::ClassViolation(Box::new(prism.to_witness())));
    }

    let mut trace = RunTrace::default();
    trace.phases.detect_us += detect_us;
    let clock = std::time::Instant::now();
    let mut hp = grow_maximal(g, &prism, opts.budget_steps)?;
    trace.phases.grow_us += clock.elapsed().as_micros() as u64;
    let mut restarts = 0usize;
    let (ctx, orders) = loop {
        let clock = std::time::Instant::now();
        let ctx = StripContext::new(g, &hp, opts.budget_steps)?;
        let outcome = build_all_orders(&ctx, opts.budget_steps)?;
        trace.phases.orders_us += clock.elapsed().as_micros() as u64;
        match outcome {
            OrdersOutcome::Built(o) => break (ctx, o),
            OrdersOutcome::Convergence(w) => {
                restarts += 1;
                if restarts > n {
                    return Err(Error::lemma(
                        "restart bound",
                        format!("{restarts} resolutions on {n} vertices"),
                    ));
                }
                let clock = std::time::Instant::now();
                hp = resolve_convergence(g, &ctx, &w, opts.budget_steps)?;
                trace.phases.grow_us += clock.elapsed().as_micros() as u64;
            }
        }
    };
    trace.restarts += restarts;
    trace.hyperprism_events.push(HyperprismEvent {
        vertices: ctx.hyperprism().vertex_set().len(),
        good_strip_size: ctx.good_strip_size(),
        restarts,
    });
    let clock = std::time::Instant::now();
    let sequence = even_pair_sequence(&ctx, orders, opts.budget_steps)?;
    trace.phases.orders_us += clock.elapsed().as_micros() as u64;
    let pairs: Vec<(usize, usize)> = sequence.iter().map(|(_, p)| *p).collect();
    trace.extraction_events.push(ExtractionEvent {
        vertices: n,
        pairs: pairs.len(),
    });
    let clock = std::time::Instant::now();
    let (gx, gy, shared, mark) = split(g, &ctx)?;
    trace.phases.split_us += clock.elapsed().as_micros() as u64;

    let clock = std::time::Instant::now();
    let (rx, ry) = if opts.parallel && gx.vertex_count().max(gy.vertex_count()) >= PARALLEL_MIN {
        std::thread::scope(|scope| {
            let handle = scope.spawn(|| color_rec(&gx, opts));
            let ry = color_rec(&gy, opts);
            let rx = handle
                .join()
                .unwrap_or_else(|_| Err(Error::invalid("parallel worker panicked")));
            (rx, ry)
        })
    } else {
        (color_rec(&gx, opts), color_rec(&gy, opts))
    };
    let (cx0, qx, node_x, trace_x) = rx?;
    let (cy0, qy, node_y, trace_y) = ry?;
    trace.phases.recurse_us += clock.elapsed().as_micros() as u64;
    trace.absorb(trace_x);
    trace.absorb(trace_y);

    let clock = std::time::Instant::now();
    let (cx, swaps_x) = recolor_to_pairs(&gx, &cx0, &pairs)?;
    let (cy, swaps_y) = recolor_to_pairs(&gy, &cy0, &pairs)?;
    trace.recolor_swaps += swaps_x + swaps_y;
    let coloring = merge(g, shared, &pairs, &cx, &cy)?;
    let clique = if cx.num_colors() >= cy.num_colors() {
        qx
    } else {
        qy
    };
    let ok = verify_coloring(g, &coloring, &clique);
    trace.phases.merge_us += clock.elapsed().as_micros() as u64;
    if !ok {
        return Err(Error::lemma(
            "split certificate",
            format!("merged coloring fails verification on {n} vertices"),
        ));
    }
    let node = DecompositionNode {
        vertices: n,
        kind: NodeKind::Split,
        mark: Some(mark),
        cutset: shared,
        restarts,
        children: vec![node_x, node_y],
    };
    Ok((coloring, clique, node, trace))
}

/// Splits happen at most once per vertex pair, so the tree stays quadratic
/// in the input size.
pub fn check_tree_bound(root: &DecompositionNode, n: usize) -> Result<()> {
    fn count(node: &DecompositionNode) -> (usize, usize) {
        let mut splits = usize::from(matches!(node.kind, NodeKind::Split));
        let mut total = 1;
        for child in &node.children {
            let (s, t) = count(child);
            splits += s;
            total += t;
        }
        (splits, total)
    }
    let (splits, total) = count(root);
    let cap = n * n.saturating_sub(1) / 2;
    if splits > cap || total > 2 * cap + 1 {
        return Err(Error::lemma(
            "decomposition size",
            format!("{splits} splits and {total} nodes exceed the bound for {n} vertices"),
        ));
    }
    Ok(())
}

/// Optimal coloring with a maximum clique certificate of equal size, plus
/// the decomposition tree and run statistics.
pub fn color(g: &Graph, opts: &Options) -> Result<ColoredResult> {
    let start = std::time::Instant::now();
    let (coloring, clique, tree, mut trace) = color_rec(g, opts)?;
    if !verify_coloring(g, &coloring, &clique) {
        return Err(Error::lemma(
            "final certificate",
            "coloring and clique disagree at the root",
        ));
    }
    check_tree_bound(&tree, g.vertex_count())?;
    trace.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(ColoredResult {
        coloring,
        clique,
        tree,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{classify, Classification};
    use crate::generate::{gen_hyperprism_graph, gen_prism_graph, HyperprismSpec, MajorSpec, StripSpec};
    use crate::testutil::{c_n, complete, converging_graph};

    #[test]
    fn complete_graphs_color_trivially() {
        let g = complete(5);
        let r = color(&g, &Options::default()).unwrap();
        assert_eq!(r.coloring.num_colors(), 5);
        assert!(matches!(r.tree.kind, NodeKind::CompleteLeaf));
        assert!(verify_coloring(&g, &r.coloring, &r.clique));
    }

    #[test]
    fn small_graphs_use_the_oracle_leaf() {
        let g = c_n(6);
        let r = color(&g, &Options::default()).unwrap();
        assert_eq!(r.coloring.num_colors(), 2);
        assert!(matches!(r.tree.kind, NodeKind::OracleLeaf));
    }

    #[test]
    fn long_even_cycles_contract_to_a_leaf() {
        let g = c_n(12);
        let r = color(&g, &Options::default()).unwrap();
        assert_eq!(r.coloring.num_colors(), 2);
        match r.tree.kind {
            NodeKind::ContractionLeaf {
                steps,
                oracle_fallback,
            } => {
                assert!(steps >= 1);
                assert!(!oracle_fallback);
            }
            other => panic!("expected a contraction leaf, got {other:?}"),
        }
        assert!(verify_coloring(&g, &r.coloring, &r.clique));
    }

    #[test]
    fn contraction_lifts_colorings_back() {
        let g = c_n(6);
        let (contracted, fused) = contract_even_pair(&g, 0, 2).unwrap();
        assert_eq!(fused, 6);
        for u in [1, 3, 5] {
            assert!(contracted.are_adjacent(fused, u));
        }
        let (chi, coloring) =
            chromatic_number_exact(&contracted, &mut Budget::default()).unwrap();
        assert_eq!(chi, 2);
        let lifted = lift_coloring(&coloring, fused, 0, 2).unwrap();
        assert!(lifted.is_proper(&g));
        assert_eq!(lifted.color_of(0), lifted.color_of(2));
    }

    #[test]
    fn prisms_split_and_remerge() {
        let g = gen_prism_graph([2, 2, 2]);
        let r = color(&g, &Options::default()).unwrap();
        assert_eq!(r.coloring.num_colors(), 3);
        assert!(matches!(r.tree.kind, NodeKind::Split));
        assert_eq!(r.tree.children.len(), 2);
        let (mx, my) = r.tree.mark.unwrap();
        assert!(!g.are_adjacent(mx, my));
        assert!(verify_coloring(&g, &r.coloring, &r.clique));
        check_tree_bound(&r.tree, g.vertex_count()).unwrap();
    }

    #[test]
    fn major_structures_color_end_to_end() {
        let (g, _) = gen_hyperprism_graph(&HyperprismSpec {
            strips: [StripSpec::path(4), StripSpec::path(4), StripSpec::path(2)],
            majors: vec![MajorSpec { strips: vec![0, 1] }],
        })
        .unwrap();
        let r = color(&g, &Options::default()).unwrap();
        assert_eq!(r.coloring.num_colors(), 3);
        assert!(verify_coloring(&g, &r.coloring, &r.clique));
    }

    #[test]
    fn convergence_resolves_inside_the_pipeline() {
        let (g, _) = converging_graph();
        assert!(matches!(
            classify(&g, DEFAULT_STEPS).unwrap(),
            Classification::Accepted
        ));
        let r = color(&g, &Options::default()).unwrap();
        assert_eq!(r.coloring.num_colors(), 4);
        assert!(r.trace.restarts >= 1);
        assert!(verify_coloring(&g, &r.coloring, &r.clique));
    }

    #[test]
    fn parallel_runs_match_sequential_runs() {
        let (g, _) = converging_graph();
        let seq = color(&g, &Options::default()).unwrap();
        let par = color(
            &g,
            &Options {
                parallel: true,
                ..Options::default()
            },
        )
        .unwrap();
        assert_eq!(seq.coloring, par.coloring);
        assert_eq!(seq.clique.members(), par.clique.members());
        assert_eq!(seq.tree, par.tree);
        assert_eq!(seq.trace.timing_free(), par.trace.timing_free());
    }

    #[test]
    fn tree_bound_scales_with_the_input() {
        check_tree_bound(&leaf(2, NodeKind::OracleLeaf), 2).unwrap();
        let two_leaves = vec![
            leaf(1, NodeKind::CompleteLeaf),
            leaf(1, NodeKind::CompleteLeaf),
        ];
        let split_node = DecompositionNode {
            vertices: 2,
            kind: NodeKind::Split,
            mark: None,
            cutset: VertSet::EMPTY,
            restarts: 0,
            children: two_leaves,
        };
        check_tree_bound(&split_node, 2).unwrap();
        assert!(check_tree_bound(&split_node, 1).is_err());
    }
}

