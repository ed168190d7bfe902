use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::chordless::{visit_chordless_cycles, visit_chordless_paths, ParityFilter};
use crate::error::{Error, Result};
use crate::graph::{Graph, Parity, Path, VertSet};

/// What a rejection witness certifies.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Square,
    OddHole,
    OddAntihole,
    OddPrism,
    EvenPrism,
    EvenPair,
}

impl std::fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WitnessKind::Square => "square",
            WitnessKind::OddHole => "odd_hole",
            WitnessKind::OddAntihole => "odd_antihole",
            WitnessKind::OddPrism => "odd_prism",
            WitnessKind::EvenPrism => "even_prism",
            WitnessKind::EvenPair => "even_pair",
        };
        write!(f, "{s}")
    }
}

/// Certificate for a structure found in a graph. Holes and antiholes list
/// their cycle order; prisms list the six corners plus the three paths.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<Vec<usize>>>,
}

impl Witness {
    pub fn cycle(kind: WitnessKind, vertices: Vec<usize>) -> Witness {
        Witness {
            kind,
            vertices,
            paths: None,
        }
    }

    /// Re-validate against a graph by direct adjacency checks.
    pub fn validate(&self, g: &Graph) -> bool {
        match self.kind {
            WitnessKind::Square => self.vertices.len() == 4 && is_hole(g, &self.vertices),
            WitnessKind::OddHole => {
                self.vertices.len() >= 5
                    && self.vertices.len() % 2 == 1
                    && is_hole(g, &self.vertices)
            }
            WitnessKind::OddAntihole => {
                self.vertices.len() >= 5
                    && self.vertices.len() % 2 == 1
                    && is_hole(&g.complement(), &self.vertices)
            }
            WitnessKind::OddPrism | WitnessKind::EvenPrism => match self.to_prism(g) {
                Ok(p) => {
                    let want = if self.kind == WitnessKind::OddPrism {
                        Parity::Odd
                    } else {
                        Parity::Even
                    };
                    p.parity == want && p.validate(g).is_ok()
                }
                Err(_) => false,
            },
            WitnessKind::EvenPair => {
                self.vertices.len() == 2
                    && g.contains(self.vertices[0])
                    && g.contains(self.vertices[1])
                    && self.vertices[0] != self.vertices[1]
                    && !g.are_adjacent(self.vertices[0], self.vertices[1])
            }
        }
    }

    fn to_prism(&self, g: &Graph) -> Result<Prism> {
        if self.vertices.len() != 6 {
            return Err(Error::invalid("prism witness needs six corners"));
        }
        let paths = self
            .paths
            .as_ref()
            .ok_or_else(|| Error::invalid("prism witness needs paths"))?;
        if paths.len() != 3 {
            return Err(Error::invalid("prism witness needs three paths"));
        }
        let ta = [self.vertices[0], self.vertices[1], self.vertices[2]];
        let tb = [self.vertices[3], self.vertices[4], self.vertices[5]];
        let p: Vec<Path> = paths
            .iter()
            .map(|v| Path::new(g, v.clone()))
            .collect::<Result<_>>()?;
        Prism::from_parts(g, ta, tb, [p[0].clone(), p[1].clone(), p[2].clone()])
    }
}

/// Two vertex-disjoint triangles joined by three vertex-disjoint chordless
/// paths with no edges between the paths besides the triangle edges.
/// All three paths share one parity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Prism {
    pub triangle_a: [usize; 3],
    pub triangle_b: [usize; 3],
    pub paths: [Path; 3],
    pub parity: Parity,
}

impl Prism {
    /// Assemble and fully validate a prism. Mixed path parities are rejected
    /// with the odd hole induced by two mismatched paths.
    pub fn from_parts(
        g: &Graph,
        triangle_a: [usize; 3],
        triangle_b: [usize; 3],
        paths: [Path; 3],
    ) -> Result<Prism> {
        let parities: Vec<Parity> = paths.iter().map(|p| p.parity()).collect();
        if let Some((i, j)) = mixed_parity_pair(&parities) {
            let hole = hole_from_path_pair(&paths[i], &paths[j]);
            return Err(Error::ClassViolation(Box::new(Witness::cycle(
                WitnessKind::OddHole,
                hole,
            ))));
        }
        let prism = Prism {
            triangle_a,
            triangle_b,
            paths,
            parity: parities[0],
        };
        prism
            .validate(g)
            .map_err(|msg| Error::invalid(format!("not a prism: {msg}")))?;
        Ok(prism)
    }

    /// Structural check of every prism condition.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let ta: VertSet = self.triangle_a.iter().copied().collect();
        let tb: VertSet = self.triangle_b.iter().copied().collect();
        if ta.len() != 3 || tb.len() != 3 || !ta.is_disjoint(tb) {
            return Err("triangles must be disjoint vertex triples".into());
        }
        if !g.is_clique(ta) || !g.is_clique(tb) {
            return Err("corner triples must be triangles".into());
        }
        let mut sets = [VertSet::EMPTY; 3];
        for i in 0..3 {
            let p = &self.paths[i];
            if p.first() != self.triangle_a[i] || p.last() != self.triangle_b[i] {
                return Err(format!("path {i} does not join its corners"));
            }
            if !p.is_chordless(g) {
                return Err(format!("path {i} has a chord"));
            }
            if p.parity() != self.parity {
                return Err(format!("path {i} has the wrong parity"));
            }
            sets[i] = p.vertex_set();
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if !sets[i].is_disjoint(sets[j]) {
                    return Err(format!("paths {i} and {j} share vertices"));
                }
                // The only edges between the two paths are the triangle edges.
                for u in sets[i].iter() {
                    let expect_a = u == self.triangle_a[i];
                    let expect_b = u == self.triangle_b[i];
                    for v in g.neighbors(u).intersect(sets[j]).iter() {
                        let ok = (expect_a && v == self.triangle_a[j])
                            || (expect_b && v == self.triangle_b[j]);
                        if !ok {
                            return Err(format!("extra edge ({u}, {v}) between paths {i} and {j}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertex_set(&self) -> VertSet {
        self.paths[0]
            .vertex_set()
            .union(self.paths[1].vertex_set())
            .union(self.paths[2].vertex_set())
    }

    pub fn to_witness(&self) -> Witness {
        let kind = match self.parity {
            Parity::Odd => WitnessKind::OddPrism,
            Parity::Even => WitnessKind::EvenPrism,
        };
        let mut vertices = self.triangle_a.to_vec();
        vertices.extend_from_slice(&self.triangle_b);
        Witness {
            kind,
            vertices,
            paths: Some(self.paths.iter().map(|p| p.vertices().to_vec()).collect()),
        }
    }
}

fn mixed_parity_pair(parities: &[Parity]) -> Option<(usize, usize)> {
    for i in 0..parities.len() {
        for j in i + 1..parities.len() {
            if parities[i] != parities[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Odd cycle induced by two prism paths of different parity plus the two
/// triangle edges joining their ends.
fn hole_from_path_pair(p: &Path, q: &Path) -> Vec<usize> {
    let mut cycle = p.vertices().to_vec();
    cycle.extend(q.vertices().iter().rev());
    canonical_cycle(cycle)
}

/// Rotate and reflect a cycle so it starts at its smallest vertex and its
/// second vertex is smaller than its last.
pub(crate) fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_pos);
    if cycle[1] > *cycle.last().unwrap() {
        cycle[1..].reverse();
    }
    cycle
}

pub(crate) fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    if n < 4 {
        return false;
    }
    let set: VertSet = cycle.iter().copied().collect();
    if set.len() != n || !set.is_subset_of(g.vertices()) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if g.are_adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// First square (4-hole) in deterministic scan order, if any.
pub fn find_square(g: &Graph) -> Option<Witness> {
    let vs: Vec<usize> = g.vertices().to_vec();
    let n = vs.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [vs[a], vs[b], vs[c], vs[d]];
                    // Three cyclic orders cover every 4-subset.
                    for order in [
                        [quad[0], quad[1], quad[2], quad[3]],
                        [quad[0], quad[1], quad[3], quad[2]],
                        [quad[0], quad[2], quad[1], quad[3]],
                    ] {
                        if is_hole(g, &order) {
                            return Some(Witness::cycle(
                                WitnessKind::Square,
                                canonical_cycle(order.to_vec()),
                            ));
                        }
                    }
                }
            }
        }
    }
    None
}

/// First odd hole (length at least 5), if any.
pub fn find_odd_hole(g: &Graph, budget: &mut Budget) -> Result<Option<Witness>> {
    let mut found = None;
    visit_chordless_cycles(g, 5, ParityFilter::Odd, budget, &mut |c| {
        found = Some(Witness::cycle(WitnessKind::OddHole, c.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// First odd antihole (length at least 5), if any.
pub fn find_odd_antihole(g: &Graph, budget: &mut Budget) -> Result<Option<Witness>> {
    let comp = g.complement();
    let mut found = None;
    visit_chordless_cycles(&comp, 5, ParityFilter::Odd, budget, &mut |c| {
        found = Some(Witness::cycle(WitnessKind::OddAntihole, c.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Berge check: no odd hole in the graph or its complement. Returns the
/// obstruction witness when one exists.
pub fn find_berge_obstruction(g: &Graph, budget: &mut Budget) -> Result<Option<Witness>> {
    if let Some(w) = find_odd_hole(g, budget)? {
        return Ok(Some(w));
    }
    find_odd_antihole(g, budget)
}

pub fn is_berge(g: &Graph, budget: &mut Budget) -> Result<bool> {
    Ok(find_berge_obstruction(g, budget)?.is_none())
}

/// Triangles of `g` as ascending triples, in lexicographic order.
fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for u in g.vertices().iter() {
        let above_u: VertSet = g.neighbors(u).iter().filter(|&v| v > u).collect();
        for v in above_u.iter() {
            for w in g.neighbors(v).intersect(above_u).iter() {
                if w > v {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Search for three disjoint connecting paths for corner assignment
/// `ta[k] -> tb[k]`, with an optional parity constraint on every path.
fn find_linkage(
    g: &Graph,
    ta: [usize; 3],
    tb: [usize; 3],
    parity: Option<Parity>,
    budget: &mut Budget,
) -> Result<Option<[Path; 3]>> {
    let corners: VertSet = ta.iter().chain(tb.iter()).copied().collect();
    // Interiors may not touch any corner but their own path ends.
    let mut blocked_by = [VertSet::EMPTY; 3];
    for k in 0..3 {
        let mut blocked = VertSet::EMPTY;
        for c in corners.iter() {
            if c != ta[k] && c != tb[k] {
                blocked = blocked.union(g.closed_neighbors(c));
            }
        }
        blocked_by[k] = blocked;
    }

    fn rec(
        g: &Graph,
        ta: [usize; 3],
        tb: [usize; 3],
        blocked_by: &[VertSet; 3],
        parity: Option<Parity>,
        k: usize,
        chosen: &mut Vec<Path>,
        budget: &mut Budget,
    ) -> Result<Option<[Path; 3]>> {
        if k == 3 {
            return Ok(Some([
                chosen[0].clone(),
                chosen[1].clone(),
                chosen[2].clone(),
            ]));
        }
        // Later paths may not touch or neighbor earlier ones.
        let mut taken = VertSet::EMPTY;
        for p in chosen.iter() {
            for v in p.vertex_set().iter() {
                taken = taken.union(g.closed_neighbors(v));
            }
        }
        let allowed = g
            .vertices()
            .minus(blocked_by[k])
            .minus(taken)
            .with(ta[k])
            .with(tb[k]);
        let mut candidates = Vec::new();
        visit_chordless_paths(g, ta[k], tb[k], allowed, budget, &mut |p| {
            let ok = parity.map_or(true, |want| Parity::of_len(p.len() - 1) == want);
            if ok {
                candidates.push(Path::from_trusted(p.to_vec()));
            }
            ControlFlow::Continue(())
        })?;
        for path in candidates {
            chosen.push(path);
            if let Some(done) = rec(g, ta, tb, blocked_by, parity, k + 1, chosen, budget)? {
                return Ok(Some(done));
            }
            chosen.pop();
        }
        Ok(None)
    }

    rec(g, ta, tb, &blocked_by, parity, 0, &mut Vec::new(), budget)
}

fn prism_search(g: &Graph, parity: Option<Parity>, budget: &mut Budget) -> Result<Option<Prism>> {
    let tris = triangles(g);
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            let ta = tris[i];
            let tb = tris[j];
            let sa: VertSet = ta.iter().copied().collect();
            let sb: VertSet = tb.iter().copied().collect();
            if !sa.is_disjoint(sb) {
                continue;
            }
            for perm in PERMS {
                budget.tick()?;
                let tb_perm = [tb[perm[0]], tb[perm[1]], tb[perm[2]]];
                // Corner pairs on different paths must be non-adjacent.
                let mut clean = true;
                'outer: for k in 0..3 {
                    for m in 0..3 {
                        if m != k && g.are_adjacent(ta[k], tb_perm[m]) {
                            clean = false;
                            break 'outer;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                if let Some(paths) = find_linkage(g, ta, tb_perm, parity, budget)? {
                    let prism = Prism::from_parts(g, ta, tb_perm, paths)?;
                    return Ok(Some(prism));
                }
            }
        }
    }
    Ok(None)
}

/// First prism in deterministic order, preferring an even one when both
/// parities exist. A prism with mixed path parities surfaces as a
/// `ClassViolation` carrying the induced odd hole.
pub fn find_prism(g: &Graph, budget: &mut Budget) -> Result<Option<Prism>> {
    if let Some(p) = prism_search(g, Some(Parity::Even), budget)? {
        return Ok(Some(p));
    }
    prism_search(g, None, budget)
}

/// First prism whose three paths are all odd, if any.
pub fn find_odd_prism(g: &Graph, budget: &mut Budget) -> Result<Option<Prism>> {
    prism_search(g, Some(Parity::Odd), budget)
}

/// Whether every chordless path between two distinct non-adjacent vertices
/// is even.
pub fn is_even_pair(g: &Graph, a: usize, b: usize, budget: &mut Budget) -> Result<bool> {
    if a == b {
        return Err(Error::invalid("even pair vertices must differ"));
    }
    if !g.contains(a) || !g.contains(b) {
        return Err(Error::invalid("even pair vertices must be in the graph"));
    }
    if g.are_adjacent(a, b) {
        return Err(Error::invalid("even pair vertices must be non-adjacent"));
    }
    let stopped = visit_chordless_paths(g, a, b, g.vertices(), budget, &mut |p| {
        if (p.len() - 1) % 2 == 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(!stopped)
}

/// Outcome of class membership checking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Accepted,
    Rejected(Witness),
}

impl Classification {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Classification::Accepted)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Classification::Accepted => None,
            Classification::Rejected(w) => Some(w),
        }
    }
}

/// Class membership test: square-free with no odd hole, odd antihole, or odd
/// prism. Returns the first obstruction in that order.
pub fn classify(g: &Graph, budget_steps: u64) -> Result<Classification> {
    if let Some(w) = find_square(g) {
        return Ok(Classification::Rejected(w));
    }
    let mut budget = Budget::new(budget_steps);
    if let Some(w) = find_odd_hole(g, &mut budget)? {
        return Ok(Classification::Rejected(w));
    }
    let mut budget = Budget::new(budget_steps);
    if let Some(w) = find_odd_antihole(g, &mut budget)? {
        return Ok(Classification::Rejected(w));
    }
    let mut budget = Budget::new(budget_steps);
    if let Some(p) = find_odd_prism(g, &mut budget)? {
        return Ok(Classification::Rejected(p.to_witness()));
    }
    Ok(Classification::Accepted)
}
