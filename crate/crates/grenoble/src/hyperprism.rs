//! Triple-strip structures: validation, growth to maximality, major
//! neighbors, good-strip selection, and separation checks.

use std::fmt;

use crate::budget::Budget;
use crate::chordless::visit_chordless_paths;
use crate::detect::Prism;
use crate::error::{Error, Result};
use crate::graph::{Graph, Parity, Path, VertSet};

/// Nine pairwise disjoint vertex sets arranged in three strips.
///
/// Strip `i` is `(a[i], c[i], b[i])`. Invariants are not enforced by the
/// type; call [`validate_hyperprism`] after hand construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperprism {
    pub a: [VertSet; 3],
    pub c: [VertSet; 3],
    pub b: [VertSet; 3],
}

impl Hyperprism {
    /// Reads a validated even prism as the minimal hyperprism: each corner
    /// pair becomes a singleton side and each path interior a middle set.
    pub fn from_prism(p: &Prism) -> Hyperprism {
        let mut a = [VertSet::new(); 3];
        let mut c = [VertSet::new(); 3];
        let mut b = [VertSet::new(); 3];
        for i in 0..3 {
            a[i].insert(p.triangle_a[i]);
            b[i].insert(p.triangle_b[i]);
            c[i] = p.paths[i].interior_set();
        }
        Hyperprism { a, c, b }
    }

    pub fn strip_vertices(&self, i: usize) -> VertSet {
        self.a[i].union(self.c[i]).union(self.b[i])
    }

    pub fn vertex_set(&self) -> VertSet {
        self.strip_vertices(0)
            .union(self.strip_vertices(1))
            .union(self.strip_vertices(2))
    }

    pub fn a_union(&self) -> VertSet {
        self.a[0].union(self.a[1]).union(self.a[2])
    }

    pub fn b_union(&self) -> VertSet {
        self.b[0].union(self.b[1]).union(self.b[2])
    }

    pub fn c_union(&self) -> VertSet {
        self.c[0].union(self.c[1]).union(self.c[2])
    }

    /// Exchanges the two side roles in every strip. The result describes the
    /// same structure read from the other end.
    pub fn swapped(&self) -> Hyperprism {
        Hyperprism {
            a: self.b,
            c: self.c,
            b: self.a,
        }
    }

    /// Reorders strips so that strip `perm[k]` of `self` becomes strip `k`.
    pub fn rotated(&self, perm: [usize; 3]) -> Hyperprism {
        let pick = |src: &[VertSet; 3]| [src[perm[0]], src[perm[1]], src[perm[2]]];
        Hyperprism {
            a: pick(&self.a),
            c: pick(&self.c),
            b: pick(&self.b),
        }
    }

    /// Serializes the nine member lists together with the hash of the graph
    /// they were built on, so dumps can be matched to their input.
    pub fn to_json(&self, g: &Graph) -> String {
        let lists = |s: &[VertSet; 3]| -> Vec<Vec<usize>> {
            s.iter().map(|set| set.iter().collect()).collect()
        };
        let value = serde_json::json!({
            "a": lists(&self.a),
            "c": lists(&self.c),
            "b": lists(&self.b),
            "owner_hash": crate::io::canonical_hash(g),
        });
        serde_json::to_string_pretty(&value).expect("hyperprism json")
    }
}

/// First failed structural requirement found by [`validate_hyperprism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub vertices: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {:?}", self.axiom, self.detail, self.vertices)
    }
}

fn violation(axiom: &'static str, vertices: VertSet, detail: String) -> AxiomViolation {
    AxiomViolation {
        axiom,
        vertices: vertices.iter().collect(),
        detail,
    }
}

/// Checks every structural requirement. `Ok(None)` means the nine sets form
/// a valid structure in `g` with all connecting paths of even length.
pub fn validate_hyperprism(
    g: &Graph,
    h: &Hyperprism,
    budget_steps: u64,
) -> Result<Option<AxiomViolation>> {
    let sets: [(&'static str, &VertSet); 9] = [
        ("a1", &h.a[0]),
        ("c1", &h.c[0]),
        ("b1", &h.b[0]),
        ("a2", &h.a[1]),
        ("c2", &h.c[1]),
        ("b2", &h.b[1]),
        ("a3", &h.a[2]),
        ("c3", &h.c[2]),
        ("b3", &h.b[2]),
    ];
    for (name, set) in sets {
        if set.is_empty() {
            return Ok(Some(violation(
                "nonempty sets",
                VertSet::new(),
                format!("set {name} is empty"),
            )));
        }
        if !set.is_subset_of(g.vertices()) {
            return Ok(Some(violation(
                "sets within graph",
                set.minus(g.vertices()),
                format!("set {name} leaves the graph"),
            )));
        }
    }
    for x in 0..9 {
        for y in (x + 1)..9 {
            let overlap = sets[x].1.intersect(*sets[y].1);
            if !overlap.is_empty() {
                return Ok(Some(violation(
                    "disjoint sets",
                    overlap,
                    format!("sets {} and {} overlap", sets[x].0, sets[y].0),
                )));
            }
        }
    }

    // Between two strips: side-to-matching-side pairs must all be edges and
    // every other pair must be a non-edge.
    for i in 0..3 {
        for j in (i + 1)..3 {
            let si = h.strip_vertices(i);
            let sj = h.strip_vertices(j);
            for u in si.iter() {
                for v in sj.iter() {
                    let must_edge = (h.a[i].contains(u) && h.a[j].contains(v))
                        || (h.b[i].contains(u) && h.b[j].contains(v));
                    let has = g.are_adjacent(u, v);
                    if must_edge && !has {
                        return Ok(Some(violation(
                            "side completeness",
                            VertSet::from_iter([u, v]),
                            format!("missing edge between strips {} and {}", i + 1, j + 1),
                        )));
                    }
                    if !must_edge && has {
                        return Ok(Some(violation(
                            "strip separation",
                            VertSet::from_iter([u, v]),
                            format!("stray edge between strips {} and {}", i + 1, j + 1),
                        )));
                    }
                }
            }
        }
    }

    for i in 0..3 {
        let rungs = raw_rungs(g, h, i, &mut Budget::new(budget_steps))?;
        let mut covered = VertSet::new();
        for r in &rungs {
            if r.parity() == Parity::Odd {
                return Ok(Some(violation(
                    "even rungs",
                    r.vertex_set(),
                    format!("odd connecting path in strip {}", i + 1),
                )));
            }
            covered = covered.union(r.vertex_set());
        }
        let missing = h.strip_vertices(i).minus(covered);
        if !missing.is_empty() {
            return Ok(Some(violation(
                "rung cover",
                missing,
                format!("strip {} vertices on no connecting path", i + 1),
            )));
        }
    }
    Ok(None)
}

/// All chordless paths of strip `i` from its first side to its second with
/// interior inside the middle set, without parity policing. Paths run from
/// the `a` side to the `b` side; each is reported once.
pub(crate) fn raw_rungs(
    g: &Graph,
    h: &Hyperprism,
    i: usize,
    budget: &mut Budget,
) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for start in h.a[i].iter() {
        for end in h.b[i].iter() {
            let allowed = h.c[i].with(start).with(end);
            visit_chordless_paths(g, start, end, allowed, budget, &mut |p| {
                out.push(Path::from_trusted(p.to_vec()));
                std::ops::ControlFlow::Continue(())
            })?;
        }
    }
    Ok(out)
}

/// Builds the rejection witness for an odd connecting path: paired with an
/// even path from another strip it closes an odd hole; if every strip is odd
/// the three paths assemble into an all-odd prism.
fn odd_rung_error(g: &Graph, h: &Hyperprism, strip: usize, odd: &Path, budget_steps: u64) -> Error {
    let mut odd_partners: Vec<(usize, Path)> = Vec::new();
    for j in 0..3 {
        if j == strip {
            continue;
        }
        let rungs = match raw_rungs(g, h, j, &mut Budget::new(budget_steps)) {
            Ok(r) => r,
            Err(e) => return e,
        };
        for r in rungs {
            match r.parity() {
                Parity::Even => {
                    // Corner edges close the two paths into an odd cycle.
                    let mut cycle = odd.vertices().to_vec();
                    let mut back: Vec<usize> = r.vertices().to_vec();
                    back.reverse();
                    cycle.extend(back);
                    return Error::ClassViolation(Box::new(
                        crate::detect::Witness::cycle(
                            crate::detect::WitnessKind::OddHole,
                            cycle,
                        ),
                    ));
                }
                Parity::Odd => {
                    if !odd_partners.iter().any(|(s, _)| *s == j) {
                        odd_partners.push((j, r));
                    }
                }
            }
        }
    }
    if odd_partners.len() == 2 {
        let mut paths: Vec<(usize, Path)> = vec![(strip, odd.clone())];
        paths.extend(odd_partners);
        paths.sort_by_key(|(s, _)| *s);
        let ta = [
            paths[0].1.first(),
            paths[1].1.first(),
            paths[2].1.first(),
        ];
        let tb = [paths[0].1.last(), paths[1].1.last(), paths[2].1.last()];
        let triple = [paths[0].1.clone(), paths[1].1.clone(), paths[2].1.clone()];
        match Prism::from_parts(g, ta, tb, triple) {
            Ok(p) => return Error::ClassViolation(Box::new(p.to_witness())),
            Err(e) => return e,
        }
    }
    Error::lemma(
        "even connecting paths",
        format!(
            "odd path {:?} in strip {} with no partner to witness",
            odd.vertices(),
            strip + 1
        ),
    )
}

/// All connecting paths of strip `i`. An odd path is a class violation and
/// is returned as an error carrying an explicit witness.
pub fn enumerate_rungs(g: &Graph, h: &Hyperprism, i: usize, budget_steps: u64) -> Result<Vec<Path>> {
    let rungs = raw_rungs(g, h, i, &mut Budget::new(budget_steps))?;
    for r in &rungs {
        if r.parity() == Parity::Odd {
            return Err(odd_rung_error(g, h, i, r, budget_steps));
        }
    }
    Ok(rungs)
}

/// End pairs `(a, b)` of strip `i` joined by at least one connecting path.
fn feasible_end_pairs(
    g: &Graph,
    h: &Hyperprism,
    i: usize,
    budget_steps: u64,
) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for start in h.a[i].iter() {
        for end in h.b[i].iter() {
            let allowed = h.c[i].with(start).with(end);
            let mut found = false;
            visit_chordless_paths(
                g,
                start,
                end,
                allowed,
                &mut Budget::new(budget_steps),
                &mut |_| {
                    found = true;
                    std::ops::ControlFlow::Break(())
                },
            )?;
            if found {
                pairs.push((start, end));
            }
        }
    }
    Ok(pairs)
}

/// Vertices outside the structure with at least two neighbors in each corner
/// triple of some choice of one connecting path per strip. Only the path
/// ends matter, so the search ranges over feasible end pairs.
pub fn find_major_neighbors(g: &Graph, h: &Hyperprism, budget_steps: u64) -> Result<VertSet> {
    let hv = h.vertex_set();
    let mut ends = Vec::with_capacity(3);
    for i in 0..3 {
        ends.push(feasible_end_pairs(g, h, i, budget_steps)?);
    }
    let mut majors = VertSet::new();
    for x in g.vertices().minus(hv).iter() {
        let mut sigs: [Vec<(bool, bool)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for i in 0..3 {
            for &(a, b) in &ends[i] {
                let s = (g.are_adjacent(x, a), g.are_adjacent(x, b));
                if !sigs[i].contains(&s) {
                    sigs[i].push(s);
                }
            }
        }
        let is_major = sigs[0].iter().any(|s0| {
            sigs[1].iter().any(|s1| {
                sigs[2].iter().any(|s2| {
                    let a_hits = [s0.0, s1.0, s2.0].iter().filter(|v| **v).count();
                    let b_hits = [s0.1, s1.1, s2.1].iter().filter(|v| **v).count();
                    a_hits >= 2 && b_hits >= 2
                })
            })
        });
        if is_major {
            majors.insert(x);
        }
    }
    Ok(majors)
}

/// Fast certificate route: vertices outside the structure complete to at
/// least two of the `a` sides and at least two of the `b` sides. Agrees
/// with [`find_major_neighbors`] on valid maximal structures.
pub fn majors_by_completeness(g: &Graph, h: &Hyperprism) -> Result<VertSet> {
    let hv = h.vertex_set();
    let mut majors = VertSet::new();
    for x in g.vertices().minus(hv).iter() {
        let mut a_full = 0;
        let mut b_full = 0;
        for i in 0..3 {
            if g.is_complete_to(x, h.a[i])? {
                a_full += 1;
            }
            if g.is_complete_to(x, h.b[i])? {
                b_full += 1;
            }
        }
        if a_full >= 2 && b_full >= 2 {
            majors.insert(x);
        }
    }
    Ok(majors)
}

const PLACEMENTS: usize = 9;

fn place(h: &mut Hyperprism, slot: usize, v: usize) {
    let strip = slot / 3;
    match slot % 3 {
        0 => h.a[strip].insert(v),
        1 => h.c[strip].insert(v),
        2 => h.b[strip].insert(v),
        _ => unreachable!(),
    }
}

/// Adds one new side vertex together with a fresh connecting path for it:
/// the path's new interior vertices join the middle set in the same step.
/// Single-vertex placements cannot reach these extensions because neither
/// the side vertex nor its private interior validates alone.
fn try_rung_extension(
    g: &Graph,
    h: &Hyperprism,
    budget_steps: u64,
) -> Result<Option<Hyperprism>> {
    let outside = g.vertices().minus(h.vertex_set());
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        for v in outside.iter() {
            for join_a in [true, false] {
                let (peers, opposites, far) = if join_a {
                    (h.a[j].union(h.a[k]), h.b[j].union(h.b[k]), h.b[i])
                } else {
                    (h.b[j].union(h.b[k]), h.a[j].union(h.a[k]), h.a[i])
                };
                let vs = VertSet::singleton(v);
                if !g.set_complete_to(vs, peers) || !g.set_anticomplete_to(vs, opposites) {
                    continue;
                }
                for far_end in far.iter() {
                    let allowed = h.c[i].union(outside).with(far_end);
                    let mut paths: Vec<Vec<usize>> = Vec::new();
                    visit_chordless_paths(
                        g,
                        v,
                        far_end,
                        allowed,
                        &mut Budget::new(budget_steps),
                        &mut |p| {
                            paths.push(p.to_vec());
                            std::ops::ControlFlow::Continue(())
                        },
                    )?;
                    for p in paths {
                        let mut cand = h.clone();
                        if join_a {
                            cand.a[i].insert(v);
                        } else {
                            cand.b[i].insert(v);
                        }
                        for &u in &p[1..p.len() - 1] {
                            cand.c[i].insert(u);
                        }
                        if validate_hyperprism(g, &cand, budget_steps)?.is_none() {
                            return Ok(Some(cand));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Extends `h` by repeatedly adding one outside vertex to one of the nine
/// sets whenever the result still validates, falling back to side-plus-path
/// extensions when no single addition does.
pub fn grow_from(g: &Graph, h: Hyperprism, budget_steps: u64) -> Result<Hyperprism> {
    if let Some(v) = validate_hyperprism(g, &h, budget_steps)? {
        return Err(Error::invalid(format!("growth seed invalid: {v}")));
    }
    let mut cur = h;
    loop {
        let mut grew = false;
        let outside = g.vertices().minus(cur.vertex_set());
        'scan: for v in outside.iter() {
            for slot in 0..PLACEMENTS {
                let mut cand = cur.clone();
                place(&mut cand, slot, v);
                if validate_hyperprism(g, &cand, budget_steps)?.is_none() {
                    cur = cand;
                    grew = true;
                    break 'scan;
                }
            }
        }
        if !grew {
            match try_rung_extension(g, &cur, budget_steps)? {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
    }
}

/// Grows the minimal structure of an even prism to a maximal one.
pub fn grow_maximal(g: &Graph, seed: &Prism, budget_steps: u64) -> Result<Hyperprism> {
    if seed.parity != Parity::Even {
        return Err(Error::invalid("growth seed must be an even prism"));
    }
    grow_from(g, Hyperprism::from_prism(seed), budget_steps)
}

/// True when no single outside vertex can join any of the nine sets.
pub fn is_maximal(g: &Graph, h: &Hyperprism, budget_steps: u64) -> Result<bool> {
    let outside = g.vertices().minus(h.vertex_set());
    for v in outside.iter() {
        for slot in 0..PLACEMENTS {
            let mut cand = h.clone();
            place(&mut cand, slot, v);
            if validate_hyperprism(g, &cand, budget_steps)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A strip qualifies when both of its sides are cliques and every major
/// neighbor is complete to both sides.
pub fn strip_is_good(g: &Graph, h: &Hyperprism, i: usize, majors: VertSet) -> Result<bool> {
    Ok(g.is_clique(h.a[i])
        && g.is_clique(h.b[i])
        && g.set_complete_to(majors, h.a[i])
        && g.set_complete_to(majors, h.b[i]))
}

/// Index of the qualifying strip with fewest vertices, lowest index on ties.
/// At least one strip must qualify for a maximal structure in class.
pub fn select_good_strip(g: &Graph, h: &Hyperprism, majors: VertSet) -> Result<usize> {
    let mut best: Option<(usize, usize)> = None;
    for i in 0..3 {
        if strip_is_good(g, h, i, majors)? {
            let size = h.strip_vertices(i).len();
            if best.map_or(true, |(bs, _)| size < bs) {
                best = Some((size, i));
            }
        }
    }
    best.map(|(_, i)| i).ok_or_else(|| {
        Error::lemma(
            "good strip exists",
            format!(
                "no strip has clique sides with full major adjacency; majors {:?}",
                majors.iter().collect::<Vec<_>>()
            ),
        )
    })
}

/// One outside component whose attachment leaves every allowed zone.
#[derive(Debug, Clone)]
pub struct LocalityViolation {
    pub component: VertSet,
    pub attachments: VertSet,
}

#[derive(Debug, Clone, Default)]
pub struct LocalityReport {
    pub violations: Vec<LocalityViolation>,
}

impl LocalityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every connected piece of the rest of the graph attaches
/// inside a single strip or inside one of the two side unions.
pub fn check_local_attachments(g: &Graph, h: &Hyperprism, majors: VertSet) -> Result<LocalityReport> {
    let removed = h.vertex_set().union(majors);
    let zones = [
        h.strip_vertices(0),
        h.strip_vertices(1),
        h.strip_vertices(2),
        h.a_union(),
        h.b_union(),
    ];
    let mut report = LocalityReport::default();
    for comp in g.components(removed) {
        let mut attach = VertSet::new();
        for v in comp.iter() {
            attach = attach.union(g.neighbors(v).intersect(h.vertex_set()));
        }
        if !zones.iter().any(|z| attach.is_subset_of(*z)) {
            report.violations.push(LocalityViolation {
                component: comp,
                attachments: attach,
            });
        }
    }
    Ok(report)
}

/// Components of the graph after removing the majors and both side unions.
/// The three middle sets must fall into pairwise distinct components.
pub fn cutset_components(g: &Graph, h: &Hyperprism, majors: VertSet) -> Result<Vec<VertSet>> {
    let removed = majors.union(h.a_union()).union(h.b_union());
    let comps = g.components(removed);
    for comp in &comps {
        let touched: Vec<usize> = (0..3)
            .filter(|&i| !comp.intersect(h.c[i]).is_empty())
            .collect();
        if touched.len() > 1 {
            return Err(Error::lemma(
                "middle sets separated",
                format!(
                    "component {:?} meets middle sets {:?}",
                    comp.iter().collect::<Vec<_>>(),
                    touched
                ),
            ));
        }
    }
    Ok(comps)
}

/// Per strip: the majors together with that strip's two sides must separate
/// its middle set from the other two strips.
pub fn check_strip_separation(g: &Graph, h: &Hyperprism, majors: VertSet) -> Result<()> {
    for i in 0..3 {
        let removed = majors.union(h.a[i]).union(h.b[i]);
        let others = h.strip_vertices((i + 1) % 3).union(h.strip_vertices((i + 2) % 3));
        for comp in g.components(removed) {
            if !comp.intersect(h.c[i]).is_empty() && !comp.intersect(others).is_empty() {
                return Err(Error::lemma(
                    "strip cut",
                    format!(
                        "strip {} middle set reaches another strip through component {:?}",
                        i + 1,
                        comp.iter().collect::<Vec<_>>()
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// Every major neighbor must be complete to at least two of the `a` sides
/// and at least two of the `b` sides.
pub fn check_major_two_side_completeness(
    g: &Graph,
    h: &Hyperprism,
    majors: VertSet,
) -> Result<()> {
    for x in majors.iter() {
        let a_full = (0..3).filter(|&i| g.is_complete_to(x, h.a[i]).unwrap_or(false)).count();
        let b_full = (0..3).filter(|&i| g.is_complete_to(x, h.b[i]).unwrap_or(false)).count();
        if a_full < 2 || b_full < 2 {
            return Err(Error::lemma(
                "major side coverage",
                format!("major {x} complete to {a_full} a-sides and {b_full} b-sides"),
            ));
        }
    }
    Ok(())
}

/// At least two of the three `a` sides and two of the `b` sides are cliques.
pub fn check_clique_sides(g: &Graph, h: &Hyperprism) -> Result<()> {
    let a_cliques = (0..3).filter(|&i| g.is_clique(h.a[i])).count();
    let b_cliques = (0..3).filter(|&i| g.is_clique(h.b[i])).count();
    if a_cliques < 2 || b_cliques < 2 {
        return Err(Error::lemma(
            "clique sides",
            format!("{a_cliques} a-sides and {b_cliques} b-sides are cliques"),
        ));
    }
    Ok(())
}

/// The major set as a whole must be complete to at least two full `a` sides
/// and two full `b` sides.
pub fn check_major_side_completeness(g: &Graph, h: &Hyperprism, majors: VertSet) -> Result<()> {
    if majors.is_empty() {
        return Ok(());
    }
    let a_full = (0..3)
        .filter(|&i| g.set_complete_to(majors, h.a[i]))
        .count();
    let b_full = (0..3)
        .filter(|&i| g.set_complete_to(majors, h.b[i]))
        .count();
    if a_full < 2 || b_full < 2 {
        return Err(Error::lemma(
            "major set coverage",
            format!("major set complete to {a_full} a-sides and {b_full} b-sides"),
        ));
    }
    Ok(())
}

/// For a prism whose paths all have length at least two: any single vertex,
/// or non-adjacent pair, whose every member has two or more neighbors in
/// each corner triple must see two corners of each triple completely.
pub fn check_two_neighbor_sets_see_corners(g: &Graph, p: &Prism, budget_steps: u64) -> Result<()> {
    let _ = budget_steps;
    if p.paths.iter().any(|path| path.len() < 2) {
        return Ok(());
    }
    let per_vertex_hits = |x: usize, corners: [usize; 3]| -> usize {
        corners
            .iter()
            .filter(|&&corner| g.are_adjacent(x, corner))
            .count()
    };
    let qualifies =
        |x: usize| per_vertex_hits(x, p.triangle_a) >= 2 && per_vertex_hits(x, p.triangle_b) >= 2;
    let pv = p.vertex_set();
    let outside: Vec<usize> = g
        .vertices()
        .minus(pv)
        .iter()
        .filter(|&x| qualifies(x))
        .collect();
    let mut candidates: Vec<VertSet> = Vec::new();
    for (idx, &x) in outside.iter().enumerate() {
        candidates.push(VertSet::from_iter([x]));
        for &y in &outside[idx + 1..] {
            if !g.are_adjacent(x, y) {
                candidates.push(VertSet::from_iter([x, y]));
            }
        }
    }
    for set in candidates {
        let complete_corners = |corners: [usize; 3]| -> usize {
            corners
                .iter()
                .filter(|&&corner| set.iter().all(|s| g.are_adjacent(s, corner)))
                .count()
        };
        if complete_corners(p.triangle_a) < 2 || complete_corners(p.triangle_b) < 2 {
            return Err(Error::lemma(
                "corner coverage",
                format!(
                    "members of {:?} each see two corners per triple yet two complete corners are missing",
                    set.iter().collect::<Vec<_>>()
                ),
            ));
        }
    }
    Ok(())
}
