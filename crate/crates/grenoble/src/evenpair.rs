//! Side orders over the selected strip, convergence handling, and the
//! extraction of removable vertex pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::chordless::visit_chordless_paths;
use crate::detect::{is_even_pair, Witness, WitnessKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Parity, Path, VertSet};
use crate::hyperprism::{
    find_major_neighbors, grow_from, select_good_strip, validate_hyperprism, Hyperprism,
};

/// A graph together with a structure normalized for side work: the selected
/// strip sits at index 0 and its first side is the smaller one.
#[derive(Debug, Clone)]
pub struct StripContext {
    graph: Graph,
    hp: Hyperprism,
    majors: VertSet,
    a_side: Vec<usize>,
    b_side: Vec<usize>,
    swapped: bool,
    rotation: [usize; 3],
}

impl StripContext {
    pub fn new(g: &Graph, hp: &Hyperprism, budget_steps: u64) -> Result<StripContext> {
        let majors = find_major_neighbors(g, hp, budget_steps)?;
        let good = select_good_strip(g, hp, majors)?;
        let rotation = [good, (good + 1) % 3, (good + 2) % 3];
        let mut norm = hp.rotated(rotation);
        let mut swapped = false;
        if norm.a[0].len() > norm.b[0].len() {
            norm = norm.swapped();
            swapped = true;
        }
        let a_side: Vec<usize> = norm.a[0].iter().collect();
        let b_side: Vec<usize> = norm.b[0].iter().collect();
        Ok(StripContext {
            graph: g.clone(),
            hp: norm,
            majors,
            a_side,
            b_side,
            swapped,
            rotation,
        })
    }

    /// Restriction after deleting one extracted pair. The structure is not
    /// revalidated: later side work only walks the surviving strip paths.
    fn shrunken(&self, pair: (usize, usize)) -> Result<StripContext> {
        let gone = VertSet::from_iter([pair.0, pair.1]);
        let graph = self.graph.induced(self.graph.vertices().minus(gone))?;
        let mut hp = self.hp.clone();
        hp.a[0].remove(pair.0);
        hp.b[0].remove(pair.1);
        if hp.a[0].is_empty() || hp.b[0].is_empty() {
            return Err(Error::invalid("cannot shrink a side to empty"));
        }
        Ok(StripContext {
            graph,
            a_side: hp.a[0].iter().collect(),
            b_side: hp.b[0].iter().collect(),
            hp,
            majors: self.majors,
            swapped: self.swapped,
            rotation: self.rotation,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn hyperprism(&self) -> &Hyperprism {
        &self.hp
    }

    pub fn majors(&self) -> VertSet {
        self.majors
    }

    pub fn a_side(&self) -> &[usize] {
        &self.a_side
    }

    pub fn b_side(&self) -> &[usize] {
        &self.b_side
    }

    pub fn was_swapped(&self) -> bool {
        self.swapped
    }

    pub fn rotation(&self) -> [usize; 3] {
        self.rotation
    }

    pub fn good_strip_size(&self) -> usize {
        self.hp.strip_vertices(0).len()
    }

    fn side_of(&self, v: usize) -> Option<bool> {
        if self.hp.a[0].contains(v) {
            Some(true)
        } else if self.hp.b[0].contains(v) {
            Some(false)
        } else {
            None
        }
    }
}

/// Placement of a chordless path with both ends on the selected strip's
/// sides and no major vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    /// The whole path is a connecting path of the selected strip.
    OneRung,
    /// Dropping both ends leaves a connecting path of the named strip
    /// (normalized index).
    InteriorRung(usize),
    /// Odd path inside the selected strip touching exactly one side next to
    /// its matching end.
    OddSidePath,
}

/// Classifies a chordless path from the first side to the second side of
/// the selected strip. The path must avoid major vertices.
pub fn classify_path(ctx: &StripContext, p: &Path) -> Result<PathClass> {
    let verts = p.vertex_set();
    if !ctx.hp.a[0].contains(p.first()) || !ctx.hp.b[0].contains(p.last()) {
        return Err(Error::invalid(
            "path must run from the first side to the second",
        ));
    }
    if !verts.intersect(ctx.majors).is_empty() {
        return Err(Error::invalid("path must avoid major vertices"));
    }
    if !verts.is_subset_of(ctx.hp.vertex_set()) {
        return Err(Error::lemma(
            "path containment",
            format!("path {:?} leaves the structure", p.vertices()),
        ));
    }
    if p.interior_set().is_subset_of(ctx.hp.c[0]) {
        return Ok(PathClass::OneRung);
    }
    if p.len() >= 3 {
        let inner = p.interior();
        let (first, last) = (inner[0], inner[inner.len() - 1]);
        let mid: VertSet = inner[1..inner.len() - 1].iter().copied().collect();
        for i in 0..3 {
            let fits_forward = ctx.hp.a[i].contains(first) && ctx.hp.b[i].contains(last);
            let fits_backward = ctx.hp.b[i].contains(first) && ctx.hp.a[i].contains(last);
            if (fits_forward || fits_backward) && mid.is_subset_of(ctx.hp.c[i]) {
                return Ok(PathClass::InteriorRung(i));
            }
        }
    }
    let strip = ctx.hp.strip_vertices(0);
    if p.parity() == Parity::Odd && verts.is_subset_of(strip) {
        let vs = p.vertices();
        let second_on_a = ctx.hp.a[0].contains(vs[1]);
        let penult_on_b = ctx.hp.b[0].contains(vs[vs.len() - 2]);
        if second_on_a != penult_on_b {
            return Ok(PathClass::OddSidePath);
        }
    }
    Err(Error::lemma(
        "path trichotomy",
        format!("path {:?} fits no allowed shape", p.vertices()),
    ))
}

fn check_order_args(ctx: &StripContext, base: usize, x: usize, y: usize) -> Result<()> {
    let base_on_a = ctx
        .side_of(base)
        .ok_or_else(|| Error::invalid("order base must lie on a side"))?;
    for v in [x, y] {
        match ctx.side_of(v) {
            Some(side) if side != base_on_a => {}
            _ => return Err(Error::invalid("order arguments must lie opposite the base")),
        }
    }
    Ok(())
}

/// All connecting paths from `y` to `base` on which `x` has no neighbor
/// besides `y`. Each such path extends through the edge `x y` to an odd
/// chordless path witnessing `x < y` under the base.
fn witness_rungs(
    ctx: &StripContext,
    base: usize,
    x: usize,
    y: usize,
    budget: &mut Budget,
) -> Result<Vec<Path>> {
    if x == y || !ctx.graph.are_adjacent(x, y) {
        return Ok(Vec::new());
    }
    let allowed = ctx.hp.c[0].with(y).with(base);
    let mut out = Vec::new();
    visit_chordless_paths(&ctx.graph, y, base, allowed, budget, &mut |p| {
        let clean = p.iter().all(|&v| v == y || !ctx.graph.are_adjacent(x, v));
        if clean {
            out.push(Path::from_trusted(p.to_vec()));
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Whether `x` precedes `y` under `base`: some strip path from `y` to
/// `base` avoids every neighbor of `x` except `y` itself.
pub fn order_less(
    ctx: &StripContext,
    base: usize,
    x: usize,
    y: usize,
    budget: &mut Budget,
) -> Result<bool> {
    check_order_args(ctx, base, x, y)?;
    Ok(!witness_rungs(ctx, base, x, y, budget)?.is_empty())
}

/// Definitional route: an odd chordless path from `x` to `base` whose
/// second vertex is `y`, searched over the whole graph. Agrees with
/// [`order_less`] on class inputs.
pub fn order_less_unrestricted(
    ctx: &StripContext,
    base: usize,
    x: usize,
    y: usize,
    budget: &mut Budget,
) -> Result<bool> {
    check_order_args(ctx, base, x, y)?;
    if x == y {
        return Ok(false);
    }
    let mut found = false;
    visit_chordless_paths(
        &ctx.graph,
        x,
        base,
        ctx.graph.vertices(),
        budget,
        &mut |p| {
            if p[1] == y && Parity::of_len(p.len() - 1) == Parity::Odd {
                found = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        },
    )?;
    Ok(found)
}

/// Strict relation induced by one base vertex on the opposite side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRelation {
    pub base: usize,
    pub domain: Vec<usize>,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl OrderRelation {
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// Domain elements with nothing above them.
    pub fn maximal_elements(&self) -> Vec<usize> {
        self.domain
            .iter()
            .copied()
            .filter(|&x| !self.domain.iter().any(|&y| self.less(x, y)))
            .collect()
    }
}

/// Two strip paths from distinct side vertices to a shared opposite end,
/// each avoiding the other origin's neighborhood.
#[derive(Debug, Clone)]
pub struct ConvergenceWitness {
    pub rung_a: Path,
    pub rung_b: Path,
}

impl ConvergenceWitness {
    pub fn shared_end(&self) -> usize {
        self.rung_a.last()
    }

    fn union_size(&self) -> usize {
        self.rung_a.vertex_set().union(self.rung_b.vertex_set()).len()
    }

    fn sort_key(&self) -> (usize, Vec<usize>, Vec<usize>) {
        (
            self.union_size(),
            self.rung_a.vertices().to_vec(),
            self.rung_b.vertices().to_vec(),
        )
    }

    /// Definitional check: both paths share their far end, start apart, and
    /// each origin has no neighbor on the other path past its origin.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let (ra, rb) = (&self.rung_a, &self.rung_b);
        if ra.last() != rb.last() || ra.first() == rb.first() {
            return Err(Error::invalid("paths must share exactly the far end"));
        }
        for (origin, other) in [(ra.first(), rb), (rb.first(), ra)] {
            for &v in other.vertices() {
                if v != other.first() && g.are_adjacent(origin, v) {
                    return Err(Error::invalid(format!(
                        "origin {origin} has neighbor {v} on the other path"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub enum OrderOutcome {
    Order(OrderRelation),
    Convergence(ConvergenceWitness),
}

/// Builds the relation under one base, checking its laws. A failed
/// antisymmetry pair is returned as convergence; a transitivity failure
/// without one cannot happen in class.
pub fn build_order(ctx: &StripContext, base: usize, budget_steps: u64) -> Result<OrderOutcome> {
    let base_on_a = ctx
        .side_of(base)
        .ok_or_else(|| Error::invalid("order base must lie on a side"))?;
    let domain: Vec<usize> = if base_on_a {
        ctx.b_side.clone()
    } else {
        ctx.a_side.clone()
    };
    let mut pairs = BTreeSet::new();
    for &x in &domain {
        for &y in &domain {
            if x != y && order_less(ctx, base, x, y, &mut Budget::new(budget_steps))? {
                pairs.insert((x, y));
            }
        }
    }

    let mut best: Option<ConvergenceWitness> = None;
    for &(x, y) in &pairs {
        if x < y && pairs.contains(&(y, x)) {
            // x < y yields a path from y to base avoiding x's neighborhood
            // past y; y < x the mirror image. Every cross pair converges.
            let from_y = witness_rungs(ctx, base, x, y, &mut Budget::new(budget_steps))?;
            let from_x = witness_rungs(ctx, base, y, x, &mut Budget::new(budget_steps))?;
            for ry in &from_y {
                for rx in &from_x {
                    let w = ConvergenceWitness {
                        rung_a: ry.clone(),
                        rung_b: rx.clone(),
                    };
                    w.validate(&ctx.graph)?;
                    if best.as_ref().map_or(true, |b| w.sort_key() < b.sort_key()) {
                        best = Some(w);
                    }
                }
            }
        }
    }
    if let Some(w) = best {
        return Ok(OrderOutcome::Convergence(w));
    }

    for &(x, y) in &pairs {
        for &z in &domain {
            if pairs.contains(&(y, z)) && z != x && !pairs.contains(&(x, z)) {
                return Err(Error::lemma(
                    "order transitivity",
                    format!("{x} < {y} < {z} under {base} without {x} < {z}"),
                ));
            }
        }
    }
    Ok(OrderOutcome::Order(OrderRelation { base, domain, pairs }))
}

/// All relations for both sides. `on_a` holds the relations over the first
/// side keyed by second-side bases; `on_b` the mirror.
#[derive(Debug, Clone)]
pub struct Orders {
    pub on_a: BTreeMap<usize, OrderRelation>,
    pub on_b: BTreeMap<usize, OrderRelation>,
}

pub enum OrdersOutcome {
    Built(Orders),
    Convergence(ConvergenceWitness),
}

/// Builds every base relation, or reports the smallest convergence found.
pub fn build_all_orders(ctx: &StripContext, budget_steps: u64) -> Result<OrdersOutcome> {
    let mut on_a = BTreeMap::new();
    let mut on_b = BTreeMap::new();
    let mut best: Option<ConvergenceWitness> = None;
    let mut bases: Vec<(usize, bool)> = ctx.b_side.iter().map(|&b| (b, true)).collect();
    bases.extend(ctx.a_side.iter().map(|&a| (a, false)));
    for (base, to_a) in bases {
        match build_order(ctx, base, budget_steps)? {
            OrderOutcome::Order(rel) => {
                if to_a {
                    on_a.insert(base, rel);
                } else {
                    on_b.insert(base, rel);
                }
            }
            OrderOutcome::Convergence(w) => {
                if best.as_ref().map_or(true, |b| w.sort_key() < b.sort_key()) {
                    best = Some(w);
                }
            }
        }
    }
    if let Some(w) = best {
        return Ok(OrdersOutcome::Convergence(w));
    }
    Ok(OrdersOutcome::Built(Orders { on_a, on_b }))
}

/// Antisymmetry and transitivity over the stored relations.
pub fn check_order_laws(orders: &Orders) -> Result<()> {
    for rel in orders.on_a.values().chain(orders.on_b.values()) {
        for &(x, y) in &rel.pairs {
            if rel.pairs.contains(&(y, x)) {
                return Err(Error::lemma(
                    "order antisymmetry",
                    format!("{x} and {y} precede each other under {}", rel.base),
                ));
            }
            for &z in &rel.domain {
                if z != x && rel.less(y, z) && !rel.less(x, z) {
                    return Err(Error::lemma(
                        "order transitivity",
                        format!("{x} < {y} < {z} under {} without {x} < {z}", rel.base),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Cross-base law: `a < u` under `b` and `b < v` under `u` force `a < u`
/// under `v`, for side vertices `a, u` and bases `b, v`.
pub fn check_order_twist(orders: &Orders) -> Result<()> {
    for (&b, rel_b) in &orders.on_a {
        for &(a, u) in &rel_b.pairs {
            if let Some(rel_u) = orders.on_b.get(&u) {
                for &v in &rel_u.domain {
                    if v != b && rel_u.less(b, v) {
                        let holds = orders.on_a.get(&v).is_some_and(|rel_v| rel_v.less(a, u));
                        if !holds {
                            return Err(Error::lemma(
                                "order twist",
                                format!(
                                    "{a} < {u} under {b} and {b} < {v} under {u}, \
                                     yet not {a} < {u} under {v}"
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn lemma_norm(detail: String) -> Error {
    Error::lemma("convergence normalization", detail)
}

fn lemma_res(detail: String) -> Error {
    Error::lemma("convergence resolution", detail)
}

/// Smallest positive index of `seq` whose vertex has a neighbor on `list`
/// past its first entry.
fn first_contact(g: &Graph, seq: &[usize], list: &[usize]) -> Option<usize> {
    (1..seq.len()).find(|&m| list.iter().skip(1).any(|&u| g.are_adjacent(seq[m], u)))
}

/// Validates one normalization replacement: a chordless even path whose
/// union with the untouched partner is strictly smaller than before.
fn replacement_path(
    g: &Graph,
    verts: Vec<usize>,
    partner: &[usize],
    old_union: VertSet,
) -> Result<Vec<usize>> {
    let path = Path::new(g, verts).map_err(|e| lemma_norm(format!("replacement broken: {e}")))?;
    if !path.is_chordless(g) {
        return Err(lemma_norm(format!(
            "replacement {:?} has a chord",
            path.vertices()
        )));
    }
    if path.parity() != Parity::Even {
        return Err(lemma_norm("replacement path must be even".into()));
    }
    let partner_set: VertSet = partner.iter().copied().collect();
    if path.vertex_set().union(partner_set).len() >= old_union.len() {
        return Err(lemma_norm("replacement failed to shrink the paths".into()));
    }
    Ok(path.vertices().to_vec())
}

/// Rewrites a convergence into a strictly smaller structure.
///
/// The two paths are normalized until their far segments align, then their
/// initial segments become two new strips and everything else folds into a
/// third. The result is grown maximal and must select a strictly smaller
/// good strip than `ctx` did.
pub fn resolve_convergence(
    g: &Graph,
    ctx: &StripContext,
    w: &ConvergenceWitness,
    budget_steps: u64,
) -> Result<Hyperprism> {
    let old_size = ctx.good_strip_size();
    let mut hp = ctx.hyperprism().clone();
    let shared = w.shared_end();
    if hp.a[0].contains(shared) {
        hp = hp.swapped();
    }
    if !hp.b[0].contains(shared) {
        return Err(Error::invalid("shared end must lie on a side"));
    }
    w.validate(g)?;
    let mut rp: Vec<usize> = w.rung_a.vertices().to_vec();
    let mut rq: Vec<usize> = w.rung_b.vertices().to_vec();
    if !hp.a[0].contains(rp[0]) || !hp.a[0].contains(rq[0]) {
        return Err(Error::invalid("path origins must lie on the first side"));
    }

    let max_rounds = g.vertex_count() + 2;
    let mut round = 0;
    let (fi, fj) = loop {
        round += 1;
        if round > max_rounds {
            return Err(lemma_norm(
                "path replacement failed to reach a fixed point".into(),
            ));
        }
        let p = rp.len() - 1;
        let q = rq.len() - 1;
        if p < 2 || q < 2 || p % 2 != 0 || q % 2 != 0 {
            return Err(lemma_norm(format!(
                "paths must be even of length two or more, got {p} and {q}"
            )));
        }
        let i = first_contact(g, &rp, &rq)
            .ok_or_else(|| lemma_norm("first path never meets the second".into()))?;
        let j = first_contact(g, &rq, &rp)
            .ok_or_else(|| lemma_norm("second path never meets the first".into()))?;
        let h = (0..=q)
            .find(|&m| g.are_adjacent(rp[i], rq[m]))
            .ok_or_else(|| lemma_norm("contact index vanished".into()))?;
        if h == 0 {
            return Err(lemma_norm(
                "origin adjacency contradicts the convergence hypothesis".into(),
            ));
        }
        if h == q {
            // Both paths together close an odd cycle through the side edge.
            let mut cycle = rp.clone();
            cycle.extend(rq[..q].iter().rev());
            let witness = Witness::cycle(WitnessKind::OddHole, cycle);
            if witness.validate(g) {
                return Err(Error::ClassViolation(Box::new(witness)));
            }
            return Err(lemma_norm("far-end contact without an odd hole".into()));
        }
        // Initial segments up to the first contact close a cycle; in class
        // it must be an even hole, fixing the parities of i and h.
        let mut cycle = rp[..=i].to_vec();
        cycle.extend(rq[..=h].iter().rev());
        if cycle.len() % 2 == 1 {
            let witness = Witness::cycle(WitnessKind::OddHole, cycle);
            if witness.validate(g) {
                return Err(Error::ClassViolation(Box::new(witness)));
            }
            return Err(lemma_norm("odd contact cycle without an odd hole".into()));
        }
        if cycle.len() == 4 {
            let witness = Witness::cycle(WitnessKind::Square, cycle);
            if witness.validate(g) {
                return Err(Error::ClassViolation(Box::new(witness)));
            }
            return Err(lemma_norm("short contact cycle without a square".into()));
        }
        if !crate::detect::is_hole(g, &cycle) {
            return Err(lemma_norm(format!(
                "contact cycle {cycle:?} is not induced"
            )));
        }

        if i != p - 1 {
            let k = (0..=q)
                .rev()
                .find(|&m| g.are_adjacent(rp[i], rq[m]))
                .expect("a contact exists at h");
            if k != h + 1 {
                return Err(lemma_norm(format!(
                    "contacts {h} and {k} of vertex {} must be consecutive",
                    rp[i]
                )));
            }
            if rp[i + 1..] == rq[k..] {
                if h != j {
                    return Err(lemma_norm(format!(
                        "aligned paths need matching first contacts, got {h} and {j}"
                    )));
                }
                break (i, j);
            }
            let old_union: VertSet = rp.iter().chain(rq.iter()).copied().collect();
            let mut next = rp[..=i].to_vec();
            next.extend_from_slice(&rq[k..]);
            rp = replacement_path(g, next, &rq, old_union)?;
            continue;
        }

        if j != q - 1 {
            // Mirror replacement on the second path.
            let h2 = (0..=p)
                .find(|&m| g.are_adjacent(rq[j], rp[m]))
                .ok_or_else(|| lemma_norm("mirror contact vanished".into()))?;
            if h2 == 0 || h2 >= p {
                return Err(lemma_norm("mirror contact out of range".into()));
            }
            let k2 = (0..=p)
                .rev()
                .find(|&m| g.are_adjacent(rq[j], rp[m]))
                .expect("a mirror contact exists at h2");
            if k2 != h2 + 1 {
                return Err(lemma_norm(format!(
                    "mirror contacts {h2} and {k2} of vertex {} must be consecutive",
                    rq[j]
                )));
            }
            if rq[j + 1..] == rp[k2..] {
                return Err(lemma_norm(
                    "mirror alignment is impossible at the far end".into(),
                ));
            }
            let old_union: VertSet = rp.iter().chain(rq.iter()).copied().collect();
            let mut next = rq[..=j].to_vec();
            next.extend_from_slice(&rp[k2..]);
            rq = replacement_path(g, next, &rp, old_union)?;
            continue;
        }

        // Far segments are the shared end itself; the contact is forced.
        if h != q - 1 {
            return Err(lemma_norm(format!(
                "penultimate contact expected, got {h} of {q}"
            )));
        }
        break (p - 1, q - 1);
    };

    let p = rp.len() - 1;
    if fi % 2 != 0 || fj % 2 != 0 {
        // The two initial segments and any path through another strip
        // assemble into a prism with odd members.
        let rungs2 = crate::hyperprism::enumerate_rungs(g, &hp, 1, budget_steps)?;
        let r2 = rungs2
            .first()
            .ok_or_else(|| lemma_res("second strip has no connecting path".into()))?;
        let mut p3 = r2.vertices().to_vec();
        for m in (fi + 1..=p).rev() {
            p3.push(rp[m]);
        }
        let pa = Path::new(g, rp[..=fi].to_vec()).map_err(|e| lemma_res(e.to_string()))?;
        let pb = Path::new(g, rq[..=fj].to_vec()).map_err(|e| lemma_res(e.to_string()))?;
        let pc = Path::new(g, p3).map_err(|e| lemma_res(e.to_string()))?;
        let ta = [pa.first(), pb.first(), pc.first()];
        let tb = [pa.last(), pb.last(), pc.last()];
        return match crate::detect::Prism::from_parts(g, ta, tb, [pa, pb, pc]) {
            Ok(prism) => Err(Error::ClassViolation(Box::new(prism.to_witness()))),
            Err(e @ Error::ClassViolation(_)) => Err(e),
            Err(e) => Err(lemma_res(format!("odd prefix prism did not assemble: {e}"))),
        };
    }
    let pivot = rp[fi + 1];
    if !hp.c[0].contains(pivot) {
        return Err(lemma_res(format!("pivot {pivot} must lie inside the strip")));
    }

    let seg = |list: &[usize], from: usize, to: usize| -> VertSet {
        list[from..=to].iter().copied().collect()
    };
    let mut z = hp.c[1].union(hp.c[2]).union(hp.b[1]).union(hp.b[2]);
    if fi + 2 <= p {
        z = z.union(seg(&rp, fi + 2, p));
    }
    let resolved = Hyperprism {
        a: [
            VertSet::singleton(rp[0]),
            VertSet::singleton(rq[0]),
            hp.a[1].union(hp.a[2]),
        ],
        c: [seg(&rp, 1, fi - 1), seg(&rq, 1, fj - 1), z],
        b: [
            VertSet::singleton(rp[fi]),
            VertSet::singleton(rq[fj]),
            VertSet::singleton(pivot),
        ],
    };
    if let Some(v) = validate_hyperprism(g, &resolved, budget_steps)? {
        return Err(lemma_res(format!("rebuilt structure fails validation: {v}")));
    }
    let grown = grow_from(g, resolved, budget_steps)?;
    let majors = find_major_neighbors(g, &grown, budget_steps)?;
    let good = select_good_strip(g, &grown, majors)?;
    let new_size = grown.strip_vertices(good).len();
    if new_size >= old_size {
        return Err(lemma_res(format!(
            "good strip grew from {old_size} to {new_size}"
        )));
    }
    Ok(grown)
}

/// Chooses a removable pair from the built relations.
///
/// The origin maximizes the predecessor count of its first coordinate under
/// its second; at most one correction hop is ever needed.
pub fn extract_even_pair(ctx: &StripContext, orders: &Orders) -> Result<(usize, usize)> {
    let d_size = |a: usize, b: usize| -> usize {
        orders.on_a[&b].pairs.iter().filter(|&&(_, y)| y == a).count()
    };
    let mut choice: Option<(usize, usize, usize)> = None;
    for &a in &ctx.a_side {
        for &b in &ctx.b_side {
            let d = d_size(a, b);
            if choice.map_or(true, |(best, _, _)| d > best) {
                choice = Some((d, a, b));
            }
        }
    }
    let (_, a, b) = choice.ok_or_else(|| Error::invalid("sides must be nonempty"))?;

    if !orders.on_a[&b].maximal_elements().contains(&a) {
        return Err(Error::lemma(
            "pair extraction",
            format!("{a} maximizes predecessors under {b} yet is not maximal"),
        ));
    }
    let max_of_a = orders.on_b[&a].maximal_elements();
    if max_of_a.contains(&b) {
        return Ok((a, b));
    }
    let v = max_of_a
        .iter()
        .copied()
        .find(|&v| orders.on_b[&a].less(b, v))
        .ok_or_else(|| {
            Error::lemma(
                "pair extraction",
                format!("{b} is not maximal under {a} yet nothing dominates it"),
            )
        })?;
    if orders.on_a[&v].maximal_elements().contains(&a) {
        return Ok((a, v));
    }
    Err(Error::lemma(
        "pair extraction",
        format!("swap to {v} did not close after one hop"),
    ))
}

/// Extracts one pair per vertex of the smaller side, shrinking the graph
/// after each. Every returned pair is verified on the graph it was taken
/// from; the relation stage must stay convergence-free.
pub fn even_pair_sequence(
    ctx: &StripContext,
    first: Orders,
    budget_steps: u64,
) -> Result<Vec<(VertSet, (usize, usize))>> {
    let k = ctx.a_side.len();
    let mut cur = ctx.clone();
    let mut orders = first;
    let mut out = Vec::with_capacity(k);
    for step in 0..k {
        let (a, b) = extract_even_pair(&cur, &orders)?;
        if !is_even_pair(cur.graph(), a, b, &mut Budget::new(budget_steps))? {
            return Err(Error::lemma(
                "extracted pair evenness",
                format!("pair ({a}, {b}) admits an odd chordless path"),
            ));
        }
        out.push((cur.graph().vertices(), (a, b)));
        if step + 1 < k {
            cur = cur.shrunken((a, b))?;
            orders = match build_all_orders(&cur, budget_steps)? {
                OrdersOutcome::Built(o) => o,
                OrdersOutcome::Convergence(_) => {
                    return Err(Error::lemma(
                        "sequence stability",
                        format!("convergence appeared after removing {step} pairs"),
                    ));
                }
            };
        }
    }
    Ok(out)
}
