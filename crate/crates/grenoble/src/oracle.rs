use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::detect::is_even_pair;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertSet};

/// Largest graph the exponential reference routines accept.
pub const ORACLE_CAP: usize = 40;

/// Proper coloring whose colors form the prefix `0..num_colors`, every color
/// used at least once.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    assignment: BTreeMap<usize, usize>,
}

impl Coloring {
    /// Validates that the used colors are exactly `0..k` for some `k`.
    pub fn from_assignment(assignment: BTreeMap<usize, usize>) -> Result<Coloring> {
        let mut used: Vec<usize> = assignment.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        for (i, c) in used.iter().enumerate() {
            if *c != i {
                return Err(Error::invalid(format!(
                    "colors must form a prefix 0..k, color {i} missing"
                )));
            }
        }
        Ok(Coloring { assignment })
    }

    pub fn empty() -> Coloring {
        Coloring {
            assignment: BTreeMap::new(),
        }
    }

    pub fn num_colors(&self) -> usize {
        self.assignment.values().copied().max().map_or(0, |m| m + 1)
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.assignment.get(&v).copied()
    }

    pub fn domain(&self) -> VertSet {
        self.assignment.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    pub fn vertices_with(&self, color: usize) -> VertSet {
        self.assignment
            .iter()
            .filter(|&(_, &c)| c == color)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Whether every edge of `g` gets two colors and every vertex is colored.
    pub fn is_proper(&self, g: &Graph) -> bool {
        if self.domain() != g.vertices() {
            return false;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| self.assignment[&u] != self.assignment[&v])
    }

    /// Re-map colors; the result must still be a prefix coloring.
    pub fn map_colors(&self, f: impl Fn(usize) -> usize) -> Result<Coloring> {
        let assignment = self.assignment.iter().map(|(&v, &c)| (v, f(c))).collect();
        Coloring::from_assignment(assignment)
    }
}

/// Clique certificate paired with a coloring of equal size.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliqueWitness {
    members: VertSet,
}

impl CliqueWitness {
    pub fn new(members: VertSet) -> CliqueWitness {
        CliqueWitness { members }
    }

    pub fn members(&self) -> VertSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.vertex_count() > ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "oracle vertex count",
            limit: ORACLE_CAP,
            actual: g.vertex_count(),
        });
    }
    Ok(())
}

/// Vertices ordered by descending degree, ascending id on ties.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn clique_search(
    g: &Graph,
    order: &[usize],
    current: VertSet,
    cand: VertSet,
    best: &mut usize,
    target: Option<usize>,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    if let Some(t) = target {
        if current.len() >= t {
            return Ok(true);
        }
        if current.len() + cand.len() < t {
            return Ok(false);
        }
    } else {
        if current.len() > *best {
            *best = current.len();
        }
        if current.len() + cand.len() <= *best {
            return Ok(false);
        }
    }
    let mut remaining = cand;
    for &v in order {
        if !remaining.contains(v) {
            continue;
        }
        remaining = remaining.without(v);
        let next = remaining.intersect(g.neighbors(v));
        if clique_search(g, order, current.with(v), next, best, target, budget)? {
            return Ok(true);
        }
        if target.is_none() && current.len() + 1 + remaining.len() <= *best {
            return Ok(false);
        }
    }
    Ok(false)
}

fn max_clique_size(g: &Graph, cand: VertSet, budget: &mut Budget) -> Result<usize> {
    let order = degree_order(g);
    let mut best = 0;
    clique_search(g, &order, VertSet::EMPTY, cand, &mut best, None, budget)?;
    Ok(best)
}

fn exists_clique(g: &Graph, within: VertSet, size: usize, budget: &mut Budget) -> Result<bool> {
    if size == 0 {
        return Ok(true);
    }
    let order = degree_order(g);
    let mut best = 0;
    clique_search(g, &order, VertSet::EMPTY, within, &mut best, Some(size), budget)
}

/// Lexicographically smallest maximum clique, by branch and bound plus
/// ascending feasibility probes.
pub fn max_clique_exact(g: &Graph, budget: &mut Budget) -> Result<CliqueWitness> {
    check_cap(g)?;
    let omega = max_clique_size(g, g.vertices(), budget)?;
    let mut chosen = VertSet::EMPTY;
    let mut cand = g.vertices();
    while chosen.len() < omega {
        let mut picked = None;
        for v in cand.iter() {
            let rest: VertSet = cand.intersect(g.neighbors(v)).iter().filter(|&u| u > v).collect();
            if exists_clique(g, rest, omega - chosen.len() - 1, budget)? {
                picked = Some((v, rest));
                break;
            }
        }
        let (v, rest) = picked.expect("a maximum clique always extends");
        chosen = chosen.with(v);
        cand = rest;
    }
    Ok(CliqueWitness::new(chosen))
}

fn k_coloring(
    g: &Graph,
    order: &[usize],
    k: usize,
    budget: &mut Budget,
) -> Result<Option<Coloring>> {
    fn assign(
        g: &Graph,
        order: &[usize],
        k: usize,
        idx: usize,
        colors: &mut BTreeMap<usize, usize>,
        max_used: usize,
        budget: &mut Budget,
    ) -> Result<bool> {
        if idx == order.len() {
            return Ok(true);
        }
        let v = order[idx];
        // Symmetry breaking: a fresh color may only be the next unused one.
        let limit = (max_used + 1).min(k - 1);
        for c in 0..=limit {
            budget.tick()?;
            let conflict = g
                .neighbors(v)
                .iter()
                .any(|u| colors.get(&u) == Some(&c));
            if conflict {
                continue;
            }
            colors.insert(v, c);
            let next_max = max_used.max(c);
            if assign(g, order, k, idx + 1, colors, next_max, budget)? {
                return Ok(true);
            }
            colors.remove(&v);
        }
        Ok(false)
    }

    if order.is_empty() {
        return Ok(Some(Coloring::empty()));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut colors = BTreeMap::new();
    colors.insert(order[0], 0);
    if assign(g, order, k, 1, &mut colors, 0, budget)? {
        Ok(Some(Coloring::from_assignment(colors)?))
    } else {
        Ok(None)
    }
}

fn greedy_upper_bound(g: &Graph, order: &[usize]) -> usize {
    let mut colors: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in order {
        let mut c = 0;
        loop {
            if g.neighbors(v).iter().all(|u| colors.get(&u) != Some(&c)) {
                break;
            }
            c += 1;
        }
        colors.insert(v, c);
    }
    colors.values().copied().max().map_or(0, |m| m + 1)
}

/// Exact chromatic number with a witnessing coloring.
pub fn chromatic_number_exact(g: &Graph, budget: &mut Budget) -> Result<(usize, Coloring)> {
    check_cap(g)?;
    if g.vertex_count() == 0 {
        return Ok((0, Coloring::empty()));
    }
    let order = degree_order(g);
    let lower = max_clique_size(g, g.vertices(), budget)?;
    let upper = greedy_upper_bound(g, &order);
    for k in lower..=upper {
        if let Some(coloring) = k_coloring(g, &order, k, budget)? {
            return Ok((k, coloring));
        }
    }
    unreachable!("greedy bound is always achievable")
}

/// Full certificate check: proper prefix coloring over exactly the graph's
/// vertices, clique really a clique, and clique size equals color count.
pub fn verify_coloring(g: &Graph, coloring: &Coloring, clique: &CliqueWitness) -> bool {
    coloring.is_proper(g)
        && clique.members().is_subset_of(g.vertices())
        && g.is_clique(clique.members())
        && clique.len() == coloring.num_colors()
}

/// Lexicographically first even pair, if any.
pub fn find_any_even_pair(g: &Graph, budget: &mut Budget) -> Result<Option<(usize, usize)>> {
    let vs: Vec<usize> = g.vertices().to_vec();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if g.are_adjacent(vs[i], vs[j]) {
                continue;
            }
            if is_even_pair(g, vs[i], vs[j], budget)? {
                return Ok(Some((vs[i], vs[j])));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{c_n, complete, petersen};

    #[test]
    fn clique_sizes_on_known_graphs() {
        let mut b = Budget::default();
        assert_eq!(max_clique_exact(&petersen(), &mut b).unwrap().len(), 2);
        let mut b = Budget::default();
        assert_eq!(max_clique_exact(&complete(5), &mut b).unwrap().len(), 5);
        let mut b = Budget::default();
        let w = max_clique_exact(&c_n(5), &mut b).unwrap();
        assert_eq!(w.members().to_vec(), vec![0, 1]);
    }

    #[test]
    fn lex_min_clique_is_smallest() {
        // Two triangles {0,4,5} and {1,2,3}; lex-min maximum clique is {0,4,5}.
        let g = Graph::from_edges(6, &[(0, 4), (0, 5), (4, 5), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut b = Budget::default();
        let w = max_clique_exact(&g, &mut b).unwrap();
        assert_eq!(w.members().to_vec(), vec![0, 4, 5]);
    }

    #[test]
    fn chromatic_numbers_on_known_graphs() {
        for (g, want) in [
            (c_n(5), 3),
            (c_n(6), 2),
            (complete(4), 4),
            (petersen(), 3),
        ] {
            let mut b = Budget::default();
            let (chi, coloring) = chromatic_number_exact(&g, &mut b).unwrap();
            assert_eq!(chi, want, "graph {g:?}");
            assert!(coloring.is_proper(&g));
            assert_eq!(coloring.num_colors(), chi);
        }
    }

    #[test]
    fn verify_coloring_demands_matching_sizes() {
        let g = c_n(6);
        let mut b = Budget::default();
        let (_, coloring) = chromatic_number_exact(&g, &mut b).unwrap();
        let mut b = Budget::default();
        let clique = max_clique_exact(&g, &mut b).unwrap();
        assert!(verify_coloring(&g, &coloring, &clique));

        // C5 has chi = 3 > omega = 2, so no certificate pair can verify.
        let g = c_n(5);
        let mut b = Budget::default();
        let (_, coloring) = chromatic_number_exact(&g, &mut b).unwrap();
        let mut b = Budget::default();
        let clique = max_clique_exact(&g, &mut b).unwrap();
        assert!(!verify_coloring(&g, &coloring, &clique));
    }

    #[test]
    fn coloring_prefix_invariant_enforced() {
        let bad = [(0, 0), (1, 2)].into_iter().collect();
        assert!(Coloring::from_assignment(bad).is_err());
        let good = [(0, 0), (1, 1), (2, 0)].into_iter().collect();
        let c = Coloring::from_assignment(good).unwrap();
        assert_eq!(c.num_colors(), 2);
        assert_eq!(c.vertices_with(0).to_vec(), vec![0, 2]);
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let edges: Vec<(usize, usize)> = (0..41).map(|i| (i, (i + 1) % 42)).collect();
        let g = Graph::from_edges(42, &edges).unwrap();
        let mut b = Budget::default();
        assert!(matches!(
            max_clique_exact(&g, &mut b),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            chromatic_number_exact(&g, &mut b),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn even_pair_scan_is_lexicographic() {
        let mut b = Budget::default();
        assert_eq!(find_any_even_pair(&c_n(6), &mut b).unwrap(), Some((0, 2)));
        let mut b = Budget::default();
        assert_eq!(find_any_even_pair(&c_n(5), &mut b).unwrap(), None);
        let mut b = Budget::default();
        assert_eq!(find_any_even_pair(&complete(4), &mut b).unwrap(), None);
    }
}
