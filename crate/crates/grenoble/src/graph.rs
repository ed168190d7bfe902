use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex ids live below this bound so adjacency fits in fixed bitmasks.
/// Ids above `MAX_VERTICES` only appear on vertices minted by contraction.
pub const MAX_IDS: usize = 128;

/// Hard cap on the number of vertices in any graph.
pub const MAX_VERTICES: usize = 64;

/// Set of vertex ids, stored as a 128-bit mask. Iteration is always ascending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VertSet(u128);

impl VertSet {
    pub const EMPTY: VertSet = VertSet(0);

    pub fn new() -> VertSet {
        VertSet::EMPTY
    }

    pub fn singleton(v: usize) -> VertSet {
        assert!(v < MAX_IDS, "vertex id {v} out of range");
        VertSet(1u128 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_IDS && self.0 & (1u128 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_IDS, "vertex id {v} out of range");
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_IDS {
            self.0 &= !(1u128 << v);
        }
    }

    pub fn with(mut self, v: usize) -> VertSet {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: usize) -> VertSet {
        self.remove(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertSet) -> VertSet {
        VertSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VertSet) -> VertSet {
        VertSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertSet) -> VertSet {
        VertSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> SetIter {
        SetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertSet {
        let mut s = VertSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertSet {
    type Item = usize;
    type IntoIter = SetIter;
    fn into_iter(self) -> SetIter {
        SetIter(self.0)
    }
}

impl std::ops::BitOr for VertSet {
    type Output = VertSet;
    fn bitor(self, rhs: VertSet) -> VertSet {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for VertSet {
    type Output = VertSet;
    fn bitand(self, rhs: VertSet) -> VertSet {
        self.intersect(rhs)
    }
}

impl std::ops::Sub for VertSet {
    type Output = VertSet;
    fn sub(self, rhs: VertSet) -> VertSet {
        self.minus(rhs)
    }
}

impl std::fmt::Debug for VertSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl From<VertSet> for Vec<usize> {
    fn from(s: VertSet) -> Vec<usize> {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for VertSet {
    type Error = String;
    fn try_from(v: Vec<usize>) -> std::result::Result<VertSet, String> {
        let mut s = VertSet::EMPTY;
        for id in v {
            if id >= MAX_IDS {
                return Err(format!("vertex id {id} out of range"));
            }
            s.insert(id);
        }
        Ok(s)
    }
}

/// Ascending iterator over a `VertSet`.
pub struct SetIter(u128);

impl Iterator for SetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Parity of a length or cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Immutable simple graph over at most [`MAX_VERTICES`] vertices.
///
/// Ids are dense `0..n` after loading from a file; graphs produced by
/// contraction keep the surviving parent ids and mint fresh ones above them.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    verts: VertSet,
    adj: [VertSet; MAX_IDS],
    name: Option<String>,
}

impl Graph {
    /// Graph on vertices `0..n` with the given undirected edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let verts: VertSet = (0..n).collect();
        Graph::from_parts(verts, edges)
    }

    /// Graph on an explicit vertex set with the given undirected edges.
    pub fn from_parts(verts: VertSet, edges: &[(usize, usize)]) -> Result<Graph> {
        if verts.len() > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "graph",
                limit: MAX_VERTICES,
                actual: verts.len(),
            });
        }
        let mut g = Graph {
            verts,
            adj: [VertSet::EMPTY; MAX_IDS],
            name: None,
        };
        for &(u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if !verts.contains(u) || !verts.contains(v) {
                return Err(Error::invalid(format!("edge ({u}, {v}) uses an unknown vertex")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> VertSet {
        self.verts
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(v)
    }

    pub fn max_id(&self) -> Option<usize> {
        self.verts.max()
    }

    /// Ids are dense when they form exactly `0..n`.
    pub fn has_dense_ids(&self) -> bool {
        match self.verts.max() {
            None => true,
            Some(m) => m + 1 == self.verts.len(),
        }
    }

    pub fn neighbors(&self, v: usize) -> VertSet {
        debug_assert!(self.contains(v), "vertex {v} not in graph");
        self.adj[v]
    }

    pub fn closed_neighbors(&self, v: usize) -> VertSet {
        self.neighbors(v).with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        u < MAX_IDS && self.adj[u].contains(v)
    }

    /// Edges as ascending `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.verts.iter() {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.verts.iter().map(|v| self.adj[v].len()).sum::<usize>() / 2
    }

    /// Subgraph induced on `s`, preserving ids.
    pub fn induced(&self, s: VertSet) -> Result<Graph> {
        if !s.is_subset_of(self.verts) {
            return Err(Error::invalid(format!(
                "induced set contains unknown vertices {:?}",
                s.minus(self.verts)
            )));
        }
        let mut g = Graph {
            verts: s,
            adj: [VertSet::EMPTY; MAX_IDS],
            name: None,
        };
        for v in s.iter() {
            g.adj[v] = self.adj[v].intersect(s);
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            verts: self.verts,
            adj: [VertSet::EMPTY; MAX_IDS],
            name: None,
        };
        for v in self.verts.iter() {
            g.adj[v] = self.verts.minus(self.adj[v]).without(v);
        }
        g
    }

    /// Connected components of the graph with `removed` deleted,
    /// ordered by smallest member.
    pub fn components(&self, removed: VertSet) -> Vec<VertSet> {
        let mut left = self.verts.minus(removed);
        let mut out = Vec::new();
        while let Some(start) = left.min() {
            let mut comp = VertSet::singleton(start);
            let mut frontier = VertSet::singleton(start);
            while !frontier.is_empty() {
                let mut next = VertSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v].intersect(left).minus(comp));
                }
                comp = comp.union(next);
                frontier = next;
            }
            left = left.minus(comp);
            out.push(comp);
        }
        out
    }

    /// Whether `x` is adjacent to every vertex of `t`. Errors if `x` is in `t`.
    pub fn is_complete_to(&self, x: usize, t: VertSet) -> Result<bool> {
        if t.contains(x) {
            return Err(Error::invalid(format!("vertex {x} is inside the target set")));
        }
        if !self.contains(x) {
            return Err(Error::invalid(format!("vertex {x} not in graph")));
        }
        Ok(t.is_subset_of(self.adj[x]))
    }

    /// Whether `x` has no neighbor in `t`. Errors if `x` is in `t`.
    pub fn is_anticomplete_to(&self, x: usize, t: VertSet) -> Result<bool> {
        if t.contains(x) {
            return Err(Error::invalid(format!("vertex {x} is inside the target set")));
        }
        if !self.contains(x) {
            return Err(Error::invalid(format!("vertex {x} not in graph")));
        }
        Ok(t.is_disjoint(self.adj[x]))
    }

    /// Every vertex of `s` adjacent to every vertex of `t`; sets must be disjoint.
    pub fn set_complete_to(&self, s: VertSet, t: VertSet) -> bool {
        debug_assert!(s.is_disjoint(t));
        s.iter().all(|v| t.is_subset_of(self.adj[v]))
    }

    /// No edges between `s` and `t`; sets must be disjoint.
    pub fn set_anticomplete_to(&self, s: VertSet, t: VertSet) -> bool {
        debug_assert!(s.is_disjoint(t));
        s.iter().all(|v| t.is_disjoint(self.adj[v]))
    }

    pub fn is_clique(&self, s: VertSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset_of(self.adj[v]))
    }

    pub fn is_complete_graph(&self) -> bool {
        self.is_clique(self.verts)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("vertices", &self.verts)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Induced path given by its vertex sequence. Consecutive vertices are
/// adjacent and all vertices are distinct; chordlessness is a separate check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Path> {
        if verts.is_empty() {
            return Err(Error::invalid("empty path"));
        }
        let mut seen = VertSet::EMPTY;
        for &v in &verts {
            if !g.contains(v) {
                return Err(Error::invalid(format!("path vertex {v} not in graph")));
            }
            if seen.contains(v) {
                return Err(Error::invalid(format!("path repeats vertex {v}")));
            }
            seen.insert(v);
        }
        for w in verts.windows(2) {
            if !g.are_adjacent(w[0], w[1]) {
                return Err(Error::invalid(format!(
                    "path vertices {} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { verts })
    }

    /// Wrap a sequence already known to satisfy the path invariants.
    pub(crate) fn from_trusted(verts: Vec<usize>) -> Path {
        Path { verts }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    /// Length in edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn parity(&self) -> Parity {
        Parity::of_len(self.len())
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        *self.verts.last().unwrap()
    }

    pub fn interior(&self) -> &[usize] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    pub fn vertex_set(&self) -> VertSet {
        self.verts.iter().copied().collect()
    }

    pub fn interior_set(&self) -> VertSet {
        self.interior().iter().copied().collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    /// No edges between non-consecutive path vertices.
    pub fn is_chordless(&self, g: &Graph) -> bool {
        for i in 0..self.verts.len() {
            for j in (i + 2)..self.verts.len() {
                if g.are_adjacent(self.verts[i], self.verts[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn reversed(&self) -> Path {
        let mut verts = self.verts.clone();
        verts.reverse();
        Path { verts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn vertset_iterates_ascending() {
        let s: VertSet = [9, 2, 64, 5].into_iter().collect();
        assert_eq!(s.to_vec(), vec![2, 5, 9, 64]);
        assert_eq!(s.min(), Some(2));
        assert_eq!(s.max(), Some(64));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn vertset_set_algebra() {
        let a: VertSet = [1, 2, 3].into_iter().collect();
        let b: VertSet = [3, 4].into_iter().collect();
        assert_eq!((a | b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!((a & b).to_vec(), vec![3]);
        assert_eq!((a - b).to_vec(), vec![1, 2]);
        assert!(!a.is_disjoint(b));
        assert!((a - b).is_disjoint(b));
        assert!((a & b).is_subset_of(a));
    }

    #[test]
    fn rejects_self_loop_and_unknown_vertex() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn rejects_oversized_graph() {
        let verts: VertSet = (0..65).collect();
        match Graph::from_parts(verts, &[]) {
            Err(Error::CapExceeded { limit: 64, actual: 65, .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn adjacency_and_degree() {
        let g = c5();
        assert!(g.are_adjacent(0, 1));
        assert!(!g.are_adjacent(0, 2));
        assert_eq!(g.degree(3), 2);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.edges().len(), 5);
    }

    #[test]
    fn induced_preserves_parent_ids() {
        let g = c5();
        let s: VertSet = [1, 2, 3].into_iter().collect();
        let h = g.induced(s).unwrap();
        assert_eq!(h.vertices().to_vec(), vec![1, 2, 3]);
        assert!(h.are_adjacent(1, 2));
        assert!(h.are_adjacent(2, 3));
        assert!(!h.are_adjacent(1, 3));
    }

    #[test]
    fn induced_rejects_unknown_ids() {
        let g = c5();
        assert!(g.induced(VertSet::singleton(7)).is_err());
    }

    #[test]
    fn complement_of_c5_is_c5() {
        let g = c5();
        let c = g.complement();
        assert_eq!(c.edge_count(), 5);
        assert!(c.are_adjacent(0, 2));
        assert!(!c.are_adjacent(0, 1));
        let cc = c.complement();
        assert_eq!(cc.edges(), g.edges());
    }

    #[test]
    fn components_after_removal() {
        let g = c5();
        let comps = g.components([0, 2].into_iter().collect());
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![1]);
        assert_eq!(comps[1].to_vec(), vec![3, 4]);
    }

    #[test]
    fn complete_and_anticomplete_checks() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let t: VertSet = [1, 2].into_iter().collect();
        assert!(g.is_complete_to(0, t).unwrap());
        assert!(!g.is_complete_to(3, t).unwrap());
        assert!(g.is_anticomplete_to(3, VertSet::singleton(0)).unwrap());
        assert!(g.is_complete_to(0, VertSet::singleton(0).with(1)).is_err());
        assert!(g.is_clique([0, 1, 2].into_iter().collect()));
        assert!(!g.is_clique([0, 1, 3].into_iter().collect()));
    }

    #[test]
    fn path_invariants() {
        let g = c5();
        let p = Path::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.parity(), Parity::Odd);
        assert_eq!(p.interior(), &[1, 2]);
        assert!(p.is_chordless(&g));
        assert!(Path::new(&g, vec![0, 2]).is_err());
        assert!(Path::new(&g, vec![0, 1, 0]).is_err());

        let p4 = Path::new(&g, vec![4, 0, 1, 2, 3]).unwrap();
        // Closing edge 3-4 is a chord of the path even though it closes the cycle.
        assert!(!p4.is_chordless(&g));
    }

    #[test]
    fn dense_id_detection() {
        let g = c5();
        assert!(g.has_dense_ids());
        let h = g.induced([0, 1, 2].into_iter().collect()).unwrap();
        assert!(h.has_dense_ids());
        let j = g.induced([1, 2, 3].into_iter().collect()).unwrap();
        assert!(!j.has_dense_ids());
    }
}
