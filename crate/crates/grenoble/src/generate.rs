//! Graph generators: prisms, layered strip structures with designated set
//! memberships, rejection-sampled random class members, and violators.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::DEFAULT_STEPS;
use crate::detect::{classify, WitnessKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertSet};
use crate::hyperprism::Hyperprism;

/// Prism with path lengths `lens`, no parity restriction. Corners `0..3`
/// form one triangle, `3..6` the other; path `i` joins corner `i` to
/// `3 + i`; interior vertices are numbered consecutively from 6.
pub fn gen_prism_graph(lens: [usize; 3]) -> Graph {
    assert!(lens.iter().all(|&l| l >= 1), "paths need length >= 1");
    let mut edges = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
    let mut next = 6;
    for (i, &len) in lens.iter().enumerate() {
        let mut prev = i;
        for _ in 0..len - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 3 + i));
    }
    Graph::from_edges(next, &edges)
        .expect("prism layout within bounds")
        .with_name(format!("prism-{}-{}-{}", lens[0], lens[1], lens[2]))
}

/// Prism with all-even path lengths, the smallest in-class seed structure.
pub fn gen_even_prism(lens: [usize; 3]) -> Result<Graph> {
    if lens.iter().any(|&l| l < 2 || l % 2 != 0) {
        return Err(Error::invalid("path lengths must be even and at least 2"));
    }
    Ok(gen_prism_graph(lens))
}

/// One strip of a generated structure.
///
/// Sides with `count >= 2` and `clique: true` use a layered interior that
/// induces a strict chain order from the opposite side and requires
/// `rung_len == 2`. A side with `count == 2` and `clique: false` uses two
/// fully private interior paths and requires the opposite side singleton.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StripSpec {
    pub a_count: usize,
    pub a_clique: bool,
    pub b_count: usize,
    pub b_clique: bool,
    pub rung_len: usize,
}

impl StripSpec {
    pub fn path(rung_len: usize) -> StripSpec {
        StripSpec {
            a_count: 1,
            a_clique: true,
            b_count: 1,
            b_clique: true,
            rung_len,
        }
    }
}

/// A vertex complete to both sides of each listed strip. Listed strips must
/// be plain paths of length at least 4; shorter ones would close a square
/// through the new vertex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MajorSpec {
    pub strips: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HyperprismSpec {
    pub strips: [StripSpec; 3],
    #[serde(default)]
    pub majors: Vec<MajorSpec>,
}

fn check_strip_spec(s: &StripSpec) -> Result<()> {
    if s.a_count == 0 || s.b_count == 0 {
        return Err(Error::invalid("side counts must be positive"));
    }
    if s.rung_len < 2 || s.rung_len % 2 != 0 {
        return Err(Error::invalid("rung length must be even and at least 2"));
    }
    let multi_clique =
        (s.a_count >= 2 && s.a_clique) || (s.b_count >= 2 && s.b_clique);
    if multi_clique && s.rung_len != 2 {
        return Err(Error::invalid("layered sides support rung length 2 only"));
    }
    if s.a_count >= 2 && !s.a_clique {
        if s.a_count != 2 || s.b_count != 1 {
            return Err(Error::invalid(
                "independent side needs exactly two vertices and a singleton opposite side",
            ));
        }
    }
    if s.b_count >= 2 && !s.b_clique {
        if s.b_count != 2 || s.a_count != 1 {
            return Err(Error::invalid(
                "independent side needs exactly two vertices and a singleton opposite side",
            ));
        }
    }
    Ok(())
}

fn check_spec(spec: &HyperprismSpec) -> Result<()> {
    for s in &spec.strips {
        check_strip_spec(s)?;
    }
    let indep_a = spec
        .strips
        .iter()
        .filter(|s| s.a_count >= 2 && !s.a_clique)
        .count();
    let indep_b = spec
        .strips
        .iter()
        .filter(|s| s.b_count >= 2 && !s.b_clique)
        .count();
    if indep_a > 1 || indep_b > 1 {
        return Err(Error::invalid(
            "two independent sides of the same kind close a square across strips",
        ));
    }
    for m in &spec.majors {
        if indep_a + indep_b > 0 {
            return Err(Error::invalid("majors combined with independent sides are unsupported"));
        }
        let mut seen = Vec::new();
        for &i in &m.strips {
            if i >= 3 || seen.contains(&i) {
                return Err(Error::invalid("major strip list must name distinct strips"));
            }
            seen.push(i);
        }
        if seen.len() < 2 {
            return Err(Error::invalid("a major must cover at least two strips"));
        }
        for &i in &seen {
            let s = &spec.strips[i];
            if s.a_count != 1 || s.b_count != 1 {
                return Err(Error::invalid("majors attach to plain path strips only"));
            }
            if s.rung_len < 4 {
                return Err(Error::invalid(
                    "a major on a strip shorter than 4 closes a square",
                ));
            }
        }
    }
    Ok(())
}

struct StripVerts {
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

fn build_strip(s: &StripSpec, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> StripVerts {
    let mut take = |n: usize| -> Vec<usize> {
        let ids: Vec<usize> = (*next..*next + n).collect();
        *next += n;
        ids
    };
    let a = take(s.a_count);
    let b = take(s.b_count);
    let clique = |ids: &[usize], edges: &mut Vec<(usize, usize)>| {
        for (k, &u) in ids.iter().enumerate() {
            for &v in &ids[k + 1..] {
                edges.push((u, v));
            }
        }
    };
    if s.a_count >= 2 && s.a_clique {
        clique(&a, edges);
    }
    if s.b_count >= 2 && s.b_clique {
        clique(&b, edges);
    }

    let c;
    if s.a_count == 1 && s.b_count == 1 {
        // Plain path of rung_len edges.
        c = take(s.rung_len - 1);
        let mut prev = a[0];
        for &m in &c {
            edges.push((prev, m));
            prev = m;
        }
        edges.push((prev, b[0]));
    } else if s.a_count >= 2 && !s.a_clique {
        // Two private parallel paths to the single b vertex.
        let mut ids = Vec::new();
        for &x in &a {
            let interior = take(s.rung_len - 1);
            let mut prev = x;
            for &m in &interior {
                edges.push((prev, m));
                prev = m;
            }
            edges.push((prev, b[0]));
            ids.extend(interior);
        }
        c = ids;
    } else if s.b_count >= 2 && !s.b_clique {
        let mut ids = Vec::new();
        for &y in &b {
            let interior = take(s.rung_len - 1);
            let mut prev = a[0];
            for &m in &interior {
                edges.push((prev, m));
                prev = m;
            }
            edges.push((prev, y));
            ids.extend(interior);
        }
        c = ids;
    } else if s.a_count >= 2 {
        // Layered interior keyed to the a side: layer t reaches a vertices
        // t.. and every b vertex. Layers form a clique so no two of them
        // close a square through a shared neighbor.
        c = take(s.a_count);
        clique(&c, edges);
        for (t, &d) in c.iter().enumerate() {
            for &x in &a[t..] {
                edges.push((d, x));
            }
            for &y in &b {
                edges.push((d, y));
            }
        }
    } else {
        // Mirror of the layered interior, keyed to the b side.
        c = take(s.b_count);
        clique(&c, edges);
        for (u, &e) in c.iter().enumerate() {
            edges.push((a[0], e));
            for &y in &b[u..] {
                edges.push((e, y));
            }
        }
    }
    StripVerts { a, b, c }
}

/// Builds a graph realizing `spec` together with its designated nine sets.
/// The result validates as a maximal structure on its own graph.
pub fn gen_hyperprism_graph(spec: &HyperprismSpec) -> Result<(Graph, Hyperprism)> {
    check_spec(spec)?;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;
    let strips: Vec<StripVerts> = spec
        .strips
        .iter()
        .map(|s| build_strip(s, &mut next, &mut edges))
        .collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            for &u in &strips[i].a {
                for &v in &strips[j].a {
                    edges.push((u, v));
                }
            }
            for &u in &strips[i].b {
                for &v in &strips[j].b {
                    edges.push((u, v));
                }
            }
        }
    }
    let mut major_ids = Vec::new();
    for m in &spec.majors {
        let id = next;
        next += 1;
        for &i in &m.strips {
            edges.push((strips[i].a[0], id));
            edges.push((strips[i].b[0], id));
        }
        for &other in &major_ids {
            edges.push((other, id));
        }
        major_ids.push(id);
    }
    let g = Graph::from_edges(next, &edges)?.with_name("strips");
    let mut h = Hyperprism {
        a: [VertSet::new(); 3],
        c: [VertSet::new(); 3],
        b: [VertSet::new(); 3],
    };
    for i in 0..3 {
        h.a[i] = VertSet::from_iter(strips[i].a.iter().copied());
        h.b[i] = VertSet::from_iter(strips[i].b.iter().copied());
        h.c[i] = VertSet::from_iter(strips[i].c.iter().copied());
    }
    Ok((g, h))
}

/// Samples graphs on `n` vertices with edge probability `p_permille / 1000`
/// until one passes classification, up to 512 attempts from one seeded
/// stream. Pairs are drawn in ascending lexicographic order.
pub fn gen_random_grenoble(n: usize, p_permille: u32, seed: u64) -> Result<Option<Graph>> {
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::invalid("too many vertices"));
    }
    let p = f64::from(p_permille) / 1000.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..512 {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?
            .with_name(format!("rand-n{n}-p{p_permille}-s{seed}"));
        match classify(&g, DEFAULT_STEPS) {
            Ok(c) if c.is_accepted() => return Ok(Some(g)),
            Ok(_) => continue,
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Smallest graph rejected for the given reason.
/// Smallest clean graph containing the named obstruction.
///
/// Every antihole of length seven or more carries a square, so the
/// antihole graph is rejected for its square by membership checking; the
/// antihole itself surfaces through the Berge obstruction search. The odd
/// prism uses paths of lengths 1, 3, 3 because a prism with two unit paths
/// also carries a square.
pub fn gen_violator(kind: WitnessKind) -> Result<Graph> {
    match kind {
        WitnessKind::Square => {
            Ok(Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])?.with_name("square"))
        }
        WitnessKind::OddHole => Ok(
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])?.with_name("five-hole")
        ),
        WitnessKind::OddAntihole => {
            let mut edges = Vec::new();
            for i in 0..7 {
                for j in (i + 1)..7 {
                    if j - i != 1 && (i, j) != (0, 6) {
                        edges.push((i, j));
                    }
                }
            }
            Ok(Graph::from_edges(7, &edges)?.with_name("seven-antihole"))
        }
        WitnessKind::OddPrism => Ok(gen_prism_graph([1, 3, 3]).with_name("odd-prism")),
        WitnessKind::EvenPrism | WitnessKind::EvenPair => {
            Err(Error::invalid("not a violation kind"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::detect::Classification;
    use crate::hyperprism::{is_maximal, select_good_strip, validate_hyperprism};

    fn spec(strips: [StripSpec; 3]) -> HyperprismSpec {
        HyperprismSpec {
            strips,
            majors: Vec::new(),
        }
    }

    #[test]
    fn prism_layout_is_fixed() {
        let g = gen_prism_graph([2, 2, 2]);
        assert_eq!(g.vertex_count(), 9);
        assert!(g.are_adjacent(0, 1));
        assert!(g.are_adjacent(3, 4));
        assert!(g.are_adjacent(0, 6));
        assert!(g.are_adjacent(6, 3));
        assert!(!g.are_adjacent(0, 3));
        assert!(gen_even_prism([2, 3, 2]).is_err());
        assert!(gen_even_prism([2, 0, 2]).is_err());
    }

    #[test]
    fn plain_spec_matches_prism() {
        let (g, h) = gen_hyperprism_graph(&spec([
            StripSpec::path(2),
            StripSpec::path(2),
            StripSpec::path(2),
        ]))
        .unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(validate_hyperprism(&g, &h, DEFAULT_STEPS).unwrap(), None);
        assert!(is_maximal(&g, &h, DEFAULT_STEPS).unwrap());
        assert!(matches!(
            classify(&g, DEFAULT_STEPS).unwrap(),
            Classification::Accepted
        ));
    }

    #[test]
    fn layered_sides_validate_and_classify() {
        let (g, h) = gen_hyperprism_graph(&spec([
            StripSpec {
                a_count: 2,
                a_clique: true,
                b_count: 2,
                b_clique: true,
                rung_len: 2,
            },
            StripSpec::path(6),
            StripSpec::path(6),
        ]))
        .unwrap();
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(validate_hyperprism(&g, &h, DEFAULT_STEPS).unwrap(), None);
        assert!(matches!(
            classify(&g, DEFAULT_STEPS).unwrap(),
            Classification::Accepted
        ));
        // Both sides sized two, every other strip larger: strip 1 is good.
        assert_eq!(select_good_strip(&g, &h, VertSet::new()).unwrap(), 0);
        assert!(is_maximal(&g, &h, DEFAULT_STEPS).unwrap());
    }

    #[test]
    fn mirror_layering_gives_multi_b_side() {
        let (g, h) = gen_hyperprism_graph(&spec([
            StripSpec {
                a_count: 1,
                a_clique: true,
                b_count: 2,
                b_clique: true,
                rung_len: 2,
            },
            StripSpec::path(6),
            StripSpec::path(6),
        ]))
        .unwrap();
        assert_eq!(validate_hyperprism(&g, &h, DEFAULT_STEPS).unwrap(), None);
        assert!(matches!(
            classify(&g, DEFAULT_STEPS).unwrap(),
            Classification::Accepted
        ));
        assert_eq!(h.b[0].len(), 2);
    }

    #[test]
    fn independent_side_disqualifies_its_strip() {
        let (g, h) = gen_hyperprism_graph(&spec([
            StripSpec {
                a_count: 2,
                a_clique: false,
                b_count: 1,
                b_clique: true,
                rung_len: 2,
            },
            StripSpec::path(2),
            StripSpec::path(2),
        ]))
        .unwrap();
        assert_eq!(validate_hyperprism(&g, &h, DEFAULT_STEPS).unwrap(), None);
        assert!(matches!(
            classify(&g, DEFAULT_STEPS).unwrap(),
            Classification::Accepted
        ));
        // The non-clique side rules strip 1 out; the smallest clean strip wins.
        assert_ne!(select_good_strip(&g, &h, VertSet::new()).unwrap(), 0);
    }

    #[test]
    fn major_spec_builds_a_covered_vertex() {
        let (g, h) = gen_hyperprism_graph(&HyperprismSpec {
            strips: [StripSpec::path(4), StripSpec::path(4), StripSpec::path(2)],
            majors: vec![MajorSpec { strips: vec![0, 1] }],
        })
        .unwrap();
        assert_eq!(validate_hyperprism(&g, &h, DEFAULT_STEPS).unwrap(), None);
        assert!(matches!(
            classify(&g, DEFAULT_STEPS).unwrap(),
            Classification::Accepted
        ));
        let majors = crate::hyperprism::find_major_neighbors(&g, &h, DEFAULT_STEPS).unwrap();
        assert_eq!(majors.len(), 1);
        assert_eq!(select_good_strip(&g, &h, majors).unwrap(), 0);
    }

    #[test]
    fn unsupported_specs_are_rejected() {
        // Layered side with a long rung.
        assert!(gen_hyperprism_graph(&spec([
            StripSpec {
                a_count: 2,
                a_clique: true,
                b_count: 1,
                b_clique: true,
                rung_len: 4,
            },
            StripSpec::path(2),
            StripSpec::path(2),
        ]))
        .is_err());
        // Two independent a sides across strips.
        let indep = StripSpec {
            a_count: 2,
            a_clique: false,
            b_count: 1,
            b_clique: true,
            rung_len: 2,
        };
        assert!(gen_hyperprism_graph(&spec([
            indep.clone(),
            indep,
            StripSpec::path(2)
        ]))
        .is_err());
        // Major on a short strip.
        assert!(gen_hyperprism_graph(&HyperprismSpec {
            strips: [StripSpec::path(2), StripSpec::path(2), StripSpec::path(2)],
            majors: vec![MajorSpec { strips: vec![0, 1] }],
        })
        .is_err());
        // Odd rung length.
        assert!(gen_hyperprism_graph(&spec([
            StripSpec::path(3),
            StripSpec::path(2),
            StripSpec::path(2)
        ]))
        .is_err());
    }

    #[test]
    fn violators_classify_to_their_kind() {
        // The antihole graph is rejected for the square it contains; the
        // dedicated search still names the antihole.
        for (kind, reported) in [
            (WitnessKind::Square, WitnessKind::Square),
            (WitnessKind::OddHole, WitnessKind::OddHole),
            (WitnessKind::OddAntihole, WitnessKind::Square),
            (WitnessKind::OddPrism, WitnessKind::OddPrism),
        ] {
            let g = gen_violator(kind).unwrap();
            match classify(&g, DEFAULT_STEPS).unwrap() {
                Classification::Rejected(w) => {
                    assert_eq!(w.kind, reported);
                    assert!(w.validate(&g));
                }
                Classification::Accepted => panic!("{kind:?} graph accepted"),
            }
        }
        let anti = gen_violator(WitnessKind::OddAntihole).unwrap();
        let mut b = Budget::default();
        let w = crate::detect::find_odd_antihole(&anti, &mut b).unwrap().unwrap();
        assert_eq!(w.kind, WitnessKind::OddAntihole);
        assert!(w.validate(&anti));
        assert!(gen_violator(WitnessKind::EvenPrism).is_err());
    }

    #[test]
    fn random_generation_is_deterministic() {
        let a = gen_random_grenoble(10, 150, 7).unwrap();
        let b = gen_random_grenoble(10, 150, 7).unwrap();
        match (&a, &b) {
            (Some(x), Some(y)) => {
                assert_eq!(x.edges(), y.edges());
                assert!(matches!(
                    classify(x, DEFAULT_STEPS).unwrap(),
                    Classification::Accepted
                ));
            }
            (None, None) => {}
            _ => panic!("same seed disagreed"),
        }
    }
}
