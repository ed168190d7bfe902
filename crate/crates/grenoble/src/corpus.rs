//! Frozen test corpus: generator specs plus content hashes.
//!
//! The manifest is embedded at compile time. Every entry regenerates its
//! graph deterministically and the hash check catches any drift in the
//! generators. Accepted entries are in-class graphs; violators carry a
//! known obstruction.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::detect::WitnessKind;
use crate::generate::{gen_hyperprism_graph, gen_prism_graph, gen_violator, HyperprismSpec};
use crate::graph::Graph;
use crate::io::canonical_hash;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolatorShape {
    Square,
    OddHole,
    OddAntihole,
    OddPrism,
}

impl ViolatorShape {
    /// What `classify` reports for this shape's generator output. Long odd
    /// antiholes contain squares and the square check runs first, so that
    /// shape is reported as a square rather than an antihole.
    pub fn expected_witness_kind(&self) -> WitnessKind {
        match self {
            ViolatorShape::Square => WitnessKind::Square,
            ViolatorShape::OddHole => WitnessKind::OddHole,
            ViolatorShape::OddAntihole => WitnessKind::Square,
            ViolatorShape::OddPrism => WitnessKind::OddPrism,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    EvenPrism {
        lengths: [usize; 3],
    },
    Hyperprism {
        spec: HyperprismSpec,
    },
    RandomGrenoble {
        n: usize,
        p_permille: u32,
        seed: u64,
    },
    Violator {
        shape: ViolatorShape,
        padding: usize,
    },
}

impl GenSpec {
    /// Whether realizations of this spec belong to the class.
    pub fn expected_accepted(&self) -> bool {
        !matches!(self, GenSpec::Violator { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GenSpec,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<CorpusEntry>,
}

impl Manifest {
    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn accepted(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(|e| e.spec.expected_accepted())
    }

    pub fn violators(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries.iter().filter(|e| !e.spec.expected_accepted())
    }
}

const MANIFEST_JSON: &str = include_str!("corpus_manifest.json");

/// The embedded manifest.
pub fn manifest() -> &'static Manifest {
    static PARSED: OnceLock<Manifest> = OnceLock::new();
    PARSED.get_or_init(|| {
        serde_json::from_str(MANIFEST_JSON).expect("embedded corpus manifest parses")
    })
}

/// Erdos-Renyi graph on `n` vertices with edge probability
/// `p_permille / 1000`, drawn from a fixed-seed stream.
pub fn random_graph(n: usize, p_permille: u32, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_range(0..1000) < p_permille {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Attaches a pendant path of `extra` fresh vertices to vertex 0. Pendant
/// trees never add or remove holes, squares, or prisms.
fn pad_with_path(g: Graph, extra: usize) -> Result<Graph> {
    if extra == 0 {
        return Ok(g);
    }
    let mut verts = g.vertices();
    let mut edges = g.edges();
    let mut prev = 0;
    let fresh = g.max_id().expect("padded graph is nonempty") + 1;
    for step in 0..extra {
        let v = fresh + step;
        verts.insert(v);
        edges.push((prev, v));
        prev = v;
    }
    Graph::from_parts(verts, &edges)
}

fn violator_graph(shape: ViolatorShape, padding: usize) -> Result<Graph> {
    let kind = match shape {
        ViolatorShape::Square => WitnessKind::Square,
        ViolatorShape::OddHole => WitnessKind::OddHole,
        ViolatorShape::OddAntihole => WitnessKind::OddAntihole,
        ViolatorShape::OddPrism => WitnessKind::OddPrism,
    };
    pad_with_path(gen_violator(kind)?, padding)
}

/// Builds the graph a spec describes, without any hash check.
pub fn build_spec(spec: &GenSpec) -> Result<Graph> {
    match spec {
        GenSpec::EvenPrism { lengths } => Ok(gen_prism_graph(*lengths)),
        GenSpec::Hyperprism { spec } => Ok(gen_hyperprism_graph(spec)?.0),
        GenSpec::RandomGrenoble {
            n,
            p_permille,
            seed,
        } => random_graph(*n, *p_permille, *seed),
        GenSpec::Violator { shape, padding } => violator_graph(*shape, *padding),
    }
}

/// Regenerates an entry's graph and verifies it against the frozen hash.
pub fn realize(entry: &CorpusEntry) -> Result<Graph> {
    let g = build_spec(&entry.spec)?.with_name(entry.name.clone());
    let hash = canonical_hash(&g);
    if hash != entry.sha256 {
        return Err(Error::invalid(format!(
            "corpus entry {} drifted: generated hash {hash} does not match manifest {}",
            entry.name, entry.sha256
        )));
    }
    Ok(g)
}

/// All in-class corpus graphs, realized and hash-checked.
pub fn accepted_graphs() -> Result<Vec<Graph>> {
    manifest().accepted().map(realize).collect()
}

/// All violator corpus graphs, realized and hash-checked.
pub fn violator_graphs() -> Result<Vec<Graph>> {
    manifest().violators().map(realize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::DEFAULT_STEPS;
    use crate::detect::classify;
    use crate::generate::{MajorSpec, StripSpec};

    #[test]
    fn random_generation_is_deterministic() {
        let a = random_graph(12, 180, 7).unwrap();
        let b = random_graph(12, 180, 7).unwrap();
        assert_eq!(canonical_hash(&a), canonical_hash(&b));
        let c = random_graph(12, 180, 8).unwrap();
        assert_ne!(canonical_hash(&a), canonical_hash(&c));
    }

    #[test]
    fn violator_shapes_are_rejected_with_valid_witnesses() {
        for shape in [
            ViolatorShape::Square,
            ViolatorShape::OddHole,
            ViolatorShape::OddAntihole,
            ViolatorShape::OddPrism,
        ] {
            for padding in [0, 2] {
                let g = violator_graph(shape, padding).unwrap();
                let c = classify(&g, DEFAULT_STEPS).unwrap();
                let w = c.witness().unwrap_or_else(|| {
                    panic!("{shape:?} with padding {padding} was accepted")
                });
                assert!(w.validate(&g), "{shape:?} witness fails validation");
                assert_eq!(w.kind, shape.expected_witness_kind(), "{shape:?}");
            }
        }
    }

    #[test]
    fn embedded_manifest_is_calibrated() {
        let m = manifest();
        let mut names: Vec<&str> = m.entries.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), m.entries.len(), "duplicate corpus names");

        let accepted = accepted_graphs().unwrap();
        assert!(
            accepted.len() >= 200,
            "corpus holds {} accepted graphs, want at least 200",
            accepted.len()
        );
        for g in &accepted {
            let n = g.vertex_count();
            assert!((6..=24).contains(&n), "accepted entry has {n} vertices");
        }
        let violators = violator_graphs().unwrap();
        assert!(violators.len() >= 6, "corpus holds too few violators");
    }

    fn structured_specs() -> Vec<(String, GenSpec)> {
        let mut specs = Vec::new();
        for lengths in [
            [2, 2, 2],
            [2, 2, 4],
            [2, 4, 4],
            [4, 4, 4],
            [2, 4, 6],
            [2, 2, 6],
            [4, 4, 6],
            [2, 6, 6],
            [4, 6, 6],
            [6, 6, 6],
        ] {
            specs.push((
                format!("prism-{}-{}-{}", lengths[0], lengths[1], lengths[2]),
                GenSpec::EvenPrism { lengths },
            ));
        }
        let nested = |a: usize, b: usize, tail: [usize; 2]| HyperprismSpec {
            strips: [
                StripSpec {
                    a_count: a,
                    a_clique: true,
                    b_count: b,
                    b_clique: true,
                    rung_len: 2,
                },
                StripSpec::path(tail[0]),
                StripSpec::path(tail[1]),
            ],
            majors: Vec::new(),
        };
        specs.push((
            "hyperprism-nested-2-2".into(),
            GenSpec::Hyperprism {
                spec: nested(2, 2, [6, 6]),
            },
        ));
        specs.push((
            "hyperprism-nested-2-1".into(),
            GenSpec::Hyperprism {
                spec: nested(2, 1, [4, 4]),
            },
        ));
        specs.push((
            "hyperprism-nested-3-2".into(),
            GenSpec::Hyperprism {
                spec: nested(3, 2, [4, 6]),
            },
        ));
        specs.push((
            "hyperprism-major-4-4-2".into(),
            GenSpec::Hyperprism {
                spec: HyperprismSpec {
                    strips: [StripSpec::path(4), StripSpec::path(4), StripSpec::path(2)],
                    majors: vec![MajorSpec { strips: vec![0, 1] }],
                },
            },
        ));
        specs.push((
            "hyperprism-major-4-6-2".into(),
            GenSpec::Hyperprism {
                spec: HyperprismSpec {
                    strips: [StripSpec::path(4), StripSpec::path(6), StripSpec::path(2)],
                    majors: vec![MajorSpec { strips: vec![0, 1] }],
                },
            },
        ));
        for shape in [
            ViolatorShape::Square,
            ViolatorShape::OddHole,
            ViolatorShape::OddAntihole,
            ViolatorShape::OddPrism,
        ] {
            for padding in [0, 2] {
                let tag = match shape {
                    ViolatorShape::Square => "square",
                    ViolatorShape::OddHole => "odd-hole",
                    ViolatorShape::OddAntihole => "odd-antihole",
                    ViolatorShape::OddPrism => "odd-prism",
                };
                specs.push((
                    format!("violator-{tag}-pad{padding}"),
                    GenSpec::Violator { shape, padding },
                ));
            }
        }
        specs
    }

    /// Rebuilds src/corpus_manifest.json. Run manually after changing any
    /// generator, then re-run the full suite against the new freeze:
    /// `cargo test -p grenoble regenerate_corpus_manifest -- --ignored`
    #[test]
    #[ignore]
    fn regenerate_corpus_manifest() {
        let mut entries = Vec::new();
        for (name, spec) in structured_specs() {
            let g = build_spec(&spec).unwrap();
            let c = classify(&g, DEFAULT_STEPS).unwrap();
            assert_eq!(
                c.is_accepted(),
                spec.expected_accepted(),
                "{name} misclassified"
            );
            if spec.expected_accepted() {
                let n = g.vertex_count();
                assert!((6..=24).contains(&n), "{name} has {n} vertices");
            }
            entries.push(CorpusEntry {
                name,
                spec,
                sha256: canonical_hash(&g),
            });
        }

        let mut accepted_random = 0usize;
        for n in 6..=24usize {
            let p_permille = (2200 / n) as u32;
            let mut found = 0usize;
            let mut seed = 0u64;
            while found < 11 {
                assert!(seed < 20_000, "no accepted graphs at n={n}");
                let g = random_graph(n, p_permille, seed).unwrap();
                if classify(&g, DEFAULT_STEPS).unwrap().is_accepted() {
                    entries.push(CorpusEntry {
                        name: format!("random-n{n:02}-s{seed}"),
                        spec: GenSpec::RandomGrenoble {
                            n,
                            p_permille,
                            seed,
                        },
                        sha256: canonical_hash(&g),
                    });
                    found += 1;
                    accepted_random += 1;
                }
                seed += 1;
            }
        }
        assert!(accepted_random >= 185);

        let manifest = Manifest { entries };
        let json = serde_json::to_string_pretty(&manifest).unwrap();
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/src/corpus_manifest.json");
        std::fs::write(path, json + "\n").unwrap();
        println!(
            "wrote {} entries ({} accepted random)",
            manifest.entries.len(),
            accepted_random
        );
    }
}
