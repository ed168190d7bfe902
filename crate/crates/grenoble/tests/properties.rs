//! Randomized invariants: each property states a law the library must hold
//! for every input, checked over generated graphs rather than fixed cases.

use proptest::prelude::*;

use grenoble::budget::DEFAULT_STEPS;
use grenoble::decompose::{self, contract_even_pair, Options};
use grenoble::detect::{classify, is_berge, is_even_pair};
use grenoble::generate::{gen_even_prism, gen_random_grenoble};
use grenoble::io::{canonical_hash, graph_from_json, graph_to_json, read_dimacs, write_dimacs};
use grenoble::oracle::{chromatic_number_exact, find_any_even_pair, verify_coloring};
use grenoble::{Budget, Graph};

/// Arbitrary graphs, class members and violators alike.
fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (4usize..=12, 0.1f64..0.9).prop_flat_map(|(n, density)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density), pairs).prop_map(
            move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in (i + 1)..n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).expect("ids are in range")
            },
        )
    })
}

/// Accepted members sampled through the seeded generator. `None` when the
/// density never produced one; callers assume it away.
fn class_member() -> impl Strategy<Value = Option<Graph>> {
    (6usize..=14, 100u32..=400, any::<u64>())
        .prop_map(|(n, p, seed)| gen_random_grenoble(n, p, seed).expect("generation"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Every rejection carries a witness that survives adjacency checking;
    // every acceptance can be colored, verified, and meets its clique.
    #[test]
    fn classification_is_sound(g in arbitrary_graph()) {
        let c = classify(&g, DEFAULT_STEPS).expect("classification");
        match c.witness() {
            Some(w) => prop_assert!(w.validate(&g), "witness fails its own checks"),
            None => {
                let res = decompose::color(&g, &Options::default()).expect("coloring");
                prop_assert!(verify_coloring(&g, &res.coloring, &res.clique));
                prop_assert_eq!(res.coloring.num_colors(), res.clique.len());
            }
        }
    }

    // A nonadjacent pair is even exactly when pinning an apex vertex onto
    // both ends leaves the graph Berge: any odd chordless route between the
    // ends closes through the apex into an odd hole, and nothing else can.
    #[test]
    fn even_pairs_match_apex_membership(
        opt in class_member(),
        ia in any::<prop::sample::Index>(),
        ib in any::<prop::sample::Index>(),
    ) {
        prop_assume!(opt.is_some());
        let g = opt.unwrap();
        let verts = g.vertices().to_vec();
        let a = verts[ia.index(verts.len())];
        let b = verts[ib.index(verts.len())];
        prop_assume!(a != b && !g.are_adjacent(a, b));
        let direct = is_even_pair(&g, a, b, &mut Budget::new(DEFAULT_STEPS)).expect("pair check");
        let z = g.vertex_count();
        let mut edges = g.edges();
        edges.push((a, z));
        edges.push((b, z));
        let apex = Graph::from_edges(z + 1, &edges).expect("apex ids are in range");
        let berge = is_berge(&apex, &mut Budget::new(DEFAULT_STEPS)).expect("berge check");
        prop_assert_eq!(direct, berge);
    }

    #[test]
    fn contraction_preserves_the_chromatic_number(opt in class_member()) {
        prop_assume!(opt.is_some());
        let g = opt.unwrap();
        let pair = find_any_even_pair(&g, &mut Budget::new(DEFAULT_STEPS)).expect("pair search");
        prop_assume!(pair.is_some());
        let (a, b) = pair.unwrap();
        let (contracted, _) = contract_even_pair(&g, a, b).expect("contraction");
        let (chi, _) = chromatic_number_exact(&g, &mut Budget::new(DEFAULT_STEPS)).unwrap();
        let (chi_c, _) =
            chromatic_number_exact(&contracted, &mut Budget::new(DEFAULT_STEPS)).unwrap();
        prop_assert_eq!(chi, chi_c);
    }

    #[test]
    fn serialization_preserves_graph_identity(g in arbitrary_graph()) {
        let hash = canonical_hash(&g);
        let mut dimacs = Vec::new();
        write_dimacs(&g, &mut dimacs).expect("write");
        let from_dimacs = read_dimacs(&dimacs[..]).expect("read");
        prop_assert_eq!(canonical_hash(&from_dimacs), hash.clone());
        let from_json = graph_from_json(&graph_to_json(&g)).expect("round trip");
        prop_assert_eq!(canonical_hash(&from_json), hash);
    }

    #[test]
    fn even_prisms_are_three_chromatic(halves in prop::array::uniform3(1usize..=3)) {
        let g = gen_even_prism(halves.map(|h| 2 * h)).expect("generation");
        prop_assert!(classify(&g, DEFAULT_STEPS).expect("classification").is_accepted());
        let (chi, _) = chromatic_number_exact(&g, &mut Budget::new(DEFAULT_STEPS)).unwrap();
        prop_assert_eq!(chi, 3);
        let res = decompose::color(&g, &Options::default()).expect("coloring");
        prop_assert_eq!(res.coloring.num_colors(), 3);
    }
}
