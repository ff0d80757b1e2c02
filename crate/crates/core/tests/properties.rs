use proptest::prelude::*;

use primebound::bound::{lower_bound_isolated, lower_bound_modular, prime_bound, upper_bound_modular, BoundCase};
use primebound::construct::{optimal_extension, q_extension};
use primebound::format::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use primebound::mdtree::{Label, MdTree, StructureReport};
use primebound::modules::{is_module, is_prime, quotient, smallest_module_containing, ModularPartition};
use primebound::oracle::{brute_force_modular_numbers, brute_force_prime_bound, brute_force_strong_modules};
use primebound::{Graph, VertexSet};

fn graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (1..n).flat_map(|v| (0..v).map(move |u| (u, v)));
            Graph::from_edges(n, edges.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Graphs built by substituting random graphs into each other, so that deep
/// decomposition trees show up more often than in uniform sampling.
fn nested_graph() -> impl Strategy<Value = Graph> {
    (graph(5), graph(4), graph(4), 0usize..5, 0usize..8).prop_map(|(outer, a, b, v, w)| {
        let inner = a.substitute(v % a.order(), &b).unwrap();
        outer.substitute(w % outer.order(), &inner).unwrap()
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn tree_nodes_are_the_strong_modules(g in graph(7)) {
        let tree = MdTree::new(&g).unwrap();
        let mut nodes: Vec<VertexSet> = tree.nodes().iter().map(|n| n.vertices).collect();
        nodes.sort();
        prop_assert_eq!(nodes, brute_force_strong_modules(&g).unwrap());
    }

    #[test]
    fn children_partition_their_parent(g in nested_graph()) {
        let tree = MdTree::new(&g).unwrap();
        for node in tree.nodes() {
            if node.label == Label::Leaf {
                continue;
            }
            let kids: Vec<VertexSet> = tree.children(node).map(|c| c.vertices).collect();
            prop_assert!(kids.len() >= 2);
            prop_assert_eq!(kids.iter().fold(VertexSet::new(), |a, k| a | *k), node.vertices);
            prop_assert_eq!(kids.iter().map(VertexSet::len).sum::<usize>(), node.vertices.len());
            prop_assert!(kids.iter().all(|k| is_module(&g, k)));
        }
    }

    #[test]
    fn node_quotients_match_labels(g in nested_graph()) {
        let tree = MdTree::new(&g).unwrap();
        for node in tree.nodes().iter().filter(|n| n.label != Label::Leaf) {
            let (sub, map) = g.induced_subgraph(&node.vertices).unwrap();
            let local = |v: usize| map.binary_search(&v).unwrap();
            let blocks = tree.children(node).map(|c| c.vertices.iter().map(local).collect()).collect();
            let p = ModularPartition::new(&sub, blocks).unwrap();
            let (q, _) = quotient(&sub, &p).unwrap();
            match node.label {
                Label::Complete => prop_assert_eq!(q.edge_count(), p.len() * (p.len() - 1) / 2),
                Label::Empty => prop_assert_eq!(q.edge_count(), 0),
                Label::Prime => prop_assert!(is_prime(&q)),
                Label::Leaf => unreachable!(),
            }
        }
    }

    #[test]
    fn transversal_induces_the_quotient(g in nested_graph()) {
        prop_assume!(g.order() >= 2);
        let tree = MdTree::new(&g).unwrap();
        let root = tree.root();
        let blocks: Vec<VertexSet> = tree.children(root).map(|c| c.vertices).collect();
        let (q, _) = quotient(&g, &ModularPartition::new(&g, blocks.clone()).unwrap()).unwrap();
        let transversal: VertexSet = blocks.iter().map(|b| b.last().unwrap()).collect();
        let (t, map) = g.induced_subgraph(&transversal).unwrap();
        // relabel the transversal in block order
        let order: Vec<usize> = blocks.iter().map(|b| map.binary_search(&b.last().unwrap()).unwrap()).collect();
        for i in 0..order.len() {
            for j in 0..order.len() {
                if i != j {
                    prop_assert_eq!(q.has_edge(i, j), t.has_edge(order[i], order[j]));
                }
            }
        }
    }

    #[test]
    fn complement_swaps_degenerate_labels(g in nested_graph()) {
        let t = MdTree::new(&g).unwrap();
        let c = MdTree::new(&g.complement()).unwrap();
        for node in t.nodes() {
            let other = c.find(&node.vertices).expect("same strong modules");
            let expected = match node.label {
                Label::Complete => Label::Empty,
                Label::Empty => Label::Complete,
                l => l,
            };
            prop_assert_eq!(other.label, expected);
        }
    }

    #[test]
    fn closures_are_smallest_modules(g in graph(7), a in 0usize..7, b in 0usize..7) {
        let n = g.order();
        let seed: VertexSet = [a % n, b % n].iter().collect();
        let m = smallest_module_containing(&g, &seed);
        prop_assert!(is_module(&g, &m) && seed.is_subset(&m));
        for mask in 0u64..1 << n {
            let other = VertexSet::from_mask(mask);
            if seed.is_subset(&other) && is_module(&g, &other) {
                prop_assert!(m.is_subset(&other));
            }
        }
    }

    #[test]
    fn modular_numbers_match_enumeration(g in graph(8)) {
        let r = StructureReport::of(&g);
        prop_assert_eq!(brute_force_modular_numbers(&g).unwrap(), (r.alpha_m, r.omega_m));
    }

    #[test]
    fn structure_partitions_vertices(g in nested_graph()) {
        let r = StructureReport::of(&g);
        let parts: Vec<VertexSet> = r.max_cs_modules.iter().map(|m| m.vertices)
            .chain(r.prime_modules.iter().copied())
            .chain([r.residue])
            .collect();
        prop_assert_eq!(parts.iter().map(VertexSet::len).sum::<usize>(), g.order());
        prop_assert_eq!(parts.iter().fold(VertexSet::new(), |a, p| a | *p), g.vertices());
        for p in &r.prime_modules {
            prop_assert!(is_module(&g, p));
            prop_assert!(is_prime(&g.induced_subgraph(p).unwrap().0));
        }
    }

    #[test]
    fn bound_within_its_bounds(g in nested_graph()) {
        let r = StructureReport::of(&g);
        let p = prime_bound(&g);
        if let Ok(lb) = lower_bound_modular(&r) {
            prop_assert!(lb <= p.value);
            prop_assert!(p.value <= upper_bound_modular(&r).unwrap());
        }
        if let Ok(lb) = lower_bound_isolated(&r) {
            prop_assert!(lb <= p.value || p.case == BoundCase::TinyGraph);
        }
        prop_assert_eq!(p.value, prime_bound(&g.complement()).value);
    }

    #[test]
    fn extensions_certify(g in nested_graph()) {
        let opt = optimal_extension(&g).unwrap();
        prop_assert!(opt.verified_prime);
        prop_assert_eq!(opt.added_count, prime_bound(&g).value);
        prop_assert_eq!(opt.base(), g.clone());
        prop_assert_eq!(&opt, &optimal_extension(&g).unwrap());
        let m = StructureReport::of(&g).max_modular();
        if g.order() >= 2 && m >= 2 {
            let q = q_extension(&g).unwrap();
            prop_assert!(q.verified_prime && q.stable_added_set);
            prop_assert!(q.added_count <= primebound::bound::ceil_log2(m + 1));
        }
    }

    #[test]
    fn formats_round_trip(g in graph(12)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn search_never_beats_a_known_extension(g in graph(4)) {
        let cert = optimal_extension(&g).unwrap();
        let found = brute_force_prime_bound(&g, cert.added_count.min(3)).unwrap();
        if cert.added_count <= 3 {
            prop_assert_eq!(found.p_value, Some(cert.added_count));
        }
        if let Some(w) = found.witness {
            prop_assert!(is_prime(&w.host));
        }
    }
}
