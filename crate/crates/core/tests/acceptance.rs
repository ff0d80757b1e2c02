//! Acceptance gate: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Run with
//! `cargo test -p primebound --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use primebound::bound::{ceil_log2, lower_bound_isolated, lower_bound_modular, prime_bound};
use primebound::construct::{clique_stable_prime, optimal_extension, prime_one_extensions, q_extension, stable_stable_prime};
use primebound::format::emit_graph6;
use primebound::mdtree::{MdTree, StructureReport};
use primebound::modules::is_prime;
use primebound::oracle::{all_labeled_graphs, brute_force_max_cs_modules, brute_force_prime_bound, brute_force_strong_modules};
use primebound::{Graph, VertexSet};

/// Outcome of one criterion: number of cases checked and the first few
/// failures.
struct Outcome {
    cases: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g).unwrap_or_else(|_| format!("<order {}>", g.order()))
}

fn formula_vs_oracle() -> Outcome {
    let mut out = Outcome::new();
    for n in 2..=5 {
        for g in all_labeled_graphs(n) {
            let formula = prime_bound(&g).value;
            let oracle = brute_force_prime_bound(&g, 3).map(|v| v.p_value);
            out.check(oracle == Ok(Some(formula)), || format!("{}: formula {formula}, oracle {oracle:?}", g6(&g)));
        }
    }
    out
}

fn construction_optimality() -> Outcome {
    let mut out = Outcome::new();
    for n in 2..=6 {
        for g in all_labeled_graphs(n) {
            let p = prime_bound(&g).value;
            let report = StructureReport::of(&g);
            let lower = [lower_bound_modular(&report), lower_bound_isolated(&report)].into_iter().flatten().max().unwrap_or(0);
            match optimal_extension(&g) {
                Ok(c) => out.check(is_prime(&c.host) && c.added_count == p && lower <= p && c.base() == g, || {
                    format!("{}: added {}, bound {p}, host {}", g6(&g), c.added_count, g6(&c.host))
                }),
                Err(e) => out.check(false, || format!("{}: {e}", g6(&g))),
            }
        }
    }
    out
}

fn one_vertex_extension(g: &Graph, nb: &VertexSet) -> Graph {
    let n = g.order();
    let mut b = g.extended(1).unwrap();
    for v in nb.iter() {
        b.add_edge(v, n).unwrap();
    }
    b.build()
}

fn one_extension_count() -> Outcome {
    let mut out = Outcome::new();
    let mut primes: Vec<Graph> = (4..=8).map(|n| Graph::path(n).unwrap()).collect();
    for n in 5..=6 {
        primes.extend(all_labeled_graphs(n).filter(is_prime).step_by(97).take(15));
    }
    out.check(primes.len() >= 20, || format!("only {} prime graphs collected", primes.len()));
    for g in &primes {
        let n = g.order();
        let listed = match prime_one_extensions(g) {
            Ok(l) => l,
            Err(e) => {
                out.check(false, || format!("{}: {e}", g6(g)));
                continue;
            }
        };
        let expected = (1 << n) - 2 * n - 2;
        out.check(listed.len() == expected, || format!("{}: {} listed, expected {expected}", g6(g), listed.len()));
        if n <= 6 {
            for mask in 0u64..1 << n {
                let nb = VertexSet::from_mask(mask);
                let prime = is_prime(&one_vertex_extension(g, &nb));
                out.check(prime == listed.contains(&nb), || format!("{}: neighbourhood {nb}, prime {prime}", g6(g)));
            }
        }
    }
    out
}

fn injection_graphs() -> Outcome {
    let mut out = Outcome::new();
    for s in 2..=32 {
        let t = ceil_log2(s + 1);
        let part = VertexSet::full(s);
        let aux = VertexSet::full(s + t) - part;
        for (name, built, part_ok) in [
            ("stable", stable_stable_prime(s), Graph::is_stable as fn(&Graph, &VertexSet) -> bool),
            ("clique", clique_stable_prime(s), Graph::is_clique),
        ] {
            match built {
                Ok(h) => out.check(h.order() == s + t && is_prime(&h) && part_ok(&h, &part) && h.is_stable(&aux), || {
                    format!("{name} s = {s}: order {}, prime {}", h.order(), is_prime(&h))
                }),
                Err(e) => out.check(false, || format!("{name} s = {s}: {e}")),
            }
        }
    }
    out
}

fn spot_values() -> Outcome {
    let mut out = Outcome::new();
    let p4 = Graph::path(4).unwrap();
    let cases = [
        ("K4", Graph::complete(4).unwrap(), 3),
        ("empty4", Graph::empty(4).unwrap(), 3),
        ("empty2", Graph::empty(2).unwrap(), 2),
        ("2K2", Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap(), 1),
        ("K2+K1", Graph::from_edges(3, [(0, 1)]).unwrap(), 1),
        ("P4", p4.clone(), 0),
        ("P4[P4]", p4.substitute(1, &p4).unwrap(), 1),
    ];
    for (name, g, expected) in cases {
        let formula = prime_bound(&g).value;
        let oracle = brute_force_prime_bound(&g, expected).map(|v| v.p_value);
        out.check(formula == expected && oracle == Ok(Some(expected)), || {
            format!("{name}: formula {formula}, oracle {oracle:?}, expected {expected}")
        });
    }
    out
}

fn tree_soundness() -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=6 {
        for g in all_labeled_graphs(n) {
            let tree = MdTree::new(&g).unwrap();
            let mut nodes: Vec<VertexSet> = tree.nodes().iter().map(|x| x.vertices).collect();
            nodes.sort();
            let mut cs: Vec<VertexSet> = tree.maximal_cs_modules().into_iter().map(|m| m.vertices).collect();
            cs.sort();
            let strong = brute_force_strong_modules(&g).unwrap();
            let max_cs = brute_force_max_cs_modules(&g).unwrap();
            out.check(nodes == strong && cs == max_cs, || format!("{}: tree {nodes:?} / {cs:?}", g6(&g)));
        }
    }
    out
}

fn q_extension_contract() -> Outcome {
    let mut out = Outcome::new();
    for n in 2..=6 {
        for g in all_labeled_graphs(n) {
            let m = StructureReport::of(&g).max_modular();
            if m < 2 {
                continue;
            }
            match q_extension(&g) {
                Ok(c) => out.check(
                    c.stable_added_set && is_prime(&c.host) && c.added_count <= ceil_log2(m + 1) && c.base() == g,
                    || format!("{}: added {}, stable {}, m {m}", g6(&g), c.added_count, c.stable_added_set),
                ),
                Err(e) => out.check(false, || format!("{}: {e}", g6(&g))),
            }
        }
    }
    out
}

fn complement_symmetry() -> Outcome {
    let mut out = Outcome::new();
    for n in 0..=6 {
        for g in all_labeled_graphs(n) {
            let co = g.complement();
            let (pg, pc) = (prime_bound(&g).value, prime_bound(&co).value);
            out.check(pg == pc && is_prime(&g) == is_prime(&co), || format!("{}: p {pg} vs {pc}", g6(&g)));
        }
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("formula equals exhaustive search, all graphs 2 <= n <= 5", formula_vs_oracle),
        ("optimal extension is prime with bound size, all graphs 2 <= n <= 6", construction_optimality),
        ("one-vertex prime extensions counted and characterised", one_extension_count),
        ("stable/clique injection graphs prime with log-size part, 2 <= s <= 32", injection_graphs),
        ("spot values of the prime bound, confirmed by search", spot_values),
        ("decomposition tree matches brute-force strong and clique/stable modules, n <= 6", tree_soundness),
        ("stable-set extension contract, all graphs 2 <= n <= 6", q_extension_contract),
        ("complement symmetry of bound and primality, n <= 6", complement_symmetry),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} [{}] {name}: {} cases, {} failures ({secs:.1}s)",
            i + 1,
            outcome.cases,
            outcome.failures.len()
        );
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
