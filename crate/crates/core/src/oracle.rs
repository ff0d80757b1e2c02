//! Brute-force ground truth: exhaustive extension search, module
//! enumeration, and sweeps over every labeled graph of a given order.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::{ceil_log2, lower_bound_isolated, lower_bound_modular, prime_bound, prime_bound_with_report};
use crate::construct::{optimal_extension, q_extension, ConstructionTag, ExtensionCertificate, VerifyPolicy};
use crate::error::{Error, Result};
use crate::format::emit_graph6;
use crate::graph::{Graph, GraphBuilder};
use crate::mdtree::{MdTree, StructureReport};
use crate::modules::{enumerate_modules, is_prime};
use crate::vertex_set::VertexSet;

/// Default limit on `n * p + C(p, 2)`, the number of free adjacency bits at
/// one level of the extension search.
pub const SEARCH_BITS_CAP: usize = 24;

/// Largest order accepted by [`labeled_graph_sweep`].
pub const SWEEP_MAX_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    /// The least number of added vertices admitting a prime extension, or
    /// `None` when no extension with at most `p_cap` vertices is prime.
    pub p_value: Option<usize>,
    pub witness: Option<ExtensionCertificate>,
    /// Number of candidate hosts examined.
    pub search_space_size: u64,
}

fn search_bits(n: usize, p: usize) -> usize {
    n * p + p * p.saturating_sub(1) / 2
}

/// The host obtained by reading `code` as adjacency bits: `n` bits per
/// added vertex towards the base, then the pairs of added vertices.
fn candidate(g: &Graph, p: usize, code: u64) -> Result<Graph> {
    let n = g.order();
    let mut b = g.extended(p)?;
    let mut bit = 0;
    for a in n..n + p {
        for v in 0..n {
            if code >> bit & 1 == 1 {
                b.add_edge(v, a)?;
            }
            bit += 1;
        }
    }
    for (a, c) in (n..n + p).tuple_combinations() {
        if code >> bit & 1 == 1 {
            b.add_edge(a, c)?;
        }
        bit += 1;
    }
    Ok(b.build())
}

pub fn brute_force_prime_bound(g: &Graph, p_cap: usize) -> Result<OracleVerdict> {
    brute_force_prime_bound_capped(g, p_cap, SEARCH_BITS_CAP)
}

/// Tries every extension with `0, 1, ..., p_cap` added vertices and stops at
/// the first prime one. Refuses up front when some level has more than
/// `bits_cap` free adjacency bits.
pub fn brute_force_prime_bound_capped(g: &Graph, p_cap: usize, bits_cap: usize) -> Result<OracleVerdict> {
    let bits = search_bits(g.order(), p_cap);
    if bits > bits_cap || bits >= 64 {
        return Err(Error::CapExceeded { what: "extension search bits", size: bits as u64, cap: bits_cap as u64 });
    }
    let mut searched = 0u64;
    for p in 0..=p_cap {
        for code in 0..1u64 << search_bits(g.order(), p) {
            searched += 1;
            let host = candidate(g, p, code)?;
            if is_prime(&host) {
                let witness = ExtensionCertificate::certify(g, host, ConstructionTag::ExhaustiveSearch, &VerifyPolicy::default())?;
                return Ok(OracleVerdict { p_value: Some(p), witness: Some(witness), search_space_size: searched });
            }
        }
    }
    Ok(OracleVerdict { p_value: None, witness: None, search_space_size: searched })
}

fn all_modules(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_modules(g)
}

/// `(alpha_M, omega_M)` as the largest stable and clique modules among all
/// vertex subsets.
pub fn brute_force_modular_numbers(g: &Graph) -> Result<(usize, usize)> {
    let modules = all_modules(g)?;
    let largest = |pred: &dyn Fn(&VertexSet) -> bool| modules.iter().filter(|m| pred(m)).map(VertexSet::len).max().unwrap_or(0);
    Ok((largest(&|m| g.is_stable(m)), largest(&|m| g.is_clique(m))))
}

/// Nonempty modules overlapping no other module, sorted.
pub fn brute_force_strong_modules(g: &Graph) -> Result<Vec<VertexSet>> {
    let modules = all_modules(g)?;
    let mut strong: Vec<VertexSet> = modules
        .iter()
        .filter(|m| !m.is_empty())
        .filter(|m| modules.iter().all(|o| m.is_disjoint(o) || m.is_subset(o) || o.is_subset(m)))
        .copied()
        .collect();
    strong.sort();
    Ok(strong)
}

/// Inclusion-maximal modules of size at least two that are cliques or stable
/// sets, sorted.
pub fn brute_force_max_cs_modules(g: &Graph) -> Result<Vec<VertexSet>> {
    let cs: Vec<VertexSet> = all_modules(g)?
        .into_iter()
        .filter(|m| m.len() >= 2 && (g.is_clique(m) || g.is_stable(m)))
        .collect();
    let mut out: Vec<VertexSet> = cs
        .iter()
        .filter(|m| !cs.iter().any(|o| o != *m && m.is_subset(o)))
        .copied()
        .collect();
    out.sort();
    Ok(out)
}

/// The labeled graph of order `n` whose adjacency bits, in graph6 order,
/// are the low bits of `code`.
pub fn labeled_graph(n: usize, code: u64) -> Result<Graph> {
    let mut b = GraphBuilder::new(n)?;
    for (bit, (u, v)) in (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).enumerate() {
        if code >> bit & 1 == 1 {
            b.add_edge(u, v)?;
        }
    }
    Ok(b.build())
}

/// All `2^C(n,2)` labeled graphs of order `n`.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 64, "order {n} too large to enumerate");
    (0..1u64 << pairs).map(move |code| labeled_graph(n, code).expect("order checked"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepCheck {
    /// Closed-form bound equals the exhaustive search.
    FormulaVsOracle,
    /// Decomposition tree and clique/stable modules match subset enumeration.
    TreeVsBruteforce,
    /// The optimal extension is prime, of bound size, and respects the lower bounds.
    ConstructionCertification,
    /// Bound and primality agree with the complement.
    ComplementSymmetry,
    /// The stable-set extension is prime, stable and within `ceil(log2(m + 1))`.
    QExtension,
}

impl SweepCheck {
    pub const ALL: [SweepCheck; 5] = [
        SweepCheck::FormulaVsOracle,
        SweepCheck::TreeVsBruteforce,
        SweepCheck::ConstructionCertification,
        SweepCheck::ComplementSymmetry,
        SweepCheck::QExtension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepCheck::FormulaVsOracle => "formula-vs-oracle",
            SweepCheck::TreeVsBruteforce => "tree-vs-bruteforce",
            SweepCheck::ConstructionCertification => "construction-certification",
            SweepCheck::ComplementSymmetry => "complement-symmetry",
            SweepCheck::QExtension => "q-extension",
        }
    }
}

impl fmt::Display for SweepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepCheck::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown check {s:?}")))
    }
}

/// One graph failing a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub graph6: String,
    pub check: SweepCheck,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub order: usize,
    pub check: SweepCheck,
    pub graphs: u64,
    /// Failures in enumeration order.
    pub failures: Vec<SweepFailure>,
}

/// Runs `check` on every labeled graph of order `n` on `jobs` worker threads.
pub fn labeled_graph_sweep(n: usize, check: SweepCheck, jobs: usize) -> Result<SweepSummary> {
    if n > SWEEP_MAX_ORDER {
        return Err(Error::CapExceeded { what: "sweep order", size: n as u64, cap: SWEEP_MAX_ORDER as u64 });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let graphs = 1u64 << pairs;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invariant(format!("cannot start worker pool: {e}")))?;
    let failures = pool.install(|| {
        (0..graphs)
            .into_par_iter()
            .map(|code| {
                let g = labeled_graph(n, code)?;
                run_check(&g, check)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepSummary { order: n, check, graphs, failures: failures.into_iter().flatten().collect() })
}

/// Checks one graph; `Ok(None)` when it passes.
pub fn run_check(g: &Graph, check: SweepCheck) -> Result<Option<SweepFailure>> {
    let (expected, actual) = match check {
        SweepCheck::FormulaVsOracle => {
            let expected = prime_bound(g).value;
            let cap = if g.order() < 2 { 4 } else { 3 };
            let actual = brute_force_prime_bound(g, cap)?.p_value;
            (Some(expected).to_string_lossy(), actual.to_string_lossy())
        }
        SweepCheck::TreeVsBruteforce => tree_vs_bruteforce(g)?,
        SweepCheck::ConstructionCertification => construction_certification(g),
        SweepCheck::ComplementSymmetry => {
            let co = g.complement();
            let key = |h: &Graph| format!("p={} prime={}", prime_bound(h).value, is_prime(h));
            (key(g), key(&co))
        }
        SweepCheck::QExtension => q_extension_contract(g),
    };
    if expected == actual {
        return Ok(None);
    }
    Ok(Some(SweepFailure { graph6: emit_graph6(g)?, check, expected, actual }))
}

trait Lossy {
    fn to_string_lossy(&self) -> String;
}

impl Lossy for Option<usize> {
    fn to_string_lossy(&self) -> String {
        self.map_or_else(|| "exceeds cap".to_string(), |v| v.to_string())
    }
}

fn tree_vs_bruteforce(g: &Graph) -> Result<(String, String)> {
    if g.order() == 0 {
        return Ok((String::new(), String::new()));
    }
    let tree = MdTree::new(g)?;
    let mut nodes: Vec<VertexSet> = tree.nodes().iter().map(|n| n.vertices).collect();
    nodes.sort();
    let mut cs: Vec<VertexSet> = tree.maximal_cs_modules().into_iter().map(|m| m.vertices).collect();
    cs.sort();
    let report = StructureReport::of(g);
    let ours = format!("strong={nodes:?} cs={cs:?} numbers={:?}", (report.alpha_m, report.omega_m));
    let theirs = format!(
        "strong={:?} cs={:?} numbers={:?}",
        brute_force_strong_modules(g)?,
        brute_force_max_cs_modules(g)?,
        brute_force_modular_numbers(g)?
    );
    Ok((theirs, ours))
}

fn construction_certification(g: &Graph) -> (String, String) {
    let report = StructureReport::of(g);
    let bound = prime_bound_with_report(g, &report);
    let lower = [lower_bound_modular(&report), lower_bound_isolated(&report)]
        .into_iter()
        .filter_map(|b| b.ok())
        .max()
        .unwrap_or(0);
    let expected = format!("prime added={} lower<=added", bound.value);
    let actual = match optimal_extension(g) {
        Ok(c) if c.verified_prime => {
            let ok = if lower <= c.added_count { "lower<=added" } else { "lower>added" };
            format!("prime added={} {ok}", c.added_count)
        }
        Ok(c) => format!("unverified added={}", c.added_count),
        Err(e) => format!("error: {e}"),
    };
    (expected, actual)
}

fn q_extension_contract(g: &Graph) -> (String, String) {
    let m = StructureReport::of(g).max_modular();
    if g.order() < 2 || m < 2 {
        return (String::new(), String::new());
    }
    let limit = ceil_log2(m + 1);
    let expected = "prime stable within".to_string();
    let actual = match q_extension(g) {
        Ok(c) => format!(
            "{} {} {}",
            if c.verified_prime { "prime" } else { "unverified" },
            if c.stable_added_set { "stable" } else { "unstable" },
            if c.added_count <= limit { "within" } else { "oversized" }
        ),
        Err(e) => format!("error: {e}"),
    };
    (expected, actual)
}
