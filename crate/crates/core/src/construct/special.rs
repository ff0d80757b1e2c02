//! Optimal extensions when the largest clique/stable module has size `2^k`
//! and no `2^k` isolated or universal vertices force an extra vertex, and
//! when every clique/stable module is trivial.

use std::collections::HashSet;

use crate::bound::exact_log2;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mdtree::StructureReport;
use crate::modules::is_prime;
use crate::vertex_set::{VertexId, VertexSet};

use super::primitives::first_prime_one_extension;
use super::optimal::optimal_host;
use super::{embed, neighbor_mask, ConstructionTag};

/// Which single-vertex construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneExtensionMode {
    /// Largest clique/stable modules have exactly two vertices.
    MaxModularTwo,
    /// Every clique/stable module is trivial and the graph is not prime.
    MaxModularOne,
}

pub(crate) fn one_extension_host(g: &Graph, mode: OneExtensionMode) -> Result<(Graph, ConstructionTag)> {
    let report = StructureReport::of(g);
    let n = g.order();
    let (anchor, tag) = match mode {
        OneExtensionMode::MaxModularTwo => {
            if report.max_modular() != 2 || report.iota == 2 || report.iota_complement == 2 {
                return Err(Error::domain(format!(
                    "needs max(alpha_M, omega_M) = 2 without 2 isolated or universal vertices, got m = {}, iota = {}, complement iota = {}",
                    report.max_modular(),
                    report.iota,
                    report.iota_complement
                )));
            }
            (report.max_cs_modules[0].vertices, ConstructionTag::PairSplittingVertex)
        }
        OneExtensionMode::MaxModularOne => {
            if n < 4 || report.max_modular() != 1 || is_prime(g) {
                return Err(Error::domain("needs a non-prime graph on at least 4 vertices with max(alpha_M, omega_M) = 1"));
            }
            let first = report
                .prime_modules
                .first()
                .ok_or_else(|| Error::invariant("no prime module in a graph without clique/stable modules"))?;
            (*first, ConstructionTag::PrimeModuleVertex)
        }
    };

    let mut b = g.extended(1)?;
    for module in &report.prime_modules {
        let (sub, map) = g.induced_subgraph(module)?;
        for v in first_prime_one_extension(&sub)?.iter() {
            b.add_edge(map[v], n)?;
        }
    }
    if mode == OneExtensionMode::MaxModularTwo {
        for m in &report.max_cs_modules {
            b.add_edge(m.vertices.first().expect("nonempty module"), n)?;
        }
    }
    let probe = anchor.first().expect("nonempty module");
    for v in report.residue.iter().filter(|&v| !g.has_edge(v, probe)) {
        b.add_edge(v, n)?;
    }
    Ok((b.build(), tag))
}

pub(crate) fn power_of_two_host(g: &Graph) -> Result<Graph> {
    let report = StructureReport::of(g);
    let m = report.max_modular();
    let k = exact_log2(m).filter(|&k| k >= 2).ok_or_else(|| {
        Error::domain(format!("needs max(alpha_M, omega_M) = 2^k with k >= 2, got {m}"))
    })?;
    if report.iota == m || report.iota_complement == m {
        return Err(Error::domain(format!("graph has {m} isolated or universal vertices")));
    }
    let largest: Vec<_> = report.max_cs_modules.iter().map(|c| c.vertices).filter(|v| v.len() == m).collect();
    let removed: VertexSet = largest.iter().map(|v| v.first().expect("nonempty module")).collect();
    let (rest, map) = g.induced_subgraph(&(g.vertices() - removed))?;
    let rest_m = StructureReport::of(&rest).max_modular();
    if rest_m != m - 1 {
        return Err(Error::invariant(format!("removing one vertex per largest module left modular number {rest_m}, expected {}", m - 1)));
    }
    let (inner, _, _) = optimal_host(&rest)?;
    let nr = rest.order();
    if inner.order() - nr != k {
        return Err(Error::invariant(format!("inner extension added {} vertices, expected {k}", inner.order() - nr)));
    }

    let n = g.order();
    let mut b = g.extended(k)?;
    let added: Vec<VertexId> = (n..n + k).collect();
    embed(&mut b, &inner, &map, &added)?;
    let local = |v: VertexId| map.binary_search(&v).expect("kept vertex");
    for module in &largest {
        let w = module.first().expect("nonempty module");
        let used: HashSet<u64> = module.iter().filter(|&v| v != w).map(|v| neighbor_mask(&inner, local(v), nr)).collect();
        if used.len() != m - 1 {
            return Err(Error::invariant(format!("module {module} is not separated by the inner extension")));
        }
        let x = (0..1u64 << k).find(|s| !used.contains(s)).expect("2^k subsets, 2^k - 1 used");
        for (j, &a) in added.iter().enumerate() {
            if x >> j & 1 == 1 {
                b.add_edge(w, a)?;
            }
        }
    }
    Ok(b.build())
}
