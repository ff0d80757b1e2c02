//! Modules, smallest-module closures, primality and quotients.
//!
//! A set `M` of vertices is a module when every vertex outside `M` is
//! adjacent to all of `M` or to none of it. The empty set, the whole vertex
//! set and singletons are the trivial modules; a graph with at least four
//! vertices and only trivial modules is prime.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{VertexId, VertexSet};

/// Default cap on the order accepted by [`enumerate_modules`].
pub const EXHAUSTIVE_CAP: usize = 16;

/// True when `v` sees all of `m` or none of it.
#[inline]
pub fn is_homogeneous(g: &Graph, v: VertexId, m: &VertexSet) -> bool {
    let seen = g.neighbors(v) & *m;
    seen.is_empty() || seen == *m
}

pub fn is_module(g: &Graph, m: &VertexSet) -> bool {
    (g.vertices() - *m).iter().all(|v| is_homogeneous(g, v, m))
}

/// The inclusion-minimal module of `g` containing `seed`.
///
/// Modules containing a fixed set are closed under intersection, so the
/// closure obtained by repeatedly absorbing splitters is unique.
pub fn smallest_module_containing(g: &Graph, seed: &VertexSet) -> VertexSet {
    smallest_module_within(g, &g.vertices(), seed)
}

/// The smallest module of `g[universe]` containing `seed`; `seed` must be a
/// subset of `universe`.
///
/// With a fixed reference `r` in the current set, an outside vertex `z`
/// splits the set exactly when some member `y` has `(z,y) != (z,r)`, so each
/// absorbed vertex `y` contributes the splitters `N(y) xor N(r)`.
pub fn smallest_module_within(g: &Graph, universe: &VertexSet, seed: &VertexSet) -> VertexSet {
    let Some(r) = seed.first() else {
        return VertexSet::new();
    };
    let reference = g.neighbors(r);
    let mut closure = *seed;
    let mut pending: Vec<VertexId> = seed.iter().skip(1).collect();
    while let Some(y) = pending.pop() {
        let splitters = ((g.neighbors(y) ^ reference) & *universe) - closure;
        closure |= splitters;
        pending.extend(splitters.iter());
    }
    closure
}

pub fn is_prime(g: &Graph) -> bool {
    let n = g.order();
    if n < 4 {
        return false;
    }
    let all = g.vertices();
    (0..n).all(|u| (u + 1..n).all(|v| smallest_module_containing(g, &[u, v].iter().collect()) == all))
}

/// Every module of `g`, in increasing bitmask order, including the trivial
/// ones. Refuses graphs with more than [`EXHAUSTIVE_CAP`] vertices.
pub fn enumerate_modules(g: &Graph) -> Result<Vec<VertexSet>> {
    enumerate_modules_capped(g, EXHAUSTIVE_CAP)
}

pub fn enumerate_modules_capped(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let n = g.order();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { what: "module enumeration order", size: n as u64, cap: cap as u64 });
    }
    Ok((0..1u64 << n)
        .map(VertexSet::from_mask)
        .filter(|m| is_module(g, m))
        .collect())
}

/// A partition of the vertex set into modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPartition {
    blocks: Vec<VertexSet>,
}

impl ModularPartition {
    /// Validates that `blocks` are nonempty, pairwise disjoint, cover
    /// `V(g)` and are modules of `g`.
    pub fn new(g: &Graph, blocks: Vec<VertexSet>) -> Result<Self> {
        let all = g.vertices();
        let mut covered = VertexSet::new();
        for (i, block) in blocks.iter().enumerate() {
            let bad = |reason: &str| Error::InvalidPartition { block: i, reason: reason.into() };
            if block.is_empty() {
                return Err(bad("empty block"));
            }
            if !block.is_subset(&all) {
                return Err(bad("contains vertices outside the graph"));
            }
            if !block.is_disjoint(&covered) {
                return Err(bad("intersects an earlier block"));
            }
            if !is_module(g, block) {
                return Err(bad("not a module"));
            }
            covered |= *block;
        }
        if covered != all {
            let missing = (all - covered).first().unwrap_or_default();
            return Err(Error::InvalidPartition {
                block: blocks.len(),
                reason: format!("blocks do not cover vertex {missing}"),
            });
        }
        Ok(ModularPartition { blocks })
    }

    pub fn singletons(g: &Graph) -> Self {
        ModularPartition { blocks: g.vertices().iter().map(VertexSet::singleton).collect() }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The quotient `g / p`: vertex `i` is block `i`, and two blocks are
/// adjacent iff their vertices are. Also returns, for each vertex of `g`,
/// the quotient vertex of its block.
pub fn quotient(g: &Graph, p: &ModularPartition) -> Result<(Graph, Vec<VertexId>)> {
    let reps: Vec<VertexId> = p.blocks.iter().map(|b| b.first().expect("nonempty block")).collect();
    let mut block_of = vec![0; g.order()];
    for (i, b) in p.blocks.iter().enumerate() {
        for v in b.iter() {
            block_of[v] = i;
        }
    }
    let edges = (0..reps.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| g.has_edge(reps[i], reps[j]));
    let q = Graph::from_edges(reps.len(), edges)?;
    Ok((q, block_of))
}
