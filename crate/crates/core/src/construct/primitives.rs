//! Injection graphs on a stable or clique part, and one- and two-vertex
//! extensions of prime graphs.

use std::collections::HashSet;

use itertools::Itertools;

use crate::bound::ceil_log2;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::modules::is_prime;
use crate::vertex_set::VertexSet;

/// Largest order accepted by [`prime_one_extensions`].
const ONE_EXTENSION_CAP: usize = 24;

/// Subsets of `0..t` as bitmasks, by size and then lexicographically.
fn subsets_by_size(t: usize) -> impl Iterator<Item = u64> {
    (0..=t).flat_map(move |k| (0..t).combinations(k).map(|c| c.iter().fold(0u64, |m, &j| m | 1 << j)))
}

/// Bipartite-style graph on `part` (vertices `0..s`) and a stable set `S'`
/// (vertices `s..s + t`): vertex `i` of the part gets neighbourhood
/// `f[i]`, the first masks fixed by the caller and the rest filled with the
/// smallest unused masks accepted by `allowed`.
fn injection_graph(s: usize, t: usize, mut f: Vec<u64>, allowed: impl Fn(u64) -> bool, clique: bool) -> Result<Graph> {
    let mut used: HashSet<u64> = f.iter().copied().collect();
    let mut fresh = subsets_by_size(t).filter(|m| allowed(*m));
    while f.len() < s {
        let m = fresh
            .find(|m| !used.contains(m))
            .ok_or_else(|| Error::invariant("ran out of subsets for the injection"))?;
        used.insert(m);
        f.push(m);
    }
    let mut b = GraphBuilder::new(s + t)?;
    if clique {
        for (u, v) in (0..s).tuple_combinations() {
            b.add_edge(u, v)?;
        }
    }
    for (i, m) in f.iter().enumerate() {
        for j in (0..t).filter(|j| m >> j & 1 == 1) {
            b.add_edge(i, s + j)?;
        }
    }
    Ok(b.build())
}

/// A prime graph made of a stable set `S = 0..s` and a stable set `S'` of
/// `ceil(log2(s + 1))` vertices appended after it.
pub fn stable_stable_prime(s: usize) -> Result<Graph> {
    if s < 2 {
        return Err(Error::domain(format!("stable part needs at least 2 vertices, got {s}")));
    }
    if s == 2 {
        return Graph::from_edges(4, [(0, 2), (2, 1), (1, 3)]);
    }
    let t = ceil_log2(s + 1);
    let full = (1u64 << t) - 1;
    let f = (0..t).map(|j| full & !(1 << j)).collect();
    injection_graph(s, t, f, |m| m != 0, false)
}

/// A prime graph made of a clique `C = 0..c` and a stable set `S'` of
/// `ceil(log2(c + 1))` vertices appended after it.
pub fn clique_stable_prime(c: usize) -> Result<Graph> {
    if c < 2 {
        return Err(Error::domain(format!("clique part needs at least 2 vertices, got {c}")));
    }
    let t = ceil_log2(c + 1);
    let full = (1u64 << t) - 1;
    let f = (0..t).map(|j| 1 << j).collect();
    injection_graph(c, t, f, |m| m != full, true)
}

fn require_prime(g: &Graph) -> Result<()> {
    if !is_prime(g) {
        return Err(Error::domain("graph is not prime"));
    }
    Ok(())
}

/// Admissible neighbourhoods of a new vertex, lazily, by size and then
/// lexicographically.
fn admissible(g: &Graph) -> impl Iterator<Item = VertexSet> + '_ {
    let n = g.order();
    let all = g.vertices();
    let forbidden: HashSet<VertexSet> = (0..n)
        .flat_map(|v| {
            let nb = g.neighbors(v);
            let mut closed = nb;
            closed.insert(v);
            [nb, closed]
        })
        .chain([VertexSet::new(), all])
        .collect();
    (0..=n)
        .flat_map(move |k| (0..n).combinations(k).map(|c| c.iter().collect::<VertexSet>()))
        .filter(move |m| !forbidden.contains(m))
}

/// Every neighbourhood `N` for which joining one new vertex to `N` keeps a
/// prime graph prime: all sets except the empty set, the whole vertex set,
/// and the open and closed neighbourhoods of the vertices.
pub fn prime_one_extensions(g: &Graph) -> Result<Vec<VertexSet>> {
    require_prime(g)?;
    if g.order() > ONE_EXTENSION_CAP {
        return Err(Error::CapExceeded {
            what: "one-extension enumeration order",
            size: g.order() as u64,
            cap: ONE_EXTENSION_CAP as u64,
        });
    }
    Ok(admissible(g).collect())
}

/// The first entry of [`prime_one_extensions`] without listing the rest.
pub fn first_prime_one_extension(g: &Graph) -> Result<VertexSet> {
    require_prime(g)?;
    admissible(g).next().ok_or_else(|| Error::invariant("prime graph without admissible neighbourhood"))
}

pub(crate) fn two_extension_host(g: &Graph) -> Result<Graph> {
    require_prime(g)?;
    let (first, second) = admissible(g)
        .next_tuple()
        .ok_or_else(|| Error::invariant("prime graph with fewer than two admissible neighbourhoods"))?;
    let n = g.order();
    let mut b = g.extended(2)?;
    for v in first.iter() {
        b.add_edge(v, n)?;
    }
    for v in second.iter() {
        b.add_edge(v, n + 1)?;
    }
    Ok(b.build())
}
