//! Prime extensions with a stable set of added vertices, built recursively
//! along the children of the decomposition root.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::mdtree::{decompose_level, Label};
use crate::modules::is_prime;
use crate::vertex_set::{VertexId, VertexSet};

use super::primitives::{clique_stable_prime, stable_stable_prime, two_extension_host};
use super::{embed, ConstructionTag};

pub(crate) fn q_extension_host(g: &Graph) -> Result<(Graph, ConstructionTag)> {
    let n = g.order();
    if n < 2 {
        return Err(Error::domain(format!("stable extension needs at least 2 vertices, got {n}")));
    }
    if is_prime(g) {
        return Ok((two_extension_host(g)?, ConstructionTag::PrimeTwoExtension));
    }
    let (label, children) = decompose_level(g, &g.complement(), &g.vertices());
    let (blocks, singles): (Vec<VertexSet>, Vec<VertexSet>) = children.into_iter().partition(|c| c.len() >= 2);
    let singles: VertexSet = singles.iter().flat_map(|s| s.iter()).collect();
    if label == Label::Prime || singles.len() <= 1 {
        return Ok((basic(g, &blocks, singles)?.builder.build(), ConstructionTag::ChildExtension));
    }
    if blocks.is_empty() {
        return Ok(match label {
            Label::Complete => (clique_stable_prime(n)?, ConstructionTag::CliqueStable),
            _ => (stable_stable_prime(n)?, ConstructionTag::StableStable),
        });
    }
    Ok((merge(g, label, &blocks, singles)?, ConstructionTag::MergedExtension))
}

struct Assembly {
    builder: GraphBuilder,
    added: usize,
    /// The added vertex adjacent to all of the child extended first.
    fixed: Option<VertexId>,
}

/// Extends every non-trivial child recursively over a shared added set `S`
/// sized by the largest child extension `X`; single-vertex children are
/// joined to one added vertex that does not see all of `X`.
fn basic(g: &Graph, blocks: &[VertexSet], singles: VertexSet) -> Result<Assembly> {
    let n = g.order();
    let subs = blocks
        .iter()
        .map(|y| {
            let (sub, map) = g.induced_subgraph(y)?;
            Ok((map, q_extension_host(&sub)?.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let added = |(map, host): &(Vec<VertexId>, Graph)| host.order() - map.len();
    let x = (0..subs.len())
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if added(&subs[b]) >= added(&subs[i]) => Some(b),
            _ => Some(i),
        })
        .ok_or_else(|| Error::invariant("basic construction without a non-trivial child"))?;
    let q = added(&subs[x]);
    let mut b = g.extended(q)?;
    let s: Vec<VertexId> = (n..n + q).collect();
    let (map_x, host_x) = &subs[x];
    embed(&mut b, host_x, map_x, &s)?;

    let kx = map_x.len();
    let local_x = VertexSet::full(kx);
    let mut fixed = Vec::new();
    let mut s_x = None;
    for j in 0..q {
        let seen = host_x.neighbors(kx + j) & local_x;
        if seen == local_x {
            fixed.push(n + j);
        } else if s_x.is_none() {
            s_x = Some(n + j);
        }
    }
    if fixed.len() > 1 {
        return Err(Error::invariant("several added vertices see all of the largest child"));
    }
    let fixed = fixed.first().copied();
    let order: Vec<VertexId> = fixed.into_iter().chain(s.iter().copied().filter(|&v| Some(v) != fixed)).collect();
    for (i, sub @ (map, host)) in subs.iter().enumerate() {
        if i != x {
            embed(&mut b, host, map, &order[..added(sub)])?;
        }
    }
    if !singles.is_empty() {
        let s_x = s_x.ok_or_else(|| Error::invariant("every added vertex sees all of the largest child"))?;
        for v in singles.iter() {
            b.add_edge(v, s_x)?;
        }
    }
    Ok(Assembly { builder: b, added: q, fixed })
}

/// Root with at least two single-vertex children and a non-trivial one:
/// the union `W2` of the non-trivial children is extended by
/// [`basic`], the single vertices `W1` by an injection graph, and the two
/// added sets are overlaid.
fn merge(g: &Graph, label: Label, blocks: &[VertexSet], singles: VertexSet) -> Result<Graph> {
    let n = g.order();
    let w2: VertexSet = blocks.iter().fold(VertexSet::new(), |acc, y| acc | *y);
    let (g2, map2) = g.induced_subgraph(&w2)?;
    let local = |v: VertexId| map2.binary_search(&v).expect("vertex of W2");
    let blocks2: Vec<VertexSet> = blocks.iter().map(|y| y.iter().map(local).collect()).collect();
    let a2 = basic(&g2, &blocks2, VertexSet::new())?;
    let q2 = a2.added;
    let fixed2 = a2.fixed.map(|f| n + f - g2.order());
    let h2 = a2.builder.build();

    let w1 = singles.to_vec();
    let join = label == Label::Complete;
    let h1 = if join { clique_stable_prime(w1.len())? } else { stable_stable_prime(w1.len())? };
    let s1 = h1.order() - w1.len();

    let mut b = g.extended(q2.max(s1))?;
    if s1 <= q2 {
        let s: Vec<VertexId> = (n..n + q2).collect();
        embed(&mut b, &h2, &map2, &s)?;
        let order: Vec<VertexId> = fixed2.into_iter().chain(s.iter().copied().filter(|&v| Some(v) != fixed2)).collect();
        embed(&mut b, &h1, &w1, &order[..s1])?;
        if join {
            for &v in &w1 {
                for &a in &order[s1..] {
                    b.add_edge(v, a)?;
                }
            }
        }
    } else {
        let s: Vec<VertexId> = (n..n + s1).collect();
        embed(&mut b, &h1, &w1, &s)?;
        embed(&mut b, &h2, &map2, &s[..q2])?;
        if join {
            for v in w2.iter() {
                for &a in &s[q2..] {
                    b.add_edge(v, a)?;
                }
            }
        }
    }
    Ok(b.build())
}
