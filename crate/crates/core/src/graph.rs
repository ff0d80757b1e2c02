//! Immutable simple graphs over dense vertex ids.

use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexId, VertexSet, MAX_ORDER};

/// A simple undirected graph on the vertices `0..order`.
///
/// Graphs are values: every operation returns a new graph. Use
/// [`GraphBuilder`] to assemble one edge by edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

/// Mutable companion of [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        Ok(GraphBuilder { adj: vec![VertexSet::new(); order] })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    fn check(&self, u: VertexId, v: VertexId) -> Result<()> {
        let order = self.order();
        for w in [u, v] {
            if w >= order {
                return Err(Error::VertexOutOfRange { vertex: w, order });
            }
        }
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<&mut Self> {
        self.set_edge(u, v, true)
    }

    pub fn set_edge(&mut self, u: VertexId, v: VertexId, present: bool) -> Result<&mut Self> {
        self.check(u, v)?;
        if present {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        } else {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
        Ok(self)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    pub fn build(self) -> Graph {
        Graph { adj: self.adj }
    }
}

impl Graph {
    /// The graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Result<Self> {
        Ok(GraphBuilder::new(order)?.build())
    }

    pub fn complete(order: usize) -> Result<Self> {
        Ok(Graph::empty(order)?.complement())
    }

    /// The path `0 - 1 - ... - (order - 1)`.
    pub fn path(order: usize) -> Result<Self> {
        Self::from_edges(order, (1..order).map(|v| (v - 1, v)))
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut b = GraphBuilder::new(order)?;
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.order()).flat_map(move |v| {
            self.adj[v].iter().take_while(move |&u| u < v).map(move |u| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut c = full - *row;
                c.remove(v);
                c
            })
            .collect();
        Graph { adj }
    }

    /// The subgraph induced by `w`, relabelled to `0..|w|` in increasing
    /// order, together with the new-to-old vertex map.
    pub fn induced_subgraph(&self, w: &VertexSet) -> Result<(Graph, Vec<VertexId>)> {
        if let Some(max) = w.last() {
            if max >= self.order() {
                return Err(Error::VertexOutOfRange { vertex: max, order: self.order() });
            }
        }
        let map = w.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let adj = map
            .iter()
            .map(|&old| (self.adj[old] & *w).iter().map(|u| index[u]).collect())
            .collect();
        Ok((Graph { adj }, map))
    }

    /// A builder holding this graph plus `extra` isolated vertices appended at
    /// `order..order + extra`.
    pub fn extended(&self, extra: usize) -> Result<GraphBuilder> {
        let mut b = GraphBuilder::new(self.order() + extra)?;
        b.adj[..self.order()].copy_from_slice(&self.adj);
        Ok(b)
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder { adj: self.adj.clone() }
    }

    /// Vertices of degree 0.
    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.order()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        let n = self.order();
        (0..n).filter(|&v| self.adj[v].len() + 1 == n).collect()
    }

    pub fn is_clique(&self, w: &VertexSet) -> bool {
        w.iter().all(|v| {
            let mut rest = *w;
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_stable(&self, w: &VertexSet) -> bool {
        w.iter().all(|v| self.adj[v].is_disjoint(w))
    }

    /// Replaces vertex `v` by a copy of `inner`, joined to every neighbour of
    /// `v`. The copy occupies `0..inner.order()`; the remaining vertices of
    /// `self` follow in their original order.
    pub fn substitute(&self, v: VertexId, inner: &Graph) -> Result<Graph> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        let k = inner.order();
        let relabel = |u: VertexId| if u < v { k + u } else { k + u - 1 };
        let mut b = GraphBuilder::new(k + self.order() - 1)?;
        for (a, c) in inner.edges() {
            b.add_edge(a, c)?;
        }
        for (a, c) in self.edges().filter(|&(a, c)| a != v && c != v) {
            b.add_edge(relabel(a), relabel(c))?;
        }
        for u in self.adj[v].iter() {
            for c in 0..k {
                b.add_edge(c, relabel(u))?;
            }
        }
        Ok(b.build())
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn component_within(&self, start: VertexId, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            next = (next & *within) - seen;
            seen |= next;
            frontier = next;
        }
        seen
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
