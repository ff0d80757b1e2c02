//! The modular decomposition tree and the structural quantities read off it.
//!
//! Internal nodes are the strong modules with at least two vertices. Each
//! node's children are the maximal proper strong modules of the subgraph it
//! induces, and the node is labelled by the shape of the quotient over its
//! children: complete, empty or prime.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::modules::smallest_module_within;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Complete,
    Empty,
    Prime,
    Leaf,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Complete => "complete",
            Label::Empty => "empty",
            Label::Prime => "prime",
            Label::Leaf => "leaf",
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Label::Complete | Label::Empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdNode {
    pub vertices: VertexSet,
    pub label: Label,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

/// Splits `x` (with `|x| >= 2`) into its maximal proper strong modules in
/// `g[x]`, ordered by smallest vertex. `co` must be the complement of `g`.
pub fn decompose_level(g: &Graph, co: &Graph, x: &VertexSet) -> (Label, Vec<VertexSet>) {
    debug_assert!(x.len() >= 2);
    let components = |h: &Graph| {
        let mut rest = *x;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = h.component_within(v, x);
            rest -= c;
            out.push(c);
        }
        out
    };

    let parts = components(g);
    if parts.len() > 1 {
        return (Label::Empty, parts);
    }
    let parts = components(co);
    if parts.len() > 1 {
        return (Label::Complete, parts);
    }

    // Quotient is prime: every proper module lies inside one child, so the
    // child holding u is the union of the proper pair closures through u.
    let mut rest = *x;
    let mut out = Vec::new();
    while let Some(u) = rest.first() {
        let mut part = VertexSet::singleton(u);
        for w in (*x - part).iter() {
            if part.contains(w) {
                continue;
            }
            let seed: VertexSet = [u, w].iter().collect();
            let c = smallest_module_within(g, x, &seed);
            if c != *x {
                part |= c;
            }
        }
        rest -= part;
        out.push(part);
    }
    (Label::Prime, out)
}

#[derive(Debug, Clone)]
pub struct MdTree {
    nodes: Vec<MdNode>,
    index: HashMap<VertexSet, usize>,
}

pub fn build_md_tree(g: &Graph) -> Result<MdTree> {
    MdTree::new(g)
}

impl MdTree {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.order() == 0 {
            return Err(Error::domain("modular decomposition needs at least one vertex"));
        }
        let co = g.complement();
        let mut tree = MdTree { nodes: Vec::new(), index: HashMap::new() };
        tree.grow(g, &co, g.vertices(), None);
        Ok(tree)
    }

    fn grow(&mut self, g: &Graph, co: &Graph, x: VertexSet, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        self.index.insert(x, id);
        if x.len() == 1 {
            self.nodes.push(MdNode { vertices: x, label: Label::Leaf, children: vec![], parent });
            return id;
        }
        let (label, parts) = decompose_level(g, co, &x);
        self.nodes.push(MdNode { vertices: x, label, children: vec![], parent });
        let children = parts.into_iter().map(|p| self.grow(g, co, p, Some(id))).collect();
        self.nodes[id].children = children;
        id
    }

    pub fn root(&self) -> &MdNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &MdNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[MdNode] {
        &self.nodes
    }

    pub fn find(&self, vertices: &VertexSet) -> Option<&MdNode> {
        self.index.get(vertices).map(|&i| &self.nodes[i])
    }

    pub fn children<'a>(&'a self, node: &'a MdNode) -> impl Iterator<Item = &'a MdNode> + 'a {
        node.children.iter().map(move |&c| &self.nodes[c])
    }

    /// Union of the single-vertex children of `node`.
    pub fn leaf_children(&self, node: &MdNode) -> VertexSet {
        self.children(node).filter(|c| c.label == Label::Leaf).fold(VertexSet::new(), |a, c| a | c.vertices)
    }

    /// Vertex sets of the internal nodes, in construction (preorder) order.
    pub fn internal_sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.nodes.iter().filter(|n| n.label != Label::Leaf).map(|n| n.vertices)
    }

    /// The smallest strong module containing `w`.
    pub fn hat(&self, w: &VertexSet) -> Option<&MdNode> {
        if w.is_empty() || !w.is_subset(&self.root().vertices) {
            return None;
        }
        let mut node = self.root();
        while let Some(next) = self.children(node).find(|c| w.is_subset(&c.vertices)) {
            node = next;
        }
        Some(node)
    }

    /// The maximal modules of size at least two that are cliques or stable
    /// sets: for each complete/empty node, the union of its single-vertex
    /// children when there are at least two of them.
    pub fn maximal_cs_modules(&self) -> Vec<CsModule> {
        let mut out: Vec<CsModule> = self
            .nodes
            .iter()
            .filter(|n| n.label.is_degenerate())
            .filter_map(|n| {
                let leaves = self.leaf_children(n);
                (leaves.len() >= 2).then(|| CsModule {
                    vertices: leaves,
                    kind: if n.label == Label::Complete { CsKind::Clique } else { CsKind::Stable },
                })
            })
            .collect();
        out.sort_by_key(|m| m.vertices.first());
        out
    }

    /// Prime nodes whose children are all leaves; these are exactly the
    /// modules inducing prime subgraphs.
    pub fn prime_modules(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self
            .nodes
            .iter()
            .filter(|n| n.label == Label::Prime && self.children(n).all(|c| c.label == Label::Leaf))
            .map(|n| n.vertices)
            .collect();
        out.sort_by_key(|m| m.first());
        out
    }

    pub fn to_json(&self) -> JsonNode {
        self.json_node(0)
    }

    fn json_node(&self, id: usize) -> JsonNode {
        let n = &self.nodes[id];
        JsonNode {
            label: n.label,
            vertices: n.vertices,
            children: n.children.iter().map(|&c| self.json_node(c)).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph mdtree {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{} {}\"];", n.label.as_str(), n.vertices);
        }
        for (i, n) in self.nodes.iter().enumerate() {
            for c in &n.children {
                let _ = writeln!(out, "  n{i} -- n{c};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Nested tree form used for JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonNode {
    pub label: Label,
    pub vertices: VertexSet,
    pub children: Vec<JsonNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CsKind {
    Clique,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CsModule {
    pub vertices: VertexSet,
    pub kind: CsKind,
}

/// Modular clique/stability numbers, isolated-vertex counts, and the
/// partition of the vertex set into maximal clique/stable modules, prime
/// modules and the remaining residue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub alpha_m: usize,
    pub omega_m: usize,
    pub iota: usize,
    pub iota_complement: usize,
    pub max_cs_modules: Vec<CsModule>,
    pub prime_modules: Vec<VertexSet>,
    pub residue: VertexSet,
}

pub fn modular_numbers(g: &Graph, tree: &MdTree) -> StructureReport {
    let max_cs_modules = tree.maximal_cs_modules();
    let prime_modules = tree.prime_modules();
    let largest = |kind| max_cs_modules.iter().filter(|m| m.kind == kind).map(|m| m.vertices.len()).max();
    let covered = max_cs_modules
        .iter()
        .map(|m| m.vertices)
        .chain(prime_modules.iter().copied())
        .fold(VertexSet::new(), |a, b| a | b);
    StructureReport {
        order: g.order(),
        alpha_m: largest(CsKind::Stable).unwrap_or(1),
        omega_m: largest(CsKind::Clique).unwrap_or(1),
        iota: g.isolated_vertices().len(),
        iota_complement: g.universal_vertices().len(),
        residue: g.vertices() - covered,
        max_cs_modules,
        prime_modules,
    }
}

impl StructureReport {
    /// Builds the report for any graph, including the order-0 graph (all
    /// quantities 0).
    pub fn of(g: &Graph) -> Self {
        match MdTree::new(g) {
            Ok(tree) => modular_numbers(g, &tree),
            Err(_) => StructureReport {
                order: 0,
                alpha_m: 0,
                omega_m: 0,
                iota: 0,
                iota_complement: 0,
                max_cs_modules: vec![],
                prime_modules: vec![],
                residue: VertexSet::new(),
            },
        }
    }

    /// `max(alpha_M, omega_M)`.
    pub fn max_modular(&self) -> usize {
        self.alpha_m.max(self.omega_m)
    }

    pub fn max_iota(&self) -> usize {
        self.iota.max(self.iota_complement)
    }
}
