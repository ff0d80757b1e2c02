//! Prime extensions: explicit builders and the certificates wrapping them.
//!
//! Every builder returns a host graph whose first `n` vertices are the input
//! graph and whose added vertices are appended at `n, n + 1, ...`. Public
//! entry points wrap the host in an [`ExtensionCertificate`], re-checking
//! the extension property and primality under a [`VerifyPolicy`].

mod primitives;
mod optimal;
mod qext;
mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{emit_graph6, parse_graph6};
use crate::graph::{Graph, GraphBuilder};
use crate::modules::{enumerate_modules_capped, is_prime};
use crate::vertex_set::{VertexId, VertexSet};

pub use primitives::{clique_stable_prime, first_prime_one_extension, prime_one_extensions, stable_stable_prime};
pub use special::OneExtensionMode;

/// Which builder produced a host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionTag {
    /// The input is already prime.
    Identity,
    /// Order at most one: completed to a 4-vertex path.
    PathEmbedding,
    /// Stable input completed by a stable set of added vertices.
    StableStable,
    /// Complete input completed by a stable set of added vertices.
    CliqueStable,
    /// Prime input with two non-adjacent added vertices.
    PrimeTwoExtension,
    /// Recursive extension over the children of the decomposition root.
    ChildExtension,
    /// Recursive extension of the non-trivial children merged with a
    /// stable/clique extension of the single-vertex children.
    MergedExtension,
    /// One added vertex splitting every size-2 clique/stable module.
    PairSplittingVertex,
    /// One added vertex extending every prime module.
    PrimeModuleVertex,
    /// Largest clique/stable modules shrunk by one, extended, and the
    /// removed vertices re-attached.
    PowerOfTwoReattach,
    /// Found by exhaustive search.
    ExhaustiveSearch,
}

/// Limits for the primality re-check applied to every certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyPolicy {
    /// Hosts up to this order are checked with the pair-closure test.
    pub closure_cap: usize,
    /// Hosts up to this order are additionally checked by enumerating all
    /// vertex subsets.
    pub exhaustive_cap: usize,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        VerifyPolicy { closure_cap: 64, exhaustive_cap: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub host: Graph,
    pub base_order: usize,
    pub added_count: usize,
    pub construction_tag: ConstructionTag,
    /// The host passed the closure primality test.
    pub verified_prime: bool,
    /// The host additionally passed exhaustive module enumeration.
    pub exhaustive_checked: bool,
    /// No edges among the added vertices.
    pub stable_added_set: bool,
}

impl ExtensionCertificate {
    /// Checks that `host` extends `base`, then re-verifies primality.
    ///
    /// Returns [`Error::Invariant`] when the host does not extend `base` or
    /// a primality check runs and fails: builders only produce hosts they
    /// claim are prime.
    pub fn certify(base: &Graph, host: Graph, tag: ConstructionTag, policy: &VerifyPolicy) -> Result<Self> {
        let n = base.order();
        if host.order() < n || host.induced_subgraph(&VertexSet::full(n))?.0 != *base {
            return Err(Error::invariant(format!("{tag:?} host does not extend its base graph")));
        }
        let added = host.vertices() - VertexSet::full(n);
        let mut cert = ExtensionCertificate {
            base_order: n,
            added_count: host.order() - n,
            construction_tag: tag,
            verified_prime: false,
            exhaustive_checked: false,
            stable_added_set: host.is_stable(&added),
            host,
        };
        if cert.host.order() <= policy.closure_cap {
            if !is_prime(&cert.host) {
                return Err(Error::invariant(format!("{tag:?} produced a non-prime host {}", cert.describe())));
            }
            cert.verified_prime = true;
        }
        if cert.host.order() <= policy.exhaustive_cap {
            let nontrivial = enumerate_modules_capped(&cert.host, policy.exhaustive_cap)?
                .into_iter()
                .find(|m| m.len() >= 2 && m.len() < cert.host.order());
            if let Some(m) = nontrivial {
                return Err(Error::invariant(format!("{tag:?} host {} has module {m}", cert.describe())));
            }
            cert.exhaustive_checked = true;
        }
        Ok(cert)
    }

    /// The base graph, read back from the host.
    pub fn base(&self) -> Graph {
        self.host.induced_subgraph(&VertexSet::full(self.base_order)).expect("in range").0
    }

    pub fn added_vertices(&self) -> VertexSet {
        self.host.vertices() - VertexSet::full(self.base_order)
    }

    fn describe(&self) -> String {
        emit_graph6(&self.host).unwrap_or_else(|_| format!("of order {}", self.host.order()))
    }

    pub fn to_record(&self) -> Result<CertificateRecord> {
        Ok(CertificateRecord {
            base: emit_graph6(&self.base())?,
            host: emit_graph6(&self.host)?,
            base_order: self.base_order,
            added_count: self.added_count,
            construction_tag: self.construction_tag,
            verified_prime: self.verified_prime,
            exhaustive_checked: self.exhaustive_checked,
            stable_added_set: self.stable_added_set,
        })
    }
}

/// JSON form of a certificate; graphs are graph6 strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub base: String,
    pub host: String,
    pub base_order: usize,
    pub added_count: usize,
    pub construction_tag: ConstructionTag,
    pub verified_prime: bool,
    pub exhaustive_checked: bool,
    pub stable_added_set: bool,
}

/// Outcome of independently re-checking a [`CertificateRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordCheck {
    pub extends_base: bool,
    pub added_count_matches: bool,
    pub stable_flag_matches: bool,
    pub host_prime: bool,
}

impl RecordCheck {
    pub fn passed(&self) -> bool {
        self.extends_base && self.added_count_matches && self.stable_flag_matches && self.host_prime
    }
}

impl CertificateRecord {
    /// Re-derives every claim of the record from its two graphs.
    pub fn check(&self) -> Result<RecordCheck> {
        let base = parse_graph6(&self.base)?;
        let host = parse_graph6(&self.host)?;
        let n = self.base_order;
        let extends_base = base.order() == n
            && host.order() >= n
            && host.induced_subgraph(&VertexSet::full(n))?.0 == base;
        let added = host.vertices() - VertexSet::full(n.min(host.order()));
        Ok(RecordCheck {
            extends_base,
            added_count_matches: host.order() == n + self.added_count,
            stable_flag_matches: host.is_stable(&added) == self.stable_added_set,
            host_prime: is_prime(&host),
        })
    }
}

/// Builds certified prime extensions under a fixed [`VerifyPolicy`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Extender {
    pub policy: VerifyPolicy,
}

impl Extender {
    pub fn new(policy: VerifyPolicy) -> Self {
        Extender { policy }
    }

    fn certify(&self, base: &Graph, (host, tag): (Graph, ConstructionTag)) -> Result<ExtensionCertificate> {
        ExtensionCertificate::certify(base, host, tag, &self.policy)
    }

    /// Two non-adjacent added vertices joined to the first two admissible
    /// neighbourhoods of a prime graph.
    pub fn prime_two_extension_nonadjacent(&self, g: &Graph) -> Result<ExtensionCertificate> {
        self.certify(g, (primitives::two_extension_host(g)?, ConstructionTag::PrimeTwoExtension))
    }

    /// A prime extension whose added vertices form a stable set.
    pub fn q_extension(&self, g: &Graph) -> Result<ExtensionCertificate> {
        self.certify(g, qext::q_extension_host(g)?)
    }

    pub fn one_extension_special(&self, g: &Graph, mode: OneExtensionMode) -> Result<ExtensionCertificate> {
        self.certify(g, special::one_extension_host(g, mode)?)
    }

    pub fn power_of_two_extension(&self, g: &Graph) -> Result<ExtensionCertificate> {
        self.certify(g, (special::power_of_two_host(g)?, ConstructionTag::PowerOfTwoReattach))
    }

    /// A prime extension with exactly as many added vertices as the prime
    /// bound of `g`.
    pub fn optimal_extension(&self, g: &Graph) -> Result<ExtensionCertificate> {
        let (host, tag, value) = optimal::optimal_host(g)?;
        let cert = self.certify(g, (host, tag))?;
        if cert.added_count != value {
            return Err(Error::invariant(format!("optimal extension added {} vertices, bound is {value}", cert.added_count)));
        }
        Ok(cert)
    }
}

pub fn prime_two_extension_nonadjacent(g: &Graph) -> Result<ExtensionCertificate> {
    Extender::default().prime_two_extension_nonadjacent(g)
}

pub fn q_extension(g: &Graph) -> Result<ExtensionCertificate> {
    Extender::default().q_extension(g)
}

pub fn one_extension_special(g: &Graph, mode: OneExtensionMode) -> Result<ExtensionCertificate> {
    Extender::default().one_extension_special(g, mode)
}

pub fn power_of_two_extension(g: &Graph) -> Result<ExtensionCertificate> {
    Extender::default().power_of_two_extension(g)
}

pub fn optimal_extension(g: &Graph) -> Result<ExtensionCertificate> {
    Extender::default().optimal_extension(g)
}

/// Copies the edges of `sub` that touch an added vertex into `b`.
///
/// Base vertex `i` of `sub` maps to `base_map[i]`; added vertex `j` (at
/// `base_map.len() + j`) maps to `added_map[j]`.
fn embed(b: &mut GraphBuilder, sub: &Graph, base_map: &[VertexId], added_map: &[VertexId]) -> Result<()> {
    let k = base_map.len();
    if sub.order() != k + added_map.len() {
        return Err(Error::invariant("embedding map does not match the sub-extension"));
    }
    let place = |v: VertexId| if v < k { base_map[v] } else { added_map[v - k] };
    for (u, v) in sub.edges().filter(|&(_, v)| v >= k) {
        b.add_edge(place(u), place(v))?;
    }
    Ok(())
}

/// Bitmask of the neighbours of `v` among the vertices `from..from + 64`.
fn neighbor_mask(g: &Graph, v: VertexId, from: usize) -> u64 {
    g.neighbors(v).iter().filter(|&u| u >= from).fold(0, |acc, u| acc | 1 << (u - from))
}
