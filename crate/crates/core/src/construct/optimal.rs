use crate::bound::{prime_bound_with_report, BoundCase};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mdtree::StructureReport;

use super::qext::q_extension_host;
use super::special::{one_extension_host, power_of_two_host, OneExtensionMode};
use super::ConstructionTag;

/// A prime extension realising the prime bound, with the bound value.
pub(crate) fn optimal_host(g: &Graph) -> Result<(Graph, ConstructionTag, usize)> {
    let report = StructureReport::of(g);
    let bound = prime_bound_with_report(g, &report);
    let (host, tag) = match bound.case {
        BoundCase::AlreadyPrime => (g.clone(), ConstructionTag::Identity),
        // order 0 or 1: the vertex, if any, starts the path
        BoundCase::TinyGraph => (Graph::path(4)?, ConstructionTag::PathEmbedding),
        BoundCase::NotPowerOfTwo | BoundCase::PowerOfTwoIsolated => q_extension_host(g)?,
        BoundCase::PowerOfTwoRegular if bound.k == Some(1) => one_extension_host(g, OneExtensionMode::MaxModularTwo)?,
        BoundCase::PowerOfTwoRegular => (power_of_two_host(g)?, ConstructionTag::PowerOfTwoReattach),
        BoundCase::AlphaOmegaOne => one_extension_host(g, OneExtensionMode::MaxModularOne)?,
    };
    if host.order() - g.order() != bound.value {
        return Err(Error::invariant(format!(
            "{tag:?} added {} vertices where the bound is {} ({:?})",
            host.order() - g.order(),
            bound.value,
            bound.case
        )));
    }
    Ok((host, tag, bound.value))
}
