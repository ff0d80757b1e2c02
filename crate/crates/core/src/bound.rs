//! Closed-form evaluation of the prime bound: the least number of vertices
//! that must be added to a graph to obtain a prime extension of it.
//!
//! With `m = max(alpha_M, omega_M)`:
//!
//! * `m >= 2` and not a power of two: the bound is `ceil(log2 m)`;
//! * `m = 2^k`, `k >= 1`: the bound is `k + 1` when the graph or its
//!   complement has exactly `2^k` isolated vertices, and `k` otherwise;
//! * `m = 1` and the graph is not prime (so it has at least four vertices):
//!   the bound is 1.
//!
//! Graphs with at most one vertex are totalised as `4 - n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mdtree::StructureReport;
use crate::modules::is_prime;

/// `ceil(log2 x)` for `x >= 1`, by bit length.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1, "ceil_log2(0)");
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// `Some(k)` when `x == 2^k`.
pub fn exact_log2(x: usize) -> Option<usize> {
    (x != 0 && x & (x - 1) == 0).then(|| x.trailing_zeros() as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundCase {
    AlreadyPrime,
    TinyGraph,
    NotPowerOfTwo,
    PowerOfTwoIsolated,
    PowerOfTwoRegular,
    AlphaOmegaOne,
}

impl BoundCase {
    /// Whether the value is a convention for graphs too small to be prime
    /// rather than the closed form.
    pub fn is_out_of_scope(self) -> bool {
        self == BoundCase::TinyGraph
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeBoundResult {
    pub value: usize,
    pub case: BoundCase,
    /// `max(alpha_M, omega_M)`.
    pub m: usize,
    /// `log2 m` when `m` is a power of two with `m >= 2`.
    pub k: Option<usize>,
    pub iota: usize,
    pub iota_complement: usize,
}

/// `ceil(log2 m)`; requires `m >= 2`.
pub fn lower_bound_modular(report: &StructureReport) -> Result<usize> {
    let m = report.max_modular();
    if m < 2 {
        return Err(Error::domain(format!("modular lower bound needs max(alpha_M, omega_M) >= 2, got {m}")));
    }
    Ok(ceil_log2(m))
}

/// `ceil(log2(max(iota(G), iota(complement G)) + 1))`; requires an isolated
/// or universal vertex.
pub fn lower_bound_isolated(report: &StructureReport) -> Result<usize> {
    let i = report.max_iota();
    if i == 0 {
        return Err(Error::domain("isolated-vertex lower bound needs an isolated or universal vertex"));
    }
    Ok(ceil_log2(i + 1))
}

/// `ceil(log2(m + 1))`; requires `m >= 2`.
pub fn upper_bound_modular(report: &StructureReport) -> Result<usize> {
    let m = report.max_modular();
    if m < 2 {
        return Err(Error::domain(format!("modular upper bound needs max(alpha_M, omega_M) >= 2, got {m}")));
    }
    Ok(ceil_log2(m + 1))
}

pub fn prime_bound(g: &Graph) -> PrimeBoundResult {
    prime_bound_with_report(g, &StructureReport::of(g))
}

/// As [`prime_bound`], reusing an already computed report for `g`.
pub fn prime_bound_with_report(g: &Graph, report: &StructureReport) -> PrimeBoundResult {
    let n = g.order();
    let m = report.max_modular();
    let k = if m >= 2 { exact_log2(m) } else { None };
    let result = |value, case| PrimeBoundResult {
        value,
        case,
        m,
        k,
        iota: report.iota,
        iota_complement: report.iota_complement,
    };

    if is_prime(g) {
        return result(0, BoundCase::AlreadyPrime);
    }
    if n <= 1 {
        return result(4 - n, BoundCase::TinyGraph);
    }
    if m >= 2 {
        return match k {
            None => result(ceil_log2(m), BoundCase::NotPowerOfTwo),
            Some(k) if report.iota == m || report.iota_complement == m => result(k + 1, BoundCase::PowerOfTwoIsolated),
            Some(k) => result(k, BoundCase::PowerOfTwoRegular),
        };
    }
    // Every graph on 2 or 3 vertices has a clique or stable module of size 2.
    assert!(n >= 4, "non-prime graph of order {n} with max(alpha_M, omega_M) = {m}");
    result(1, BoundCase::AlphaOmegaOne)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_graph6;

    fn report_with(m: usize, iota: usize) -> StructureReport {
        let mut r = StructureReport::of(&Graph::empty(0).unwrap());
        r.omega_m = m;
        r.alpha_m = 1;
        r.iota = iota;
        r
    }

    #[test]
    fn logs() {
        let expected = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (7, 3), (8, 3), (9, 4), (1024, 10), (1025, 11)];
        for (x, c) in expected {
            assert_eq!(ceil_log2(x), c, "ceil_log2({x})");
        }
        assert_eq!(exact_log2(1), Some(0));
        assert_eq!(exact_log2(8), Some(3));
        assert_eq!(exact_log2(6), None);
        assert_eq!(exact_log2(0), None);
    }

    #[test]
    fn modular_lower_bound() {
        assert_eq!(lower_bound_modular(&report_with(4, 0)), Ok(2));
        assert_eq!(lower_bound_modular(&report_with(3, 0)), Ok(2));
        assert_eq!(lower_bound_modular(&report_with(2, 0)), Ok(1));
        assert!(lower_bound_modular(&report_with(1, 0)).is_err());
    }

    #[test]
    fn isolated_lower_bound() {
        assert_eq!(lower_bound_isolated(&report_with(1, 4)), Ok(3));
        assert_eq!(lower_bound_isolated(&report_with(1, 1)), Ok(1));
        assert_eq!(lower_bound_isolated(&report_with(1, 2)), Ok(2));
        assert!(lower_bound_isolated(&report_with(1, 0)).is_err());
    }

    #[test]
    fn modular_upper_bound() {
        for (m, ub) in [(2, 2), (3, 2), (4, 3), (7, 3), (8, 4)] {
            assert_eq!(upper_bound_modular(&report_with(m, 0)), Ok(ub), "m = {m}");
        }
        assert!(upper_bound_modular(&report_with(1, 0)).is_err());
    }

    fn case(g: &Graph) -> (usize, BoundCase) {
        let r = prime_bound(g);
        (r.value, r.case)
    }

    #[test]
    fn dispatch() {
        use BoundCase::*;
        assert_eq!(case(&Graph::path(4).unwrap()), (0, AlreadyPrime));
        assert_eq!(case(&Graph::empty(2).unwrap()), (2, PowerOfTwoIsolated));
        assert_eq!(case(&Graph::complete(4).unwrap()), (3, PowerOfTwoIsolated));
        assert_eq!(case(&parse_graph6("CK").unwrap()), (1, PowerOfTwoRegular));
        assert_eq!(case(&Graph::empty(3).unwrap()), (2, NotPowerOfTwo));
        let p4 = Graph::path(4).unwrap();
        assert_eq!(case(&p4.substitute(1, &p4).unwrap()), (1, AlphaOmegaOne));
        assert_eq!(case(&Graph::empty(1).unwrap()), (3, TinyGraph));
        assert_eq!(case(&Graph::empty(0).unwrap()), (4, TinyGraph));
    }

    #[test]
    fn witnesses() {
        let r = prime_bound(&Graph::complete(4).unwrap());
        assert_eq!((r.m, r.k, r.iota, r.iota_complement), (4, Some(2), 0, 4));
        let r = prime_bound(&Graph::empty(3).unwrap());
        assert_eq!((r.m, r.k), (3, None));
    }
}
