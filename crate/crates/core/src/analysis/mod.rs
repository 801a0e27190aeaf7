//! Flip verification, bound formulas and the sum-free/inverse-closed search.

mod bounds;
mod search;

pub use bounds::{
    bounds_csv, bounds_table, check_br_range, check_old_range, lambda, new_bound, old_bound, qk_bounds,
    BoundRow, QkLowerRule, RangePolicy,
};
pub use search::{search_sumfree_inverse_closed, SearchMode, SearchOutcome};

use serde::{Serialize, Serializer};

use crate::graph::EdgeColouredGraph;

/// Maximum number of violations written when a report is serialized.
pub const SERIALIZED_VIOLATION_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationReason {
    NotRegular,
    ChainNotStrict,
    DegreesNotIncreasing,
    SequenceMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `None` for graph-level failures.
    pub vertex: Option<usize>,
    pub reason: ViolationReason,
    pub detail: String,
}

/// Closed-neighbourhood colour counts, collapsed when every vertex agrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "values")]
pub enum EChain {
    Uniform(Vec<u64>),
    PerVertex(Vec<Vec<u64>>),
}

impl EChain {
    pub fn at(&self, v: usize) -> &[u64] {
        match self {
            EChain::Uniform(e) => e,
            EChain::PerVertex(rows) => &rows[v],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipReport {
    pub verdict: Verdict,
    pub vertex_count: usize,
    /// `(a_1, ..., a_k)` when every colour class is regular.
    pub colour_degrees: Option<Vec<u64>>,
    pub e_chain: EChain,
    pub violation_count: usize,
    #[serde(serialize_with = "first_violations")]
    pub violations: Vec<Violation>,
}

fn first_violations<S: Serializer>(v: &[Violation], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().take(SERIALIZED_VIOLATION_LIMIT))
}

impl FlipReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks the flip conditions by counting at every vertex: each colour class
/// is `a_j`-regular with `a_1 < ... < a_k`, and `e_1[v] > ... > e_k[v]`.
///
/// With `expected`, the degree sequence must also equal it.
pub fn verify_flip(g: &EdgeColouredGraph, expected: Option<&[u64]>) -> FlipReport {
    let profiles = g.profiles();
    let mut violations = Vec::new();

    let colour_degrees = profiles.first().map(|p| p.deg.clone());
    for p in &profiles {
        if Some(&p.deg) != colour_degrees.as_ref() {
            violations.push(Violation {
                vertex: Some(p.vertex),
                reason: ViolationReason::NotRegular,
                detail: format!("degrees {:?} differ from vertex 0", p.deg),
            });
        }
    }
    let regular = violations.is_empty();
    let colour_degrees = colour_degrees.filter(|_| regular);

    if let Some(a) = &colour_degrees {
        if let Some(j) = a.windows(2).position(|w| w[0] >= w[1]) {
            violations.push(Violation {
                vertex: None,
                reason: ViolationReason::DegreesNotIncreasing,
                detail: format!("a_{} = {} is not below a_{} = {}", j + 1, a[j], j + 2, a[j + 1]),
            });
        }
        if let Some(exp) = expected {
            if exp != a.as_slice() {
                violations.push(Violation {
                    vertex: None,
                    reason: ViolationReason::SequenceMismatch,
                    detail: format!("degree sequence {a:?} differs from expected {exp:?}"),
                });
            }
        }
    }

    for p in &profiles {
        if let Some(j) = p.e_closed.windows(2).position(|w| w[0] <= w[1]) {
            violations.push(Violation {
                vertex: Some(p.vertex),
                reason: ViolationReason::ChainNotStrict,
                detail: format!(
                    "e_{}[v] = {} is not above e_{}[v] = {}",
                    j + 1,
                    p.e_closed[j],
                    j + 2,
                    p.e_closed[j + 1]
                ),
            });
        }
    }

    let e_chain = match profiles.first() {
        Some(first) if profiles.iter().all(|p| p.e_closed == first.e_closed) => {
            EChain::Uniform(first.e_closed.clone())
        }
        Some(_) => EChain::PerVertex(profiles.iter().map(|p| p.e_closed.clone()).collect()),
        None => EChain::Uniform(vec![0; g.colour_count() as usize]),
    };

    FlipReport {
        verdict: if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
        vertex_count: g.vertex_count(),
        colour_degrees,
        e_chain,
        violation_count: violations.len(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cayley_build, ColouredConnectingSet};
    use crate::graph::tests::{alternating_c4, complete};
    use crate::group::GroupSpec;
    use crate::setalg::GroupSubset;
    use std::collections::BTreeMap;

    fn graph_4_5() -> EdgeColouredGraph {
        let z = GroupSpec::cyclic(40).unwrap();
        let classes = BTreeMap::from([
            (1, GroupSubset::from_residues(&z, &[9, 18, 22, 31]).unwrap()),
            (2, GroupSubset::from_residues(&z, &[6, 7, 20, 33, 34]).unwrap()),
        ]);
        cayley_build(&ColouredConnectingSet::new(&z, classes).unwrap()).unwrap()
    }

    #[test]
    fn the_4_5_graph_passes() {
        let rep = verify_flip(&graph_4_5(), Some(&[4, 5]));
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.colour_degrees, Some(vec![4, 5]));
        assert_eq!(rep.e_chain, EChain::Uniform(vec![7, 5]));
        let wrong = verify_flip(&graph_4_5(), Some(&[4, 6]));
        assert!(!wrong.passed());
        assert_eq!(wrong.violations[0].reason, ViolationReason::SequenceMismatch);
    }

    #[test]
    fn alternating_c4_fails() {
        let rep = verify_flip(&alternating_c4(), None);
        assert!(!rep.passed());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.reason == ViolationReason::DegreesNotIncreasing));
        assert!(rep.violations.iter().any(|v| v.reason == ViolationReason::ChainNotStrict));
    }

    #[test]
    fn monochromatic_k4_passes_vacuously() {
        let rep = verify_flip(&complete(4, 1, 1), Some(&[3]));
        assert!(rep.passed());
    }

    #[test]
    fn irregular_graph_fails() {
        let p3 = EdgeColouredGraph::new(3, 1, vec![(0, 1, 1), (1, 2, 1)]).unwrap();
        let rep = verify_flip(&p3, None);
        assert!(!rep.passed());
        assert_eq!(rep.colour_degrees, None);
        assert!(matches!(rep.e_chain, EChain::PerVertex(_)));
        assert_eq!(rep.violations[0].reason, ViolationReason::NotRegular);
    }

    #[test]
    fn serialized_violations_are_capped() {
        // 30 disjoint edges plus an isolated vertex: every vertex but one differs from vertex 0
        let mut edges = vec![];
        for i in 0..30 {
            edges.push((2 * i + 1, 2 * i + 2, 1));
        }
        let g = EdgeColouredGraph::new(61, 1, edges).unwrap();
        let rep = verify_flip(&g, None);
        assert_eq!(rep.violation_count, 60);
        let json: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(json["violations"].as_array().unwrap().len(), SERIALIZED_VIOLATION_LIMIT);
        assert_eq!(json["violation_count"], 60);
        assert_eq!(json["verdict"], "fail");
    }
}
