//! `(b, r)`-flip Cayley graphs from two intervals of `(n/8, n/4)`.

use serde::Serialize;

use crate::analysis::{check_br_range, lambda, new_bound, verify_flip, FlipReport};
use crate::construct::{cayley_build, ColouredConnectingSet};
use crate::error::{FlipError, Result};
use crate::graph::EdgeColouredGraph;
use crate::group::GroupSpec;
use crate::setalg::{interval_sum_check, GroupSubset, IntervalSumReport, ResidueInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityCase {
    /// `b` and `r` even: `Γ = Z_n`.
    I,
    /// Exactly one odd: `Γ = Z_n`, the odd side gets the involution `n/2`.
    Ii,
    /// Both odd: `Γ = Z_2 × Z_n`.
    Iii,
}

#[derive(Debug, Clone, Serialize)]
pub struct BrPlan {
    pub b: u64,
    pub r: u64,
    pub n: u64,
    pub lambda: u64,
    pub parity_case: ParityCase,
    pub r0: ResidueInterval,
    pub t0: ResidueInterval,
    pub t2: ResidueInterval,
    pub r1: GroupSubset,
    pub t1: GroupSubset,
    pub b1: GroupSubset,
    pub group: GroupSpec,
    /// Colour 1.
    pub blue: GroupSubset,
    /// Colour 2.
    pub red: GroupSubset,
    pub interval_sums: IntervalSumReport,
}

impl BrPlan {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// `b + 2⌊(b+2)/6⌋²`, the guaranteed lower bound on `e_1[v]`.
    pub fn e1_floor(&self) -> u64 {
        let f = (self.b + 2) / 6;
        self.b + 2 * f * f
    }

    pub fn connecting_set(&self) -> Result<ColouredConnectingSet> {
        let classes = [(1, self.blue.clone()), (2, self.red.clone())].into_iter().collect();
        ColouredConnectingSet::new(&self.group, classes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

fn internal(msg: impl Into<String>) -> FlipError {
    FlipError::Verification(format!("plan_br internal check: {}", msg.into()))
}

pub fn plan_br(b: u64, r: u64) -> Result<BrPlan> {
    check_br_range(b, r)?;
    let f = (b + 2) / 6;
    let r0_len = r / 2;
    let t0_len = (b + 2) / 2 - 2 * f;
    let n = 8 * (2 + r0_len + t0_len);

    let r0 = ResidueInterval::new(n, n / 8 + 1, n / 8 + r0_len)?;
    let t0 = ResidueInterval::new(n, n / 4 - t0_len, n / 4 - 1)?;
    let t2 = ResidueInterval::new(n, n / 4 - f, n / 4 - 1)?;
    if r0.hi >= t0.lo || !t0.contains_interval(&t2) || 16 * t2.lo < 3 * n {
        return Err(internal(format!("placement infeasible for ({b}, {r})")));
    }

    let interval_sums = interval_sum_check(n, &r0, &t0, &t2)?;
    if !interval_sums.all_hold() || interval_sums.half_plus_b_avoids_a.is_none() {
        return Err(internal("interval sumset conclusions fail"));
    }

    let r0s = r0.elements();
    let r1 = r0s.union(&r0s.inverses())?;
    let t0s = t0.elements();
    let t1 = t0s.union(&t0s.inverses())?;
    let two_t2 = t2.elements().doubled();
    let b1 = t1.union(&two_t2)?.union(&two_t2.inverses())?;

    let zn = GroupSpec::cyclic(n)?;
    let half = GroupSubset::from_residues(&zn, &[(n / 2) as i64])?;
    let (parity_case, group, blue, red) = match (b % 2, r % 2) {
        (0, 0) => (ParityCase::I, zn, b1.clone(), r1.clone()),
        (1, 0) => (ParityCase::Ii, zn, b1.union(&half)?, r1.clone()),
        (0, 1) => (ParityCase::Ii, zn, b1.clone(), r1.union(&half)?),
        _ => {
            let g = GroupSpec::new(vec![2, n])?;
            let blue = b1.lift_into(&g, 0)?.union(&half.lift_into(&g, 0)?)?;
            let flip = GroupSubset::from_arrays(&g, &[vec![1, 0]])?;
            let red = r1.lift_into(&g, 0)?.union(&flip)?;
            (ParityCase::Iii, g, blue, red)
        }
    };

    let plan = BrPlan {
        b,
        r,
        n,
        lambda: lambda(b, r),
        parity_case,
        r0,
        t0,
        t2,
        r1,
        t1,
        b1,
        group,
        blue,
        red,
        interval_sums,
    };
    check_plan(&plan)?;
    Ok(plan)
}

fn check_plan(p: &BrPlan) -> Result<()> {
    let checks = [
        (p.blue.len() as u64 == p.b, "|B| = b"),
        (p.red.len() as u64 == p.r, "|R| = r"),
        (p.red.is_sum_free(), "R sum-free"),
        (p.red.is_inverse_closed() && p.blue.is_inverse_closed(), "R, B inverse-closed"),
        (p.red.is_disjoint(&p.blue)?, "R, B disjoint"),
        (!p.red.contains(&p.group.identity()) && !p.blue.contains(&p.group.identity()), "identity-free"),
        (p.red.sumset(&p.blue)?.is_disjoint(&p.red)?, "(R + B) ∩ R = ∅"),
        (p.group.order() == p.lambda * p.n, "|Γ| = λn"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, what)) => Err(internal(format!("{what} fails for ({}, {})", p.b, p.r))),
        None => Ok(()),
    }
}

/// Checks on the built graph beyond the flip verdict.
#[derive(Debug, Clone, Serialize)]
pub struct BrCertificate {
    pub order: u64,
    pub bound: u64,
    pub e1_floor: u64,
    /// Smallest `e_1[v]` over all vertices.
    pub e1_min: u64,
    /// Whether `e_2[v] = r` everywhere. Not required: red edges can appear
    /// between blue neighbours once `b` is large.
    pub e2_equals_r: bool,
}

/// Builds `Cay(Γ, B ∪ R)` with `B` in colour 1 and `R` in colour 2 and
/// verifies it by brute force. Any failed check is an error.
pub fn build_br(plan: &BrPlan) -> Result<(EdgeColouredGraph, FlipReport, BrCertificate)> {
    let graph = cayley_build(&plan.connecting_set()?)?;
    let report = verify_flip(&graph, Some(&[plan.b, plan.r]));
    if !report.passed() {
        let first = report.violations.first().map(|v| v.detail.clone()).unwrap_or_default();
        return Err(FlipError::Verification(format!(
            "({}, {}) graph is not a flip graph: {first}",
            plan.b, plan.r
        )));
    }
    let mut e1_min = u64::MAX;
    let mut e2_equals_r = true;
    for v in 0..graph.vertex_count() {
        let e = report.e_chain.at(v);
        e1_min = e1_min.min(e[0]);
        e2_equals_r &= e[1] == plan.r;
    }
    let cert = BrCertificate {
        order: graph.vertex_count() as u64,
        bound: new_bound(plan.b, plan.r)?,
        e1_floor: plan.e1_floor(),
        e1_min,
        e2_equals_r,
    };
    if cert.e1_min < cert.e1_floor || cert.e1_floor <= plan.r {
        return Err(FlipError::Verification(format!(
            "e_1 ≥ {} > {} fails (min e_1 = {})",
            cert.e1_floor, plan.r, cert.e1_min
        )));
    }
    if cert.order != cert.bound {
        return Err(FlipError::Verification(format!(
            "order {} differs from the bound {}",
            cert.order, cert.bound
        )));
    }
    Ok((graph, report, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::EChain;

    #[test]
    fn plan_6_7() {
        let p = plan_br(6, 7).unwrap();
        assert_eq!(p.n, 56);
        assert_eq!(p.parity_case, ParityCase::Ii);
        assert_eq!((p.r0.lo, p.r0.hi), (8, 10));
        assert_eq!((p.t0.lo, p.t0.hi), (12, 13));
        assert_eq!((p.t2.lo, p.t2.hi), (13, 13));
        assert_eq!(p.blue.residues(), vec![12, 13, 26, 30, 43, 44]);
        assert_eq!(p.red.residues(), vec![8, 9, 10, 28, 46, 47, 48]);
        assert_eq!(p.order(), 56);
    }

    #[test]
    fn plan_4_5() {
        let p = plan_br(4, 5).unwrap();
        assert_eq!(p.n, 40);
        assert_eq!(p.blue.residues(), vec![9, 18, 22, 31]);
        assert_eq!(p.red.residues(), vec![6, 7, 20, 33, 34]);
    }

    #[test]
    fn plan_range_errors() {
        let msg = plan_br(4, 6).unwrap_err().to_string();
        assert!(msg.contains("= 6 required"), "{msg}");
        assert!(plan_br(3, 4).is_err());
    }

    #[test]
    fn build_examples() {
        let (g, rep, cert) = build_br(&plan_br(4, 5).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 40);
        assert_eq!(rep.e_chain, EChain::Uniform(vec![7, 5]));
        assert!(cert.e2_equals_r);

        let (g, rep, _) = build_br(&plan_br(6, 7).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 56);
        assert!(rep.e_chain.at(0)[0] >= 8);

        let p = plan_br(11, 13).unwrap();
        assert_eq!(p.parity_case, ParityCase::Iii);
        assert_eq!(p.group.factors(), &[2, 80]);
        let (g, rep, _) = build_br(&p).unwrap();
        assert_eq!(g.vertex_count(), 160);
        assert_eq!(rep.e_chain, EChain::Uniform(vec![23, 13]));
    }

    #[test]
    fn even_even_case() {
        let p = plan_br(10, 12).unwrap();
        assert_eq!(p.parity_case, ParityCase::I);
        assert_eq!(p.group.order(), p.n);
        build_br(&p).unwrap();
    }

    #[test]
    fn plan_json_has_every_set() {
        let v: serde_json::Value = serde_json::from_str(&plan_br(6, 7).unwrap().to_json()).unwrap();
        for key in ["n", "lambda", "parity_case", "r0", "t0", "t2", "r1", "t1", "b1", "group", "blue", "red"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["parity_case"], "ii");
        assert_eq!(v["group"], "z:56");
    }
}
