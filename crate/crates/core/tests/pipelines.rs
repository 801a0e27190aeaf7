use proptest::prelude::*;

use flipforge::analysis::new_bound;
use flipforge::pipelines::{
    build_gaps, colour_merge, plan_br, plan_gaps, plan_gaps_relaxed, ChainCase, GapsInput, GapsOutcome,
};
use flipforge::EdgeColouredGraph;

/// `deg_j(t)` and `e_j[v](t)` for `j = 1..=k`, evaluated from scratch.
fn direct_profile(q: u64, k: u64, d: &[u64], a: &[u64], t: u64) -> (Vec<i128>, Vec<i128>) {
    let c = (k - q) * (k - q - 1) / 2;
    let big_d = |i: u64| if i <= q { d[i as usize - 1] } else { k - i } as i128;
    let mu = (c + a.iter().sum::<u64>()) as i128;
    let w = 1 + mu + 2 * (1..=k).map(big_d).sum::<i128>();
    let rho = ((k - q) * t + c) as i128;
    let mut deg = vec![];
    let mut e = vec![];
    for j in 1..=k {
        if j <= q {
            deg.push(a[j as usize - 1] as i128);
            e.push(big_d(j) * (rho + 1));
        } else {
            let m = (t + j - q - 1) as i128;
            deg.push((k - j) as i128 + m * (1 + mu));
            e.push(big_d(j) * (rho + 1) + m * w);
        }
    }
    (deg, e)
}

fn strictly(xs: &[i128], up: bool) -> bool {
    xs.windows(2).all(|w| if up { w[0] < w[1] } else { w[0] > w[1] })
}

#[test]
fn plan_matches_direct_evaluation_at_t_t1_t2() {
    let cases = [
        (2u64, 9u64, vec![110u64, 109], vec![101u64, 102]),
        (2, 9, vec![140, 130], vec![50, 60]),
        (2, 10, vec![80, 79], vec![10, 11]),
        (3, 13, vec![300, 299, 298], vec![100, 101, 102]),
    ];
    for (q, k, d, a) in cases {
        let base = plan_gaps(&GapsInput {
            q,
            k,
            d: d.clone(),
            a_low: a.clone(),
            t_override: None,
            f_order: 1,
        })
        .unwrap();
        for t in base.t..base.t + 3 {
            let plan = plan_gaps(&GapsInput {
                q,
                k,
                d: d.clone(),
                a_low: a.clone(),
                t_override: Some(t),
                f_order: 1,
            })
            .unwrap();
            let (deg, e) = direct_profile(q, k, &d, &a, t);
            assert_eq!(plan.deg_at_t, deg, "q={q} k={k} t={t}");
            assert_eq!(plan.e_at_t, e, "q={q} k={k} t={t}");
            assert!(strictly(&deg, true) && strictly(&e, false));
            for (f, x) in plan.predicted_deg.iter().zip(&deg) {
                assert_eq!(f.at(t), *x);
            }
            for (f, x) in plan.predicted_e.iter().zip(&e) {
                assert_eq!(f.at(t), *x);
            }
            // a_k grows with t
            let next = direct_profile(q, k, &d, &a, t + 1).0;
            assert!(next[k as usize - 1] > deg[k as usize - 1]);
        }
    }
}

#[test]
fn chain_cases_are_assigned_by_position() {
    let plan = plan_gaps(&GapsInput {
        q: 3,
        k: 13,
        d: vec![300, 299, 298],
        a_low: vec![100, 101, 102],
        t_override: None,
        f_order: 1,
    })
    .unwrap();
    let cases: Vec<ChainCase> = plan.links.iter().map(|l| l.case).collect();
    assert_eq!(&cases[..3], &[ChainCase::WithinF, ChainCase::WithinF, ChainCase::Boundary]);
    assert!(cases[3..].iter().all(|&c| c == ChainCase::WithinK));
    assert_eq!(plan.links.len(), 12);
}

#[test]
fn monochromatic_cycle_as_f() {
    // C_5 in one colour: deg 2, e[v] = 2; q = 1 is outside the strict range
    let c5 = EdgeColouredGraph::new(5, 1, (0..5).map(|i| (i, (i + 1) % 5, 1)).collect()).unwrap();
    let input = GapsInput::from_graph(&c5, 3, Some(1)).unwrap();
    assert!(plan_gaps(&input).is_err());
    let plan = plan_gaps_relaxed(&input).unwrap();
    assert_eq!(plan.rho, 3);
    let res = build_gaps(&plan, &c5, 1_000).unwrap();
    let GapsOutcome::Materialized { graph, .. } = res.outcome else {
        panic!("expected a materialized graph");
    };
    assert_eq!(graph.vertex_count(), 60);
    assert_eq!(graph.uniform_profile().unwrap(), res.predicted);
}

#[test]
fn merge_then_merge_again_composes() {
    let (g, _, _) = flipforge::pipelines::build_br(&plan_br(10, 12).unwrap()).unwrap();
    let once = colour_merge(&g, &[vec![1, 2]]).unwrap();
    let twice = colour_merge(&colour_merge(&g, &[vec![2], vec![1]]).unwrap(), &[vec![1, 2]]).unwrap();
    assert_eq!(once, twice);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn br_plans_satisfy_their_invariants(b in 4u64..60, offset in 1u64..2000) {
        let f = (b + 2) / 6;
        let r = b + 1 + offset % (2 * f * f - 1).max(1);
        prop_assume!(r < b + 2 * f * f);
        let plan = plan_br(b, r).unwrap();
        prop_assert_eq!(plan.blue.len() as u64, b);
        prop_assert_eq!(plan.red.len() as u64, r);
        prop_assert!(plan.red.is_sum_free());
        prop_assert!(plan.red.sumset(&plan.blue).unwrap().is_disjoint(&plan.red).unwrap());
        prop_assert_eq!(plan.order(), new_bound(b, r).unwrap());
        prop_assert_eq!(plan.r0.len(), r / 2);
        prop_assert_eq!(plan.t2.len(), f);
        prop_assert!(16 * plan.t2.lo >= 3 * plan.n);
        prop_assert!(plan.r0.hi < plan.t0.lo);
    }

    #[test]
    fn plans_below_t_min_are_rejected(extra in 0u64..50, d2 in 108u64..400) {
        let input = GapsInput { q: 2, k: 9, d: vec![d2 + 1 + extra, d2], a_low: vec![1, 2], t_override: None, f_order: 1 };
        let gap_rhs = 1 + 2 * (1 + extra as i128) + 105;
        match plan_gaps(&input) {
            Ok(plan) => {
                prop_assert!(d2 as i128 > gap_rhs);
                prop_assert!(plan.is_flip());
                let low = GapsInput { t_override: Some(plan.t_min - 1), ..input };
                prop_assert!(plan_gaps(&low).is_err());
            }
            Err(_) => prop_assert!(d2 as i128 <= gap_rhs),
        }
    }
}
