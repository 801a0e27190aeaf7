//! `k`-flip graphs whose top degree grows without bound while the first `q`
//! colour degrees stay fixed: `G = H ⊠ (F □ K)`.
//!
//! `F` is a given `q`-flip graph, `K` a Cayley graph on a sum-free connecting
//! set split into classes of sizes `k-q-1, ..., 1`, and `H = K_{ρ,ρ}` with its
//! perfect matchings spread over colours `q+1..=k`.

use serde::Serialize;

use crate::analysis::{verify_flip, FlipReport};
use crate::construct::{
    bipartite_matching_graph, cartesian_product, cartesian_product_profile, cayley_build, strong_product,
    strong_product_profile, ColouredConnectingSet, MatchingColourPlan,
};
use crate::error::{FlipError, Result};
use crate::graph::{Colour, ColourProfile, EdgeColouredGraph};
use crate::group::GroupSpec;
use crate::setalg::GroupSubset;

/// Largest `|V(G)|` that [`build_gaps`] builds explicitly by default.
pub const DEFAULT_MATERIALIZE_LIMIT: u64 = 200_000;

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn check_kq(k: u64, q: u64, relaxed: bool) -> Result<()> {
    if k > Colour::MAX as u64 {
        return Err(FlipError::Range(format!("k = {k} exceeds the colour limit")));
    }
    if relaxed {
        if q < 1 || k < q + 2 {
            return Err(FlipError::Range(format!("q ≥ 1 and k ≥ q + 2 required (got q = {q}, k = {k})")));
        }
    } else if q <= 1 || 4 * q >= k {
        return Err(FlipError::Range(format!("1 < q < k/4 required (got q = {q}, k = {k})")));
    }
    Ok(())
}

/// Class sizes `k-q-j` for `j = 1..k-q-1`, on colours `q+1, ..., k-1`.
pub fn k_class_sizes(k: u64, q: u64) -> Vec<u64> {
    (1..k - q).map(|j| k - q - j).collect()
}

/// `(a, m)` for `Γ = Z_2^a × Z_m`: `2^a` covers the odd classes and `m` is the
/// smallest even modulus whose middle third holds enough inverse pairs.
pub fn k_group_shape(k: u64, q: u64) -> (u32, u64) {
    let sizes = k_class_sizes(k, q);
    let odd = sizes.iter().filter(|&&s| s % 2 == 1).count() as u64;
    let a = if odd <= 1 { 0 } else { (odd - 1).ilog2() + 1 };
    let pairs: u64 = sizes.iter().map(|s| s / 2).sum();
    let mut m = 2;
    while (1u64 << a) * (middle_pairs(m).count() as u64) < pairs {
        m += 2;
    }
    (a, m)
}

/// Residues `x` with `m/3 < x < m/2`; `x` and `-x` both lie in the open middle third.
fn middle_pairs(m: u64) -> impl Iterator<Item = u64> {
    (1..m).filter(move |&x| 3 * x > m && 2 * x < m)
}

/// Connecting set of `K`: colour `q+j` gets `k-q-j` elements whose `Z_m`
/// component lies in `(m/3, 2m/3)`, so their union is sum-free.
///
/// `relaxed` only lowers the parameter gate to `q ≥ 1, k ≥ q + 2`.
pub fn k_connecting_set(k: u64, q: u64, relaxed: bool) -> Result<ColouredConnectingSet> {
    check_kq(k, q, relaxed)?;
    let (a, m) = k_group_shape(k, q);
    let mut factors = vec![2; a as usize];
    factors.push(m);
    let spec = GroupSpec::new(factors)?;
    let layers = 1u64 << a;

    let mut involutions = (0..layers).map(|e| spec.element_at(e * m + m / 2));
    let mut pairs = (0..layers).flat_map(|e| middle_pairs(m).map(move |x| (e * m + x, e * m + m - x)));
    let mut classes = std::collections::BTreeMap::new();
    for (j, size) in k_class_sizes(k, q).into_iter().enumerate() {
        let mut class = GroupSubset::empty(&spec);
        for _ in 0..size / 2 {
            let (x, y) = pairs.next().ok_or_else(|| FlipError::Verification("K capacity exhausted".into()))?;
            class.insert(spec.element_at(x))?;
            class.insert(spec.element_at(y))?;
        }
        if size % 2 == 1 {
            let inv = involutions
                .next()
                .ok_or_else(|| FlipError::Verification("K has too few involutions".into()))?;
            class.insert(inv)?;
        }
        classes.insert((q + 1 + j as u64) as Colour, class);
    }
    let ccs = ColouredConnectingSet::new(&spec, classes)?;
    if !ccs.connecting_set().is_sum_free() {
        return Err(FlipError::Verification("K connecting set is not sum-free".into()));
    }
    Ok(ccs)
}

/// `K` on the palette `1..=k-1`, certified: every vertex has
/// `deg_{q+j}(v) = e_{q+j}[v] = k-q-j` and nothing in colours `1..=q`.
pub fn build_k(k: u64, q: u64) -> Result<EdgeColouredGraph> {
    build_k_inner(k, q, false)
}

fn build_k_inner(k: u64, q: u64, relaxed: bool) -> Result<EdgeColouredGraph> {
    let ccs = k_connecting_set(k, q, relaxed)?;
    let g = cayley_build(&ccs)?.with_colour_count((k - 1) as Colour)?;
    let mut expected = vec![0u64; (k - 1) as usize];
    for (j, size) in k_class_sizes(k, q).into_iter().enumerate() {
        expected[q as usize + j] = size;
    }
    for p in g.profiles() {
        if p.deg != expected || p.e_closed != expected {
            return Err(FlipError::Verification(format!(
                "K profile at vertex {} is {:?}/{:?}, expected {expected:?}",
                p.vertex, p.deg, p.e_closed
            )));
        }
    }
    Ok(g)
}

/// `slope · t + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub slope: i128,
    pub intercept: i128,
}

impl Affine {
    pub fn at(&self, t: u64) -> i128 {
        self.slope * t as i128 + self.intercept
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainCase {
    /// Both colours come from `F`.
    WithinF,
    /// Colour `q` against colour `q + 1`.
    Boundary,
    /// Both colours come from `K` and `H`.
    WithinK,
}

/// Colours `j` and `j + 1` of the predicted profile at the chosen `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub colour: u64,
    pub case: ChainCase,
    /// `deg_{j+1} - deg_j`; positive when the degrees increase.
    pub deg_gap: i128,
    /// `e_j - e_{j+1}`; positive when the closed counts decrease.
    pub e_gap: i128,
    /// The case's sufficient inequality: `D_j > D_{j+1}` within `F`,
    /// `(D_q - D_{q+1})(k-q) > W` at the boundary, `(D_j - D_{j+1})(ρ+1) > W` within `K`.
    pub sufficient: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapCheck {
    /// `D_q (k - 4q)`.
    pub lhs: i128,
    /// `1 + ξ q (q-1) + 5 C(k-q, 2)`.
    pub rhs: i128,
    pub slack: i128,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub numerator: u128,
    pub denominator: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapsInput {
    pub q: u64,
    pub k: u64,
    /// `D_1 > ... > D_q`, the closed counts of `F`.
    pub d: Vec<u64>,
    /// `a_1 < ... < a_q`, the colour degrees of `F`.
    pub a_low: Vec<u64>,
    pub t_override: Option<u64>,
    /// `|V(F)|`, used for the order estimate.
    pub f_order: u64,
}

impl GapsInput {
    /// Reads `q`, `a_low` and `D` off a profile-uniform graph.
    pub fn from_graph(f: &EdgeColouredGraph, k: u64, t_override: Option<u64>) -> Result<Self> {
        let p = f
            .uniform_profile()
            .ok_or_else(|| FlipError::Precondition("F does not have a uniform colour profile".into()))?;
        Ok(Self {
            q: f.colour_count() as u64,
            k,
            d: p.e_closed,
            a_low: p.deg,
            t_override,
            f_order: f.vertex_count() as u64,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapsPlan {
    pub q: u64,
    pub k: u64,
    pub d: Vec<u64>,
    pub a_low: Vec<u64>,
    /// `D_1..D_k` of `F □ K`: `D` then `k - i` for `i > q`, ending in 0.
    pub d_full: Vec<u64>,
    /// Colour degrees of `F □ K`.
    pub a_full: Vec<u64>,
    pub xi: i128,
    pub mu: u64,
    /// `1 + μ + 2 Σ_{i=1}^k D_i`.
    pub w: u64,
    pub t: u64,
    pub t_min: u64,
    pub rho: u64,
    pub kappa: Ratio,
    pub s_sizes: Vec<u64>,
    /// Matchings of `H` in colour `q + j`, for `j = 1..=k-q`: `t + j - 1`.
    pub matchings: Vec<u64>,
    pub k_group: GroupSpec,
    pub predicted_deg: Vec<Affine>,
    pub predicted_e: Vec<Affine>,
    pub deg_at_t: Vec<i128>,
    pub e_at_t: Vec<i128>,
    pub links: Vec<ChainLink>,
    pub gap: GapCheck,
    /// Slope of `deg_k` in `t`.
    pub a_k_slope: i128,
    pub deg_increasing: bool,
    pub e_decreasing: bool,
    pub f_order: u64,
    /// `2ρ · |V(F)| · |Γ_K|`.
    pub materialized_order_estimate: u128,
    pub relaxed: bool,
}

impl GapsPlan {
    pub fn is_flip(&self) -> bool {
        self.deg_increasing && self.e_decreasing
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

/// Validated plan under the full hypotheses: `1 < q < k/4`, `D` strictly
/// decreasing, `a_low` strictly increasing with `a_q ≤ D_q`, the gap condition,
/// `t ≥ t_min`, and a strictly monotone predicted profile.
pub fn plan_gaps(input: &GapsInput) -> Result<GapsPlan> {
    plan(input, false)
}

/// Evaluates every formula without the hypotheses, for small test instances.
/// Needs `q ≥ 1`, `k ≥ q + 2` and `t ≥ 1`; nothing else is enforced.
pub fn plan_gaps_relaxed(input: &GapsInput) -> Result<GapsPlan> {
    plan(input, true)
}

fn plan(input: &GapsInput, relaxed: bool) -> Result<GapsPlan> {
    let GapsInput { q, k, .. } = *input;
    check_kq(k, q, relaxed)?;
    let (qu, ku) = (q as usize, k as usize);
    if input.d.len() != qu || input.a_low.len() != qu {
        return Err(FlipError::Precondition(format!(
            "D and a_low need {q} entries (got {} and {})",
            input.d.len(),
            input.a_low.len()
        )));
    }
    let (d, a) = (&input.d, &input.a_low);
    if !relaxed {
        if let Some(j) = d.windows(2).position(|w| w[0] <= w[1]) {
            return Err(FlipError::Precondition(format!("D_{} > D_{} required", j + 1, j + 2)));
        }
        if let Some(j) = a.windows(2).position(|w| w[0] >= w[1]) {
            return Err(FlipError::Precondition(format!("a_{} < a_{} required", j + 1, j + 2)));
        }
        if a[qu - 1] > d[qu - 1] {
            return Err(FlipError::Precondition(format!("a_q = {} ≤ D_q = {} required", a[qu - 1], d[qu - 1])));
        }
    }

    let c = choose2(k - q);
    let xi = d.windows(2).map(|w| w[0] as i128 - w[1] as i128).max().unwrap_or(0);
    let gap = {
        let lhs = d[qu - 1] as i128 * (k as i128 - 4 * q as i128);
        let rhs = 1 + xi * (q * (q - 1)) as i128 + 5 * c as i128;
        GapCheck {
            lhs,
            rhs,
            slack: lhs - rhs,
            holds: lhs > rhs,
        }
    };
    if !relaxed && !gap.holds {
        return Err(FlipError::GapCondition {
            lhs: gap.lhs,
            rhs: gap.rhs,
            slack: gap.slack,
        });
    }

    let d_full: Vec<u64> = (1..=k).map(|i| if i <= q { d[i as usize - 1] } else { k - i }).collect();
    let a_full: Vec<u64> = (1..=k).map(|i| if i <= q { a[i as usize - 1] } else { k - i }).collect();
    let mu = c + a.iter().sum::<u64>();
    let w = 1 + mu + 2 * d_full.iter().sum::<u64>();
    let min_gap = (qu + 1..ku).map(|i| d_full[i - 1] - d_full[i]).min().unwrap_or(1).max(1);
    let t_min = w.div_ceil((k - q) * min_gap);
    let t = match input.t_override {
        Some(t) if !relaxed && t < t_min => return Err(FlipError::TBelowMinimum { given: t, minimum: t_min }),
        Some(0) => return Err(FlipError::Precondition("t ≥ 1 required".into())),
        Some(t) => t,
        None => t_min,
    };
    let rho = (k - q) * t + c;

    let (w_i, mu_i, kq) = (w as i128, mu as i128, (k - q) as i128);
    let mut predicted_deg = Vec::with_capacity(ku);
    let mut predicted_e = Vec::with_capacity(ku);
    for j in 1..=k {
        let dj = d_full[j as usize - 1] as i128;
        let e_base = Affine {
            slope: dj * kq,
            intercept: dj * (c as i128 + 1),
        };
        if j <= q {
            predicted_deg.push(Affine {
                slope: 0,
                intercept: a_full[j as usize - 1] as i128,
            });
            predicted_e.push(e_base);
        } else {
            let shift = (j - q - 1) as i128;
            predicted_deg.push(Affine {
                slope: 1 + mu_i,
                intercept: (k - j) as i128 + shift * (1 + mu_i),
            });
            predicted_e.push(Affine {
                slope: e_base.slope + w_i,
                intercept: e_base.intercept + shift * w_i,
            });
        }
    }
    let deg_at_t: Vec<i128> = predicted_deg.iter().map(|f| f.at(t)).collect();
    let e_at_t: Vec<i128> = predicted_e.iter().map(|f| f.at(t)).collect();

    let links: Vec<ChainLink> = (1..k)
        .map(|j| {
            let i = j as usize - 1;
            let dgap = d_full[i] as i128 - d_full[i + 1] as i128;
            let (case, sufficient) = if j < q {
                (ChainCase::WithinF, dgap > 0)
            } else if j == q {
                (ChainCase::Boundary, dgap * kq > w_i)
            } else {
                (ChainCase::WithinK, dgap * (rho as i128 + 1) > w_i)
            };
            ChainLink {
                colour: j,
                case,
                deg_gap: deg_at_t[i + 1] - deg_at_t[i],
                e_gap: e_at_t[i] - e_at_t[i + 1],
                sufficient,
            }
        })
        .collect();
    let deg_increasing = links.iter().all(|l| l.deg_gap > 0);
    let e_decreasing = links.iter().all(|l| l.e_gap > 0);
    if !relaxed {
        if let Some(l) = links.iter().find(|l| l.deg_gap <= 0) {
            let i = l.colour as usize - 1;
            return Err(FlipError::Monotonicity {
                quantity: "degree",
                colour: l.colour as usize,
                next: l.colour as usize + 1,
                left: deg_at_t[i],
                right: deg_at_t[i + 1],
            });
        }
        if let Some(l) = links.iter().find(|l| l.e_gap <= 0) {
            let i = l.colour as usize - 1;
            return Err(FlipError::Monotonicity {
                quantity: "closed-neighbourhood",
                colour: l.colour as usize,
                next: l.colour as usize + 1,
                left: e_at_t[i],
                right: e_at_t[i + 1],
            });
        }
    }

    let (a_exp, m) = k_group_shape(k, q);
    let mut k_factors = vec![2; a_exp as usize];
    k_factors.push(m);
    let k_group = GroupSpec::new(k_factors)?;
    Ok(GapsPlan {
        q,
        k,
        d: d.clone(),
        a_low: a.clone(),
        d_full,
        a_full,
        xi,
        mu,
        w,
        t,
        t_min,
        rho,
        kappa: Ratio {
            numerator: rho as u128 + 1,
            denominator: ((k - q) * t) as u128,
        },
        s_sizes: k_class_sizes(k, q),
        matchings: (1..=k - q).map(|j| t + j - 1).collect(),
        materialized_order_estimate: 2 * rho as u128 * input.f_order as u128 * k_group.order() as u128,
        k_group,
        predicted_deg,
        predicted_e,
        deg_at_t,
        e_at_t,
        links,
        gap,
        a_k_slope: 1 + mu_i,
        deg_increasing,
        e_decreasing,
        f_order: input.f_order,
        relaxed,
    })
}

/// The advisory check for the unit-gap flipping-interval graphs this
/// construction is meant to start from: `b ≥ 101` and
/// `⌊(b² - 10 b^{3/2}) / 4⌋ ≥ q - 1`, evaluated exactly.
pub fn flipping_interval_feasible(b: u64, q: u64) -> bool {
    if b < 101 || q == 0 {
        return false;
    }
    // the floor of x/4 is ≥ q-1 iff x ≥ 4(q-1); then square both sides of b² - 4(q-1) ≥ 10 b^{3/2}
    let (b, q) = (b as i128, q as i128);
    let x = b * b - 4 * (q - 1);
    x >= 0 && x * x >= 100 * b * b * b
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GapsOutcome {
    /// `G` was built and checked vertex by vertex.
    Materialized {
        #[serde(skip)]
        graph: EdgeColouredGraph,
        flip: FlipReport,
    },
    /// `G` is over the limit; only `F □ K` was built.
    Certified { order: u128, limit: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct GapsResult {
    pub plan: GapsPlan,
    /// Verified uniform profile of `F □ K`.
    pub intermediate_profile: ColourProfile,
    #[serde(skip)]
    pub intermediate: EdgeColouredGraph,
    /// Uniform profile of `H`.
    pub h_profile: ColourProfile,
    /// Profile of `G` from the strong-product formula.
    pub predicted: ColourProfile,
    pub outcome: GapsOutcome,
}

impl GapsResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

fn uniform(g: &EdgeColouredGraph, what: &str) -> Result<ColourProfile> {
    g.uniform_profile()
        .ok_or_else(|| FlipError::Verification(format!("{what} does not have a uniform colour profile")))
}

/// Builds `F □ K` and `H`, checks both against the plan, and builds
/// `G = H ⊠ (F □ K)` when `|V(G)| ≤ materialize_limit`.
pub fn build_gaps(plan: &GapsPlan, f: &EdgeColouredGraph, materialize_limit: u64) -> Result<GapsResult> {
    let k = plan.k as Colour;
    if f.colour_count() as u64 != plan.q {
        return Err(FlipError::Precondition(format!(
            "F uses {} colours, the plan needs {}",
            f.colour_count(),
            plan.q
        )));
    }
    let fp = f
        .uniform_profile()
        .ok_or_else(|| FlipError::Precondition("F does not have a uniform colour profile".into()))?;
    if fp.deg != plan.a_low || fp.e_closed != plan.d {
        return Err(FlipError::Precondition(format!(
            "F has degrees {:?} and closed counts {:?}, the plan needs {:?} and {:?}",
            fp.deg, fp.e_closed, plan.a_low, plan.d
        )));
    }

    let f = f.with_colour_count(k)?;
    let kg = build_k_inner(plan.k, plan.q, plan.relaxed)?.with_colour_count(k)?;
    let m = cartesian_product(&f, &kg)?;
    let mp = uniform(&m, "F □ K")?;
    let expected_m = cartesian_product_profile(&uniform(&f, "F")?, &uniform(&kg, "K")?);
    if mp != expected_m || mp.deg != plan.a_full || mp.e_closed != plan.d_full {
        return Err(FlipError::Verification(format!(
            "F □ K profile {mp:?} differs from the prediction {:?}/{:?}",
            plan.a_full, plan.d_full
        )));
    }

    let counts: Vec<(Colour, usize)> = plan
        .matchings
        .iter()
        .enumerate()
        .map(|(j, &n)| ((plan.q as usize + 1 + j) as Colour, n as usize))
        .collect();
    let h = bipartite_matching_graph(&MatchingColourPlan::from_counts(k, &counts)?)?;
    let hp = uniform(&h, "H")?;
    // H is the outer factor, so its profile goes first
    let predicted = strong_product_profile(&hp, &mp);
    let formula_matches = predicted.deg.iter().zip(&plan.deg_at_t).all(|(&x, &y)| x as i128 == y)
        && predicted.e_closed.iter().zip(&plan.e_at_t).all(|(&x, &y)| x as i128 == y);
    if !formula_matches {
        return Err(FlipError::Verification(format!(
            "strong-product profile {predicted:?} differs from the closed formulas"
        )));
    }

    let order = h.vertex_count() as u128 * m.vertex_count() as u128;
    let outcome = if order <= materialize_limit as u128 {
        let graph = strong_product(&h, &m)?;
        if let Some(p) = graph
            .profiles()
            .into_iter()
            .find(|p| p.deg != predicted.deg || p.e_closed != predicted.e_closed)
        {
            return Err(FlipError::Verification(format!(
                "G at vertex {} has {:?}/{:?}, predicted {:?}/{:?}",
                p.vertex, p.deg, p.e_closed, predicted.deg, predicted.e_closed
            )));
        }
        let flip = verify_flip(&graph, None);
        GapsOutcome::Materialized { graph, flip }
    } else {
        GapsOutcome::Certified {
            order,
            limit: materialize_limit,
        }
    };

    Ok(GapsResult {
        plan: plan.clone(),
        intermediate_profile: mp,
        intermediate: m,
        h_profile: hp,
        predicted,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipelines::{build_br, plan_br};

    fn arithmetic_input() -> GapsInput {
        // D_2 (k - 4q) = 109 > 1 + 2 + 105
        GapsInput {
            q: 2,
            k: 9,
            d: vec![110, 109],
            a_low: vec![101, 102],
            t_override: None,
            f_order: 1000,
        }
    }

    #[test]
    fn k_for_9_2() {
        assert_eq!(k_group_shape(9, 2), (2, 20));
        let ccs = k_connecting_set(9, 2, false).unwrap();
        assert_eq!(ccs.spec().factors(), &[2, 2, 20]);
        let sizes: Vec<usize> = ccs.classes().values().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![6, 5, 4, 3, 2, 1]);
        assert_eq!(ccs.classes().keys().copied().collect::<Vec<_>>(), vec![3, 4, 5, 6, 7, 8]);
        let g = build_k(9, 2).unwrap();
        assert_eq!(g.vertex_count(), 80);
        assert_eq!(g.colour_count(), 8);
    }

    #[test]
    fn k_gate() {
        assert!(build_k(6, 1).is_err());
        assert!(build_k(7, 2).is_err());
        assert!(build_k(8, 2).is_err());
        assert!(build_k(13, 3).is_ok());
    }

    #[test]
    fn relaxed_k_examples() {
        let ccs = k_connecting_set(5, 2, true).unwrap();
        assert_eq!(ccs.spec().factors(), &[8]);
        assert_eq!(ccs.classes()[&3].residues(), vec![3, 5]);
        assert_eq!(ccs.classes()[&4].residues(), vec![4]);
        let ccs = k_connecting_set(3, 1, true).unwrap();
        assert_eq!(ccs.spec().factors(), &[2]);
        assert!(k_connecting_set(3, 2, true).is_err());
    }

    #[test]
    fn arithmetic_plan() {
        let plan = plan_gaps(&arithmetic_input()).unwrap();
        assert_eq!(plan.xi, 1);
        assert_eq!(plan.mu, 21 + 203);
        assert_eq!(plan.w, 1 + 224 + 2 * (219 + 21));
        assert_eq!(plan.t, plan.w.div_ceil(7));
        assert_eq!(plan.rho, 7 * plan.t + 21);
        assert!(plan.is_flip());
        assert!(plan.links.iter().all(|l| l.sufficient));
        assert_eq!(plan.links[0].case, ChainCase::WithinF);
        assert_eq!(plan.links[1].case, ChainCase::Boundary);
        assert_eq!(plan.links[2].case, ChainCase::WithinK);
        assert_eq!(plan.gap.slack, 109 - 108);
    }

    #[test]
    fn t_override_rules() {
        let mut input = arithmetic_input();
        let t_min = plan_gaps(&input).unwrap().t_min;
        input.t_override = Some(t_min - 1);
        match plan_gaps(&input) {
            Err(FlipError::TBelowMinimum { minimum, .. }) => assert_eq!(minimum, t_min),
            other => panic!("{other:?}"),
        }
        input.t_override = Some(t_min + 5);
        let plan = plan_gaps(&input).unwrap();
        assert_eq!(plan.t, t_min + 5);
        assert!(plan.is_flip());
    }

    #[test]
    fn gap_condition_reports_slack() {
        let input = GapsInput {
            d: vec![7, 5],
            a_low: vec![4, 5],
            f_order: 40,
            ..arithmetic_input()
        };
        match plan_gaps(&input) {
            Err(FlipError::GapCondition { lhs, rhs, slack }) => {
                assert_eq!((lhs, rhs, slack), (5, 1 + 4 + 105, 5 - 110));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_preconditions() {
        let mut input = arithmetic_input();
        input.d = vec![109, 110];
        assert!(plan_gaps(&input).is_err());
        input.d = vec![110, 109];
        input.a_low = vec![101, 200];
        assert!(plan_gaps(&input).is_err());
        input.a_low = vec![101];
        assert!(plan_gaps(&input).is_err());
    }

    #[test]
    fn advisory() {
        assert!(!flipping_interval_feasible(100, 2));
        assert!(flipping_interval_feasible(101, 2));
        // b = 101: b² - 10 b^{3/2} ≈ 10201 - 10150.6, a quarter of which is 12.6
        assert!(flipping_interval_feasible(101, 13));
        assert!(!flipping_interval_feasible(101, 14));
    }

    #[test]
    fn relaxed_build_matches_prediction() {
        let (f, _, _) = build_br(&plan_br(4, 5).unwrap()).unwrap();
        let input = GapsInput::from_graph(&f, 5, Some(1)).unwrap();
        let plan = plan_gaps_relaxed(&input).unwrap();
        assert_eq!(plan.rho, 6);
        assert_eq!(plan.materialized_order_estimate, 3840);
        let res = build_gaps(&plan, &f, DEFAULT_MATERIALIZE_LIMIT).unwrap();
        match &res.outcome {
            GapsOutcome::Materialized { graph, .. } => assert_eq!(graph.vertex_count(), 3840),
            other => panic!("{other:?}"),
        }
        let certified = build_gaps(&plan, &f, 1000).unwrap();
        assert!(matches!(certified.outcome, GapsOutcome::Certified { order: 3840, .. }));
    }

    #[test]
    fn build_rejects_mismatched_f() {
        let (f, _, _) = build_br(&plan_br(4, 5).unwrap()).unwrap();
        let mut input = GapsInput::from_graph(&f, 5, Some(1)).unwrap();
        input.d = vec![8, 5];
        let plan = plan_gaps_relaxed(&input).unwrap();
        assert!(matches!(build_gaps(&plan, &f, 0), Err(FlipError::Precondition(_))));
        let p3 = EdgeColouredGraph::new(3, 2, vec![(0, 1, 1), (1, 2, 2)]).unwrap();
        assert!(build_gaps(&plan, &p3, 0).is_err());
    }
}
