//! Graph builders: coloured Cayley graphs, strong and Cartesian products,
//! Cayley packings and colour-matched complete bipartite graphs.
//!
//! Product vertices are indexed row-major: `(u, v) ↦ u * |V(H)| + v`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{FlipError, Result};
use crate::graph::{Colour, ColourProfile, Edge, EdgeColouredGraph};
use crate::group::{GroupElement, GroupSpec, DEFAULT_ENUMERATION_LIMIT};
use crate::setalg::GroupSubset;

/// Colour classes of a Cayley connecting set.
///
/// Every class is inverse-closed and identity-free, and classes are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredConnectingSet {
    spec: GroupSpec,
    classes: BTreeMap<Colour, GroupSubset>,
}

#[derive(Serialize, Deserialize)]
struct ConnectingSetFile {
    group: GroupSpec,
    classes: BTreeMap<Colour, Vec<Vec<i64>>>,
}

impl Serialize for ColouredConnectingSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ColouredConnectingSet", 2)?;
        st.serialize_field("group", &self.spec)?;
        st.serialize_field("classes", &self.classes)?;
        st.end()
    }
}

impl ColouredConnectingSet {
    pub fn new(spec: &GroupSpec, classes: BTreeMap<Colour, GroupSubset>) -> Result<Self> {
        let identity = spec.identity();
        let mut seen: BTreeMap<&GroupElement, Colour> = BTreeMap::new();
        for (&colour, class) in &classes {
            if colour == 0 {
                return Err(FlipError::InvalidColour { colour, count: Colour::MAX });
            }
            if class.spec() != spec {
                return Err(FlipError::SpecMismatch {
                    left: spec.to_string(),
                    right: class.spec().to_string(),
                });
            }
            if class.contains(&identity) {
                return Err(FlipError::InvalidConnectingSet(format!(
                    "class {colour} contains the identity"
                )));
            }
            if !class.is_inverse_closed() {
                return Err(FlipError::InvalidConnectingSet(format!(
                    "class {colour} is not inverse-closed"
                )));
            }
            for x in class.iter() {
                if let Some(other) = seen.insert(x, colour) {
                    return Err(FlipError::InvalidConnectingSet(format!(
                        "element {x} lies in classes {other} and {colour}"
                    )));
                }
            }
        }
        Ok(Self {
            spec: spec.clone(),
            classes,
        })
    }

    pub fn single(spec: &GroupSpec, colour: Colour, class: GroupSubset) -> Result<Self> {
        Self::new(spec, BTreeMap::from([(colour, class)]))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn classes(&self) -> &BTreeMap<Colour, GroupSubset> {
        &self.classes
    }

    /// Highest colour in use (0 when there are no classes).
    pub fn max_colour(&self) -> Colour {
        self.classes.keys().next_back().copied().unwrap_or(0)
    }

    /// Union of all classes.
    pub fn connecting_set(&self) -> GroupSubset {
        self.classes
            .values()
            .fold(GroupSubset::empty(&self.spec), |acc, c| acc.union(c).expect("same spec"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("connecting set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConnectingSetFile = serde_json::from_str(text)?;
        let classes = file
            .classes
            .into_iter()
            .map(|(c, arrays)| Ok((c, GroupSubset::from_arrays(&file.group, &arrays)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(&file.group, classes)
    }
}

/// `Cay(Γ, S)` with edge `{g, g + s}` coloured by the class of `s`.
///
/// Vertex `i` is the `i`-th element in lexicographic order; the palette is
/// `1..=max_colour`.
pub fn cayley_build(ccs: &ColouredConnectingSet) -> Result<EdgeColouredGraph> {
    cayley_build_with_limit(ccs, DEFAULT_ENUMERATION_LIMIT)
}

pub fn cayley_build_with_limit(ccs: &ColouredConnectingSet, limit: u64) -> Result<EdgeColouredGraph> {
    let spec = &ccs.spec;
    spec.check_order(limit)?;
    let order = spec.order();
    let k = ccs.max_colour().max(1);
    let gens: Vec<(&GroupElement, Colour)> = ccs
        .classes
        .iter()
        .flat_map(|(&c, class)| class.iter().map(move |s| (s, c)))
        .collect();
    let mut edges = Vec::with_capacity(order as usize * gens.len() / 2);
    for g in 0..order {
        let ge = spec.element_at(g);
        for &(s, c) in &gens {
            let h = spec.index_of(&spec.add_unchecked(&ge, s));
            if g < h {
                edges.push(Edge {
                    u: g as usize,
                    v: h as usize,
                    colour: c,
                });
            }
        }
    }
    Ok(EdgeColouredGraph::from_edges_unchecked(order as usize, k, &edges))
}

fn same_palette(g: &EdgeColouredGraph, h: &EdgeColouredGraph) -> Result<Colour> {
    if g.colour_count() != h.colour_count() {
        return Err(FlipError::ColourCountMismatch {
            left: g.colour_count(),
            right: h.colour_count(),
        });
    }
    Ok(g.colour_count())
}

/// Coloured strong product `G ⊠ H`.
///
/// Edges inside an `H`-fibre (`u = u'`) keep their `H` colour; every other
/// edge (`v = v'` or diagonal) takes the colour of `{u, u'}` in `G`.
pub fn strong_product(g: &EdgeColouredGraph, h: &EdgeColouredGraph) -> Result<EdgeColouredGraph> {
    let k = same_palette(g, h)?;
    let nh = h.vertex_count();
    let idx = |u: usize, v: usize| u * nh + v;
    let h_edges: Vec<Edge> = h.edges().collect();
    let mut edges = Vec::new();
    for u in 0..g.vertex_count() {
        for e in &h_edges {
            edges.push(Edge {
                u: idx(u, e.u),
                v: idx(u, e.v),
                colour: e.colour,
            });
        }
    }
    for ge in g.edges() {
        for v in 0..nh {
            edges.push(Edge {
                u: idx(ge.u, v),
                v: idx(ge.v, v),
                colour: ge.colour,
            });
        }
        for he in &h_edges {
            edges.push(Edge {
                u: idx(ge.u, he.u),
                v: idx(ge.v, he.v),
                colour: ge.colour,
            });
            edges.push(Edge {
                u: idx(ge.u, he.v),
                v: idx(ge.v, he.u),
                colour: ge.colour,
            });
        }
    }
    Ok(EdgeColouredGraph::from_edges_unchecked(g.vertex_count() * nh, k, &edges))
}

/// Coloured Cartesian product `G □ H`: fibre edges keep their factor's colour.
pub fn cartesian_product(g: &EdgeColouredGraph, h: &EdgeColouredGraph) -> Result<EdgeColouredGraph> {
    let k = same_palette(g, h)?;
    let nh = h.vertex_count();
    let idx = |u: usize, v: usize| u * nh + v;
    let mut edges = Vec::new();
    let h_edges: Vec<Edge> = h.edges().collect();
    for u in 0..g.vertex_count() {
        for e in &h_edges {
            edges.push(Edge {
                u: idx(u, e.u),
                v: idx(u, e.v),
                colour: e.colour,
            });
        }
    }
    for ge in g.edges() {
        for v in 0..nh {
            edges.push(Edge {
                u: idx(ge.u, v),
                v: idx(ge.v, v),
                colour: ge.colour,
            });
        }
    }
    Ok(EdgeColouredGraph::from_edges_unchecked(g.vertex_count() * nh, k, &edges))
}

/// Profile of `(u, v)` in `G ⊠ H` from the factor profiles at `u` and `v`.
///
/// `deg_j = deg_j^H(v) + deg_j^G(u)(1 + deg^H(v))` and
/// `e_j[(u,v)] = e_j^H[v](1 + deg^G(u)) + e_j^G[u](1 + deg^H(v) + 2 Σ_i e_i^H[v])`.
pub fn strong_product_profile(g: &ColourProfile, h: &ColourProfile) -> ColourProfile {
    let deg_g = g.total_degree();
    let deg_h = h.total_degree();
    let closed_h = h.total_closed();
    ColourProfile {
        deg: h
            .deg
            .iter()
            .zip(&g.deg)
            .map(|(dh, dg)| dh + dg * (1 + deg_h))
            .collect(),
        e_closed: h
            .e_closed
            .iter()
            .zip(&g.e_closed)
            .map(|(eh, eg)| eh * (1 + deg_g) + eg * (1 + deg_h + 2 * closed_h))
            .collect(),
    }
}

/// Profile of `(u, v)` in `G □ H`: both vectors add.
pub fn cartesian_product_profile(g: &ColourProfile, h: &ColourProfile) -> ColourProfile {
    ColourProfile {
        deg: g.deg.iter().zip(&h.deg).map(|(a, b)| a + b).collect(),
        e_closed: g.e_closed.iter().zip(&h.e_closed).map(|(a, b)| a + b).collect(),
    }
}

/// Packing of two coloured Cayley graphs on the same group: the Cayley graph of
/// the merged classes. Fails if any element is used by both inputs.
pub fn pack_cayley(
    spec: &GroupSpec,
    first: &ColouredConnectingSet,
    second: &ColouredConnectingSet,
) -> Result<EdgeColouredGraph> {
    cayley_build(&merge_connecting_sets(spec, first, second)?)
}

pub fn merge_connecting_sets(
    spec: &GroupSpec,
    first: &ColouredConnectingSet,
    second: &ColouredConnectingSet,
) -> Result<ColouredConnectingSet> {
    for ccs in [first, second] {
        if ccs.spec() != spec {
            return Err(FlipError::SpecMismatch {
                left: spec.to_string(),
                right: ccs.spec().to_string(),
            });
        }
    }
    let a = first.connecting_set();
    let b = second.connecting_set();
    if let Some(x) = a.intersection(&b)?.iter().next() {
        return Err(FlipError::InvalidConnectingSet(format!(
            "packing undefined: element {x} is used by both graphs"
        )));
    }
    let mut classes = first.classes.clone();
    for (&c, class) in &second.classes {
        let merged = match classes.get(&c) {
            Some(existing) => existing.union(class)?,
            None => class.clone(),
        };
        classes.insert(c, merged);
    }
    ColouredConnectingSet::new(spec, classes)
}

/// Both sides of the packing identity
/// `e_1[v] - e_2[v] = (e_1^G[v] - e_2^H[v]) + (e_2^H(N^G[v]) - e_1^G(N^H[v]))`
/// for `G = Cay(Γ, B)` in colour 1 and `H = Cay(Γ, R)` in colour 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingDeltaReport {
    pub vertex: GroupElement,
    pub e1_packed: u64,
    pub e2_packed: u64,
    pub e1_g: u64,
    pub e2_h: u64,
    pub e2_h_on_closed_g: u64,
    pub e1_g_on_closed_h: u64,
    pub lhs: i64,
    pub rhs: i64,
    /// `(R + B) ∩ R = ∅`.
    pub sum_avoids_r: bool,
    /// `e_1^G[v] > e_2^H[v]`.
    pub blue_exceeds_red: bool,
}

impl PackingDeltaReport {
    /// Whether the sufficient condition for `e_1[v] > e_2[v]` is met.
    pub fn hypothesis_holds(&self) -> bool {
        self.sum_avoids_r && self.blue_exceeds_red
    }
}

/// [`packing_delta_at`] at the identity.
pub fn packing_delta(spec: &GroupSpec, blue: &GroupSubset, red: &GroupSubset) -> Result<PackingDeltaReport> {
    packing_delta_at(spec, blue, red, &spec.identity())
}

/// Evaluates both sides by direct counting at `vertex`; errors if they differ.
pub fn packing_delta_at(
    spec: &GroupSpec,
    blue: &GroupSubset,
    red: &GroupSubset,
    vertex: &GroupElement,
) -> Result<PackingDeltaReport> {
    spec.check(vertex)?;
    let g_set = ColouredConnectingSet::single(spec, 1, blue.clone())?;
    let h_set = ColouredConnectingSet::single(spec, 2, red.clone())?;
    let packed = cayley_build(&merge_connecting_sets(spec, &g_set, &h_set)?)?;
    // give G and H the same two-colour palette as the packing
    let g = cayley_build(&g_set)?.with_colour_count(2)?;
    let h = cayley_build(&h_set)?.with_colour_count(2)?;

    let v = spec.index_of(vertex) as usize;
    let p = packed.vertex_profile(v)?;
    let pg = g.vertex_profile(v)?;
    let ph = h.vertex_profile(v)?;
    let e2_h_on_closed_g = h.count_coloured_edges(&g.closed_neighbourhood(v)?, 2)?;
    let e1_g_on_closed_h = g.count_coloured_edges(&h.closed_neighbourhood(v)?, 1)?;

    let (e1_packed, e2_packed) = (p.e_closed[0], p.e_closed[1]);
    let (e1_g, e2_h) = (pg.e_closed[0], ph.e_closed[1]);
    let lhs = e1_packed as i64 - e2_packed as i64;
    let rhs = (e1_g as i64 - e2_h as i64) + (e2_h_on_closed_g as i64 - e1_g_on_closed_h as i64);
    if lhs != rhs {
        return Err(FlipError::Verification(format!(
            "packing identity fails at {vertex}: {lhs} != {rhs}"
        )));
    }
    Ok(PackingDeltaReport {
        vertex: vertex.clone(),
        e1_packed,
        e2_packed,
        e1_g,
        e2_h,
        e2_h_on_closed_g,
        e1_g_on_closed_h,
        lhs,
        rhs,
        sum_avoids_r: red.sumset(blue)?.is_disjoint(red)?,
        blue_exceeds_red: e1_g > e2_h,
    })
}

/// Colours for the `ρ` perfect matchings of `K_{ρ,ρ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingColourPlan {
    pub part_size: usize,
    pub colour_count: Colour,
    /// Colour of matching `d`, for `d` in `0..part_size`.
    pub assignments: Vec<Colour>,
}

impl MatchingColourPlan {
    /// `counts` lists `(colour, number of matchings)`; matchings are assigned in order.
    pub fn from_counts(colour_count: Colour, counts: &[(Colour, usize)]) -> Result<Self> {
        let mut assignments = Vec::new();
        for &(c, m) in counts {
            if m == 0 {
                return Err(FlipError::Precondition(format!("colour {c} is assigned no matchings")));
            }
            assignments.extend(std::iter::repeat(c).take(m));
        }
        let part_size = assignments.len();
        Self::from_assignments(colour_count, part_size, assignments)
    }

    pub fn from_assignments(colour_count: Colour, part_size: usize, assignments: Vec<Colour>) -> Result<Self> {
        if part_size == 0 {
            return Err(FlipError::Precondition("part size must be at least 1".into()));
        }
        if assignments.len() != part_size {
            return Err(FlipError::Precondition(format!(
                "{} matching colours given for part size {part_size}",
                assignments.len()
            )));
        }
        if let Some(&c) = assignments.iter().find(|&&c| c == 0 || c > colour_count) {
            return Err(FlipError::InvalidColour { colour: c, count: colour_count });
        }
        Ok(Self {
            part_size,
            colour_count,
            assignments,
        })
    }
}

/// `K_{ρ,ρ}` on parts `0..ρ` and `ρ..2ρ`, split into the matchings
/// `M_d = {(i, ρ + (i + d) mod ρ)}` with `M_d` in colour `assignments[d]`.
pub fn bipartite_matching_graph(plan: &MatchingColourPlan) -> Result<EdgeColouredGraph> {
    let rho = plan.part_size;
    if rho == 0 || plan.assignments.len() != rho {
        return Err(FlipError::Precondition("plan length must equal the part size".into()));
    }
    let mut edges = Vec::with_capacity(rho * rho);
    for (d, &c) in plan.assignments.iter().enumerate() {
        for i in 0..rho {
            edges.push(Edge {
                u: i,
                v: rho + (i + d) % rho,
                colour: c,
            });
        }
    }
    Ok(EdgeColouredGraph::from_edges_unchecked(2 * rho, plan.colour_count, &edges))
}
