//! Edge-coloured simple graphs and the local colour counts
//! `deg_j(v)`, `e_j(S)`, `e_j[v]` and `e_j(v)`.
//!
//! Colours are 1-based; colour 0 is never valid. Vertices are `0..n`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FlipError, Result};

pub type Colour = u16;

/// One undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub colour: Colour,
}

/// Immutable edge-coloured simple graph.
///
/// Adjacency is stored in compressed rows: `neighbours[offsets[v]..offsets[v + 1]]`
/// is sorted ascending and `edge_colours` runs parallel to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouredGraph {
    colours: Colour,
    offsets: Vec<usize>,
    neighbours: Vec<u32>,
    edge_colours: Vec<Colour>,
}

/// Per-colour counts at one vertex. Index `j - 1` holds colour `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexColourProfile {
    pub vertex: usize,
    pub deg: Vec<u64>,
    pub e_closed: Vec<u64>,
    pub e_open: Vec<u64>,
}

/// Vertex-free profile: the degree and closed-neighbourhood vectors only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColourProfile {
    pub deg: Vec<u64>,
    pub e_closed: Vec<u64>,
}

impl ColourProfile {
    pub fn zeros(k: usize) -> Self {
        Self {
            deg: vec![0; k],
            e_closed: vec![0; k],
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.deg.iter().sum()
    }

    pub fn total_closed(&self) -> u64 {
        self.e_closed.iter().sum()
    }
}

impl VertexColourProfile {
    pub fn colour_profile(&self) -> ColourProfile {
        ColourProfile {
            deg: self.deg.clone(),
            e_closed: self.e_closed.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: usize,
    colours: Colour,
    edges: Vec<[u64; 3]>,
}

/// DOT colours by colour index; wraps around for large palettes.
const DOT_PALETTE: [&str; 10] = [
    "blue", "red", "forestgreen", "orange", "purple", "brown", "cyan3", "magenta", "gold3", "gray40",
];

impl EdgeColouredGraph {
    /// Builds a graph from `(u, v, colour)` triples in any orientation and order.
    ///
    /// Rejects loops, out-of-range endpoints or colours, and repeated vertex pairs.
    pub fn new(vertex_count: usize, colours: Colour, edges: Vec<(usize, usize, Colour)>) -> Result<Self> {
        if colours == 0 {
            return Err(FlipError::InvalidGraph("colour count must be at least 1".into()));
        }
        if vertex_count > u32::MAX as usize {
            return Err(FlipError::InvalidGraph("too many vertices".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b, c) in edges {
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(FlipError::InvalidVertex {
                        vertex: x,
                        count: vertex_count,
                    });
                }
            }
            if a == b {
                return Err(FlipError::InvalidGraph(format!("loop at vertex {a}")));
            }
            if c == 0 || c > colours {
                return Err(FlipError::InvalidColour { colour: c, count: colours });
            }
            norm.push(Edge {
                u: a.min(b),
                v: a.max(b),
                colour: c,
            });
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(FlipError::InvalidGraph(format!(
                "parallel edges between {} and {}",
                w[0].u, w[0].v
            )));
        }
        Ok(Self::from_edges_unchecked(vertex_count, colours, &norm))
    }

    /// `edges` must already be valid and free of repeated pairs.
    pub(crate) fn from_edges_unchecked(vertex_count: usize, colours: Colour, edges: &[Edge]) -> Self {
        let mut offsets = vec![0usize; vertex_count + 1];
        for e in edges {
            offsets[e.u + 1] += 1;
            offsets[e.v + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut neighbours = vec![0u32; 2 * edges.len()];
        let mut edge_colours = vec![0 as Colour; 2 * edges.len()];
        for e in edges {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                neighbours[fill[a]] = b as u32;
                edge_colours[fill[a]] = e.colour;
                fill[a] += 1;
            }
        }
        for v in 0..vertex_count {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            let mut row: Vec<(u32, Colour)> = neighbours[lo..hi]
                .iter()
                .copied()
                .zip(edge_colours[lo..hi].iter().copied())
                .collect();
            row.sort_unstable();
            for (i, (w, c)) in row.into_iter().enumerate() {
                neighbours[lo + i] = w;
                edge_colours[lo + i] = c;
            }
        }
        Self {
            colours,
            offsets,
            neighbours,
            edge_colours,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn colour_count(&self) -> Colour {
        self.colours
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.len() / 2
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(FlipError::InvalidVertex {
                vertex: v,
                count: self.vertex_count(),
            });
        }
        Ok(())
    }

    fn check_colour(&self, c: Colour) -> Result<()> {
        if c == 0 || c > self.colours {
            return Err(FlipError::InvalidColour {
                colour: c,
                count: self.colours,
            });
        }
        Ok(())
    }

    /// Sorted neighbours of `v` and the colours of the connecting edges.
    pub fn adjacency(&self, v: usize) -> (&[u32], &[Colour]) {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        (&self.neighbours[lo..hi], &self.edge_colours[lo..hi])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn edge_colour(&self, u: usize, v: usize) -> Option<Colour> {
        if u >= self.vertex_count() || v >= self.vertex_count() {
            return None;
        }
        let (ns, cs) = self.adjacency(u);
        ns.binary_search(&(v as u32)).ok().map(|i| cs[i])
    }

    /// All edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            let (ns, cs) = self.adjacency(u);
            ns.iter()
                .zip(cs)
                .filter(move |(&w, _)| w as usize > u)
                .map(move |(&w, &c)| Edge {
                    u,
                    v: w as usize,
                    colour: c,
                })
        })
    }

    /// `N[v] = N(v) ∪ {v}`, sorted.
    pub fn closed_neighbourhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let mut out: Vec<usize> = self.adjacency(v).0.iter().map(|&w| w as usize).collect();
        let pos = out.partition_point(|&w| w < v);
        out.insert(pos, v);
        Ok(out)
    }

    /// `e_j(S)`: edges of colour `j` in the subgraph induced by `S`.
    pub fn count_coloured_edges(&self, set: &[usize], colour: Colour) -> Result<u64> {
        self.check_colour(colour)?;
        let mut members = set.to_vec();
        for &v in &members {
            self.check_vertex(v)?;
        }
        members.sort_unstable();
        members.dedup();
        let mut count = 0;
        for &u in &members {
            let (ns, cs) = self.adjacency(u);
            for (&w, &c) in ns.iter().zip(cs) {
                if c == colour && w as usize > u && members.binary_search(&(w as usize)).is_ok() {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Exact `deg_j(v)`, `e_j[v]` and `e_j(v)` for every colour.
    pub fn vertex_profile(&self, v: usize) -> Result<VertexColourProfile> {
        self.check_vertex(v)?;
        Ok(self.profile_unchecked(v))
    }

    fn profile_unchecked(&self, v: usize) -> VertexColourProfile {
        let k = self.colours as usize;
        let mut deg = vec![0u64; k];
        let mut e_open = vec![0u64; k];
        let (nv, cv) = self.adjacency(v);
        for &c in cv {
            deg[c as usize - 1] += 1;
        }
        for (i, &u) in nv.iter().enumerate() {
            // only w > u, and every such w in N(v) sits after u in `nv`
            let rest = &nv[i + 1..];
            let (nu, cu) = self.adjacency(u as usize);
            let start = nu.partition_point(|&w| w <= u);
            let (mut a, mut b) = (start, 0);
            while a < nu.len() && b < rest.len() {
                match nu[a].cmp(&rest[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        e_open[cu[a] as usize - 1] += 1;
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
        let e_closed = deg.iter().zip(&e_open).map(|(d, e)| d + e).collect();
        VertexColourProfile {
            vertex: v,
            deg,
            e_closed,
            e_open,
        }
    }

    /// Profiles of every vertex, computed in parallel, in vertex order.
    pub fn profiles(&self) -> Vec<VertexColourProfile> {
        (0..self.vertex_count())
            .into_par_iter()
            .map(|v| self.profile_unchecked(v))
            .collect()
    }

    /// The common profile when every vertex has the same one.
    pub fn uniform_profile(&self) -> Option<ColourProfile> {
        let profiles = self.profiles();
        let first = profiles.first()?.colour_profile();
        profiles
            .iter()
            .all(|p| p.deg == first.deg && p.e_closed == first.e_closed)
            .then_some(first)
    }

    /// `deg_j(v) = a_j` for every vertex and colour.
    pub fn is_colour_regular(&self, a: &[u64]) -> Result<bool> {
        if a.len() != self.colours as usize {
            return Err(FlipError::Precondition(format!(
                "expected {} degrees, got {}",
                self.colours,
                a.len()
            )));
        }
        Ok((0..self.vertex_count()).all(|v| {
            let mut deg = vec![0u64; a.len()];
            for &c in self.adjacency(v).1 {
                deg[c as usize - 1] += 1;
            }
            deg == a
        }))
    }

    /// The same graph drawn on the palette `1..=k` for a larger `k`.
    pub fn with_colour_count(&self, k: Colour) -> Result<Self> {
        if k < self.colours {
            return Err(FlipError::Precondition(format!(
                "cannot shrink palette from {} to {k}",
                self.colours
            )));
        }
        let mut g = self.clone();
        g.colours = k;
        Ok(g)
    }

    /// Isomorphic copy in which vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(FlipError::Precondition("relabelling is not a permutation".into()));
        }
        let edges = self.edges().map(|e| (perm[e.u], perm[e.v], e.colour)).collect();
        Self::new(n, self.colours, edges)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            vertices: self.vertex_count(),
            colours: self.colours,
            edges: self
                .edges()
                .map(|e| [e.u as u64, e.v as u64, e.colour as u64])
                .collect(),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let mut edges = Vec::with_capacity(file.edges.len());
        for [u, v, c] in file.edges {
            if u >= v {
                return Err(FlipError::Parse(format!("edge [{u}, {v}, {c}] must have u < v")));
            }
            let c = Colour::try_from(c).map_err(|_| FlipError::Parse(format!("colour {c} too large")))?;
            edges.push((u as usize, v as usize, c));
        }
        Self::new(file.vertices, file.colours, edges)
    }

    /// Graphviz rendering; one edge per line, colour index repeated as the label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            writeln!(out, "  {v};").unwrap();
        }
        for e in self.edges() {
            let colour = DOT_PALETTE[(e.colour as usize - 1) % DOT_PALETTE.len()];
            writeln!(out, "  {} -- {} [color=\"{colour}\", label=\"{}\"];", e.u, e.v, e.colour).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
