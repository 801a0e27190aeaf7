//! Re-colouring by merging colour classes.

use crate::error::{FlipError, Result};
use crate::graph::{Colour, Edge, EdgeColouredGraph};

/// Recolours each edge with the (1-based) index of the part containing its
/// colour, then checks at every vertex that merged degrees and closed counts
/// are the sums over each part.
pub fn colour_merge(g: &EdgeColouredGraph, partition: &[Vec<Colour>]) -> Result<EdgeColouredGraph> {
    let k = g.colour_count();
    let mut part_of = vec![0 as Colour; k as usize + 1];
    for (p, part) in partition.iter().enumerate() {
        if part.is_empty() {
            return Err(FlipError::Precondition(format!("part {} is empty", p + 1)));
        }
        for &c in part {
            if c == 0 || c > k {
                return Err(FlipError::InvalidColour { colour: c, count: k });
            }
            if part_of[c as usize] != 0 {
                return Err(FlipError::Precondition(format!("colour {c} appears in two parts")));
            }
            part_of[c as usize] = (p + 1) as Colour;
        }
    }
    if let Some(c) = (1..=k).find(|&c| part_of[c as usize] == 0) {
        return Err(FlipError::Precondition(format!("colour {c} is in no part")));
    }

    let edges: Vec<Edge> = g
        .edges()
        .map(|e| Edge {
            colour: part_of[e.colour as usize],
            ..e
        })
        .collect();
    let merged = EdgeColouredGraph::from_edges_unchecked(g.vertex_count(), partition.len() as Colour, &edges);

    let before = g.profiles();
    let after = merged.profiles();
    for (old, new) in before.iter().zip(&after) {
        for (p, part) in partition.iter().enumerate() {
            let deg: u64 = part.iter().map(|&c| old.deg[c as usize - 1]).sum();
            let e: u64 = part.iter().map(|&c| old.e_closed[c as usize - 1]).sum();
            if new.deg[p] != deg || new.e_closed[p] != e {
                return Err(FlipError::Verification(format!(
                    "merged profile at vertex {} is not additive for part {}",
                    old.vertex,
                    p + 1
                )));
            }
        }
    }
    Ok(merged)
}
