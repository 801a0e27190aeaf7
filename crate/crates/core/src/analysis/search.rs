//! Largest subsets that are both sum-free and inverse-closed.
//!
//! The search runs over atoms `{x, -x}` (a single element for involutions), so
//! every candidate is inverse-closed by construction.

use serde::Serialize;

use crate::error::{FlipError, Result};
use crate::group::{GroupSpec, DEFAULT_ENUMERATION_LIMIT};
use crate::setalg::GroupSubset;

/// Largest group order accepted by the exhaustive mode.
pub const EXHAUSTIVE_ORDER_LIMIT: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub subset: GroupSubset,
    pub size: usize,
    /// False when a greedy run stopped on its budget.
    pub complete: bool,
    pub nodes: u64,
}

fn atoms(spec: &GroupSpec) -> Vec<Vec<usize>> {
    let mut seen = vec![false; spec.order() as usize];
    seen[0] = true;
    let mut out = Vec::new();
    for i in 1..spec.order() as usize {
        if seen[i] {
            continue;
        }
        let x = spec.element_at(i as u64);
        let j = spec.index_of(&spec.neg_unchecked(&x)) as usize;
        seen[i] = true;
        seen[j] = true;
        out.push(if i == j { vec![i] } else { vec![i, j] });
    }
    out
}

fn subset_of(spec: &GroupSpec, members: impl IntoIterator<Item = usize>) -> GroupSubset {
    let set = members.into_iter().map(|i| spec.element_at(i as u64)).collect();
    GroupSubset::from_set_unchecked(spec, set)
}

/// `budget` caps the number of search nodes (atoms examined, for greedy).
pub fn search_sumfree_inverse_closed(spec: &GroupSpec, mode: SearchMode, budget: u64) -> Result<SearchOutcome> {
    match mode {
        SearchMode::Exhaustive => exhaustive(spec, budget),
        SearchMode::Greedy => greedy(spec, budget),
    }
}

struct Exhaustive<'a> {
    sums: &'a [Vec<usize>],
    atom_masks: Vec<u32>,
    atom_sizes: Vec<usize>,
    suffix_sizes: Vec<usize>,
    best: (usize, u32),
    nodes: u64,
    budget: u64,
}

impl Exhaustive<'_> {
    fn sum_free(&self, mask: u32) -> bool {
        let members: Vec<usize> = (0..32).filter(|i| mask >> i & 1 == 1).collect();
        for (p, &a) in members.iter().enumerate() {
            for &b in &members[p..] {
                if mask >> self.sums[a][b] & 1 == 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Include-first depth-first search; returns false once the budget is spent.
    fn run(&mut self, i: usize, mask: u32, size: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if size > self.best.0 {
            self.best = (size, mask);
        }
        if i == self.atom_masks.len() || size + self.suffix_sizes[i] <= self.best.0 {
            return true;
        }
        let with = mask | self.atom_masks[i];
        if self.sum_free(with) && !self.run(i + 1, with, size + self.atom_sizes[i]) {
            return false;
        }
        self.run(i + 1, mask, size)
    }
}

fn exhaustive(spec: &GroupSpec, budget: u64) -> Result<SearchOutcome> {
    if spec.order() > EXHAUSTIVE_ORDER_LIMIT {
        return Err(FlipError::Precondition(format!(
            "exhaustive search needs group order ≤ {EXHAUSTIVE_ORDER_LIMIT}, got {}",
            spec.order()
        )));
    }
    let n = spec.order() as usize;
    let elems = spec.enumerate()?;
    let sums: Vec<Vec<usize>> = elems
        .iter()
        .map(|x| elems.iter().map(|y| spec.index_of(&spec.add_unchecked(x, y)) as usize).collect())
        .collect();
    debug_assert_eq!(sums.len(), n);
    let atoms = atoms(spec);
    let atom_masks: Vec<u32> = atoms.iter().map(|a| a.iter().fold(0, |m, &i| m | 1 << i)).collect();
    let atom_sizes: Vec<usize> = atoms.iter().map(Vec::len).collect();
    let mut suffix_sizes = vec![0; atoms.len() + 1];
    for i in (0..atoms.len()).rev() {
        suffix_sizes[i] = suffix_sizes[i + 1] + atom_sizes[i];
    }
    let mut search = Exhaustive {
        sums: &sums,
        atom_masks,
        atom_sizes,
        suffix_sizes,
        best: (0, 0),
        nodes: 0,
        budget,
    };
    if !search.run(0, 0, 0) {
        return Err(FlipError::BudgetExceeded {
            budget,
            best: search.best.0,
        });
    }
    let (size, mask) = search.best;
    Ok(SearchOutcome {
        subset: subset_of(spec, (0..n).filter(|i| mask >> i & 1 == 1)),
        size,
        complete: true,
        nodes: search.nodes,
    })
}

/// Adds atoms in lexicographic order whenever the set stays sum-free.
fn greedy(spec: &GroupSpec, budget: u64) -> Result<SearchOutcome> {
    spec.check_order(DEFAULT_ENUMERATION_LIMIT)?;
    let n = spec.order() as usize;
    let elems = spec.enumerate()?;
    let mut in_chosen = vec![false; n];
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes = 0;
    let mut complete = true;
    let add = |a: usize, b: usize| spec.index_of(&spec.add_unchecked(&elems[a], &elems[b])) as usize;
    let sub = |a: usize, b: usize| {
        spec.index_of(&spec.add_unchecked(&elems[a], &spec.neg_unchecked(&elems[b]))) as usize
    };
    for atom in atoms(spec) {
        if nodes == budget {
            complete = false;
            break;
        }
        nodes += 1;
        let in_new = |i: usize| in_chosen[i] || atom.contains(&i);
        // chosen is already sum-free, so only sums touching the atom, or
        // sums of chosen elements landing in the atom, can collide
        let ok = atom.iter().all(|&x| {
            chosen.iter().chain(&atom).all(|&s| !in_new(add(x, s)))
                && chosen.iter().all(|&s| !in_chosen[sub(x, s)])
        });
        if ok {
            for &x in &atom {
                in_chosen[x] = true;
            }
            chosen.extend(&atom);
        }
    }
    Ok(SearchOutcome {
        size: chosen.len(),
        subset: subset_of(spec, chosen),
        complete,
        nodes,
    })
}
