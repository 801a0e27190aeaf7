//! Subset algebra over a [`GroupSpec`]: sumsets, inverses, sum-free and
//! inverse-closed predicates, residue intervals and the interval sumset checker.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::error::{FlipError, Result};
use crate::group::{GroupElement, GroupSpec};

/// A finite set of elements of one group. Iteration order is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSubset {
    spec: GroupSpec,
    elements: BTreeSet<GroupElement>,
}

impl Serialize for GroupSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements.iter())
    }
}

impl GroupSubset {
    pub fn empty(spec: &GroupSpec) -> Self {
        Self {
            spec: spec.clone(),
            elements: BTreeSet::new(),
        }
    }

    pub fn from_elements<I>(spec: &GroupSpec, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = GroupElement>,
    {
        let mut set = BTreeSet::new();
        for x in elements {
            spec.check(&x)?;
            set.insert(x);
        }
        Ok(Self {
            spec: spec.clone(),
            elements: set,
        })
    }

    /// Residue arrays, reduced on entry.
    pub fn from_arrays(spec: &GroupSpec, arrays: &[Vec<i64>]) -> Result<Self> {
        let elems = arrays
            .iter()
            .map(|a| spec.element(a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(spec, elems)
    }

    /// Convenience for cyclic groups: one residue per element.
    pub fn from_residues(spec: &GroupSpec, residues: &[i64]) -> Result<Self> {
        if spec.cyclic_modulus().is_none() {
            return Err(FlipError::NotCyclic(spec.to_string()));
        }
        let elems = residues
            .iter()
            .map(|&x| spec.element(&[x]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(spec, elems)
    }

    pub(crate) fn from_set_unchecked(spec: &GroupSpec, elements: BTreeSet<GroupElement>) -> Self {
        Self {
            spec: spec.clone(),
            elements,
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter()
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.elements
    }

    /// Residues of a cyclic-group subset, ascending.
    pub fn residues(&self) -> Vec<u64> {
        self.elements.iter().map(|x| x.residues()[0]).collect()
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(FlipError::SpecMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        Ok(Self::from_set_unchecked(
            &self.spec,
            self.elements.union(&other.elements).cloned().collect(),
        ))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        Ok(Self::from_set_unchecked(
            &self.spec,
            self.elements.intersection(&other.elements).cloned().collect(),
        ))
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool> {
        self.same_spec(other)?;
        Ok(self.elements.is_disjoint(&other.elements))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_spec(other)?;
        Ok(self.elements.is_subset(&other.elements))
    }

    pub fn insert(&mut self, x: GroupElement) -> Result<bool> {
        self.spec.check(&x)?;
        Ok(self.elements.insert(x))
    }

    /// `{a + b : a in self, b in other}`.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let mut out = BTreeSet::new();
        for a in &self.elements {
            for b in &other.elements {
                out.insert(self.spec.add_unchecked(a, b));
            }
        }
        Ok(Self::from_set_unchecked(&self.spec, out))
    }

    /// `2A = A + A`.
    pub fn doubled(&self) -> Self {
        self.sumset(self).expect("same spec")
    }

    /// `{-a : a in self}`.
    pub fn inverses(&self) -> Self {
        Self::from_set_unchecked(
            &self.spec,
            self.elements.iter().map(|x| self.spec.neg_unchecked(x)).collect(),
        )
    }

    /// `2A ∩ A = ∅`; `a + a` counts.
    pub fn is_sum_free(&self) -> bool {
        for (i, a) in self.elements.iter().enumerate() {
            for b in self.elements.iter().skip(i) {
                if self.elements.contains(&self.spec.add_unchecked(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|x| self.elements.contains(&self.spec.neg_unchecked(x)))
    }

    /// `A < B` in `Z_n`: every residue of `A` lies strictly below every residue of `B`.
    pub fn set_less(&self, other: &Self) -> Result<bool> {
        self.same_spec(other)?;
        if self.spec.cyclic_modulus().is_none() {
            return Err(FlipError::NotCyclic(self.spec.to_string()));
        }
        Ok(match (self.elements.last(), other.elements.first()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        })
    }

    pub fn min_residue(&self) -> Option<u64> {
        self.elements.first().map(|x| x.residues()[0])
    }

    pub fn max_residue(&self) -> Option<u64> {
        self.elements.last().map(|x| x.residues()[0])
    }

    /// Embeds a subset of `Z_n` into `Z_2 x Z_n` as `{fixed} x A`.
    pub fn lift_into(&self, target: &GroupSpec, fixed: u64) -> Result<Self> {
        let elems = self
            .elements
            .iter()
            .map(|x| target.element_u(&[fixed, x.residues()[0]]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(target, elems)
    }
}

/// The residues `lo..=hi` of `Z_n`; never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueInterval {
    pub n: u64,
    pub lo: u64,
    pub hi: u64,
}

impl ResidueInterval {
    pub fn new(n: u64, lo: u64, hi: u64) -> Result<Self> {
        if !(lo <= hi && hi < n) {
            return Err(FlipError::Precondition(format!(
                "interval [{lo}, {hi}] is not a non-empty interval of Z_{n}"
            )));
        }
        Ok(Self { n, lo, hi })
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True iff every residue is strictly between `n/8` and `n/4`.
    pub fn inside_eighth_to_quarter(&self) -> bool {
        8 * self.lo > self.n && 4 * self.hi < self.n
    }

    pub fn elements(&self) -> GroupSubset {
        let spec = GroupSpec::cyclic(self.n).expect("modulus validated by constructor");
        let set = (self.lo..=self.hi).map(|x| spec.element_at(x)).collect();
        GroupSubset::from_set_unchecked(&spec, set)
    }
}

/// Outcome of evaluating the interval sumset claims directly.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalSumReport {
    pub n: u64,
    /// `A0 ∪ A0⁻¹`.
    pub a: GroupSubset,
    /// `B0 ∪ B0⁻¹ ∪ 2B1 ∪ 2B1⁻¹`.
    pub b: GroupSubset,
    /// `(A + B) ∩ A = ∅`.
    pub sum_avoids_a: bool,
    /// `(A + {n/2}) ∩ A = ∅`, present only for even `n`.
    pub half_shift_avoids_a: Option<bool>,
    /// Whether `min(B1) ≥ 3n/16` holds, gating the last conclusion.
    pub b1_hypothesis_met: bool,
    /// `({n/2} + B) ∩ A = ∅`, present only when `n` is even and the hypothesis holds.
    pub half_plus_b_avoids_a: Option<bool>,
}

impl IntervalSumReport {
    /// Every conclusion that should follow from the given hypotheses holds.
    pub fn all_hold(&self) -> bool {
        self.sum_avoids_a
            && self.half_shift_avoids_a.unwrap_or(true)
            && self.half_plus_b_avoids_a.unwrap_or(true)
    }
}

/// Builds `A` and `B` from the three intervals and checks each disjointness
/// conclusion by evaluating the sumsets.
pub fn interval_sum_check(
    n: u64,
    a0: &ResidueInterval,
    b0: &ResidueInterval,
    b1: &ResidueInterval,
) -> Result<IntervalSumReport> {
    for (name, iv) in [("A0", a0), ("B0", b0), ("B1", b1)] {
        if iv.n != n {
            return Err(FlipError::Precondition(format!(
                "{name} lives in Z_{} not Z_{n}",
                iv.n
            )));
        }
    }
    for (name, iv) in [("A0", a0), ("B0", b0)] {
        if !iv.inside_eighth_to_quarter() {
            return Err(FlipError::Precondition(format!(
                "{name} = [{}, {}] is not inside the open interval (n/8, n/4)",
                iv.lo, iv.hi
            )));
        }
    }
    if a0.hi >= b0.lo {
        return Err(FlipError::Precondition(
            "A0 < B0 required (which also makes them disjoint)".into(),
        ));
    }
    if !b0.contains_interval(b1) {
        return Err(FlipError::Precondition("B1 ⊆ B0 required".into()));
    }

    let a0s = a0.elements();
    let a = a0s.union(&a0s.inverses())?;
    let b0s = b0.elements();
    let two_b1 = b1.elements().doubled();
    let b = b0s
        .union(&b0s.inverses())?
        .union(&two_b1)?
        .union(&two_b1.inverses())?;

    let sum_avoids_a = a.sumset(&b)?.is_disjoint(&a)?;
    let b1_hypothesis_met = 16 * b1.lo >= 3 * n;
    let (half_shift_avoids_a, half_plus_b_avoids_a) = if n % 2 == 0 {
        let half = GroupSubset::from_residues(a.spec(), &[(n / 2) as i64])?;
        let shift = a.sumset(&half)?.is_disjoint(&a)?;
        let plus_b = b1_hypothesis_met
            .then(|| half.sumset(&b).and_then(|s| s.is_disjoint(&a)))
            .transpose()?;
        (Some(shift), plus_b)
    } else {
        (None, None)
    };

    Ok(IntervalSumReport {
        n,
        a,
        b,
        sum_avoids_a,
        half_shift_avoids_a,
        b1_hypothesis_met,
        half_plus_b_avoids_a,
    })
}
