//! Finite Abelian groups `Z_{n_1} x ... x Z_{n_m}` with residue-tuple elements.
//!
//! Text syntax: `z:40` is `Z_40`, `z2xz:28` is `Z_2 x Z_28` and `z:a,b,c` is the
//! general direct product. Elements serialize as integer arrays.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FlipError, Result};

/// Default cap on how many elements [`GroupSpec::enumerate`] will materialize.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<u64>,
    order: u64,
}

/// A group element, always stored reduced modulo its factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.0.as_slice() {
            return write!(f, "{x}");
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(FlipError::InvalidGroup("at least one factor required".into()));
        }
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(FlipError::InvalidGroup(format!("factor {bad} is below 2")));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| FlipError::InvalidGroup("group order overflows u64".into()))?;
        Ok(Self { factors, order })
    }

    /// `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The modulus when the group is a single cyclic factor.
    pub fn cyclic_modulus(&self) -> Option<u64> {
        match self.factors.as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Builds an element from arbitrary integers, reducing each into `[0, n_i)`.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| x.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    /// Builds an element from non-negative residues, reducing on entry.
    pub fn element_u(&self, residues: &[u64]) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        Ok(GroupElement(
            residues.iter().zip(&self.factors).map(|(&x, &n)| x % n).collect(),
        ))
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.rank() {
            return Err(FlipError::DimensionMismatch {
                expected: self.rank(),
                found,
            });
        }
        Ok(())
    }

    /// Verifies that `x` has the right shape and reduced residues.
    pub fn check(&self, x: &GroupElement) -> Result<()> {
        self.check_len(x.0.len())?;
        if x.0.iter().zip(&self.factors).any(|(&r, &n)| r >= n) {
            return Err(FlipError::InvalidGroup(format!("element {x} is not reduced for {self}")));
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.factors)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(self.neg_unchecked(x))
    }

    pub(crate) fn neg_unchecked(&self, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.factors)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        )
    }

    /// True iff `x` is not the identity and `x + x` is.
    pub fn is_involution(&self, x: &GroupElement) -> bool {
        x.0.iter().any(|&a| a != 0)
            && x.0.iter().zip(&self.factors).all(|(&a, &n)| (2 * a) % n == 0)
    }

    /// Lexicographic position of `x` among all elements; the identity is 0.
    pub fn index_of(&self, x: &GroupElement) -> u64 {
        x.0.iter().zip(&self.factors).fold(0, |acc, (&a, &n)| acc * n + a)
    }

    /// Inverse of [`GroupSpec::index_of`]. `index` must be below the group order.
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut residues = vec![0; self.rank()];
        for (slot, &n) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement(residues)
    }

    /// All elements in lexicographic order, identity first.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        self.enumerate_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn enumerate_with_limit(&self, limit: u64) -> Result<Vec<GroupElement>> {
        self.check_order(limit)?;
        Ok((0..self.order).map(|i| self.element_at(i)).collect())
    }

    pub fn check_order(&self, limit: u64) -> Result<()> {
        if self.order > limit {
            return Err(FlipError::OrderLimit {
                order: self.order,
                limit,
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factors.as_slice() {
            [2, n] => write!(f, "z2xz:{n}"),
            fs => {
                write!(f, "z:")?;
                for (i, n) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{n}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = FlipError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_list = |body: &str| -> Result<Vec<u64>> {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| FlipError::InvalidGroup(format!("bad factor {t:?} in {s:?}")))
                })
                .collect()
        };
        if let Some(body) = s.strip_prefix("z2xz:") {
            let n = body
                .trim()
                .parse::<u64>()
                .map_err(|_| FlipError::InvalidGroup(format!("bad modulus in {s:?}")))?;
            return Self::new(vec![2, n]);
        }
        if let Some(body) = s.strip_prefix("z:") {
            return Self::new(parse_list(body)?);
        }
        Err(FlipError::InvalidGroup(format!(
            "{s:?}: expected `z:n`, `z2xz:n` or `z:a,b,...`"
        )))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
