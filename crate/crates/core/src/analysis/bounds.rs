//! Upper bounds on the order of `(b, r)`-flip graphs and bounds on `q(k)`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{FlipError, Result};

fn floor_sixth(b: u64) -> u64 {
    (b + 2) / 6
}

/// `4 ≤ b < r < b + 2⌊(b+2)/6⌋²`, reporting the first inequality that fails.
pub fn check_br_range(b: u64, r: u64) -> Result<()> {
    if b < 4 {
        return Err(FlipError::Range(format!("b ≥ 4 required (got b = {b})")));
    }
    if b >= r {
        return Err(FlipError::Range(format!("b < r required (got b = {b}, r = {r})")));
    }
    let f = floor_sixth(b);
    let cap = b + 2 * f * f;
    if r >= cap {
        return Err(FlipError::Range(format!(
            "r < b + 2⌊(b+2)/6⌋² = {cap} required (got r = {r})"
        )));
    }
    Ok(())
}

/// `3 ≤ b < r ≤ C(b+1, 2) - 1`.
pub fn check_old_range(b: u64, r: u64) -> Result<()> {
    if b < 3 {
        return Err(FlipError::Range(format!("b ≥ 3 required (got b = {b})")));
    }
    if b >= r {
        return Err(FlipError::Range(format!("b < r required (got b = {b}, r = {r})")));
    }
    let cap = (b + 1) * b / 2 - 1;
    if r > cap {
        return Err(FlipError::Range(format!("r ≤ C(b+1,2) - 1 = {cap} required (got r = {r})")));
    }
    Ok(())
}

/// `max{1, (b mod 2) + (r mod 2)}`.
pub fn lambda(b: u64, r: u64) -> u64 {
    ((b % 2) + (r % 2)).max(1)
}

/// The older bound `2(r + b + 1 - s) s` with `s = ⌊(5 + √(1 + 8(r - b))) / 2⌋`.
pub fn old_bound(b: u64, r: u64) -> Result<u64> {
    check_old_range(b, r)?;
    // ⌊(5 + x)/2⌋ = ⌊(5 + ⌊x⌋)/2⌋ for real x ≥ 0
    let s = (5 + (1 + 8 * (r - b)).isqrt()) / 2;
    Ok(2 * (r + b + 1 - s) * s)
}

/// `8 λ_{b,r} (2 + ⌊r/2⌋ + ⌊(b+2)/2⌋ - 2⌊(b+2)/6⌋)`: the order of the
/// Cayley graph built for `(b, r)`.
pub fn new_bound(b: u64, r: u64) -> Result<u64> {
    check_br_range(b, r)?;
    Ok(8 * lambda(b, r) * (2 + r / 2 + (b + 2) / 2 - 2 * floor_sixth(b)))
}

/// How to read the lower bound on `q(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QkLowerRule {
    /// `max{1, ⌈k/4⌉ - 1}`.
    #[default]
    Max,
    /// `min{1, ⌈k/4⌉ - 1}`, the literal reading of the stated bound.
    LiteralMin,
}

/// `(lower, upper_exclusive)` with `lower ≤ q(k) < upper_exclusive`.
pub fn qk_bounds(k: u64, rule: QkLowerRule) -> Result<(u64, u64)> {
    if k < 4 {
        return Err(FlipError::Range(format!("k ≥ 4 required (got k = {k})")));
    }
    let quarter = k.div_ceil(4) - 1;
    let lower = match rule {
        QkLowerRule::Max => quarter.max(1),
        QkLowerRule::LiteralMin => quarter.min(1),
    };
    let upper = if k % 3 == 0 { k / 3 } else { k.div_ceil(2) };
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub b: u64,
    pub r: u64,
    pub old_bound: Option<u64>,
    pub new_bound: Option<u64>,
    pub admissible_old: bool,
    pub admissible_new: bool,
}

/// Which `r` values get a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RangePolicy {
    /// `r` admissible for at least one bound.
    #[default]
    Union,
    /// `r` admissible for both bounds.
    Common,
}

pub fn bounds_table(b_values: &[u64], policy: RangePolicy) -> Vec<BoundRow> {
    let mut rows = Vec::new();
    for &b in b_values {
        let old_top = if b >= 3 { (b + 1) * b / 2 - 1 } else { 0 };
        let new_top = if b >= 4 { b + 2 * floor_sixth(b).pow(2) } else { 0 };
        for r in b + 1..=old_top.max(new_top) {
            let old = old_bound(b, r).ok();
            let new = new_bound(b, r).ok();
            let keep = match policy {
                RangePolicy::Union => old.is_some() || new.is_some(),
                RangePolicy::Common => old.is_some() && new.is_some(),
            };
            if keep {
                rows.push(BoundRow {
                    b,
                    r,
                    old_bound: old,
                    new_bound: new,
                    admissible_old: old.is_some(),
                    admissible_new: new.is_some(),
                });
            }
        }
    }
    rows
}

/// CSV with header `b,r,old_bound,new_bound`; inadmissible cells are empty.
pub fn bounds_csv(rows: &[BoundRow]) -> String {
    let mut out = String::from("b,r,old_bound,new_bound\n");
    let cell = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
    for row in rows {
        writeln!(out, "{},{},{},{}", row.b, row.r, cell(row.old_bound), cell(row.new_bound)).unwrap();
    }
    out
}
