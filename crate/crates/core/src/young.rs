//! Integer partitions, Young diagrams, standard Young tableaux and rim hooks.
//!
//! Diagram cells are addressed `(row, column)`, both 0-based, in English
//! notation: row 0 is the longest row and is drawn on top.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest weight accepted by [`enumerate_syt`].
pub const DEFAULT_SYT_MAX_WEIGHT: usize = 12;

/// A weakly decreasing sequence of positive parts. The empty partition is the partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// The hook `(n - k + 1, 1^(k-1))` with arm `n - k + 1` and `k` rows, for `1 <= k <= n`.
    pub fn hook(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidPartition(format!(
                "hook with {k} rows does not exist for weight {n}"
            )));
        }
        let mut parts = vec![n - k + 1];
        parts.extend(std::iter::repeat_n(1, k - 1));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, 0 past the last row.
    pub fn row_len(&self, row: usize) -> usize {
        self.parts.get(row).copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        col < self.row_len(row)
    }

    /// The conjugate partition (diagram reflected in its main diagonal).
    pub fn transpose(&self) -> Self {
        let cols = self.row_len(0);
        let parts = (0..cols)
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Self { parts }
    }

    /// All parts after the first equal 1. Errors on the empty partition.
    pub fn is_hook(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::InvalidPartition(
                "hook shape is undefined for the empty partition".into(),
            ));
        }
        Ok(self.parts[1..].iter().all(|&p| p == 1))
    }

    /// True iff the diagram contains a 2×2 block of cells.
    pub fn has_square(&self) -> bool {
        self.row_len(1) >= 2
    }

    /// Hook length of a cell: arm + leg + 1.
    pub fn hook_length(&self, row: usize, col: usize) -> usize {
        debug_assert!(self.contains_cell(row, col));
        let arm = self.parts[row] - col - 1;
        let leg = self.parts[row + 1..]
            .iter()
            .take_while(|&&p| p > col)
            .count();
        arm + leg + 1
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Multiplicity of each part size, indexed by size (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.row_len(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Drops the first (largest) part.
    pub fn without_largest(&self) -> Self {
        Self {
            parts: self
                .parts
                .get(1..)
                .map(<[usize]>::to_vec)
                .unwrap_or_default(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-separated parts, e.g. `4,1,1`. Surrounding parentheses are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if trimmed.is_empty() {
            return Ok(Self::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `lam`, by the hook-length formula.
pub fn syt_count(lam: &Partition) -> BigUint {
    let numerator: BigUint = (1..=lam.weight()).map(BigUint::from).product();
    let denominator: BigUint = lam
        .cells()
        .map(|(r, c)| BigUint::from(lam.hook_length(r, c)))
        .product();
    numerator / denominator
}

/// A standard Young tableau, stored row by row.
pub type Tableau = Vec<Vec<usize>>;

/// Every standard Young tableau of shape `lam`. Exponential; meant as a small-scale check.
pub fn enumerate_syt(lam: &Partition) -> Result<Vec<Tableau>> {
    enumerate_syt_capped(lam, DEFAULT_SYT_MAX_WEIGHT)
}

pub fn enumerate_syt_capped(lam: &Partition, max_weight: usize) -> Result<Vec<Tableau>> {
    let n = lam.weight();
    if n > max_weight {
        return Err(Error::WeightTooLarge {
            weight: n,
            max: max_weight,
        });
    }
    fn place(lam: &Partition, next: usize, n: usize, rows: &mut Tableau, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..lam.len() {
            let len = rows[r].len();
            // The new entry is the largest so far, so it goes at a row end whose
            // upper neighbour is already filled.
            if len < lam.parts[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                place(lam, next + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lam.len()];
    place(lam, 1, n, &mut rows, &mut out);
    Ok(out)
}

/// A border strip of a partition's diagram together with what is left after removing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RimHook {
    pub parent: Partition,
    pub cells: BTreeSet<(usize, usize)>,
    /// Rows touched minus one.
    pub leg_length: usize,
    pub residual: Partition,
}

impl RimHook {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `(-1)^leg_length`.
    pub fn sign(&self) -> i32 {
        if self.leg_length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All rim hooks of `lam` with exactly `length` cells.
///
/// A rim hook starts at the end of some row and follows the south-west
/// boundary of the diagram, so each row end yields at most one candidate.
pub fn rim_hooks(lam: &Partition, length: usize) -> Vec<RimHook> {
    if length == 0 {
        return Vec::new();
    }
    (0..lam.len())
        .filter_map(|start_row| walk_rim(lam, start_row, length))
        .collect()
}

fn walk_rim(lam: &Partition, start_row: usize, length: usize) -> Option<RimHook> {
    let mut cells = BTreeSet::new();
    let (mut r, mut c) = (start_row, lam.parts[start_row] - 1);
    loop {
        cells.insert((r, c));
        if cells.len() == length {
            break;
        }
        if lam.contains_cell(r + 1, c) {
            r += 1;
        } else if c > 0 {
            c -= 1;
        } else {
            return None;
        }
    }
    let residual = residual_after(lam, &cells)?;
    let leg_length = r - start_row;
    Some(RimHook {
        parent: lam.clone(),
        cells,
        leg_length,
        residual,
    })
}

/// The partition left after deleting `cells`, if that is a Young diagram.
fn residual_after(lam: &Partition, cells: &BTreeSet<(usize, usize)>) -> Option<Partition> {
    let mut rows = lam.parts.clone();
    for (r, len) in rows.iter_mut().enumerate() {
        let removed = cells.iter().filter(|&&(cr, _)| cr == r).count();
        // Removed cells must be exactly the tail of the row.
        let tail_ok = (*len - removed..*len).all(|c| cells.contains(&(r, c)));
        if !tail_ok {
            return None;
        }
        *len -= removed;
    }
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    rows.retain(|&p| p > 0);
    Some(Partition { parts: rows })
}

/// Removes `xi` from `lam`. Fails unless `xi` is one of `lam`'s rim hooks.
pub fn remove_rim_hook(lam: &Partition, xi: &RimHook) -> Result<Partition> {
    let genuine = xi.parent == *lam && rim_hooks(lam, xi.len()).iter().any(|h| h.cells == xi.cells);
    if !genuine {
        return Err(Error::NotARimHook(lam.to_string()));
    }
    Ok(xi.residual.clone())
}
