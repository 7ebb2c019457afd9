//! Subsets of a small ground set, stored as bit masks.
//!
//! Elements are 0-based internally; everything that is printed or parsed uses
//! 1-based labels.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] can hold.
pub const MAX_POINTS: usize = 32;

/// A subset of `{0, .., n-1}`.
///
/// `Ord` is the lexicographic order on increasing tuples, so `{1,2,4,6}` sorts
/// before `{1,2,5}` and `{1,2}` before `{1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        Subset(elems.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Builds a subset from 1-based labels, checking the range.
    pub fn from_labels(labels: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &label in labels {
            if label == 0 || label > n {
                return Err(Error::LabelOutOfRange { label, n });
            }
            bits |= 1 << (label - 1);
        }
        Ok(Subset(bits))
    }

    /// Parses a compact digit string such as `"1246"` (labels 1..9 only).
    /// Intended for tests and small examples.
    pub fn digits(s: &str) -> Self {
        Subset::from_elems(
            s.chars()
                .map(|c| c.to_digit(10).expect("digit") as usize - 1),
        )
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element in the natural order.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing natural order.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Concatenated labels (`124`) when every label is a single digit,
    /// otherwise dot-separated (`1.2.11`). The empty set prints as `∅`.
    pub fn compact(self) -> String {
        compact_labels(&self.labels())
    }
}

/// Compact rendering shared by subsets and order-sorted faces.
pub fn compact_labels(labels: &[usize]) -> String {
    if labels.is_empty() {
        return "∅".to_string();
    }
    let sep = if labels.iter().all(|&l| l < 10) {
        ""
    } else {
        "."
    };
    labels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub struct Elems(u32);

impl Iterator for Elems {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elems {}

pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // standard submask enumeration in increasing order
        let succ = (cur | !self.mask).wrapping_add(1) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(Subset(cur))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let x = diff.trailing_zeros();
        // Elements below x agree. The set containing x continues with x; the
        // other continues with its next element above x, or ends.
        let self_has_x = self.contains(x as usize);
        let without_x = if self_has_x { other.0 } else { self.0 };
        let above = if x == 31 { 0 } else { without_x >> (x + 1) };
        let ord = if above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        if self_has_x {
            ord
        } else {
            ord.reverse()
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.labels()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = Error;

    fn try_from(labels: Vec<usize>) -> Result<Self> {
        Subset::from_labels(&labels, MAX_POINTS)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elems(iter)
    }
}

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    use itertools::Itertools;
    (0..n).combinations(k).map(Subset::from_elems)
}

/// A linear order on the ground set, given as the sequence of elements from
/// first to last.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl LinearOrder {
    pub fn natural(n: usize) -> Self {
        LinearOrder {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    /// `seq` lists 0-based elements from first to last.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (k, &e) in seq.iter().enumerate() {
            if e >= n {
                return Err(Error::BadOrder(format!("element {} out of range", e + 1)));
            }
            if pos[e] != usize::MAX {
                return Err(Error::BadOrder(format!("element {} repeated", e + 1)));
            }
            pos[e] = k;
        }
        Ok(LinearOrder { seq, pos })
    }

    /// Parses the CLI form `2,1,3,4,5,6` (1-based labels, first to last).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut seq = Vec::with_capacity(n);
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let label: usize = tok
                .parse()
                .map_err(|_| Error::BadOrder(format!("not a label: {tok:?}")))?;
            if label == 0 || label > n {
                return Err(Error::BadOrder(format!("label {label} outside 1..={n}")));
            }
            seq.push(label - 1);
        }
        if seq.len() != n {
            return Err(Error::BadOrder(format!(
                "expected {n} labels, got {}",
                seq.len()
            )));
        }
        LinearOrder::from_sequence(seq)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn position(&self, e: usize) -> usize {
        self.pos[e]
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.pos[a] < self.pos[b]
    }

    /// The order-smallest member of `s`.
    pub fn min_of(&self, s: Subset) -> Option<usize> {
        s.iter().min_by_key(|&e| self.pos[e])
    }

    /// Members of `s` sorted first to last under this order.
    pub fn sorted(&self, s: Subset) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().collect();
        v.sort_by_key(|&e| self.pos[e]);
        v
    }

    /// Members of `s` as 1-based labels sorted under this order.
    pub fn sorted_labels(&self, s: Subset) -> Vec<usize> {
        self.sorted(s).into_iter().map(|e| e + 1).collect()
    }

    /// Elements strictly before `e`.
    pub fn before(&self, e: usize) -> Subset {
        self.seq[..self.pos[e]].iter().copied().collect()
    }

    /// Compares two sets lexicographically as increasing tuples under this order.
    pub fn cmp_sets(&self, a: Subset, b: Subset) -> Ordering {
        self.sorted(a)
            .iter()
            .map(|&e| self.pos[e])
            .cmp(self.sorted(b).iter().map(|&e| self.pos[e]))
    }

    pub fn label_string(&self) -> String {
        self.seq
            .iter()
            .map(|e| (e + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
