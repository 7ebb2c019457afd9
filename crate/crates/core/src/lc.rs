//! Line-closure, r-closure and the lattice of line-closed sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matroid::{check_guard, Matroid};
use crate::poset;
use crate::subset::{k_subsets, Subset};

/// `lc(S)`: the smallest superset of `S` containing `cl{i,j}` for every pair
/// of its points.
pub fn line_closure(m: &Matroid, s: Subset) -> Subset {
    let bits = m.lc_memo().get_or_insert_with(s.bits(), || {
        let mut x = s;
        loop {
            let mut next = x;
            let elems: Vec<usize> = x.iter().collect();
            for (a, &i) in elems.iter().enumerate() {
                for &j in &elems[a + 1..] {
                    next = next.union(m.closure(Subset::from_elems([i, j])));
                }
            }
            if next == x {
                break x.bits() as u64;
            }
            x = next;
        }
    });
    Subset::from_bits(bits as u32)
}

/// The smallest superset of `S` containing `cl(T)` for each of its subsets
/// `T` with `|T| <= r`. Equal to [`line_closure`] for `r = 2`.
pub fn r_closure(m: &Matroid, s: Subset, r: usize) -> Subset {
    if r == 2 {
        return line_closure(m, s);
    }
    let mut x = s;
    loop {
        let mut next = x;
        for t in x.subsets() {
            if t.len() >= 2 && t.len() <= r && !m.closure(t).is_subset(next) {
                next = next.union(m.closure(t));
            }
        }
        if next == x {
            return x;
        }
        x = next;
    }
}

/// How [`line_closed_witness`] decides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LineClosedCheck {
    /// For every flat `X` and basis `B` of `X`, `lc(B) = X`.
    #[default]
    Bases,
    /// Scan all `2^n` subsets for one that is line-closed but not closed.
    Exhaustive,
}

/// A line-closed set that is not closed, if the matroid has one.
pub fn line_closed_witness(m: &Matroid, how: LineClosedCheck) -> Result<Option<Subset>> {
    check_guard(m.n())?;
    Ok(match how {
        LineClosedCheck::Bases => {
            let flats = m.flats()?;
            // lc and cl agree on sets of at most two points
            let witness = flats
                .iter()
                .filter(|x| m.rank(*x) >= 3)
                .find_map(|x| m.bases_of(x).map(|b| line_closure(m, b)).find(|&l| l != x));
            witness
        }
        LineClosedCheck::Exhaustive => (0..1u64 << m.n())
            .map(|b| Subset::from_bits(b as u32))
            .find(|&s| line_closure(m, s) == s && !m.is_flat(s)),
    })
}

/// Every line-closed set is closed.
pub fn is_line_closed(m: &Matroid) -> Result<bool> {
    Ok(line_closed_witness(m, LineClosedCheck::Bases)?.is_none())
}

/// An r-closed set that is not closed, if any.
pub fn r_closed_witness(m: &Matroid, r: usize) -> Result<Option<Subset>> {
    check_guard(m.n())?;
    let family = poset::closed_family(m.n(), |s| r_closure(m, s, r.max(1)));
    Ok(family.into_iter().find(|&x| !m.is_flat(x)))
}

/// Every r-closed set is closed.
pub fn is_r_closed(m: &Matroid, r: usize) -> Result<bool> {
    Ok(r_closed_witness(m, r)?.is_none())
}

/// The least `|S|` with `lc(S) = [n]`, with the lexicographically first
/// such `S`.
pub fn lc_dimension(m: &Matroid) -> Result<(usize, Subset)> {
    check_guard(m.n())?;
    let full = m.ground();
    for k in 0..=m.n() {
        if let Some(s) = k_subsets(m.n(), k).find(|&s| line_closure(m, s) == full) {
            return Ok((k, s));
        }
    }
    unreachable!("lc([n]) = [n]")
}

/// The lattice `L̄(G)` of line-closed sets with its Möbius function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcLattice {
    /// Sorted by size, then lexicographically.
    pub sets: Vec<Subset>,
    pub mobius_bar: BTreeMap<Subset, i64>,
    /// Upper covers of each member.
    pub covers: BTreeMap<Subset, Vec<Subset>>,
}

impl LcLattice {
    pub fn build(m: &Matroid) -> Result<Self> {
        check_guard(m.n())?;
        let sets = poset::closed_family(m.n(), |s| line_closure(m, s));
        let mu = poset::mobius_from_bottom(&sets);
        let mobius_bar = sets.iter().copied().zip(mu).collect();
        // any line-closed Y ⊋ X contains lc(X ∪ i) for each i ∈ Y − X, so the
        // covers of X are the minimal sets of that form
        let covers = sets
            .iter()
            .map(|&x| {
                let mut ups: Vec<Subset> = (0..m.n())
                    .filter(|&i| !x.contains(i))
                    .map(|i| line_closure(m, x.insert(i)))
                    .collect();
                ups.sort();
                ups.dedup();
                let minimal = ups
                    .iter()
                    .copied()
                    .filter(|&y| !ups.iter().any(|&z| z != y && z.is_subset(y)))
                    .collect();
                (x, minimal)
            })
            .collect();
        Ok(LcLattice {
            sets,
            mobius_bar,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.mobius_bar.contains_key(&x)
    }

    pub fn mobius(&self, x: Subset) -> Option<i64> {
        self.mobius_bar.get(&x).copied()
    }

    pub fn top(&self) -> Subset {
        *self.sets.last().expect("nonempty lattice")
    }

    /// Whether `chain` runs from `∅` to the top through covering relations.
    pub fn is_maximal_chain(&self, chain: &[Subset]) -> bool {
        chain.first() == self.sets.first()
            && chain.last() == Some(&self.top())
            && chain
                .windows(2)
                .all(|w| self.covers.get(&w[0]).is_some_and(|c| c.contains(&w[1])))
    }

    /// Lengths (number of cover steps) of all maximal chains, deduplicated.
    pub fn chain_lengths(&self) -> Vec<usize> {
        let mut memo: BTreeMap<Subset, Vec<usize>> = BTreeMap::new();
        for &x in self.sets.iter().rev() {
            let ups = &self.covers[&x];
            let mut lens: Vec<usize> = if ups.is_empty() {
                vec![0]
            } else {
                ups.iter()
                    .flat_map(|y| memo[y].iter().map(|l| l + 1))
                    .collect()
            };
            lens.sort_unstable();
            lens.dedup();
            memo.insert(x, lens);
        }
        memo.remove(&self.sets[0]).unwrap_or_default()
    }
}

pub fn line_closed_sets(m: &Matroid) -> Result<LcLattice> {
    LcLattice::build(m)
}

/// Whitney numbers `w_0, .., w_rk` and the characteristic polynomial
/// `χ(t) = Σ (-1)^p w_p t^(rk - p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub whitney: Vec<u64>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.whitney.len() - 1
    }

    /// Signed coefficients, leading term first.
    pub fn coefficients(&self) -> Vec<i64> {
        self.whitney
            .iter()
            .enumerate()
            .map(|(p, &w)| if p % 2 == 0 { w as i64 } else { -(w as i64) })
            .collect()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coefficients().iter().fold(0, |acc, c| acc * t + c)
    }

    /// The roots with multiplicity, ascending, when `χ` splits into linear
    /// factors over the integers.
    pub fn integer_roots(&self) -> Option<Vec<i64>> {
        let mut poly = self.coefficients();
        let mut roots = Vec::new();
        while poly.len() > 1 {
            let c = *poly.last().expect("nonempty");
            let root = if c == 0 {
                0
            } else {
                divisors(c.unsigned_abs())
                    .flat_map(|d| [d as i64, -(d as i64)])
                    .find(|&r| {
                        poly.iter()
                            .fold(0i128, |acc, &a| acc * r as i128 + a as i128)
                            == 0
                    })?
            };
            // synthetic division by (t - root)
            let mut q = Vec::with_capacity(poly.len() - 1);
            let mut acc = 0;
            for &a in &poly[..poly.len() - 1] {
                acc = acc * root + a;
                q.push(acc);
            }
            poly = q;
            roots.push(root);
        }
        roots.sort_unstable();
        Some(roots)
    }
}

fn divisors(c: u64) -> impl Iterator<Item = u64> {
    (1..=c).filter(move |d| c.is_multiple_of(*d))
}

pub fn whitney_numbers(m: &Matroid) -> Result<CharPoly> {
    Ok(CharPoly {
        whitney: m.flats()?.whitney(),
    })
}
