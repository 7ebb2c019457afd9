//! Broken circuits, nbc and nbb complexes, and NBB sets for partial orders
//! on the points.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lc::{self, line_closure, r_closure, LcLattice};
use crate::matroid::{check_guard, Matroid};
use crate::subset::{LinearOrder, Subset};

/// A simplicial complex on `{0, .., n-1}` kept as its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Subset>,
    /// `face_counts[p]`: number of faces with `p` points.
    face_counts: Vec<usize>,
}

impl SimplicialComplex {
    /// The complex generated by `sets` (which need not be downward closed).
    pub fn generated_by(n: usize, sets: impl IntoIterator<Item = Subset>) -> Self {
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut facets: Vec<Subset> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| s.is_subset(*f)) {
                facets.push(s);
            }
        }
        facets.sort();
        let mut c = SimplicialComplex {
            n,
            facets,
            face_counts: Vec::new(),
        };
        c.face_counts = c.count_faces();
        c
    }

    fn count_faces(&self) -> Vec<usize> {
        let faces = self.faces();
        let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for f in faces {
            counts[f.len()] += 1;
        }
        counts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[Subset] {
        &self.facets
    }

    /// Facets listed under `order`, each written first-to-last under it.
    pub fn facets_under(&self, order: &LinearOrder) -> Vec<Vec<usize>> {
        let mut f = self.facets.clone();
        f.sort_by(|a, b| order.cmp_sets(*a, *b));
        f.into_iter().map(|s| order.sorted_labels(s)).collect()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Every face, including `∅`, in lexicographic order.
    pub fn faces(&self) -> Vec<Subset> {
        let mut all: HashSet<Subset> = HashSet::new();
        for f in &self.facets {
            all.extend(f.subsets());
        }
        if self.facets.is_empty() {
            all.insert(Subset::EMPTY);
        }
        let mut v: Vec<Subset> = all.into_iter().collect();
        v.sort();
        v
    }

    pub fn faces_of_size(&self, p: usize) -> Vec<Subset> {
        self.faces().into_iter().filter(|f| f.len() == p).collect()
    }

    /// `f[p]` = number of `p`-point faces, for `p = 0..=max facet size`.
    pub fn face_counts(&self) -> &[usize] {
        &self.face_counts
    }

    pub fn face_count(&self, p: usize) -> usize {
        self.face_counts.get(p).copied().unwrap_or(0)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(*f))
    }

    /// Every facet has `d` points.
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

/// All sets `{i_1 < .. < i_p}` (under `order`) with
/// `i_k = min close({i_k, .., i_p})` for every `k`. Built from the back: a
/// valid set stays valid when an earlier point passing the test is prepended.
fn suffix_min_sets(
    m: &Matroid,
    order: &LinearOrder,
    close: &(dyn Fn(Subset) -> Subset + Sync),
) -> Vec<Subset> {
    let mut out = vec![Subset::EMPTY];
    let mut stack: Vec<Subset> = Vec::new();
    for x in 0..m.n() {
        stack.push(Subset::singleton(x));
    }
    while let Some(s) = stack.pop() {
        out.push(s);
        let first = order.min_of(s).expect("nonempty");
        for y in order.before(first).iter() {
            let t = s.insert(y);
            if order.min_of(close(t)) == Some(y) {
                stack.push(t);
            }
        }
    }
    out.sort();
    out
}

/// `{C − min C : C circuit}`, deduplicated and sorted.
pub fn broken_circuits(m: &Matroid, order: &LinearOrder) -> Result<Vec<Subset>> {
    let mut bc: Vec<Subset> = m
        .circuits(None)?
        .into_iter()
        .map(|c| c.remove(order.min_of(c).expect("circuits are nonempty")))
        .collect();
    bc.sort();
    bc.dedup();
    Ok(bc)
}

/// All nbc sets: the increasing sets with `i_k = min cl({i_k, .., i_p})`.
pub fn nbc_sets(m: &Matroid, order: &LinearOrder) -> Result<Vec<Subset>> {
    check_guard(m.n())?;
    Ok(suffix_min_sets(m, order, &|s| m.closure(s)))
}

pub fn nbc(m: &Matroid, order: &LinearOrder) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::generated_by(m.n(), nbc_sets(m, order)?))
}

/// The nbc sets whose closure is the flat `x`.
pub fn nbc_by_flat(m: &Matroid, order: &LinearOrder, x: Subset) -> Result<Vec<Subset>> {
    if !m.is_flat(x) {
        return Err(Error::NotFlat(x));
    }
    Ok(nbc_sets(m, order)?
        .into_iter()
        .filter(|&s| m.closure(s) == x)
        .collect())
}

/// All nbb sets: `i_k = min lc({i_k, .., i_p})` for every `k`.
pub fn nbb_sets(m: &Matroid, order: &LinearOrder) -> Result<Vec<Subset>> {
    check_guard(m.n())?;
    Ok(suffix_min_sets(m, order, &|s| line_closure(m, s)))
}

pub fn nbb(m: &Matroid, order: &LinearOrder) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::generated_by(m.n(), nbb_sets(m, order)?))
}

/// The r-nbb sets, defined with r-closure in place of line-closure.
pub fn r_nbb_sets(m: &Matroid, order: &LinearOrder, r: usize) -> Result<Vec<Subset>> {
    check_guard(m.n())?;
    let r = r.max(1);
    Ok(suffix_min_sets(m, order, &|s| r_closure(m, s, r)))
}

pub fn r_nbb(m: &Matroid, order: &LinearOrder, r: usize) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::generated_by(
        m.n(),
        r_nbb_sets(m, order, r)?,
    ))
}

/// `Σ (-1)^|S|` over nbb sets `S` with `lc(S) = x`.
pub fn nbb_mobius_sum(m: &Matroid, order: &LinearOrder, x: Subset) -> Result<i64> {
    if line_closure(m, x) != x {
        return Err(Error::NotLineClosed(x));
    }
    Ok(nbb_sets(m, order)?
        .into_iter()
        .filter(|&s| line_closure(m, s) == x)
        .map(|s| if s.len() % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// A partial order on the points, as a relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    n: usize,
    /// `less[a][b]`: `a ≺ b` strictly.
    less: Vec<Vec<bool>>,
}

impl PartialOrder {
    /// Validates irreflexivity and transitivity of the strict relation.
    pub fn from_strict(less: Vec<Vec<bool>>) -> Result<Self> {
        let n = less.len();
        if less.iter().any(|r| r.len() != n) {
            return Err(Error::BadPartialOrder(
                "relation matrix is not square".into(),
            ));
        }
        for a in 0..n {
            if less[a][a] {
                return Err(Error::BadPartialOrder(format!("{} precedes itself", a + 1)));
            }
            for b in 0..n {
                for c in 0..n {
                    if less[a][b] && less[b][c] && !less[a][c] {
                        return Err(Error::BadPartialOrder(format!(
                            "not transitive at {}, {}, {}",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(PartialOrder { n, less })
    }

    /// The transitive closure of 0-based covering pairs `(a, b)`, `a ≺ b`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::BadPartialOrder(format!(
                    "pair ({}, {}) out of range",
                    a + 1,
                    b + 1
                )));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if less[a][k] {
                    for b in 0..n {
                        if less[k][b] {
                            less[a][b] = true;
                        }
                    }
                }
            }
        }
        PartialOrder::from_strict(less)
    }

    /// Only the reflexive pairs.
    pub fn antichain(n: usize) -> Self {
        PartialOrder {
            n,
            less: vec![vec![false; n]; n],
        }
    }

    pub fn from_linear(order: &LinearOrder) -> Self {
        let n = order.len();
        let less = (0..n)
            .map(|a| (0..n).map(|b| order.precedes(a, b)).collect())
            .collect();
        PartialOrder { n, less }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    /// The `⪯`-minimal members of `s`.
    pub fn minimal(&self, s: Subset) -> Subset {
        s.iter()
            .filter(|&x| !s.iter().any(|y| self.less[y][x]))
            .collect()
    }

    /// Whether `order` is a linear extension.
    pub fn is_extended_by(&self, order: &LinearOrder) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| !self.less[a][b] || order.precedes(a, b)))
    }
}

/// The first nonempty line-closed set without a unique `⪯`-minimum.
pub fn nbb_partial_obstruction(lattice: &LcLattice, porder: &PartialOrder) -> Option<Subset> {
    lattice
        .sets
        .iter()
        .copied()
        .find(|&x| !x.is_empty() && porder.minimal(x).len() != 1)
}

/// NBB sets of `L̄(G)` under a partial order on the atoms: sets containing
/// no `T` for which some atom `a ∈ lc(T)` precedes every member of `T`.
pub fn nbb_partial(m: &Matroid, porder: &PartialOrder) -> Result<Vec<Subset>> {
    check_guard(m.n())?;
    if porder.n() != m.n() {
        return Err(Error::BadPartialOrder(format!(
            "order on {} points for a matroid on {}",
            porder.n(),
            m.n()
        )));
    }
    let lattice = lc::line_closed_sets(m)?;
    if let Some(x) = nbb_partial_obstruction(&lattice, porder) {
        return Err(Error::NoUniqueMinimum(x));
    }
    let bounded_below = |t: Subset| {
        line_closure(m, t)
            .iter()
            .any(|a| t.iter().all(|x| porder.precedes(a, x)))
    };
    // NBB is downward closed, so S qualifies iff every S − x does and S
    // itself is not bounded below
    let size = 1usize << m.n();
    let mut ok = vec![false; size];
    let mut out = Vec::new();
    for b in 0..size {
        let s = Subset::from_bits(b as u32);
        let good = s.iter().all(|x| ok[s.remove(x).bits() as usize])
            && (s.is_empty() || !bounded_below(s));
        if good {
            ok[b] = true;
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// How [`nbb_equals_nbc_all_orders`] reached its answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AllOrdersVerdict {
    /// Every one of the `n!` orders was tried.
    Exhaustive {
        equal: bool,
        witness: Option<Vec<usize>>,
    },
    /// An order built from a line-closed set `x` that is not closed: a point
    /// of `cl(x) − x` first, then `x`, then the rest.
    Witness { order: Vec<usize>, set: Subset },
    /// The matroid is line-closed, so nbb and nbc agree for every order.
    LineClosed,
}

impl AllOrdersVerdict {
    pub fn equal(&self) -> bool {
        match self {
            AllOrdersVerdict::Exhaustive { equal, .. } => *equal,
            AllOrdersVerdict::Witness { .. } => false,
            AllOrdersVerdict::LineClosed => true,
        }
    }
}

/// Ground sets up to this size are checked over every order.
pub const EXHAUSTIVE_ORDERS_MAX_N: usize = 7;

/// Whether `nbb = nbc` for every linear order.
pub fn nbb_equals_nbc_all_orders(m: &Matroid) -> Result<AllOrdersVerdict> {
    check_guard(m.n())?;
    if m.n() <= EXHAUSTIVE_ORDERS_MAX_N {
        let perms: Vec<Vec<usize>> = permutations(m.n());
        let differs = |seq: &Vec<usize>| -> bool {
            let order = LinearOrder::from_sequence(seq.clone()).expect("permutation");
            match (nbb_sets(m, &order), nbc_sets(m, &order)) {
                (Ok(a), Ok(b)) => a != b,
                _ => false,
            }
        };
        let witness = perms.par_iter().find_first(|seq| differs(seq)).cloned();
        return Ok(AllOrdersVerdict::Exhaustive {
            equal: witness.is_none(),
            witness: witness.map(|s| s.into_iter().map(|e| e + 1).collect()),
        });
    }
    match lc::line_closed_witness(m, lc::LineClosedCheck::Bases)? {
        None => Ok(AllOrdersVerdict::LineClosed),
        Some(x) => {
            let order = witness_order(m, x);
            let nbb = nbb_sets(m, &order)?;
            let nbc = nbc_sets(m, &order)?;
            if nbb == nbc {
                return Err(Error::Identity(format!(
                    "witness order {} from {x} does not separate nbb and nbc",
                    order.label_string()
                )));
            }
            Ok(AllOrdersVerdict::Witness {
                order: order.sequence().iter().map(|e| e + 1).collect(),
                set: x,
            })
        }
    }
}

/// An order under which a basis of the line-closed, non-closed set `x` is
/// nbb but not nbc: a point of `cl(x) − x`, then `x`, then everything else.
pub fn witness_order(m: &Matroid, x: Subset) -> LinearOrder {
    let extra = m.closure(x).difference(x).first().expect("x is not closed");
    let mut seq = vec![extra];
    seq.extend(x.iter());
    seq.extend(m.ground().difference(x).remove(extra).iter());
    LinearOrder::from_sequence(seq).expect("permutation")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}
