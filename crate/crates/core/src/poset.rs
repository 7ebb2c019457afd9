//! Möbius functions for families of sets ordered by inclusion: flats,
//! line-closed sets, r-closed sets.

use std::collections::{BTreeSet, HashMap};

use crate::subset::Subset;

/// `μ(bottom, X)` for every member of `sets`. The bottom element comes first
/// and every member comes after all of its proper subsets in the family.
pub(crate) fn mobius_from_bottom(sets: &[Subset]) -> Vec<i64> {
    let index: HashMap<Subset, usize> = sets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut mu = vec![0i64; sets.len()];
    for (k, &x) in sets.iter().enumerate() {
        if k == 0 {
            mu[0] = 1;
            continue;
        }
        // walk whichever is smaller: the submasks of x or the earlier members
        let s: i64 = if (1usize << x.len().min(30)) < k {
            x.subsets()
                .filter(|&y| y != x)
                .filter_map(|y| index.get(&y))
                .map(|&j| mu[j])
                .sum()
        } else {
            sets[..k]
                .iter()
                .zip(&mu)
                .filter(|(y, _)| y.is_subset(x) && y.len() < x.len())
                .map(|(_, m)| *m)
                .sum()
        };
        mu[k] = -s;
    }
    mu
}

/// Sorts by cardinality, then lexicographically.
pub(crate) fn sort_graded(sets: &mut [Subset]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
}

/// All sets reachable from `∅` by `X ↦ close(X ∪ {i})`, in graded order.
/// For a closure operator whose closed sets are joins of atoms this is the
/// whole family of closed sets.
pub(crate) fn closed_family(n: usize, close: impl Fn(Subset) -> Subset) -> Vec<Subset> {
    let bottom = close(Subset::EMPTY);
    let mut seen = BTreeSet::from([bottom]);
    let mut frontier = vec![bottom];
    while let Some(x) = frontier.pop() {
        for i in 0..n {
            if !x.contains(i) {
                let y = close(x.insert(i));
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    let mut out: Vec<Subset> = seen.into_iter().collect();
    sort_graded(&mut out);
    out
}
