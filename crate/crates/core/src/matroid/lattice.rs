use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::Matroid;
use crate::poset;
use crate::subset::Subset;

/// The geometric lattice of flats with its Möbius function `μ(0̂, X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatLattice {
    pub flats_by_rank: Vec<Vec<Subset>>,
    pub mobius: BTreeMap<Subset, i64>,
    pub covers: BTreeMap<Subset, Vec<Subset>>,
}

impl FlatLattice {
    pub(super) fn build(m: &Matroid) -> Self {
        let mut flats_by_rank = vec![vec![m.closure(Subset::EMPTY)]];
        for _ in 0..m.full_rank() {
            let prev = flats_by_rank.last().expect("nonempty");
            let next: BTreeSet<Subset> = prev
                .iter()
                .flat_map(|&x| {
                    (0..m.n())
                        .filter(move |&i| !x.contains(i))
                        .map(move |i| m.closure(x.insert(i)))
                })
                .collect();
            flats_by_rank.push(next.into_iter().collect());
        }
        // within a rank level, Y ⊊ X cannot happen, so rank order works for μ
        let ordered: Vec<Subset> = flats_by_rank.iter().flatten().copied().collect();
        let mu = poset::mobius_from_bottom(&ordered);
        let mobius = ordered.iter().copied().zip(mu).collect();
        let covers = flats_by_rank
            .iter()
            .enumerate()
            .flat_map(|(k, level)| {
                let above = flats_by_rank.get(k + 1);
                level.iter().map(move |&x| {
                    let up = above
                        .map(|a| a.iter().copied().filter(|y| x.is_subset(*y)).collect())
                        .unwrap_or_default();
                    (x, up)
                })
            })
            .collect();
        FlatLattice {
            flats_by_rank,
            mobius,
            covers,
        }
    }

    pub fn rank(&self) -> usize {
        self.flats_by_rank.len() - 1
    }

    pub fn len(&self) -> usize {
        self.mobius.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mobius.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.flats_by_rank.iter().flatten().copied()
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.mobius.contains_key(&x)
    }

    pub fn mobius(&self, x: Subset) -> Option<i64> {
        self.mobius.get(&x).copied()
    }

    pub fn top(&self) -> Subset {
        self.flats_by_rank
            .last()
            .and_then(|l| l.first())
            .copied()
            .unwrap_or_default()
    }

    /// `w_p = Σ_{rk X = p} |μ(X)|` for `p = 0..=rk`.
    pub fn whitney(&self) -> Vec<u64> {
        self.flats_by_rank
            .iter()
            .map(|level| level.iter().map(|x| self.mobius[x].unsigned_abs()).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel3() -> Matroid {
        Matroid::from_lines(6, ["123", "345", "156"].map(Subset::digits).to_vec()).unwrap()
    }

    #[test]
    fn wheel_lattice() {
        let l = wheel3().flats().unwrap();
        assert_eq!(l.rank(), 3);
        let lines: Vec<_> = l.flats_by_rank[2].iter().filter(|x| x.len() == 3).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(l.flats_by_rank[2].len(), 9);
        for x in &l.flats_by_rank[2] {
            assert_eq!(l.mobius(*x), Some(if x.len() == 3 { 2 } else { 1 }));
        }
        assert_eq!(l.mobius(l.top()), Some(-7));
        assert_eq!(l.whitney(), vec![1, 6, 12, 7]);
        // point 1 lies on lines 123 and 156 and on the trivial line 14
        assert_eq!(l.covers[&Subset::digits("1")].len(), 3);
        assert_eq!(l.covers[&Subset::digits("2")].len(), 4);
    }

    #[test]
    fn boolean_lattice() {
        let l = Matroid::boolean(4).unwrap().flats().unwrap();
        assert_eq!(l.len(), 16);
        for x in l.iter() {
            assert_eq!(l.mobius(x), Some(if x.len() % 2 == 0 { 1 } else { -1 }));
        }
        assert_eq!(l.whitney(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn mobius_signs_and_sum() {
        let yuz = Matroid::from_lines(
            8,
            ["123", "148", "257", "3678", "456"]
                .map(Subset::digits)
                .to_vec(),
        )
        .unwrap();
        let l = yuz.flats().unwrap();
        assert_eq!(l.mobius(l.top()), Some(-14));
        assert_eq!(l.whitney(), vec![1, 8, 21, 14]);
        assert_eq!(l.mobius.values().sum::<i64>(), 0);
        for (k, level) in l.flats_by_rank.iter().enumerate() {
            for x in level {
                let mu = l.mobius(*x).unwrap();
                assert_ne!(mu, 0);
                assert_eq!(mu.signum(), if k % 2 == 0 { 1 } else { -1 });
                assert!(yuz.is_flat(*x));
            }
        }
    }
}
