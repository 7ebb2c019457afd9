//! Exact row reduction over a [`Field`].

use std::collections::BTreeMap;

use crate::field::Field;

/// A subspace of `K^ncols` kept in row echelon form: one row per pivot
/// column, each normalized to 1 at its pivot and zero before it.
///
/// Rows are inserted one at a time, so spans can be grown incrementally.
/// Pivoting is by column order only, which makes the result deterministic.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ncols: usize,
    rows: BTreeMap<usize, Vec<F::Elem>>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        EchelonBasis {
            field,
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<F::Elem>>>(
        field: F,
        ncols: usize,
        rows: I,
    ) -> Self {
        let mut b = EchelonBasis::new(field, ncols);
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` in place against the basis; afterwards `v` is zero at
    /// every pivot column. Returns the column of the first remaining nonzero.
    pub fn reduce(&self, v: &mut [F::Elem]) -> Option<usize> {
        let f = &self.field;
        for (&p, row) in &self.rows {
            if !f.is_zero(&v[p]) {
                let c = v[p].clone();
                f.sub_scaled(&mut v[p..], &c, &row[p..]);
            }
        }
        v.iter().position(|x| !f.is_zero(x))
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        let Some(p) = self.reduce(&mut v) else {
            return false;
        };
        let f = &self.field;
        let lead = f.inv(&v[p]);
        for x in v[p..].iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &lead);
            }
        }
        self.rows.insert(p, v);
        true
    }

    /// Rows in echelon order (not fully reduced).
    pub fn rows(&self) -> impl Iterator<Item = &Vec<F::Elem>> {
        self.rows.values()
    }

    /// The reduced row echelon form, the canonical representative of the span.
    pub fn rref(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut rows: Vec<(usize, Vec<F::Elem>)> =
            self.rows.iter().map(|(&p, r)| (p, r.clone())).collect();
        for k in (0..rows.len()).rev() {
            let (pk, rk) = (rows[k].0, rows[k].1.clone());
            for (_, r) in rows[..k].iter_mut() {
                if !f.is_zero(&r[pk]) {
                    let c = r[pk].clone();
                    f.sub_scaled(&mut r[pk..], &c, &rk[pk..]);
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }

    pub fn is_subspace_of(&self, other: &EchelonBasis<F>) -> bool {
        self.rows().all(|r| other.contains(r))
    }
}

/// Rank of a list of row vectors of length `ncols`.
pub fn rank<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> usize {
    EchelonBasis::from_rows(field.clone(), ncols, rows.iter().cloned()).dim()
}

/// A basis of `{x : A x = 0}` for an `m × ncols` matrix `A` given by rows.
/// Each basis vector has a 1 at one free column and zeros at the others.
pub fn kernel<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let ech = EchelonBasis::from_rows(field.clone(), ncols, rows.iter().cloned());
    let rref = ech.rref();
    let pivots: Vec<usize> = ech.pivots().collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![field.zero(); ncols];
            x[free] = field.one();
            for (row, &p) in rref.iter().zip(&pivots) {
                if !field.is_zero(&row[free]) {
                    x[p] = field.neg(&row[free]);
                }
            }
            x
        })
        .collect()
}

/// `A * x` for `A` given by rows.
pub fn mat_vec<F: Field>(field: &F, rows: &[Vec<F::Elem>], x: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|r| {
            r.iter().zip(x).fold(field.zero(), |acc, (a, b)| {
                field.add(&acc, &field.mul(a, b))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<num_rational::BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel_small() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&Rationals, 3, &a), 2);
        let k = kernel(&Rationals, 3, &a);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&Rationals, &a, &k[0])
            .iter()
            .all(|x| Rationals.is_zero(x)));
    }

    #[test]
    fn rref_is_canonical() {
        let a = EchelonBasis::from_rows(Rationals, 3, q(&[&[1, 1, 0], &[0, 1, 1]]));
        let b = EchelonBasis::from_rows(Rationals, 3, q(&[&[1, 2, 1], &[1, 0, -1]]));
        assert_eq!(a.rref(), b.rref());
        assert!(a.is_subspace_of(&b) && b.is_subspace_of(&a));
    }

    #[test]
    fn characteristic_matters() {
        // det = 3, singular mod 3 only
        let rows = vec![vec![1i64, 1], vec![1, -2]];
        let rq = q(&[&rows[0], &rows[1]]);
        assert_eq!(rank(&Rationals, 2, &rq), 2);
        let f3 = PrimeField::new(3).unwrap();
        let r3: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| f3.from_i64(v)).collect())
            .collect();
        assert_eq!(rank(&f3, 2, &r3), 1);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let f = PrimeField::new(101).unwrap();
            let rows: Vec<Vec<u64>> = entries.chunks(4).map(|c| c.iter().map(|&v| f.from_i64(v)).collect()).collect();
            let r = rank(&f, 4, &rows);
            let k = kernel(&f, 4, &rows);
            prop_assert_eq!(r + k.len(), 4);
            for x in &k {
                prop_assert!(mat_vec(&f, &rows, x).iter().all(|v| *v == 0));
            }
        }
    }
}
