//! Exact matrices of defining forms. Column `i` holds the coefficients of the
//! form of hyperplane `i`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Rationals};
use crate::linalg;
use crate::subset::{Subset, MAX_POINTS};
use crate::with_field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    field: FieldSpec,
    /// `rows[r][i]`: coefficient of coordinate `r` in form `i`. Over GF(p)
    /// entries are stored as their representatives in `0..p`.
    rows: Vec<Vec<BigRational>>,
    n: usize,
}

impl Realization {
    /// Validates shape, reduces entries into the field and rejects zero or
    /// proportional columns.
    pub fn new(field: FieldSpec, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        Realization::with_columns(field, n, rows)
    }

    /// Like [`Realization::new`] but with an explicit column count, so that a
    /// matrix with no rows still has `n` (zero) columns.
    pub fn with_columns(field: FieldSpec, n: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = Realization::unchecked(field, n, rows)?;
        r.check_simple()?;
        Ok(r)
    }

    /// Shape and field checks only; zero and parallel columns are allowed.
    pub fn unchecked(field: FieldSpec, n: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadRealization("rows have different lengths".into()));
        }
        if n > MAX_POINTS {
            return Err(Error::TooLarge(n));
        }
        let rows = with_field!(field, |f| {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|q| {
                            f.from_rational(q)
                                .map(|e| f.to_rational(&e))
                                .ok_or_else(|| {
                                    Error::BadRealization(format!(
                                        "entry {q} is undefined over {field}"
                                    ))
                                })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        });
        Ok(Realization { field, rows, n })
    }

    pub fn from_integers(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect())
            .collect();
        Realization::new(field, rows)
    }

    /// The `ℓ × ℓ` identity: the boolean arrangement.
    pub fn identity(l: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..l)
            .map(|r| (0..l).map(|c| i64::from(r == c)).collect())
            .collect();
        Realization::from_integers(FieldSpec::Rational, &rows).expect("identity is simple")
    }

    /// Columns `(1, t, .., t^(r-1))` for `t = 1..=n`: a realization of `U_{r,n}`.
    pub fn vandermonde(r: usize, n: usize) -> Result<Self> {
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|k| (1..=n as i64).map(|t| t.pow(k as u32)).collect())
            .collect();
        Realization::from_integers(FieldSpec::Rational, &rows)
    }

    fn check_simple(&self) -> Result<()> {
        for i in 0..self.n {
            if self.column_rank(Subset::singleton(i)) == 0 {
                return Err(Error::NotSimple(format!(
                    "point {} is a loop (zero column)",
                    i + 1
                )));
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.column_rank(Subset::from_elems([i, j])) < 2 {
                    return Err(Error::NotSimple(format!(
                        "points {} and {} are parallel (proportional columns)",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Number of forms (columns).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `ℓ` (rows).
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    /// Rows as elements of a concrete field; `field` must match [`Self::field`].
    pub fn typed_rows<F: Field>(&self, field: &F) -> Vec<Vec<F::Elem>> {
        debug_assert_eq!(field.spec(), self.field);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| field.from_rational(q).expect("validated entry"))
                    .collect()
            })
            .collect()
    }

    /// Rank of the columns indexed by `cols`.
    pub fn column_rank(&self, cols: Subset) -> usize {
        if cols.is_empty() {
            return 0;
        }
        with_field!(self.field, |f| {
            // transpose: one row per selected column
            let vecs: Vec<Vec<_>> = cols
                .iter()
                .map(|c| {
                    self.rows
                        .iter()
                        .map(|r| f.from_rational(&r[c]).expect("validated entry"))
                        .collect()
                })
                .collect();
            linalg::rank(&f, self.rows.len(), &vecs)
        })
    }

    pub fn rank(&self) -> usize {
        self.column_rank(Subset::full(self.n))
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn has_zero_column(&self) -> Option<usize> {
        (0..self.n).find(|&c| self.rows.iter().all(|r| r[c].is_zero()))
    }

    /// The realization restricted to the columns in `cols`, relabeled in
    /// increasing order.
    pub fn columns(&self, cols: Subset) -> Realization {
        let rows = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|c| r[c].clone()).collect())
            .collect();
        Realization {
            field: self.field,
            rows,
            n: cols.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallels() {
        let f = FieldSpec::Rational;
        assert!(matches!(
            Realization::from_integers(f, &[vec![1, 0], vec![0, 0]]),
            Err(Error::NotSimple(_))
        ));
        assert!(matches!(
            Realization::from_integers(f, &[vec![1, 2], vec![1, 2]]),
            Err(Error::NotSimple(_))
        ));
        assert!(Realization::from_integers(f, &[vec![1, 0], vec![1, 1]]).is_ok());
    }

    #[test]
    fn characteristic_can_create_parallels() {
        // (1,1) and (1,-1) are proportional over GF(2) only
        let rows = vec![vec![1, 1], vec![1, -1]];
        assert!(Realization::from_integers(FieldSpec::Rational, &rows).is_ok());
        assert!(Realization::from_integers(FieldSpec::Prime(3), &rows).is_ok());
        assert!(Realization::from_integers(FieldSpec::Prime(2), &rows).is_err());
    }

    #[test]
    fn vandermonde_is_uniform() {
        let r = Realization::vandermonde(3, 6).unwrap();
        for s in crate::subset::k_subsets(6, 3) {
            assert_eq!(r.column_rank(s), 3);
        }
    }
}
