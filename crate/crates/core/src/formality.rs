//! Formality of realizations and the combinatorial conditions around it.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::lc::line_closure;
use crate::linalg::{self, EchelonBasis};
use crate::matroid::Matroid;
use crate::realization::Realization;
use crate::subset::{k_subsets, Subset};
use crate::with_field;

/// The relation space `K = ker(e_i ↦ α_i)` and its subspace `F` spanned by
/// relations among three forms. Both are stored in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpace {
    pub field: FieldSpec,
    pub n: usize,
    pub k: Vec<Vec<BigRational>>,
    pub f: Vec<Vec<BigRational>>,
}

impl RelationSpace {
    pub fn dim_k(&self) -> usize {
        self.k.len()
    }

    pub fn dim_f(&self) -> usize {
        self.f.len()
    }

    pub fn is_formal(&self) -> bool {
        self.dim_f() == self.dim_k()
    }
}

/// Triples of columns spanning a plane: the three-point circuits.
fn dependent_triples(r: &Realization) -> Vec<Subset> {
    k_subsets(r.n(), 3)
        .filter(|&t| r.column_rank(t) == 2)
        .collect()
}

fn relation_space_with<F: Field>(f: &F, r: &Realization) -> RelationSpace {
    let rows = r.typed_rows(f);
    let n = r.n();
    let k = linalg::kernel(f, n, &rows);
    let mut span = EchelonBasis::new(f.clone(), n);
    for t in dependent_triples(r) {
        let cols: Vec<usize> = t.iter().collect();
        let sub: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        for v in linalg::kernel(f, 3, &sub) {
            let mut full = vec![f.zero(); n];
            for (&c, x) in cols.iter().zip(v) {
                full[c] = x;
            }
            span.insert(full);
        }
    }
    let to_q = |rows: Vec<Vec<F::Elem>>| -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|row| row.iter().map(|x| f.to_rational(x)).collect())
            .collect()
    };
    let k_ech = EchelonBasis::from_rows(f.clone(), n, k);
    RelationSpace {
        field: f.spec(),
        n,
        k: to_q(k_ech.rref()),
        f: to_q(span.rref()),
    }
}

pub fn relation_space(r: &Realization) -> RelationSpace {
    with_field!(r.field(), |f| relation_space_with(&f, r))
}

/// `K` is spanned by relations of weight at most three.
pub fn is_formal(r: &Realization) -> bool {
    relation_space(r).is_formal()
}

/// The formalization `A_F`: its rows are a basis of `F^⊥`, so column `i` is
/// the coordinate form `x_i` restricted to `F^⊥`.
pub fn formalization(r: &Realization) -> Result<Realization> {
    let rs = relation_space(r);
    let rows: Vec<Vec<BigRational>> = with_field!(r.field(), |f| {
        let fr: Vec<Vec<_>> =
            rs.f.iter()
                .map(|row| {
                    row.iter()
                        .map(|q| f.from_rational(q).expect("field element"))
                        .collect()
                })
                .collect();
        linalg::kernel(&f, rs.n, &fr)
            .into_iter()
            .map(|v| v.iter().map(|x| f.to_rational(x)).collect())
            .collect()
    });
    let out = Realization::unchecked(r.field(), rs.n, rows)?;
    if let Some(c) = out.has_zero_column() {
        return Err(Error::DegenerateColumn(c + 1));
    }
    Realization::with_columns(r.field(), rs.n, out.rows().to_vec())
}

/// Every flat of rank at least 3 gives a formal subarrangement.
pub fn is_locally_formal(r: &Realization) -> Result<bool> {
    let m = Matroid::from_matrix(r.clone())?;
    let flats = m.flats()?;
    Ok(flats
        .flats_by_rank
        .iter()
        .skip(3)
        .flatten()
        .all(|&x| is_formal(&r.columns(x))))
}

/// Attempts made by [`generic_section`] before giving up.
pub const SECTION_ATTEMPTS: usize = 64;

/// Restricts the forms to a pseudo-random `r`-dimensional subspace, retrying
/// until the resulting matroid is the rank-`r` truncation.
pub fn generic_section(r: &Realization, rank: usize, seed: u64) -> Result<Realization> {
    let full = r.rank();
    if rank < 3 || rank > r.dim() || rank > full {
        return Err(Error::RankOutOfRange {
            r: rank,
            max: full.min(r.dim()),
        });
    }
    let base = std::sync::Arc::new(Matroid::from_matrix(r.clone())?);
    let target = base.truncation(rank)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SECTION_ATTEMPTS {
        let rows: Vec<Vec<BigRational>> = with_field!(r.field(), |f| {
            let a = r.typed_rows(&f);
            let p: Vec<Vec<_>> = (0..r.dim())
                .map(|_| (0..rank).map(|_| f.random(&mut rng)).collect())
                .collect();
            (0..rank)
                .map(|k| {
                    (0..r.n())
                        .map(|c| {
                            let v = (0..r.dim())
                                .fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&p[j][k], &a[j][c])));
                            f.to_rational(&v)
                        })
                        .collect()
                })
                .collect()
        });
        let Ok(section) = Realization::with_columns(r.field(), r.n(), rows) else {
            continue;
        };
        match Matroid::from_matrix(section.clone()) {
            Ok(m) if m.same_as(&target) => return Ok(section),
            _ => continue,
        }
    }
    Err(Error::SectionFailed {
        attempts: SECTION_ATTEMPTS,
        seed,
    })
}

/// The lexicographically first basis whose line-closure is everything.
pub fn has_lc_spanning_basis(m: &Matroid) -> Option<Subset> {
    let full = m.ground();
    m.bases().find(|&b| line_closure(m, b) == full)
}

/// Every flat has a basis whose line-closure is the flat.
pub fn locally_lc_spanning(m: &Matroid) -> Result<bool> {
    let flats = m.flats()?;
    let ok = flats
        .iter()
        .all(|x| m.bases_of(x).any(|b| line_closure(m, b) == x));
    Ok(ok)
}

/// Each circuit `S` with `|S| >= 4` has disjoint pairs `{a,b}`, `{c,d}` with
/// `cl{a,b} ∩ cl{c,d} ≠ ∅`. With `weakened`, only circuits through point 1
/// are examined (meaningful in rank 3).
pub fn parallel_condition(m: &Matroid, weakened: bool) -> Result<bool> {
    let circuits = m.circuits(None)?;
    Ok(circuits
        .into_iter()
        .filter(|s| s.len() >= 4 && (!weakened || s.contains(0)))
        .all(|s| has_meeting_pairs(m, s)))
}

fn has_meeting_pairs(m: &Matroid, s: Subset) -> bool {
    let pairs: Vec<Subset> = s.subsets().filter(|p| p.len() == 2).collect();
    pairs.iter().enumerate().any(|(a, &p)| {
        pairs[a + 1..]
            .iter()
            .any(|&q| p.is_disjoint(q) && !m.closure(p).is_disjoint(m.closure(q)))
    })
}

/// A basis all of whose two-point subsets are closed, when `n > rk`.
pub fn doublepoint_witness(m: &Matroid) -> Option<Subset> {
    if m.n() <= m.full_rank() {
        return None;
    }
    m.bases().find(|&b| {
        let pts: Vec<usize> = b.iter().collect();
        pts.iter().enumerate().all(|(a, &i)| {
            pts[a + 1..].iter().all(|&j| {
                let pair = Subset::from_elems([i, j]);
                m.closure(pair) == pair
            })
        })
    })
}
