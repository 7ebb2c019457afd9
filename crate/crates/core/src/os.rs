//! The Orlik–Solomon ideal `I`, its degree-`r` truncations `J_r`, and the
//! dimensions and invariants built from them.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::complex;
use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, ExteriorElement, MonomialBasis};
use crate::field::{Field, FieldSpec};
use crate::lc::{self, line_closure};
use crate::linalg::EchelonBasis;
use crate::matroid::{check_guard, Matroid};
use crate::subset::{LinearOrder, Subset};
use crate::with_field;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded pieces of `I` and `J_r` over one field, computed on demand and
/// cached.
///
/// `J_r^p` is spanned by `e_i ∧ J_r^(p-1)` together with `∂e_C` for the
/// circuits with `|C| = p + 1 <= r + 1`. Taking `r >= n` gives `I`.
pub struct OsAlgebra<'m, F: Field> {
    m: &'m Matroid,
    field: F,
    bases: Vec<MonomialBasis>,
    cache: Mutex<BTreeMap<(usize, usize), Arc<EchelonBasis<F>>>>,
}

impl<'m, F: Field> OsAlgebra<'m, F> {
    pub fn new(m: &'m Matroid, field: F) -> Result<Self> {
        check_guard(m.n())?;
        let bases = (0..=m.n()).map(|p| MonomialBasis::new(m.n(), p)).collect();
        Ok(OsAlgebra {
            m,
            field,
            bases,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn matroid(&self) -> &Matroid {
        self.m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn monomials(&self, p: usize) -> &MonomialBasis {
        &self.bases[p]
    }

    /// `J_r^p`; `r >= n` gives `I^p`.
    pub fn ideal_r(&self, p: usize, r: usize) -> Arc<EchelonBasis<F>> {
        let r = r.min(self.n());
        if let Some(b) = self.cache.lock().expect("cache lock").get(&(r, p)) {
            return Arc::clone(b);
        }
        let basis = Arc::new(self.build(p, r));
        self.cache
            .lock()
            .expect("cache lock")
            .insert((r, p), Arc::clone(&basis));
        basis
    }

    pub fn ideal(&self, p: usize) -> Arc<EchelonBasis<F>> {
        self.ideal_r(p, self.n())
    }

    fn build(&self, p: usize, r: usize) -> EchelonBasis<F> {
        let f = &self.field;
        let cols = &self.bases[p];
        let mut span = EchelonBasis::new(f.clone(), cols.len());
        if p <= r {
            for &c in self.m.all_circuits().iter().filter(|c| c.len() == p + 1) {
                let g = ExteriorElement::monomial(f, c).boundary(f);
                span.insert(g.to_dense(f, cols));
            }
        }
        if p == 0 || span.is_full() {
            return span;
        }
        let below = self.ideal_r(p - 1, r);
        let lower = &self.bases[p - 1];
        for row in below.rows() {
            for i in 0..self.n() {
                if span.is_full() {
                    return span;
                }
                span.insert(self.left_multiply(i, row, lower, cols));
            }
        }
        span
    }

    /// Dense `e_i ∧ v` for `v` given in degree `p - 1` coordinates.
    fn left_multiply(
        &self,
        i: usize,
        v: &[F::Elem],
        lower: &MonomialBasis,
        upper: &MonomialBasis,
    ) -> Vec<F::Elem> {
        let f = &self.field;
        let ei = Subset::singleton(i);
        let mut out = vec![f.zero(); upper.len()];
        for (k, c) in v.iter().enumerate() {
            let s = lower.monomial(k);
            if f.is_zero(c) || s.contains(i) {
                continue;
            }
            out[upper.index(s.insert(i))] = if wedge_sign(ei, s) {
                f.neg(c)
            } else {
                c.clone()
            };
        }
        out
    }

    pub fn ideal_dim(&self, p: usize) -> usize {
        self.ideal(p).dim()
    }

    pub fn ideal_r_dim(&self, p: usize, r: usize) -> usize {
        self.ideal_r(p, r).dim()
    }

    /// `dim A^p = C(n, p) - dim I^p`; zero above `n`.
    pub fn dim_a(&self, p: usize) -> usize {
        if p > self.n() {
            return 0;
        }
        binomial(self.n(), p) - self.ideal_dim(p)
    }

    /// `dim Ā_r^p = C(n, p) - dim J_r^p`.
    pub fn dim_abar(&self, p: usize, r: usize) -> usize {
        if p > self.n() {
            return 0;
        }
        binomial(self.n(), p) - self.ideal_r_dim(p, r)
    }

    /// Nullity of `δ : E^1 ⊗ I^2 → E^3`, built on the pairs `e_i ⊗ row` for
    /// the echelon rows of `I^2`.
    pub fn phi3(&self) -> usize {
        if self.n() < 3 {
            return 0;
        }
        let i2 = self.ideal(2);
        let mut image = EchelonBasis::new(self.field.clone(), self.bases[3].len());
        for row in i2.rows() {
            for i in 0..self.n() {
                image.insert(self.left_multiply(i, row, &self.bases[2], &self.bases[3]));
            }
        }
        self.n() * i2.dim() - image.dim()
    }

    /// `γ_3 = dim A^3 + n dim I^2 - C(n, 3)`.
    pub fn gamma3(&self) -> i64 {
        (self.dim_a(3) + self.n() * self.ideal_dim(2)) as i64 - binomial(self.n(), 3) as i64
    }

    /// `J_2^p = I^p` for every `p`. Degrees up to 2 always agree.
    pub fn is_quadratic(&self) -> bool {
        (3..=self.n()).all(|p| self.ideal_r_dim(p, 2) == self.ideal_dim(p))
    }

    /// `Ā_r = A` in every degree.
    pub fn is_r_presented(&self, r: usize) -> bool {
        (r + 1..=self.n()).all(|p| self.ideal_r_dim(p, r) == self.ideal_dim(p))
    }

    /// Dimension of the span of the nbb monomials of degree `p` in `Ā^p`.
    pub fn nbb_rank_in_abar(&self, order: &LinearOrder, p: usize) -> Result<usize> {
        if p > self.n() {
            return Ok(0);
        }
        let j = self.ideal_r(p, 2);
        let mut span = (*j).clone();
        let cols = &self.bases[p];
        for s in complex::nbb_sets(self.m, order)?
            .into_iter()
            .filter(|s| s.len() == p)
        {
            span.insert(ExteriorElement::monomial(&self.field, s).to_dense(&self.field, cols));
        }
        Ok(span.dim() - j.dim())
    }

    /// Dimensions of `A`, `I^2` and every `Ā_r`, with `φ_3`, `γ_3` and the
    /// two closedness flags, checked by [`OsReport::verify`].
    pub fn report(&self) -> Result<OsReport> {
        let (m, a) = (self.matroid(), self);
        let n = m.n();
        let dims_a = (0..=n).map(|p| a.dim_a(p)).collect();
        let dims_abar = (2..=m.full_rank().max(2))
            .map(|r| (r, (0..=n).map(|p| a.dim_abar(p, r)).collect()))
            .collect();
        let report = OsReport {
            n,
            rank: m.full_rank(),
            field: a.field().spec(),
            dims_a,
            dims_abar,
            dim_i2: if n >= 2 { a.ideal_dim(2) } else { 0 },
            phi3: a.phi3(),
            gamma3: a.gamma3(),
            quadratic: a.is_quadratic(),
            line_closed: lc::is_line_closed(m)?,
        };
        report.verify()?;
        Ok(report)
    }

    /// `dim Ā_X^p` for each line-closed `X` with a nonzero block.
    ///
    /// `J_2` is spanned by the homogeneous elements `e_T ∧ ∂e_C` with `C` a
    /// three-point circuit. Each is checked to be homogeneous before use.
    pub fn lc_grading_dims(&self, p: usize) -> Result<BTreeMap<Subset, usize>> {
        let f = &self.field;
        let mut blocks: BTreeMap<Subset, (usize, EchelonBasis<F>)> = BTreeMap::new();
        if p > self.n() {
            return Ok(BTreeMap::new());
        }
        let cols = &self.bases[p];
        for &s in cols.monomials() {
            let x = line_closure(self.m, s);
            blocks
                .entry(x)
                .or_insert_with(|| (0, EchelonBasis::new(f.clone(), cols.len())))
                .0 += 1;
        }
        if p >= 2 {
            let circuits: Vec<Subset> = self
                .m
                .all_circuits()
                .iter()
                .copied()
                .filter(|c| c.len() == 3)
                .collect();
            for c in circuits {
                let dc = ExteriorElement::monomial(f, c).boundary(f);
                for t in crate::subset::k_subsets(self.n(), p - 2) {
                    if t.intersection(c).len() > 1 {
                        continue;
                    }
                    let g = ExteriorElement::monomial(f, t).wedge(f, &dc);
                    if g.is_zero() {
                        continue;
                    }
                    let x = line_closure(self.m, t.union(c));
                    if let Some(bad) = g.support().find(|&s| line_closure(self.m, s) != x) {
                        return Err(Error::Identity(format!(
                            "generator e_{t} ∧ ∂e_{c} has term {bad} outside block {x}"
                        )));
                    }
                    let block = blocks.get_mut(&x).expect("block of a generator term");
                    block.1.insert(g.to_dense(f, cols));
                }
            }
        }
        Ok(blocks
            .into_iter()
            .filter(|(_, (size, j))| *size > j.dim())
            .map(|(x, (size, j))| (x, size - j.dim()))
            .collect())
    }
}

/// Everything the algebra side reports about one matroid over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OsReport {
    pub n: usize,
    pub rank: usize,
    pub field: FieldSpec,
    /// `dims_a[p] = dim A^p` for `p = 0..=n`.
    pub dims_a: Vec<usize>,
    /// `dims_abar[r][p] = dim Ā_r^p` for `r = 2..=max(2, rk)`, `p = 0..=n`.
    pub dims_abar: BTreeMap<usize, Vec<usize>>,
    pub dim_i2: usize,
    pub phi3: usize,
    pub gamma3: i64,
    pub quadratic: bool,
    pub line_closed: bool,
}

impl OsReport {
    pub fn dim_a(&self, p: usize) -> usize {
        self.dims_a.get(p).copied().unwrap_or(0)
    }

    pub fn dim_abar(&self, r: usize, p: usize) -> Option<usize> {
        self.dims_abar
            .get(&r)
            .map(|d| d.get(p).copied().unwrap_or(0))
    }

    /// Both displayed forms of the `φ_3` identity and `φ_3 − γ_3 = dim Ā^3 − dim A^3`,
    /// plus `quadratic ⟹ line-closed`.
    pub fn verify(&self) -> Result<()> {
        let n = self.n as i64;
        let phi3 = self.phi3 as i64;
        let abar3 = self.dim_abar(2, 3).unwrap_or(0) as i64;
        let a3 = self.dim_a(3) as i64;
        let a2 = self.dim_a(2) as i64;
        let c = |a: usize, b: usize| binomial(a, b) as i64;
        let first = abar3 + n * self.dim_i2 as i64 - c(self.n, 3);
        if phi3 != first {
            return Err(Error::Identity(format!(
                "φ3 = {phi3} but dim Ā³ + n dim I² − C(n,3) = {first}"
            )));
        }
        let second = 2 * c(self.n + 1, 3) - n * a2 + abar3;
        if phi3 != second {
            return Err(Error::Identity(format!(
                "φ3 = {phi3} but 2C(n+1,3) − n dim A² + dim Ā³ = {second}"
            )));
        }
        if phi3 - self.gamma3 != abar3 - a3 {
            return Err(Error::Identity(format!(
                "φ3 − γ3 = {} but dim Ā³ − dim A³ = {}",
                phi3 - self.gamma3,
                abar3 - a3
            )));
        }
        if self.quadratic && !self.line_closed {
            return Err(Error::Identity(
                "quadratic algebra on a matroid that is not line-closed".into(),
            ));
        }
        Ok(())
    }
}

fn report_with<F: Field>(m: &Matroid, field: F) -> Result<OsReport> {
    OsAlgebra::new(m, field)?.report()
}

/// Computes and self-checks the algebra report.
pub fn os_report(m: &Matroid, field: FieldSpec) -> Result<OsReport> {
    with_field!(field, |f| report_with(m, f))
}

pub fn ideal_dim(m: &Matroid, field: FieldSpec, p: usize) -> Result<usize> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.ideal_dim(p)))
}

pub fn ideal_r_dim(m: &Matroid, field: FieldSpec, p: usize, r: usize) -> Result<usize> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.ideal_r_dim(p, r)))
}

pub fn dim_a(m: &Matroid, field: FieldSpec, p: usize) -> Result<usize> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.dim_a(p)))
}

pub fn dim_abar(m: &Matroid, field: FieldSpec, p: usize, r: usize) -> Result<usize> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.dim_abar(p, r)))
}

pub fn phi3(m: &Matroid, field: FieldSpec) -> Result<usize> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.phi3()))
}

pub fn gamma3(m: &Matroid, field: FieldSpec) -> Result<i64> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.gamma3()))
}

pub fn is_quadratic(m: &Matroid, field: FieldSpec) -> Result<bool> {
    with_field!(field, |f| Ok(OsAlgebra::new(m, f)?.is_quadratic()))
}

pub fn nbb_rank_in_abar(
    m: &Matroid,
    field: FieldSpec,
    order: &LinearOrder,
    p: usize,
) -> Result<usize> {
    with_field!(field, |f| OsAlgebra::new(m, f)?.nbb_rank_in_abar(order, p))
}

pub fn lc_grading_dims(m: &Matroid, field: FieldSpec, p: usize) -> Result<BTreeMap<Subset, usize>> {
    with_field!(field, |f| OsAlgebra::new(m, f)?.lc_grading_dims(p))
}
