//! Elements of the exterior algebra `Λ(K^n)` in the monomial basis `e_S`.

use std::collections::{BTreeMap, HashMap};

use crate::field::Field;
use crate::subset::{k_subsets, Subset};

/// A homogeneous element `Σ c_S e_S`. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct ExteriorElement<F: Field> {
    degree: usize,
    terms: BTreeMap<Subset, F::Elem>,
}

impl<F: Field> PartialEq for ExteriorElement<F> {
    fn eq(&self, other: &Self) -> bool {
        (self.degree == other.degree || self.terms.is_empty() && other.terms.is_empty())
            && self.terms == other.terms
    }
}

/// `(-1)^{#{(t, u) ∈ T × U : t > u}}`, the sign of `e_T ∧ e_U = ± e_{T ∪ U}`.
pub fn wedge_sign(t: Subset, u: Subset) -> bool {
    let inversions: usize = u.iter().map(|x| t.iter().filter(|&y| y > x).count()).sum();
    inversions % 2 == 1
}

impl<F: Field> ExteriorElement<F> {
    pub fn zero(degree: usize) -> Self {
        ExteriorElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `e_S` with coefficient 1.
    pub fn monomial(field: &F, s: Subset) -> Self {
        let mut e = ExteriorElement::zero(s.len());
        e.terms.insert(s, field.one());
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Subset, F::Elem> {
        &self.terms
    }

    pub fn coefficient(&self, s: Subset) -> Option<&F::Elem> {
        self.terms.get(&s)
    }

    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        self.terms.keys().copied()
    }

    /// Adds `c · e_S`.
    pub fn add_term(&mut self, field: &F, s: Subset, c: F::Elem) {
        debug_assert_eq!(s.len(), self.degree);
        if field.is_zero(&c) {
            return;
        }
        let sum = match self.terms.get(&s) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&sum) {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, sum);
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(field, *s, c.clone());
        }
        out
    }

    pub fn scale(&self, field: &F, a: &F::Elem) -> Self {
        let mut out = ExteriorElement::zero(self.degree);
        for (s, c) in &self.terms {
            out.add_term(field, *s, field.mul(a, c));
        }
        out
    }

    /// `∂ e_{i_1..i_p} = Σ_k (-1)^(k-1) e_{i_1..î_k..i_p}`, extended linearly.
    pub fn boundary(&self, field: &F) -> Self {
        let mut out = ExteriorElement::zero(self.degree.saturating_sub(1));
        for (s, c) in &self.terms {
            for (k, i) in s.iter().enumerate() {
                let term = if k % 2 == 0 { c.clone() } else { field.neg(c) };
                out.add_term(field, s.remove(i), term);
            }
        }
        out
    }

    pub fn wedge(&self, field: &F, other: &Self) -> Self {
        let mut out = ExteriorElement::zero(self.degree + other.degree);
        for (t, a) in &self.terms {
            for (u, b) in &other.terms {
                if !t.is_disjoint(*u) {
                    continue;
                }
                let ab = field.mul(a, b);
                let c = if wedge_sign(*t, *u) {
                    field.neg(&ab)
                } else {
                    ab
                };
                out.add_term(field, t.union(*u), c);
            }
        }
        out
    }

    /// Dense coordinates against `basis`, the `p`-subsets in lexicographic order.
    pub fn to_dense(&self, field: &F, basis: &MonomialBasis) -> Vec<F::Elem> {
        let mut v = vec![field.zero(); basis.len()];
        for (s, c) in &self.terms {
            v[basis.index(*s)] = c.clone();
        }
        v
    }

    pub fn from_dense(field: &F, basis: &MonomialBasis, v: &[F::Elem]) -> Self {
        let mut e = ExteriorElement::zero(basis.degree());
        for (k, c) in v.iter().enumerate() {
            if !field.is_zero(c) {
                e.terms.insert(basis.monomial(k), c.clone());
            }
        }
        e
    }
}

/// The monomials `e_S`, `|S| = p`, in lexicographic order of `S`: the column
/// order of every echelon basis in degree `p`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: usize,
    monomials: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let monomials: Vec<Subset> = k_subsets(n, p).collect();
        let index = monomials.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        MonomialBasis {
            degree: p,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index(&self, s: Subset) -> usize {
        self.index[&s]
    }

    pub fn monomial(&self, k: usize) -> Subset {
        self.monomials[k]
    }

    pub fn monomials(&self) -> &[Subset] {
        &self.monomials
    }
}
