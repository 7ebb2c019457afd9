//! Simple matroids given by a rank oracle.

mod lattice;

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Rationals};
use crate::linalg;
use crate::memo::Memo;
use crate::realization::Realization;
use crate::subset::{k_subsets, Subset, MAX_POINTS};
use crate::with_field;

pub use lattice::FlatLattice;

/// Default ceiling on the ground set size for anything that enumerates subsets.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

/// Environment variable that raises (or lowers) the enumeration limit.
pub const MAX_N_ENV: &str = "OSCALC_MAX_N";

/// The enumeration limit in effect: `OSCALC_MAX_N` if set, else 14.
pub fn enumeration_limit() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}

pub(crate) fn check_guard(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        return Err(Error::TooLarge(n));
    }
    let limit = enumeration_limit();
    if n > limit {
        return Err(Error::GuardExceeded { n, limit });
    }
    Ok(())
}

/// How the rank oracle is backed.
#[derive(Clone, Debug)]
pub enum Presentation {
    /// Rank 3: listed lines of three or more points, everything else generic.
    Lines(Vec<Subset>),
    /// Independent sets are those containing no listed circuit.
    Circuits(Vec<Subset>),
    Matrix(Realization),
    Truncation {
        base: Arc<Matroid>,
        rank: usize,
    },
    /// Restriction to `ground`, whose members are relabeled `0..` in order.
    Restriction {
        base: Arc<Matroid>,
        ground: Subset,
    },
}

/// A simple matroid on `{0, .., n-1}`. Immutable; oracle answers are memoized.
#[derive(Debug)]
pub struct Matroid {
    n: usize,
    presentation: Presentation,
    rank_memo: Memo,
    closure_memo: Memo,
    lc_memo: Memo,
    circuits: OnceLock<Vec<Subset>>,
    ground_map: Vec<usize>,
    full_rank: usize,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid::assemble(self.n, self.presentation.clone())
    }
}

impl Matroid {
    fn assemble(n: usize, presentation: Presentation) -> Self {
        let ground_map = match &presentation {
            Presentation::Restriction { ground, .. } => ground.iter().collect(),
            _ => Vec::new(),
        };
        let mut m = Matroid {
            n,
            presentation,
            rank_memo: Memo::new(n),
            closure_memo: Memo::new(n),
            lc_memo: Memo::new(n),
            circuits: OnceLock::new(),
            ground_map,
            full_rank: 0,
        };
        m.full_rank = m.rank(Subset::full(n));
        m
    }

    fn check_simple(self) -> Result<Self> {
        for i in 0..self.n {
            if self.rank(Subset::singleton(i)) != 1 {
                return Err(Error::NotSimple(format!("point {} is a loop", i + 1)));
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.rank(Subset::from_elems([i, j])) != 2 {
                    return Err(Error::NotSimple(format!(
                        "points {} and {} are parallel",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(self)
    }

    /// A rank-3 matroid from its nontrivial lines.
    pub fn from_lines(n: usize, lines: Vec<Subset>) -> Result<Self> {
        check_guard(n)?;
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        let full = Subset::full(n);
        for &l in &lines {
            if let Some(bad) = l.difference(full).first() {
                return Err(Error::LabelOutOfRange { label: bad + 1, n });
            }
            if l.len() < 3 {
                return Err(Error::ShortLine(l));
            }
        }
        for (a, &l1) in lines.iter().enumerate() {
            for &l2 in &lines[a + 1..] {
                if l1.intersection(l2).len() >= 2 {
                    return Err(Error::LinesOverlap(l1, l2));
                }
            }
        }
        let mut lines = lines;
        lines.sort();
        lines.dedup();
        Matroid::assemble(n, Presentation::Lines(lines)).check_simple()
    }

    /// A matroid from its full list of circuits. The circuit axioms are
    /// checked pairwise when `n <= 12`.
    pub fn from_circuits(n: usize, circuits: Vec<Subset>) -> Result<Self> {
        check_guard(n)?;
        let full = Subset::full(n);
        let mut circuits = circuits;
        circuits.sort();
        circuits.dedup();
        for &c in &circuits {
            if let Some(bad) = c.difference(full).first() {
                return Err(Error::LabelOutOfRange { label: bad + 1, n });
            }
            if c.len() <= 2 {
                return Err(Error::NotSimple(format!(
                    "circuit {c} has at most two points"
                )));
            }
        }
        for &c1 in &circuits {
            for &c2 in &circuits {
                if c1 != c2 && c2.is_subset(c1) {
                    return Err(Error::NestedCircuits(c1, c2));
                }
            }
        }
        if n <= 12 {
            for (a, &c1) in circuits.iter().enumerate() {
                for &c2 in &circuits[a + 1..] {
                    let union = c1.union(c2);
                    for e in c1.intersection(c2).iter() {
                        let rest = union.remove(e);
                        if !circuits.iter().any(|c3| c3.is_subset(rest)) {
                            return Err(Error::EliminationFails(c1, c2, e + 1));
                        }
                    }
                }
            }
        }
        Matroid::assemble(n, Presentation::Circuits(circuits)).check_simple()
    }

    /// The matroid of the columns of `realization`.
    pub fn from_matrix(realization: Realization) -> Result<Self> {
        let n = realization.n();
        check_guard(n)?;
        if let Some(c) = realization.has_zero_column() {
            return Err(Error::NotSimple(format!(
                "point {} is a loop (zero column)",
                c + 1
            )));
        }
        Matroid::assemble(n, Presentation::Matrix(realization)).check_simple()
    }

    /// The cycle matroid of a simple graph on vertices `1..=vertices`, with
    /// edges given as 1-based vertex pairs. Backed by the signed incidence
    /// matrix over Q, oriented from the smaller vertex (+1) to the larger (-1).
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Matroid::from_matrix(incidence_matrix(vertices, edges)?)
    }

    /// The uniform matroid `U_{r,n}` (`r >= 2`), backed by its circuits.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r < 2 && n >= 2 {
            return Err(Error::NotSimple(format!(
                "U_{{{r},{n}}} has parallel points"
            )));
        }
        check_guard(n)?;
        let circuits = if r >= n {
            Vec::new()
        } else {
            k_subsets(n, r + 1).collect()
        };
        Matroid::from_circuits(n, circuits)
    }

    /// The free matroid `U_{n,n}`.
    pub fn boolean(n: usize) -> Result<Self> {
        Matroid::from_circuits(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn realization(&self) -> Option<&Realization> {
        match &self.presentation {
            Presentation::Matrix(r) => Some(r),
            _ => None,
        }
    }

    /// `rk(G)`.
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    pub fn rank(&self, s: Subset) -> usize {
        self.rank_memo
            .get_or_insert_with(s.bits(), || self.compute_rank(s) as u64) as usize
    }

    fn compute_rank(&self, s: Subset) -> usize {
        match &self.presentation {
            Presentation::Lines(lines) => match s.len() {
                0..=2 => s.len(),
                _ if lines.iter().any(|l| s.is_subset(*l)) => 2,
                _ => 3,
            },
            Presentation::Circuits(circuits) => {
                let mut indep = Subset::EMPTY;
                for e in s.iter() {
                    let t = indep.insert(e);
                    if !circuits.iter().any(|c| c.is_subset(t)) {
                        indep = t;
                    }
                }
                indep.len()
            }
            Presentation::Matrix(r) => r.column_rank(s),
            Presentation::Truncation { base, rank } => base.rank(s).min(*rank),
            Presentation::Restriction { base, .. } => {
                base.rank(s.iter().map(|e| self.ground_map[e]).collect())
            }
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.len()
    }

    /// `cl(S) = { i : rk(S ∪ {i}) = rk(S) }`.
    pub fn closure(&self, s: Subset) -> Subset {
        let bits = self.closure_memo.get_or_insert_with(s.bits(), || {
            let r = self.rank(s);
            let cl: Subset = (0..self.n)
                .filter(|&i| self.rank(s.insert(i)) == r)
                .collect();
            cl.bits() as u64
        });
        Subset::from_bits(bits as u32)
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    pub(crate) fn lc_memo(&self) -> &Memo {
        &self.lc_memo
    }

    /// All circuits of size at most `max_size` (default `rk + 1`), in
    /// lexicographic order.
    pub fn circuits(&self, max_size: Option<usize>) -> Result<Vec<Subset>> {
        check_guard(self.n)?;
        let max = max_size.unwrap_or(self.full_rank + 1);
        Ok(self
            .all_circuits()
            .iter()
            .copied()
            .filter(|c| c.len() <= max)
            .collect())
    }

    pub(crate) fn all_circuits(&self) -> &[Subset] {
        self.circuits.get_or_init(|| {
            let mut out = Vec::new();
            for k in 1..=(self.full_rank + 1).min(self.n) {
                out.extend(k_subsets(self.n, k).filter(|&s| {
                    self.rank(s) == k - 1 && s.iter().all(|e| self.rank(s.remove(e)) == k - 1)
                }));
            }
            out.sort();
            out
        })
    }

    /// Bases of the flat (or any set) `x`: maximal independent subsets.
    pub fn bases_of(&self, x: Subset) -> impl Iterator<Item = Subset> + '_ {
        let r = self.rank(x);
        let elems: Vec<usize> = x.iter().collect();
        use itertools::Itertools;
        elems
            .into_iter()
            .combinations(r)
            .map(Subset::from_elems)
            .filter(move |&b| self.rank(b) == r)
    }

    pub fn bases(&self) -> impl Iterator<Item = Subset> + '_ {
        self.bases_of(self.ground())
    }

    pub fn flats(&self) -> Result<FlatLattice> {
        check_guard(self.n)?;
        Ok(FlatLattice::build(self))
    }

    /// Every set of size greater than `r` becomes dependent.
    pub fn truncation(self: &Arc<Self>, r: usize) -> Result<Matroid> {
        if r < 1 || r > self.full_rank {
            return Err(Error::RankOutOfRange {
                r,
                max: self.full_rank,
            });
        }
        Matroid::assemble(
            self.n,
            Presentation::Truncation {
                base: Arc::clone(self),
                rank: r,
            },
        )
        .check_simple()
    }

    /// The dual of a matrix-presented matroid, realized by a kernel basis.
    pub fn dual(&self) -> Result<Matroid> {
        let r = self.realization().ok_or(Error::NotMatrix)?;
        Matroid::from_matrix(dual_realization(r)?)
    }

    /// The restriction to a flat, relabeled in increasing order.
    pub fn restriction(self: &Arc<Self>, x: Subset) -> Result<Matroid> {
        if !x.is_subset(self.ground()) || !self.is_flat(x) {
            return Err(Error::NotFlat(x));
        }
        Ok(Matroid::assemble(
            x.len(),
            Presentation::Restriction {
                base: Arc::clone(self),
                ground: x,
            },
        ))
    }

    /// Ranks of all `2^n` subsets, indexed by bit mask.
    pub fn rank_table(&self) -> Vec<u8> {
        (0..1u64 << self.n)
            .map(|b| self.rank(Subset::from_bits(b as u32)) as u8)
            .collect()
    }

    /// Same ground set and identical rank function.
    pub fn same_as(&self, other: &Matroid) -> bool {
        self.n == other.n && self.rank_table() == other.rank_table()
    }

    /// Exhaustive check of the rank axioms: normalization, unit increase,
    /// monotonicity and submodularity. Returns a description of the first
    /// violation.
    pub fn check_rank_axioms(&self) -> std::result::Result<(), String> {
        let size = 1u32 << self.n;
        if self.rank(Subset::EMPTY) != 0 {
            return Err("rank of the empty set is not 0".into());
        }
        for b in 0..size {
            let s = Subset::from_bits(b);
            let r = self.rank(s);
            if r > s.len() {
                return Err(format!("rank({s}) = {r} exceeds its size"));
            }
            for i in 0..self.n {
                if !s.contains(i) {
                    let ri = self.rank(s.insert(i));
                    if ri < r || ri > r + 1 {
                        return Err(format!(
                            "adding {} to {s} changes rank by {}",
                            i + 1,
                            ri as i64 - r as i64
                        ));
                    }
                }
            }
        }
        for a in 0..size {
            for b in a..size {
                let (s, t) = (Subset::from_bits(a), Subset::from_bits(b));
                if self.rank(s.union(t)) + self.rank(s.intersection(t))
                    > self.rank(s) + self.rank(t)
                {
                    return Err(format!("submodularity fails for {s} and {t}"));
                }
            }
        }
        Ok(())
    }
}

/// The signed vertex-edge incidence matrix of a simple graph (1-based input).
pub fn incidence_matrix(vertices: usize, edges: &[(usize, usize)]) -> Result<Realization> {
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = vec![vec![Rationals.zero(); edges.len()]; vertices];
    for (k, &(u, v)) in edges.iter().enumerate() {
        for w in [u, v] {
            if w == 0 || w > vertices {
                return Err(Error::LabelOutOfRange {
                    label: w,
                    n: vertices,
                });
            }
        }
        if u == v {
            return Err(Error::NotSimple(format!("graph loop at vertex {u}")));
        }
        let (tail, head) = (u.min(v), u.max(v));
        if !seen.insert((tail, head)) {
            return Err(Error::NotSimple(format!("repeated edge {tail}-{head}")));
        }
        rows[tail - 1][k] = Rationals.from_i64(1);
        rows[head - 1][k] = Rationals.from_i64(-1);
    }
    Realization::with_columns(FieldSpec::Rational, edges.len(), rows)
}

/// A realization of the dual matroid: the rows span the kernel of `r`.
pub fn dual_realization(r: &Realization) -> Result<Realization> {
    let rows: Vec<Vec<BigRational>> = with_field!(r.field(), |f| {
        let ker = linalg::kernel(&f, r.n(), &r.typed_rows(&f));
        ker.iter()
            .map(|v| v.iter().map(|x| f.to_rational(x)).collect())
            .collect()
    });
    Realization::with_columns(r.field(), r.n(), rows)
}
