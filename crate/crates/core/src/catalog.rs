//! Built-in example matroids and realizations with their known invariants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::formality::generic_section;
use crate::matroid::{dual_realization, incidence_matrix, Matroid};
use crate::os::binomial;
use crate::realization::Realization;
use crate::subset::Subset;

/// Seed for the rank-3 section of the `K_{3,3}` cographic arrangement.
pub const K33_SECTION_SEED: u64 = 3;

/// Values a computed report must reproduce. Absent fields are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub rank: Option<usize>,
    pub whitney: Option<Vec<u64>>,
    pub dim_a3: Option<usize>,
    pub dim_abar3: Option<usize>,
    pub phi3: Option<usize>,
    pub gamma3: Option<i64>,
    pub line_closed: Option<bool>,
    pub quadratic: Option<bool>,
    /// `Some(None)` means the characteristic polynomial must not split over Z.
    pub integer_roots: Option<Option<Vec<i64>>>,
    /// nbb facets under the natural order, as compact label strings.
    pub nbb_natural: Option<Vec<String>>,
    pub formal: Option<bool>,
    pub formalization_rank: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub matroid: Arc<Matroid>,
    pub realization: Option<Realization>,
    pub expected: Expected,
}

impl CatalogEntry {
    fn new(
        name: &str,
        description: &str,
        matroid: Matroid,
        realization: Option<Realization>,
    ) -> Self {
        CatalogEntry {
            name: name.to_string(),
            description: description.to_string(),
            matroid: Arc::new(matroid),
            realization,
            expected: Expected::default(),
        }
    }

    fn expect(mut self, f: impl FnOnce(&mut Expected)) -> Self {
        f(&mut self.expected);
        self
    }
}

/// The names [`catalog`] returns, in order.
pub const NAMES: [&str; 9] = [
    "wheel3",
    "yuz8",
    "nonfano",
    "x2",
    "k33graphic",
    "k33dual",
    "k33dual-trunc",
    "boolean:4",
    "uniform:3,5",
];

/// Every named entry plus one instance of each parametrized family.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    NAMES.iter().map(|name| lookup(name)).collect()
}

fn lines(n: usize, lines: &[&str]) -> Result<Matroid> {
    Matroid::from_lines(n, lines.iter().map(|s| Subset::digits(s)).collect())
}

fn integer_matrix(rows: &[&[i64]]) -> Result<Realization> {
    Realization::from_integers(
        FieldSpec::Rational,
        &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    )
}

/// Columns `z, x+y, x-y, x+z, x-z, y+z, y-z`: the non-Fano plane over Q.
pub fn nonfano_realization() -> Realization {
    integer_matrix(&[
        &[0, 1, 1, 1, 1, 0, 0],
        &[0, 1, -1, 0, 0, 1, 1],
        &[1, 0, 0, 1, -1, 1, -1],
    ])
    .expect("valid matrix")
}

/// Columns `z, x+z, x-z, y+z, y-z, x+y+2z, x+y-2z`: the parallel arrangement X2.
pub fn x2_realization() -> Realization {
    integer_matrix(&[
        &[0, 1, 1, 0, 0, 1, 1],
        &[0, 0, 0, 1, 1, 1, 1],
        &[1, 1, -1, 1, -1, 2, -2],
    ])
    .expect("valid matrix")
}

/// Edges of `K_{3,3}` with parts `{1,2,3}` and `{4,5,6}`, ordered
/// `14 15 16 24 25 26 34 35 36`.
pub fn k33_edges() -> Vec<(usize, usize)> {
    (1..=3).flat_map(|a| (4..=6).map(move |b| (a, b))).collect()
}

pub fn k33_realization() -> Realization {
    incidence_matrix(6, &k33_edges()).expect("valid graph")
}

pub fn k33_dual_realization() -> Realization {
    dual_realization(&k33_realization()).expect("K33 is 3-connected")
}

/// Looks up a named entry or a `boolean:<n>` / `uniform:<r>,<n>` family member.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownEntry(name.to_string());
    let entry = match name {
        "wheel3" => CatalogEntry::new(
            "wheel3",
            "three lines forming a triangle",
            lines(6, &["123", "345", "156"])?,
            None,
        )
        .expect(|e| {
            e.rank = Some(3);
            e.whitney = Some(vec![1, 6, 12, 7]);
            e.line_closed = Some(false);
            e.quadratic = Some(false);
            e.nbb_natural = Some(
                ["1246", "125", "134", "135", "136"]
                    .map(String::from)
                    .to_vec(),
            );
        }),
        "yuz8" => CatalogEntry::new(
            "yuz8",
            "eight points on five lines, line-closed but not quadratic",
            lines(8, &["123", "148", "257", "3678", "456"])?,
            None,
        )
        .expect(|e| {
            e.rank = Some(3);
            e.whitney = Some(vec![1, 8, 21, 14]);
            e.dim_a3 = Some(14);
            e.dim_abar3 = Some(16);
            e.phi3 = Some(16);
            e.line_closed = Some(true);
            e.quadratic = Some(false);
        }),
        "nonfano" => {
            let r = nonfano_realization();
            CatalogEntry::new(
                "nonfano",
                "the non-Fano plane over Q",
                Matroid::from_matrix(r.clone())?,
                Some(r),
            )
            .expect(|e| {
                e.rank = Some(3);
                e.whitney = Some(vec![1, 7, 15, 9]);
                e.line_closed = Some(false);
                e.quadratic = Some(false);
                e.integer_roots = Some(Some(vec![1, 3, 3]));
                e.formal = Some(true);
                e.formalization_rank = Some(3);
            })
        }
        "x2" => {
            let r = x2_realization();
            CatalogEntry::new(
                "x2",
                "the parallel arrangement X2",
                Matroid::from_matrix(r.clone())?,
                Some(r),
            )
            .expect(|e| {
                e.rank = Some(3);
                e.line_closed = Some(true);
                e.quadratic = Some(true);
                e.integer_roots = Some(None);
                e.formal = Some(true);
                e.formalization_rank = Some(3);
            })
        }
        "k33graphic" => {
            let r = k33_realization();
            CatalogEntry::new(
                "k33graphic",
                "cycle matroid of K_{3,3}",
                Matroid::from_matrix(r.clone())?,
                Some(r),
            )
            .expect(|e| {
                e.rank = Some(5);
                // no triangles, so no relations of weight three
                e.formal = Some(false);
                e.formalization_rank = Some(9);
            })
        }
        "k33dual" => {
            let r = k33_dual_realization();
            CatalogEntry::new(
                "k33dual",
                "bond matroid of K_{3,3}",
                Matroid::from_matrix(r.clone())?,
                Some(r),
            )
            .expect(|e| e.rank = Some(4))
        }
        "k33dual-trunc" => {
            let r = generic_section(&k33_dual_realization(), 3, K33_SECTION_SEED)?;
            CatalogEntry::new(
                "k33dual-trunc",
                "generic plane section of the K_{3,3} bond arrangement",
                Matroid::from_matrix(r.clone())?,
                Some(r),
            )
            .expect(|e| {
                e.rank = Some(3);
                e.formal = Some(false);
                e.formalization_rank = Some(4);
            })
        }
        _ => {
            if let Some(arg) = name.strip_prefix("boolean:") {
                let n: usize = arg.trim().parse().map_err(|_| unknown())?;
                let m = Matroid::boolean(n)?;
                CatalogEntry::new(
                    name,
                    "the free matroid U_{n,n}",
                    m,
                    Some(Realization::identity(n)),
                )
                .expect(|e| {
                    e.rank = Some(n);
                    e.whitney = Some((0..=n).map(|p| binomial(n, p) as u64).collect());
                    e.phi3 = Some(0);
                    e.gamma3 = Some(0);
                    e.line_closed = Some(true);
                    e.quadratic = Some(true);
                    e.formal = Some(true);
                })
            } else if let Some(arg) = name.strip_prefix("uniform:") {
                let (r, n) = arg.split_once(',').ok_or_else(unknown)?;
                let r: usize = r.trim().parse().map_err(|_| unknown())?;
                let n: usize = n.trim().parse().map_err(|_| unknown())?;
                if r > n {
                    return Err(Error::RankOutOfRange { r, max: n });
                }
                let m = Matroid::uniform(r, n)?;
                let real = Realization::vandermonde(r, n)?;
                CatalogEntry::new(name, "the uniform matroid U_{r,n}", m, Some(real)).expect(|e| {
                    e.rank = Some(r);
                    let mut w: Vec<u64> = (0..r).map(|p| binomial(n, p) as u64).collect();
                    // the top Whitney number makes χ(1) vanish
                    let alt: i64 = w
                        .iter()
                        .enumerate()
                        .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
                        .sum();
                    w.push(alt.unsigned_abs());
                    e.whitney = Some(w);
                    // a single line is line-closed; otherwise no lines at all
                    e.line_closed = Some(r <= 2 || r == n);
                    e.quadratic = Some(r <= 2 || r == n);
                })
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let w = lookup("wheel3").unwrap();
        assert_eq!(w.matroid.n(), 6);
        assert!(w
            .matroid
            .same_as(&lines(6, &["123", "345", "156"]).unwrap()));
        assert!(lookup("boolean:4")
            .unwrap()
            .matroid
            .same_as(&Matroid::boolean(4).unwrap()));
        assert!(lookup("uniform:3,5")
            .unwrap()
            .matroid
            .same_as(&Matroid::uniform(3, 5).unwrap()));
        assert!(matches!(lookup("nope"), Err(Error::UnknownEntry(_))));
        assert!(matches!(lookup("boolean:x"), Err(Error::UnknownEntry(_))));
        assert!(matches!(
            lookup("uniform:5,3"),
            Err(Error::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn realizations_match_presentations() {
        for e in catalog().unwrap() {
            if let Some(r) = &e.realization {
                let from_r = Matroid::from_matrix(r.clone()).unwrap();
                assert!(from_r.same_as(&e.matroid), "{}", e.name);
            }
        }
    }

    #[test]
    fn nonfano_lines() {
        // columns 1..7 are z, x+y, x-y, x+z, x-z, y+z, y-z
        let m = Matroid::from_matrix(nonfano_realization()).unwrap();
        let want = lines(7, &["145", "167", "247", "256", "346", "357"]).unwrap();
        assert!(m.same_as(&want));
    }

    #[test]
    fn k33_section_is_the_truncation() {
        let dual = Arc::new(Matroid::from_matrix(k33_dual_realization()).unwrap());
        let t = lookup("k33dual-trunc").unwrap();
        assert!(t.matroid.same_as(&dual.truncation(3).unwrap()));
    }
}
