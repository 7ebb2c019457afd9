//! Full analyses of a matroid, self-checked and rendered as text or JSON.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Expected};
use crate::complex::{self, AllOrdersVerdict};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::formality;
use crate::format;
use crate::lc::{self, LcLattice};
use crate::matroid::Matroid;
use crate::os::{OsAlgebra, OsReport};
use crate::realization::Realization;
use crate::subset::{compact_labels, LinearOrder, Subset};
use crate::with_field;

/// Something to analyze: a catalog entry or a parsed file.
#[derive(Clone, Debug)]
pub struct Target {
    pub name: String,
    pub matroid: Arc<Matroid>,
    pub realization: Option<Realization>,
    pub expected: Option<Expected>,
}

impl Target {
    /// A catalog name, or failing that a path to a file in the text format.
    pub fn resolve(spec: &str) -> Result<Target> {
        match catalog::lookup(spec) {
            Ok(e) => Ok(Target {
                name: e.name,
                matroid: e.matroid,
                realization: e.realization,
                expected: Some(e.expected),
            }),
            Err(Error::UnknownEntry(_)) if Path::new(spec).exists() => Target::from_file(spec),
            Err(e) => Err(e),
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Target> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        let f = format::parse(&text)?;
        let name = f.name.unwrap_or_else(|| {
            path.file_stem().map_or_else(
                || path.display().to_string(),
                |s| s.to_string_lossy().into_owned(),
            )
        });
        Ok(Target {
            name,
            matroid: Arc::new(f.matroid),
            realization: f.realization,
            expected: None,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Orders to report; empty means [`default_orders`].
    pub orders: Vec<LinearOrder>,
    pub all_orders: bool,
    pub field: FieldSpec,
    /// Also report r-closedness and r-nbb sets.
    pub r: Option<usize>,
}

/// The natural order, plus `2,1,3,4,5,6` for the wheel.
pub fn default_orders(name: &str, n: usize) -> Vec<LinearOrder> {
    let mut orders = vec![LinearOrder::natural(n)];
    if name == "wheel3" {
        orders.push(LinearOrder::parse("2,1,3,4,5,6", 6).expect("valid order"));
    }
    orders
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    /// Labels from first to last.
    pub order: Vec<usize>,
    /// Facets sorted under the order, each listed first to last.
    pub nbc_facets: Vec<Vec<usize>>,
    pub nbb_facets: Vec<Vec<usize>>,
    /// Face counts by size, starting with the empty face.
    pub nbc_counts: Vec<usize>,
    pub nbb_counts: Vec<usize>,
    pub nbb_equals_nbc: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_nbb_facets: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RClosedReport {
    pub r: usize,
    pub closed: bool,
    pub witness: Option<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalityReport {
    pub field: FieldSpec,
    pub dim_k: usize,
    pub dim_f: usize,
    pub formal: bool,
    /// Absent when some coordinate vanishes on `F^⊥`.
    pub formalization_rank: Option<usize>,
    pub locally_formal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub os: OsReport,
    pub whitney: Vec<u64>,
    /// Coefficients of `χ(t)`, leading term first.
    pub char_poly: Vec<i64>,
    pub integer_roots: Option<Vec<i64>>,
    pub line_closed_witness: Option<Subset>,
    pub lc_dimension: usize,
    pub lc_sets: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_closed: Option<RClosedReport>,
    pub orders: Vec<OrderReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_orders: Option<AllOrdersVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formality: Option<FormalityReport>,
}

fn identity(msg: String) -> Error {
    Error::Identity(msg)
}

fn order_report<F: Field>(
    a: &OsAlgebra<'_, F>,
    order: &LinearOrder,
    whitney: &[u64],
    r: Option<usize>,
) -> Result<OrderReport> {
    let m = a.matroid();
    let nbc = complex::nbc(m, order)?;
    let nbb = complex::nbb(m, order)?;
    let label = order.label_string();
    for (p, &w) in whitney.iter().enumerate() {
        if nbc.face_count(p) as u64 != w {
            return Err(identity(format!(
                "order {label}: {} nbc sets of size {p} but w_{p} = {w}",
                nbc.face_count(p)
            )));
        }
    }
    if !nbc.is_subcomplex_of(&nbb) {
        return Err(identity(format!(
            "order {label}: nbc is not contained in nbb"
        )));
    }
    for p in 0..nbb.face_counts().len() {
        let rank = a.nbb_rank_in_abar(order, p)?;
        if rank != nbb.face_count(p) {
            return Err(identity(format!(
                "order {label}: {} nbb sets of size {p} span a space of dimension {rank} in Ā",
                nbb.face_count(p)
            )));
        }
    }
    let r_nbb_facets = match r {
        Some(r) => Some(complex::r_nbb(m, order, r)?.facets_under(order)),
        None => None,
    };
    Ok(OrderReport {
        order: order.sequence().iter().map(|e| e + 1).collect(),
        nbc_facets: nbc.facets_under(order),
        nbb_facets: nbb.facets_under(order),
        nbc_counts: nbc.face_counts().to_vec(),
        nbb_counts: nbb.face_counts().to_vec(),
        nbb_equals_nbc: nbc == nbb,
        r_nbb_facets,
    })
}

fn formality_report(r: &Realization) -> Result<FormalityReport> {
    let rs = formality::relation_space(r);
    let formalization_rank = match formality::formalization(r) {
        Ok(f) => Some(f.rank()),
        Err(Error::DegenerateColumn(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(fr) = formalization_rank {
        if rs.is_formal() != (fr == r.rank()) {
            return Err(identity(format!(
                "formal = {} but the formalization has rank {fr} against rank {}",
                rs.is_formal(),
                r.rank()
            )));
        }
    }
    Ok(FormalityReport {
        field: r.field(),
        dim_k: rs.dim_k(),
        dim_f: rs.dim_f(),
        formal: rs.is_formal(),
        formalization_rank,
        locally_formal: formality::is_locally_formal(r)?,
    })
}

fn analyze_with<F: Field>(target: &Target, opts: &AnalyzeOptions, field: F) -> Result<Report> {
    let m: &Matroid = &target.matroid;
    let a = OsAlgebra::new(m, field)?;
    let os = a.report()?;
    let poly = lc::whitney_numbers(m)?;
    let whitney = poly.whitney.clone();
    for p in 0..=m.n() {
        let w = whitney.get(p).copied().unwrap_or(0);
        if os.dim_a(p) as u64 != w {
            return Err(identity(format!(
                "dim A^{p} = {} but w_{p} = {w}",
                os.dim_a(p)
            )));
        }
    }
    let witness = lc::line_closed_witness(m, lc::LineClosedCheck::Bases)?;
    if witness.is_none() != os.line_closed {
        return Err(identity(
            "line-closed flag disagrees with its witness search".into(),
        ));
    }
    let lattice = LcLattice::build(m)?;
    let (lc_dimension, _) = lc::lc_dimension(m)?;

    let orders = if opts.orders.is_empty() {
        default_orders(&target.name, m.n())
    } else {
        opts.orders.clone()
    };
    for o in &orders {
        if o.len() != m.n() {
            return Err(Error::BadOrder(format!(
                "order has {} labels but the matroid has {} points",
                o.len(),
                m.n()
            )));
        }
    }
    let order_reports = orders
        .iter()
        .map(|o| order_report(&a, o, &whitney, opts.r))
        .collect::<Result<Vec<_>>>()?;

    let r_closed = match opts.r {
        Some(r) => {
            let w = lc::r_closed_witness(m, r)?;
            Some(RClosedReport {
                r,
                closed: w.is_none(),
                witness: w,
            })
        }
        None => None,
    };
    let all_orders = if opts.all_orders {
        let v = complex::nbb_equals_nbc_all_orders(m)?;
        if v.equal() != os.line_closed {
            return Err(identity(format!(
                "nbb = nbc for all orders is {} but line-closed is {}",
                v.equal(),
                os.line_closed
            )));
        }
        Some(v)
    } else {
        None
    };
    let formality = target
        .realization
        .as_ref()
        .map(formality_report)
        .transpose()?;

    Ok(Report {
        name: target.name.clone(),
        os,
        char_poly: poly.coefficients(),
        integer_roots: poly.integer_roots(),
        whitney,
        line_closed_witness: witness,
        lc_dimension,
        lc_sets: lattice.len(),
        r_closed,
        orders: order_reports,
        all_orders,
        formality,
    })
}

/// Runs every analysis, verifying the internal identities along the way. A
/// violated identity is reported as [`Error::Identity`].
pub fn analyze(target: &Target, opts: &AnalyzeOptions) -> Result<Report> {
    let report = with_field!(opts.field, |f| analyze_with(target, opts, f))?;
    if let Some(expected) = &target.expected {
        let bad = mismatches(expected, &report);
        if !bad.is_empty() {
            return Err(identity(format!(
                "{} disagrees with its catalog values: {}",
                target.name,
                bad.join("; ")
            )));
        }
    }
    Ok(report)
}

/// Fields of `report` that differ from `expected`.
pub fn mismatches(expected: &Expected, report: &Report) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |what: &str, want: String, got: String| {
        if want != got {
            out.push(format!("{what}: expected {want}, got {got}"));
        }
    };
    let e = expected;
    let os = &report.os;
    if let Some(v) = e.rank {
        check("rank", v.to_string(), os.rank.to_string());
    }
    if let Some(v) = &e.whitney {
        check("whitney", format!("{v:?}"), format!("{:?}", report.whitney));
    }
    if let Some(v) = e.dim_a3 {
        check("dim A^3", v.to_string(), os.dim_a(3).to_string());
    }
    if let Some(v) = e.dim_abar3 {
        check(
            "dim Ā^3",
            v.to_string(),
            format!("{}", os.dim_abar(2, 3).unwrap_or(0)),
        );
    }
    if let Some(v) = e.phi3 {
        check("phi3", v.to_string(), os.phi3.to_string());
    }
    if let Some(v) = e.gamma3 {
        check("gamma3", v.to_string(), os.gamma3.to_string());
    }
    if let Some(v) = e.line_closed {
        check("line_closed", v.to_string(), os.line_closed.to_string());
    }
    if let Some(v) = e.quadratic {
        check("quadratic", v.to_string(), os.quadratic.to_string());
    }
    if let Some(v) = &e.integer_roots {
        check(
            "integer_roots",
            format!("{v:?}"),
            format!("{:?}", report.integer_roots),
        );
    }
    if let Some(v) = &e.nbb_natural {
        let natural: Vec<usize> = (1..=os.n).collect();
        if let Some(o) = report.orders.iter().find(|o| o.order == natural) {
            let got: Vec<String> = o.nbb_facets.iter().map(|f| compact_labels(f)).collect();
            let (mut want, mut got) = (v.clone(), got);
            want.sort();
            got.sort();
            check("natural nbb facets", want.join(","), got.join(","));
        }
    }
    if let Some(fr) = &report.formality {
        if let Some(v) = e.formal {
            check("formal", v.to_string(), fr.formal.to_string());
        }
        if let Some(v) = e.formalization_rank {
            check(
                "formalization rank",
                v.to_string(),
                format!("{:?}", fr.formalization_rank.unwrap_or(0)),
            );
        }
    }
    out
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn facets(v: &[Vec<usize>]) -> String {
    v.iter()
        .map(|f| compact_labels(f))
        .collect::<Vec<_>>()
        .join(" ")
}

fn poly_string(coeffs: &[i64]) -> String {
    let deg = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let e = deg - k;
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let a = c.unsigned_abs();
        let coeff = if a == 1 && e > 0 {
            String::new()
        } else {
            a.to_string()
        };
        match e {
            0 => out.push_str(&coeff),
            1 => {
                let _ = write!(out, "{coeff}t");
            }
            _ => {
                let _ = write!(out, "{coeff}t^{e}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The human-readable rendering. Stable for a given report.
pub fn to_text(report: &Report) -> String {
    let os = &report.os;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "matroid {}: n = {}, rank = {}, field {}",
        report.name, os.n, os.rank, os.field
    );
    let witness = report
        .line_closed_witness
        .map(|w| format!(" (witness {})", w.compact()))
        .unwrap_or_default();
    let _ = writeln!(s, "line-closed: {}{}", yes(os.line_closed), witness);
    let _ = writeln!(s, "quadratic: {}", yes(os.quadratic));
    let _ = writeln!(s, "lc-dimension: {}", report.lc_dimension);
    let _ = writeln!(s, "line-closed sets: {}", report.lc_sets);
    let _ = writeln!(s, "whitney: {}", join(&report.whitney));
    let roots = match &report.integer_roots {
        Some(r) => join(r),
        None => "not all integers".to_string(),
    };
    let _ = writeln!(
        s,
        "chi(t) = {}; roots: {}",
        poly_string(&report.char_poly),
        roots
    );
    let _ = writeln!(s, "dim A: {}", join(&os.dims_a));
    for (r, dims) in &os.dims_abar {
        let _ = writeln!(s, "dim Ā_{r}: {}", join(dims));
    }
    let _ = writeln!(s, "dim I^2: {}", os.dim_i2);
    let _ = writeln!(s, "phi3: {}", os.phi3);
    let _ = writeln!(s, "gamma3: {}", os.gamma3);
    if let Some(rc) = &report.r_closed {
        let w = rc
            .witness
            .map(|w| format!(" (witness {})", w.compact()))
            .unwrap_or_default();
        let _ = writeln!(s, "{}-closed: {}{}", rc.r, yes(rc.closed), w);
    }
    let r = report.r_closed.as_ref().map_or(0, |rc| rc.r);
    for o in &report.orders {
        let _ = writeln!(
            s,
            "order {}:",
            o.order
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(s, "  nbc facets: {}", facets(&o.nbc_facets));
        let _ = writeln!(s, "  nbb facets: {}", facets(&o.nbb_facets));
        let _ = writeln!(s, "  nbc counts: {}", join(&o.nbc_counts));
        let _ = writeln!(s, "  nbb counts: {}", join(&o.nbb_counts));
        let _ = writeln!(s, "  nbb = nbc: {}", yes(o.nbb_equals_nbc));
        if let Some(rf) = &o.r_nbb_facets {
            let _ = writeln!(s, "  {r}-nbb facets: {}", facets(rf));
        }
    }
    if let Some(v) = &report.all_orders {
        let line = match v {
            AllOrdersVerdict::Exhaustive { equal: true, .. } => {
                "equal for every order (exhaustive)".to_string()
            }
            AllOrdersVerdict::Exhaustive { witness, .. } => format!(
                "differ for order {} (exhaustive search)",
                witness.as_deref().map(join).unwrap_or_default()
            ),
            AllOrdersVerdict::Witness { order, set } => {
                format!(
                    "differ for order {} built from {}",
                    join(order),
                    set.compact()
                )
            }
            AllOrdersVerdict::LineClosed => "equal for every order (line-closed)".to_string(),
        };
        let _ = writeln!(s, "nbb vs nbc over all orders: {line}");
    }
    if let Some(f) = &report.formality {
        let fr = f
            .formalization_rank
            .map_or("degenerate".to_string(), |r| r.to_string());
        let _ = writeln!(
            s,
            "formality over {}: dim K = {}, dim F = {}, formal: {}, formalization rank: {}, locally formal: {}",
            f.field,
            f.dim_k,
            f.dim_f,
            yes(f.formal),
            fr,
            yes(f.locally_formal)
        );
    }
    s
}
