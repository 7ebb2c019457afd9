use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use oscalc::catalog;
use oscalc::complex;
use oscalc::formality;
use oscalc::format;
use oscalc::report::{self, AnalyzeOptions, Target};
use oscalc::subset::compact_labels;
use oscalc::{Error, FieldSpec, LinearOrder};

#[derive(Parser)]
#[command(
    name = "oscalc",
    version,
    about = "Line-closure, nbb sets and Orlik-Solomon algebras of simple matroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse the built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Full report for catalog names or matroid files, analyzed concurrently.
    Analyze {
        #[arg(required = true)]
        targets: Vec<String>,
        /// Linear order as labels from first to last, e.g. 2,1,3,4,5,6. Repeatable.
        #[arg(long = "order")]
        orders: Vec<String>,
        /// Decide whether nbb = nbc for every linear order.
        #[arg(long)]
        all_orders: bool,
        /// q or gf:<p>
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        /// Also report r-closedness and r-nbb facets.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Facets of the nbc complex under an order.
    Nbc {
        target: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Facets of the nbb complex under an order.
    Nbb {
        target: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Relation spaces of a realization.
    Formal {
        target: String,
        /// Write the formalization to this path in the matrix format.
        #[arg(long)]
        emit_formalization: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

fn exit_code(e: &Error) -> u8 {
    if e.is_identity_violation() {
        2
    } else {
        1
    }
}

fn order_for(spec: Option<&str>, n: usize) -> Result<LinearOrder, Error> {
    spec.map_or(Ok(LinearOrder::natural(n)), |s| LinearOrder::parse(s, n))
}

fn catalog_list() -> Result<String, Error> {
    let mut out = String::new();
    for e in catalog::catalog()? {
        let m = &e.matroid;
        out.push_str(&format!(
            "{:<14} n={:<2} rank={} {}\n",
            e.name,
            m.n(),
            m.full_rank(),
            e.description
        ));
    }
    Ok(out)
}

fn catalog_show(name: &str) -> Result<String, Error> {
    let e = catalog::lookup(name)?;
    let mut out = format!("# {}\n", e.description);
    out.push_str(&format::emit_matroid(&e.name, &e.matroid)?);
    if let Some(r) = &e.realization {
        if !matches!(e.matroid.presentation(), oscalc::Presentation::Matrix(_)) {
            out.push_str("# realization\n");
            for line in format::emit_realization(&e.name, r).lines() {
                out.push_str(&format!("# {line}\n"));
            }
        }
    }
    Ok(out)
}

fn analyze(
    targets: &[String],
    orders: &[String],
    opts: AnalyzeOptions,
    json: bool,
) -> (String, Vec<(String, Error)>) {
    let results: Vec<Result<report::Report, Error>> = targets
        .par_iter()
        .map(|t| {
            let target = Target::resolve(t)?;
            let n = target.matroid.n();
            let parsed = orders
                .iter()
                .map(|o| LinearOrder::parse(o, n))
                .collect::<Result<Vec<_>, _>>()?;
            let opts = AnalyzeOptions {
                orders: parsed,
                ..opts.clone()
            };
            report::analyze(&target, &opts)
        })
        .collect();
    let mut failures = Vec::new();
    let mut reports = Vec::new();
    for (t, r) in targets.iter().zip(results) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => failures.push((t.clone(), e)),
        }
    }
    let out = if json {
        if targets.len() == 1 {
            reports.first().map(report::to_json).unwrap_or_default()
        } else {
            let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
            s.push('\n');
            s
        }
    } else {
        reports
            .iter()
            .map(report::to_text)
            .collect::<Vec<_>>()
            .join("\n")
    };
    (out, failures)
}

fn complex_facets(target: &str, order: Option<&str>, nbb: bool) -> Result<String, Error> {
    let t = Target::resolve(target)?;
    let order = order_for(order, t.matroid.n())?;
    let c = if nbb {
        complex::nbb(&t.matroid, &order)?
    } else {
        complex::nbc(&t.matroid, &order)?
    };
    let mut out = String::new();
    for f in c.facets_under(&order) {
        out.push_str(&compact_labels(&f));
        out.push('\n');
    }
    Ok(out)
}

fn formal(target: &str, emit: Option<&PathBuf>) -> Result<String, Error> {
    let t = Target::resolve(target)?;
    let r = t.realization.ok_or(Error::NotMatrix)?;
    let rs = formality::relation_space(&r);
    let mut out = format!(
        "dim K: {}\ndim F: {}\nformal: {}\n",
        rs.dim_k(),
        rs.dim_f(),
        if rs.is_formal() { "yes" } else { "no" }
    );
    if let Some(path) = emit {
        let fz = formality::formalization(&r)?;
        out.push_str(&format!("formalization rank: {}\n", fz.rank()));
        std::fs::write(
            path,
            format::emit_realization(&format!("{}-formalization", t.name), &fz),
        )
        .map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => catalog_list(),
        Command::Catalog {
            action: CatalogAction::Show { name },
        } => catalog_show(name),
        Command::Analyze {
            targets,
            orders,
            all_orders,
            field,
            r,
            json,
        } => {
            let opts = AnalyzeOptions {
                orders: Vec::new(),
                all_orders: *all_orders,
                field: *field,
                r: *r,
            };
            let (out, failures) = analyze(targets, orders, opts, *json);
            print!("{out}");
            let mut code = 0;
            for (t, e) in &failures {
                eprintln!("error: {t}: {e}");
                code = code.max(exit_code(e));
            }
            return ExitCode::from(code);
        }
        Command::Nbc { target, order } => complex_facets(target, order.as_deref(), false),
        Command::Nbb { target, order } => complex_facets(target, order.as_deref(), true),
        Command::Formal {
            target,
            emit_formalization,
        } => formal(target, emit_formalization.as_ref()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
