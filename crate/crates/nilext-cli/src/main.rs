//! `nilext`: command-line analysis of nilpotent Lie algebras.
//!
//! Exit status: 0 on success, 1 when the analysis cannot be carried out,
//! 2 for unreadable or invalid input.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nilext::catalog::{catalog_entries, catalog_lookup, Provenance};
use nilext::derivations::{derivation_space, is_characteristically_nilpotent};
use nilext::error::Error;
use nilext::extensions::{attained_extension_rank, solvable_extension_bound};
use nilext::format::{parse_algebra_text, parse_table_unchecked, serialize_algebra};
use nilext::levi::{build_characteristic_flag, levi_screen, FactorChoice, ScreenOptions};
use nilext::matrix::Matrix;
use nilext::report::{build_report, render_report, FlagSummary, Format};
use nilext::scalar::Scalar;
use nilext::series::{characteristic_series, SeriesKind};
use nilext::table::{render_vector, validate_lie_algebra, StructureTable, Validation};

#[derive(Parser)]
#[command(
    name = "nilext",
    version,
    about = "Exact analysis of nilpotent Lie algebras given by structure constants"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Weight distributions tried per irrep assignment before a screen gives up.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_distributions: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, extension bound and characteristic flag.
    Info { source: String },
    /// Terms of a characteristic series.
    Series {
        source: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// The derivation algebra.
    Derivations { source: String },
    /// Upper bound on non-nilpotent elements in a solvable extension.
    Bound { source: String },
    /// The longest chain of characteristic ideals found.
    Flag { source: String },
    /// Levi-extension obstruction screens.
    Screen {
        /// Catalog id or file; omit with --all.
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        source: Option<String>,
        /// Screen every built-in catalog entry.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = FactorArg::All)]
        factor: FactorArg,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Validate an algebra file and report every Jacobi violation.
    Check { file: String },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Derived,
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorArg {
    Sl2,
    So3,
    All,
}

impl From<FactorArg> for FactorChoice {
    fn from(f: FactorArg) -> Self {
        match f {
            FactorArg::Sl2 => FactorChoice::Sl2,
            FactorArg::So3 => FactorChoice::So3,
            FactorArg::All => FactorChoice::All,
        }
    }
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 2, message }
}

struct Loaded {
    name: String,
    table: StructureTable<Scalar>,
    provenance: Provenance,
    note: String,
}

/// A readable path is parsed as a file; anything else is a catalog id.
fn load(source: &str) -> Result<Loaded, Failure> {
    if Path::new(source).is_file() {
        let text =
            std::fs::read_to_string(source).map_err(|e| input_failure(format!("{source}: {e}")))?;
        let table =
            parse_algebra_text(&text).map_err(|e| input_failure(format!("{source}: {e}")))?;
        return Ok(Loaded {
            name: source.to_string(),
            table,
            provenance: Provenance::External,
            note: format!("loaded from {source}"),
        });
    }
    let entry = catalog_lookup(source)?;
    Ok(Loaded {
        name: entry.id,
        table: entry.table,
        provenance: entry.provenance,
        note: entry.source_note,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes")
}

fn format_of(cli: &Cli) -> Format {
    if cli.json {
        Format::Json
    } else {
        Format::Text
    }
}

fn render_matrix(m: &Matrix<Scalar>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

fn info(cli: &Cli, source: &str) -> Result<String, Failure> {
    let a = load(source)?;
    let mut report = build_report(&a.name, &a.table, None);
    report
        .annotations
        .insert(0, format!("provenance {}: {}", a.provenance, a.note));
    Ok(render_report(&report, format_of(cli)))
}

#[derive(Serialize)]
struct SeriesOut {
    algebra: String,
    kind: SeriesKind,
    dims: Vec<usize>,
    terms: Vec<Vec<String>>,
    reaches_end: bool,
}

fn series(cli: &Cli, source: &str, kind: KindArg) -> Result<String, Failure> {
    let a = load(source)?;
    let kind = match kind {
        KindArg::Derived => SeriesKind::Derived,
        KindArg::Lower => SeriesKind::LowerCentral,
        KindArg::Upper => SeriesKind::UpperCentral,
    };
    let chain = characteristic_series(&a.table, kind);
    let reaches_end = match kind {
        SeriesKind::Derived => chain.is_solvable(),
        _ => chain.is_nilpotent(),
    };
    let out = SeriesOut {
        algebra: a.name,
        kind,
        dims: chain.dims(),
        terms: chain
            .terms
            .iter()
            .map(|t| t.basis().iter().map(|v| render_vector(v)).collect())
            .collect(),
        reaches_end,
    };
    if cli.json {
        return Ok(to_json(&out));
    }
    let mut s = format!("{} series of {}\n", kind.name(), out.algebra);
    for (k, (d, basis)) in out.dims.iter().zip(&out.terms).enumerate() {
        let span = if basis.is_empty() {
            "0".to_string()
        } else {
            format!("span{{{}}}", basis.join(", "))
        };
        let _ = writeln!(s, "  term {}  dim {d}  {span}", k + 1);
    }
    let _ = writeln!(
        s,
        "{}",
        if reaches_end {
            "stabilises at the end value"
        } else {
            "stabilises early"
        }
    );
    Ok(s)
}

#[derive(Serialize)]
struct DerivationsOut {
    algebra: String,
    dim: usize,
    inner: usize,
    outer: usize,
    characteristically_nilpotent: Option<bool>,
    basis: Vec<Vec<Vec<String>>>,
}

fn derivations(cli: &Cli, source: &str) -> Result<String, Failure> {
    let a = load(source)?;
    let space = derivation_space(&a.table);
    let (dim, inner, outer) = space.dims();
    let out = DerivationsOut {
        algebra: a.name,
        dim,
        inner,
        outer,
        characteristically_nilpotent: is_characteristically_nilpotent(&a.table).ok(),
        basis: space.matrices().iter().map(render_matrix).collect(),
    };
    if cli.json {
        return Ok(to_json(&out));
    }
    let mut s = format!(
        "derivations of {}: dim {dim}, inner {inner}, outer {outer}\n",
        out.algebra
    );
    if let Some(c) = out.characteristically_nilpotent {
        let _ = writeln!(
            s,
            "characteristically nilpotent: {}",
            if c { "yes" } else { "no" }
        );
    }
    for (i, m) in out.basis.iter().enumerate() {
        let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(" "))).collect();
        let _ = writeln!(s, "  D{} = {}", i + 1, rows.join(" "));
    }
    Ok(s)
}

#[derive(Serialize)]
struct BoundOut {
    algebra: String,
    bound: usize,
    attained_max: Option<usize>,
}

fn bound(cli: &Cli, source: &str) -> Result<String, Failure> {
    let a = load(source)?;
    let out = BoundOut {
        bound: solvable_extension_bound(&a.table)?,
        attained_max: attained_extension_rank(&a.table),
        algebra: a.name,
    };
    if cli.json {
        return Ok(to_json(&out));
    }
    let mut s = format!(
        "{}: at most {} non-nilpotent elements in a solvable extension\n",
        out.algebra, out.bound
    );
    if let Some(m) = out.attained_max {
        let _ = writeln!(s, "Heisenberg type: the attained maximum is {m}");
    }
    Ok(s)
}

#[derive(Serialize)]
struct FlagOut {
    algebra: String,
    flag: FlagSummary,
    excluded: bool,
}

fn flag(cli: &Cli, source: &str) -> Result<String, Failure> {
    let a = load(source)?;
    let flag = build_characteristic_flag(&a.table);
    let out = FlagOut {
        algebra: a.name,
        flag: FlagSummary::from(&flag),
        excluded: flag.is_complete,
    };
    if cli.json {
        return Ok(to_json(&out));
    }
    Ok(format!(
        "{}: {}\ndims {:?}\n{}\n",
        out.algebra,
        flag.render_chain(),
        flag.dims(),
        if out.excluded {
            "complete: no Levi extension acts nontrivially"
        } else {
            "incomplete"
        }
    ))
}

fn screen_one(
    name: &str,
    table: &StructureTable<Scalar>,
    factor: FactorArg,
    opts: &ScreenOptions,
) -> Result<nilext::report::AlgebraReport, Failure> {
    let screen = levi_screen(name, table, factor.into(), opts)?;
    Ok(build_report(name, table, Some(&screen)))
}

fn screen(
    cli: &Cli,
    source: Option<&str>,
    all: bool,
    factor: FactorArg,
) -> Result<String, Failure> {
    let opts = ScreenOptions {
        max_distributions: cli.max_distributions,
        ..ScreenOptions::default()
    };
    if !all {
        let a = load(source.expect("clap requires a source without --all"))?;
        let report = screen_one(&a.name, &a.table, factor, &opts)?;
        return Ok(render_report(&report, format_of(cli)));
    }
    let entries = catalog_entries();
    // one worker per entry; results are joined back in catalog order
    let reports: Vec<Result<_, Failure>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| scope.spawn(|| screen_one(&e.id, &e.table, factor, &opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("screen worker panicked"))
            .collect()
    });
    let reports: Vec<_> = reports.into_iter().collect::<Result<_, _>>()?;
    if cli.json {
        return Ok(to_json(&reports));
    }
    Ok(reports
        .iter()
        .map(|r| render_report(r, Format::Text))
        .collect::<Vec<_>>()
        .join("\n"))
}

#[derive(Serialize)]
struct CatalogRow {
    id: String,
    dim: usize,
    provenance: Provenance,
    note: String,
}

fn catalog(cli: &Cli, action: &CatalogAction) -> Result<String, Failure> {
    match action {
        CatalogAction::List => {
            let rows: Vec<CatalogRow> = catalog_entries()
                .into_iter()
                .map(|e| CatalogRow {
                    dim: e.table.dim(),
                    id: e.id,
                    provenance: e.provenance,
                    note: e.source_note,
                })
                .collect();
            if cli.json {
                return Ok(to_json(&rows));
            }
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<12} dim {}  {:<16} {}",
                    r.id,
                    r.dim,
                    r.provenance.to_string(),
                    r.note
                );
            }
            s.push_str("families: abelian(n), heisenberg(m), filiform(n), triangular(n)\n");
            Ok(s)
        }
        CatalogAction::Show { id } => {
            let e = catalog_lookup(id)?;
            if cli.json {
                #[derive(Serialize)]
                struct Show {
                    id: String,
                    provenance: Provenance,
                    note: String,
                    text: String,
                }
                return Ok(to_json(&Show {
                    text: serialize_algebra(&e.table),
                    id: e.id,
                    provenance: e.provenance,
                    note: e.source_note,
                }));
            }
            Ok(format!(
                "# {} ({}): {}\n{}",
                e.id,
                e.provenance,
                e.source_note,
                serialize_algebra(&e.table)
            ))
        }
    }
}

#[derive(Serialize)]
struct Violation {
    triple: (usize, usize, usize),
    defect: String,
}

#[derive(Serialize)]
struct CheckOut {
    file: String,
    ok: bool,
    violations: Vec<Violation>,
}

fn check(cli: &Cli, file: &str) -> Result<String, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| input_failure(format!("{file}: {e}")))?;
    let table = parse_table_unchecked(&text).map_err(|e| input_failure(format!("{file}: {e}")))?;
    let violations: Vec<Violation> = match validate_lie_algebra(&table) {
        Validation::Ok => Vec::new(),
        Validation::Violations(vs) => vs
            .into_iter()
            .map(|v| Violation {
                triple: v.triple,
                defect: render_vector(&v.defect),
            })
            .collect(),
    };
    let out = CheckOut {
        file: file.to_string(),
        ok: violations.is_empty(),
        violations,
    };
    let rendered = if cli.json {
        to_json(&out)
    } else if out.ok {
        format!("{file}: ok, Jacobi identity holds (dim {})\n", table.dim())
    } else {
        let mut s = format!("{file}: Jacobi identity fails\n");
        for v in &out.violations {
            let (j, k, l) = v.triple;
            let _ = writeln!(s, "  (e{j}, e{k}, e{l}): defect {}", v.defect);
        }
        s
    };
    if out.ok {
        Ok(rendered)
    } else {
        Err(Failure {
            code: 2,
            message: rendered,
        })
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Info { source } => info(cli, source),
        Command::Series { source, kind } => series(cli, source, *kind),
        Command::Derivations { source } => derivations(cli, source),
        Command::Bound { source } => bound(cli, source),
        Command::Flag { source } => flag(cli, source),
        Command::Screen {
            source,
            all,
            factor,
        } => screen(cli, source.as_deref(), *all, *factor),
        Command::Catalog { action } => catalog(cli, action),
        Command::Check { file } => check(cli, file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            // check prints its report on stdout even when it fails
            if matches!(cli.command, Command::Check { .. }) && f.message.contains('\n') {
                print!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
