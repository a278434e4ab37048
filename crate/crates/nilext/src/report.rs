//! Serializable analysis reports in text and JSON form.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extensions::{attained_extension_rank, solvable_extension_bound};
use crate::levi::{
    build_characteristic_flag, CharacteristicFlag, RuleVerdict, ScreenReport, Verdict,
};
use crate::scalar::Scalar;
use crate::series::{characteristic_series, SeriesKind};
use crate::table::StructureTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Invalid(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub n: usize,
    pub n2: usize,
    /// `dim n^k / n^{k+1}` until the series stabilises.
    pub layers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub dim: usize,
    pub recipe: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagSummary {
    pub complete: bool,
    pub chain: Vec<ChainLink>,
}

impl From<&CharacteristicFlag> for FlagSummary {
    fn from(flag: &CharacteristicFlag) -> Self {
        FlagSummary {
            complete: flag.is_complete,
            chain: flag
                .chain
                .iter()
                .map(|m| ChainLink {
                    dim: m.subspace.dim(),
                    recipe: m.recipe.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub algebra: String,
    pub dims: Dims,
    /// Absent for non-nilpotent input.
    pub bound: Option<usize>,
    pub flag: FlagSummary,
    pub screens: Vec<RuleVerdict>,
    /// Absent when no screen ran.
    pub overall: Option<Verdict>,
    pub annotations: Vec<String>,
}

/// Summary of `table`, with screen results when given.
pub fn build_report(
    algebra: &str,
    table: &StructureTable<Scalar>,
    screen: Option<&ScreenReport>,
) -> AlgebraReport {
    let lower = characteristic_series(table, SeriesKind::LowerCentral);
    let dims = lower.dims();
    let layers: Vec<usize> = dims
        .windows(2)
        .map(|w| w[0] - w[1])
        .filter(|&d| d > 0)
        .collect();
    let bound = solvable_extension_bound(table).ok();
    let mut annotations = Vec::new();
    if let Some(rank) = attained_extension_rank(table) {
        annotations.push(format!(
            "Heisenberg type: solvable extensions reach at most {rank} non-nilpotent elements"
        ));
    }
    if !lower.is_nilpotent() {
        annotations.push("not nilpotent: no extension bound".into());
    }
    let flag = match screen {
        Some(s) => FlagSummary::from(&s.flag),
        None => FlagSummary::from(&build_characteristic_flag(table)),
    };
    let (screens, overall) = match screen {
        Some(s) => {
            annotations.extend(s.annotations.iter().cloned());
            (s.verdicts.clone(), Some(s.overall))
        }
        None => (Vec::new(), None),
    };
    AlgebraReport {
        algebra: algebra.to_string(),
        dims: Dims {
            n: table.dim(),
            n2: dims.get(1).copied().unwrap_or(0),
            layers,
        },
        bound,
        flag,
        screens,
        overall,
        annotations,
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_report(report: &AlgebraReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Text => render_text(report),
    }
}

fn render_text(r: &AlgebraReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra   {}", r.algebra);
    let _ = writeln!(
        out,
        "dims      n = {}, n² = {}, layers ({})",
        r.dims.n,
        r.dims.n2,
        join(&r.dims.layers)
    );
    match r.bound {
        Some(b) => {
            let _ = writeln!(out, "bound     {b}");
        }
        None => {
            let _ = writeln!(out, "bound     -");
        }
    }
    let labels: Vec<&str> = r.flag.chain.iter().map(|c| c.recipe.as_str()).collect();
    let dims: Vec<usize> = r.flag.chain.iter().map(|c| c.dim).collect();
    let _ = writeln!(
        out,
        "flag      {}: {} (dims {})",
        if r.flag.complete {
            "complete"
        } else {
            "incomplete"
        },
        labels.join(" ⊂ "),
        join(&dims)
    );
    if !r.screens.is_empty() {
        let _ = writeln!(out, "screens");
        let width = r.screens.iter().map(|s| s.rule.len()).max().unwrap_or(0);
        for s in &r.screens {
            let _ = writeln!(
                out,
                "  {:<4} {:<width$}  {:<12}  {}",
                s.factor,
                s.rule,
                s.verdict.to_string(),
                s.witness
            );
        }
    }
    if let Some(v) = r.overall {
        let _ = writeln!(out, "overall   {v}");
    }
    for a in &r.annotations {
        let _ = writeln!(out, "note      {a}");
    }
    out
}
