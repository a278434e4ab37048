//! Runs the flag, enumeration and weight screens in order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::flag::{build_characteristic_flag, flag_excludes, CharacteristicFlag};
use super::frame::build_frame;
use super::irreps::enumerate_irrep_assignments;
use super::weights::{screen_assignment, WeightContext, WeightLimits, WeightOutcome};
use super::Factor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{associated_graded, is_nilpotent};
use crate::table::StructureTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScreenOptions {
    /// Weight distributions tried per assignment before giving up.
    pub max_distributions: usize,
    /// S-pair reductions allowed when solving for an sl(2) triple.
    pub groebner_budget: usize,
}

impl Default for ScreenOptions {
    fn default() -> Self {
        ScreenOptions {
            max_distributions: 100_000,
            groebner_budget: 4_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorChoice {
    Sl2,
    So3,
    All,
}

impl FactorChoice {
    pub fn factors(self) -> Vec<Factor> {
        match self {
            FactorChoice::Sl2 => vec![Factor::Sl2],
            FactorChoice::So3 => vec![Factor::So3],
            FactorChoice::All => vec![Factor::Sl2, Factor::So3],
        }
    }
}

impl FromStr for FactorChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(FactorChoice::All),
            other => Ok(match other.parse::<Factor>()? {
                Factor::Sl2 => FactorChoice::Sl2,
                Factor::So3 => FactorChoice::So3,
            }),
        }
    }
}

impl fmt::Display for FactorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorChoice::Sl2 => "sl2",
            FactorChoice::So3 => "so3",
            FactorChoice::All => "all",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Excluded,
    NotExcluded,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Excluded => "excluded",
            Verdict::NotExcluded => "not-excluded",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleVerdict {
    /// `sl2`, `so3`, or `any` for rules independent of the factor.
    pub factor: String,
    pub rule: String,
    pub verdict: Verdict,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenReport {
    pub algebra_id: String,
    pub verdicts: Vec<RuleVerdict>,
    pub overall: Verdict,
    /// Rule that settled the overall verdict, if any.
    pub deciding_rule: Option<String>,
    pub annotations: Vec<String>,
    pub flag: CharacteristicFlag,
}

impl ScreenReport {
    pub fn verdict_for(&self, factor: Factor) -> Verdict {
        let name = factor.to_string();
        let rows: Vec<&RuleVerdict> = self
            .verdicts
            .iter()
            .filter(|v| v.factor == name || v.factor == "any")
            .collect();
        if rows.iter().any(|v| v.verdict == Verdict::Excluded) {
            Verdict::Excluded
        } else if rows.iter().any(|v| v.verdict == Verdict::Undecided) {
            Verdict::Undecided
        } else {
            Verdict::NotExcluded
        }
    }
}

pub const FLAG_RULE: &str = "characteristic-flag";
pub const ENUMERATION_RULE: &str = "irrep-enumeration";
pub const WEIGHT_RULE: &str = "weight-screen";

pub fn levi_screen(
    algebra_id: &str,
    table: &StructureTable<Scalar>,
    choice: FactorChoice,
    options: &ScreenOptions,
) -> Result<ScreenReport> {
    if !is_nilpotent(table) {
        return Err(Error::NotNilpotent);
    }
    let flag = build_characteristic_flag(table);
    let mut verdicts = Vec::new();
    let mut annotations = Vec::new();
    let factors = choice.factors();
    if flag_excludes(&flag) {
        verdicts.push(RuleVerdict {
            factor: "any".into(),
            rule: FLAG_RULE.into(),
            verdict: Verdict::Excluded,
            witness: flag.render_chain(),
        });
        return Ok(ScreenReport {
            algebra_id: algebra_id.into(),
            verdicts,
            overall: Verdict::Excluded,
            deciding_rule: Some(FLAG_RULE.into()),
            annotations,
            flag,
        });
    }
    verdicts.push(RuleVerdict {
        factor: "any".into(),
        rule: FLAG_RULE.into(),
        verdict: Verdict::NotExcluded,
        witness: format!(
            "longest characteristic chain has length {} < {}",
            flag.chain.len() - 1,
            table.dim()
        ),
    });
    let graded = associated_graded(table)?;
    let frame = build_frame(table);
    if !frame.certified {
        annotations.push(
            "derivation torus not certified maximal; exclusions by weights are withheld".into(),
        );
    }
    if frame.uses_gaussian {
        annotations
            .push("weights computed in an eigenbasis over ℚ(i); verdicts hold over ℂ".into());
    }
    let context = WeightContext::new(&frame).ok_or(Error::NotNilpotent)?;
    let limits = WeightLimits {
        max_distributions: options.max_distributions,
        groebner_budget: options.groebner_budget,
    };
    let mut per_factor = Vec::new();
    for factor in &factors {
        let assignments = enumerate_irrep_assignments(&graded, *factor);
        if assignments.is_empty() {
            verdicts.push(RuleVerdict {
                factor: factor.to_string(),
                rule: ENUMERATION_RULE.into(),
                verdict: Verdict::Excluded,
                witness: format!(
                    "no faithful {factor} assignment fits layers {:?}",
                    graded.layer_dims
                ),
            });
            per_factor.push((Verdict::Excluded, ENUMERATION_RULE));
            continue;
        }
        let listed: Vec<String> = assignments.iter().map(|a| a.render()).collect();
        verdicts.push(RuleVerdict {
            factor: factor.to_string(),
            rule: ENUMERATION_RULE.into(),
            verdict: Verdict::NotExcluded,
            witness: format!("{} candidate(s): {}", assignments.len(), listed.join("; ")),
        });
        let mut failures = Vec::new();
        let mut undecided = Vec::new();
        let mut realised = None;
        for a in &assignments {
            match screen_assignment(&context, a, limits) {
                WeightOutcome::Consistent { weights } => {
                    let ws: Vec<String> = weights.iter().map(i64::to_string).collect();
                    realised = Some(format!(
                        "{} realised by h = diag({})",
                        a.render(),
                        ws.join(", ")
                    ));
                    break;
                }
                WeightOutcome::Contradiction { witness } => {
                    failures.push(format!("{}: {witness}", a.render()))
                }
                WeightOutcome::Undecided { reason } => {
                    undecided.push(format!("{}: {reason}", a.render()))
                }
            }
        }
        let (verdict, witness) = if let Some(w) = realised {
            (Verdict::NotExcluded, w)
        } else if !undecided.is_empty() {
            (Verdict::Undecided, undecided.join("; "))
        } else {
            (Verdict::Excluded, failures.join("; "))
        };
        verdicts.push(RuleVerdict {
            factor: factor.to_string(),
            rule: WEIGHT_RULE.into(),
            verdict,
            witness,
        });
        per_factor.push((verdict, WEIGHT_RULE));
    }
    if factors.contains(&Factor::So3) {
        annotations
            .push("so3 screens test the complexified action; verdicts are valid over ℂ".into());
    }
    let overall = if per_factor.iter().all(|(v, _)| *v == Verdict::Excluded) {
        Verdict::Excluded
    } else if per_factor.iter().any(|(v, _)| *v == Verdict::NotExcluded) {
        Verdict::NotExcluded
    } else {
        Verdict::Undecided
    };
    let deciding_rule = match overall {
        Verdict::Excluded => per_factor
            .iter()
            .map(|(_, r)| *r)
            .max_by_key(|r| *r == WEIGHT_RULE)
            .map(String::from),
        _ => None,
    };
    Ok(ScreenReport {
        algebra_id: algebra_id.into(),
        verdicts,
        overall,
        deciding_rule,
        annotations,
        flag,
    })
}
