//! Obstruction screens for Levi extensions by rank-one simple factors.

mod flag;
mod frame;
mod irreps;
mod screen;
mod weights;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

pub use flag::{build_characteristic_flag, flag_excludes, CharacteristicFlag, FlagMember, Recipe};
pub use frame::{build_frame, Frame};
pub use irreps::{
    enumerate_irrep_assignments, sl2_tensor_decomp, weights_of, IrrepAssignment, TensorPart,
};
pub use screen::{levi_screen, FactorChoice, RuleVerdict, ScreenOptions, ScreenReport, Verdict};
pub use weights::{weight_screen, WeightLimits, WeightOutcome};

/// Levi factors of rank one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Sl2,
    So3,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Sl2 => "sl2",
            Factor::So3 => "so3",
        })
    }
}

impl FromStr for Factor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sl2" => Ok(Factor::Sl2),
            "so3" => Ok(Factor::So3),
            other => Err(Error::UnsupportedFactor(other.to_string())),
        }
    }
}
