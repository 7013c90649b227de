//! The thirteen classification families and their critical-value sets.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Family labels, split by the critical values of the moment map and the
/// diffeotype of the middle reduced space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyLabel {
    #[serde(rename = "I-1")]
    I1,
    #[serde(rename = "I-2")]
    I2,
    #[serde(rename = "I-3-1")]
    I31,
    #[serde(rename = "I-3-2")]
    I32,
    #[serde(rename = "I-4-1")]
    I41,
    #[serde(rename = "I-4-2")]
    I42,
    #[serde(rename = "II-1-1")]
    II11,
    #[serde(rename = "II-1-2")]
    II12,
    #[serde(rename = "II-1-3")]
    II13,
    #[serde(rename = "II-1-4")]
    II14,
    #[serde(rename = "II-2-1")]
    II21,
    #[serde(rename = "II-2-2")]
    II22,
    #[serde(rename = "II-2-3")]
    II23,
}

pub const ALL_FAMILIES: [FamilyLabel; 13] = [
    FamilyLabel::I1,
    FamilyLabel::I2,
    FamilyLabel::I31,
    FamilyLabel::I32,
    FamilyLabel::I41,
    FamilyLabel::I42,
    FamilyLabel::II11,
    FamilyLabel::II12,
    FamilyLabel::II13,
    FamilyLabel::II14,
    FamilyLabel::II21,
    FamilyLabel::II22,
    FamilyLabel::II23,
];

impl FamilyLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyLabel::I1 => "I-1",
            FamilyLabel::I2 => "I-2",
            FamilyLabel::I31 => "I-3-1",
            FamilyLabel::I32 => "I-3-2",
            FamilyLabel::I41 => "I-4-1",
            FamilyLabel::I42 => "I-4-2",
            FamilyLabel::II11 => "II-1-1",
            FamilyLabel::II12 => "II-1-2",
            FamilyLabel::II13 => "II-1-3",
            FamilyLabel::II14 => "II-1-4",
            FamilyLabel::II21 => "II-2-1",
            FamilyLabel::II22 => "II-2-2",
            FamilyLabel::II23 => "II-2-3",
        }
    }

    /// True for families whose minimal fixed component is a 2-sphere at
    /// level −2 (the maximum is then 4-dimensional at level 1).
    pub fn is_case_i(&self) -> bool {
        matches!(
            self,
            FamilyLabel::I1
                | FamilyLabel::I2
                | FamilyLabel::I31
                | FamilyLabel::I32
                | FamilyLabel::I41
                | FamilyLabel::I42
        )
    }

    /// Critical values of the balanced moment map for this family,
    /// in increasing order.
    pub fn crit_values(&self) -> &'static [i64] {
        match self {
            FamilyLabel::I1 => &[-2, 1],
            FamilyLabel::I2 => &[-2, -1, 1],
            FamilyLabel::I31 | FamilyLabel::I32 => &[-2, 0, 1],
            FamilyLabel::I41 | FamilyLabel::I42 => &[-2, -1, 0, 1],
            FamilyLabel::II11 | FamilyLabel::II12 | FamilyLabel::II13 | FamilyLabel::II14 => {
                &[-1, 1]
            }
            FamilyLabel::II21 | FamilyLabel::II22 | FamilyLabel::II23 => &[-1, 0, 1],
        }
    }

    /// Whether level 0 carries fixed surfaces in this family.
    pub fn has_level_zero(&self) -> bool {
        self.crit_values().contains(&0)
    }

    /// Whether level −1 carries isolated index-two fixed points (case I only).
    pub fn has_isolated_points(&self) -> bool {
        matches!(self, FamilyLabel::I2 | FamilyLabel::I41 | FamilyLabel::I42)
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FamilyLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .iter()
            .find(|l| l.as_str() == s)
            .copied()
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}
