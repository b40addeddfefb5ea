use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Resource limits shared by every stage. All fields are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest `|Q|^{2g}` an exhaustive homomorphism enumeration may cover.
    pub tuple_cap: u64,
    /// Largest point count on which a stabilizer chain is built.
    pub bsgs_point_cap: usize,
    /// Largest group that is ever listed element by element.
    pub enumeration_bound: u64,
    /// Largest orbit of homomorphisms explored.
    pub orbit_cap: usize,
    /// Largest coset count for relabeling searches between actions.
    pub relabel_bound: usize,
    /// Largest number of simple factors whose product is checked directly by
    /// a stabilizer chain; chain cost grows about cubically in this count.
    pub product_factor_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tuple_cap: 100_000_000,
            bsgs_point_cap: 30_000,
            enumeration_bound: 1_000_000,
            orbit_cap: 200_000,
            relabel_bound: 100_000,
            product_factor_cap: 200,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BudgetError {
    #[error("budget `{0}` must be positive")]
    NotPositive(&'static str),
    #[error("unknown budget profile `{0}` (expected small, default or large)")]
    UnknownProfile(String),
}

impl Budgets {
    pub fn validate(&self) -> Result<(), BudgetError> {
        let checks = [
            ("tuple_cap", self.tuple_cap == 0),
            ("bsgs_point_cap", self.bsgs_point_cap == 0),
            ("enumeration_bound", self.enumeration_bound == 0),
            ("orbit_cap", self.orbit_cap == 0),
            ("relabel_bound", self.relabel_bound == 0),
            ("product_factor_cap", self.product_factor_cap == 0),
        ];
        match checks.iter().find(|(_, bad)| *bad) {
            Some((name, _)) => Err(BudgetError::NotPositive(name)),
            None => Ok(()),
        }
    }

    pub fn for_profile(profile: Profile) -> Self {
        let d = Budgets::default();
        match profile {
            Profile::Small => Budgets {
                tuple_cap: 1_000_000,
                bsgs_point_cap: 3_000,
                enumeration_bound: 100_000,
                orbit_cap: 20_000,
                relabel_bound: 10_000,
                product_factor_cap: 50,
            },
            Profile::Default => d,
            Profile::Large => Budgets {
                tuple_cap: 10 * d.tuple_cap,
                bsgs_point_cap: 10 * d.bsgs_point_cap,
                enumeration_bound: 10 * d.enumeration_bound,
                orbit_cap: 10 * d.orbit_cap,
                relabel_bound: 10 * d.relabel_bound,
                product_factor_cap: 10 * d.product_factor_cap,
            },
        }
    }
}

/// Named budget presets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Small,
    #[default]
    Default,
    Large,
}

impl FromStr for Profile {
    type Err = BudgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "small" => Ok(Profile::Small),
            "default" | "" => Ok(Profile::Default),
            "large" => Ok(Profile::Large),
            other => Err(BudgetError::UnknownProfile(other.to_string())),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Small => "small",
            Profile::Default => "default",
            Profile::Large => "large",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_are_valid_and_ordered() {
        for p in [Profile::Small, Profile::Default, Profile::Large] {
            let b = Budgets::for_profile(p);
            b.validate().unwrap();
            assert_eq!(p.to_string().parse::<Profile>().unwrap(), p);
        }
        assert!(Budgets::for_profile(Profile::Small).tuple_cap < Budgets::default().tuple_cap);
        assert!("huge".parse::<Profile>().is_err());
    }

    #[test]
    fn zero_budget_is_rejected() {
        let b = Budgets {
            orbit_cap: 0,
            ..Budgets::default()
        };
        assert_eq!(b.validate(), Err(BudgetError::NotPositive("orbit_cap")));
    }
}
