use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::ForgeError;
use crate::autact::OrbitSummary;

pub const CERTIFICATE_VERSION: u32 = 1;

/// Label of the automorphism generator set used for closure checks.
pub const GENERATOR_SET: &str = "standard-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    SylowS3,
    HallPsl2(u64),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::SylowS3 => f.write_str("sylow-s3"),
            Route::HallPsl2(p) => write!(f, "hall-psl2({p})"),
        }
    }
}

impl FromStr for Route {
    type Err = ForgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "sylow-s3" {
            return Ok(Route::SylowS3);
        }
        s.strip_prefix("hall-psl2(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|p| p.parse().ok())
            .map(Route::HallPsl2)
            .ok_or_else(|| ForgeError::BadRoute(s.to_string()))
    }
}

impl Serialize for Route {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Route {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Valid,
    Invalid,
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Subdirect,
    HallHypothesis,
    Surjectivity,
    Sylow,
    CheckA,
    CheckB,
    Characteristic,
    Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    Structural,
    FactorWise,
    SylowConjugacy,
    Explicit,
    NotRun,
}

/// How `G_order` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMethod {
    Bsgs,
    /// Product of factor orders, justified by pairwise inequivalence of
    /// simple factors without a direct check.
    HallLemma,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub method: Method,
}

impl Check {
    pub fn not_run() -> Self {
        Check {
            pass: false,
            method: Method::NotRun,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicCheck {
    pub pass: bool,
    pub gens: String,
    pub generator_labels: Vec<String>,
    /// Per generator, the index map it induces on orbit members.
    pub evidence: Vec<Vec<u32>>,
    pub witness: Option<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub a: Check,
    pub b: Check,
    pub characteristic: CharacteristicCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedMaterial {
    pub rng_seed: u64,
    /// Seed of the second Sylow subgroup compared against the first.
    pub conjugacy_seed: Option<u64>,
    pub generator_set: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallEvidence {
    pub prime: u64,
    pub n: usize,
    pub collection_complete: bool,
    /// Members are pairwise inequivalent under target automorphisms.
    pub inequivalent: bool,
    pub equivalent_pair: Option<(usize, usize)>,
    pub borel_order: u64,
    /// The non-inner automorphism maps the Borel subgroup to a conjugate.
    pub outer_maps_borel_to_conjugate: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u64,
}

/// Audit record of one cover construction. Big integers are decimal strings;
/// orders are `null` when they were not computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub version: u32,
    pub route: Route,
    pub status: Status,
    pub failing_stage: Option<Stage>,
    pub notes: Vec<String>,
    pub genus_in: u64,
    pub k: usize,
    pub orbit: OrbitSummary,
    #[serde(rename = "G_order", with = "decimal")]
    pub g_order: Option<BigUint>,
    pub order_method: OrderMethod,
    #[serde(rename = "H_order", with = "decimal")]
    pub h_order: Option<BigUint>,
    #[serde(with = "decimal")]
    pub degree: Option<BigUint>,
    #[serde(with = "decimal")]
    pub genus_out: Option<BigUint>,
    pub checks: Checks,
    #[serde(rename = "K_trivial")]
    pub k_trivial: bool,
    pub hall: Option<HallEvidence>,
    pub seed_material: SeedMaterial,
    pub timing: Timing,
}

impl CoverCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ForgeError> {
        serde_json::from_str(s).map_err(|e| ForgeError::BadCertificate(e.to_string()))
    }

    /// The certificate with timing cleared, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        CoverCertificate {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    pub fn summary_line(&self) -> String {
        let show = |x: &Option<BigUint>| match x {
            None => "?".to_string(),
            Some(x) => {
                let s = x.to_string();
                if s.len() > 40 {
                    format!("<{} digits>", s.len())
                } else {
                    s
                }
            }
        };
        let mut line = format!(
            "{} {} g={} k={} |G|={} |H|={} d={} g'={}",
            self.route,
            serde_json::to_value(self.status).expect("status").as_str().unwrap_or(""),
            self.genus_in,
            self.k,
            show(&self.g_order),
            show(&self.h_order),
            show(&self.degree),
            show(&self.genus_out),
        );
        if let Some(stage) = self.failing_stage {
            let stage = serde_json::to_value(stage).expect("stage");
            line.push_str(&format!(" failing={}", stage.as_str().unwrap_or("")));
        }
        line
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}
