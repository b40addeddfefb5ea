use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::certificate::{CoverCertificate, Route, Status};
use super::routes::{default_seed, forge_certificate_hall, forge_certificate_s3, ForgeOptions};
use super::ForgeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteKind {
    S3,
    Hall,
}

/// Primes tried on the PSL₂ route, in order.
pub const HALL_PRIMES: [u64; 2] = [5, 7];

/// One point of the search space: a route and a collection size (`None`
/// for the whole orbit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub route: Route,
    pub collection: Option<usize>,
}

/// The candidates for a route set, in the fixed order they are examined.
pub fn search_candidates(routes: &[RouteKind]) -> Vec<Candidate> {
    let mut out = Vec::new();
    if routes.contains(&RouteKind::S3) {
        for collection in [Some(1), None] {
            out.push(Candidate {
                route: Route::SylowS3,
                collection,
            });
        }
    }
    if routes.contains(&RouteKind::Hall) {
        for p in HALL_PRIMES {
            for collection in [Some(1), Some(2), None] {
                out.push(Candidate {
                    route: Route::HallPsl2(p),
                    collection,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub candidate: Candidate,
    pub status: Option<Status>,
    pub degree: Option<String>,
    pub genus_out: Option<String>,
    /// Why no certificate was produced.
    pub error: Option<String>,
    /// Where the certificate was written, filled in by the caller.
    pub path: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub genus: u64,
    pub budget: usize,
    pub entries: Vec<SearchEntry>,
    /// Entry index and degree of the smallest VALID certificate.
    pub best_valid: Option<(usize, String)>,
    /// Entry index and degree of the smallest certificate that is not VALID.
    pub best_flagged: Option<(usize, String)>,
}

fn smallest(entries: &[SearchEntry], certs: &[Option<CoverCertificate>], valid: bool) -> Option<(usize, String)> {
    certs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            let c = c.as_ref()?;
            let d: &BigUint = c.degree.as_ref()?;
            ((c.status == Status::Valid) == valid).then_some((d.clone(), i))
        })
        .min()
        .map(|(_, i)| (i, entries[i].degree.clone().expect("degree present")))
}

/// Forges the first `budget` candidates for the given routes and reports the
/// smallest degrees found. Nothing is claimed beyond the examined space.
pub fn minimal_degree_search(
    g: usize,
    routes: &[RouteKind],
    budget: usize,
    opts: &ForgeOptions,
) -> Result<(SearchReport, Vec<Option<CoverCertificate>>), ForgeError> {
    if g < 2 {
        return Err(ForgeError::GenusTooSmall(g));
    }
    let mut entries = Vec::new();
    let mut certs = Vec::new();
    for candidate in search_candidates(routes).into_iter().take(budget) {
        let o = ForgeOptions {
            truncate: candidate.collection,
            ..opts.clone()
        };
        let result = default_seed(g, candidate.route).and_then(|seed| match candidate.route {
            Route::SylowS3 => forge_certificate_s3(&seed, &o),
            Route::HallPsl2(_) => forge_certificate_hall(&seed, &o),
        });
        let entry = match &result {
            Ok(c) => SearchEntry {
                candidate,
                status: Some(c.status),
                degree: c.degree.as_ref().map(|d| d.to_string()),
                genus_out: c.genus_out.as_ref().map(|d| d.to_string()),
                error: None,
                path: None,
            },
            Err(e) => SearchEntry {
                candidate,
                status: None,
                degree: None,
                genus_out: None,
                error: Some(e.to_string()),
                path: None,
            },
        };
        entries.push(entry);
        certs.push(result.ok());
    }
    let report = SearchReport {
        genus: g as u64,
        budget,
        best_valid: smallest(&entries, &certs, true),
        best_flagged: smallest(&entries, &certs, false),
        entries,
    };
    Ok((report, certs))
}
