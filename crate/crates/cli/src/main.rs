use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use modlift::alpha::{alpha_apply, named_cover, run_suites, AlphaError, AutImage, SUITES};
use modlift::autact::{standard_autgens, AutGen};
use modlift::config::{Budgets, Profile};
use modlift::finquot::{FiniteTarget, FinquotError, HomIter, TargetKind};
use modlift::forge::{
    default_seed, forge_certificate_hall, forge_certificate_s3, minimal_degree_search, ForgeError, ForgeOptions,
    Route, RouteKind,
};
use modlift::perm::PermError;
use modlift::surface::SurfacePresentation;

/// Environment variable naming the default budget profile.
const PROFILE_ENV: &str = "MODLIFT_PROFILE";

#[derive(Parser, Debug)]
#[command(name = "modlift", version, about = "Certified finite covers of closed surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count homomorphisms and epimorphisms onto a finite target.
    Enumerate(EnumerateArgs),
    /// Build one cover certificate.
    Forge(ForgeArgs),
    /// Forge candidates in a fixed order and report the smallest degrees.
    Search(SearchArgs),
    /// Restrict automorphisms to a characteristic cover and run checks.
    Alpha(AlphaArgs),
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Budget preset; defaults to $MODLIFT_PROFILE, then `default`.
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    budget_tuples: Option<u64>,
    #[arg(long)]
    budget_points: Option<usize>,
    #[arg(long)]
    budget_enumeration: Option<u64>,
    #[arg(long)]
    budget_orbit: Option<usize>,
    #[arg(long)]
    budget_relabel: Option<usize>,
    #[arg(long)]
    budget_factors: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    S3,
    C2,
    A5,
    Psl2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    S3,
    Hall,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long, value_enum)]
    target: TargetArg,
    #[arg(long)]
    prime: Option<u64>,
    /// Write every homomorphism as one JSON line.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args, Debug)]
struct ForgeArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long, value_enum, default_value = "s3")]
    route: RouteArg,
    #[arg(long, default_value_t = 5)]
    prime: u64,
    /// Keep only this many orbit members.
    #[arg(long)]
    collection: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "certificate.json")]
    out: PathBuf,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long = "route", value_enum, default_values = ["s3", "hall"])]
    routes: Vec<RouteArg>,
    /// Number of candidates to forge.
    #[arg(long, default_value_t = 8)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory receiving the certificates and `report.json`.
    #[arg(long, default_value = "search")]
    out: PathBuf,
    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args, Debug)]
struct AlphaArgs {
    #[arg(long)]
    genus: u64,
    /// homology2, homology, c2 or trivial.
    #[arg(long, default_value = "homology2")]
    cover: String,
    /// Automorphisms to restrict: `id`, `all`, or standard generator names.
    #[arg(long = "automorphism", default_values = ["all"])]
    automorphisms: Vec<String>,
    /// `all`, `none`, or suite names.
    #[arg(long = "check", default_values = ["all"])]
    checks: Vec<String>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Process outcome: 0 completed, 1 usage, 2 budget exceeded, 3 internal.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Budget(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<ForgeError> for Failure {
    fn from(e: ForgeError) -> Self {
        match e {
            ForgeError::BudgetExceeded(_)
            | ForgeError::Finquot(FinquotError::BudgetExceeded { .. })
            | ForgeError::Perm(PermError::TooLarge(..)) => Failure::Budget(e.to_string()),
            ForgeError::GenusTooSmall(_) | ForgeError::WrongTarget { .. } | ForgeError::BadRoute(_) => {
                Failure::Usage(e.to_string())
            }
            ForgeError::Finquot(FinquotError::BadPrime(_)) | ForgeError::Finquot(FinquotError::TargetTooLarge(_)) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<FinquotError> for Failure {
    fn from(e: FinquotError) -> Self {
        Failure::from(ForgeError::Finquot(e))
    }
}

impl From<AlphaError> for Failure {
    fn from(e: AlphaError) -> Self {
        match e {
            AlphaError::UnknownCover(_) | AlphaError::UnknownSuite(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn io(path: &Path, e: std::io::Error) -> Failure {
    Failure::Internal(format!("{}: {e}", path.display()))
}

fn budgets(args: &BudgetArgs) -> Result<Budgets, Failure> {
    let profile = match &args.profile {
        Some(p) => p.clone(),
        None => std::env::var(PROFILE_ENV).unwrap_or_default(),
    };
    let profile: Profile = profile.parse().map_err(|e: modlift::config::BudgetError| Failure::Usage(e.to_string()))?;
    let mut b = Budgets::for_profile(profile);
    b.tuple_cap = args.budget_tuples.unwrap_or(b.tuple_cap);
    b.bsgs_point_cap = args.budget_points.unwrap_or(b.bsgs_point_cap);
    b.enumeration_bound = args.budget_enumeration.unwrap_or(b.enumeration_bound);
    b.orbit_cap = args.budget_orbit.unwrap_or(b.orbit_cap);
    b.relabel_bound = args.budget_relabel.unwrap_or(b.relabel_bound);
    b.product_factor_cap = args.budget_factors.unwrap_or(b.product_factor_cap);
    b.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(b)
}

fn genus(g: u64) -> Result<usize, Failure> {
    if g < 2 {
        return Err(Failure::Usage(format!("genus must be at least 2, got {g}")));
    }
    usize::try_from(g).map_err(|_| Failure::Usage(format!("genus {g} is too large")))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| io(path, e))
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), Failure> {
    let g = genus(args.genus)?;
    let b = budgets(&args.budgets)?;
    let kind = match (args.target, args.prime) {
        (TargetArg::S3, _) => TargetKind::Symmetric3,
        (TargetArg::C2, _) => TargetKind::Cyclic2,
        (TargetArg::A5, _) => TargetKind::Alternating5,
        (TargetArg::Psl2, Some(p)) => TargetKind::Psl2(p),
        (TargetArg::Psl2, None) => return Err(Failure::Usage("--target psl2 needs --prime".into())),
    };
    let target = Arc::new(FiniteTarget::new(kind)?);
    let needed = modlift::finquot::tuple_count(g, &target);
    if needed > b.tuple_cap.into() {
        return Err(Failure::Budget(format!("{needed} tuples exceed the cap of {}", b.tuple_cap)));
    }
    let (mut homs, mut epis) = (0u64, 0u64);
    let mut listing = String::new();
    for h in HomIter::new(g, Arc::clone(&target))? {
        homs += 1;
        let onto = h.is_surjective();
        epis += u64::from(onto);
        if args.out.is_some() {
            let line = serde_json::json!({ "hom": h.to_record(), "surjective": onto });
            listing.push_str(&line.to_string());
            listing.push('\n');
        }
    }
    if let Some(path) = &args.out {
        write(path, &listing)?;
    }
    println!("homs: {homs}, epis: {epis}");
    Ok(())
}

fn cmd_forge(args: ForgeArgs) -> Result<(), Failure> {
    let g = genus(args.genus)?;
    let opts = ForgeOptions {
        budgets: budgets(&args.budgets)?,
        seed: args.seed,
        truncate: args.collection,
    };
    let route = match args.route {
        RouteArg::S3 => Route::SylowS3,
        RouteArg::Hall => Route::HallPsl2(args.prime),
    };
    let seed = default_seed(g, route)?;
    let cert = match route {
        Route::SylowS3 => forge_certificate_s3(&seed, &opts)?,
        Route::HallPsl2(_) => forge_certificate_hall(&seed, &opts)?,
    };
    write(&args.out, &cert.to_json())?;
    println!("{} -> {}", cert.summary_line(), args.out.display());
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    let g = genus(args.genus)?;
    let opts = ForgeOptions {
        budgets: budgets(&args.budgets)?,
        seed: args.seed,
        truncate: None,
    };
    let mut routes: Vec<RouteKind> = args
        .routes
        .iter()
        .map(|r| match r {
            RouteArg::S3 => RouteKind::S3,
            RouteArg::Hall => RouteKind::Hall,
        })
        .collect();
    routes.sort();
    routes.dedup();
    let (mut report, certs) = minimal_degree_search(g, &routes, args.budget, &opts)?;
    for (i, (entry, cert)) in report.entries.iter_mut().zip(&certs).enumerate() {
        if let Some(cert) = cert {
            let path = args.out.join(format!("candidate-{i:02}.json"));
            write(&path, &cert.to_json())?;
            entry.path = Some(path.display().to_string());
        }
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write(&args.out.join("report.json"), &json)?;
    for e in &report.entries {
        let status = e.status.map_or("ERROR".to_string(), |s| format!("{s:?}").to_uppercase());
        let collection = e.candidate.collection.map_or("full".to_string(), |n| n.to_string());
        println!(
            "{} collection={} {} d={}",
            e.candidate.route,
            collection,
            status,
            e.degree.as_deref().map_or("?".to_string(), short)
        );
    }
    let best = |b: &Option<(usize, String)>| b.as_ref().map_or("none".to_string(), |(_, d)| short(d));
    println!("best valid: {}; best flagged: {}", best(&report.best_valid), best(&report.best_flagged));
    Ok(())
}

/// Decimal strings over 40 digits are shown by length only.
fn short(d: &str) -> String {
    if d.len() > 40 {
        format!("<{} digits>", d.len())
    } else {
        d.to_string()
    }
}

fn cmd_alpha(args: AlphaArgs) -> Result<(), Failure> {
    let g = genus(args.genus)?;
    let p = SurfacePresentation::new(args.genus).map_err(|e| Failure::Usage(e.to_string()))?;
    let table = named_cover(&args.cover, g)?;
    let gens = standard_autgens(g);
    let mut chosen: Vec<AutGen> = Vec::new();
    for name in &args.automorphisms {
        match name.as_str() {
            "all" => chosen.extend(gens.iter().cloned()),
            "id" => chosen.push(AutGen::identity(g)),
            other => match gens.iter().find(|f| f.name == other) {
                Some(f) => chosen.push(f.clone()),
                None => return Err(Failure::Usage(format!("unknown automorphism {other:?}"))),
            },
        }
    }
    let mut images = Vec::new();
    for f in &chosen {
        let img = alpha_apply(&table, f)?;
        let fixed = img == AutImage::identity(&table);
        println!("{}: {} Schreier generators{}", f.name, img.values.len(), if fixed { ", identity" } else { "" });
        images.push(img.to_record(&table));
    }
    let mut suites: Vec<&str> = Vec::new();
    for c in &args.checks {
        match c.as_str() {
            "all" => suites.extend(SUITES),
            "none" => {}
            other => suites.push(other),
        }
    }
    let results = run_suites(&table, &p, &suites, args.samples, args.seed)?;
    for r in &results {
        let verdict = if r.pass { "pass" } else { "FAIL" };
        println!("{}: {verdict} ({} checked, {} failed)", r.name, r.checked, r.failures);
    }
    println!(
        "cover {} index {}: {}",
        args.cover,
        table.index(),
        if results.iter().all(|r| r.pass) { "all suites pass" } else { "suite failures" }
    );
    if let Some(path) = &args.out {
        let json = serde_json::json!({ "index": table.index(), "images": images, "suites": results });
        write(path, &serde_json::to_string_pretty(&json).expect("serializes"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Forge(a) => cmd_forge(a),
        Command::Search(a) => cmd_search(a),
        Command::Alpha(a) => cmd_alpha(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Budget(m) | Failure::Internal(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
