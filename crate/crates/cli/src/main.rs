//! `pimbound` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification finds a violation
//! (the failing checks are printed as JSON), 2 on usage or configuration
//! errors. Errors print one line, `error: <kind>: <message>`.

mod cache;
mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use pimbound::bounds::{best_bound, Answer, BoundError, Classifier, ClassifyOptions, KnownMinimaTable, KnownMinimum};
use pimbound::caseanalysis::{CaseError, D4_PRIMES, U4_PRIMES};
use pimbound::charlattice::{orbit_size, predicted_irreducible, CharLatticeError, TorusCharacter, DEFAULT_SCAN_BUDGET};
use pimbound::degrees::{dataset, CharacterFamilyData, DatasetTag, DegreeError};
use pimbound::rootdata::{group_order_poly, Family, FieldParam, GroupSpec, RootDataError};
use pimbound::weights::{enumerate_delta, f_stable_subsets, minimal_pim_candidates, steinberg_weight, Weight, WeightError};

use verify::SuiteReport;

/// Appends a line to an output buffer; writing to a `String` cannot fail.
macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] RootDataError),
    #[error(transparent)]
    Lattice(#[from] CharLatticeError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Case(#[from] CaseError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Group(_) => "group",
            CliError::Lattice(CharLatticeError::Budget { .. }) => "budget",
            CliError::Lattice(_) => "lattice",
            CliError::Weight(_) => "weight",
            CliError::Bound(_) => "bound",
            CliError::Case(_) => "case-analysis",
            CliError::Degree(_) => "degrees",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pimbound", version, about = "Dimension bounds for projective indecomposable modules of finite groups of Lie type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Root datum, order and weight data of a group.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        json: bool,
    },
    /// Size of the Weyl-group orbit of a torus character.
    Orbit {
        #[command(flatten)]
        group: GroupArgs,
        /// Character coordinates modulo q - 1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        beta: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Orbit decomposition of all torus characters of a split group.
    OrbitScan {
        #[command(flatten)]
        group: GroupArgs,
        /// Largest number of characters to enumerate.
        #[arg(long, default_value_t = DEFAULT_SCAN_BUDGET)]
        budget: u64,
        /// Directory for cached scan reports.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Best lower bound for dim of the PIM with a given socle weight.
    Bound {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        weight: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Weights that can give a PIM of dimension |G|_p.
    Candidates {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        json: bool,
    },
    /// Whether some non-Steinberg PIM has dimension |G|_p.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Primes for the u4 and d4 suites.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Ree parameters f (q^2 = 3^(2f+1)) for the ree suite.
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<u32>>,
        /// Restrict the orbits suite to these field sizes.
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
        #[arg(long, default_value_t = DEFAULT_SCAN_BUDGET)]
        budget: u64,
        /// Count failed intermediate checks as violations.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the embedded datasets and tables as JSON.
    ExportTables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Tables,
    Orbits,
    U4,
    D4,
    Ree,
    All,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Root system family: A, B, C, D, E, F or G.
    family: String,
    rank: usize,
    /// Field size.
    #[arg(long, conflicts_with = "suzuki_ree", required_unless_present = "suzuki_ree")]
    q: Option<u64>,
    /// Suzuki or Ree group with q^2 = p^(2e+1).
    #[arg(long, value_name = "E")]
    suzuki_ree: Option<u32>,
    /// Order of the diagram automorphism.
    #[arg(long, default_value_t = 1)]
    twist: u8,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, CliError> {
        let family = Family::parse(&self.family, self.rank)?;
        match (self.q, self.suzuki_ree) {
            (Some(q), None) => Ok(GroupSpec::build(family, self.rank, self.twist, FieldParam::Integer(q))?),
            (None, Some(e)) => {
                if self.twist != 1 && self.twist != 2 {
                    return Err(CliError::Usage("--suzuki-ree implies --twist 2".into()));
                }
                Ok(GroupSpec::suzuki_ree(family, e)?)
            }
            _ => Err(CliError::Usage("give exactly one of --q and --suzuki-ree".into())),
        }
    }
}

fn weight_for(spec: &GroupSpec, coeffs: &[u64]) -> Result<Weight, CliError> {
    if coeffs.len() != spec.rank() {
        return Err(CliError::Usage(format!(
            "--weight has {} entries, {} needs {}",
            coeffs.len(),
            spec.name(),
            spec.rank()
        )));
    }
    Ok(Weight::new(coeffs.to_vec()))
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupInfo {
    name: String,
    label: String,
    rank: usize,
    bn_rank: usize,
    twist_order: u8,
    diagram_perm: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    weyl_order: u64,
    positive_roots: u64,
    invariant_degrees: Vec<u32>,
    node_bounds: Vec<u64>,
    /// |Δ(G)|, as a decimal string.
    restricted_weights: String,
    steinberg_weight: Weight,
    f_stable_subsets: usize,
    order_p_part: Option<String>,
    order_p_prime_part: Option<String>,
}

fn group_info(spec: &GroupSpec) -> GroupInfo {
    let d = &spec.datum;
    let var = if matches!(spec.field, FieldParam::SuzukiRee { p: 3, .. }) { "t" } else { "q" };
    let order = group_order_poly(spec).ok();
    GroupInfo {
        name: spec.name(),
        label: d.label(),
        rank: d.rank,
        bn_rank: spec.bn_rank(),
        twist_order: d.twist_order,
        diagram_perm: d.diagram_perm.clone(),
        cartan: d.cartan.clone(),
        weyl_order: d.weyl_order,
        positive_roots: d.positive_root_count,
        invariant_degrees: d.invariant_degrees(),
        node_bounds: spec.node_bounds(),
        restricted_weights: enumerate_delta(spec).0.to_string(),
        steinberg_weight: steinberg_weight(spec),
        f_stable_subsets: f_stable_subsets(d).len(),
        order_p_part: order.as_ref().map(|o| o.0.render(var)),
        order_p_prime_part: order.as_ref().map(|o| o.1.render(var)),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct OrbitResult {
    group: String,
    beta: TorusCharacter,
    size: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CandidateList {
    group: String,
    candidates: Vec<Weight>,
}

#[derive(Debug, Serialize, Deserialize)]
struct IrreducibilityCell {
    family: String,
    rank: usize,
    ell: u64,
    irreducible: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct Tables {
    datasets: Vec<CharacterFamilyData>,
    known_minima: Vec<KnownMinimum>,
    irreducibility: Vec<IrreducibilityCell>,
}

fn export_tables() -> Tables {
    let mut cells = Vec::new();
    for fam in Family::ALL {
        let ranks = match fam.fixed_rank() {
            Some(r) => r..=r,
            None => fam.min_rank()..=8,
        };
        for rank in ranks {
            for ell in [2, 3, 5, 7] {
                cells.push(IrreducibilityCell {
                    family: format!("{fam}{rank}"),
                    rank,
                    ell,
                    irreducible: predicted_irreducible(fam, rank, ell),
                });
            }
        }
    }
    Tables {
        datasets: DatasetTag::ALL.iter().map(|&t| dataset(t)).collect(),
        known_minima: KnownMinimaTable::entries(),
        irreducibility: cells,
    }
}

fn print_json<T: Serialize>(out: &mut String, x: &T) -> Result<(), CliError> {
    outln!(out, "{}", serde_json::to_string_pretty(x)?);
    Ok(())
}

fn print_table(out: &mut String, rows: &[(String, String)]) {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    for (k, v) in rows {
        outln!(out, "{k:<width$}  {v}");
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn print_suite(out: &mut String, r: &SuiteReport) {
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        let status = if c.holds { "ok" } else { "FAIL" };
        outln!(out, "{status:<4}  {:<width$}  {}", c.name, c.detail);
    }
    for w in &r.warnings {
        outln!(out, "warn  {w}");
    }
    outln!(out, "{}: {}", r.suite, if r.passed { "passed" } else { "violation" });
}

/// Returns whether every requested suite passed.
fn run_verify(out: &mut String, reports: Vec<SuiteReport>, json: bool) -> Result<bool, CliError> {
    let passed = reports.iter().all(|r| r.passed);
    if json {
        print_json(out, &reports)?;
    } else {
        for r in &reports {
            print_suite(out, r);
        }
        if !passed {
            let failures: Vec<_> = reports.iter().flat_map(|r| r.failures()).collect();
            outln!(out, "{}", serde_json::to_string(&failures)?);
        }
    }
    Ok(passed)
}

fn run(out: &mut String, cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Info { group, json } => {
            let info = group_info(&group.spec()?);
            if json {
                print_json(out, &info)?;
            } else {
                let mut rows = vec![
                    ("group".to_string(), info.name.clone()),
                    ("type".to_string(), info.label.clone()),
                    ("rank".to_string(), format!("{} (BN-rank {})", info.rank, info.bn_rank)),
                    ("weyl order".to_string(), info.weyl_order.to_string()),
                    ("positive roots".to_string(), info.positive_roots.to_string()),
                    ("degrees".to_string(), join(&info.invariant_degrees)),
                    ("node bounds".to_string(), join(&info.node_bounds)),
                    ("|restricted weights|".to_string(), info.restricted_weights.clone()),
                    ("steinberg weight".to_string(), info.steinberg_weight.to_string()),
                    ("f-stable subsets".to_string(), info.f_stable_subsets.to_string()),
                ];
                if let (Some(p), Some(rest)) = (&info.order_p_part, &info.order_p_prime_part) {
                    rows.push(("order".to_string(), format!("{p} * ({rest})")));
                }
                print_table(out, &rows);
            }
        }
        Command::Orbit { group, beta, json } => {
            let spec = group.spec()?;
            let q = spec.q().ok_or_else(|| CliError::Usage(format!("{} has no integer q", spec.name())))?;
            if beta.len() != spec.rank() {
                return Err(CliError::Usage(format!("--beta needs {} entries", spec.rank())));
            }
            let beta = TorusCharacter::new(&beta, q - 1);
            let size = orbit_size(&spec, &beta)?;
            let r = OrbitResult { group: spec.name(), beta, size };
            if json {
                print_json(out, &r)?;
            } else {
                outln!(out, "{size}");
            }
        }
        Command::OrbitScan { group, budget, cache_dir, json } => {
            let spec = group.spec()?;
            let r = cache::cached_scan(&spec, budget, cache_dir.as_deref())?;
            if json {
                print_json(out, &r)?;
            } else {
                let mut rows = vec![
                    ("group".to_string(), r.group.clone()),
                    ("characters".to_string(), r.total.to_string()),
                    ("orbits".to_string(), r.orbit_count.to_string()),
                    ("fixed".to_string(), r.fixed.len().to_string()),
                    (
                        "min nontrivial orbit".to_string(),
                        r.min_nontrivial_orbit.map_or("none".into(), |m| m.to_string()),
                    ),
                ];
                if let Some(rep) = &r.min_orbit_representative {
                    rows.push(("representative".to_string(), join(rep)));
                }
                for (size, count) in &r.histogram {
                    rows.push((format!("size {size}"), format!("{count} orbits")));
                }
                print_table(out, &rows);
            }
        }
        Command::Bound { group, weight, json } => {
            let spec = group.spec()?;
            let mu = weight_for(&spec, &weight)?;
            let cert = best_bound(&spec, &mu)?;
            if json {
                print_json(out, &cert)?;
            } else {
                outln!(out, "{} {}: dim >= {} |G|_p", cert.group_name, cert.weight, cert.bound);
                for step in &cert.chain {
                    outln!(out, "  {:>6}  {}: {}", step.value, step.rule, step.justification);
                }
            }
        }
        Command::Candidates { group, json } => {
            let spec = group.spec()?;
            let list = CandidateList {
                group: spec.name(),
                candidates: minimal_pim_candidates(&spec)?,
            };
            if json {
                print_json(out, &list)?;
            } else {
                for w in &list.candidates {
                    outln!(out, "{w}");
                }
            }
        }
        Command::Classify { group, json } => {
            let spec = group.spec()?;
            let c = Classifier::new(ClassifyOptions::default()).classify(&spec);
            if json {
                print_json(out, &c)?;
            } else {
                let answer = match c.answer {
                    Answer::Yes => "yes",
                    Answer::No => "no",
                    Answer::Undecided => "undecided",
                };
                outln!(out, "{}: {answer}", c.group);
                for w in &c.witnesses {
                    outln!(out, "  witness {w}");
                }
                for n in &c.notes {
                    outln!(out, "  {n}");
                }
            }
        }
        Command::Verify { suite, primes, f, q, budget, strict, json } => {
            let u4_primes = primes.clone().unwrap_or_else(|| U4_PRIMES.to_vec());
            let d4_primes = primes.unwrap_or_else(|| D4_PRIMES.to_vec());
            let fs = f.unwrap_or_else(|| vec![1, 2]);
            let qs = q.unwrap_or_default();
            let reports = match suite {
                Suite::Tables => vec![verify::tables()?],
                Suite::Orbits => vec![verify::orbits(&qs, budget)?],
                Suite::U4 => vec![verify::u4(&u4_primes, strict)?],
                Suite::D4 => vec![verify::d4(&d4_primes, strict)?],
                Suite::Ree => vec![verify::ree(&fs, strict)?],
                Suite::All => vec![
                    verify::tables()?,
                    verify::orbits(&qs, budget)?,
                    verify::u4(&u4_primes, strict)?,
                    verify::d4(&d4_primes, strict)?,
                    verify::ree(&fs, strict)?,
                ],
            };
            return run_verify(out, reports, json);
        }
        Command::ExportTables => print_json(out, &export_tables())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {line}");
            return ExitCode::from(2);
        }
    };
    let mut out = String::new();
    let result = run(&mut out, cli);
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {}: {msg}", e.kind());
            ExitCode::from(2)
        }
    }
}
