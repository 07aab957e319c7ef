//! Verification suites. Each returns a report; a failed check is a
//! violation and makes the process exit with status 1.

use serde::{Deserialize, Serialize};

use pimbound::caseanalysis::{d4_verify, ree_verify, u4_verify, Verdict};
use pimbound::charlattice::{is_irreducible_mod_ell, orbit_scan_with_budget, predicted_irreducible};
use pimbound::degrees::{integrality_checks, regular_row_checks, verify_induced_identity, DatasetTag};
use pimbound::rootdata::{
    identity, mat_mul, reflection_matrices, weyl_closure_size, Family, GroupSpec, Matrix, RootDatum,
};

use crate::CliError;

const CLOSURE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl SuiteCheck {
    fn new(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        SuiteCheck {
            name: name.into(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<SuiteCheck>,
    /// Case-analysis verdicts, for the u4, d4 and ree suites.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    /// Failed intermediate steps that do not affect a verdict's outcome.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<SuiteCheck>, verdicts: Vec<Verdict>, warnings: Vec<String>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.holds),
            checks,
            verdicts,
            warnings,
        }
    }

    pub fn failures(&self) -> Vec<&SuiteCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

fn split_data(max_rank: usize) -> Vec<RootDatum> {
    let mut v = Vec::new();
    for fam in Family::ALL {
        let ranks = match fam.fixed_rank() {
            Some(r) => r..=r,
            None => fam.min_rank()..=max_rank,
        };
        for n in ranks.filter(|&n| n <= max_rank) {
            v.push(RootDatum::split(fam, n).expect("split datum in range"));
        }
    }
    v
}

fn mat_pow(m: &Matrix, k: u32) -> Matrix {
    (0..k).fold(identity(m.len()), |acc, _| mat_mul(&acc, m))
}

fn coxeter_check(d: &RootDatum) -> SuiteCheck {
    let s = reflection_matrices(d);
    let id = identity(d.rank);
    let mut bad = Vec::new();
    for i in 0..d.rank {
        for j in i..d.rank {
            let m = if i == j { 1 } else { d.coxeter_exponent(i, j) };
            let p = mat_mul(&s[i], &s[j]);
            if mat_pow(&p, m) != id {
                bad.push(format!("(s{i} s{j})^{m}"));
            }
        }
    }
    let closure = if d.weyl_order <= CLOSURE_LIMIT {
        let got = weyl_closure_size(d, CLOSURE_LIMIT + 1);
        if got != Some(d.weyl_order) {
            bad.push(format!("closure {got:?} vs {}", d.weyl_order));
        }
        "closure checked"
    } else {
        "order too large for closure"
    };
    let detail = if bad.is_empty() {
        format!("|W| = {}, {closure}", d.weyl_order)
    } else {
        bad.join(", ")
    };
    SuiteCheck::new(format!("coxeter {}", d.label()), bad.is_empty(), detail)
}

pub fn tables() -> Result<SuiteReport, CliError> {
    let mut checks = Vec::new();
    let data = split_data(8);
    for d in &data {
        checks.push(coxeter_check(d));
    }
    for d in &data {
        for ell in [2, 3, 5, 7] {
            let got = is_irreducible_mod_ell(d, ell)?;
            let want = predicted_irreducible(d.family, d.rank, ell);
            checks.push(SuiteCheck::new(
                format!("irreducible {} mod {ell}", d.label()),
                got == want,
                format!("computed {got}, table {want}"),
            ));
        }
    }
    for tag in [DatasetTag::U4, DatasetTag::D4] {
        let r = verify_induced_identity(tag)?;
        checks.push(SuiteCheck::new(
            format!("sum identity {tag:?}"),
            r.holds,
            format!("{} = {}", r.lhs, r.rhs),
        ));
    }
    for row in regular_row_checks(DatasetTag::U4)? {
        checks.push(SuiteCheck::new(format!("regular row {}", row.row), row.holds, row.expected));
    }
    for tag in DatasetTag::ALL {
        for (name, ok) in integrality_checks(tag) {
            checks.push(SuiteCheck::new(format!("integral {tag:?} {name}"), ok, ""));
        }
    }
    Ok(SuiteReport::new("tables", checks, Vec::new(), Vec::new()))
}

enum OrbitClaim {
    MinOrbitEquals(u64),
    OnlyZeroFixed,
    MinOrbitAtLeast(u64),
}

fn orbit_claims() -> Vec<(GroupSpec, OrbitClaim)> {
    let g = |r: Result<GroupSpec, _>| r.expect("fixed group list");
    let mut v = Vec::new();
    for q in [4, 8] {
        for n in 2..=4 {
            v.push((g(GroupSpec::sp(2 * n, q)), OrbitClaim::MinOrbitEquals(2 * n as u64)));
        }
        v.push((g(GroupSpec::spin_plus(8, q)), OrbitClaim::MinOrbitEquals(8)));
    }
    for n in 3..=6 {
        for q in [3, 4, 5] {
            v.push((g(GroupSpec::sl(n, q)), OrbitClaim::OnlyZeroFixed));
        }
    }
    for q in [4, 5, 7] {
        v.push((g(GroupSpec::split(Family::G2, 2, q)), OrbitClaim::OnlyZeroFixed));
    }
    for q in [3, 5] {
        v.push((g(GroupSpec::split(Family::F4, 4, q)), OrbitClaim::OnlyZeroFixed));
    }
    v.push((g(GroupSpec::split(Family::E6, 6, 4)), OrbitClaim::OnlyZeroFixed));
    v.push((g(GroupSpec::split(Family::E7, 7, 3)), OrbitClaim::OnlyZeroFixed));
    v.push((g(GroupSpec::split(Family::E8, 8, 3)), OrbitClaim::OnlyZeroFixed));
    for n in [5, 6] {
        for q in [3, 4, 5] {
            v.push((g(GroupSpec::sl(n, q)), OrbitClaim::MinOrbitAtLeast(n as u64)));
        }
    }
    v.push((g(GroupSpec::split(Family::E6, 6, 4)), OrbitClaim::MinOrbitAtLeast(27)));
    v.push((g(GroupSpec::split(Family::E7, 7, 3)), OrbitClaim::MinOrbitAtLeast(28)));
    v.push((g(GroupSpec::split(Family::E8, 8, 3)), OrbitClaim::MinOrbitAtLeast(120)));
    v
}

/// Orbit claims for the configured field sizes (all of them when `qs` is
/// empty). Groups over the budget are skipped with a warning.
pub fn orbits(qs: &[u64], budget: u64) -> Result<SuiteReport, CliError> {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for (spec, claim) in orbit_claims() {
        if !qs.is_empty() && !spec.q().is_some_and(|q| qs.contains(&q)) {
            continue;
        }
        let r = match orbit_scan_with_budget(&spec, budget) {
            Ok(r) => r,
            Err(e) => {
                warnings.push(format!("{}: skipped: {e}", spec.name()));
                continue;
            }
        };
        let min = r.min_nontrivial_orbit;
        let found = min.map_or("no nontrivial orbit".to_string(), |m| format!("found {m}"));
        let check = match claim {
            OrbitClaim::MinOrbitEquals(n) => SuiteCheck::new(
                format!("min orbit {} = {n}", spec.name()),
                min == Some(n),
                found.clone(),
            ),
            OrbitClaim::OnlyZeroFixed => SuiteCheck::new(
                format!("fixed characters {}", spec.name()),
                r.fixed == vec![vec![0; spec.rank()]],
                format!("{} fixed", r.fixed.len()),
            ),
            OrbitClaim::MinOrbitAtLeast(n) => SuiteCheck::new(
                format!("min orbit {} >= {n}", spec.name()),
                min.is_some_and(|m| m >= n),
                found.clone(),
            ),
        };
        checks.push(check);
    }
    Ok(SuiteReport::new("orbits", checks, Vec::new(), warnings))
}

/// A verdict passes when its outcome is NoSolution; in strict mode every
/// intermediate check must hold as well.
fn verdict_suite(suite: &str, verdicts: Vec<Verdict>, strict: bool) -> SuiteReport {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    for v in &verdicts {
        let label = v.group.clone();
        checks.push(SuiteCheck::new(
            format!("{label} no solution"),
            v.is_no_solution(),
            format!("{} candidates examined", v.solutions_examined),
        ));
        for c in v.checks.iter().filter(|c| !c.holds) {
            if strict {
                checks.push(SuiteCheck::new(format!("{label} {}", c.name), false, c.detail.clone()));
            } else {
                warnings.push(format!("{label}: {}: {}", c.name, c.detail));
            }
        }
    }
    SuiteReport::new(suite, checks, verdicts, warnings)
}

pub fn u4(primes: &[u64], strict: bool) -> Result<SuiteReport, CliError> {
    let verdicts = primes.iter().map(|&p| u4_verify(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(verdict_suite("u4", verdicts, strict))
}

pub fn d4(primes: &[u64], strict: bool) -> Result<SuiteReport, CliError> {
    let verdicts = primes.iter().map(|&p| d4_verify(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(verdict_suite("d4", verdicts, strict))
}

pub fn ree(fs: &[u32], strict: bool) -> Result<SuiteReport, CliError> {
    let mut verdicts = Vec::new();
    let mut replays = Vec::new();
    for &f in fs {
        let (v, replay) = ree_verify(f)?;
        replays.push(SuiteCheck::new(
            format!("{} replay", v.group),
            replay.reaches_contradiction(),
            "reduced equation has no admissible solution",
        ));
        verdicts.push(v);
    }
    let mut report = verdict_suite("ree", verdicts, strict);
    report.checks.extend(replays);
    report.passed = report.checks.iter().all(|c| c.holds);
    Ok(report)
}
