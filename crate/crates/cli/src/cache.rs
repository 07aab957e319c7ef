//! On-disk cache of orbit-scan reports, one JSON file per (family, rank, q).
//! A missing or unreadable entry is recomputed; the cache never changes
//! results.

use std::fs;
use std::path::{Path, PathBuf};

use pimbound::charlattice::{orbit_scan_with_budget, OrbitScanReport};
use pimbound::rootdata::GroupSpec;

use crate::CliError;

fn entry_path(dir: &Path, spec: &GroupSpec, q: u64) -> PathBuf {
    dir.join(format!("orbit-scan-{}-q{q}.json", spec.datum.label()))
}

pub fn cached_scan(spec: &GroupSpec, budget: u64, dir: Option<&Path>) -> Result<OrbitScanReport, CliError> {
    let Some(dir) = dir else {
        return Ok(orbit_scan_with_budget(spec, budget)?);
    };
    // Twisted groups have no entry; let the scan report the error.
    let Some(q) = spec.q().filter(|_| spec.is_split()) else {
        return Ok(orbit_scan_with_budget(spec, budget)?);
    };
    let path = entry_path(dir, spec, q);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(r) = serde_json::from_str::<OrbitScanReport>(&text) {
            if r.group == spec.name() && r.total <= budget {
                return Ok(r);
            }
        }
    }
    let report = orbit_scan_with_budget(spec, budget)?;
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let text = serde_json::to_string_pretty(&report)?;
    fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(report)
}
