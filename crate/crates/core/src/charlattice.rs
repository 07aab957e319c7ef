//! Characters of a split maximal torus, `X/(q-1)X`, under the Weyl group,
//! and irreducibility of the reflection representation modulo a prime.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{Family, GroupSpec, Matrix, RootDatum};

/// Default cap on the number of characters an orbit scan may visit.
pub const DEFAULT_SCAN_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharLatticeError {
    #[error("split torus only: {0} is twisted")]
    SplitTorusOnly(String),
    #[error("scan of {group} needs {required} points, budget is {budget}")]
    Budget {
        group: String,
        required: u128,
        budget: u64,
    },
    #[error("character has {got} coordinates, rank is {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("modulus {got} does not match q - 1 = {expected}")]
    ModulusMismatch { got: u64, expected: u64 },
    #[error("irreducibility test needs prime ell in {{2,3,5,7}} and rank <= 8, got ell = {ell}, rank = {rank}")]
    Gate { ell: u64, rank: usize },
    #[error("malformed matrices: {0}")]
    Malformed(String),
}

/// Element of `Z^n / m Z^n` in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusCharacter {
    pub coords: Vec<u64>,
    pub modulus: u64,
}

impl TorusCharacter {
    pub fn new(coords: &[i64], modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let m = modulus as i64;
        TorusCharacter {
            coords: coords.iter().map(|&c| c.rem_euclid(m) as u64).collect(),
            modulus,
        }
    }

    pub fn zero(rank: usize, modulus: u64) -> Self {
        TorusCharacter {
            coords: vec![0; rank],
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

fn require_split(spec: &GroupSpec) -> Result<u64, CharLatticeError> {
    match spec.q() {
        Some(q) if spec.is_split() => Ok(q - 1),
        _ => Err(CharLatticeError::SplitTorusOnly(spec.name())),
    }
}

/// `s_i` acting on a residue vector mod `m`.
fn reflect_mod(cartan: &[Vec<i64>], i: usize, v: &mut [u64], m: u64) {
    let a = v[i];
    if a == 0 {
        return;
    }
    let mi = m as i64;
    for (r, x) in v.iter_mut().enumerate() {
        let c = cartan[r][i];
        if c != 0 {
            *x = (*x as i64 - c * a as i64).rem_euclid(mi) as u64;
        }
    }
}

/// Big-endian base-`m` index, so increasing index is lexicographic order.
fn encode(v: &[u64], m: u64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * m as usize + x as usize)
}

fn decode(mut idx: usize, n: usize, m: u64, out: &mut [u64]) {
    for k in (0..n).rev() {
        out[k] = (idx % m as usize) as u64;
        idx /= m as usize;
    }
}

/// The full W-orbit of `beta`, sorted lexicographically.
pub fn orbit(spec: &GroupSpec, beta: &TorusCharacter) -> Result<Vec<TorusCharacter>, CharLatticeError> {
    let m = require_split(spec)?;
    let n = spec.rank();
    if beta.coords.len() != n {
        return Err(CharLatticeError::RankMismatch {
            got: beta.coords.len(),
            rank: n,
        });
    }
    if beta.modulus != m {
        return Err(CharLatticeError::ModulusMismatch {
            got: beta.modulus,
            expected: m,
        });
    }
    if m == 1 {
        return Ok(vec![TorusCharacter::zero(n, 1)]);
    }
    let cartan = &spec.datum.cartan;
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![beta.coords.clone()];
    seen.insert(beta.coords.clone());
    while let Some(v) = stack.pop() {
        for i in 0..n {
            let mut w = v.clone();
            reflect_mod(cartan, i, &mut w, m);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|coords| TorusCharacter { coords, modulus: m })
        .collect())
}

pub fn orbit_size(spec: &GroupSpec, beta: &TorusCharacter) -> Result<u64, CharLatticeError> {
    Ok(orbit(spec, beta)?.len() as u64)
}

/// Orbit size, or `cap` once that many distinct elements have been seen.
/// The second component tells whether the count is exact.
pub fn orbit_size_capped(
    spec: &GroupSpec,
    beta: &TorusCharacter,
    cap: u64,
) -> Result<(u64, bool), CharLatticeError> {
    let m = require_split(spec)?;
    let n = spec.rank();
    if beta.coords.len() != n {
        return Err(CharLatticeError::RankMismatch {
            got: beta.coords.len(),
            rank: n,
        });
    }
    if beta.modulus != m {
        return Err(CharLatticeError::ModulusMismatch {
            got: beta.modulus,
            expected: m,
        });
    }
    if m == 1 {
        return Ok((1, true));
    }
    let cartan = &spec.datum.cartan;
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![beta.coords.clone()];
    seen.insert(beta.coords.clone());
    while let Some(v) = stack.pop() {
        for i in 0..n {
            let mut w = v.clone();
            reflect_mod(cartan, i, &mut w, m);
            if seen.insert(w.clone()) {
                if seen.len() as u64 >= cap {
                    return Ok((cap, false));
                }
                stack.push(w);
            }
        }
    }
    Ok((seen.len() as u64, true))
}

/// Orbit decomposition of every torus character of a split group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitScanReport {
    pub group: String,
    pub rank: usize,
    pub modulus: u64,
    /// Number of characters, `(q-1)^rank`.
    pub total: u64,
    /// Set when q = 2: the character group is trivial.
    pub vacuous: bool,
    pub orbit_count: u64,
    /// Smallest orbit of a nonzero character, with its lexicographically
    /// least member.
    pub min_nontrivial_orbit: Option<u64>,
    pub min_orbit_representative: Option<Vec<u64>>,
    /// Characters fixed by W.
    pub fixed: Vec<Vec<u64>>,
    /// Orbit size to number of orbits of that size.
    pub histogram: BTreeMap<u64, u64>,
}

pub fn orbit_scan(spec: &GroupSpec) -> Result<OrbitScanReport, CharLatticeError> {
    orbit_scan_with_budget(spec, DEFAULT_SCAN_BUDGET)
}

pub fn orbit_scan_with_budget(spec: &GroupSpec, budget: u64) -> Result<OrbitScanReport, CharLatticeError> {
    let m = require_split(spec)?;
    let n = spec.rank();
    let required = (m as u128).pow(n as u32);
    if required > budget as u128 {
        return Err(CharLatticeError::Budget {
            group: spec.name(),
            required,
            budget,
        });
    }
    let total = required as u64;
    let mut report = OrbitScanReport {
        group: spec.name(),
        rank: n,
        modulus: m,
        total,
        vacuous: m == 1,
        orbit_count: 0,
        min_nontrivial_orbit: None,
        min_orbit_representative: None,
        fixed: Vec::new(),
        histogram: BTreeMap::new(),
    };
    let cartan = &spec.datum.cartan;
    let mut visited = vec![false; total as usize];
    let mut v = vec![0u64; n];
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..total as usize {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        stack.push(start);
        let mut size = 0u64;
        while let Some(idx) = stack.pop() {
            size += 1;
            for i in 0..n {
                decode(idx, n, m, &mut v);
                reflect_mod(cartan, i, &mut v, m);
                let j = encode(&v, m);
                if !visited[j] {
                    visited[j] = true;
                    stack.push(j);
                }
            }
        }
        report.orbit_count += 1;
        *report.histogram.entry(size).or_insert(0) += 1;
        decode(start, n, m, &mut v);
        if size == 1 {
            report.fixed.push(v.clone());
        }
        if start != 0 && report.min_nontrivial_orbit.is_none_or(|s| size < s) {
            report.min_nontrivial_orbit = Some(size);
            report.min_orbit_representative = Some(v.clone());
        }
    }
    Ok(report)
}

/// Reduced row echelon form over F_ell, in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, ell: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inverse_mod(rows[r][c], ell);
        for x in rows[r].iter_mut() {
            *x = *x * inv % ell;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + ell * ell - f * rows[r][j] % ell) % ell;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn inverse_mod(a: u64, ell: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(ell as i64));
    e.x.rem_euclid(ell as i64) as u64
}

/// Basis of `{v : M v = v for every M}` over F_ell.
pub fn fixed_subspace_mod_ell(matrices: &[Matrix], ell: u64) -> Result<Vec<Vec<u64>>, CharLatticeError> {
    if !crate::rootdata::is_prime(ell) {
        return Err(CharLatticeError::Malformed(format!("{ell} is not prime")));
    }
    let n = matrices.first().map_or(0, Vec::len);
    if matrices
        .iter()
        .any(|m| m.len() != n || m.iter().any(|row| row.len() != n))
    {
        return Err(CharLatticeError::Malformed("matrices must be square of equal size".into()));
    }
    let li = ell as i64;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for m in matrices {
        for (i, row) in m.iter().enumerate() {
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| (x - i64::from(i == j)).rem_euclid(li) as u64)
                    .collect(),
            );
        }
    }
    if rows.is_empty() {
        rows.push(vec![0; n]);
    }
    let pivots = rref(&mut rows, ell);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (ell - row[f]) % ell;
            }
            v
        })
        .collect();
    Ok(basis)
}

/// Incremental echelon basis over F_ell.
struct Echelon {
    ell: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn new(ell: u64) -> Self {
        Echelon { ell, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[u64]) {
        let ell = self.ell;
        let mut w = v.to_vec();
        for (pc, row) in &self.rows {
            let f = w[*pc];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = (*x + ell * ell - f * y % ell) % ell;
                }
            }
        }
        if let Some(pc) = w.iter().position(|&x| x != 0) {
            let inv = inverse_mod(w[pc], ell);
            for x in w.iter_mut() {
                *x = *x * inv % ell;
            }
            self.rows.push((pc, w));
        }
    }
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(v: &mut [u64], ell: u64) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let inv = inverse_mod(lead, ell);
            for x in v.iter_mut() {
                *x = *x * inv % ell;
            }
        }
    }
}

/// A nonzero vector of F_ell^n whose W-span is a proper subspace, with the
/// dimension of that span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinWitness {
    pub vector: Vec<u64>,
    pub span_dim: usize,
}

/// Searches projective points of `X/ell X` in lexicographic order for one
/// spinning to a proper W-submodule.
pub fn reducibility_witness(datum: &RootDatum, ell: u64) -> Result<Option<SpinWitness>, CharLatticeError> {
    let n = datum.rank;
    if !matches!(ell, 2 | 3 | 5 | 7) || n > 8 {
        return Err(CharLatticeError::Gate { ell, rank: n });
    }
    let total = (ell as usize).pow(n as u32);
    let mut visited = vec![false; total];
    let mut v = vec![0u64; n];
    let mut stack = Vec::new();
    for start in 1..total {
        if visited[start] {
            continue;
        }
        decode(start, n, ell, &mut v);
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        visited[start] = true;
        stack.push(start);
        let mut span = Echelon::new(ell);
        while let Some(idx) = stack.pop() {
            decode(idx, n, ell, &mut v);
            if span.rank() < n {
                span.insert(&v);
            }
            for i in 0..n {
                let mut w = v.clone();
                reflect_mod(&datum.cartan, i, &mut w, ell);
                normalize(&mut w, ell);
                let j = encode(&w, ell);
                if !visited[j] {
                    visited[j] = true;
                    stack.push(j);
                }
            }
        }
        if span.rank() < n {
            decode(start, n, ell, &mut v);
            return Ok(Some(SpinWitness {
                vector: v.clone(),
                span_dim: span.rank(),
            }));
        }
    }
    Ok(None)
}

pub fn is_irreducible_mod_ell(datum: &RootDatum, ell: u64) -> Result<bool, CharLatticeError> {
    Ok(reducibility_witness(datum, ell)?.is_none())
}

/// Irreducibility of `X/ell X` predicted by the known classification:
/// type A_{n-1} needs `gcd(ell, n) = 1` (A1 is one-dimensional and always
/// irreducible), B/C/D/F4/E7 fail only at 2, E6 and G2 only at 3, E8 never.
pub fn predicted_irreducible(family: Family, rank: usize, ell: u64) -> bool {
    match family {
        Family::A => rank == 1 || ell.gcd(&(rank as u64 + 1)) == 1,
        Family::B | Family::C | Family::D | Family::F4 | Family::E7 => ell != 2,
        Family::E6 | Family::G2 => ell != 3,
        Family::E8 => true,
    }
}
