//! Restricted highest weights, f-stable parabolic subsets and the descent of
//! a weight to the Levi factors.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{
    node_orbits, Family, FieldParam, GroupSpec, Matrix, RootDataError, RootDatum,
};

/// Largest |Δ(G)| the candidate sieve enumerates directly.
pub const DELTA_ENUMERATION_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("subset {0:?} is not stable under the diagram automorphism")]
    NotFStable(Vec<usize>),
    #[error("subset {0:?} must be nonempty and proper")]
    NotProper(Vec<usize>),
    #[error("weight {weight} is not restricted for {group}")]
    OutOfDelta { weight: String, group: String },
    #[error("2F4 is excluded here")]
    TwoF4Rejected,
    #[error("{0} needs an integer field parameter")]
    IntegerFieldOnly(String),
    #[error("{0} must be split")]
    SplitOnly(String),
    #[error("{0} has no proper non-Borel parabolic")]
    RankOne(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("field size {base}^{exp} overflows")]
    FieldOverflow { base: u64, exp: u32 },
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// Coefficients `(a_1, ..., a_n)` of a weight on the fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coeffs: Vec<u64>,
}

impl Weight {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Weight { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coeffs: vec![0; rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Whether `mu` is a restricted weight of `spec`.
pub fn in_delta(spec: &GroupSpec, mu: &Weight) -> bool {
    mu.rank() == spec.rank()
        && mu
            .coeffs
            .iter()
            .zip(spec.node_bounds())
            .all(|(&a, b)| a < b)
}

fn check_delta(spec: &GroupSpec, mu: &Weight) -> Result<(), WeightError> {
    if in_delta(spec, mu) {
        Ok(())
    } else {
        Err(WeightError::OutOfDelta {
            weight: mu.to_string(),
            group: spec.name(),
        })
    }
}

/// Lexicographic iterator over Δ(G).
#[derive(Debug, Clone)]
pub struct DeltaIter {
    bounds: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl Iterator for DeltaIter {
    type Item = Weight;

    fn next(&mut self) -> Option<Weight> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        let mut advanced = false;
        while k > 0 {
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.bounds[k] {
                advanced = true;
                break;
            }
            succ[k] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(Weight::new(cur))
    }
}

/// `|Δ(G)|` and a lexicographic iterator over it.
pub fn enumerate_delta(spec: &GroupSpec) -> (u128, DeltaIter) {
    let bounds = spec.node_bounds();
    let count = bounds.iter().map(|&b| b as u128).product();
    let start = if bounds.iter().all(|&b| b > 0) {
        Some(vec![0; bounds.len()])
    } else {
        None
    };
    (count, DeltaIter { bounds, next: start })
}

/// Highest weight of the Steinberg module: every coefficient at its bound minus one.
pub fn steinberg_weight(spec: &GroupSpec) -> Weight {
    Weight::new(spec.node_bounds().iter().map(|b| b - 1).collect())
}

pub fn is_steinberg(spec: &GroupSpec, mu: &Weight) -> bool {
    *mu == steinberg_weight(spec)
}

/// `|G|_p`: `q^{N+}`, or `p^{(2e+1) N+ / 2}` for Suzuki and Ree groups.
pub fn steinberg_dim(spec: &GroupSpec) -> BigUint {
    let n_plus = spec.datum.positive_root_count;
    match spec.field {
        FieldParam::Integer(q) => BigUint::from(q).pow(n_plus as u32),
        FieldParam::SuzukiRee { p, e } => {
            let exp = (2 * e as u64 + 1) * n_plus;
            debug_assert!(exp.is_multiple_of(2));
            BigUint::from(p).pow((exp / 2) as u32)
        }
    }
}

/// An f-stable set of nodes with its connected components and the
/// f-orbits of those components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicSubset {
    pub nodes: Vec<usize>,
    /// Connected components, each sorted, ordered by smallest node.
    pub components: Vec<Vec<usize>>,
    /// Orbits of f on components, as indices into `components`, starting
    /// from the component with the smallest node.
    pub component_orbits: Vec<Vec<usize>>,
}

impl ParabolicSubset {
    pub fn new(datum: &RootDatum, nodes: &[usize]) -> Result<Self, WeightError> {
        let mut nodes = nodes.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&bad) = nodes.iter().find(|&&i| i >= datum.rank) {
            return Err(RootDataError::Node {
                node: bad,
                rank: datum.rank,
            }
            .into());
        }
        if nodes.iter().any(|&i| !nodes.contains(&datum.diagram_perm[i])) {
            return Err(WeightError::NotFStable(nodes));
        }
        let components = components(datum, &nodes);
        let comp_of = |node: usize| components.iter().position(|c| c.contains(&node)).unwrap();
        let mut seen = vec![false; components.len()];
        let mut component_orbits = Vec::new();
        for c in 0..components.len() {
            if seen[c] {
                continue;
            }
            let mut orbit = vec![c];
            seen[c] = true;
            let mut d = comp_of(datum.diagram_perm[components[c][0]]);
            while d != c {
                seen[d] = true;
                orbit.push(d);
                d = comp_of(datum.diagram_perm[components[d][0]]);
            }
            component_orbits.push(orbit);
        }
        Ok(ParabolicSubset {
            nodes,
            components,
            component_orbits,
        })
    }

    pub fn is_proper_nonempty(&self, rank: usize) -> bool {
        !self.nodes.is_empty() && self.nodes.len() < rank
    }
}

fn components(datum: &RootDatum, nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; datum.rank];
    let mut out = Vec::new();
    for &s in nodes {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            for v in datum.neighbours(u) {
                if nodes.contains(&v) && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// All nonempty proper f-stable subsets, by increasing bitmask.
pub fn f_stable_subsets(datum: &RootDatum) -> Vec<ParabolicSubset> {
    let orbits = node_orbits(datum);
    let k = orbits.len();
    let mut masks: Vec<u32> = (1..(1u32 << k))
        .filter(|&m| m != (1u32 << k) - 1)
        .map(|m| {
            (0..k)
                .filter(|b| m >> b & 1 == 1)
                .flat_map(|b| orbits[b].iter().map(|&i| 1u32 << i))
                .fold(0, |a, b| a | b)
        })
        .collect();
    masks.sort_unstable();
    masks
        .into_iter()
        .map(|m| {
            let nodes: Vec<usize> = (0..datum.rank).filter(|i| m >> i & 1 == 1).collect();
            ParabolicSubset::new(datum, &nodes).expect("union of orbits is f-stable")
        })
        .collect()
}

/// The group and weight obtained on one f-orbit of components of a Levi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descendant {
    pub spec: GroupSpec,
    pub weight: Weight,
    /// Original node for each node of the descendant.
    pub node_map: Vec<usize>,
    /// Number of components merged into this descendant.
    pub orbit_len: usize,
}

impl Descendant {
    /// Type A1 over a prime field, A2(2) or 2A2(2), carrying weight zero.
    pub fn is_small_trivial(&self) -> bool {
        if !self.weight.is_zero() {
            return false;
        }
        let d = &self.spec.datum;
        match (d.family, d.rank, d.twist_order, self.spec.field) {
            (Family::A, 1, 1, FieldParam::Integer(q)) => crate::rootdata::is_prime(q),
            (Family::A, 2, _, FieldParam::Integer(2)) => true,
            _ => false,
        }
    }

    pub fn is_steinberg(&self) -> bool {
        is_steinberg(&self.spec, &self.weight)
    }
}

/// Finds the lexicographically first bijection from standard nodes of
/// `std` to `nodes` matching Cartan entries and, when given, conjugating
/// the diagram automorphism.
fn match_standard(
    cartan: &Matrix,
    nodes: &[usize],
    perm: Option<&[usize]>,
    std: &RootDatum,
) -> Option<Vec<usize>> {
    fn extend(
        cartan: &Matrix,
        nodes: &[usize],
        perm: Option<&[usize]>,
        std: &RootDatum,
        chosen: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = chosen.len();
        if k == nodes.len() {
            if let Some(f) = perm {
                return (0..k).all(|i| f[nodes[chosen[i]]] == nodes[chosen[std.diagram_perm[i]]]);
            }
            return true;
        }
        for c in 0..nodes.len() {
            if used[c] {
                continue;
            }
            let ok = (0..k).all(|i| {
                cartan[nodes[chosen[i]]][nodes[c]] == std.cartan[i][k]
                    && cartan[nodes[c]][nodes[chosen[i]]] == std.cartan[k][i]
            });
            if !ok {
                continue;
            }
            chosen.push(c);
            used[c] = true;
            if extend(cartan, nodes, perm, std, chosen, used) {
                return true;
            }
            chosen.pop();
            used[c] = false;
        }
        false
    }
    let mut chosen = Vec::new();
    let mut used = vec![false; nodes.len()];
    extend(cartan, nodes, perm, std, &mut chosen, &mut used)
        .then(|| chosen.into_iter().map(|c| nodes[c]).collect())
}

/// Standard datum isomorphic to the subdiagram on `nodes`, with the map
/// from standard node to original node. `perm` is f restricted to `nodes`
/// when it acts nontrivially.
fn identify_component(
    parent: &RootDatum,
    nodes: &[usize],
    perm: Option<&[usize]>,
) -> Result<(RootDatum, Vec<usize>), WeightError> {
    let k = nodes.len();
    let twist = match perm {
        None => 1,
        Some(f) => {
            let mut order = 1u8;
            let mut cur: Vec<usize> = nodes.iter().map(|&i| f[i]).collect();
            while cur != nodes {
                cur = cur.iter().map(|&i| f[i]).collect();
                order += 1;
            }
            order
        }
    };
    for fam in Family::ALL {
        let Ok(std) = RootDatum::new(fam, k, twist) else {
            continue;
        };
        let p = if twist == 1 { None } else { perm };
        if let Some(map) = match_standard(&parent.cartan, nodes, p, &std) {
            return Ok((std, map));
        }
    }
    Err(WeightError::Unsupported(format!(
        "no standard type for nodes {nodes:?} of {}",
        parent.label()
    )))
}

fn check_subset(spec: &GroupSpec, j: &ParabolicSubset) -> Result<(), WeightError> {
    if !j.is_proper_nonempty(spec.rank()) {
        return Err(WeightError::NotProper(j.nodes.clone()));
    }
    let fresh = ParabolicSubset::new(&spec.datum, &j.nodes)?;
    if fresh != *j {
        return Err(WeightError::Unsupported("inconsistent component data".into()));
    }
    Ok(())
}

/// Descends `mu` to the Levi factor of the parabolic attached to `j`: one
/// descendant per f-orbit of components.
pub fn descend_weight(
    spec: &GroupSpec,
    j: &ParabolicSubset,
    mu: &Weight,
) -> Result<Vec<Descendant>, WeightError> {
    check_subset(spec, j)?;
    check_delta(spec, mu)?;
    let datum = &spec.datum;
    let f = &datum.diagram_perm;
    let mut out = Vec::new();
    for orbit in &j.component_orbits {
        let a = orbit.len();
        let first = &j.components[orbit[0]];
        if a == 1 {
            let acts = first.iter().any(|&i| f[i] != i);
            let (std, map) = identify_component(datum, first, acts.then_some(f.as_slice()))?;
            let weight = Weight::new(map.iter().map(|&i| mu.coeffs[i]).collect());
            let spec_d = GroupSpec::new(std, spec.field)?;
            out.push(Descendant {
                spec: spec_d,
                weight,
                node_map: map,
                orbit_len: 1,
            });
            continue;
        }
        match spec.field {
            FieldParam::Integer(q) => {
                let (std, map) = identify_component(datum, first, None)?;
                let qa = q
                    .checked_pow(a as u32)
                    .ok_or(WeightError::FieldOverflow { base: q, exp: a as u32 })?;
                let mut coeffs = Vec::with_capacity(map.len());
                for &node in &map {
                    let mut cur = node;
                    let mut c = 0u64;
                    let mut scale = 1u64;
                    for _ in 0..a {
                        c += mu.coeffs[cur] * scale;
                        scale *= q;
                        cur = f[cur];
                    }
                    if cur != node {
                        return Err(WeightError::Unsupported(format!(
                            "f^{a} moves node {node} of {}",
                            datum.label()
                        )));
                    }
                    coeffs.push(c);
                }
                let spec_d = GroupSpec::new(std, FieldParam::Integer(qa))?;
                out.push(Descendant {
                    spec: spec_d,
                    weight: Weight::new(coeffs),
                    node_map: map,
                    orbit_len: a,
                });
            }
            FieldParam::SuzukiRee { p, e } => {
                // two single nodes swapped by f, one long and one short
                let comps: Vec<&Vec<usize>> = orbit.iter().map(|&c| &j.components[c]).collect();
                if a != 2 || comps.iter().any(|c| c.len() != 1) {
                    return Err(WeightError::Unsupported(format!(
                        "Suzuki-Ree descent through {:?}",
                        j.nodes
                    )));
                }
                let (long, short) = if datum.long[comps[0][0]] {
                    (comps[0][0], comps[1][0])
                } else {
                    (comps[1][0], comps[0][0])
                };
                let q1 = p.pow(e);
                let qf = p.pow(2 * e + 1);
                let spec_d = GroupSpec::sl(2, qf)?;
                out.push(Descendant {
                    spec: spec_d,
                    weight: Weight::new(vec![mu.coeffs[long] + q1 * mu.coeffs[short]]),
                    node_map: vec![long],
                    orbit_len: 2,
                });
            }
        }
    }
    Ok(out)
}

fn is_two_f4(spec: &GroupSpec) -> bool {
    spec.datum.family == Family::F4 && spec.datum.twist_order == 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentFlags {
    /// Every coefficient on J vanishes: the Levi module is one-dimensional.
    pub is_dim1: bool,
    /// Every coefficient on J is maximal: the Levi module has defect zero.
    pub is_steinberg: bool,
}

pub fn descent_flags(
    spec: &GroupSpec,
    j: &ParabolicSubset,
    mu: &Weight,
) -> Result<DescentFlags, WeightError> {
    if is_two_f4(spec) {
        return Err(WeightError::TwoF4Rejected);
    }
    check_subset(spec, j)?;
    check_delta(spec, mu)?;
    Ok(flags_unchecked(spec, &j.nodes, mu))
}

fn flags_unchecked(spec: &GroupSpec, nodes: &[usize], mu: &Weight) -> DescentFlags {
    let bounds = spec.node_bounds();
    DescentFlags {
        is_dim1: nodes.iter().all(|&i| mu.coeffs[i] == 0),
        is_steinberg: nodes.iter().all(|&i| mu.coeffs[i] + 1 == bounds[i]),
    }
}

/// Whether the restriction of `V_mu` to a Borel subgroup has trivial socle:
/// every coefficient is 0 or q-1 and the weight is f-invariant.
pub fn socle_trivial_on_borel(spec: &GroupSpec, mu: &Weight) -> Result<bool, WeightError> {
    let q = spec.q().ok_or_else(|| WeightError::IntegerFieldOnly(spec.name()))?;
    check_delta(spec, mu)?;
    let f = &spec.datum.diagram_perm;
    Ok(mu.coeffs.iter().all(|&a| a == 0 || a == q - 1)
        && (0..spec.rank()).all(|i| mu.coeffs[f[i]] == mu.coeffs[i]))
}

/// Whether `mu` survives the sieve on every nonempty proper f-stable J.
fn passes_sieve(spec: &GroupSpec, subsets: &[ParabolicSubset], mu: &Weight) -> Result<bool, WeightError> {
    for j in subsets {
        if flags_unchecked(spec, &j.nodes, mu).is_steinberg {
            continue;
        }
        let desc = descend_weight(spec, j, mu)?;
        if !desc.iter().all(Descendant::is_small_trivial) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sieve_preconditions(spec: &GroupSpec) -> Result<(), WeightError> {
    if spec.bn_rank() < 2 {
        return Err(WeightError::RankOne(spec.name()));
    }
    match spec.field {
        FieldParam::Integer(_) => Ok(()),
        FieldParam::SuzukiRee { e, .. } if is_two_f4(spec) && e >= 1 => Ok(()),
        _ => Err(WeightError::Unsupported(format!(
            "candidate sieve for {}",
            spec.name()
        ))),
    }
}

/// Restricted weights other than 0 and the Steinberg weight whose module
/// restricts, on every non-Borel proper parabolic, either to a defect-zero
/// Levi module or to the trivial module of a Levi of type A1(p), A2(2) or
/// 2A2(2).
///
/// Enumerates Δ(G) when it is small enough; otherwise searches coefficient
/// patterns in {0, bound-1}, which gives the same answer because a
/// coefficient strictly between those values fails on the f-orbit of its node.
pub fn minimal_pim_candidates(spec: &GroupSpec) -> Result<Vec<Weight>, WeightError> {
    sieve_preconditions(spec)?;
    let (count, _) = enumerate_delta(spec);
    if count <= DELTA_ENUMERATION_BUDGET {
        minimal_pim_candidates_by_enumeration(spec)
    } else {
        minimal_pim_candidates_by_pattern(spec)
    }
}

pub fn minimal_pim_candidates_by_enumeration(spec: &GroupSpec) -> Result<Vec<Weight>, WeightError> {
    sieve_preconditions(spec)?;
    let subsets = f_stable_subsets(&spec.datum);
    let st = steinberg_weight(spec);
    let mut out = Vec::new();
    for mu in enumerate_delta(spec).1 {
        if mu.is_zero() || mu == st {
            continue;
        }
        if passes_sieve(spec, &subsets, &mu)? {
            out.push(mu);
        }
    }
    Ok(out)
}

pub fn minimal_pim_candidates_by_pattern(spec: &GroupSpec) -> Result<Vec<Weight>, WeightError> {
    sieve_preconditions(spec)?;
    let subsets = f_stable_subsets(&spec.datum);
    let bounds = spec.node_bounds();
    let n = spec.rank();
    let st = steinberg_weight(spec);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        // bit n-1-i set means coefficient i is maximal, so masks run in
        // lexicographic order of the weights
        let mu = Weight::new(
            (0..n)
                .map(|i| if mask >> (n - 1 - i) & 1 == 1 { bounds[i] - 1 } else { 0 })
                .collect(),
        );
        if mu.is_zero() || mu == st {
            continue;
        }
        if passes_sieve(spec, &subsets, &mu)? {
            out.push(mu);
        }
    }
    Ok(out)
}

/// Coefficient class in a candidate pattern over a prime field of
/// unspecified odd characteristic p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternCoeff {
    Zero,
    PMinusOne,
}

impl fmt::Display for PatternCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternCoeff::Zero => "0",
            PatternCoeff::PMinusOne => "p-1",
        })
    }
}

/// The candidate list for G(p) with p an odd prime, as patterns in
/// {0, p-1}. Descendant field sizes are powers of p, so A2(2) never occurs
/// and A1 over the prime field is the only small type with trivial weight.
pub fn candidate_patterns(datum: &RootDatum) -> Result<Vec<Vec<PatternCoeff>>, WeightError> {
    if node_orbits(datum).len() < 2 {
        return Err(WeightError::RankOne(datum.label()));
    }
    let subsets = f_stable_subsets(datum);
    let n = datum.rank;
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) - 1 {
        let top: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
        let ok = subsets.iter().all(|j| {
            let all_top = j.nodes.iter().all(|&i| top[i]);
            let all_zero = j.nodes.iter().all(|&i| !top[i]);
            // a single f-fixed node descends to A1(p); anything else is
            // bigger or lives over p^a with a >= 2
            let prime_a1 = j.components.iter().all(|c| c.len() == 1)
                && j.component_orbits.iter().all(|o| o.len() == 1);
            all_top || (all_zero && prime_a1)
        });
        if ok {
            out.push(
                top.iter()
                    .map(|&t| if t { PatternCoeff::PMinusOne } else { PatternCoeff::Zero })
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// Node sets of the Levi factors on which the factor-2 bound is tested.
fn doubling_subsets(spec: &GroupSpec) -> Result<Vec<Vec<usize>>, WeightError> {
    let d = &spec.datum;
    let r = d.rank;
    match (d.family, d.twist_order) {
        (Family::A, 2) if r >= 3 => {
            let (n, k) = (r.div_ceil(2), (r + 1) % 2);
            let mut j: Vec<usize> = (0..n - 1).collect();
            j.extend(n + k..r);
            Ok(vec![j])
        }
        (Family::B | Family::C, 1) => Ok(vec![(0..r - 1).collect()]),
        (Family::D, 2) => Ok(vec![(0..r - 2).collect()]),
        (Family::D, 1) if r.is_multiple_of(2) => {
            let mut other: Vec<usize> = (0..r - 2).collect();
            other.push(r - 1);
            Ok(vec![(0..r - 1).collect(), other])
        }
        _ => Err(WeightError::Unsupported(format!(
            "factor-2 bound for {}",
            spec.name()
        ))),
    }
}

/// Whether the palindrome escape fails on the given Levi node set.
fn doubling_on(spec: &GroupSpec, j: &[usize], mu: &Weight) -> bool {
    let d = &spec.datum;
    if d.family == Family::A && d.twist_order == 2 {
        let r = d.rank;
        let (n, k) = (r.div_ceil(2), (r + 1) % 2);
        // compare a_i with a_{n+k+i}, 1-based
        return (0..n - 1).any(|i| mu.coeffs[i] != mu.coeffs[n + k + i]);
    }
    // order the A_{n-1} chain from its end of degree one
    let chain = chain_order(d, j);
    let w: Vec<u64> = chain.iter().map(|&i| mu.coeffs[i]).collect();
    let rev: Vec<u64> = w.iter().rev().copied().collect();
    w != rev
}

fn chain_order(d: &RootDatum, j: &[usize]) -> Vec<usize> {
    let deg = |i: usize| d.neighbours(i).filter(|v| j.contains(v)).count();
    let Some(&start) = j.iter().find(|&&i| deg(i) <= 1) else {
        return j.to_vec();
    };
    let mut out = vec![start];
    while out.len() < j.len() {
        let last = *out.last().unwrap();
        let next = d
            .neighbours(last)
            .find(|v| j.contains(v) && !out.contains(v))
            .expect("path is connected");
        out.push(next);
    }
    out
}

/// Whether the factor-2 bound applies: the restricted weight on the
/// designated type-A Levi is not self-dual. For split D_n only even n is
/// supported (-1 lies in W(D_n) exactly then), and both A_{n-1} Levis are
/// tested.
pub fn doubling_applicable(spec: &GroupSpec, mu: &Weight) -> Result<bool, WeightError> {
    check_delta(spec, mu)?;
    if spec.q().is_none() {
        return Err(WeightError::IntegerFieldOnly(spec.name()));
    }
    let subsets = doubling_subsets(spec)?;
    Ok(subsets.iter().any(|j| doubling_on(spec, j, mu)))
}

/// The Levi node sets where the factor-2 bound applies for `mu`.
pub fn doubling_witnesses(spec: &GroupSpec, mu: &Weight) -> Result<Vec<Vec<usize>>, WeightError> {
    check_delta(spec, mu)?;
    if spec.q().is_none() {
        return Err(WeightError::IntegerFieldOnly(spec.name()));
    }
    Ok(doubling_subsets(spec)?
        .into_iter()
        .filter(|j| doubling_on(spec, j, mu))
        .collect())
}

/// A largest set of pairwise non-adjacent nodes with coefficients outside
/// {0, q-1}; ties go to the lexicographically smallest node list.
pub fn independent_violating_set(spec: &GroupSpec, mu: &Weight) -> Result<Vec<usize>, WeightError> {
    if !spec.is_split() {
        return Err(WeightError::SplitOnly(spec.name()));
    }
    let q = spec.q().ok_or_else(|| WeightError::IntegerFieldOnly(spec.name()))?;
    check_delta(spec, mu)?;
    let d = &spec.datum;
    let bad: Vec<usize> = (0..d.rank)
        .filter(|&i| mu.coeffs[i] != 0 && mu.coeffs[i] != q - 1)
        .collect();
    let mut best: Vec<usize> = Vec::new();
    for mask in 1u32..(1 << bad.len()) {
        let set: Vec<usize> = (0..bad.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| bad[b])
            .collect();
        let independent = set
            .iter()
            .enumerate()
            .all(|(x, &u)| set[x + 1..].iter().all(|&v| !d.adjacent(u, v)));
        if independent && (set.len() > best.len() || (set.len() == best.len() && set < best)) {
            best = set;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[u64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn delta_counts() {
        assert_eq!(enumerate_delta(&GroupSpec::sl(2, 7).unwrap()).0, 7);
        let sz = GroupSpec::suzuki_ree(Family::B, 1).unwrap();
        assert_eq!(enumerate_delta(&sz).0, 8);
        assert_eq!(enumerate_delta(&GroupSpec::su(4, 5).unwrap()).0, 125);
        let all: Vec<_> = enumerate_delta(&GroupSpec::sl(3, 2).unwrap()).1.collect();
        assert_eq!(all, vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[1, 1])]);
    }

    #[test]
    fn steinberg_data() {
        let g = GroupSpec::sl(3, 5).unwrap();
        assert_eq!(steinberg_weight(&g), w(&[4, 4]));
        assert_eq!(steinberg_dim(&g), BigUint::from(125u32));
        let ree = GroupSpec::suzuki_ree(Family::G2, 1).unwrap();
        // (3 q1 - 1, q1 - 1) with q1 = 3
        assert_eq!(steinberg_weight(&ree), w(&[8, 2]));
        assert_eq!(steinberg_dim(&ree), BigUint::from(27u32).pow(3));
        let f4 = GroupSpec::suzuki_ree(Family::F4, 1).unwrap();
        assert_eq!(steinberg_weight(&f4), w(&[1, 1, 3, 3]));
        let sz = GroupSpec::suzuki_ree(Family::B, 2).unwrap();
        assert_eq!(steinberg_dim(&sz), BigUint::from(32u32).pow(2));
    }

    #[test]
    fn su4_outer_pair() {
        let g = GroupSpec::su(4, 3).unwrap();
        let j = ParabolicSubset::new(&g.datum, &[0, 2]).unwrap();
        let d = descend_weight(&g, &j, &w(&[1, 2, 2])).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].spec, GroupSpec::sl(2, 9).unwrap());
        assert_eq!(d[0].weight, w(&[1 + 3 * 2]));
    }

    #[test]
    fn triality_middle_node() {
        let g = GroupSpec::triality(5).unwrap();
        let j = ParabolicSubset::new(&g.datum, &[1]).unwrap();
        let d = descend_weight(&g, &j, &w(&[1, 3, 2, 4])).unwrap();
        assert_eq!(d[0].spec, GroupSpec::sl(2, 5).unwrap());
        assert_eq!(d[0].weight, w(&[3]));
        let leaves = ParabolicSubset::new(&g.datum, &[0, 2, 3]).unwrap();
        let d = descend_weight(&g, &leaves, &w(&[1, 3, 2, 4])).unwrap();
        assert_eq!(d[0].spec, GroupSpec::sl(2, 125).unwrap());
        // a_1 + q a_{f(1)} + q^2 a_{f^2(1)} with f: 1 -> 3 -> 4
        assert_eq!(d[0].weight, w(&[1 + 5 * 2 + 25 * 4]));
    }

    #[test]
    fn not_f_stable() {
        let g = GroupSpec::su(4, 3).unwrap();
        assert!(matches!(
            ParabolicSubset::new(&g.datum, &[0]),
            Err(WeightError::NotFStable(_))
        ));
    }

    #[test]
    fn twisted_component() {
        let g = GroupSpec::su(5, 2).unwrap();
        let j = ParabolicSubset::new(&g.datum, &[1, 2]).unwrap();
        let d = descend_weight(&g, &j, &w(&[1, 0, 0, 1])).unwrap();
        assert_eq!(d[0].spec, GroupSpec::su(3, 2).unwrap());
        assert!(d[0].is_small_trivial());
    }

    #[test]
    fn two_f4_descent() {
        let g = GroupSpec::suzuki_ree(Family::F4, 1).unwrap();
        let j = ParabolicSubset::new(&g.datum, &[1, 2]).unwrap();
        let d = descend_weight(&g, &j, &w(&[0, 1, 3, 0])).unwrap();
        assert_eq!(d[0].spec, GroupSpec::suzuki_ree(Family::B, 1).unwrap());
        assert!(d[0].is_steinberg());
        let j = ParabolicSubset::new(&g.datum, &[0, 3]).unwrap();
        let d = descend_weight(&g, &j, &w(&[1, 0, 0, 3])).unwrap();
        assert_eq!(d[0].spec, GroupSpec::sl(2, 8).unwrap());
        assert_eq!(d[0].weight, w(&[1 + 2 * 3]));
        assert!(matches!(
            descent_flags(&g, &j, &w(&[0, 0, 0, 0])),
            Err(WeightError::TwoF4Rejected)
        ));
    }

    #[test]
    fn flags() {
        let g = GroupSpec::su(4, 5).unwrap();
        let j = ParabolicSubset::new(&g.datum, &[0, 2]).unwrap();
        let f = descent_flags(&g, &j, &w(&[4, 0, 4])).unwrap();
        assert!(f.is_steinberg && !f.is_dim1);
        let g = GroupSpec::sl(4, 5).unwrap();
        let j = ParabolicSubset::new(&g.datum, &[1]).unwrap();
        let f = descent_flags(&g, &j, &w(&[4, 1, 4])).unwrap();
        assert!(!f.is_steinberg && !f.is_dim1);
    }

    #[test]
    fn borel_socle() {
        let g = GroupSpec::su(4, 5).unwrap();
        assert!(socle_trivial_on_borel(&g, &w(&[0, 0, 0])).unwrap());
        assert!(socle_trivial_on_borel(&g, &steinberg_weight(&g)).unwrap());
        assert!(!socle_trivial_on_borel(&g, &w(&[4, 0, 0])).unwrap());
        let sz = GroupSpec::suzuki_ree(Family::B, 1).unwrap();
        assert!(socle_trivial_on_borel(&sz, &w(&[0, 0])).is_err());
    }

    #[test]
    fn candidate_lists() {
        for p in [3u64, 5] {
            let t = p - 1;
            assert_eq!(
                minimal_pim_candidates(&GroupSpec::sl(3, p).unwrap()).unwrap(),
                vec![w(&[0, t]), w(&[t, 0])]
            );
            assert_eq!(
                minimal_pim_candidates(&GroupSpec::sp(4, p).unwrap()).unwrap(),
                vec![w(&[0, t]), w(&[t, 0])]
            );
            assert_eq!(
                minimal_pim_candidates(&GroupSpec::split(Family::G2, 2, p).unwrap()).unwrap(),
                vec![w(&[0, t]), w(&[t, 0])]
            );
            assert_eq!(
                minimal_pim_candidates(&GroupSpec::su(4, p).unwrap()).unwrap(),
                vec![w(&[t, 0, t])]
            );
        }
        assert_eq!(
            minimal_pim_candidates(&GroupSpec::triality(3).unwrap()).unwrap(),
            vec![w(&[2, 0, 2, 2])]
        );
        assert_eq!(
            minimal_pim_candidates(&GroupSpec::su(5, 2).unwrap()).unwrap(),
            vec![w(&[1, 0, 0, 1])]
        );
        assert_eq!(
            minimal_pim_candidates(&GroupSpec::su(4, 2).unwrap()).unwrap(),
            vec![w(&[1, 0, 1])]
        );
        assert!(minimal_pim_candidates(&GroupSpec::suzuki_ree(Family::F4, 1).unwrap())
            .unwrap()
            .is_empty());
        assert!(matches!(
            minimal_pim_candidates(&GroupSpec::sl(2, 5).unwrap()),
            Err(WeightError::RankOne(_))
        ));
    }

    #[test]
    fn enumeration_matches_patterns() {
        for g in [
            GroupSpec::sl(4, 3).unwrap(),
            GroupSpec::sp(6, 3).unwrap(),
            GroupSpec::su(5, 3).unwrap(),
            GroupSpec::sl(3, 4).unwrap(),
            GroupSpec::split(Family::B, 3, 2).unwrap(),
            GroupSpec::twisted(Family::D, 4, 2, 2).unwrap(),
        ] {
            assert_eq!(
                minimal_pim_candidates_by_enumeration(&g).unwrap(),
                minimal_pim_candidates_by_pattern(&g).unwrap(),
                "{}",
                g.name()
            );
        }
    }

    #[test]
    fn symbolic_patterns() {
        use PatternCoeff::*;
        let su4 = RootDatum::new(Family::A, 3, 2).unwrap();
        assert_eq!(candidate_patterns(&su4).unwrap(), vec![vec![PMinusOne, Zero, PMinusOne]]);
        let d4 = RootDatum::new(Family::D, 4, 3).unwrap();
        assert_eq!(
            candidate_patterns(&d4).unwrap(),
            vec![vec![PMinusOne, Zero, PMinusOne, PMinusOne]]
        );
        let a2 = RootDatum::split(Family::A, 2).unwrap();
        assert_eq!(
            candidate_patterns(&a2).unwrap(),
            vec![vec![Zero, PMinusOne], vec![PMinusOne, Zero]]
        );
    }

    #[test]
    fn doubling() {
        let g = GroupSpec::su(4, 5).unwrap();
        assert!(doubling_applicable(&g, &w(&[1, 0, 2])).unwrap());
        assert!(!doubling_applicable(&g, &w(&[1, 0, 1])).unwrap());
        let c3 = GroupSpec::sp(6, 5).unwrap();
        assert!(doubling_applicable(&c3, &w(&[2, 1, 0])).unwrap());
        assert!(!doubling_applicable(&c3, &w(&[2, 2, 3])).unwrap());
        let d5 = GroupSpec::spin_plus(10, 3).unwrap();
        assert!(doubling_applicable(&d5, &w(&[1, 0, 0, 0, 0])).is_err());
        let d4 = GroupSpec::spin_plus(8, 3).unwrap();
        // chain 1-2-3 palindromic, chain 1-2-4 not
        assert_eq!(
            doubling_witnesses(&d4, &w(&[1, 0, 1, 0])).unwrap(),
            vec![vec![0, 1, 3]]
        );
    }

    /// -1 lies in W(D_n) exactly for even n.
    #[test]
    fn minus_one_in_weyl_group_of_d() {
        use crate::rootdata::{identity, mat_mul, reflection_matrices};
        use std::collections::HashSet;
        for (n, expect) in [(4usize, true), (5, false)] {
            let d = RootDatum::split(Family::D, n).unwrap();
            let gens = reflection_matrices(&d);
            let mut seen: HashSet<Matrix> = HashSet::new();
            let mut stack = vec![identity(n)];
            seen.insert(identity(n));
            while let Some(m) = stack.pop() {
                for s in &gens {
                    let x = mat_mul(&m, s);
                    if seen.insert(x.clone()) {
                        stack.push(x);
                    }
                }
            }
            assert_eq!(seen.len() as u64, d.weyl_order);
            let minus: Matrix = identity(n)
                .into_iter()
                .map(|r| r.into_iter().map(|x| -x).collect())
                .collect();
            assert_eq!(seen.contains(&minus), expect, "D{n}");
        }
    }

    #[test]
    fn independent_sets() {
        let g = GroupSpec::sl(5, 4).unwrap();
        assert_eq!(independent_violating_set(&g, &w(&[1, 1, 1, 1])).unwrap(), vec![0, 2]);
        assert!(independent_violating_set(&g, &w(&[0, 3, 3, 0])).unwrap().is_empty());
        assert!(independent_violating_set(&GroupSpec::su(4, 3).unwrap(), &w(&[1, 1, 1])).is_err());
    }

    fn split_specs() -> Vec<GroupSpec> {
        vec![
            GroupSpec::sl(5, 5).unwrap(),
            GroupSpec::sp(8, 3).unwrap(),
            GroupSpec::spin_plus(10, 4).unwrap(),
            GroupSpec::split(Family::F4, 4, 3).unwrap(),
            GroupSpec::split(Family::E6, 6, 2).unwrap(),
        ]
    }

    fn spec_and_weight() -> impl Strategy<Value = (GroupSpec, Weight)> {
        (0..5usize).prop_flat_map(|k| {
            let g = split_specs()[k].clone();
            let bounds = g.node_bounds();
            let coords: Vec<_> = bounds.iter().map(|&b| 0..b).collect();
            (Just(g), coords).prop_map(|(g, c)| (g, Weight::new(c)))
        })
    }

    proptest! {
        #[test]
        fn descendants_are_restricted((g, mu) in spec_and_weight(), mask in 1u32..255) {
            let n = g.rank();
            let nodes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            prop_assume!(!nodes.is_empty() && nodes.len() < n);
            let j = ParabolicSubset::new(&g.datum, &nodes).unwrap();
            for d in descend_weight(&g, &j, &mu).unwrap() {
                prop_assert!(in_delta(&d.spec, &d.weight));
            }
        }

        #[test]
        fn descent_is_transitive((g, mu) in spec_and_weight(), outer in 1u32..255, inner in 1u32..255) {
            let n = g.rank();
            let big: Vec<usize> = (0..n).filter(|i| outer >> i & 1 == 1).collect();
            let small: Vec<usize> = big.iter().copied().filter(|i| inner >> i & 1 == 1).collect();
            prop_assume!(!small.is_empty() && big.len() < n);
            let j = ParabolicSubset::new(&g.datum, &big).unwrap();
            let direct = ParabolicSubset::new(&g.datum, &small).unwrap();
            let mut via: Vec<(usize, u64)> = Vec::new();
            for d in descend_weight(&g, &j, &mu).unwrap() {
                let local: Vec<usize> = (0..d.node_map.len())
                    .filter(|&k| small.contains(&d.node_map[k]))
                    .collect();
                if local.is_empty() {
                    continue;
                }
                if local.len() == d.node_map.len() {
                    via.extend(local.iter().map(|&k| (d.node_map[k], d.weight.coeffs[k])));
                    continue;
                }
                let jj = ParabolicSubset::new(&d.spec.datum, &local).unwrap();
                for dd in descend_weight(&d.spec, &jj, &d.weight).unwrap() {
                    via.extend(dd.node_map.iter().zip(&dd.weight.coeffs).map(|(&k, &c)| (d.node_map[k], c)));
                }
            }
            let mut straight: Vec<(usize, u64)> = descend_weight(&g, &direct, &mu)
                .unwrap()
                .into_iter()
                .flat_map(|d| d.node_map.into_iter().zip(d.weight.coeffs))
                .collect();
            via.sort_unstable();
            straight.sort_unstable();
            prop_assert_eq!(via, straight);
        }

        #[test]
        fn full_set_steinberg_iff_steinberg((g, mu) in spec_and_weight()) {
            let all: Vec<usize> = (0..g.rank()).collect();
            prop_assert_eq!(flags_unchecked(&g, &all, &mu).is_steinberg, is_steinberg(&g, &mu));
        }

        #[test]
        fn candidates_have_trivial_borel_socle(p in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
            for g in [GroupSpec::sl(3, p).unwrap(), GroupSpec::su(4, p).unwrap(), GroupSpec::sp(4, p).unwrap()] {
                for mu in minimal_pim_candidates(&g).unwrap() {
                    prop_assert!(socle_trivial_on_borel(&g, &mu).unwrap());
                }
            }
        }
    }
}
