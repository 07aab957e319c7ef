//! Simple root systems, their Weyl groups acting on the weight lattice, and
//! the group descriptors built on top of them.
//!
//! Nodes are 0-based in code; node `i` is Bourbaki label `i + 1`.
//! Cartan convention: `cartan[j][i] = <alpha_i, alpha_j^vee>`, so the simple
//! root `alpha_i` in fundamental-weight coordinates is column `i`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degrees::poly::{mono, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("illegal rank {rank} for family {family}")]
    Rank { family: Family, rank: usize },
    #[error("illegal twist order {twist} for {family}{rank}")]
    Twist {
        family: Family,
        rank: usize,
        twist: u8,
    },
    #[error("node {node} out of range for rank {rank}")]
    Node { node: usize, rank: usize },
    #[error("field parameter: {0}")]
    Field(String),
    #[error("order formula not embedded for {0}")]
    OrderFormulaNotEmbedded(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    /// Fixed rank for exceptional families.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    /// Parses `A`, `E8`, or the bare letter `E` (rank supplied separately).
    pub fn parse(s: &str, rank: usize) -> Result<Family, RootDataError> {
        let up = s.trim().to_ascii_uppercase();
        let fam = match up.as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => match rank {
                6 => Family::E6,
                7 => Family::E7,
                8 => Family::E8,
                _ => {
                    return Err(RootDataError::Rank {
                        family: Family::E8,
                        rank,
                    })
                }
            },
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F" | "F4" => Family::F4,
            "G" | "G2" => Family::G2,
            _ => return Err(RootDataError::UnknownFamily(s.to_string())),
        };
        Ok(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E",
            Family::E7 => "E",
            Family::E8 => "E",
            Family::F4 => "F",
            Family::G2 => "G",
        };
        f.write_str(s)
    }
}

/// A simple root system with its diagram automorphism and Weyl-group data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub twist_order: u8,
    pub diagram_perm: Vec<usize>,
    pub positive_root_count: u64,
    pub weyl_order: u64,
    /// Smallest degree of a non-linear irreducible character of W; `None`
    /// when W is abelian (type A1).
    pub min_nonlinear_degree: Option<u32>,
    /// `true` on long-root nodes (every node of a simply laced system).
    pub long: Vec<bool>,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize, twist_order: u8) -> Result<Self, RootDataError> {
        build_root_datum(family, rank, twist_order)
    }

    pub fn split(family: Family, rank: usize) -> Result<Self, RootDataError> {
        build_root_datum(family, rank, 1)
    }

    pub fn is_split(&self) -> bool {
        self.twist_order == 1
    }

    /// Label such as `A3` or `2A3`.
    pub fn label(&self) -> String {
        if self.twist_order == 1 {
            format!("{}{}", self.family, self.rank)
        } else {
            format!("{}{}{}", self.twist_order, self.family, self.rank)
        }
    }

    /// Dynkin adjacency: nodes `i != j` joined when the Cartan entry is nonzero.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| self.adjacent(i, j))
    }

    /// Order of `s_i s_j` read off `C[i][j] * C[j][i]`.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            other => panic!("Cartan product {other} outside finite type"),
        }
    }

    /// Degrees of the basic invariants of W.
    pub fn invariant_degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|k| 2 * k).collect(),
            Family::D => {
                let mut d: Vec<u32> = (1..n).map(|k| 2 * k).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::E6 => vec![2, 5, 6, 8, 9, 12],
            Family::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            Family::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            Family::F4 => vec![2, 6, 8, 12],
            Family::G2 => vec![2, 6],
        }
    }

    /// Applies the diagram automorphism to a coefficient vector:
    /// the result has coordinate `f(i)` equal to input coordinate `i`.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.diagram_perm[i]] = x.clone();
        }
        out
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn weyl_order(family: Family, n: usize) -> u64 {
    let n64 = n as u64;
    match family {
        Family::A => factorial(n64 + 1),
        Family::B | Family::C => (1u64 << n) * factorial(n64),
        Family::D => (1u64 << (n - 1)) * factorial(n64),
        Family::E6 => 51_840,
        Family::E7 => 2_903_040,
        Family::E8 => 696_729_600,
        Family::F4 => 1_152,
        Family::G2 => 12,
    }
}

fn positive_roots(family: Family, n: usize) -> u64 {
    let n = n as u64;
    match family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E6 => 36,
        Family::E7 => 63,
        Family::E8 => 120,
        Family::F4 => 24,
        Family::G2 => 6,
    }
}

/// Minimum non-linear character degree of W.
///
/// Classical families give `n - 1` (for the index `n` of S_n, or the rank
/// of B/C/D) except at the small ranks where W has a 2-dimensional
/// irreducible character.
fn min_nonlinear(family: Family, n: usize) -> Option<u32> {
    let n32 = n as u32;
    match family {
        Family::A => match n {
            1 => None,
            2 | 3 => Some(2),
            _ => Some(n32),
        },
        Family::B | Family::C => Some(if n <= 4 { 2 } else { n32 - 1 }),
        Family::D => Some(if n == 4 { 2 } else { n32 - 1 }),
        Family::E6 => Some(6),
        Family::E7 => Some(7),
        Family::E8 => Some(8),
        Family::F4 | Family::G2 => Some(2),
    }
}

fn edges(family: Family, n: usize) -> Vec<(usize, usize)> {
    match family {
        Family::A | Family::B | Family::C | Family::F4 | Family::G2 => {
            (0..n - 1).map(|i| (i, i + 1)).collect()
        }
        Family::D => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            e
        }
    }
}

/// Squared root lengths, normalised so the short roots have length 1
/// (or 2 in simply laced types).
fn root_lengths(family: Family, n: usize) -> Vec<i64> {
    match family {
        Family::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
        Family::F4 => vec![2, 2, 1, 1],
        Family::G2 => vec![1, 3],
        _ => vec![2; n],
    }
}

fn twist_perm(family: Family, n: usize, twist: u8) -> Option<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    match (family, twist) {
        (_, 1) => Some(id),
        (Family::A, 2) if n >= 2 => Some((0..n).map(|i| n - 1 - i).collect()),
        (Family::D, 2) => {
            let mut p = id;
            p.swap(n - 2, n - 1);
            Some(p)
        }
        (Family::D, 3) if n == 4 => Some(vec![2, 1, 3, 0]),
        (Family::E6, 2) => Some(vec![5, 1, 4, 3, 2, 0]),
        (Family::B, 2) if n == 2 => Some(vec![1, 0]),
        (Family::G2, 2) => Some(vec![1, 0]),
        (Family::F4, 2) => Some(vec![3, 2, 1, 0]),
        _ => None,
    }
}

/// Builds a fully populated root datum; rejects illegal combinations.
pub fn build_root_datum(
    family: Family,
    rank: usize,
    twist_order: u8,
) -> Result<RootDatum, RootDataError> {
    let legal_rank = match family.fixed_rank() {
        Some(r) => rank == r,
        None => rank >= family.min_rank(),
    };
    if !legal_rank {
        return Err(RootDataError::Rank { family, rank });
    }
    let diagram_perm = twist_perm(family, rank, twist_order).ok_or(RootDataError::Twist {
        family,
        rank,
        twist: twist_order,
    })?;

    let len = root_lengths(family, rank);
    let mut cartan = vec![vec![0i64; rank]; rank];
    for (j, row) in cartan.iter_mut().enumerate() {
        row[j] = 2;
    }
    for (a, b) in edges(family, rank) {
        // doubled inner product of two adjacent simple roots
        let s = -len[a].max(len[b]);
        // C[j][i] = 2(alpha_i, alpha_j) / (alpha_j, alpha_j)
        cartan[b][a] = s / len[b];
        cartan[a][b] = s / len[a];
    }
    let max_len = *len.iter().max().unwrap();

    Ok(RootDatum {
        family,
        rank,
        cartan,
        twist_order,
        diagram_perm,
        positive_root_count: positive_roots(family, rank),
        weyl_order: weyl_order(family, rank),
        min_nonlinear_degree: min_nonlinear(family, rank),
        long: len.iter().map(|&l| l == max_len).collect(),
    })
}

/// Integer square matrix stored row-major.
pub type Matrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// Matrix of `s_i` on fundamental-weight coordinates:
/// `s_i(lambda) = lambda - lambda_i * (column i of C)`.
pub fn simple_reflection_matrix(datum: &RootDatum, i: usize) -> Result<Matrix, RootDataError> {
    if i >= datum.rank {
        return Err(RootDataError::Node {
            node: i,
            rank: datum.rank,
        });
    }
    let mut m = identity(datum.rank);
    for (r, row) in m.iter_mut().enumerate() {
        row[i] -= datum.cartan[r][i];
    }
    Ok(m)
}

pub fn reflection_matrices(datum: &RootDatum) -> Vec<Matrix> {
    (0..datum.rank)
        .map(|i| simple_reflection_matrix(datum, i).expect("node in range"))
        .collect()
}

/// Applies `s_i` to an integer weight in place.
pub fn reflect(datum: &RootDatum, i: usize, v: &mut [i64]) {
    let a = v[i];
    if a == 0 {
        return;
    }
    for (r, x) in v.iter_mut().enumerate() {
        *x -= a * datum.cartan[r][i];
    }
}

/// Size of the group generated by the simple reflections, by breadth-first
/// closure on matrices. Returns `None` once more than `limit` elements
/// have been seen.
pub fn weyl_closure_size(datum: &RootDatum, limit: u64) -> Option<u64> {
    let n = datum.rank;
    assert!(n <= 8);
    // Right multiplication by s_i only rewrites column i:
    // (M s_i)[r][i] = M[r][i] - sum_t M[r][t] C[t][i].
    let pack = |m: &[i64]| -> [i8; 64] {
        let mut out = [0i8; 64];
        for (o, &x) in out.iter_mut().zip(m) {
            *o = i8::try_from(x).expect("Weyl matrix entry fits in i8");
        }
        out
    };
    let id: Vec<i64> = identity(n).into_iter().flatten().collect();
    let mut seen: HashSet<[i8; 64]> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    seen.insert(pack(&id));
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for i in 0..n {
            let mut next = m.clone();
            for r in 0..n {
                let dot: i64 = (0..n).map(|t| m[r * n + t] * datum.cartan[t][i]).sum();
                next[r * n + i] -= dot;
            }
            if seen.insert(pack(&next)) {
                if seen.len() as u64 > limit {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen.len() as u64)
}

/// Field parameter of a finite group of Lie type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldParam {
    /// Ordinary prime power q.
    Integer(u64),
    /// Suzuki or Ree group with `q^2 = p^(2e+1)`.
    SuzukiRee { p: u64, e: u32 },
}

/// Returns `(p, k)` with `q = p^k` when q is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = q;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// A finite Chevalley group descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub datum: RootDatum,
    pub field: FieldParam,
}

impl GroupSpec {
    pub fn new(datum: RootDatum, field: FieldParam) -> Result<Self, RootDataError> {
        match field {
            FieldParam::Integer(q) => {
                if prime_power(q).is_none() {
                    return Err(RootDataError::Field(format!("q = {q} is not a prime power")));
                }
                let suzuki_ree_shape = matches!(datum.family, Family::B | Family::G2 | Family::F4)
                    && datum.twist_order == 2;
                if suzuki_ree_shape {
                    return Err(RootDataError::Field(format!(
                        "{} needs a Suzuki-Ree parameter",
                        datum.label()
                    )));
                }
            }
            FieldParam::SuzukiRee { p, .. } => {
                let ok = datum.twist_order == 2
                    && matches!(
                        (datum.family, datum.rank, p),
                        (Family::B, 2, 2) | (Family::G2, 2, 3) | (Family::F4, 4, 2)
                    );
                if !ok {
                    return Err(RootDataError::Field(format!(
                        "Suzuki-Ree parameter with p = {p} is illegal for {}",
                        datum.label()
                    )));
                }
            }
        }
        Ok(GroupSpec { datum, field })
    }

    pub fn build(
        family: Family,
        rank: usize,
        twist: u8,
        field: FieldParam,
    ) -> Result<Self, RootDataError> {
        GroupSpec::new(build_root_datum(family, rank, twist)?, field)
    }

    pub fn split(family: Family, rank: usize, q: u64) -> Result<Self, RootDataError> {
        GroupSpec::build(family, rank, 1, FieldParam::Integer(q))
    }

    pub fn twisted(family: Family, rank: usize, twist: u8, q: u64) -> Result<Self, RootDataError> {
        GroupSpec::build(family, rank, twist, FieldParam::Integer(q))
    }

    /// SL(n, q).
    pub fn sl(n: usize, q: u64) -> Result<Self, RootDataError> {
        GroupSpec::split(Family::A, n.saturating_sub(1), q)
    }

    /// SU(n, q).
    pub fn su(n: usize, q: u64) -> Result<Self, RootDataError> {
        GroupSpec::twisted(Family::A, n.saturating_sub(1), 2, q)
    }

    /// Sp(2n, q).
    pub fn sp(two_n: usize, q: u64) -> Result<Self, RootDataError> {
        GroupSpec::split(Family::C, two_n / 2, q)
    }

    /// Spin+(2n, q).
    pub fn spin_plus(two_n: usize, q: u64) -> Result<Self, RootDataError> {
        GroupSpec::split(Family::D, two_n / 2, q)
    }

    pub fn triality(q: u64) -> Result<Self, RootDataError> {
        GroupSpec::twisted(Family::D, 4, 3, q)
    }

    pub fn suzuki_ree(family: Family, e: u32) -> Result<Self, RootDataError> {
        let (rank, p) = match family {
            Family::B => (2, 2),
            Family::G2 => (2, 3),
            Family::F4 => (4, 2),
            _ => return Err(RootDataError::Field(format!("no Suzuki-Ree form of {family}"))),
        };
        GroupSpec::build(family, rank, 2, FieldParam::SuzukiRee { p, e })
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn is_split(&self) -> bool {
        self.datum.is_split()
    }

    /// The integer q, if the field parameter is one.
    pub fn q(&self) -> Option<u64> {
        match self.field {
            FieldParam::Integer(q) => Some(q),
            FieldParam::SuzukiRee { .. } => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.field {
            FieldParam::Integer(q) => prime_power(q).expect("validated").0,
            FieldParam::SuzukiRee { p, .. } => p,
        }
    }

    pub fn is_suzuki_ree(&self) -> bool {
        matches!(self.field, FieldParam::SuzukiRee { .. })
    }

    /// Exclusive upper bound for the coefficient at each node of a
    /// restricted weight.
    pub fn node_bounds(&self) -> Vec<u64> {
        match self.field {
            FieldParam::Integer(q) => vec![q; self.rank()],
            FieldParam::SuzukiRee { p, e } => {
                let q1 = p.pow(e);
                self.datum
                    .long
                    .iter()
                    .map(|&l| if l { q1 } else { p * q1 })
                    .collect()
            }
        }
    }

    /// Number of orbits of the diagram automorphism on nodes.
    pub fn bn_rank(&self) -> usize {
        node_orbits(&self.datum).len()
    }

    /// Human-readable name, e.g. `SL(4,3)` or `3D4(2)`.
    pub fn name(&self) -> String {
        let n = self.rank();
        let q = match self.field {
            FieldParam::Integer(q) => q.to_string(),
            FieldParam::SuzukiRee { p, e } => format!("{p}^{}", 2 * e + 1),
        };
        let tw = self.datum.twist_order;
        match (self.datum.family, tw) {
            (Family::A, 1) => format!("SL({},{q})", n + 1),
            (Family::A, _) => format!("SU({},{q})", n + 1),
            (Family::B, 1) => format!("Spin({},{q})", 2 * n + 1),
            (Family::C, _) => format!("Sp({},{q})", 2 * n),
            (Family::D, 1) => format!("Spin+({},{q})", 2 * n),
            (Family::D, 2) => format!("Spin-({},{q})", 2 * n),
            (Family::D, _) => format!("3D4({q})"),
            (Family::B, _) => format!("2B2(q^2={q})"),
            (Family::G2, 2) => format!("2G2(q^2={q})"),
            (Family::F4, 2) => format!("2F4(q^2={q})"),
            (fam, 1) => format!("{fam}{n}({q})"),
            (fam, t) => format!("{t}{fam}{n}({q})"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Orbits of the diagram automorphism on nodes, each sorted, ordered by
/// smallest member.
pub fn node_orbits(datum: &RootDatum) -> Vec<Vec<usize>> {
    let mut seen = vec![false; datum.rank];
    let mut out = Vec::new();
    for i in 0..datum.rank {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![i];
        seen[i] = true;
        let mut j = datum.diagram_perm[i];
        while j != i {
            seen[j] = true;
            orbit.push(j);
            j = datum.diagram_perm[j];
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Group order split as (p-part, p'-part), polynomials in the field
/// parameter. For the Ree groups 2G2 the indeterminate is `t = 3^f`,
/// with `q^2 = 3 t^2`.
pub fn group_order_poly(spec: &GroupSpec) -> Result<(Poly, Poly), RootDataError> {
    let d = &spec.datum;
    let not_embedded = || RootDataError::OrderFormulaNotEmbedded(spec.name());
    match (d.family, d.rank, d.twist_order, spec.field) {
        (_, _, 1, FieldParam::Integer(_)) => {
            let p_part = mono(1, d.positive_root_count as usize);
            let rest = d
                .invariant_degrees()
                .iter()
                .fold(Poly::one(), |acc, &k| acc * Poly::x_pow_minus_one(k as usize));
            Ok((p_part, rest))
        }
        (Family::A, 3, 2, FieldParam::Integer(_)) => Ok((
            mono(1, 6),
            Poly::x_pow_minus_one(4) * Poly::x_pow_plus_one(3) * Poly::x_pow_minus_one(2),
        )),
        (Family::D, 4, 3, FieldParam::Integer(_)) => Ok((
            mono(1, 12),
            Poly::x_pow_minus_one(6)
                * Poly::x_pow_minus_one(2)
                * (mono(1, 8) + mono(1, 4) + Poly::one()),
        )),
        (Family::G2, 2, 2, FieldParam::SuzukiRee { .. }) => {
            // q^6 = 27 t^6, q^6 + 1, q^2 - 1 = 3t^2 - 1
            Ok((
                mono(27, 6),
                (mono(27, 6) + Poly::one()) * (mono(3, 2) - Poly::one()),
            ))
        }
        _ => Err(not_embedded()),
    }
}
