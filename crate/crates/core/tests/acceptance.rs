//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 8 is expected to fail: p^2+p+1 does not divide e2. The run
//! succeeds only when exactly that criterion fails, for that reason.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pimbound::bounds::best_bound;
use pimbound::caseanalysis::{
    d4_verify, enumerate_decompositions, ree_verify, u4_verify, DecompositionProblem, Outcome,
};
use pimbound::charlattice::{is_irreducible_mod_ell, orbit_scan, OrbitScanReport};
use pimbound::degrees::{
    cyclotomic_residue_report, regular_row_checks, verify_induced_identity, DatasetTag,
};
use pimbound::rootdata::{
    identity, mat_mul, reflection_matrices, weyl_closure_size, Family, GroupSpec, Matrix,
};
use pimbound::weights::{enumerate_delta, is_steinberg, minimal_pim_candidates, Weight};

type CriterionResult = Result<String, String>;
type Criterion = fn() -> CriterionResult;

fn mat_pow(m: &Matrix, k: u32) -> Matrix {
    let mut r = identity(m.len());
    for _ in 0..k {
        r = mat_mul(&r, m);
    }
    r
}

fn coxeter_relations() -> CriterionResult {
    let mut closures = 0;
    for d in common::split_data(8) {
        let s = reflection_matrices(&d);
        let id = identity(d.rank);
        for i in 0..d.rank {
            if mat_mul(&s[i], &s[i]) != id {
                return Err(format!("{}: s{i}^2 != 1", d.label()));
            }
            for j in i + 1..d.rank {
                let m = d.coxeter_exponent(i, j);
                let p = mat_mul(&s[i], &s[j]);
                if mat_pow(&p, m) != id {
                    return Err(format!("{}: (s{i} s{j})^{m} != 1", d.label()));
                }
                if (1..m).any(|k| mat_pow(&p, k) == id) {
                    return Err(format!("{}: s{i} s{j} has order below {m}", d.label()));
                }
            }
        }
        let expected = common::weyl_order(d.family, d.rank);
        if d.weyl_order != expected {
            return Err(format!("{}: stored order {} vs {expected}", d.label(), d.weyl_order));
        }
        if expected <= 1_000_000 {
            let got = weyl_closure_size(&d, 1_000_001);
            if got != Some(expected) {
                return Err(format!("{}: closure {got:?} vs {expected}", d.label()));
            }
            closures += 1;
        }
    }
    Ok(format!("{closures} closures match the group orders"))
}

/// Irreducibility of the reflection lattice mod ell, by the known pattern.
fn expected_irreducible(family: Family, rank: usize, ell: u64) -> bool {
    match family {
        Family::A => rank == 1 || !(rank as u64 + 1).is_multiple_of(ell),
        Family::B | Family::C | Family::D | Family::F4 | Family::E7 => ell != 2,
        Family::E6 | Family::G2 => ell != 3,
        Family::E8 => true,
    }
}

fn irreducibility_table() -> CriterionResult {
    let mut cells = 0;
    for d in common::split_data(8) {
        for ell in [2, 3, 5, 7] {
            let got = is_irreducible_mod_ell(&d, ell).map_err(|e| e.to_string())?;
            if got != expected_irreducible(d.family, d.rank, ell) {
                return Err(format!("{} mod {ell}: got {got}", d.label()));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn scan(spec: &GroupSpec) -> Result<OrbitScanReport, String> {
    orbit_scan(spec).map_err(|e| format!("{}: {e}", spec.name()))
}

fn min_orbit_is_2n() -> CriterionResult {
    let mut groups = Vec::new();
    for q in [4, 8] {
        for n in 2..=4 {
            groups.push((GroupSpec::sp(2 * n, q).unwrap(), 2 * n as u64));
        }
        groups.push((GroupSpec::spin_plus(8, q).unwrap(), 8));
    }
    for (g, want) in &groups {
        let r = scan(g)?;
        if r.min_nontrivial_orbit != Some(*want) {
            return Err(format!("{}: {:?} vs {want}", g.name(), r.min_nontrivial_orbit));
        }
    }
    Ok(format!("{} groups", groups.len()))
}

/// Characters fixed by every simple reflection, by direct search.
fn fixed_by_search(spec: &GroupSpec) -> Vec<Vec<u64>> {
    let m = spec.q().unwrap() - 1;
    let d = &spec.datum;
    let n = d.rank;
    let total = m.pow(n as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut v = vec![0u64; n];
        let mut x = idx;
        for k in (0..n).rev() {
            v[k] = x % m;
            x /= m;
        }
        // s_i fixes v iff a_i * (column i of the Cartan matrix) vanishes mod m
        let fixed = (0..n).all(|i| (0..n).all(|r| (v[i] as i64 * d.cartan[r][i]).rem_euclid(m as i64) == 0));
        if fixed {
            out.push(v);
        }
    }
    out
}

fn cm2_groups() -> Vec<GroupSpec> {
    let mut v = Vec::new();
    for n in 3..=6 {
        for q in [3, 4, 5] {
            v.push(GroupSpec::sl(n, q).unwrap());
        }
    }
    for q in [4, 5, 7] {
        v.push(GroupSpec::split(Family::G2, 2, q).unwrap());
    }
    v.push(GroupSpec::split(Family::F4, 4, 3).unwrap());
    v.push(GroupSpec::split(Family::F4, 4, 5).unwrap());
    v.push(GroupSpec::split(Family::E6, 6, 4).unwrap());
    v.push(GroupSpec::split(Family::E7, 7, 3).unwrap());
    v.push(GroupSpec::split(Family::E8, 8, 3).unwrap());
    v
}

fn only_zero_fixed() -> CriterionResult {
    let groups = cm2_groups();
    for g in &groups {
        let r = scan(g)?;
        let zero = vec![vec![0u64; g.rank()]];
        if r.fixed != zero {
            return Err(format!("{}: fixed set {:?}", g.name(), r.fixed));
        }
        if fixed_by_search(g) != zero {
            return Err(format!("{}: direct search disagrees", g.name()));
        }
    }
    Ok(format!("{} groups", groups.len()))
}

/// Orbit of `v` under the simple reflections mod m, by plain BFS.
fn orbit_len(spec: &GroupSpec, v: &[u64]) -> u64 {
    let m = (spec.q().unwrap() - 1) as i64;
    let c = &spec.datum.cartan;
    let mut seen = BTreeSet::new();
    let mut queue = vec![v.to_vec()];
    seen.insert(v.to_vec());
    while let Some(x) = queue.pop() {
        for i in 0..x.len() {
            let y: Vec<u64> = (0..x.len())
                .map(|r| (x[r] as i64 - c[r][i] * x[i] as i64).rem_euclid(m) as u64)
                .collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.len() as u64
}

fn min_orbit_lower_bounds() -> CriterionResult {
    let mut groups = Vec::new();
    for n in [5, 6] {
        for q in [3, 4, 5] {
            groups.push((GroupSpec::sl(n, q).unwrap(), n as u64));
        }
    }
    groups.push((GroupSpec::split(Family::E6, 6, 4).unwrap(), 27));
    groups.push((GroupSpec::split(Family::E7, 7, 3).unwrap(), 28));
    groups.push((GroupSpec::split(Family::E8, 8, 3).unwrap(), 120));
    let mut mins = Vec::new();
    for (g, bound) in &groups {
        let r = scan(g)?;
        let (Some(min), Some(rep)) = (r.min_nontrivial_orbit, r.min_orbit_representative.as_ref()) else {
            return Err(format!("{}: no nontrivial orbit", g.name()));
        };
        if min < *bound {
            return Err(format!("{}: orbit of size {min} below {bound}", g.name()));
        }
        if orbit_len(g, rep) != min {
            return Err(format!("{}: representative orbit size mismatch", g.name()));
        }
        mins.push(format!("{}={min}", g.name()));
    }
    Ok(mins.join(" "))
}

fn degree_identities() -> CriterionResult {
    for tag in [DatasetTag::U4, DatasetTag::D4] {
        let r = verify_induced_identity(tag).map_err(|e| e.to_string())?;
        if !r.holds {
            return Err(format!("{tag:?}: {} != {}", r.lhs, r.rhs));
        }
    }
    let rows = regular_row_checks(DatasetTag::U4).map_err(|e| e.to_string())?;
    if let Some(bad) = rows.iter().find(|r| !r.holds) {
        return Err(format!("row {} fails: {}", bad.row, bad.expected));
    }
    Ok(format!("two sum identities, {} regular rows", rows.len()))
}

fn u4_case_analysis() -> CriterionResult {
    for p in [3, 5, 7, 11] {
        let v = u4_verify(p).map_err(|e| e.to_string())?;
        let case2 = v.checks.iter().find(|c| c.name == "case 2 solution count");
        if !case2.is_some_and(|c| c.holds) {
            return Err(format!("p = {p}: case 2 count {case2:?}"));
        }
        if !v.all_checks_hold() || v.outcome != Outcome::NoSolution {
            return Err(format!("p = {p}: {:?}", v.outcome));
        }
        // one elimination per candidate and sign convention
        if v.eliminations.len() as u64 != 2 * v.solutions_examined {
            return Err(format!("p = {p}: {} eliminations for {} candidates", v.eliminations.len(), v.solutions_examined));
        }
    }
    Ok("NoSolution for p = 3, 5, 7, 11".into())
}

fn d4_case_analysis() -> CriterionResult {
    let primes = [3, 5, 7, 11, 13];
    let report = cyclotomic_residue_report(&primes).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    let mut conclusion = Vec::new();
    for (p, pr) in primes.iter().zip(&report.per_prime) {
        let v = d4_verify(*p).map_err(|e| e.to_string())?;
        if !v.checks[0].holds {
            problems.push(format!("p = {p}: degree filter {}", v.checks[0].detail));
        }
        if pr.f1_mod == 0 || pr.f2_mod == 0 {
            problems.push(format!("p = {p}: f1, f2 mod {} = {}, {}", pr.modulus, pr.f1_mod, pr.f2_mod));
        }
        for (k, r) in pr.e_mod.iter().enumerate() {
            if *r != 0 {
                problems.push(format!("p = {p}: e{} = {r} mod {}", k + 1, pr.modulus));
            }
        }
        conclusion.push(v.is_no_solution());
    }
    if problems.is_empty() {
        Ok("divisibility, residues and degree filter hold".into())
    } else {
        Err(format!(
            "{}; exhaustive search still finds no decomposition: {}",
            problems.join("; "),
            conclusion.iter().all(|&b| b)
        ))
    }
}

fn ree_case_analysis() -> CriterionResult {
    for f in [1, 2] {
        let (v, replay) = ree_verify(f).map_err(|e| e.to_string())?;
        if !v.is_no_solution() {
            return Err(format!("f = {f}: {:?}", v.outcome));
        }
        if !replay.reaches_contradiction() {
            return Err(format!("f = {f}: replay {replay:?}"));
        }
    }
    Ok("NoSolution and replay for f = 1, 2".into())
}

fn w(v: &[u64]) -> Weight {
    Weight::new(v.to_vec())
}

fn candidate_lists() -> CriterionResult {
    let mut cases: Vec<(GroupSpec, Vec<Weight>)> = Vec::new();
    for p in [3u64, 5] {
        let t = p - 1;
        let pair = vec![w(&[0, t]), w(&[t, 0])];
        cases.push((GroupSpec::sl(3, p).unwrap(), pair.clone()));
        cases.push((GroupSpec::sp(4, p).unwrap(), pair.clone()));
        cases.push((GroupSpec::split(Family::G2, 2, p).unwrap(), pair));
        cases.push((GroupSpec::su(4, p).unwrap(), vec![w(&[t, 0, t])]));
    }
    cases.push((GroupSpec::triality(3).unwrap(), vec![w(&[2, 0, 2, 2])]));
    cases.push((GroupSpec::su(5, 2).unwrap(), vec![w(&[1, 0, 0, 1])]));
    for (g, want) in &cases {
        let got = minimal_pim_candidates(g).map_err(|e| e.to_string())?;
        if &got != want {
            return Err(format!("{}: {got:?}", g.name()));
        }
    }
    Ok(format!("{} groups", cases.len()))
}

fn soundness() -> CriterionResult {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        for k in 1..=3u32 {
            let g = GroupSpec::sl(2, p.pow(k)).unwrap();
            for mu in enumerate_delta(&g).1 {
                let b = best_bound(&g, &mu).map_err(|e| e.to_string())?.bound;
                let exact = common::sl2_c(p, k, mu.coeffs[0]);
                if b > exact {
                    return Err(format!("{} {mu}: bound {b} > {exact}", g.name()));
                }
                checked += 1;
            }
        }
    }
    let groups = [
        (GroupSpec::sp(4, 2).unwrap(), 3),
        (GroupSpec::sp(4, 3).unwrap(), 2),
        (GroupSpec::su(4, 2).unwrap(), 4),
        (GroupSpec::su(5, 2).unwrap(), 5),
        (GroupSpec::triality(2).unwrap(), 15),
        (GroupSpec::split(Family::G2, 2, 2).unwrap(), 5),
    ];
    let mut mins = Vec::new();
    for (g, minimum) in &groups {
        let mut least = u64::MAX;
        for mu in enumerate_delta(g).1 {
            if is_steinberg(g, &mu) {
                continue;
            }
            least = least.min(best_bound(g, &mu).map_err(|e| e.to_string())?.bound);
        }
        if least > *minimum {
            return Err(format!("{}: smallest bound {least} above {minimum}", g.name()));
        }
        mins.push(format!("{}={least}", g.name()));
    }
    Ok(format!("{checked} SL2 weights; {}", mins.join(" ")))
}

fn oracle_equivalence() -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..1000 {
        let target: u128 = rng.gen_range(0..=10_000);
        let parts = rng.gen_range(1..=5);
        let lo = (target / 25).max(1);
        let degrees: Vec<u128> = (0..parts).map(|_| rng.gen_range(lo..=target.max(1) + 1)).collect();
        let named: Vec<(&str, u128)> = degrees.iter().map(|&d| ("part", d)).collect();
        let got = enumerate_decompositions(&DecompositionProblem::new(target as i128, &named))
            .map_err(|e| format!("case {case}: {e}"))?;
        let want = common::box_decompositions(target, &degrees);
        let got_set: BTreeSet<Vec<u64>> = got.iter().cloned().collect();
        if got_set != want || got_set.len() != got.len() || !got.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("case {case}: target {target}, degrees {degrees:?}"));
        }
    }
    Ok("1000 instances".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("Coxeter relations and Weyl group orders", coxeter_relations),
        ("irreducibility of the reflection lattice mod 2, 3, 5, 7", irreducibility_table),
        ("minimal nontrivial orbit 2n for C2, C3, C4, D4", min_orbit_is_2n),
        ("only the trivial torus character is Weyl-fixed", only_zero_fixed),
        ("minimal nontrivial orbit lower bounds", min_orbit_lower_bounds),
        ("character degree identities", degree_identities),
        ("U(4,p) case analysis", u4_case_analysis),
        ("3D4(p) residue argument", d4_case_analysis),
        ("Ree group case analysis", ree_case_analysis),
        ("minimal PIM candidate lists", candidate_lists),
        ("bound soundness against exact and tabulated values", soundness),
        ("decomposition enumerator against brute force", oracle_equivalence),
    ];
    let mut unexpected = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let n = k + 1;
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} ({secs:.1}s)"),
            Err(reason) => println!("FAIL {n:>2} {name}: {reason} ({secs:.1}s)"),
        }
        // criterion 8 fails because e2 is not divisible; anything else is a regression
        let expected_failure = n == 8;
        match (&result, expected_failure) {
            (Ok(_), false) => {}
            (Err(reason), true) if reason.contains(": e2 = ") && !reason.contains(": e1 = ")
                && !reason.contains(": e3 = ") && !reason.contains(": e4 = ")
                && !reason.contains(": e5 = ") && !reason.contains("degree filter")
                && !reason.contains("f1, f2") && reason.ends_with("true") => {}
            _ => unexpected.push(n),
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: 11 PASS, 1 documented FAIL (8)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results for {unexpected:?}");
        ExitCode::FAILURE
    }
}
