//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pimbound::rootdata::{Family, RootDatum};

/// Every split root datum of rank at most `max_rank`.
pub fn split_data(max_rank: usize) -> Vec<RootDatum> {
    let mut v = Vec::new();
    for fam in Family::ALL {
        match fam.fixed_rank() {
            Some(r) if r <= max_rank => v.push(RootDatum::split(fam, r).unwrap()),
            Some(_) => {}
            None => {
                for n in fam.min_rank()..=max_rank {
                    v.push(RootDatum::split(fam, n).unwrap());
                }
            }
        }
    }
    v
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Weyl group orders from the group structure: S_{n+1}, 2^n n!, 2^(n-1) n!
/// and the exceptional orders.
pub fn weyl_order(family: Family, n: usize) -> u64 {
    let n64 = n as u64;
    match family {
        Family::A => factorial(n64 + 1),
        Family::B | Family::C => (1 << n) * factorial(n64),
        Family::D => (1 << (n - 1)) * factorial(n64),
        Family::E6 => 51_840,
        Family::E7 => 2_903_040,
        Family::E8 => 696_729_600,
        Family::F4 => 1_152,
        Family::G2 => 12,
    }
}

/// Decompositions by brute force over the multiplicity box, collected as a
/// set; the order in which the library returns them is checked separately.
pub fn box_decompositions(target: u128, degrees: &[u128]) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let mut cur = vec![0u64; degrees.len()];
    fn walk(k: usize, sum: u128, target: u128, degrees: &[u128], cur: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if k == degrees.len() {
            if sum == target {
                out.insert(cur.clone());
            }
            return;
        }
        let mut m = 0u64;
        loop {
            let s = sum + m as u128 * degrees[k];
            if s > target {
                break;
            }
            cur[k] = m;
            walk(k + 1, s, target, degrees, cur, out);
            m += 1;
        }
        cur[k] = 0;
    }
    walk(0, 0, target, degrees, &mut cur, &mut out);
    out
}

/// c for SL(2, p^k) at weight m, straight from the digit rule.
pub fn sl2_c(p: u64, k: u32, m: u64) -> u64 {
    let q = p.pow(k);
    if m == q - 1 {
        return 1;
    }
    if m == 0 {
        return 2u64.pow(k) - 1;
    }
    let mut digits = Vec::new();
    let mut x = m;
    for _ in 0..k {
        digits.push(x % p);
        x /= p;
    }
    2u64.pow(digits.iter().filter(|&&d| d != p - 1).count() as u32)
}
