//! Symmetric groups by combinatorics instead of enumeration: partitions,
//! hook-length degrees, degree statistics, and integer character tables by
//! border-strip recursion. Everything here scales by p(n), not n!.

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::GroupError;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Largest n accepted by the degree scan.
pub const SN_STATS_CAP: u32 = 60;
/// Largest n accepted for a full character table.
pub const SN_TABLE_CAP: u32 = 12;

/// An integer partition, parts weakly decreasing and positive. The derived
/// order is lexicographic on parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Partition {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Transpose: column lengths of the diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
            .collect();
        Partition { parts }
    }

    fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::new();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push(row - j + conj.parts[j as usize] - i as u32 - 1);
            }
        }
        hooks
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions of n in reverse-lexicographic order, (n) first, (1^n) last.
pub struct Partitions {
    next: Option<Vec<u32>>,
}

pub fn partitions(n: u32) -> Partitions {
    let first = if n == 0 { vec![] } else { vec![n] };
    Partitions { next: Some(first) }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // successor: shrink the rightmost part above 1, then repack the tail
        // greedily into parts of the shrunken value
        let succ = current
            .iter()
            .rposition(|&p| p > 1)
            .map(|i| {
                let total: u32 = current[i..].iter().sum();
                let v = current[i] - 1;
                let mut parts = current[..i].to_vec();
                let mut left = total;
                while left > 0 {
                    let take = left.min(v);
                    parts.push(take);
                    left -= take;
                }
                parts
            });
        self.next = succ;
        Some(Partition { parts: current })
    }
}

/// p(n) by Euler's pentagonal-number recurrence.
pub fn partition_count(n: u32) -> BigInt {
    let n = n as usize;
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += &p[m - g1] * sign;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += &p[m - g2] * sign;
            }
            k += 1;
        }
        p[m] = acc;
    }
    p.pop().expect("vector is nonempty")
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Irreducible degree chi^lambda(1) = n! / product of hook lengths.
pub fn hook_degree(lambda: &Partition) -> BigInt {
    let hooks: BigInt = lambda
        .hook_lengths()
        .iter()
        .fold(BigInt::one(), |acc, &h| acc * h);
    let (d, rem) = factorial(lambda.n()).div_rem(&hooks);
    assert!(rem.is_zero(), "hook product must divide n!");
    d
}

/// Number of involutions (including identity): t(n) = t(n-1) + (n-1) t(n-2).
pub fn involution_count(n: u32) -> BigInt {
    let mut prev = BigInt::one(); // t(0)
    let mut cur = BigInt::one(); // t(1)
    if n == 0 {
        return prev;
    }
    for m in 2..=n {
        let next = &cur + &prev * (m - 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Centralizer order of a cycle type in S_n: product over part values i of
/// i^{m_i} m_i!, where m_i is the multiplicity of i.
fn cycle_type_centralizer(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut mult: HashMap<u32, u32> = HashMap::new();
    for &p in mu.parts() {
        *mult.entry(p).or_insert(0) += 1;
    }
    for (i, m) in mult {
        for _ in 0..m {
            z *= i;
        }
        z *= factorial(m);
    }
    z
}

/// Degree-scan summary for one symmetric group.
pub struct SnStats {
    pub n: u32,
    pub partition_count: BigInt,
    /// Largest degree b(S_n).
    pub b: BigInt,
    /// Number of rows attaining b.
    pub m_count: usize,
    /// Partitions attaining b, in reverse-lexicographic order.
    pub argmax: Vec<Partition>,
    /// Largest fiber size of the degree map.
    pub f_count: usize,
    /// Smallest degree whose fiber attains f_count.
    pub f_degree: BigInt,
    /// That fiber, in reverse-lexicographic order.
    pub f_partitions: Vec<Partition>,
    pub epsilon: BigRational,
}

/// Scans all p(n) hook-length degrees.
pub fn sn_degree_stats(n: u32, cap: u32) -> Result<SnStats, GroupError> {
    if n < 1 || n > cap {
        return Err(GroupError::CapExceeded { cap: cap as usize });
    }
    let parts: Vec<Partition> = partitions(n).collect();
    let degrees: Vec<BigInt> = parts.par_iter().map(hook_degree).collect();

    let b = degrees.iter().max().expect("nonempty").clone();
    let argmax: Vec<Partition> = parts
        .iter()
        .zip(&degrees)
        .filter(|(_, d)| **d == b)
        .map(|(p, _)| p.clone())
        .collect();

    let mut fibers: HashMap<&BigInt, Vec<&Partition>> = HashMap::new();
    for (p, d) in parts.iter().zip(&degrees) {
        fibers.entry(d).or_default().push(p);
    }
    let f_count = fibers.values().map(Vec::len).max().expect("nonempty");
    let f_degree = fibers
        .iter()
        .filter(|(_, v)| v.len() == f_count)
        .map(|(d, _)| (*d).clone())
        .min()
        .expect("nonempty");
    let f_partitions = fibers[&f_degree].iter().map(|p| (*p).clone()).collect();

    let epsilon = crate::mult::epsilon(&degrees, &factorial(n)).expect("hook degrees are exact");
    Ok(SnStats {
        n,
        partition_count: BigInt::from(parts.len()),
        b,
        m_count: argmax.len(),
        argmax,
        f_count,
        f_degree,
        f_partitions,
        epsilon,
    })
}

/// e^{pi sqrt(2n/3)} / (4 n sqrt 3), the partition-count asymptotic.
pub fn hardy_ramanujan(n: u32) -> f64 {
    let nf = n as f64;
    (PI * (2.0 * nf / 3.0).sqrt()).exp() / (4.0 * nf * 3.0f64.sqrt())
}

/// Asymptotic window for b(S_n): (sqrt(n!) e^{-c1 sqrt n}, sqrt(n!) e^{-c2 sqrt n})
/// with c1 = pi sqrt(1/6), c2 = (pi - 2)/pi^2. Informational only: the
/// exponents carry o(1) terms, so containment is not asserted anywhere.
pub fn vk_window(n: u32) -> (f64, f64) {
    let c1 = PI * (1.0f64 / 6.0).sqrt();
    let c2 = (PI - 2.0) / (PI * PI);
    let half_log_fact: f64 = (1..=n).map(|i| (i as f64).ln()).sum::<f64>() / 2.0;
    let sqrt_n = (n as f64).sqrt();
    (
        (half_log_fact - c1 * sqrt_n).exp(),
        (half_log_fact - c2 * sqrt_n).exp(),
    )
}

/// Lexicographically least permutation image array with the given cycle
/// type: shorter cycles first, each on a consecutive block of points.
fn least_type_representative(mu: &Partition, n: u32) -> Vec<u32> {
    let mut asc = mu.parts().to_vec();
    asc.sort_unstable();
    let mut images = Vec::with_capacity(n as usize);
    let mut base = 0u32;
    for len in asc {
        for off in 0..len {
            images.push(base + (off + 1) % len);
        }
        base += len;
    }
    images
}

fn lcm_of_parts(mu: &Partition) -> u64 {
    mu.parts()
        .iter()
        .fold(1u64, |acc, &p| crate::perm::lcm(acc, p as u64))
}

/// Cycle types of S_n in the canonical class order used by enumerated
/// groups: identity first, then ascending (class size, element order,
/// lexicographically least representative).
fn class_ordered_types(n: u32) -> Vec<Partition> {
    let order = factorial(n);
    let mut keyed: Vec<(BigInt, u64, Vec<u32>, Partition)> = partitions(n)
        .map(|mu| {
            let size = &order / cycle_type_centralizer(&mu);
            let elt_order = lcm_of_parts(&mu);
            let rep = least_type_representative(&mu, n);
            (size, elt_order, rep, mu)
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, _, _, mu)| mu).collect()
}

/// One column of character values by the border-strip recursion, every row
/// at once. Beta-set form: removing a border strip of length r moves one
/// beta number down by r; the sign is the parity of the numbers it jumps.
fn strip_column(lambdas: &[Partition], mu: &Partition) -> Vec<i64> {
    let mut memo: HashMap<(Vec<u32>, usize), i64> = HashMap::new();
    lambdas
        .iter()
        .map(|l| strip_value(l.parts().to_vec(), 0, mu.parts(), &mut memo))
        .collect()
}

fn strip_value(
    lambda: Vec<u32>,
    idx: usize,
    mu: &[u32],
    memo: &mut HashMap<(Vec<u32>, usize), i64>,
) -> i64 {
    if idx == mu.len() {
        assert!(lambda.is_empty(), "strips must exhaust the diagram");
        return 1;
    }
    if let Some(&v) = memo.get(&(lambda.clone(), idx)) {
        return v;
    }
    let r = mu[idx] as u64;
    let k = lambda.len();
    let beta: Vec<u64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p as u64 + (k - 1 - i) as u64)
        .collect();
    let mut acc = 0i64;
    for i in 0..k {
        if beta[i] < r {
            continue;
        }
        let target = beta[i] - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta
            .iter()
            .filter(|&&b| target < b && b < beta[i])
            .count();
        let sign = if jumped % 2 == 0 { 1i64 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let next: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (k - 1 - j) as u64) as u32)
            .filter(|&p| p > 0)
            .collect();
        acc += sign * strip_value(next, idx + 1, mu, memo);
    }
    memo.insert((lambda, idx), acc);
    acc
}

/// Integer character table of S_n: rows indexed by partitions in
/// reverse-lexicographic order, columns by cycle types in canonical class
/// order, values by the border-strip recursion. Builds no group elements.
pub fn sn_character_table(n: u32, cap: u32) -> Result<CharacterTable, GroupError> {
    if n < 1 || n > cap {
        return Err(GroupError::CapExceeded { cap: cap as usize });
    }
    let rows: Vec<Partition> = partitions(n).collect();
    let cols = class_ordered_types(n);
    let order = factorial(n);
    let k = rows.len();

    let columns: Vec<Vec<i64>> = cols.par_iter().map(|mu| strip_column(&rows, mu)).collect();
    let values: Vec<Vec<Cyclotomic>> = (0..k)
        .map(|r| (0..k).map(|c| Cyclotomic::from_int(columns[c][r])).collect())
        .collect();

    let degrees: Vec<BigInt> = rows.iter().map(hook_degree).collect();
    for (r, d) in degrees.iter().enumerate() {
        assert_eq!(
            BigInt::from(columns[0][r]),
            *d,
            "identity column must reproduce the hook-length degree"
        );
    }
    let centralizers: Vec<BigInt> = cols.iter().map(cycle_type_centralizer).collect();
    let class_sizes: Vec<BigInt> = centralizers.iter().map(|z| &order / z).collect();

    Ok(CharacterTable {
        group_name: format!("s:{}", n),
        order,
        k,
        class_sizes,
        centralizers,
        degrees,
        values,
        // every class of S_n is its own inverse class and all values are
        // rational, so both permutations are the identity
        conj_perm: (0..k).collect(),
        inv_class: (0..k).collect(),
    })
}
