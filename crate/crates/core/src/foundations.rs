//! Exact scalars, special numbers and partition combinatorics.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The only scalar type in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Formats a rational as `num/den`, dropping the denominator when it is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(qi(s.parse().map_err(|_| bad())?)),
    }
}

fn factorial_table() -> &'static Mutex<Vec<BigInt>> {
    static T: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![BigInt::one()]))
}

pub fn factorial(n: u32) -> BigInt {
    let mut t = factorial_table().lock().unwrap();
    while t.len() <= n as usize {
        let k = t.len();
        let next = &t[k - 1] * BigInt::from(k);
        t.push(next);
    }
    t[n as usize].clone()
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient binom(a, k) for rational `a`.
pub fn binomial_q(a: &Q, k: u32) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * (a - q(i as i64)) / q(i as i64 + 1);
    }
    acc
}

fn bernoulli_table() -> &'static Mutex<Vec<Q>> {
    static T: OnceLock<Mutex<Vec<Q>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![Q::one()]))
}

/// B_n with u/(e^u - 1) = sum B_n u^n/n!, so B_1 = -1/2.
pub fn bernoulli(n: u32) -> Q {
    let mut t = bernoulli_table().lock().unwrap();
    while t.len() <= n as usize {
        let m = t.len() as i64;
        let mut s = Q::zero();
        for (k, b) in t.iter().enumerate() {
            s += qi(binomial(m + 1, k as i64)) * b;
        }
        let next = -s / q(m + 1);
        t.push(next);
    }
    t[n as usize].clone()
}

/// n!! with the regularized values (-1)!! = 1 and (-3)!! = -1.
pub fn double_factorial(n: i64) -> Result<Q> {
    match n {
        _ if n < -3 => Err(Error::InvalidArgument(format!(
            "double factorial undefined for {n}"
        ))),
        -3 => Ok(q(-1)),
        -2 => Err(Error::InvalidArgument("(-2)!! is not defined".into())),
        -1 | 0 => Ok(q(1)),
        _ => {
            let mut acc = BigInt::one();
            let mut k = n;
            while k > 1 {
                acc *= BigInt::from(k);
                k -= 2;
            }
            Ok(qi(acc))
        }
    }
}

pub fn pow_q(base: &Q, e: u32) -> Q {
    num_traits::pow(base.clone(), e as usize)
}

/// Weakly decreasing multiset of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn from_slice(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("positive parts")
    }

    /// Parses `"1,1,3"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let v: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("malformed partition {s:?}")))?;
            parts.push(v);
        }
        Self::new(parts).map_err(|_| Error::Parse(format!("malformed partition {s:?}")))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part -> multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// |Aut| = product of factorials of multiplicities.
    pub fn aut(&self) -> BigInt {
        self.multiplicities()
            .values()
            .map(|&k| factorial(k))
            .product()
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.parts.clone();
        v.extend_from_slice(&other.parts);
        Partition::new(v).unwrap()
    }

    pub fn with_part(&self, p: u32) -> Partition {
        let mut v = self.parts.clone();
        v.push(p);
        Partition::new(v).unwrap()
    }

    /// Removes one copy of each part of `sub`; None if `sub` is not contained.
    pub fn minus(&self, sub: &Partition) -> Option<Partition> {
        let mut m = self.multiplicities();
        for &p in sub.parts() {
            let e = m.get_mut(&p)?;
            if *e == 0 {
                return None;
            }
            *e -= 1;
        }
        let mut v = Vec::new();
        for (p, k) in m {
            v.extend(std::iter::repeat_n(p, k as usize));
        }
        Some(Partition::new(v).unwrap())
    }

    /// Ordering by size, then length, then lexicographic parts.
    pub fn canonical_cmp(&self, other: &Partition) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then(self.len().cmp(&other.len()))
            .then(self.parts.cmp(&other.parts))
    }

    /// All sub-multisets (including empty and the whole), canonical order.
    pub fn sub_multisets(&self) -> Vec<Partition> {
        let m: Vec<(u32, u32)> = self.multiplicities().into_iter().collect();
        let mut out = vec![Vec::new()];
        for (p, k) in m {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..=k {
                    let mut v: Vec<u32> = base.clone();
                    v.extend(std::iter::repeat_n(p, c as usize));
                    next.push(v);
                }
            }
            out = next;
        }
        let mut res: Vec<Partition> = out.into_iter().map(|v| Partition::new(v).unwrap()).collect();
        res.sort_by(|a, b| a.canonical_cmp(b));
        res
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of n whose parts satisfy `allowed`, in canonical order.
pub fn partitions_with(n: u32, allowed: &dyn Fn(u32) -> bool) -> Vec<Partition> {
    fn rec(n: u32, max: u32, allowed: &dyn Fn(u32) -> bool, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            if allowed(p) {
                cur.push(p);
                rec(n - p, p, allowed, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, n, allowed, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

pub fn partitions(n: u32) -> Vec<Partition> {
    partitions_with(n, &|_| true)
}

/// Set partitions of {0, .., n-1}; blocks are sorted and listed by smallest element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// An unordered decomposition of a partition into nonempty blocks, optionally
/// with a distinguished (possibly empty) marked block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Division {
    pub blocks: Vec<Partition>,
    pub marked: Option<Partition>,
}

impl Division {
    /// |Aut(sigma^bullet)|: permutations of equal unmarked blocks.
    pub fn block_aut(&self) -> BigInt {
        let mut m: BTreeMap<&Partition, u32> = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b).or_insert(0) += 1;
        }
        m.values().map(|&k| factorial(k)).product()
    }

    /// Multiplicity from the automorphism formula.
    pub fn multiplicity_from_aut(&self, sigma: &Partition) -> Q {
        let mut den = self.block_aut();
        for b in &self.blocks {
            den *= b.aut();
        }
        if let Some(m) = &self.marked {
            den *= m.aut();
        }
        Q::new(sigma.aut(), den)
    }

    pub fn marked_size(&self) -> u32 {
        self.marked.as_ref().map_or(0, |m| m.size())
    }
}

/// A division together with its assembly multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDivision {
    pub division: Division,
    pub m: Q,
}

impl WeightedDivision {
    /// m^+ = (1 + delta) m and m^- = (1 - delta) m where delta marks an empty marked block.
    pub fn m_plus(&self) -> Q {
        if self.division.marked_size() == 0 {
            &self.m * q(2)
        } else {
            self.m.clone()
        }
    }

    pub fn m_minus(&self) -> Q {
        if self.division.marked_size() == 0 {
            Q::zero()
        } else {
            self.m.clone()
        }
    }
}

/// Enumerates divisions of `sigma` by labelling its parts, enumerating set
/// partitions (with an optional marked subset), and grouping equal shapes.
pub fn divisions(sigma: &Partition, marked: bool) -> Vec<WeightedDivision> {
    let parts = sigma.parts();
    let n = parts.len();
    let mut counts: BTreeMap<Division, u64> = BTreeMap::new();
    let block_of = |idx: &[usize]| Partition::new(idx.iter().map(|&i| parts[i]).collect()).unwrap();
    if marked {
        for mask in 0u32..(1 << n) {
            let marked_idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let rest: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
            for sp in set_partitions(rest.len()) {
                let mut blocks: Vec<Partition> = sp
                    .iter()
                    .map(|b| block_of(&b.iter().map(|&j| rest[j]).collect::<Vec<_>>()))
                    .collect();
                blocks.sort();
                let d = Division { blocks, marked: Some(block_of(&marked_idx)) };
                *counts.entry(d).or_insert(0) += 1;
            }
        }
    } else {
        if n == 0 {
            return Vec::new();
        }
        for sp in set_partitions(n) {
            let mut blocks: Vec<Partition> = sp.iter().map(|b| block_of(b)).collect();
            blocks.sort();
            let d = Division { blocks, marked: None };
            *counts.entry(d).or_insert(0) += 1;
        }
    }
    counts
        .into_iter()
        .map(|(division, c)| WeightedDivision { division, m: q(c as i64) })
        .collect()
}

/// Exact integer power of two as a rational (negative exponents allowed).
pub fn pow2(e: i64) -> Q {
    if e >= 0 {
        qi(BigInt::one() << (e as usize))
    } else {
        Q::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1));
        assert_eq!(bernoulli(1), qf(-1, 2));
        assert_eq!(bernoulli(2), qf(1, 6));
        assert_eq!(bernoulli(4), qf(-1, 30));
        assert_eq!(bernoulli(7), q(0));
        assert_eq!(bernoulli(12), qf(-691, 2730));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), q(1));
        assert_eq!(double_factorial(-3).unwrap(), q(-1));
        assert_eq!(double_factorial(5).unwrap(), q(15));
        assert_eq!(double_factorial(6).unwrap(), q(48));
        assert!(double_factorial(-5).is_err());
    }

    #[test]
    fn partition_basics() {
        let p = Partition::parse("1,3,1").unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.size(), 5);
        assert_eq!(p.len(), 3);
        assert_eq!(p.aut(), BigInt::from(2));
        assert_eq!(Partition::empty().aut(), BigInt::from(1));
        assert!(Partition::parse("1,,2").is_err());
        assert!(Partition::parse("0").is_err());
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(Partition::from_slice(&[2, 1, 1]).sub_multisets().len(), 6);
    }

    #[test]
    fn divisions_of_small_partitions() {
        let d = divisions(&Partition::from_slice(&[1, 2]), false);
        assert_eq!(d.len(), 2);
        let d = divisions(&Partition::from_slice(&[1, 1, 1]), false);
        assert_eq!(d.len(), 3);
        let two_blocks = d.iter().find(|w| w.division.blocks.len() == 2).unwrap();
        assert_eq!(two_blocks.division.blocks, vec![Partition::from_slice(&[1]), Partition::from_slice(&[1, 1])]);
        assert_eq!(two_blocks.m, q(3));
        let marked = divisions(&Partition::empty(), true);
        assert_eq!(marked.len(), 1);
        assert_eq!(marked[0].m_plus(), q(2));
        assert_eq!(marked[0].m_minus(), q(0));
    }
}
