//! The lambda_g lambda_{g-1} evaluation on kappa monomials, pairing matrices,
//! Gorenstein and FZ-quotient dimensions, and kernel checks for relations.
//!
//! Values are stored normalized by eps(kappa_{g-2}) = 1 (written eps-hat);
//! the closed-form top evaluation is multiplied back in only by the public
//! `epsilon_eval` and `pairing_matrix`.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foundations::{
    bernoulli, double_factorial, factorial, fmt_q, partitions, pow2, q, qi, set_partitions, Partition, Q,
};
use crate::fzrel;
use crate::kappa::KappaPoly;
use crate::linalg::Echelon;
use crate::relation::{qstr, Family, Relation};

/// Closed form of the top evaluation eps(kappa_{g-2}).
pub fn kappa_top_integral(g: u32) -> Result<Q> {
    check_genus(g)?;
    let b = bernoulli(2 * g).abs();
    Ok(b / (pow2(2 * g as i64 - 1) * double_factorial(2 * g as i64 - 1)? * q(2 * g as i64)))
}

/// The psi integral over M_{g,n}-bar against lambda_g lambda_{g-1}, divided by
/// the top evaluation. Needs every alpha_i > 0 and sum alpha = g-2+n.
pub fn psi_integral_hat(g: u32, alpha: &[u32]) -> Result<Q> {
    check_genus(g)?;
    let n = alpha.len() as u32;
    if alpha.contains(&0) || alpha.iter().sum::<u32>() != g - 2 + n {
        return Err(Error::InvalidArgument(format!("psi exponents {alpha:?} do not fit genus {g}")));
    }
    let mut den = qi(factorial(2 * g - 1));
    for &a in alpha {
        den *= double_factorial(2 * a as i64 - 1)?;
    }
    Ok(qi(factorial(2 * g + n - 3)) * double_factorial(2 * g as i64 - 1)? / den)
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("genus {g} < 2")));
    }
    Ok(())
}

/// Polynomial in variables Y_1, Y_2, ... keyed by the sorted index list.
type YPoly = BTreeMap<Vec<u32>, Q>;

fn ymul(a: &YPoly, b: &YPoly, cap: u32) -> YPoly {
    let mut out = YPoly::new();
    for (ma, ca) in a {
        let wa: u32 = ma.iter().sum();
        for (mb, cb) in b {
            if wa + mb.iter().sum::<u32>() > cap {
                continue;
            }
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            m.sort_unstable();
            let e = out.entry(m).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// All eps-hat values in genus g, through the exponential form of Faber's
/// permutation sum.
///
/// Color the points by a = alpha - 1 and let p_a count them. Summing the
/// relation over all alpha with weights p^m/m! gives
///   sum_n C(n) X^n / n! = eps-hat(exp(sum_k kappa_k Y_k)),
/// with X = sum_a p_a/(2a+1)!!, C(n) the alpha-free factor of the psi
/// integral, and Y(w) = -log(1 - P(w)) collecting the cycles, each weighted
/// by its (len-1)! cyclic orders. Hence p_a = [w^a](1 - exp(-Y(w))) and
/// eps-hat(kappa_mu) = |Aut mu| [Y^mu] sum_n C(n) X^n / n!.
fn compute_table(g: u32) -> Result<BTreeMap<Partition, Q>> {
    check_genus(g)?;
    let cap = g - 2;
    let mut x = YPoly::new();
    for a in 1..=cap {
        let f = Q::one() / double_factorial(2 * a as i64 + 1)?;
        for lam in partitions(a) {
            // p_a = -sum_{lam |- a} (-1)^l Y^lam / |Aut lam|
            let sign = if lam.len() % 2 == 0 { -Q::one() } else { Q::one() };
            let mut m: Vec<u32> = lam.parts().to_vec();
            m.sort_unstable();
            *x.entry(m).or_insert_with(Q::zero) += sign * &f / qi(lam.aut());
        }
    }
    let c = |n: u32| -> Result<Q> {
        Ok(qi(factorial(2 * g + n - 3)) * double_factorial(2 * g as i64 - 1)? / qi(factorial(2 * g - 1)))
    };
    let mut total = YPoly::new();
    let mut power = YPoly::from([(Vec::new(), Q::one())]);
    for n in 0..=cap {
        if n > 0 {
            power = ymul(&power, &x, cap);
        }
        let s = c(n)? / qi(factorial(n));
        for (m, v) in &power {
            if m.iter().sum::<u32>() == cap {
                *total.entry(m.clone()).or_insert_with(Q::zero) += v * &s;
            }
        }
    }
    let mut out = BTreeMap::new();
    for mu in partitions(cap) {
        let mut key = mu.parts().to_vec();
        key.sort_unstable();
        let v = total.get(&key).cloned().unwrap_or_else(Q::zero);
        out.insert(mu.clone(), v * qi(mu.aut()));
    }
    Ok(out)
}

/// eps-hat of every kappa monomial of degree g-2 in one genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    genus: u32,
    values: BTreeMap<Partition, Q>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    kappa: Partition,
    #[serde(with = "qstr")]
    value: Q,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    genus: u32,
    normalization: String,
    values: Vec<CacheEntry>,
}

const NORMALIZATION: &str = "eps(kappa_{g-2}) = 1";

impl EpsilonTable {
    pub fn compute(g: u32) -> Result<Self> {
        Ok(EpsilonTable { genus: g, values: compute_table(g)? })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// eps-hat(kappa_sigma); sigma must have size g-2.
    pub fn get(&self, sigma: &Partition) -> Result<Q> {
        self.values.get(sigma).cloned().ok_or_else(|| {
            Error::InvalidArgument(format!("|{sigma}| = {} but genus {} needs {}", sigma.size(), self.genus, self.genus - 2))
        })
    }

    /// eps-hat of a kappa polynomial: kappa_0 -> 2g-2, kappa_{-1} -> 0, and
    /// monomials of degree other than g-2 contribute nothing.
    pub fn eval_poly(&self, p: &KappaPoly) -> Q {
        let mut s = Q::zero();
        for (m, c) in p.specialize(self.genus as i64).terms() {
            let parts: Vec<u32> = m.iter().map(|&i| i as u32).collect();
            if let Ok(sigma) = Partition::new(parts) {
                if let Some(v) = self.values.get(&sigma) {
                    s += c * v;
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let f = CacheFile {
            genus: self.genus,
            normalization: NORMALIZATION.into(),
            values: self.values.iter().map(|(k, v)| CacheEntry { kappa: k.clone(), value: v.clone() }).collect(),
        };
        serde_json::to_string(&f).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CacheFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if f.normalization != NORMALIZATION {
            return Err(Error::Parse(format!("unknown normalization {:?}", f.normalization)));
        }
        let values: BTreeMap<Partition, Q> = f.values.into_iter().map(|e| (e.kappa, e.value)).collect();
        if f.genus < 2 || values.len() != partitions(f.genus - 2).len() || values.keys().any(|k| k.size() != f.genus - 2) {
            return Err(Error::Parse("epsilon table is incomplete".into()));
        }
        Ok(EpsilonTable { genus: f.genus, values })
    }
}

pub fn cache_file(dir: &Path, g: u32) -> PathBuf {
    dir.join(format!("epsilon_g{g}.json"))
}

fn write_atomic(path: &Path, data: &str) -> Result<()> {
    if let Some(d) = path.parent() {
        std::fs::create_dir_all(d)?;
    }
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    std::fs::write(&tmp, data)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn memo() -> &'static Mutex<HashMap<u32, Arc<EpsilonTable>>> {
    static M: OnceLock<Mutex<HashMap<u32, Arc<EpsilonTable>>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The eps-hat table for genus g: in-process memo, then the disk cache (if a
/// directory is given), then computation. An unreadable cache file is ignored.
pub fn epsilon_table(g: u32, cache: Option<&Path>) -> Result<Arc<EpsilonTable>> {
    check_genus(g)?;
    if let Some(t) = memo().lock().unwrap().get(&g) {
        return Ok(t.clone());
    }
    let mut table = None;
    if let Some(dir) = cache {
        if let Ok(s) = std::fs::read_to_string(cache_file(dir, g)) {
            table = EpsilonTable::from_json(&s).ok().filter(|t| t.genus == g);
        }
    }
    let table = match table {
        Some(t) => t,
        None => {
            let t = EpsilonTable::compute(g)?;
            if let Some(dir) = cache {
                write_atomic(&cache_file(dir, g), &t.to_json())?;
            }
            t
        }
    };
    let t = Arc::new(table);
    memo().lock().unwrap().insert(g, t.clone());
    Ok(t)
}

/// eps(kappa_sigma) = integral of kappa_sigma lambda_g lambda_{g-1}, |sigma| = g-2.
pub fn epsilon_eval(g: u32, sigma: &Partition, cache: Option<&Path>) -> Result<Q> {
    if sigma.size() + 2 != g {
        return Err(Error::InvalidArgument(format!("|{sigma}| must be g-2 = {}", g as i64 - 2)));
    }
    Ok(epsilon_table(g, cache)?.get(sigma)? * kappa_top_integral(g)?)
}

/// Literal inversion of the permutation sum by induction on the length,
/// over set partitions of the labelled parts (each block weighted by its
/// (size-1)! cyclic orders). Exponential in l(sigma); used as a cross-check.
pub fn epsilon_hat_by_inversion(g: u32, sigma: &Partition) -> Result<Q> {
    fn rec(g: u32, sigma: &Partition, memo: &mut BTreeMap<Partition, Q>) -> Result<Q> {
        if let Some(v) = memo.get(sigma) {
            return Ok(v.clone());
        }
        let alpha: Vec<u32> = sigma.parts().iter().map(|p| p + 1).collect();
        let mut v = psi_integral_hat(g, &alpha)?;
        for blocks in set_partitions(sigma.len()) {
            if blocks.len() == sigma.len() {
                continue;
            }
            let mut w = Q::one();
            let mut merged = Vec::new();
            for b in &blocks {
                w *= qi(factorial(b.len() as u32 - 1));
                merged.push(b.iter().map(|&j| sigma.parts()[j]).sum::<u32>());
            }
            v -= w * rec(g, &Partition::new(merged)?, memo)?;
        }
        memo.insert(sigma.clone(), v.clone());
        Ok(v)
    }
    if sigma.size() + 2 != g {
        return Err(Error::InvalidArgument(format!("|{sigma}| must be g-2")));
    }
    rec(g, sigma, &mut BTreeMap::new())
}

/// Reassembles the normalized psi integral for alpha from the table through
/// the permutation sum (kappa_0 = 2g-2 for cycles of 1's); returns
/// (sum, closed form).
pub fn faber_roundtrip(table: &EpsilonTable, alpha: &[u32]) -> Result<(Q, Q)> {
    let g = table.genus;
    let expected = psi_integral_hat(g, alpha)?;
    let mut sum = Q::zero();
    for blocks in set_partitions(alpha.len()) {
        let mut w = Q::one();
        let mut parts = Vec::new();
        for b in &blocks {
            w *= qi(factorial(b.len() as u32 - 1));
            let k: u32 = b.iter().map(|&j| alpha[j] - 1).sum();
            if k == 0 {
                w *= q(2 * g as i64 - 2);
            } else {
                parts.push(k);
            }
        }
        sum += w * table.get(&Partition::new(parts)?)?;
    }
    Ok((sum, expected))
}

fn hat_matrix(t: &EpsilonTable, k: u32) -> Result<Vec<Vec<Q>>> {
    let g = t.genus;
    if k > g - 2 {
        return Err(Error::InvalidArgument(format!("codim {k} > g-2 = {}", g - 2)));
    }
    let cols = partitions(g - 2 - k);
    partitions(k)
        .iter()
        .map(|r| cols.iter().map(|c| t.get(&r.union(c))).collect())
        .collect()
}

/// Rows: partitions of k; columns: partitions of g-2-k (canonical order).
pub fn pairing_matrix(g: u32, k: u32, cache: Option<&Path>) -> Result<Vec<Vec<Q>>> {
    let t = epsilon_table(g, cache)?;
    let top = kappa_top_integral(g)?;
    Ok(hat_matrix(&t, k)?.into_iter().map(|r| r.into_iter().map(|x| x * &top).collect()).collect())
}

fn rank_of(m: &[Vec<Q>]) -> usize {
    crate::linalg::rank(m)
}

/// Per-codimension dimensions of the Gorenstein and FZ quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub codim: u32,
    /// Number of kappa monomials of degree `codim`.
    pub ambient: usize,
    /// Rank of the pairing matrix, i.e. dim R^k_G.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<usize>,
    /// Rank of the FZ ideal in degree k; dim R^k_FZ = ambient - this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fz_rank: Option<usize>,
    /// dim R^k_FZ - dim R^k_G.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deficit: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub genus: u32,
    pub rows: Vec<RankRow>,
}

impl RankRow {
    fn new(codim: u32) -> Self {
        RankRow { codim, ambient: partitions(codim).len(), gorenstein: None, fz_rank: None, deficit: None }
    }

    pub fn fz_dim(&self) -> Option<usize> {
        self.fz_rank.map(|r| self.ambient - r)
    }

    fn fill_deficit(&mut self) {
        if let (Some(gd), Some(fd)) = (self.gorenstein, self.fz_dim()) {
            self.deficit = Some(fd as i64 - gd as i64);
        }
    }
}

impl RankReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn row(&self, k: u32) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.codim == k)
    }

    /// Gorenstein dims agree at k and g-2-k.
    pub fn symmetric(&self) -> bool {
        let top = self.genus - 2;
        self.rows.iter().all(|r| match self.row(top - r.codim) {
            Some(s) => r.gorenstein == s.gorenstein,
            None => true,
        })
    }

    /// Merges the other side of a report for the same genus.
    pub fn merge(mut self, other: &RankReport) -> RankReport {
        for r in &mut self.rows {
            if let Some(o) = other.row(r.codim) {
                r.gorenstein = r.gorenstein.or(o.gorenstein);
                r.fz_rank = r.fz_rank.or(o.fz_rank);
                r.fill_deficit();
            }
        }
        self
    }
}

pub fn gorenstein_rank(g: u32, k: u32, cache: Option<&Path>) -> Result<usize> {
    let t = epsilon_table(g, cache)?;
    Ok(rank_of(&hat_matrix(&t, k)?))
}

pub fn gorenstein_dims(g: u32, cache: Option<&Path>) -> Result<RankReport> {
    check_genus(g)?;
    let mut rows = Vec::new();
    for k in 0..=g - 2 {
        let mut r = RankRow::new(k);
        r.gorenstein = Some(gorenstein_rank(g, k, cache)?);
        rows.push(r);
    }
    Ok(RankReport { genus: g, rows })
}

fn monomial_index(k: u32) -> BTreeMap<Partition, usize> {
    partitions(k).into_iter().enumerate().map(|(i, p)| (p, i)).collect()
}

fn poly_vector(p: &KappaPoly, basis: &BTreeMap<Partition, usize>) -> Result<Vec<Q>> {
    let mut v = vec![Q::zero(); basis.len()];
    for (m, c) in p.terms() {
        let parts: Vec<u32> = m.iter().map(|&i| i as u32).collect();
        let idx = Partition::new(parts)
            .ok()
            .and_then(|s| basis.get(&s).copied())
            .ok_or_else(|| Error::Consistency(format!("monomial {m:?} outside the degree basis")))?;
        v[idx] += c;
    }
    Ok(v)
}

/// Rank in degree k of the ideal generated by `relations` (all of genus g,
/// specialized, codim <= k): the span of kappa_mu * rho, |mu| = k - codim rho.
pub fn ideal_rank(g: u32, k: u32, relations: &[Relation]) -> Result<usize> {
    let basis = monomial_index(k);
    let mut ech = Echelon::new(basis.len());
    for rel in relations {
        if rel.codim < 1 || rel.codim as u32 > k {
            continue;
        }
        let rho = rel.poly.specialize(g as i64);
        for mu in partitions(k - rel.codim as u32) {
            let m: Vec<i32> = mu.parts().iter().map(|&p| p as i32).collect();
            ech.insert(poly_vector(&rho.mul_monomial(&m), &basis)?);
            if ech.is_full() {
                return Ok(ech.rank());
            }
        }
    }
    Ok(ech.rank())
}

/// Every FZ relation of genus g and codim 1..=rmax.
pub fn fz_relations(g: u32, rmax: u32) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for r in 1..=rmax {
        out.extend(fzrel::fz_relations_batch(g as i64, r as i32)?);
    }
    Ok(out)
}

pub fn fz_ideal_dims(g: u32) -> Result<RankReport> {
    check_genus(g)?;
    let rels = fz_relations(g, g - 2)?;
    let mut rows = Vec::new();
    for k in 0..=g - 2 {
        let mut r = RankRow::new(k);
        r.fz_rank = Some(ideal_rank(g, k, &rels)?);
        rows.push(r);
    }
    Ok(RankReport { genus: g, rows })
}

/// Both sides and their deficits.
pub fn rank_report(g: u32, cache: Option<&Path>) -> Result<RankReport> {
    Ok(gorenstein_dims(g, cache)?.merge(&fz_ideal_dims(g)?))
}

/// One codimension only (used by the long genus-24 run).
pub fn rank_row(g: u32, k: u32, cache: Option<&Path>) -> Result<RankRow> {
    check_genus(g)?;
    let mut r = RankRow::new(k);
    r.gorenstein = Some(gorenstein_rank(g, k, cache)?);
    r.fz_rank = Some(ideal_rank(g, k, &fz_relations(g, k)?)?);
    r.fill_deficit();
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub family: Family,
    pub codim: i32,
    pub sigma: Partition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    /// Complementary monomial; absent when the relation is not homogeneous.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Partition>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub genus: u32,
    pub relations: usize,
    pub pairings: usize,
    pub violations: Vec<Violation>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pairs each relation against every complementary kappa monomial.
pub fn verify_relations_in_kernel(g: u32, relations: &[Relation], cache: Option<&Path>) -> Result<KernelReport> {
    let t = epsilon_table(g, cache)?;
    let top = kappa_top_integral(g)?;
    let mut rep = KernelReport { genus: g, relations: 0, pairings: 0, violations: Vec::new() };
    for rel in relations {
        if rel.codim < 0 || rel.codim as u32 > g - 2 {
            return Err(Error::InvalidArgument(format!("codim {} outside 0..=g-2", rel.codim)));
        }
        rep.relations += 1;
        let rho = rel.poly.specialize(g as i64).drop_kappa_minus_one();
        let violation = |tau: Option<Partition>, value: String| Violation {
            family: rel.family,
            codim: rel.codim,
            sigma: rel.sigma.clone(),
            degree: rel.degree,
            tau,
            value,
        };
        if !rho.is_zero() && !rho.is_homogeneous_of(rel.codim) {
            rep.violations.push(violation(None, "not homogeneous".into()));
            continue;
        }
        for tau in partitions(g - 2 - rel.codim as u32) {
            let m: Vec<i32> = tau.parts().iter().map(|&p| p as i32).collect();
            let v = t.eval_poly(&rho.mul_monomial(&m));
            rep.pairings += 1;
            if !v.is_zero() {
                rep.violations.push(violation(Some(tau), fmt_q(&(v * &top))));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::qf;

    #[test]
    fn spot_values() {
        assert_eq!(epsilon_eval(2, &Partition::empty(), None).unwrap(), qf(1, 5760));
        assert_eq!(epsilon_eval(3, &Partition::from_slice(&[1]), None).unwrap(), qf(1, 120960));
        assert_eq!(psi_integral_hat(2, &[1]).unwrap() * kappa_top_integral(2).unwrap(), qf(1, 2880));
        // g = 2 is covered above: kappa_0 = 2 there
        for g in 3..=14 {
            let top = Partition::from_slice(&[g - 2]);
            assert_eq!(epsilon_eval(g, &top, None).unwrap(), kappa_top_integral(g).unwrap(), "g={g}");
        }
        assert!(epsilon_eval(4, &Partition::from_slice(&[1]), None).is_err());
    }

    #[test]
    fn inversion_agrees() {
        for g in 3..=9 {
            let t = epsilon_table(g, None).unwrap();
            for s in partitions(g - 2) {
                assert_eq!(t.get(&s).unwrap(), epsilon_hat_by_inversion(g, &s).unwrap(), "g={g} {s}");
            }
        }
    }

    #[test]
    fn roundtrip_with_ones() {
        let t = epsilon_table(6, None).unwrap();
        for alpha in [vec![5], vec![1, 4, 2], vec![1, 1, 1, 5], vec![2, 2, 2, 2, 1], vec![1, 1, 1, 1, 5]] {
            let (s, e) = faber_roundtrip(&t, &alpha).unwrap();
            assert_eq!(s, e, "{alpha:?}");
        }
    }

    #[test]
    fn matrices_and_ranks() {
        let m = pairing_matrix(4, 0, None).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 2);
        assert!(!pairing_matrix(4, 1, None).unwrap()[0][0].is_zero());
        for g in 2..=8 {
            let r = gorenstein_dims(g, None).unwrap();
            assert_eq!(r.row(0).unwrap().gorenstein, Some(1));
            assert_eq!(r.row(g - 2).unwrap().gorenstein, Some(1));
            assert!(r.symmetric());
        }
        let rep = rank_report(5, None).unwrap();
        assert!(rep.rows.iter().all(|r| r.deficit == Some(0)), "{rep:?}");
        assert_eq!(RankReport::from_json(&rep.to_json()).unwrap(), rep);
    }

    #[test]
    fn kernel_and_control() {
        let rels = fz_relations(5, 3).unwrap();
        assert!(!rels.is_empty());
        let rep = verify_relations_in_kernel(5, &rels, None).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        let mut bad = rels[0].clone();
        let (m, _) = bad.poly.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        bad.poly.add_term(m, Q::one());
        assert!(!verify_relations_in_kernel(5, &[bad], None).unwrap().passed());
        let zero = Relation::new(5, 2, Partition::empty(), Family::Fz, KappaPoly::zero());
        assert!(verify_relations_in_kernel(5, &[zero], None).unwrap().passed());
    }

    #[test]
    fn disk_cache() {
        let dir = std::env::temp_dir().join(format!("tautrel-eps-{}", std::process::id()));
        let t = EpsilonTable::compute(7).unwrap();
        write_atomic(&cache_file(&dir, 7), &t.to_json()).unwrap();
        let back = EpsilonTable::from_json(&std::fs::read_to_string(cache_file(&dir, 7)).unwrap()).unwrap();
        assert_eq!(back, t);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
