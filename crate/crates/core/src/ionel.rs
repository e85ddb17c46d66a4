//! Ionel's Gamma series: the q/c tables, the operator tables c^n and b^n,
//! the G and H series, and the (u, y)-side relations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classical::bernoulli_term;
use crate::error::{Error, Result};
use crate::foundations::{bernoulli, double_factorial, factorial, pow2, q, qf, qi, Partition, Q};
use crate::fzrel::log_a_coeffs;
use crate::kappa::KappaPoly;
use crate::relation::{Family, Outcome, Relation};
use crate::series::{binomial_series, ionel_transform, FormalSeries, Space, Var};
use crate::sqrel::phi;

#[derive(Clone, Debug)]
pub struct QcTables {
    pub k_max: u32,
    /// q[k][j], zero unless k >= j >= 0
    pub q: Vec<Vec<BigInt>>,
    /// c[k][j] for 0 <= j <= k (row 0 unused)
    pub c: Vec<Vec<Q>>,
}

impl QcTables {
    pub fn q_at(&self, k: u32, j: u32) -> BigInt {
        if j > k || k > self.k_max {
            return BigInt::zero();
        }
        self.q[k as usize][j as usize].clone()
    }

    pub fn c_at(&self, k: u32, j: u32) -> Q {
        if j > k || k > self.k_max || k == 0 {
            return q(0);
        }
        self.c[k as usize][j as usize].clone()
    }
}

pub fn qc_tables(k_max: u32) -> Result<QcTables> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("table size must be at least 1".into()));
    }
    let n = k_max as usize;
    let mut qt: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n + 1]; n + 1];
    qt[0][0] = BigInt::from(1);
    let get = |t: &Vec<Vec<BigInt>>, k: i64, j: i64| -> BigInt {
        if k < 0 || j < 0 || j > k {
            BigInt::zero()
        } else {
            t[k as usize][j as usize].clone()
        }
    };
    for k in 1..=n as i64 {
        for j in 0..=k {
            let mut v = BigInt::from(2 * k + 4 * j - 2) * get(&qt, k - 1, j - 1) + BigInt::from(j + 1) * get(&qt, k - 1, j);
            for m in 0..k {
                for l in 0..j {
                    v += get(&qt, m, l) * get(&qt, k - 1 - m, j - 1 - l);
                }
            }
            qt[k as usize][j as usize] = v;
        }
    }
    // q_{k,j} = (2k+4j) c_{k,j} + (j+1) c_{k,j+1}, solved downward from c_{k,k+1} = 0
    let mut ct: Vec<Vec<Q>> = vec![Vec::new(); n + 1];
    for k in 1..=n {
        let mut row = vec![q(0); k + 2];
        for j in (0..=k).rev() {
            let rhs = qi(qt[k][j].clone()) - q(j as i64 + 1) * &row[j + 1];
            row[j] = rhs / q(2 * k as i64 + 4 * j as i64);
        }
        row.truncate(k + 1);
        ct[k] = row;
    }
    Ok(QcTables { k_max, q: qt, c: ct })
}

/// c_{k,0} = B_{k+1}/(k(k+1)) and sum_k c_{k,k} z^k = log A, positivity of q.
pub fn qc_check(t: &QcTables) -> Result<bool> {
    let la = log_a_coeffs(t.k_max)?;
    for k in 1..=t.k_max {
        if t.c_at(k, 0) != bernoulli(k + 1) / q((k * (k + 1)) as i64) || t.c_at(k, k) != la[k as usize] {
            return Ok(false);
        }
        if (0..=k).any(|j| t.q_at(k, j) <= BigInt::zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gamma/t = -(Bernoulli term) - log Phi, in a (t, x) space.
fn gamma_over_t(space: &Arc<Space>) -> Result<FormalSeries> {
    let bern = bernoulli_term(space, Var::T)?.map_coeffs(|c| KappaPoly::constant(c.terms().map(|(_, x)| x.clone()).sum()));
    bern.add(&phi(space)?.log()?)?.neg().to_space(space)
}

/// Gamma = -t (sum B_{2i}/(2i(2i-1)) t^{2i-1} + log Phi).
pub fn gamma_series(space: &Arc<Space>) -> Result<FormalSeries> {
    gamma_over_t(space)?.mul_monomial(&[(Var::T, 1)])
}

/// t x Gamma_xx = x Gamma_x^2 + (1-t) Gamma_x - 1 on every coefficient the
/// truncation determines.
pub fn gamma_ode_check(tmax: i32, xmax: i32) -> Result<bool> {
    let sp = Space::new(&[(Var::T, tmax), (Var::X, xmax)]);
    let g = gamma_series(&sp)?;
    let gx = g.derivative(Var::X)?;
    let gxx = gx.derivative(Var::X)?;
    let lhs = gxx.mul_monomial(&[(Var::T, 1), (Var::X, 1)])?;
    let one_minus_t = FormalSeries::from_terms(&sp, vec![(vec![], KappaPoly::one()), (vec![(Var::T, 1)], KappaPoly::constant(q(-1)))])?;
    let rhs = gx
        .mul(&gx)?
        .mul_monomial(&[(Var::X, 1)])?
        .add(&one_minus_t.mul(&gx)?)?
        .sub(&FormalSeries::one(&sp))?;
    let diff = lhs.sub(&rhs)?;
    Ok(diff.terms().iter().all(|(e, _)| e[0] > tmax - 2 || e[1] > xmax - 2))
}

/// Ionel's second result: -(Gamma/t with its 1/t part removed) transforms to
/// (1/4) log(1+4y) + sum c_{k,j} u^k y^j.
pub fn gamma_c_check(k_max: u32) -> Result<bool> {
    let k = k_max as i32;
    let sp = Space::new(&[(Var::T, k), (Var::X, k)]);
    let reg = drop_negative_t(&gamma_over_t(&sp)?);
    let hat = ionel_transform(&reg, k, k)?.neg();
    let t = qc_tables(k_max)?;
    for (e, c) in hat.terms() {
        let (a, b) = (e[0], e[1]);
        let want = if a == 0 {
            if b == 0 { q(0) } else { q(4).pow(b) / q(4 * b as i64) * if b % 2 == 0 { q(-1) } else { q(1) } }
        } else {
            t.c_at(a as u32, b as u32)
        };
        if c.constant_term() != want || c.len() > 1 {
            return Ok(false);
        }
    }
    // every table entry appears
    Ok((1..=k_max).all(|a| (0..=a).all(|b| hat.coeff(&[(Var::U, a as i32), (Var::Y, b as i32)]).constant_term() == t.c_at(a, b))))
}

fn drop_negative_t(s: &FormalSeries) -> FormalSeries {
    let ti = s.space().index(Var::T).unwrap();
    let mut out = FormalSeries::zero(s.space());
    for (e, c) in s.terms() {
        if e[ti] >= 0 {
            out.add_term_exps(&e, c.clone()).expect("nonnegative t stays above floor");
        }
    }
    out
}

/// c^n_{k,j} and b^n_j for one n.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTable {
    pub n: u32,
    pub k_max: u32,
    pub c: BTreeMap<(u32, u32), Q>,
    pub b: Vec<Q>,
}

impl OperatorTable {
    pub fn c_at(&self, k: u32, j: u32) -> Q {
        self.c.get(&(k, j)).cloned().unwrap_or_else(|| q(0))
    }

    pub fn b_at(&self, j: u32) -> Q {
        self.b.get(j as usize).cloned().unwrap_or_else(|| q(0))
    }
}

/// Applies (x d/dx)^n to Gamma/t, strips the 1/t part (checked against
/// (x d/dx)^{n-1} of sqrt(1+4x)/(2t)), and reads off c^n and b^n on the
/// (u, y) side. Fails if the result leaves the ansatz shape.
pub fn operator_tables(n: u32, k_max: u32) -> Result<OperatorTable> {
    if n < 1 {
        return Err(Error::InvalidArgument("operator order must be at least 1".into()));
    }
    let (k, x) = (k_max as i32, (k_max + n) as i32);
    let sp = Space::new(&[(Var::T, k), (Var::X, x)]);
    let mut s = gamma_over_t(&sp)?;
    for _ in 0..n {
        s = s.euler(Var::X);
    }
    let ti = sp.index(Var::T).unwrap();
    let mut pole = FormalSeries::zero(&sp);
    for (e, c) in s.terms() {
        if e[ti] == -1 {
            pole.add_term_exps(&e, c.clone())?;
        }
    }
    let pole = pole.mul_monomial(&[(Var::T, 1)])?;
    // V = (x d/dx)^{n-1} sqrt(1+4x)/2
    let mut v = binomial_series(&sp, Var::X, &q(4), &qf(1, 2))?.scale(&qf(1, 2));
    for _ in 1..n {
        v = v.euler(Var::X);
    }
    let mut expect_pole = v.clone();
    if n == 1 {
        expect_pole = expect_pole.sub(&FormalSeries::constant(&sp, KappaPoly::constant(qf(1, 2))))?;
    }
    if pole != expect_pole {
        return Err(Error::Consistency(format!("pole part of (x d/dx)^{n} Gamma/t has the wrong shape")));
    }
    let reg = drop_negative_t(&s);
    let hat = ionel_transform(&reg, k, x)?.neg();
    let mut c = BTreeMap::new();
    for (e, cf) in hat.terms() {
        let (a, j) = (e[0], e[1]);
        if a > k {
            continue;
        }
        if j > a + n as i32 || cf.len() > 1 || !cf.terms().all(|(m, _)| m.is_empty()) {
            return Err(Error::Consistency(format!("c^{n} ansatz violated at u^{a} y^{j}")));
        }
        c.insert((a as u32, j as u32), cf.constant_term());
    }
    // sum_j b_j y^j = V^ (1+4y)^{1/2}
    let vhat = ionel_transform(&v, 0, x)?;
    let root = binomial_series(vhat.space(), Var::Y, &q(4), &qf(1, 2))?;
    let bs = vhat.mul(&root)?;
    let mut b = vec![q(0); n as usize];
    for (e, cf) in bs.terms() {
        let j = e[bs.space().index(Var::Y).unwrap()];
        if j >= n as i32 {
            return Err(Error::Consistency(format!("b^{n} ansatz violated at y^{j}")));
        }
        b[j as usize] = cf.constant_term();
    }
    Ok(OperatorTable { n, k_max, c, b })
}

/// b^n_{n-1} = -2^{n-2}(2n-5)!!
pub fn lemma_b(n: u32) -> Result<Q> {
    Ok(-pow2(n as i64 - 2) * double_factorial(2 * n as i64 - 5)?)
}

/// c^n_{0,n} = 4^{n-1}(n-1)!
pub fn lemma_c0(n: u32) -> Q {
    pow2(2 * (n as i64 - 1)) * qi(factorial(n - 1))
}

/// (6k)(6k+4)...(6k+4(n-1))
pub fn lemma_factor(n: u32, k: u32) -> Q {
    (0..n).map(|i| q(6 * k as i64 + 4 * i as i64)).product()
}

/// The three closed forms for all n <= n_max and k <= k_max.
pub fn lemmas_check(n_max: u32, k_max: u32) -> Result<bool> {
    let t = qc_tables(k_max)?;
    for n in 1..=n_max {
        let op = operator_tables(n, k_max)?;
        if op.b_at(n - 1) != lemma_b(n)? || op.c_at(0, n) != lemma_c0(n) {
            return Ok(false);
        }
        for k in 1..=k_max {
            if op.c_at(k, k + n) != lemma_factor(n, k) * t.c_at(k, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// gamma^c = sum_{k>=1} sum_j kappa_k c_{k,j} u^k y^j in a (u, y, ...) space.
pub fn gamma_c(space: &Arc<Space>, t: &QcTables) -> Result<FormalSeries> {
    let umax = space.bound(Var::U).unwrap_or(0).max(0) as u32;
    let mut s = FormalSeries::zero(space);
    for k in 1..=umax.min(t.k_max) {
        for j in 0..=k {
            s.add_term(&[(Var::U, k as i32), (Var::Y, j as i32)], KappaPoly::term(vec![k as i32], t.c_at(k, j)))?;
        }
    }
    Ok(s)
}

/// G_{n,m}(u,y) = sum_j kappa_{m-1} b^n_j u^{n-1} y^j - sum_{k,j} kappa_{k+m} c^n_{k,j} u^{k+n} y^j.
pub fn g_series(space: &Arc<Space>, op: &OperatorTable, m: u32) -> Result<FormalSeries> {
    let n = op.n as i32;
    let m = m as i32;
    let mut s = FormalSeries::zero(space);
    for (j, b) in op.b.iter().enumerate() {
        s.add_term(&[(Var::U, n - 1), (Var::Y, j as i32)], KappaPoly::term(vec![m - 1], b.clone()))?;
    }
    for (&(k, j), c) in &op.c {
        s.add_term(&[(Var::U, k as i32 + n), (Var::Y, j as i32)], KappaPoly::term(vec![k as i32 + m], -c.clone()))?;
    }
    Ok(s)
}

/// H_{n,m}(u) from the closed forms, c_{k,k} from `t`.
pub fn h_series(space: &Arc<Space>, t: &QcTables, n: u32, m: u32) -> Result<FormalSeries> {
    let umax = space.bound(Var::U).unwrap_or(0);
    let (ni, mi) = (n as i32, m as i32);
    let mut s = FormalSeries::zero(space);
    s.add_term(&[(Var::U, ni - 1)], KappaPoly::term(vec![mi - 1], -lemma_b(n)?))?;
    s.add_term(&[(Var::U, ni)], KappaPoly::term(vec![mi], lemma_c0(n)))?;
    let mut k = 1;
    while k + ni <= umax {
        let c = lemma_factor(n, k as u32) * t.c_at(k as u32, k as u32);
        s.add_term(&[(Var::U, k + ni)], KappaPoly::term(vec![k + mi], c))?;
        k += 1;
    }
    Ok(s)
}

fn p_pairs(sigma: &Partition) -> Vec<(Var, i32)> {
    sigma.multiplicities().into_iter().map(|(p, m)| (Var::P(p), m as i32)).collect()
}

pub fn midb_gate(g: i64, r: i32, d: i32, sigma: &Partition) -> bool {
    let s = sigma.size() as i64;
    g - 2 * d as i64 - 1 + s < r as i64 && (g - r as i64 - s - 1).rem_euclid(2) == 0
}

pub fn best_gate(g: i64, r: i32, sigma: &Partition) -> bool {
    let (s, l) = (sigma.size() as i64, sigma.len() as i64);
    3 * r as i64 >= g + 1 + 3 * s - 2 * l && (g - r as i64 - s - 1).rem_euclid(2) == 0
}

/// [exp(-gamma^c + sum G_{l,|s|} p^s/|Aut s|)]_{u^{r'} p^sigma} as a
/// polynomial in y (index = y exponent), r' = r - |sigma| + l(sigma).
fn midb_core(r: i32, ymax: i32, sigma: &Partition) -> Result<(Arc<Space>, FormalSeries)> {
    let rp = r - sigma.size() as i32 + sigma.len() as i32;
    let mut b = vec![(Var::U, rp.max(0)), (Var::Y, ymax)];
    b.extend(p_pairs(sigma));
    let sp = Space::new(&b);
    if rp < 0 {
        return Ok((sp.clone(), FormalSeries::zero(&sp)));
    }
    let t = qc_tables((rp as u32).max(1))?;
    let mut arg = gamma_c(&sp, &t)?.neg();
    let mut ops: BTreeMap<u32, OperatorTable> = BTreeMap::new();
    for sub in sigma.sub_multisets() {
        if sub.is_empty() {
            continue;
        }
        let n = sub.len() as u32;
        if !ops.contains_key(&n) {
            ops.insert(n, operator_tables(n, (rp as u32).max(1))?);
        }
        let gs = g_series(&sp, &ops[&n], sub.size())?
            .mul_monomial(&p_pairs(&sub))?
            .scale(&(q(1) / qi(sub.aut())));
        arg = arg.add(&gs)?;
    }
    Ok((sp, arg.exp()?))
}

/// The (u, y) form of the S relation at fixed d:
/// [(1+4y)^{(r-|sigma|-g+2d-1)/2} exp(-gamma^c + sum G p^s/|Aut s|)]_{u^{r'} y^d p^sigma}.
/// The exponent must be a nonnegative integer.
pub fn midb_coefficient(g: i64, r: i32, d: i32, sigma: &Partition) -> Result<KappaPoly> {
    let twice = r as i64 - sigma.size() as i64 - g + 2 * d as i64 - 1;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Inadmissible(format!("prefactor exponent {twice}/2 is not a nonnegative integer")));
    }
    let (sp, e) = midb_core(r, d, sigma)?;
    let pre = binomial_series(&sp, Var::Y, &q(4), &q(twice / 2))?;
    let rp = r - sigma.size() as i32 + sigma.len() as i32;
    let mut m = vec![(Var::U, rp), (Var::Y, d)];
    m.extend(p_pairs(sigma));
    Ok(e.mul(&pre)?.coeff(&m))
}

pub fn midb_relation(g: i64, r: i32, d: i32, sigma: &Partition) -> Result<Outcome> {
    if g < 2 {
        return Err(Error::InvalidArgument("genus must be at least 2".into()));
    }
    if d < 0 || !midb_gate(g, r, d, sigma) {
        return Ok(Outcome::gate_empty(g, r, sigma, Family::SqMidb, "requires g-2d-1+|sigma| < r and g = r+|sigma|+1 mod 2")
            .with_degree(d));
    }
    let poly = midb_coefficient(g, r, d, sigma)?.specialize(g);
    Ok(Outcome::Relation(Relation::new(g, r, sigma.clone(), Family::SqMidb, poly).with_degree(d)))
}

/// E_delta(g, r, sigma): the y^{r'-delta} slice of the midb exponential.
pub fn e_delta(r: i32, delta: i32, sigma: &Partition) -> Result<KappaPoly> {
    let rp = r - sigma.size() as i32 + sigma.len() as i32;
    let (_, e) = midb_core(r, rp.max(0), sigma)?;
    let mut m = vec![(Var::U, rp), (Var::Y, rp - delta)];
    m.extend(p_pairs(sigma));
    Ok(e.coeff(&m))
}

/// sum_i 4^i binom(dh, i) E_{Delta - dh + i} equals the midb relation at
/// d(dh), for every 0 <= dh <= Delta. Returns None when Delta < 0 or parity fails.
pub fn e_delta_ladder_check(g: i64, r: i32, sigma: &Partition) -> Result<Option<bool>> {
    let (s, l) = (sigma.size() as i64, sigma.len() as i64);
    let twice = 3 * r as i64 - g - 1 - 3 * s + 2 * l;
    if twice < 0 || (g - r as i64 - s - 1).rem_euclid(2) != 0 {
        return Ok(None);
    }
    let delta = twice / 2;
    let d0 = (g - r as i64 + 1 + s) / 2;
    let es: Vec<KappaPoly> = (0..=delta).map(|dl| e_delta(r, dl as i32, sigma)).collect::<Result<_>>()?;
    for dh in 0..=delta {
        let mut acc = KappaPoly::zero();
        for i in 0..=dh {
            let c = pow2(2 * i) * qi(crate::foundations::binomial(dh, i));
            acc = acc.add(&es[(delta - dh + i) as usize].scale(&c));
        }
        if acc != midb_coefficient(g, r, (d0 + dh) as i32, sigma)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// [exp(-sum c_{k,k} kappa_k u^k - sum H_{l,|s|} p^s/|Aut s|)]_{u^{r'} p^sigma}, kappa_0 symbolic.
pub fn best_coefficient(r: i32, sigma: &Partition) -> Result<KappaPoly> {
    let rp = r - sigma.size() as i32 + sigma.len() as i32;
    if rp < 0 {
        return Ok(KappaPoly::zero());
    }
    let mut b = vec![(Var::U, rp)];
    b.extend(p_pairs(sigma));
    let sp = Space::new(&b);
    let t = qc_tables((rp as u32).max(1))?;
    let mut arg = FormalSeries::zero(&sp);
    for k in 1..=rp {
        arg.add_term(&[(Var::U, k)], KappaPoly::term(vec![k], t.c_at(k as u32, k as u32)))?;
    }
    for sub in sigma.sub_multisets() {
        if sub.is_empty() {
            continue;
        }
        let hs = h_series(&sp, &t, sub.len() as u32, sub.size())?
            .mul_monomial(&p_pairs(&sub))?
            .scale(&(q(1) / qi(sub.aut())));
        arg = arg.add(&hs)?;
    }
    let mut m = vec![(Var::U, rp)];
    m.extend(p_pairs(sigma));
    Ok(arg.neg().exp()?.coeff(&m))
}

pub fn best_relation(g: i64, r: i32, sigma: &Partition) -> Result<Outcome> {
    if g < 2 {
        return Err(Error::InvalidArgument("genus must be at least 2".into()));
    }
    if !best_gate(g, r, sigma) {
        return Ok(Outcome::gate_empty(g, r, sigma, Family::SqBest, "requires 3r >= g+1+3|sigma|-2l(sigma) and g = r+|sigma|+1 mod 2"));
    }
    let poly = best_coefficient(r, sigma)?.specialize(g);
    Ok(Outcome::Relation(Relation::new(g, r, sigma.clone(), Family::SqBest, poly)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sqrel::{s_expanded, sq_simple_relation};

    #[test]
    fn qc_values() {
        let t = qc_tables(10).unwrap();
        assert_eq!(t.q_at(1, 0), BigInt::from(1));
        assert_eq!(t.q_at(1, 1), BigInt::from(5));
        assert_eq!(t.c_at(1, 1), qf(5, 6));
        assert_eq!(t.c_at(1, 0), qf(1, 12));
        assert!(qc_check(&t).unwrap());
    }

    #[test]
    fn gamma_facts() {
        assert!(gamma_ode_check(6, 6).unwrap());
        assert!(gamma_c_check(6).unwrap());
    }

    #[test]
    fn operator_examples() {
        let op = operator_tables(1, 4).unwrap();
        assert_eq!(op.b_at(0), qf(1, 2));
        assert_eq!(op.c_at(0, 1), q(1));
        assert_eq!(op.c_at(1, 2), q(5));
        assert!(lemmas_check(3, 5).unwrap());
    }

    #[test]
    fn h_leading_terms() {
        let sp = Space::new(&[(Var::U, 3)]);
        let t = qc_tables(3).unwrap();
        let h = h_series(&sp, &t, 1, 2).unwrap();
        assert_eq!(h.coeff(&[(Var::U, 0)]), KappaPoly::term(vec![1], qf(-1, 2)));
        assert_eq!(h.coeff(&[(Var::U, 1)]), KappaPoly::kappa(2));
        assert_eq!(h.coeff(&[(Var::U, 2)]), KappaPoly::term(vec![3], q(5)));
    }

    #[test]
    fn midb_matches_simple_and_s() {
        let e = Partition::empty();
        let m = midb_relation(5, 2, 2, &e).unwrap().into_relation().unwrap();
        let s = sq_simple_relation(5, 2, 2).unwrap().into_relation().unwrap();
        assert_eq!(m.poly, s.poly);
        for (g, r, d, parts) in [(4, 3, 2, vec![2]), (5, 3, 3, vec![1, 2]), (7, 4, 3, vec![1, 1]), (6, 3, 3, vec![2])] {
            let sigma = Partition::from_slice(&parts);
            assert!(midb_gate(g, r, d, &sigma));
            let lhs = midb_coefficient(g, r, d, &sigma).unwrap().specialize(g).scale(&qi(sigma.aut()));
            let lhs = if d % 2 == 0 { lhs } else { lhs.neg() };
            assert_eq!(lhs, s_expanded(r, d, &sigma, Some(g)).unwrap(), "g={g} r={r} d={d} sigma={sigma}");
        }
    }

    #[test]
    fn midb_trivial_below_bound() {
        // 3r < g + 1 + 3|sigma| - 2l
        for (g, r, d, parts) in [(7, 2, 4, vec![]), (8, 3, 5, vec![2]), (9, 3, 5, vec![1])] {
            let sigma = Partition::from_slice(&parts);
            assert!(midb_gate(g, r, d, &sigma));
            assert!(midb_coefficient(g, r, d, &sigma).unwrap().is_zero());
        }
    }

    #[test]
    fn ladder_and_best() {
        assert_eq!(e_delta_ladder_check(5, 3, &Partition::from_slice(&[1])).unwrap(), Some(true));
        assert_eq!(e_delta_ladder_check(6, 3, &Partition::empty()).unwrap(), Some(true));
        assert!(best_relation(4, 2, &Partition::empty()).unwrap().is_gate_empty());
        let b = best_relation(5, 2, &Partition::empty()).unwrap().into_relation().unwrap();
        assert!(b.is_homogeneous() && !b.poly.is_zero());
        let e0 = e_delta(2, 0, &Partition::empty()).unwrap();
        assert_eq!(best_coefficient(2, &Partition::empty()).unwrap(), e0);
        let s = Partition::from_slice(&[1, 2]);
        assert_eq!(best_coefficient(4, &s).unwrap(), e_delta(4, 0, &s).unwrap());
    }
}
