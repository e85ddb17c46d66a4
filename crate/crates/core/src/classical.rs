//! Faber's classical relations in Wick form, built from Theta and the
//! operator D = sum z_{i,j} t^j (x d/dx)^i.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::foundations::{binomial, factorial, pow_q, q, qf, qi, Partition, Q};
use crate::kappa::KappaPoly;
use crate::linalg;
use crate::relation::{Family, Outcome, Relation};
use crate::series::{FormalSeries, Space, Var};

/// A monomial in the z_{i,j} as (i, j, power) triples, sorted by (i, j).
pub type ZMonomial = Vec<(u32, u32, u32)>;

pub fn normalize_z(z: &[(u32, u32, u32)]) -> Result<ZMonomial> {
    let mut out: ZMonomial = Vec::new();
    for &(i, j, e) in z {
        if i < 1 || j + 1 < i {
            return Err(Error::InvalidArgument(format!("z_{{{i},{j}}} needs i >= 1 and j >= i-1")));
        }
        if e == 0 {
            continue;
        }
        match out.iter_mut().find(|t| t.0 == i && t.1 == j) {
            Some(t) => t.2 += e,
            None => out.push((i, j, e)),
        }
    }
    out.sort();
    Ok(out)
}

/// |sigma| = sum j * sigma_{i,j}
pub fn z_size(z: &[(u32, u32, u32)]) -> i64 {
    z.iter().map(|&(_, j, e)| (j * e) as i64).sum()
}

/// l(sigma) = sum i * sigma_{i,j}
pub fn z_length(z: &[(u32, u32, u32)]) -> i64 {
    z.iter().map(|&(i, _, e)| (i * e) as i64).sum()
}

pub fn z_aut(z: &[(u32, u32, u32)]) -> Q {
    z.iter().map(|&(_, _, e)| qi(factorial(e))).product()
}

/// All z-monomials with |sigma| <= max_size and at most `max_factors`
/// factors (counted with multiplicity).
pub fn z_monomials(max_size: u32, max_factors: u32) -> Vec<ZMonomial> {
    let mut vars = Vec::new();
    for j in 0..=max_size {
        for i in 1..=j + 1 {
            vars.push((i, j));
        }
    }
    let mut out = vec![Vec::new()];
    fn rec(vars: &[(u32, u32)], start: usize, left_size: u32, left_f: u32, cur: &mut ZMonomial, out: &mut Vec<ZMonomial>) {
        for k in start..vars.len() {
            let (i, j) = vars[k];
            if j > left_size || left_f == 0 {
                continue;
            }
            match cur.last_mut() {
                Some(t) if t.0 == i && t.1 == j => t.2 += 1,
                _ => cur.push((i, j, 1)),
            }
            out.push(cur.clone());
            rec(vars, k, left_size - j, left_f - 1, cur, out);
            let t = cur.last_mut().unwrap();
            if t.2 == 1 {
                cur.pop();
            } else {
                t.2 -= 1;
            }
        }
    }
    rec(&vars, 0, max_size, max_factors, &mut Vec::new(), &mut out);
    for m in out.iter_mut() {
        m.sort();
    }
    out.sort();
    out
}

fn z_pairs(z: &[(u32, u32, u32)]) -> Vec<(Var, i32)> {
    z.iter().map(|&(i, j, e)| (Var::Zc(i, j), e as i32)).collect()
}

/// prod_{i=1}^d (1 + i t) as coefficients of t^0..t^d.
fn rising(d: u32, sign: i64) -> Vec<Q> {
    let mut c = vec![q(1)];
    for i in 1..=d as i64 {
        let mut n = vec![q(0); c.len() + 1];
        for (k, x) in c.iter().enumerate() {
            n[k] += x;
            n[k + 1] += x * q(sign * i);
        }
        c = n;
    }
    c
}

/// Theta_d(t) x^d = prod(1+it) (-1)^d/d! x^d/t^d added to `s` times `factor`.
fn add_theta_d(s: &mut FormalSeries, d: u32, extra: &[(Var, i32)], factor: &Q) -> Result<()> {
    let base = qf(if d % 2 == 0 { 1 } else { -1 }, 1) / qi(factorial(d));
    for (k, c) in rising(d, 1).into_iter().enumerate() {
        let mut m = vec![(Var::T, k as i32 - d as i32), (Var::X, d as i32)];
        m.extend_from_slice(extra);
        s.add_term(&m, KappaPoly::constant(c * &base * factor))?;
    }
    Ok(())
}

/// Theta(t, x) from its defining sum.
pub fn theta(space: &Arc<Space>) -> Result<FormalSeries> {
    let dmax = space.bound(Var::X).unwrap_or(0);
    let mut s = FormalSeries::zero(space);
    for d in 0..=dmax as u32 {
        add_theta_d(&mut s, d, &[], &q(1))?;
    }
    Ok(s)
}

/// (1+x)^{-(t+1)/t} = exp(-(1 + 1/t) log(1+x)).
pub fn theta_closed_form(space: &Arc<Space>) -> Result<FormalSeries> {
    let dmax = space.bound(Var::X).unwrap_or(0);
    let mut l = FormalSeries::zero(space);
    for k in 1..=dmax {
        let c = KappaPoly::constant(qf(if k % 2 == 1 { -1 } else { 1 }, k as i64));
        l.add_term(&[(Var::X, k)], c.clone())?;
        l.add_term(&[(Var::T, -1), (Var::X, k)], c)?;
    }
    l.exp()
}

pub fn theta_closed_form_check(xmax: i32, tmax: i32) -> Result<bool> {
    let sp = Space::new(&[(Var::T, tmax), (Var::X, xmax)]);
    Ok(theta(&sp)? == theta_closed_form(&sp)?)
}

/// Theta^D = exp(D) Theta, computed by letting the operator act on each x^d:
/// exp(D) x^d = exp(sum z_{i,j} t^j d^i) x^d.
pub fn theta_dz(space: &Arc<Space>) -> Result<FormalSeries> {
    let dmax = space.bound(Var::X).unwrap_or(0);
    let zs: Vec<(u32, u32)> = space
        .vars()
        .iter()
        .filter_map(|v| if let Var::Zc(i, j) = v { Some((*i, *j)) } else { None })
        .collect();
    let mut out = FormalSeries::zero(space);
    for d in 0..=dmax as u32 {
        let mut th = FormalSeries::zero(space);
        add_theta_d(&mut th, d, &[], &q(1))?;
        let mut op = FormalSeries::zero(space);
        for &(i, j) in &zs {
            op.add_term(&[(Var::Zc(i, j), 1), (Var::T, j as i32)], KappaPoly::constant(pow_q(&q(d as i64), i)))?;
        }
        out = out.add(&th.mul(&op.exp()?)?)?;
    }
    Ok(out)
}

/// Theta^D from the closed double sum over z-monomials.
pub fn theta_dz_closed(space: &Arc<Space>) -> Result<FormalSeries> {
    let dmax = space.bound(Var::X).unwrap_or(0);
    let zs: Vec<(u32, u32, u32)> = space
        .vars()
        .iter()
        .filter_map(|v| if let Var::Zc(i, j) = v { Some((*i, *j, space.bound(*v).unwrap() as u32)) } else { None })
        .collect();
    let mut monos: Vec<ZMonomial> = vec![Vec::new()];
    for &(i, j, b) in &zs {
        let mut next = Vec::new();
        for m in &monos {
            for e in 0..=b {
                let mut n = m.clone();
                if e > 0 {
                    n.push((i, j, e));
                }
                next.push(n);
            }
        }
        monos = next;
    }
    let mut out = FormalSeries::zero(space);
    for m in &monos {
        let (l, s) = (z_length(m), z_size(m));
        for d in 0..=dmax as u32 {
            let f = pow_q(&q(d as i64), l as u32) / z_aut(m);
            let mut th = FormalSeries::zero(space);
            add_theta_d(&mut th, d, &z_pairs(m), &f)?;
            out = out.add(&th.mul_monomial(&[(Var::T, s as i32)])?)?;
        }
    }
    Ok(out)
}

/// sum_{i>=1} B_{2i}/(2i(2i-1)) kappa_{2i-1} t^{2i-1}, up to the t bound.
pub fn bernoulli_term(space: &Arc<Space>, v: Var) -> Result<FormalSeries> {
    let tmax = space.bound(v).unwrap_or(0);
    let mut s = FormalSeries::zero(space);
    let mut i = 1;
    while 2 * i - 1 <= tmax {
        let c = crate::foundations::bernoulli(2 * i as u32) / q((2 * i * (2 * i - 1)) as i64);
        s.add_term(&[(v, 2 * i - 1)], KappaPoly::term(vec![2 * i - 1], c))?;
        i += 1;
    }
    Ok(s)
}

/// gamma^F = Bernoulli term + {log Theta^D}_kappa.
pub fn gamma_f(space: &Arc<Space>) -> Result<FormalSeries> {
    let l = theta_dz(space)?.log()?.insert_kappa(Var::T, 0)?;
    bernoulli_term(space, Var::T)?.add(&l)
}

pub fn classical_gate(g: i64, r: i32, d: i32, z: &[(u32, u32, u32)]) -> bool {
    r as i64 > -g + z_size(z) && d as i64 > 2 * g - 2
}

/// [exp(-gamma^F)]_{t^r x^d z^sigma} with kappa_0, kappa_{-1} symbolic.
pub fn classical_coefficient(r: i32, d: i32, z: &[(u32, u32, u32)]) -> Result<KappaPoly> {
    classical_coefficient_impl(r, d, z, None)
}

fn classical_coefficient_impl(r: i32, d: i32, z: &[(u32, u32, u32)], g: Option<i64>) -> Result<KappaPoly> {
    let z = normalize_z(z)?;
    let mut b = vec![(Var::T, r), (Var::X, d)];
    b.extend(z_pairs(&z));
    let sp = Space::new(&b);
    let mut gam = gamma_f(&sp)?;
    if let Some(g) = g {
        gam = gam.specialize(g);
    }
    let e = gam.neg().exp()?;
    let mut m = vec![(Var::T, r), (Var::X, d)];
    m.extend(z_pairs(&z));
    Ok(e.coeff(&m))
}

pub fn classical_relation(g: i64, r: i32, d: i32, z: &[(u32, u32, u32)]) -> Result<Outcome> {
    let zn = normalize_z(z)?;
    if g < 2 || d < 0 {
        return Err(Error::InvalidArgument("need g >= 2 and d >= 0".into()));
    }
    let sigma = Partition::empty();
    if !classical_gate(g, r, d, &zn) {
        return Ok(Outcome::gate_empty(g, r, &sigma, Family::Classical, "requires r > -g+|sigma| and d > 2g-2")
            .with_degree(d));
    }
    let poly = classical_coefficient_impl(r, d, &zn, Some(g))?;
    let mut rel = Relation::new(g, r, sigma, Family::Classical, poly).with_degree(d);
    if !zn.is_empty() {
        rel.z = Some(zn);
    }
    Ok(Outcome::Relation(rel))
}

/// Lowest t-exponent of each x^d slice of log Theta^D (restricted to the
/// given z-monomial); returns the smallest one over d = 1..=dmax.
pub fn log_theta_min_valuation(dmax: i32, tmax: i32, z: &[(u32, u32, u32)]) -> Result<i32> {
    let z = normalize_z(z)?;
    let mut b = vec![(Var::T, tmax), (Var::X, dmax)];
    b.extend(z_pairs(&z));
    let sp = Space::new(&b);
    let l = theta_dz(&sp)?.log()?;
    let mut m = vec![(Var::X, 0)];
    m.extend(z_pairs(&z));
    let zi: Vec<usize> = z.iter().map(|&(i, j, _)| sp.index(Var::Zc(i, j)).unwrap()).collect();
    let ti = sp.index(Var::T).unwrap();
    let mut best = i32::MAX;
    for (e, _) in l.terms() {
        if zi.iter().zip(&z).all(|(&k, t)| e[k] == t.2 as i32) {
            best = best.min(e[ti]);
        }
    }
    Ok(best)
}

/// The connected counts S^d_r of log(1 + sum_d prod(1+it) x^d/d!); checks
/// exp of them reproduces the input and S^d_r = 0 for r < d-1.
pub fn wick_check(dmax: i32) -> Result<bool> {
    let sp = Space::new(&[(Var::T, dmax), (Var::X, dmax)]);
    let mut all = FormalSeries::zero(&sp);
    for d in 0..=dmax as u32 {
        for (k, c) in rising(d, 1).into_iter().enumerate() {
            all.add_term(&[(Var::T, k as i32), (Var::X, d as i32)], KappaPoly::constant(c / qi(factorial(d))))?;
        }
    }
    let s = all.log()?;
    if s.exp()? != all {
        return Ok(false);
    }
    for (e, _) in s.terms() {
        let (t, x) = (e[0], e[1]);
        if t < x - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients lambda_{a,b} (a + b - 1 = j) with sum lambda_{a,b} binom(d,b) = d^i.
pub fn phi_combination(i: u32, j: u32) -> Result<Vec<((u32, u32), Q)>> {
    if i < 1 || j + 1 < i {
        return Err(Error::InvalidArgument("need i >= 1 and j >= i-1".into()));
    }
    let n = (j + 1) as usize;
    let m: Vec<Vec<Q>> =
        (1..=n as i64).map(|d| (1..=n as i64).map(|b| qi(binomial(d, b))).collect()).collect();
    let rhs: Vec<Q> = (1..=n as i64).map(|d| pow_q(&q(d), i)).collect();
    let lam = linalg::solve(&m, &rhs)?;
    Ok((1..=n as u32).map(|b| ((j + 1 - b, b), lam[(b - 1) as usize].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_lemma() {
        assert!(theta_closed_form_check(5, 5).unwrap());
        let sp = Space::new(&[(Var::T, 5), (Var::X, 5)]);
        let th = theta(&sp).unwrap();
        assert_eq!(th.coeff(&[(Var::T, -1), (Var::X, 1)]).constant_term(), q(-1));
        assert_eq!(th.coeff(&[(Var::X, 1)]).constant_term(), q(-1));
        assert_eq!(th.coeff(&[]).constant_term(), q(1));
    }

    #[test]
    fn operator_matches_double_sum() {
        let sp = Space::new(&[(Var::T, 3), (Var::X, 4), (Var::Zc(1, 0), 2), (Var::Zc(1, 1), 1), (Var::Zc(2, 2), 1)]);
        assert_eq!(theta_dz(&sp).unwrap(), theta_dz_closed(&sp).unwrap());
    }

    #[test]
    fn simple_poles() {
        for z in [vec![], vec![(1, 0, 1)], vec![(1, 1, 1), (2, 1, 1)]] {
            assert!(log_theta_min_valuation(6, 3, &z).unwrap() >= -1, "{z:?}");
        }
        assert!(wick_check(8).unwrap());
    }

    #[test]
    fn relation_examples() {
        let r = classical_relation(2, 0, 3, &[]).unwrap().into_relation().unwrap();
        assert!(r.poly.is_zero());
        assert!(classical_relation(2, 1, 2, &[]).unwrap().is_gate_empty());
        let r = classical_relation(3, 1, 5, &[]).unwrap().into_relation().unwrap();
        assert!(r.is_homogeneous());
        assert!(classical_relation(3, 1, 5, &[(2, 0, 1)]).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_combination(1, 0).unwrap(), vec![((0, 1), q(1))]);
        assert_eq!(phi_combination(1, 1).unwrap(), vec![((1, 1), q(1)), ((0, 2), q(0))]);
        assert_eq!(phi_combination(2, 1).unwrap(), vec![((1, 1), q(1)), ((0, 2), q(2))]);
    }

    #[test]
    fn z_monomial_enumeration() {
        let ms = z_monomials(1, 2);
        assert!(ms.contains(&vec![]));
        assert!(ms.contains(&vec![(1, 0, 2)]));
        assert!(ms.contains(&vec![(1, 0, 1), (1, 1, 1)]));
        assert!(ms.contains(&vec![(2, 1, 1)]));
        assert!(!ms.iter().any(|m| z_size(m) > 1));
    }
}
