//! Faber-Zagier relations: the t-form with the Psi series, the z-form with
//! the A, B, C, E series, and the reduced indexing without p_{3k}.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::foundations::{factorial, pow_q, q, qf, qi, Partition, Q};
use crate::kappa::KappaPoly;
use crate::relation::{Family, Outcome, Relation};
use crate::series::{FormalSeries, Space, Var};

/// (6i)!/((3i)!(2i)!)
pub fn fz_a_number(i: u32) -> Q {
    qi(factorial(6 * i)) / qi(factorial(3 * i) * factorial(2 * i))
}

/// (6i)!/((3i)!(2i)!) * (6i+1)/(6i-1)
pub fn fz_b_number(i: u32) -> Q {
    fz_a_number(i) * qf(6 * i as i64 + 1, 6 * i as i64 - 1)
}

pub fn fz_gate(g: i64, r: i32, sigma: &Partition) -> bool {
    let s = sigma.size() as i64;
    g - 1 + s < 3 * r as i64 && (g - r as i64 - s - 1).rem_euclid(2) == 0
}

/// Gate of the reduced (and SQ) z-form: 3r >= g + 3|sigma| - 2l + 1 with parity.
pub fn reduced_gate(g: i64, r: i32, sigma: &Partition) -> bool {
    let rhs = g + 3 * sigma.size() as i64 - 2 * sigma.len() as i64 + 1;
    3 * r as i64 >= rhs && (3 * r as i64 - rhs).rem_euclid(2) == 0
}

fn p_bounds(sigma: &Partition) -> Vec<(Var, i32)> {
    sigma.multiplicities().into_iter().map(|(p, m)| (Var::P(p), m as i32)).collect()
}

fn check_fz_sigma(sigma: &Partition) -> Result<()> {
    if let Some(p) = sigma.parts().iter().find(|&&p| p % 3 == 2) {
        return Err(Error::InvalidArgument(format!("part {p} is congruent to 2 mod 3")));
    }
    Ok(())
}

/// Psi(t, p) in a space containing t and some p_j.
pub fn psi(space: &Arc<Space>) -> Result<FormalSeries> {
    let tmax = space.bound(Var::T).unwrap_or(0);
    let mut s = FormalSeries::zero(space);
    let pvars: Vec<u32> = space
        .vars()
        .iter()
        .filter_map(|v| if let Var::P(j) = v { Some(*j) } else { None })
        .collect();
    for i in 0..=tmax {
        let a = KappaPoly::constant(fz_a_number(i as u32));
        let b = KappaPoly::constant(fz_b_number(i as u32));
        s.add_term(&[(Var::T, i)], a.clone())?;
        for &j in &pvars {
            let k = (j / 3) as i32;
            match j % 3 {
                0 => s.add_term(&[(Var::T, i + k), (Var::P(j), 1)], a.clone())?,
                1 => s.add_term(&[(Var::T, i + k), (Var::P(j), 1)], b.clone())?,
                _ => return Err(Error::InvalidArgument(format!("p{j} is not an FZ variable"))),
            }
        }
    }
    Ok(s)
}

/// gamma^FZ = {log Psi}_kappa with kappa_r inserted at t^r.
pub fn gamma_fz(space: &Arc<Space>) -> Result<FormalSeries> {
    psi(space)?.log()?.insert_kappa(Var::T, 0)
}

/// [exp(-gamma^FZ)]_{t^r p^sigma} with kappa_0 symbolic.
pub fn fz_coefficient(r: i32, sigma: &Partition) -> Result<KappaPoly> {
    check_fz_sigma(sigma)?;
    let mut b = vec![(Var::T, r)];
    b.extend(p_bounds(sigma));
    let sp = Space::new(&b);
    let e = gamma_fz(&sp)?.neg().exp()?;
    Ok(e.coeff(&mono(Var::T, r, sigma)))
}

fn mono(v: Var, r: i32, sigma: &Partition) -> Vec<(Var, i32)> {
    let mut m = vec![(v, r)];
    m.extend(p_bounds(sigma));
    m
}

pub fn fz_relation(g: i64, r: i32, sigma: &Partition) -> Result<Outcome> {
    check_fz_sigma(sigma)?;
    if g < 2 || r < 1 {
        return Err(Error::InvalidArgument("need g >= 2 and r >= 1".into()));
    }
    if !fz_gate(g, r, sigma) {
        return Ok(Outcome::gate_empty(g, r, sigma, Family::Fz, "requires g-1+|sigma| < 3r and g = r+|sigma|+1 mod 2"));
    }
    let mut b = vec![(Var::T, r)];
    b.extend(p_bounds(sigma));
    let sp = Space::new(&b);
    let e = gamma_fz(&sp)?.specialize(g).neg().exp()?;
    let poly = e.coeff(&mono(Var::T, r, sigma));
    Ok(Outcome::Relation(Relation::new(g, r, sigma.clone(), Family::Fz, poly)))
}

/// All FZ relations of genus g and codim r from one series expansion: every
/// p_j with j != 2 mod 3 up to the largest admissible |sigma|, truncated by
/// total p-weight.
pub fn fz_relations_batch(g: i64, r: i32) -> Result<Vec<Relation>> {
    if g < 2 || r < 1 {
        return Err(Error::InvalidArgument("need g >= 2 and r >= 1".into()));
    }
    let smax = 3 * r as i64 - g;
    if smax < 0 {
        return Ok(Vec::new());
    }
    let smax = smax as u32;
    let allowed = |j: u32| j % 3 != 2;
    let mut b = vec![(Var::T, r)];
    let js: Vec<u32> = (1..=smax).filter(|&j| allowed(j)).collect();
    for &j in &js {
        b.push((Var::P(j), (smax / j) as i32));
    }
    let weights: Vec<(Var, i32)> = js.iter().map(|&j| (Var::P(j), j as i32)).collect();
    let sp = Space::new(&b).with_weight_cap(&weights, smax as i32);
    let e = gamma_fz(&sp)?.specialize(g).neg().exp()?;
    let mut out = Vec::new();
    for s in 0..=smax {
        for sigma in crate::foundations::partitions_with(s, &allowed) {
            if !fz_gate(g, r, &sigma) {
                continue;
            }
            let poly = e.coeff(&mono(Var::T, r, &sigma));
            out.push(Relation::new(g, r, sigma, Family::Fz, poly));
        }
    }
    Ok(out)
}

/// Coefficients of A(z) = sum (6i)!/((3i)!(2i)!) (z/72)^i up to z^n.
pub fn a_coeffs(n: u32) -> Vec<Q> {
    (0..=n).map(|i| fz_a_number(i) / pow_q(&q(72), i)).collect()
}

pub fn b_coeffs(n: u32) -> Vec<Q> {
    (0..=n).map(|i| fz_b_number(i) / pow_q(&q(72), i)).collect()
}

fn univariate(space: &Arc<Space>, v: Var, c: &[Q]) -> Result<FormalSeries> {
    let mut s = FormalSeries::zero(space);
    for (i, x) in c.iter().enumerate() {
        s.add_term(&[(v, i as i32)], KappaPoly::constant(x.clone()))?;
    }
    Ok(s)
}

fn zmax(space: &Arc<Space>) -> Result<u32> {
    space
        .bound(Var::Z)
        .map(|b| b.max(0) as u32)
        .ok_or_else(|| Error::InvalidArgument("space lacks the variable z".into()))
}

pub fn series_a(space: &Arc<Space>) -> Result<FormalSeries> {
    univariate(space, Var::Z, &a_coeffs(zmax(space)?))
}

pub fn series_b(space: &Arc<Space>) -> Result<FormalSeries> {
    univariate(space, Var::Z, &b_coeffs(zmax(space)?))
}

/// C = B/A.
pub fn series_c(space: &Arc<Space>) -> Result<FormalSeries> {
    let inv_a = series_a(space)?.log()?.neg().exp()?;
    series_b(space)?.mul(&inv_a)
}

/// Coefficients c_{k,k} of log A(z), k = 0..=n (c_{0,0} = 0).
pub fn log_a_coeffs(n: u32) -> Result<Vec<Q>> {
    let sp = Space::new(&[(Var::Z, n as i32)]);
    let l = series_a(&sp)?.log()?;
    Ok((0..=n as i32).map(|k| l.coeff(&[(Var::Z, k)]).constant_term()).collect())
}

/// E = exp(-{log A}_kappa).
pub fn series_e(space: &Arc<Space>) -> Result<FormalSeries> {
    let l = series_a(space)?.log()?.insert_kappa(Var::Z, 0)?;
    l.neg().exp()
}

/// sum_k p_{3k} z^k and sum_k p_{3k+1} z^k, over the p variables in `space`.
fn p_sums(space: &Arc<Space>, reduced: bool) -> Result<(FormalSeries, FormalSeries)> {
    let mut s0 = FormalSeries::zero(space);
    let mut s1 = FormalSeries::zero(space);
    for v in space.vars() {
        if let Var::P(j) = *v {
            if reduced {
                s1.add_term(&[(Var::Z, j as i32 - 1), (*v, 1)], KappaPoly::one())?;
            } else {
                match j % 3 {
                    0 => s0.add_term(&[(Var::Z, (j / 3) as i32), (*v, 1)], KappaPoly::one())?,
                    1 => s1.add_term(&[(Var::Z, (j / 3) as i32), (*v, 1)], KappaPoly::one())?,
                    _ => return Err(Error::InvalidArgument(format!("p{j} is not an FZ variable"))),
                }
            }
        }
    }
    Ok((s0, s1))
}

/// [E exp(-{log(1 + sum p_{3k} z^k + C sum p_{3k+1} z^k)}_kappa)]_{z^r p^sigma},
/// kappa_0 symbolic; no gate.
pub fn fz0_coefficient(r: i32, sigma: &Partition) -> Result<KappaPoly> {
    check_fz_sigma(sigma)?;
    if r < 0 {
        return Ok(KappaPoly::zero());
    }
    let mut b = vec![(Var::Z, r)];
    b.extend(p_bounds(sigma));
    let sp = Space::new(&b);
    let (s0, s1) = p_sums(&sp, false)?;
    let inner = FormalSeries::one(&sp).add(&s0)?.add(&series_c(&sp)?.mul(&s1)?)?;
    let g = inner.log()?.insert_kappa(Var::Z, 0)?;
    let e = series_e(&sp)?.mul(&g.neg().exp()?)?;
    Ok(e.coeff(&mono(Var::Z, r, sigma)))
}

/// The reduced form [E exp(-{log(1 + C(p_1 + p_2 z + ...))}_kappa)]_{z^r p^sigma}
/// with kappa_0 symbolic; no gate.
pub fn reduced_coefficient(r: i32, sigma: &Partition) -> Result<KappaPoly> {
    if r < 0 {
        return Ok(KappaPoly::zero());
    }
    let mut b = vec![(Var::Z, r)];
    b.extend(p_bounds(sigma));
    let sp = Space::new(&b);
    let (_, s1) = p_sums(&sp, true)?;
    let inner = FormalSeries::one(&sp).add(&series_c(&sp)?.mul(&s1)?)?;
    let g = inner.log()?.insert_kappa(Var::Z, 0)?;
    let e = series_e(&sp)?.mul(&g.neg().exp()?)?;
    Ok(e.coeff(&mono(Var::Z, r, sigma)))
}

pub fn fz_reduced_relation(g: i64, r: i32, sigma: &Partition) -> Result<Outcome> {
    if !reduced_gate(g, r, sigma) {
        return Ok(Outcome::gate_empty(
            g,
            r,
            sigma,
            Family::FzReduced,
            "requires 3r >= g+3|sigma|-2l(sigma)+1 with equal parity",
        ));
    }
    let poly = reduced_coefficient(r, sigma)?.specialize(g);
    Ok(Outcome::Relation(Relation::new(g, r, sigma.clone(), Family::FzReduced, poly)))
}

/// Checks -FZ(r, sigma + 3a) = kappa_a FZ(r-a, sigma) + sum_tau FZ(r, tau),
/// tau running over sigma with one part increased by 3a. Each FZ(r, sigma)
/// here is |Aut sigma| times the p^sigma coefficient; without that factor the
/// identity fails once parts repeat.
pub fn p3_reduction_check(r: i32, sigma: &Partition, a: u32) -> Result<bool> {
    if a == 0 {
        return Err(Error::InvalidArgument("a must be at least 1".into()));
    }
    let fz = |r: i32, s: &Partition| -> Result<KappaPoly> { Ok(fz0_coefficient(r, s)?.scale(&qi(s.aut()))) };
    let lhs = fz(r, &sigma.with_part(3 * a))?.neg();
    let mut rhs = KappaPoly::kappa(a as i32).mul(&fz(r - a as i32, sigma)?);
    for (i, &p) in sigma.parts().iter().enumerate() {
        let mut parts = sigma.parts().to_vec();
        parts[i] = p + 3 * a;
        rhs = rhs.add(&fz(r, &Partition::new(parts)?)?);
    }
    Ok(lhs == rhs)
}

/// Maps an FZ partition with parts = 1 mod 3 to the reduced indexing
/// (3k+1 -> k+1); returns None if some part is a multiple of 3.
pub fn to_reduced_sigma(sigma: &Partition) -> Option<Partition> {
    if sigma.parts().iter().any(|p| p % 3 != 1) {
        return None;
    }
    Some(Partition::from_slice(&sigma.parts().iter().map(|p| p / 3 + 1).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_matches_single() {
        for (g, r) in [(5, 2), (6, 3), (7, 4), (8, 4)] {
            let batch = fz_relations_batch(g, r).unwrap();
            assert!(!batch.is_empty());
            for rel in batch {
                let one = fz_relation(g, r, &rel.sigma).unwrap().into_relation().unwrap();
                assert_eq!(one, rel);
            }
        }
    }

    #[test]
    fn series_values() {
        assert_eq!(fz_a_number(1), q(60));
        let sp = Space::new(&[(Var::Z, 6)]);
        let a = series_a(&sp).unwrap();
        assert_eq!(a.coeff(&[(Var::Z, 1)]).constant_term(), qf(5, 6));
        let b = series_b(&sp).unwrap();
        assert_eq!(b.coeff(&[]).constant_term(), q(-1));
        let c = series_c(&sp).unwrap();
        assert_eq!(c.coeff(&[]).constant_term(), q(-1));
        assert_eq!(c.coeff(&[(Var::Z, 1)]).constant_term(), q(2));
        let tsp = Space::new(&[(Var::T, 3), (Var::P(1), 1)]);
        let ps = psi(&tsp).unwrap();
        assert_eq!(ps.coeff(&[(Var::T, 1)]).constant_term(), q(60));
        assert_eq!(ps.log().unwrap().coeff(&[(Var::P(1), 1)]).constant_term(), q(-1));
    }

    #[test]
    fn c_satisfies_riccati() {
        let sp = Space::new(&[(Var::Z, 12)]);
        let c = series_c(&sp).unwrap();
        let lhs = c.derivative(Var::Z).unwrap().mul_monomial(&[(Var::Z, 2)]).unwrap().scale(&q(12));
        let rhs = FormalSeries::one(&sp)
            .add(&c.mul_monomial(&[(Var::Z, 1)]).unwrap().scale(&q(4)))
            .unwrap()
            .sub(&c.mul(&c).unwrap())
            .unwrap();
        // the derivative loses the top coefficient, so compare below it
        for k in 0..12 {
            assert_eq!(lhs.coeff(&[(Var::Z, k)]), rhs.coeff(&[(Var::Z, k)]), "z^{k}");
        }
    }

    #[test]
    fn gates() {
        assert!(fz_relation(5, 1, &Partition::empty()).unwrap().is_gate_empty());
        assert!(fz_reduced_relation(4, 2, &Partition::empty()).unwrap().is_gate_empty());
        assert!(fz_relation(5, 2, &Partition::from_slice(&[2])).is_err());
        let r = fz_relation(5, 2, &Partition::empty()).unwrap().into_relation().unwrap();
        assert!(r.is_homogeneous() && !r.poly.is_zero());
    }

    #[test]
    fn t_form_matches_z_form() {
        for (r, parts) in [(2, vec![]), (3, vec![1]), (3, vec![3]), (4, vec![1, 4]), (4, vec![3, 1])] {
            let sigma = Partition::from_slice(&parts);
            let t = fz_coefficient(r, &sigma).unwrap();
            let z = fz0_coefficient(r, &sigma).unwrap();
            let shift: i32 = parts.iter().map(|p| (p / 3) as i32).sum();
            let f = pow_q(&q(72), (r - shift) as u32);
            assert_eq!(t, z.scale(&f), "r={r} sigma={sigma}");
        }
    }

    #[test]
    fn p3_reduction_examples() {
        assert!(p3_reduction_check(3, &Partition::empty(), 1).unwrap());
        assert!(p3_reduction_check(4, &Partition::from_slice(&[1]), 1).unwrap());
        assert!(p3_reduction_check(5, &Partition::from_slice(&[1, 3]), 1).unwrap());
        assert!(p3_reduction_check(6, &Partition::from_slice(&[1, 1, 4]), 1).unwrap());
        assert!(p3_reduction_check(6, &Partition::from_slice(&[3, 1]), 2).unwrap());
        assert!(p3_reduction_check(2, &Partition::empty(), 0).is_err());
    }
}
