//! Verification suites shared by the command line and the acceptance tests:
//! the golden identity checks, the Bernoulli display audit, scalar
//! self-checks, and collection of every emitted relation on a range.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::foundations::{partitions, qf, Partition};
use crate::kappa::KappaPoly;
use crate::relation::{Outcome, Relation};
use crate::series::{ionel_coefficient, FormalSeries, Space, Var};
use crate::{classical, equiv, fzrel, ionel, sqrel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, detail: String::new() }
    }

    fn with(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Check { name: name.into(), passed, detail }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// A sparse series with t in [-3, 5] (and t >= -deg x), x <= 5, small
/// rational coefficients.
pub fn random_series(rng: &mut StdRng) -> Result<FormalSeries> {
    let sp = Space::new(&[(Var::T, 5), (Var::X, 5)]);
    let mut s = FormalSeries::zero(&sp);
    for _ in 0..rng.gen_range(1..=8) {
        let x = rng.gen_range(0..=5);
        let t = rng.gen_range(-(x.min(3))..=5);
        let c = qf(rng.gen_range(-9..=9), rng.gen_range(1..=6));
        s.add_term(&[(Var::T, t), (Var::X, x)], KappaPoly::constant(c))?;
    }
    Ok(s)
}

/// Ionel's coefficient lemma against direct extraction on `count` random
/// series, every (r, d) with r in [-3, 5], 0 <= d <= 5, r >= -d.
pub fn ionel_lemma_random(count: usize, seed: u64) -> Result<(bool, String)> {
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..count {
        let s = random_series(&mut rng)?;
        for d in 0..=5 {
            for r in (-3i32).max(-d)..=5 {
                if ionel_coefficient(&s, r, d)? != s.coeff(&[(Var::T, r), (Var::X, d)]) {
                    return Ok((false, format!("series #{i} at t^{r} x^{d}: {s}")));
                }
            }
        }
    }
    Ok((true, format!("{count} series")))
}

/// The exact series identities; `order` bounds the univariate expansions.
pub fn golden_identities(order: u32) -> Result<Vec<Check>> {
    let o = order as i32;
    let mut out = Vec::new();
    out.push(Check::new("theta closed form", classical::theta_closed_form_check(6, 6)?));
    let lphi = sqrel::log_phi_min_valuation(8, 3)?;
    out.push(Check::with("log Phi has at most simple poles in t", lphi >= -1, format!("min t-exponent {lphi}")));
    let lth = classical::log_theta_min_valuation(6, 3, &[])?;
    out.push(Check::with("log Theta has at most simple poles in t", lth >= -1, format!("min t-exponent {lth}")));
    let lthz = classical::log_theta_min_valuation(4, 3, &[(1, 1, 1), (1, 0, 1)])?;
    out.push(Check::with("log Theta^D has at most simple poles in t", lthz >= -1, format!("min t-exponent {lthz}")));
    out.push(Check::new("Wick counts for prod(1+it)", classical::wick_check(7)?));
    out.push(Check::new("Wick counts for prod 1/(1-it)", sqrel::wick_check(7)?));
    out.push(Check::new("dilation identity", sqrel::dilation_identity(4, 4, 3)?));
    let (ok, detail) = ionel_lemma_random(100, 0x5eed)?;
    out.push(Check::with("Ionel coefficient lemma, random series", ok, detail));
    out.push(Check::new("Gamma ODE", ionel::gamma_ode_check(6, 6)?));
    out.push(Check::new("C ODE, C_2, C_3", equiv::c_ode_check(o)?));
    out.push(Check::new("C_n recurrence, polynomial and closed form", equiv::cn_check(6, o.min(16))?));
    out.push(Check::new("e^x A = -A - 2", sqrel::bernoulli_series_identity(order)));
    out.push(Check::new("e^x Z = e^{x/2} - Z", sqrel::z_series_identity(order)));
    out.push(Check::new("log F linear in y to (8,8)", equiv::exponential_lemma_check(8, 8)?));
    out.push(Check::new("PDE with the z-derivative term", equiv::pde_check(6, 6, true)?));
    out.push(Check::new("exponential formula for f", equiv::exponential_formula_check(6)));
    let t = ionel::qc_tables(order.min(16))?;
    out.push(Check::new("q/c tables: c_{k,0} and log A", ionel::qc_check(&t)?));
    out.push(Check::new("Gamma transforms to log(1+4y)/4 + c", ionel::gamma_c_check(8)?));
    out.push(Check::new("operator lemmas n <= 4, k <= 8", ionel::lemmas_check(4, 8)?));
    Ok(out)
}

/// Series forms of the Bernoulli and sech identities (which must hold) and
/// the displayed discrete forms (recorded, never failing the audit).
pub fn bernoulli_audit(nmax: u32) -> Vec<Check> {
    let mut out = vec![
        Check::new("e^x A = -A - 2 to order 40", sqrel::bernoulli_series_identity(40)),
        Check::new("e^x Z = e^{x/2} - Z to order 40", sqrel::z_series_identity(40)),
    ];
    for n in 1..=nmax {
        let (l, r) = sqrel::bpp_series_form(n);
        out.push(Check::with(format!("a-identity series form n={n}"), l == r, String::new()));
        let (l, r) = sqrel::bppp_series_form(n);
        out.push(Check::with(format!("z-identity series form n={n}"), l == r, String::new()));
    }
    out
}

/// One line per n: does the displayed discrete a-identity hold?
pub fn bpp_display_report(nmax: u32) -> Vec<(u32, bool, String)> {
    (1..=nmax)
        .map(|n| {
            let (l, r) = sqrel::bpp_display(n);
            let diff = &l - &r;
            (n, diff.is_zero(), format!("lhs {} rhs {} diff {}", l, r, diff))
        })
        .collect()
}

/// Relations of codim r <= 0 must specialize to the scalar 0; returns the
/// failures (empty on success) and the number checked.
pub fn scalar_self_checks(gmax: i64, d_extra: i32) -> Result<(usize, Vec<String>)> {
    let mut bad = Vec::new();
    let mut n = 0;
    let mut check = |o: Outcome| {
        if let Some(rel) = o.relation() {
            n += 1;
            let p = rel.poly.specialize(rel.genus).drop_kappa_minus_one();
            if !p.is_zero() {
                bad.push(format!("{} g={} r={} d={:?} sigma={}: {}", rel.family, rel.genus, rel.codim, rel.degree, rel.sigma, p));
            }
        }
    };
    for g in 2..=gmax {
        let dmax = 2 * g as i32 + d_extra;
        for r in (-(g as i32) + 1)..=0 {
            for d in 0..=dmax {
                check(classical::classical_relation(g, r, d, &[])?);
                check(sqrel::sq_simple_relation(g, r, d)?);
                for s in 1..=2u32 {
                    for sigma in partitions(s) {
                        check(sqrel::expanded_s_relation(g, r, d, &sigma)?);
                    }
                }
            }
            for d in (2 * g as i32 - 1)..=dmax {
                check(classical::classical_relation(g, r, d, &[(1, 0, 1)])?);
            }
        }
    }
    Ok((n, bad))
}

/// Which relation families to collect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySet {
    All,
    Fz,
    Sq,
    Classical,
}

/// Finite ranges for the families that have no natural bound of their own.
#[derive(Clone, Copy, Debug)]
pub struct Ranges {
    /// Largest |sigma| for the SQ families with a p^sigma index (not Prop 7).
    pub sigma_max: u32,
    /// SQ degrees run over 0..=g+d_extra.
    pub d_extra: i32,
    /// Classical degrees run over 2g-1..=2g+2; z-monomials up to this size.
    pub z_size_max: u32,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges { sigma_max: 2, d_extra: 1, z_size_max: 1 }
    }
}

fn push(out: &mut Vec<Relation>, o: Outcome) {
    if let Some(r) = o.into_relation() {
        out.push(r);
    }
}

/// Every relation emitted on codims 1..=g-2 by the chosen families.
pub fn emitted_relations(g: i64, set: FamilySet, ranges: &Ranges) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    let top = g as i32 - 2;
    let want = |f: FamilySet| set == FamilySet::All || set == f;
    if want(FamilySet::Fz) {
        for r in 1..=top {
            out.extend(fzrel::fz_relations_batch(g, r)?);
        }
    }
    if want(FamilySet::Sq) {
        let sigmas: Vec<Partition> = (1..=ranges.sigma_max).flat_map(partitions).collect();
        for r in 1..=top {
            for d in 0..=g as i32 + ranges.d_extra {
                push(&mut out, sqrel::sq_simple_relation(g, r, d)?);
                push(&mut out, sqrel::sq_extended_relation(g, r, d, &Partition::empty())?);
                for s in &sigmas {
                    push(&mut out, sqrel::sq_extended_relation(g, r, d, s)?);
                    push(&mut out, sqrel::expanded_s_relation(g, r, d, s)?);
                    push(&mut out, ionel::midb_relation(g, r, d, s)?);
                }
            }
            for sigma in equiv::qualifying_sigmas(g, r) {
                push(&mut out, ionel::best_relation(g, r, &sigma)?);
            }
        }
    }
    if want(FamilySet::Classical) {
        let zs = classical::z_monomials(ranges.z_size_max, 2);
        for r in 1..=top {
            for d in (2 * g as i32 - 1)..=(2 * g as i32 + 2) {
                for z in &zs {
                    push(&mut out, classical::classical_relation(g, r, d, z)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_lemma_small() {
        assert!(ionel_lemma_random(5, 1).unwrap().0);
    }

    #[test]
    fn scalars_small() {
        let (n, bad) = scalar_self_checks(3, 2).unwrap();
        assert!(n > 0);
        assert!(bad.is_empty(), "{bad:?}");
    }
}
