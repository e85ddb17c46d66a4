//! Truncated sparse multivariate series with kappa-polynomial coefficients.
//!
//! `t` and `u` may carry negative exponents, bounded below by minus the
//! degree of `x` (resp. `y`). Internally every exponent is stored as a
//! nonnegative *level*: level(t) = e_t + e_x, level(u) = e_u + e_y, and the
//! identity for all other variables. Levels add under multiplication, so
//! truncating on level caps is exact, and exp/log run as ordinary graded
//! recursions on the total level.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foundations::{binomial_q, pow_q, q, qf, Q};
use crate::kappa::KappaPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    X,
    U,
    Y,
    /// The single variable of the A, B, C, E series.
    Z,
    P(u32),
    /// z_{i,j} of the classical operator.
    Zc(u32, u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::X => write!(f, "x"),
            Var::U => write!(f, "u"),
            Var::Y => write!(f, "y"),
            Var::Z => write!(f, "z"),
            Var::P(j) => write!(f, "p{j}"),
            Var::Zc(i, j) => write!(f, "z{i}_{j}"),
        }
    }
}

impl Var {
    pub fn parse(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("unknown variable {s:?}"));
        Ok(match s {
            "t" => Var::T,
            "x" => Var::X,
            "u" => Var::U,
            "y" => Var::Y,
            "z" => Var::Z,
            _ if s.starts_with('p') => Var::P(s[1..].parse().map_err(|_| bad())?),
            _ if s.starts_with('z') => {
                let (i, j) = s[1..].split_once('_').ok_or_else(bad)?;
                Var::Zc(i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?)
            }
            _ => return Err(bad()),
        })
    }

    fn anchor(self) -> Option<Var> {
        match self {
            Var::T => Some(Var::X),
            Var::U => Some(Var::Y),
            _ => None,
        }
    }
}

/// Variables and truncation caps shared by a family of series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    vars: Vec<Var>,
    /// Cap on the level of each variable.
    caps: Vec<i32>,
    /// Extra linear caps on levels: (weights, max).
    extra: Vec<(Vec<i32>, i32)>,
    anchor: Vec<Option<usize>>,
}

impl Space {
    /// `bounds` gives the maximal actual exponent of each variable. For `t`
    /// (resp. `u`) the level cap is that bound plus the bound of `x` (resp. `y`),
    /// so every coefficient with t-exponent up to the bound is exact.
    pub fn new(bounds: &[(Var, i32)]) -> Arc<Space> {
        let mut b: Vec<(Var, i32)> = bounds.to_vec();
        b.sort();
        b.dedup_by(|a, c| a.0 == c.0);
        let vars: Vec<Var> = b.iter().map(|p| p.0).collect();
        let anchor: Vec<Option<usize>> = vars
            .iter()
            .map(|v| v.anchor().and_then(|a| vars.iter().position(|w| *w == a)))
            .collect();
        let caps = b
            .iter()
            .enumerate()
            .map(|(i, &(_, m))| match anchor[i] {
                Some(j) => m + b[j].1,
                None => m,
            })
            .collect();
        Arc::new(Space { vars, caps, extra: Vec::new(), anchor })
    }

    /// Adds a cap sum_v w_v * level_v <= max (weights must be nonnegative).
    pub fn with_weight_cap(self: &Arc<Self>, weights: &[(Var, i32)], max: i32) -> Arc<Space> {
        let mut s = (**self).clone();
        let mut w = vec![0; s.vars.len()];
        for &(v, k) in weights {
            if let Some(i) = s.index(v) {
                w[i] = k;
            }
        }
        s.extra.push((w, max));
        Arc::new(s)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|w| *w == v)
    }

    pub fn has(&self, v: Var) -> bool {
        self.index(v).is_some()
    }

    /// Maximal actual exponent guaranteed exact for `v` (at full anchor degree).
    pub fn bound(&self, v: Var) -> Option<i32> {
        let i = self.index(v)?;
        Some(match self.anchor[i] {
            Some(j) => self.caps[i] - self.caps[j],
            None => self.caps[i],
        })
    }

    fn within(&self, lv: &[i32]) -> bool {
        lv.iter().zip(&self.caps).all(|(l, c)| l <= c)
            && self
                .extra
                .iter()
                .all(|(w, m)| lv.iter().zip(w).map(|(l, k)| l * k).sum::<i32>() <= *m)
    }

    fn max_level_degree(&self) -> i32 {
        self.caps.iter().sum()
    }

    fn to_levels(&self, exps: &[i32]) -> Vec<i32> {
        let mut lv = exps.to_vec();
        for (i, a) in self.anchor.iter().enumerate() {
            if let Some(j) = a {
                lv[i] += exps[*j];
            }
        }
        lv
    }

    fn to_exps(&self, lv: &[i32]) -> Vec<i32> {
        let mut e = lv.to_vec();
        for (i, a) in self.anchor.iter().enumerate() {
            if let Some(j) = a {
                e[i] -= lv[*j];
            }
        }
        e
    }

    fn exps_from_pairs(&self, mono: &[(Var, i32)]) -> Result<Vec<i32>> {
        let mut e = vec![0; self.vars.len()];
        for &(v, k) in mono {
            let i = self
                .index(v)
                .ok_or_else(|| Error::InvalidArgument(format!("variable {v} not in series space")))?;
            e[i] += k;
        }
        Ok(e)
    }

    fn describe(&self, exps: &[i32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(exps)
            .filter(|(_, e)| **e != 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A truncated series. Keys of `terms` are levels (see module docs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    space: Arc<Space>,
    terms: BTreeMap<Vec<i32>, KappaPoly>,
}

fn add_into(map: &mut BTreeMap<Vec<i32>, KappaPoly>, key: Vec<i32>, p: KappaPoly) {
    if p.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(p);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&p);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl FormalSeries {
    pub fn zero(space: &Arc<Space>) -> Self {
        FormalSeries { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<Space>, c: KappaPoly) -> Self {
        let mut s = Self::zero(space);
        add_into(&mut s.terms, vec![0; space.vars.len()], c);
        s
    }

    pub fn one(space: &Arc<Space>) -> Self {
        Self::constant(space, KappaPoly::one())
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds c * monomial; terms beyond the caps are dropped, exponents below
    /// the Laurent floor are rejected.
    pub fn add_term(&mut self, mono: &[(Var, i32)], c: KappaPoly) -> Result<()> {
        let e = self.space.exps_from_pairs(mono)?;
        self.add_term_exps(&e, c)
    }

    pub fn add_term_exps(&mut self, exps: &[i32], c: KappaPoly) -> Result<()> {
        let lv = self.space.to_levels(exps);
        if lv.iter().any(|&l| l < 0) {
            return Err(Error::InvalidArgument(format!(
                "monomial {} lies below the Laurent floor",
                self.space.describe(exps)
            )));
        }
        if self.space.within(&lv) {
            add_into(&mut self.terms, lv, c);
        }
        Ok(())
    }

    pub fn from_terms(space: &Arc<Space>, terms: Vec<(Vec<(Var, i32)>, KappaPoly)>) -> Result<Self> {
        let mut s = Self::zero(space);
        for (m, c) in terms {
            s.add_term(&m, c)?;
        }
        Ok(s)
    }

    pub fn monomial(space: &Arc<Space>, mono: &[(Var, i32)], c: KappaPoly) -> Result<Self> {
        let mut s = Self::zero(space);
        s.add_term(mono, c)?;
        Ok(s)
    }

    /// Coefficient of a monomial given by actual exponents.
    pub fn coeff(&self, mono: &[(Var, i32)]) -> KappaPoly {
        match self.space.exps_from_pairs(mono) {
            Ok(e) => self.coeff_exps(&e),
            Err(_) => KappaPoly::zero(),
        }
    }

    pub fn coeff_exps(&self, exps: &[i32]) -> KappaPoly {
        let lv = self.space.to_levels(exps);
        self.terms.get(&lv).cloned().unwrap_or_default()
    }

    /// Like `coeff`, but errors if the monomial lies outside the exact region.
    pub fn coeff_checked(&self, mono: &[(Var, i32)]) -> Result<KappaPoly> {
        let e = self.space.exps_from_pairs(mono)?;
        let lv = self.space.to_levels(&e);
        if !self.space.within(&lv) {
            return Err(Error::Bounds(format!(
                "coefficient of {} is outside the truncation bounds",
                self.space.describe(&e)
            )));
        }
        Ok(self.terms.get(&lv).cloned().unwrap_or_default())
    }

    /// Terms as (actual exponents, coefficient), canonical graded-lex order.
    pub fn terms(&self) -> Vec<(Vec<i32>, &KappaPoly)> {
        let mut v: Vec<(Vec<i32>, &KappaPoly)> =
            self.terms.iter().map(|(lv, c)| (self.space.to_exps(lv), c)).collect();
        v.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(&b.0))
        });
        v
    }

    pub fn map_coeffs(&self, f: impl Fn(&KappaPoly) -> KappaPoly) -> FormalSeries {
        let mut out = Self::zero(&self.space);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, k.clone(), f(c));
        }
        out
    }

    /// Applies a map to each term given its actual exponents.
    pub fn map_terms(&self, f: impl Fn(&[i32], &KappaPoly) -> KappaPoly) -> FormalSeries {
        let mut out = Self::zero(&self.space);
        for (k, c) in &self.terms {
            let e = self.space.to_exps(k);
            add_into(&mut out.terms, k.clone(), f(&e, c));
        }
        out
    }

    fn check_space(&self, other: &FormalSeries) -> Result<()> {
        if self.space != other.space {
            return Err(Error::InvalidArgument("series live in different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FormalSeries {
        self.scale(&q(-1))
    }

    pub fn scale(&self, s: &Q) -> FormalSeries {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_poly(&self, p: &KappaPoly) -> FormalSeries {
        self.map_coeffs(|c| c.mul(p))
    }

    pub fn mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_space(other)?;
        let mut acc: BTreeMap<Vec<i32>, KappaPoly> = BTreeMap::new();
        let n = self.space.vars.len();
        let mut key = vec![0; n];
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                for i in 0..n {
                    key[i] = ka[i] + kb[i];
                }
                if !self.space.within(&key) {
                    continue;
                }
                let e = acc.entry(key.clone()).or_default();
                e.add_product(ca, cb, &Q::one());
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(FormalSeries { space: self.space.clone(), terms: acc })
    }

    pub fn pow(&self, e: u32) -> Result<FormalSeries> {
        let mut r = Self::one(&self.space);
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    fn graded(&self) -> Vec<Vec<(&Vec<i32>, &KappaPoly)>> {
        let n = self.space.max_level_degree().max(0) as usize;
        let mut g: Vec<Vec<(&Vec<i32>, &KappaPoly)>> = vec![Vec::new(); n + 1];
        for (k, c) in &self.terms {
            let d: i32 = k.iter().sum();
            g[d as usize].push((k, c));
        }
        g
    }

    fn constant_key(&self) -> Vec<i32> {
        vec![0; self.space.vars.len()]
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<FormalSeries> {
        if let Some(c) = self.terms.get(&self.constant_key()) {
            return Err(Error::Inadmissible(format!(
                "exp argument has nonzero constant term {c} at monomial 1"
            )));
        }
        let s = self.graded();
        let nmax = s.len() - 1;
        let mut e: Vec<BTreeMap<Vec<i32>, KappaPoly>> = Vec::with_capacity(nmax + 1);
        let mut e0 = BTreeMap::new();
        e0.insert(self.constant_key(), KappaPoly::one());
        e.push(e0);
        let nv = self.space.vars.len();
        let mut key = vec![0; nv];
        for n in 1..=nmax {
            let mut acc: BTreeMap<Vec<i32>, KappaPoly> = BTreeMap::new();
            for (k, sk) in s.iter().enumerate().take(n + 1).skip(1) {
                if sk.is_empty() {
                    continue;
                }
                let w = qf(k as i64, n as i64);
                for (ka, ca) in sk {
                    for (kb, cb) in &e[n - k] {
                        for i in 0..nv {
                            key[i] = ka[i] + kb[i];
                        }
                        if !self.space.within(&key) {
                            continue;
                        }
                        acc.entry(key.clone()).or_default().add_product(ca, cb, &w);
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            e.push(acc);
        }
        let mut out = Self::zero(&self.space);
        for m in e {
            out.terms.extend(m);
        }
        Ok(out)
    }

    /// log of a series with constant term exactly 1.
    pub fn log(&self) -> Result<FormalSeries> {
        let ck = self.constant_key();
        match self.terms.get(&ck) {
            Some(c) if *c == KappaPoly::one() => {}
            other => {
                return Err(Error::Inadmissible(format!(
                    "log argument must have constant term 1, found {}",
                    other.map_or("0".to_string(), |c| c.to_string())
                )))
            }
        }
        let mut rest = self.clone();
        rest.terms.remove(&ck);
        let s = rest.graded();
        let nmax = s.len() - 1;
        let nv = self.space.vars.len();
        let mut l: Vec<BTreeMap<Vec<i32>, KappaPoly>> = vec![BTreeMap::new()];
        let mut key = vec![0; nv];
        for n in 1..=nmax {
            let mut acc: BTreeMap<Vec<i32>, KappaPoly> = BTreeMap::new();
            for (k, c) in &s[n] {
                acc.entry((*k).clone()).or_default().add_assign_scaled(c, &Q::one());
            }
            for k in 1..n {
                if l[k].is_empty() || s[n - k].is_empty() {
                    continue;
                }
                let w = qf(-(k as i64), n as i64);
                for (ka, ca) in &l[k] {
                    for (kb, cb) in &s[n - k] {
                        for i in 0..nv {
                            key[i] = ka[i] + kb[i];
                        }
                        if !self.space.within(&key) {
                            continue;
                        }
                        acc.entry(key.clone()).or_default().add_product(ca, cb, &w);
                    }
                }
            }
            acc.retain(|_, c| !c.is_zero());
            l.push(acc);
        }
        let mut out = Self::zero(&self.space);
        for m in l {
            out.terms.extend(m);
        }
        Ok(out)
    }

    /// Multiplies each coefficient by kappa_{e + offset} where e is the actual
    /// exponent of `v`: the insertion {F}_kappa.
    pub fn insert_kappa(&self, v: Var, offset: i32) -> Result<FormalSeries> {
        let i = self
            .space
            .index(v)
            .ok_or_else(|| Error::InvalidArgument(format!("variable {v} not in series space")))?;
        Ok(self.map_terms(|e, c| c.mul_monomial(&[e[i] + offset])))
    }

    /// The Euler operator v d/dv.
    pub fn euler(&self, v: Var) -> FormalSeries {
        match self.space.index(v) {
            Some(i) => self.map_terms(|e, c| c.scale(&q(e[i] as i64))),
            None => Self::zero(&self.space),
        }
    }

    /// d/dv, rejecting results below the Laurent floor.
    pub fn derivative(&self, v: Var) -> Result<FormalSeries> {
        let i = match self.space.index(v) {
            Some(i) => i,
            None => return Ok(Self::zero(&self.space)),
        };
        let mut out = Self::zero(&self.space);
        for (k, c) in &self.terms {
            let mut e = self.space.to_exps(k);
            if e[i] == 0 {
                continue;
            }
            let f = q(e[i] as i64);
            e[i] -= 1;
            out.add_term_exps(&e, c.scale(&f))?;
        }
        Ok(out)
    }

    /// Multiplies by a monomial (possibly with negative exponents).
    pub fn mul_monomial(&self, mono: &[(Var, i32)]) -> Result<FormalSeries> {
        let d = self.space.exps_from_pairs(mono)?;
        let mut out = Self::zero(&self.space);
        for (k, c) in &self.terms {
            let mut e = self.space.to_exps(k);
            for (a, b) in e.iter_mut().zip(&d) {
                *a += b;
            }
            out.add_term_exps(&e, c.clone())?;
        }
        Ok(out)
    }

    /// Substitutes v -> c * v.
    pub fn scale_var(&self, v: Var, c: &Q) -> FormalSeries {
        let i = match self.space.index(v) {
            Some(i) => i,
            None => return self.clone(),
        };
        let inv = if c.is_zero() { Q::zero() } else { c.recip() };
        self.map_terms(|e, p| {
            let f = if e[i] >= 0 { pow_q(c, e[i] as u32) } else { pow_q(&inv, (-e[i]) as u32) };
            p.scale(&f)
        })
    }

    /// Substitutes kappa_{-1} = 0, kappa_0 = 2g - 2 in every coefficient.
    pub fn specialize(&self, g: i64) -> FormalSeries {
        self.map_coeffs(|c| c.specialize(g))
    }

    /// Re-expresses the series in another space. Variables missing from the
    /// target must not occur; the result is truncated to the target caps.
    pub fn to_space(&self, target: &Arc<Space>) -> Result<FormalSeries> {
        let mut out = Self::zero(target);
        for (k, c) in &self.terms {
            let e = self.space.to_exps(k);
            let mut pairs = Vec::new();
            for (v, x) in self.space.vars.iter().zip(&e) {
                if *x != 0 {
                    if !target.has(*v) {
                        return Err(Error::InvalidArgument(format!("variable {v} missing from target space")));
                    }
                    pairs.push((*v, *x));
                }
            }
            out.add_term(&pairs, c.clone())?;
        }
        Ok(out)
    }

    /// Renames variables (e.g. u -> z) into a target space.
    pub fn rename(&self, map: &[(Var, Var)], target: &Arc<Space>) -> Result<FormalSeries> {
        let mut out = Self::zero(target);
        for (k, c) in &self.terms {
            let e = self.space.to_exps(k);
            let pairs: Vec<(Var, i32)> = self
                .space
                .vars
                .iter()
                .zip(&e)
                .filter(|(_, x)| **x != 0)
                .map(|(v, x)| (map.iter().find(|m| m.0 == *v).map_or(*v, |m| m.1), *x))
                .collect();
            out.add_term(&pairs, c.clone())?;
        }
        Ok(out)
    }

    /// The coefficient series of v^k, as a series in the same space without v.
    pub fn slice(&self, v: Var, k: i32) -> FormalSeries {
        let i = match self.space.index(v) {
            Some(i) => i,
            None => return if k == 0 { self.clone() } else { Self::zero(&self.space) },
        };
        let mut out = Self::zero(&self.space);
        for (key, c) in &self.terms {
            let mut e = self.space.to_exps(key);
            if e[i] == k {
                e[i] = 0;
                out.add_term_exps(&e, c.clone()).expect("slice stays above floor");
            }
        }
        out
    }

    /// The terms whose `v`-exponent is exactly `k`, exponent kept.
    pub fn part(&self, v: Var, k: i32) -> FormalSeries {
        let i = match self.space.index(v) {
            Some(i) => i,
            None => return if k == 0 { self.clone() } else { Self::zero(&self.space) },
        };
        let mut out = Self::zero(&self.space);
        for (key, c) in &self.terms {
            if self.space.to_exps(key)[i] == k {
                out.terms.insert(key.clone(), c.clone());
            }
        }
        out
    }

    /// Lowest actual exponent of `v` among terms whose `w`-exponent is `k`.
    pub fn valuation_at(&self, v: Var, w: Var, k: i32) -> Option<i32> {
        let (i, j) = (self.space.index(v)?, self.space.index(w)?);
        self.terms
            .keys()
            .map(|lv| self.space.to_exps(lv))
            .filter(|e| e[j] == k)
            .map(|e| e[i])
            .min()
    }

    /// exp(lambda x d/dx) S = S(e^lambda x). `lambda` must not involve x and
    /// have zero constant term.
    pub fn dilate(&self, lambda: &FormalSeries) -> Result<FormalSeries> {
        self.check_space(lambda)?;
        let xi = match self.space.index(Var::X) {
            Some(i) => i,
            None => return Ok(self.clone()),
        };
        if lambda.terms.keys().any(|lv| lambda.space.to_exps(lv)[xi] != 0) {
            return Err(Error::InvalidArgument("dilation parameter must not involve x".into()));
        }
        let el = lambda.exp()?;
        let xmax = self.space.caps[xi];
        let mut out = Self::zero(&self.space);
        let mut power = Self::one(&self.space);
        for k in 0..=xmax {
            out = out.add(&self.part(Var::X, k).mul(&power)?)?;
            power = power.mul(&el)?;
        }
        Ok(out)
    }
}

/// (1 + c*v)^a as a series in `space`, for rational `a`.
pub fn binomial_series(space: &Arc<Space>, v: Var, c: &Q, a: &Q) -> Result<FormalSeries> {
    let i = space
        .index(v)
        .ok_or_else(|| Error::InvalidArgument(format!("variable {v} not in series space")))?;
    let mut s = FormalSeries::zero(space);
    for k in 0..=space.caps[i] {
        let coef = binomial_q(a, k as u32) * pow_q(c, k as u32);
        s.add_term(&[(v, k)], KappaPoly::constant(coef))?;
    }
    Ok(s)
}

/// Change of variables x = -y/(1+4y), t = u (1+4y)^{-1/2}. The input must
/// live in a space containing t and/or x; the output space replaces them by
/// u and y with the given bounds and keeps all other variables.
pub fn ionel_transform(s: &FormalSeries, u_max: i32, y_max: i32) -> Result<FormalSeries> {
    let src = s.space();
    let mut bounds: Vec<(Var, i32)> = vec![(Var::U, u_max), (Var::Y, y_max)];
    for v in src.vars() {
        if *v != Var::T && *v != Var::X {
            bounds.push((*v, src.bound(*v).unwrap()));
        }
    }
    let mut target = Space::new(&bounds);
    for (w, m) in &src.extra {
        let weights: Vec<(Var, i32)> = src
            .vars
            .iter()
            .zip(w)
            .filter(|(v, k)| **v != Var::T && **v != Var::X && **k != 0)
            .map(|(v, k)| (*v, *k))
            .collect();
        if !weights.is_empty() {
            target = target.with_weight_cap(&weights, *m);
        }
    }
    if let (Some(tb), Some(xb)) = (src.bound(Var::T), src.bound(Var::X)) {
        if tb < u_max || xb < y_max {
            return Err(Error::Bounds(format!(
                "source bounds (t<={tb}, x<={xb}) do not cover (u<={u_max}, y<={y_max})"
            )));
        }
    }
    let ti = src.index(Var::T);
    let xi = src.index(Var::X);
    let yi = target.index(Var::Y).unwrap();
    let mut out = FormalSeries::zero(&target);
    let mut cache: BTreeMap<i32, FormalSeries> = BTreeMap::new();
    for (e, c) in s.terms() {
        let a = ti.map_or(0, |i| e[i]);
        let b = xi.map_or(0, |i| e[i]);
        if b > y_max || a > u_max {
            continue;
        }
        // t^a x^b = (-1)^b u^a y^b (1+4y)^{-(a+2b)/2}
        let twice = -(a + 2 * b);
        let factor = match cache.get(&twice) {
            Some(f) => f.clone(),
            None => {
                let f = binomial_series(&target, Var::Y, &q(4), &qf(twice as i64, 2))?;
                cache.insert(twice, f.clone());
                f
            }
        };
        let sign = if b % 2 == 0 { q(1) } else { q(-1) };
        let mut pairs: Vec<(Var, i32)> = vec![(Var::U, a), (Var::Y, b)];
        for (j, v) in src.vars().iter().enumerate() {
            if *v != Var::T && *v != Var::X && e[j] != 0 {
                pairs.push((*v, e[j]));
            }
        }
        let mut ex = target.exps_from_pairs(&pairs)?;
        for (fe, fc) in factor.terms() {
            let k = fe[yi];
            if b + k > y_max {
                continue;
            }
            ex[yi] = b + k;
            out.add_term_exps(&ex, c.mul(fc).scale(&sign))?;
        }
    }
    Ok(out)
}

/// [S]_{t^r x^d} computed on the (u, y) side:
/// (-1)^d [(1+4y)^{(r+2d-2)/2} S^]_{u^r y^d}.
pub fn ionel_coefficient(s: &FormalSeries, r: i32, d: i32) -> Result<KappaPoly> {
    let hat = ionel_transform(s, r.max(0), d)?;
    let pre = binomial_series(hat.space(), Var::Y, &q(4), &qf((r + 2 * d - 2) as i64, 2))?;
    let prod = hat.mul(&pre)?;
    let c = prod.coeff(&[(Var::U, r), (Var::Y, d)]);
    Ok(if d % 2 == 0 { c } else { c.neg() })
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            terms.iter().map(|(e, c)| format!("[{}]*{}", c, self.space.describe(e))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Convenience: a series with rational coefficients from (exponents, value).
pub fn rational_series(space: &Arc<Space>, terms: &[(Vec<(Var, i32)>, Q)]) -> Result<FormalSeries> {
    let mut s = FormalSeries::zero(space);
    for (m, c) in terms {
        s.add_term(m, KappaPoly::constant(c.clone()))?;
    }
    Ok(s)
}

/// Rational coefficient of a monomial, assuming it is a scalar.
pub fn scalar_coeff(s: &FormalSeries, mono: &[(Var, i32)]) -> Q {
    let c = s.coeff(mono);
    let k = c.constant_term();
    debug_assert!(c.len() <= 1 && (c.is_zero() || !k.is_zero()), "coefficient is not a scalar");
    k
}

pub fn is_one(c: &Q) -> bool {
    c.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(c: Q) -> KappaPoly {
        KappaPoly::constant(c)
    }

    #[test]
    fn exp_log_roundtrip_simple() {
        let sp = Space::new(&[(Var::X, 10)]);
        let mut l = FormalSeries::zero(&sp);
        for n in 1..=10 {
            let c = if n % 2 == 1 { qf(1, n) } else { qf(-1, n) };
            l.add_term(&[(Var::X, n as i32)], k(c)).unwrap();
        }
        let e = l.exp().unwrap();
        let expect = FormalSeries::from_terms(&sp, vec![(vec![], k(q(1))), (vec![(Var::X, 1)], k(q(1)))]).unwrap();
        assert_eq!(e, expect);
        assert_eq!(expect.log().unwrap(), l);
        assert_eq!(scalar_coeff(&l, &[(Var::X, 2)]), qf(-1, 2));
    }

    #[test]
    fn exp_of_kappa_t() {
        let sp = Space::new(&[(Var::T, 4)]);
        let s = FormalSeries::monomial(&sp, &[(Var::T, 1)], KappaPoly::kappa(1)).unwrap();
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(&[(Var::T, 2)]), KappaPoly::kappa(1).pow(2).scale(&qf(1, 2)));
        assert!(FormalSeries::one(&sp).exp().is_err());
        assert!(s.log().is_err());
    }

    #[test]
    fn laurent_floor_and_bounds() {
        let sp = Space::new(&[(Var::T, 3), (Var::X, 2)]);
        let mut s = FormalSeries::zero(&sp);
        s.add_term(&[(Var::T, -1), (Var::X, 1)], k(q(1))).unwrap();
        assert!(s.add_term(&[(Var::T, -2), (Var::X, 1)], k(q(1))).is_err());
        let sq = s.mul(&s).unwrap();
        assert_eq!(scalar_coeff(&sq, &[(Var::T, -2), (Var::X, 2)]), q(1));
        assert_eq!(sp.bound(Var::T), Some(3));
    }

    #[test]
    fn ionel_transform_examples() {
        let sp = Space::new(&[(Var::T, 4), (Var::X, 4)]);
        let x = FormalSeries::monomial(&sp, &[(Var::X, 1)], KappaPoly::one()).unwrap();
        let xh = ionel_transform(&x, 4, 4).unwrap();
        assert_eq!(scalar_coeff(&xh, &[(Var::Y, 1)]), q(-1));
        assert_eq!(scalar_coeff(&xh, &[(Var::Y, 2)]), q(4));
        assert_eq!(scalar_coeff(&xh, &[(Var::Y, 3)]), q(-16));
        let t = FormalSeries::monomial(&sp, &[(Var::T, 1)], KappaPoly::one()).unwrap();
        let th = ionel_transform(&t, 4, 4).unwrap();
        assert_eq!(scalar_coeff(&th, &[(Var::U, 1)]), q(1));
        assert_eq!(scalar_coeff(&th, &[(Var::U, 1), (Var::Y, 1)]), q(-2));
        assert_eq!(scalar_coeff(&th, &[(Var::U, 1), (Var::Y, 2)]), q(6));
        assert_eq!(ionel_coefficient(&x, 0, 1).unwrap(), KappaPoly::one());
        assert_eq!(ionel_coefficient(&FormalSeries::one(&sp), 0, 0).unwrap(), KappaPoly::one());
    }

    #[test]
    fn dilate_monomial() {
        let sp = Space::new(&[(Var::T, 5), (Var::X, 3)]);
        let x2 = FormalSeries::monomial(&sp, &[(Var::X, 2)], KappaPoly::one()).unwrap();
        let lam = FormalSeries::monomial(&sp, &[(Var::T, 1)], KappaPoly::one()).unwrap();
        let d = x2.dilate(&lam).unwrap();
        let expect = lam.scale(&q(2)).exp().unwrap().mul(&x2).unwrap();
        assert_eq!(d, expect);
        let one_plus_x = FormalSeries::from_terms(&sp, vec![(vec![], k(q(1))), (vec![(Var::X, 1)], k(q(1)))]).unwrap();
        assert_eq!(one_plus_x.dilate(&FormalSeries::zero(&sp)).unwrap(), one_plus_x);
    }
}
