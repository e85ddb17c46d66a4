//! Sparse polynomials in the kappa classes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::foundations::{fmt_q, q, Q};

/// Multiset of kappa indices (each >= -1), stored sorted ascending.
pub type KappaMonomial = Vec<i32>;

pub fn monomial(mut idx: Vec<i32>) -> KappaMonomial {
    idx.sort_unstable();
    idx
}

fn merge(a: &[i32], b: &[i32]) -> KappaMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct KappaPoly {
    terms: BTreeMap<KappaMonomial, Q>,
}

impl KappaPoly {
    pub fn zero() -> Self {
        KappaPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// The single class kappa_i.
    pub fn kappa(i: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![i], Q::one());
        p
    }

    pub fn term(mono: KappaMonomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(monomial(mono), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KappaMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[i32]) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c * mono`; `mono` must already be sorted.
    pub fn add_term(&mut self, mono: KappaMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &KappaPoly, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    /// self += a * b
    pub fn add_product(&mut self, a: &KappaPoly, b: &KappaPoly, s: &Q) {
        for (ma, ca) in &a.terms {
            let cas = ca * s;
            for (mb, cb) in &b.terms {
                self.add_term(merge(ma, mb), &cas * cb);
            }
        }
    }

    pub fn scale(&self, s: &Q) -> KappaPoly {
        if s.is_zero() {
            return Self::zero();
        }
        KappaPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn neg(&self) -> KappaPoly {
        self.scale(&q(-1))
    }

    pub fn add(&self, other: &KappaPoly) -> KappaPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &Q::one());
        r
    }

    pub fn sub(&self, other: &KappaPoly) -> KappaPoly {
        let mut r = self.clone();
        r.add_assign_scaled(other, &q(-1));
        r
    }

    pub fn mul(&self, other: &KappaPoly) -> KappaPoly {
        let mut r = Self::zero();
        r.add_product(self, other, &Q::one());
        r
    }

    pub fn mul_monomial(&self, mono: &[i32]) -> KappaPoly {
        KappaPoly { terms: self.terms.iter().map(|(m, c)| (merge(m, mono), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> KappaPoly {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Degree of a monomial: sum of indices.
    pub fn monomial_degree(m: &[i32]) -> i32 {
        m.iter().sum()
    }

    /// Some(d) if every monomial has degree d (the zero polynomial has none).
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| Self::monomial_degree(m));
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.terms.keys().all(|m| Self::monomial_degree(m) == d)
    }

    /// The constant term (coefficient of the empty monomial).
    pub fn constant_term(&self) -> Q {
        self.coeff(&[])
    }

    /// Substitutes kappa_{-1} = 0 and kappa_0 = 2g - 2.
    pub fn specialize(&self, g: i64) -> KappaPoly {
        let k0 = q(2 * g - 2);
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            if m.first() == Some(&-1) {
                continue;
            }
            let zeros = m.iter().take_while(|&&i| i == 0).count();
            let rest = m[zeros..].to_vec();
            let f = num_traits::pow(k0.clone(), zeros);
            r.add_term(rest, c * f);
        }
        r
    }

    /// Substitutes kappa_{-1} = 0, leaving kappa_0 symbolic.
    pub fn drop_kappa_minus_one(&self) -> KappaPoly {
        KappaPoly { terms: self.terms.iter().filter(|(m, _)| m.first() != Some(&-1)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Replaces every kappa_i by kappa_{i + shift}.
    pub fn shift_indices(&self, shift: i32) -> KappaPoly {
        KappaPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().map(|i| i + shift).collect(), c.clone()))
                .collect(),
        }
    }

    /// Drops monomials containing an index above `max`.
    pub fn truncate_index(&self, max: i32) -> KappaPoly {
        KappaPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.last().is_none_or(|&i| i <= max))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_index(&self) -> Option<i32> {
        self.terms.keys().filter_map(|m| m.last().copied()).max()
    }

    pub fn from_terms(it: impl IntoIterator<Item = (KappaMonomial, Q)>) -> KappaPoly {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(monomial(m), c);
        }
        p
    }
}

impl fmt::Display for KappaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", fmt_q(c))?;
            for i in m {
                write!(f, "*k{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::qf;

    #[test]
    fn arithmetic_and_specialize() {
        let k0 = KappaPoly::kappa(0);
        let k1 = KappaPoly::kappa(1);
        assert_eq!(k0.mul(&k1).specialize(2), k1.scale(&q(2)));
        let km1 = KappaPoly::kappa(-1).mul(&KappaPoly::kappa(5));
        assert!(km1.specialize(7).is_zero());
        let k2 = KappaPoly::kappa(2);
        let p = k2.add(&k0.mul(&k0).mul(&k2));
        assert_eq!(p.specialize(3), k2.scale(&q(17)));
        let x = k1.add(&KappaPoly::constant(qf(1, 2)));
        assert_eq!(x.sub(&x), KappaPoly::zero());
        assert_eq!(k1.mul(&k2).homogeneous_degree(), Some(3));
    }
}
