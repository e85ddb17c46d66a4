//! Exact linear algebra over Q: incremental echelon forms, rank, solving.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::foundations::Q;

/// Rows in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    /// (pivot column, row normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, v: &mut [Q]) {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (a, b) in v.iter_mut().zip(r) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        self.reduce(&mut v);
        let p = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (a, b) in r.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(n);
    for r in rows {
        e.insert(r.clone());
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

/// True if the two row sets span the same subspace.
pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>], ncols: usize) -> bool {
    let mut ea = Echelon::new(ncols);
    for r in a {
        ea.insert(r.clone());
    }
    let mut eb = Echelon::new(ncols);
    for r in b {
        eb.insert(r.clone());
    }
    ea.rank() == eb.rank() && b.iter().all(|r| ea.contains(r)) && a.iter().all(|r| eb.contains(r))
}

/// Solves the square system M x = rhs, erroring if M is singular.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Result<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or_else(|| Error::Consistency("singular linear system".into()))?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    debug_assert!(a.iter().enumerate().all(|(i, r)| r[i].is_one()));
    Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::q;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_span() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let other = vec![v(&[1, 3, 4]), v(&[1, 1, 2])];
        assert!(same_span(&rows, &other, 3));
        assert!(!same_span(&rows, &[v(&[0, 0, 1])], 3));
    }

    #[test]
    fn solve_small() {
        let m = vec![v(&[2, 1]), v(&[1, 3])];
        let x = solve(&m, &v(&[3, 5])).unwrap();
        assert_eq!(x, vec![q(4) / q(5), q(7) / q(5)]);
        assert!(solve(&[v(&[1, 2]), v(&[2, 4])], &v(&[1, 1])).is_err());
    }
}
