//! Sparse multivariate polynomials over a [`Scalar`] ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::number::Scalar;

/// Exponent vector `(k_1, ..., k_n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, j: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[j] = e;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

#[derive(Clone, Debug)]
pub struct SparsePoly<S> {
    dim: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> SparsePoly<S> {
    pub fn zero(dim: usize) -> Self {
        SparsePoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zeros(dim), c);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Option<&S> {
        self.terms.get(k)
    }

    pub fn add_term(&mut self, k: MultiIndex, c: S) {
        assert_eq!(k.len(), self.dim, "multi-index dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = v.plus(&c);
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn mul(&self, o: &SparsePoly<S>) -> SparsePoly<S> {
        let mut out = Self::zero(self.dim);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                out.add_term(ka.plus(kb), ca.times(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32, one: &S) -> SparsePoly<S> {
        let mut acc = Self::constant(self.dim, one.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Term-wise transformation of coefficients; zero results are dropped.
    pub fn map_coeffs(&self, mut f: impl FnMut(&MultiIndex, &S) -> S) -> SparsePoly<S> {
        let mut out = Self::zero(self.dim);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(k, c));
        }
        out
    }

    /// Evaluates at a point; `zero` fixes the ring context of the result.
    pub fn eval(&self, x: &[S], zero: &S) -> S {
        assert_eq!(x.len(), self.dim);
        let mut acc = zero.clone();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&k.0) {
                for _ in 0..e {
                    t = t.times(xi);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

impl<S: Scalar + PartialEq> PartialEq for SparsePoly<S> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.terms == o.terms
    }
}
