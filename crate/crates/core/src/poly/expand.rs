//! Coefficient expansions of products of nested linear (or power) forms.
//!
//! `expand_linear_tilde` expands `prod_j (gamma_1 X_1 + ... + gamma_j X_j + b_j)^{alpha_j}`;
//! the plain coefficients `c` are those of the same product with every
//! `gamma_i = 1`, and the two families differ by the factor `gamma^k`.

use super::sparse::{MultiIndex, SparsePoly};
use crate::error::{Error, Result};
use crate::number::Scalar;

fn check_dims<S>(gamma: &[S], b: &[S], alpha: &MultiIndex) -> Result<()> {
    if gamma.len() != b.len() || gamma.len() != alpha.len() {
        return Err(Error::validation(
            "dimension",
            format!("gamma, b and alpha must have equal length ({}, {}, {})", gamma.len(), b.len(), alpha.len()),
        ));
    }
    Ok(())
}

fn expand_with<S: Scalar>(gamma: &[S], b: &[S], h: Option<&[u32]>, alpha: &MultiIndex) -> Result<SparsePoly<S>> {
    check_dims(gamma, b, alpha)?;
    let n = gamma.len();
    let one = match b.first() {
        Some(b0) => b0.one_like(),
        None => return Err(Error::validation("dimension", "empty parameter vectors")),
    };
    let mut acc = SparsePoly::constant(n, one.clone());
    for j in 0..n {
        if alpha.0[j] == 0 {
            continue;
        }
        let mut factor = SparsePoly::constant(n, b[j].clone());
        for i in 0..=j {
            let e = h.map_or(1, |h| h[i]);
            factor.add_term(MultiIndex::unit(n, i, e), gamma[i].clone());
        }
        acc = acc.mul(&factor.pow(alpha.0[j], &one));
    }
    Ok(acc)
}

/// Coefficients `c~_n(b; alpha, k)` of `prod_j (sum_{i<=j} gamma_i X_i + b_j)^{alpha_j}`.
pub fn expand_linear_tilde<S: Scalar>(gamma: &[S], b: &[S], alpha: &MultiIndex) -> Result<SparsePoly<S>> {
    expand_with(gamma, b, None, alpha)
}

/// Coefficients of `prod_j (sum_{i<=j} gamma_i X_i^{h_i} + b_j)^{alpha_j}`.
pub fn expand_power_tilde<S: Scalar>(gamma: &[S], b: &[S], h: &[u32], alpha: &MultiIndex) -> Result<SparsePoly<S>> {
    if h.len() != gamma.len() || h.contains(&0) {
        return Err(Error::validation("power exponents", "h must have length n with entries >= 1"));
    }
    expand_with(gamma, b, Some(h), alpha)
}

fn gamma_power<S: Scalar>(gamma: &[S], k: &MultiIndex) -> Result<S> {
    let mut g = gamma[0].one_like();
    for (gi, &e) in gamma.iter().zip(&k.0) {
        g = g.times(&gi.pow_i(e as i64)?);
    }
    Ok(g)
}

/// `c = c~ / gamma^k`.
pub fn c_from_tilde<S: Scalar>(tilde: &SparsePoly<S>, gamma: &[S]) -> Result<SparsePoly<S>> {
    let mut out = SparsePoly::zero(tilde.dim());
    for (k, c) in tilde.terms() {
        out.add_term(k.clone(), c.divided(&gamma_power(gamma, k)?)?);
    }
    Ok(out)
}

/// `c~ = c * gamma^k`.
pub fn tilde_from_c<S: Scalar>(c: &SparsePoly<S>, gamma: &[S]) -> Result<SparsePoly<S>> {
    let mut out = SparsePoly::zero(c.dim());
    for (k, v) in c.terms() {
        out.add_term(k.clone(), v.times(&gamma_power(gamma, k)?));
    }
    Ok(out)
}

/// Rewrites the mixed summation domain `m_1 >= 1, m_j >= 0` as the all-positive
/// one: `b'_1 = b_1`, `b'_j = b_j - (gamma_2 + ... + gamma_j)`.
pub fn shift_to_all_positive<S: Scalar>(gamma: &[S], b: &[S]) -> Result<Vec<S>> {
    if gamma.len() != b.len() || b.is_empty() {
        return Err(Error::validation("dimension", "gamma and b must be non-empty and of equal length"));
    }
    let mut out = Vec::with_capacity(b.len());
    let mut acc = b[0].zero_like();
    for j in 0..b.len() {
        if j > 0 {
            acc = acc.plus(&gamma[j]);
        }
        out.push(b[j].minus(&acc));
    }
    Ok(out)
}

/// `sum_k coeff_k prod_j phi_{mu_j}(-k_j)`, with `lerch(j, k)` supplying the values.
pub fn decrisenoy_eval<S: Scalar>(
    poly: &SparsePoly<S>,
    zero: &S,
    mut lerch: impl FnMut(usize, u32) -> Result<S>,
) -> Result<S> {
    let mut acc = zero.clone();
    for (k, c) in poly.terms() {
        let mut t = c.clone();
        for (j, &e) in k.0.iter().enumerate() {
            t = t.times(&lerch(j, e)?);
        }
        acc = acc.plus(&t);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rational::rat;
    use crate::special::lerch_neg;
    use rug::Rational;

    fn r(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn linear_fixture() {
        let p = expand_linear_tilde(&r(&[(1, 1), (1, 1)]), &r(&[(1, 1), (2, 1)]), &vec![1, 1].into()).unwrap();
        let expect = [([2, 0], 1), ([1, 1], 1), ([1, 0], 3), ([0, 1], 1), ([0, 0], 2)];
        assert_eq!(p.len(), expect.len());
        for (k, c) in expect {
            assert_eq!(p.coeff(&k.to_vec().into()), Some(&rat(c, 1)));
        }
    }

    #[test]
    fn power_fixture() {
        let p = expand_power_tilde(&r(&[(1, 1), (1, 1)]), &r(&[(1, 1), (2, 1)]), &[1, 2], &vec![0, 1].into()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&vec![1, 0].into()), Some(&rat(1, 1)));
        assert_eq!(p.coeff(&vec![0, 2].into()), Some(&rat(1, 1)));
        assert_eq!(p.coeff(&vec![0, 0].into()), Some(&rat(2, 1)));
    }

    #[test]
    fn tilde_round_trip() {
        let g = r(&[(2, 3), (5, 2), (1, 7)]);
        let b = r(&[(1, 2), (-1, 3), (4, 1)]);
        let alpha: MultiIndex = vec![2, 1, 2].into();
        let t = expand_linear_tilde(&g, &b, &alpha).unwrap();
        let c = c_from_tilde(&t, &g).unwrap();
        let ones = r(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(c, expand_linear_tilde(&ones, &b, &alpha).unwrap());
        assert_eq!(tilde_from_c(&c, &g).unwrap(), t);
    }

    #[test]
    fn shift_fixture() {
        let b = shift_to_all_positive(&r(&[(1, 1), (1, 1)]), &r(&[(1, 1), (2, 1)])).unwrap();
        assert_eq!(b, r(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn decrisenoy_fixture() {
        let p = expand_linear_tilde(&r(&[(1, 1)]), &r(&[(1, 1)]), &vec![1].into()).unwrap();
        let mu = rat(-1, 1);
        let v = decrisenoy_eval(&p, &rat(0, 1), |_, k| lerch_neg(&mu, k)).unwrap();
        assert_eq!(v, rat(-3, 4));
    }
}
