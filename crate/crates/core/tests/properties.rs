//! Property tests for the algebraic and closed-form layers.

use proptest::prelude::*;
use rug::ops::Pow;
use rug::Rational;

use twzeta::closed::{zeta_nn1_neg, zeta_nn1_power_neg, zeta_nn2_theta, EvalRequest, Variant};
use twzeta::number::rational::rat;
use twzeta::number::{euler_phi, BigComplex, ExactValue, FieldContext};
use twzeta::poly::{
    c_from_tilde, expand_linear_tilde, expand_power_tilde, tilde_from_c, Mode, MultiIndex, ParameterSet,
    RootOfUnity, SparsePoly, Twist,
};
use twzeta::special::{bernoulli, hurwitz_neg, lerch_neg, power_hurwitz_neg};

const PREC: u32 = 166;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn pos_rat() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn exact_value() -> impl Strategy<Value = ExactValue> {
    (1u64..=24).prop_flat_map(|l| {
        let d = euler_phi(l) as usize;
        proptest::collection::vec(small_rat(), d)
            .prop_map(move |c| ExactValue::from_coeffs(&FieldContext::get(l), c).unwrap())
    })
}

fn same_field_pair() -> impl Strategy<Value = (ExactValue, ExactValue)> {
    (1u64..=24).prop_flat_map(|l| {
        let d = euler_phi(l) as usize;
        (proptest::collection::vec(small_rat(), d), proptest::collection::vec(small_rat(), d)).prop_map(move |(a, b)| {
            let ctx = FieldContext::get(l);
            (ExactValue::from_coeffs(&ctx, a).unwrap(), ExactValue::from_coeffs(&ctx, b).unwrap())
        })
    })
}

fn close(a: &BigComplex, b: &BigComplex, bits: u32) -> bool {
    (a - b).log2_abs() < -(bits as f64) + b.log2_abs().max(0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_is_a_homomorphism((a, b) in same_field_pair()) {
        let (ea, eb) = (a.embed_numeric(PREC), b.embed_numeric(PREC));
        prop_assert!(close(&a.try_add(&b).unwrap().embed_numeric(PREC), &(&ea + &eb), PREC - 16));
        prop_assert!(close(&a.try_sub(&b).unwrap().embed_numeric(PREC), &(&ea - &eb), PREC - 16));
        prop_assert!(close(&a.try_mul(&b).unwrap().embed_numeric(PREC), &(&ea * &eb), PREC - 16));
        if !b.is_zero() {
            let q = a.try_div(&b).unwrap().embed_numeric(PREC);
            prop_assert!(close(&q, &(&ea * &eb.recip()), PREC - 16));
        }
    }

    #[test]
    fn inverse_and_cancellation(a in exact_value()) {
        let ctx = a.context().clone();
        prop_assert!(a.try_sub(&a).unwrap().coeffs().iter().all(|c| *c == 0));
        if !a.is_zero() {
            prop_assert_eq!(a.try_mul(&a.inverse().unwrap()).unwrap(), ExactValue::one(&ctx));
        }
    }

    #[test]
    fn exact_round_trips(a in exact_value()) {
        prop_assert_eq!(&ExactValue::from_json(&a.to_json()).unwrap(), &a);
        prop_assert_eq!(&ExactValue::from_text(&a.to_text_with_field()).unwrap(), &a);
    }

    #[test]
    fn hurwitz_shift(a in pos_rat(), l in 0u32..=10) {
        let lhs = hurwitz_neg(l, &Rational::from(&a + 1u32)).unwrap();
        let rhs = hurwitz_neg(l, &a).unwrap() - a.clone().pow(l as i32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_hurwitz_at_h_one_is_hurwitz(b in pos_rat(), l in 0u32..=10) {
        prop_assert_eq!(power_hurwitz_neg(l, 1, &b).unwrap(), hurwitz_neg(l, &b).unwrap());
    }

    #[test]
    fn lerch_through_hurwitz(q in 2u64..=12, p in 1i64..12, k in 0u32..=10) {
        let p = 1 + (p - 1) % (q as i64 - 1);
        let ctx = FieldContext::get(q);
        let mu = ExactValue::zeta_power(&ctx, p);
        let mut rhs = ExactValue::zero(&ctx);
        for a in 1..=q as i64 {
            rhs = rhs.try_add(&ExactValue::zeta_power(&ctx, p * a).scale(&hurwitz_neg(k, &rat(a, q as i64)).unwrap())).unwrap();
        }
        let scale = Rational::from(rug::Integer::from(q).pow(k));
        prop_assert_eq!(lerch_neg(&mu, k).unwrap(), rhs.scale(&scale));
    }
}

#[test]
fn odd_bernoulli_numbers_vanish() {
    for k in 1..=20 {
        assert_eq!(bernoulli(2 * k + 1), 0);
    }
}

fn expansion_input() -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, Vec<u32>, Vec<u32>, Vec<Rational>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(pos_rat(), n),
            proptest::collection::vec(small_rat(), n),
            proptest::collection::vec(1u32..=3, n),
            proptest::collection::vec(0u32..=6, n).prop_filter("|alpha| <= 6", |a| a.iter().sum::<u32>() <= 6),
            proptest::collection::vec(small_rat(), n),
        )
    })
}

fn direct_product(g: &[Rational], b: &[Rational], h: Option<&[u32]>, alpha: &[u32], x: &[Rational]) -> Rational {
    let mut acc = rat(1, 1);
    for j in 0..g.len() {
        let mut lin = b[j].clone();
        for i in 0..=j {
            let e = h.map_or(1, |h| h[i]) as i32;
            lin += &g[i] * x[i].clone().pow(e);
        }
        acc *= lin.pow(alpha[j] as i32);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_expansion_evaluates_to_product((g, b, _h, alpha, x) in expansion_input()) {
        let poly = expand_linear_tilde(&g, &b, &MultiIndex(alpha.clone())).unwrap();
        prop_assert_eq!(poly.eval(&x, &rat(0, 1)), direct_product(&g, &b, None, &alpha, &x));
        let total: u32 = alpha.iter().sum();
        for (k, c) in poly.terms() {
            prop_assert!(k.total() <= total);
            prop_assert!(*c != 0);
        }
    }

    #[test]
    fn power_expansion_evaluates_to_product((g, b, h, alpha, x) in expansion_input()) {
        let poly = expand_power_tilde(&g, &b, &h, &MultiIndex(alpha.clone())).unwrap();
        prop_assert_eq!(poly.eval(&x, &rat(0, 1)), direct_product(&g, &b, Some(&h), &alpha, &x));
    }

    #[test]
    fn tilde_conversion_round_trip(
        g in proptest::collection::vec(pos_rat(), 3),
        terms in proptest::collection::vec((proptest::collection::vec(0u32..=4, 3), small_rat()), 0..12),
    ) {
        let mut poly = SparsePoly::zero(3);
        for (k, c) in terms {
            poly.add_term(MultiIndex(k), c);
        }
        let back = c_from_tilde(&tilde_from_c(&poly, &g).unwrap(), &g).unwrap();
        let a: Vec<_> = poly.terms().collect();
        let b: Vec<_> = back.terms().collect();
        prop_assert_eq!(a, b);
    }
}

/// Parameters with increasing shifts and `k` twisted variables.
fn family(n: usize, k: usize) -> impl Strategy<Value = ParameterSet> {
    let orders = prop_oneof![Just(2u64), Just(3), Just(4), Just(6)];
    (
        proptest::collection::vec(pos_rat(), n),
        pos_rat(),
        proptest::collection::vec(pos_rat(), n - 1),
        proptest::collection::vec((orders, 1i64..6), k),
    )
        .prop_map(move |(gamma, b0, gaps, tw)| {
            let mut b = vec![b0];
            for g in gaps {
                let next = Rational::from(b.last().unwrap() + &g);
                b.push(next);
            }
            let mu = tw
                .into_iter()
                .map(|(q, p)| Twist::Root(RootOfUnity::new(1 + (p - 1) % (q as i64 - 1), q).unwrap()))
                .collect();
            ParameterSet::new(gamma, b, mu).unwrap()
        })
}

fn point(n: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..=3, n).prop_filter("|N| <= 3", |v| v.iter().sum::<u32>() <= 3)
}

fn exact(r: twzeta::Result<twzeta::closed::EvalResult>) -> ExactValue {
    r.unwrap().value.as_exact().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_affinity(p in (2usize..=3).prop_flat_map(|n| (family(n, n - 2), point(n))), t in small_rat()) {
        let (p, n) = p;
        let at = |th: Rational| exact(zeta_nn2_theta(&EvalRequest::new(p.clone().with_theta(th), n.clone())));
        let (v0, v1, vt) = (at(rat(0, 1)), at(rat(1, 1)), at(t.clone()));
        prop_assert_eq!(vt.try_sub(&v0).unwrap(), v1.try_sub(&v0).unwrap().scale(&t));
    }

    #[test]
    fn h_one_power_family_is_shifted_nn1(p in (2usize..=3).prop_flat_map(|n| (family(n, n - 1), point(n)))) {
        let (p, n) = p;
        let d = p.n;
        let pw = p.clone().with_h(vec![1; d]).unwrap();
        let lhs = exact(zeta_nn1_power_neg(&EvalRequest::new(pw, n.clone())));
        // m_j -> m_j + 1 for 2 <= j <= n-1
        let mut b = p.b.clone();
        let mut acc = rat(0, 1);
        for j in 1..d {
            if j < d - 1 {
                acc += &p.gamma[j];
            }
            b[j] += &acc;
        }
        let q = ParameterSet::new(p.gamma.clone(), b, p.mu.clone()).unwrap();
        let mut rhs = exact(zeta_nn1_neg(&EvalRequest::new(q, n)));
        let ctx = rhs.context().clone();
        for t in &p.mu[1..] {
            let r = t.root().unwrap();
            rhs = rhs.try_mul(&ExactValue::zeta_power(&ctx, r.numer() as i64 * (ctx.level() / r.order()) as i64)).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_and_numeric_modes_agree(p in (2usize..=3).prop_flat_map(|n| (family(n, n - 1), point(n)))) {
        let (p, n) = p;
        let ex = zeta_nn1_neg(&EvalRequest::new(p.clone(), n.clone())).unwrap().value.to_numeric(PREC);
        let num = zeta_nn1_neg(&EvalRequest::new(p.with_mode(Mode::Numeric).unwrap(), n).prec(PREC)).unwrap();
        prop_assert!(close(&num.value.to_numeric(PREC), &ex, PREC - 16));
    }

    #[test]
    fn variants_coincide_for_two_variables(p in family(2, 1), n in point(2)) {
        let a = exact(zeta_nn1_neg(&EvalRequest::new(p.clone(), n.clone()).variant(Variant::AsPrinted)));
        let b = exact(zeta_nn1_neg(&EvalRequest::new(p, n).variant(Variant::DerivedPrefactor)));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn shifts_on_the_cut_are_rejected(p in family(2, 1), n in point(2), lift in 0i64..4) {
        let mut q = p.clone();
        q.b[1] = &q.b[0] - rat(lift, 2);
        let r = zeta_nn1_neg(&EvalRequest::new(q, n));
        let rejected = matches!(r, Err(twzeta::Error::Validation { .. }));
        prop_assert!(rejected);
    }
}
