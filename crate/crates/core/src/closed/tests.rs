use super::*;
use crate::number::rational::rat;
use crate::poly::{RootOfUnity, Twist};

fn tw(p: i64, q: u64) -> Twist {
    Twist::Root(RootOfUnity::new(p, q).unwrap())
}

fn params(gamma: &[i64], b: &[i64], mu: Vec<Twist>) -> ParameterSet {
    ParameterSet::new(gamma.iter().map(|&g| rat(g, 1)).collect(), b.iter().map(|&x| rat(x, 1)).collect(), mu).unwrap()
}

fn exact(r: &EvalResult) -> ExactValue {
    r.value.as_exact().unwrap().clone()
}

#[test]
fn nn1_fixtures() {
    let p = params(&[1, 1], &[1, 2], vec![tw(1, 2)]);
    let r = zeta_nn1_neg(&EvalRequest::new(p, vec![0, 0])).unwrap();
    assert_eq!(exact(&r).as_rational(), Some(rat(1, 1)));
    assert_eq!(r.variant, None);

    let p = params(&[1, 1], &[1, 2], vec![tw(1, 4)]);
    let r = zeta_nn1_neg(&EvalRequest::new(p, vec![0, 0])).unwrap();
    assert_eq!(exact(&r).coeffs(), &[rat(5, 4), rat(-3, 4)]);
    assert!(r.trace.iter().any(|t| matches!(t, TraceEntry::Lerch { k: 1, .. })));
}

#[test]
fn power_fixture() {
    let p = params(&[1, 1], &[1, 2], vec![tw(1, 2)]).with_h(vec![1, 2]).unwrap();
    let r = zeta_nn1_power_neg(&EvalRequest::new(p, vec![0, 0])).unwrap();
    assert_eq!(exact(&r).as_rational(), Some(rat(-1, 4)));
}

#[test]
fn fully_twisted_single() {
    let p = params(&[1], &[1], vec![tw(1, 2)]);
    let r = fully_twisted_neg(&EvalRequest::new(p, vec![1])).unwrap();
    assert_eq!(exact(&r).as_rational(), Some(rat(-3, 4)));
}

#[test]
fn variants_differ_by_prefactor() {
    let p = params(&[1, 2, 1], &[1, 2, 3], vec![tw(1, 3), tw(1, 4)]);
    let a = zeta_nn1_neg(&EvalRequest::new(p.clone(), vec![1, 0, 1]).variant(Variant::AsPrinted)).unwrap();
    let d = zeta_nn1_neg(&EvalRequest::new(p, vec![1, 0, 1]).variant(Variant::DerivedPrefactor)).unwrap();
    let ctx = exact(&a).context().clone();
    let mu2 = ExactValue::zeta_power(&ctx, 3);
    assert_eq!(exact(&d).try_mul(&mu2).unwrap(), exact(&a));
}

#[test]
fn theta_affine_and_zero() {
    let base = params(&[1, 2], &[1, 3], vec![]);
    let eval = |t: Rational| {
        let p = base.clone().with_theta(t);
        exact(&zeta_nn2_theta(&EvalRequest::new(p, vec![1, 2])).unwrap())
    };
    let (v0, v1, vh) = (eval(rat(0, 1)), eval(rat(1, 1)), eval(rat(1, 2)));
    let mid = v0.try_add(&v1).unwrap().scale(&rat(1, 2));
    assert_eq!(vh, mid);
    let (t1, t2, _) = zeta_nn2_terms(&EvalRequest::new(base.with_theta(rat(0, 1)), vec![1, 2])).unwrap();
    assert_eq!(v0, t1.try_add(&t2).unwrap());
}

#[test]
fn numeric_mode_matches_embedding() {
    let p = params(&[1, 2, 1], &[1, 2, 4], vec![tw(1, 3), tw(3, 4)]);
    let e = zeta_nn1_neg(&EvalRequest::new(p.clone(), vec![2, 1, 1])).unwrap();
    let n = zeta_nn1_neg(&EvalRequest::new(p.with_mode(Mode::Numeric).unwrap(), vec![2, 1, 1]).prec(200)).unwrap();
    let d = &e.value.to_numeric(200) - &n.value.to_numeric(200);
    assert!(d.log2_abs() < -190.0, "{}", d.log2_abs());
}

#[test]
fn errors() {
    let p = params(&[1, 1], &[2, 1], vec![tw(1, 2)]);
    assert!(matches!(zeta_nn1_neg(&EvalRequest::new(p, vec![0, 0])), Err(Error::Validation { .. })));
    let p = params(&[1, 1], &[1, 2], vec![tw(1, 2)]);
    assert!(zeta_nn1_neg(&EvalRequest::new(p.clone(), vec![0])).is_err());
    assert!(zeta_nn1_power_neg(&EvalRequest::new(p, vec![0, 0])).is_err());
}
