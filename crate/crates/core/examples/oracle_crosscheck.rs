//! The contour-integral oracle: agreement with the nested series inside the
//! convergence domain, and a closed value at -N recovered by extrapolation.

use std::time::Instant;

use twzeta::closed::{zeta_nn1_neg, EvalRequest};
use twzeta::number::rational::rat;
use twzeta::number::BigComplex;
use twzeta::oracle::family::{Family, Level};
use twzeta::oracle::limit::value_at_neg;
use twzeta::oracle::mb::{mb_eval, ContourSpec};
use twzeta::oracle::series::mzeta_series;
use twzeta::poly::{ParameterSet, RootOfUnity, Twist};

fn main() {
    let prec = 166;
    let p = ParameterSet::new(
        vec![rat(1, 1), rat(2, 1)],
        vec![rat(1, 2), rat(3, 2)],
        vec![Twist::Root(RootOfUnity::new(1, 3).unwrap())],
    )
    .unwrap();
    let f = Family::from_params(&p, Level::Nn1).unwrap();

    let s = [BigComplex::from_f64(prec, 0.75, 1.5), BigComplex::from_f64(prec, 2.5, -0.5)];
    let t = Instant::now();
    let series = mzeta_series(&f, &s, prec).unwrap();
    let mb = mb_eval(&f, &s, &ContourSpec::default(), prec).unwrap();
    println!("series   {series}");
    println!("contour  {}  ({:?})", mb.value, t.elapsed());
    println!("difference 2^{:.1}, estimate 2^{:.1}", (&series - &mb.value).log2_abs(), mb.log2_err);
    println!("contour: {}", mb.to_json()["contour"]);

    let t = Instant::now();
    let lim = value_at_neg(&f, &[1, 2], &ContourSpec::default(), prec).unwrap();
    let closed = zeta_nn1_neg(&EvalRequest::new(p, vec![1, 2])).unwrap();
    println!("closed value at (-1, -2): {}", closed.value.to_text());
    println!("oracle  {}  (error 2^{:.1}, {:?})", lim.value, lim.log2_err, t.elapsed());
    println!("difference 2^{:.1}", (&lim.value - &closed.value.to_numeric(prec)).log2_abs());
}
