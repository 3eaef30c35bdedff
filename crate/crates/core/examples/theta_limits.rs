//! Directional limits at -N of the family with the last two variables
//! untwisted; the value is affine in the direction theta.

use twzeta::closed::{zeta_nn2_terms, zeta_nn2_theta, EvalRequest};
use twzeta::number::rational::rat;
use twzeta::poly::{ParameterSet, RootOfUnity, Twist};

fn main() {
    let p = ParameterSet::new(vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)], vec![]).unwrap();
    for theta in [rat(0, 1), rat(1, 2), rat(1, 1)] {
        let r = zeta_nn2_theta(&EvalRequest::new(p.clone().with_theta(theta.clone()), vec![0, 0])).unwrap();
        println!("n = 2, theta = {theta}: {}", r.value.to_text());
    }

    let mu = Twist::Root(RootOfUnity::new(1, 3).unwrap());
    let p = ParameterSet::new(vec![rat(1, 1), rat(1, 2), rat(2, 1)], vec![rat(1, 2), rat(1, 1), rat(5, 2)], vec![mu])
        .unwrap()
        .with_theta(rat(0, 1));
    let (t1, t2, t3) = zeta_nn2_terms(&EvalRequest::new(p, vec![1, 0, 1])).unwrap();
    println!("n = 3, N = (1, 0, 1): T1 + T2 + theta T3 with");
    println!("  T1 = {}", t1.to_text());
    println!("  T2 = {}", t2.to_text());
    println!("  T3 = {}", t3.to_text());
}
