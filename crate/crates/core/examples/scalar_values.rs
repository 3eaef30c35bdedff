//! Bernoulli and Stirling numbers, and Riemann, Hurwitz, Lerch and power
//! Hurwitz zeta values at non-positive integers, all exact.

use twzeta::number::rational::rat;
use twzeta::number::{ExactValue, FieldContext};
use twzeta::special::{bernoulli, hurwitz_neg, lerch_neg, power_hurwitz_neg, riemann_neg, stirling2};

fn main() {
    println!("B_12 = {}", bernoulli(12));
    println!("S(5, 2) = {}", stirling2(5, 2));
    for n in 0..6 {
        println!("zeta({}) = {}", -(n as i64), riemann_neg(n));
    }
    println!("zeta(-1, 1/2) = {}", hurwitz_neg(1, &rat(1, 2)).unwrap());

    // Lerch values live in Q(zeta_q)
    let q4 = FieldContext::get(4);
    let i = ExactValue::zeta_power(&q4, 1);
    for k in 0..4 {
        let v = lerch_neg(&i, k).unwrap();
        println!("phi_i({}) = {}", -(k as i64), v.to_text());
    }

    for h in [1, 2, 3] {
        let v = power_hurwitz_neg(2, h, &rat(3, 2)).unwrap();
        println!("zeta(-2, h = {h}, b = 3/2) = {v}");
    }
}
