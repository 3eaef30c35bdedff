//! Values at -N of the family with all but the last variable twisted, in
//! exact and numeric mode and under both prefactor conventions.

use twzeta::closed::{zeta_nn1_neg, EvalRequest, Variant};
use twzeta::number::rational::rat;
use twzeta::poly::{Mode, ParameterSet, RootOfUnity, Twist};

fn main() {
    let mu = |p, q| Twist::Root(RootOfUnity::new(p, q).unwrap());

    // sum over m1 >= 1, m2 >= 0 of (-1)^m1 (m1 + 1)^0 (m1 + m2 + 2)^0, continued: exactly 1
    let p = ParameterSet::new(vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)], vec![mu(1, 2)]).unwrap();
    let r = zeta_nn1_neg(&EvalRequest::new(p, vec![0, 0])).unwrap();
    println!("n = 2, N = (0, 0): {}", r.value.to_text());
    for t in &r.trace {
        println!("  uses {}", t.to_json());
    }

    let p = ParameterSet::new(
        vec![rat(1, 1), rat(1, 2), rat(3, 2)],
        vec![rat(1, 1), rat(2, 1), rat(7, 2)],
        vec![mu(1, 4), mu(1, 3)],
    )
    .unwrap();
    for v in Variant::ALL {
        let r = zeta_nn1_neg(&EvalRequest::new(p.clone(), vec![1, 0, 2]).variant(v)).unwrap();
        println!("n = 3, N = (1, 0, 2), {v}: {}", r.value.to_text());
    }
    let numeric = p.with_mode(Mode::Numeric).unwrap();
    let r = zeta_nn1_neg(&EvalRequest::new(numeric, vec![1, 0, 2]).prec(200)).unwrap();
    println!("numeric, 200 bits: {}", r.value.to_text());
}
