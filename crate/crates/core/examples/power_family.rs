//! Values at -N of the family with power denominators
//! `gamma_1 m_1^{h_1} + ... + gamma_j m_j^{h_j} + b_j`.

use twzeta::closed::{zeta_nn1_power_neg, EvalRequest};
use twzeta::number::rational::rat;
use twzeta::poly::{ParameterSet, RootOfUnity, Twist};

fn main() {
    let mu = |p, q| Twist::Root(RootOfUnity::new(p, q).unwrap());
    let p = ParameterSet::new(vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)], vec![mu(1, 2)]).unwrap();
    for h in [vec![1, 1], vec![1, 2], vec![2, 3]] {
        let ph = p.clone().with_h(h.clone()).unwrap();
        for n in [vec![0, 0], vec![1, 2]] {
            let r = zeta_nn1_power_neg(&EvalRequest::new(ph.clone(), n.clone())).unwrap();
            println!("h = {h:?}, N = {n:?}: {}", r.value.to_text());
        }
    }
}
