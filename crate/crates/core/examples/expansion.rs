//! Coefficients of nested products of linear and power forms.

use twzeta::number::format_rational;
use twzeta::number::rational::rat;
use twzeta::poly::{c_from_tilde, expand_linear_tilde, expand_power_tilde, MultiIndex};

fn main() {
    let gamma = vec![rat(1, 1), rat(1, 2), rat(2, 1)];
    let b = vec![rat(1, 1), rat(3, 2), rat(3, 1)];
    let alpha = MultiIndex(vec![1, 0, 2]);

    // (X1 + 1)(X1 + X2/2 + 2X3 + 3)^2
    let tilde = expand_linear_tilde(&gamma, &b, &alpha).unwrap();
    println!("{} terms", tilde.len());
    for (k, c) in tilde.terms() {
        println!("  {:?}: {}", k.0, format_rational(c));
    }
    let plain = c_from_tilde(&tilde, &gamma).unwrap();
    println!("coefficient of X3^2 without the gamma powers: {}", format_rational(plain.coeff(&MultiIndex(vec![0, 0, 2])).unwrap()));

    let x = vec![rat(1, 3), rat(-2, 1), rat(1, 4)];
    println!("value at {:?}: {}", x.iter().map(format_rational).collect::<Vec<_>>(), tilde.eval(&x, &rat(0, 1)));

    // (X1 + 1)(X1 + X2^2/2 + 2X3^3 + 3)^2
    let power = expand_power_tilde(&gamma, &b, &[1, 2, 3], &alpha).unwrap();
    println!("power form: {} terms, value {}", power.len(), power.eval(&x, &rat(0, 1)));
}
