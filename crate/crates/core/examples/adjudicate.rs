//! Deciding the prefactor convention for three variables: the two
//! conventions differ by a root of unity, and the oracle picks one.

use twzeta::closed::{EvalRequest, Variant};
use twzeta::number::rational::rat;
use twzeta::oracle::check::{adjudicate, check_one};
use twzeta::oracle::mb::ContourSpec;
use twzeta::poly::{ParameterSet, RootOfUnity, Twist};

fn main() {
    let mu = |p, q| Twist::Root(RootOfUnity::new(p, q).unwrap());
    let suite = [
        (ParameterSet::new(vec![rat(1, 1); 3], vec![rat(1, 1), rat(2, 1), rat(3, 1)], vec![mu(1, 2), mu(1, 3)]), vec![0, 0, 0]),
        (
            ParameterSet::new(vec![rat(1, 1), rat(1, 2), rat(1, 1)], vec![rat(1, 2), rat(3, 2), rat(5, 2)], vec![mu(1, 3), mu(1, 4)]),
            vec![1, 0, 0],
        ),
    ];
    let mut reports = Vec::new();
    for (p, n) in suite {
        let r = check_one(&EvalRequest::new(p.unwrap(), n), &Variant::ALL, &ContourSpec::default(), 166);
        for c in &r.checks {
            println!(
                "N = {:?} {:<18} {:<28} 2^{:<8.1} {}",
                r.point,
                c.variant.map_or("-", |v| v.name()),
                c.closed_text,
                c.log2_discrepancy,
                if c.matches { "match" } else { "mismatch" }
            );
        }
        reports.push(r);
    }
    println!("{}", adjudicate(&reports).to_json());
}
