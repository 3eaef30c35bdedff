//! Exact arithmetic in Q(zeta_L), the numeric embedding, and the JSON and
//! text forms used by the command line.

use twzeta::number::rational::rat;
use twzeta::number::{ExactValue, FieldContext};

fn main() {
    let ctx = FieldContext::get(12);
    let z = ExactValue::zeta_power(&ctx, 1);
    let a = ExactValue::one(&ctx).try_add(&z.scale(&rat(1, 2))).unwrap();
    let b = ExactValue::zeta_power(&ctx, 5).try_sub(&ExactValue::from_rational(&ctx, &rat(2, 3))).unwrap();

    let prod = a.try_mul(&b).unwrap();
    let quot = a.try_div(&b).unwrap();
    println!("a       = {}", a.to_text());
    println!("b       = {}", b.to_text());
    println!("a * b   = {}", prod.to_text());
    println!("a / b   = {}", quot.to_text());
    println!("(a/b)*b = {}", quot.try_mul(&b).unwrap().to_text());
    println!("zeta_12^12 = {}", z.pow(12).unwrap().to_text());
    println!("embed(a * b) = {}", prod.embed_numeric(128));

    let json = prod.to_json();
    println!("json: {json}");
    assert_eq!(ExactValue::from_json(&json).unwrap(), prod);
    let text = prod.to_text_with_field();
    println!("text: {text}");
    assert_eq!(ExactValue::from_text(&text).unwrap(), prod);

    // values from different fields are lifted explicitly
    let w = ExactValue::zeta_power(&FieldContext::get(3), 1);
    let lifted = w.lift(&ctx).unwrap();
    println!("zeta_3 in Q(zeta_12) = {}", lifted.to_text());
}
