//! Parse polynomial equations and evaluate them exactly.
//!
//! ```bash
//! cargo run -p enform --example parse_and_evaluate
//! ```

use num_bigint::BigInt;

use enform::poly::{integer_sqrt_test, parse_equation};

fn main() {
    let eq = parse_equation("x1^5 - x1 = x2^2 - x2").unwrap();
    println!("equation:   {}", eq);
    println!("normalized: {} = 0", eq.normalized);

    let (max_coeff, degrees) = eq.normalized.coeff_stats();
    println!("max |coefficient| = {}, degrees = {:?}", max_coeff, degrees);

    // Evaluate at the two largest known integer solutions.
    for point in [[30i64, 4930], [30, -4929], [2, 6], [7, 7]] {
        let big: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        let value = eq.normalized.evaluate(&big).unwrap();
        println!(
            "  at ({:>2}, {:>5}): {} {}",
            point[0],
            point[1],
            value,
            if value == BigInt::from(0) { "— a solution" } else { "" }
        );
    }

    // The square test that drives the quintic scan: 4·30^5 - 4·30 + 1.
    let v = BigInt::from(4 * 30i64.pow(5) - 4 * 30 + 1);
    match integer_sqrt_test(&v) {
        Some(r) => println!("{} is a perfect square: {}^2 (and 2·4930 - 1 = {})", v, r, 2 * 4930 - 1),
        None => println!("{} is not a perfect square", v),
    }
}
