//! The solution-set transforms and their witness finders.
//!
//! ```bash
//! cargo run -p enform --example transform_tour
//! ```

use num_bigint::BigInt;

use enform::ensys::{enumerate_box, EnEquation, EnSystem, SolveOptions};
use enform::poly::{parse_polynomial, solve_box};
use enform::transforms::{bezout_bounded, four_square, hat, divisibility_witness, rationalize, tilde};

fn main() {
    // Tilde: eliminating x1 = 1 adds exactly the zero tuple.
    let s = EnSystem::from_equations(2, vec![EnEquation::one(1)]).unwrap();
    let t = tilde(&s);
    println!("tilde of {{x1 = 1}} over two variables:");
    print!("{}", t);
    let sols = enumerate_box(&t, 3, &SolveOptions::default());
    println!("solutions in [-3,3]²: {:?}\n", sols.solutions);

    // Hat: non-negative solvability becomes integer solvability.
    let d = parse_polynomial("x1 - 2").unwrap();
    let h = hat(&d);
    println!("hat of x1 - 2 spans {} variables", h.num_vars());
    let found = solve_box(&[h], 5, 2, 1000);
    println!("integer zeros with |·| ≤ 2 (x1, a, b, c, d): {:?}\n", found.solutions);

    // Rationalize: rational solutions as integer solutions.
    let idem = EnSystem::from_equations(1, vec![EnEquation::mul(1, 1, 1)]).unwrap();
    let eqs = rationalize(&idem);
    println!("rational encoding of {{x1·x1 = x1}}:");
    for eq in &eqs {
        println!("  {}", eq);
    }

    // Witness finders.
    println!("\nfour squares of 7: {:?}", four_square(7).unwrap());
    println!("Bézout pair for (10, 7): {:?} — 10·(-2) + 7·3 = 1, |-2| ≤ 7", bezout_bounded(10, 7).unwrap());
    let (a, b) = divisibility_witness(&BigInt::from(5)).unwrap();
    println!("divisibility witness for x = 5: a = {}, b = {} (5·{} = (2·{} - 1)(3·{} - 1))", a, b, a, b, b);
}
