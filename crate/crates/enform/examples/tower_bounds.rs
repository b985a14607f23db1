//! Exact arithmetic on the double-exponential height bounds.
//!
//! ```bash
//! cargo run -p enform --example tower_bounds
//! ```

use num_bigint::BigInt;

use enform::bounds::{
    bound_d, bound_nonneg, bound_rational, conjecture_bound, general_psi_bound, within, Psi,
};
use enform::poly::parse_polynomial;

fn main() {
    // The cap for 7-variable systems is 2^(2^6) = 2^64.
    let bound = conjecture_bound(7);
    println!("bound for n = 7: {} = {}", bound, bound.value_capped(1 << 10).unwrap());

    // Equality at the boundary is decided exactly.
    let edge = BigInt::from(4);
    println!("|4| within the n = 2 bound:  {}", within(&edge, &conjecture_bound(2)));
    println!("|5| within the n = 2 bound:  {}", within(&(edge + 1), &conjecture_bound(2)));

    // The equation bound: 2^(2^(card(T)-1)).
    let d = parse_polynomial("x1 - 1").unwrap();
    println!("\nbound for x1 - 1 = 0 over the integers:  {}", bound_d(&d).unwrap());
    println!("... over the non-negatives (via the four-square encoding): {}",
        bound_nonneg(&d).unwrap());

    // The rational pipeline stays symbolic — the exponent has far too many
    // digits to materialize, but its canonical string is exact.
    let d = parse_polynomial("2*x1 - 1").unwrap();
    let b = bound_rational(&d).unwrap();
    println!("rational-height bound for 2·x1 - 1 = 0: {}", b);
    println!("the solution 1/2 has height 2; within the bound: {}", b.admits(&BigInt::from(2)));

    // Alternative computable bounds from the registry.
    let psi: Psi = "2^(2^n)".parse().unwrap();
    println!("\nshifted bound at n = 3: {}", general_psi_bound(3, &psi).unwrap());
    let table: Psi = "table:1=2,2=4".parse().unwrap();
    println!("table bound at n = 2:   {}", general_psi_bound(2, &table).unwrap());
}
