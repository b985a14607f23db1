//! Compile a polynomial equation into a single-operation system, both by
//! the compact three-address lowering and by the exhaustive family
//! construction.
//!
//! ```bash
//! cargo run -p enform --example lower_an_equation
//! ```

use enform::lower::{card_t, lower_canonical, lower_compact};
use enform::poly::{parse_equation, parse_polynomial};

fn main() {
    let eq = parse_equation("x1^5 - x1 = x2^2 - x2").unwrap();
    let map = lower_compact(&eq);
    println!("compact lowering of {}:", eq);
    println!("{}", map.target);
    println!("variable meanings:");
    for (i, p) in &map.var_meaning {
        println!("  x{} = {}", i, p);
    }

    // The exhaustive construction materializes every polynomial with
    // coefficients in [-M, M] and bounded degrees — only viable when
    // card(T) is tiny.
    let linear = parse_polynomial("x1 - 1").unwrap();
    println!("\ncard(T) for x1 - 1: {}", card_t(&linear).unwrap());
    let map = lower_canonical(&linear).unwrap();
    println!("canonical lowering spans {} variables, {} equations",
        map.target.n(), map.target.len());
    println!("zero-forced value variable: x{}", map.result_var.unwrap());

    // The quintic explodes: card(T) = 3^18.
    match lower_canonical(&eq.normalized) {
        Err(e) => println!("\nquintic: {}", e),
        Ok(_) => unreachable!(),
    }
}
