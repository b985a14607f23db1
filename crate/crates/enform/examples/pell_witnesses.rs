//! Pell equations and the square witnesses with enormous floors.
//!
//! ```bash
//! cargo run --release -p enform --example pell_witnesses
//! ```

use num_bigint::BigInt;

use enform::pell::{square_witnesses, pell_fundamental, witness_modulus, PellSolutions};

fn main() {
    // X² - 32·Y² = 1 has fundamental solution (17, 3).
    let (x, y) = pell_fundamental(32).unwrap();
    println!("fundamental solution of X² - 32·Y² = 1: ({}, {})", x, y);
    println!("next solutions from the recurrence:");
    for (x, y) in PellSolutions::new(32).unwrap().skip(1).take(3) {
        println!("  ({}, {})", x, y);
    }

    // The witnesses y ≥ 1 making 1 + x³(2+x)·y² a square, for x = 2..5.
    for x in 2u64..=5 {
        let ws = square_witnesses(x, 3).unwrap();
        let floor = BigInt::from(x) + BigInt::from(x).pow(x as u32 - 2);
        println!(
            "\nx = {} (modulus {}): first witnesses {:?}",
            x,
            witness_modulus(x),
            ws.iter().map(|w| w.to_string()).collect::<Vec<_>>()
        );
        println!("  witness floor x + x^(x-2) = {} — minimal witness meets it: {}",
            floor, ws[0] >= floor);
    }

    // The depth-2 modulus of the 21-variable construction already needs
    // hundreds of digits.
    let (x, y) = pell_fundamental(73_728).unwrap();
    println!(
        "\nfundamental solution for modulus 73728: X has {} digits, Y has {} digits",
        x.to_string().len(),
        y.to_string().len()
    );
}
