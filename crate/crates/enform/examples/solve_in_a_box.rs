//! Enumerate and count integer solutions of single-operation systems.
//!
//! ```bash
//! cargo run --release -p enform --example solve_in_a_box
//! ```

use enform::ensys::{count_solutions, enumerate_box, EnEquation, EnSystem, SolveOptions};
use enform::gallery::{build_chain, build_family_1156};

fn main() {
    // x1·x1 = x2 in [-2, 2]².
    let squares = EnSystem::from_equations(2, vec![EnEquation::mul(1, 1, 2)]).unwrap();
    let sols = enumerate_box(&squares, 2, &SolveOptions::default());
    println!("solutions of x1·x1 = x2 in [-2,2]²: {:?}", sols.solutions);

    // The doubling chain: interval propagation makes the 2^32 box instant.
    let chain = build_chain(6);
    let radius = 1i64 << 32;
    let sols = enumerate_box(&chain, radius, &SolveOptions::default());
    println!("\n{}", chain);
    println!("solutions in [-2^32, 2^32]^6:");
    for s in &sols.solutions {
        println!("  {:?}", s);
    }

    // The 1156-solution family: a pinned product is counted through its
    // divisor pairs, not by scanning the box.
    let family = build_family_1156(12);
    let count = count_solutions(&family, 1 << 16, &SolveOptions::default());
    println!("\nsolutions of the padded 12-variable family in [-2^16, 2^16]^12: {}", count);
    println!("(= 1156 · 2^2: each idempotent padding variable doubles the count)");
}
