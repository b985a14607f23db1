//! The full quintic pipeline and the large-solution construction.
//!
//! ```bash
//! cargo run --release -p enform --example quintic_end_to_end
//! ```

use enform::gallery::{assemble_beyond_bound_witness, build_beyond_bound, worked_example};

fn main() {
    // x1^5 - x1 = x2^2 - x2, solved end to end: lower to 7 variables,
    // apply the 2^64 cap to the quintic's value variable, scan the finite
    // range, and test for squares.
    let report = worked_example(4);
    println!("{}", report.equation);
    println!(
        "lowered to n = {}, bound {} = {}",
        report.n, report.bound, report.bound_value
    );
    println!(
        "scan range: {} < x1 < {}",
        report.x1_greater_than, report.x1_less_than
    );
    println!("all integer solutions:");
    for (a, b) in &report.solutions {
        println!("  ({}, {})", a, b);
    }

    // The 21-variable system at desk scale: every integer solution is
    // enormous, and an exact witness is assembled from the Pell
    // fundamental solution plus a divisibility witness.
    let t = build_beyond_bound(2);
    println!("\n21-variable construction at base {} (modulus {}):", t.base, t.modulus);
    let witness = assemble_beyond_bound_witness(&t);
    println!("  witness valid: {}", t.system.check_solution(&witness).unwrap());
    println!("  x11 = {} ({} digits)", witness[10], witness[10].to_string().len());
}
