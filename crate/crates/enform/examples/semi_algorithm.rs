//! The shell-by-shell semi-algorithm for "infinitely many solutions".
//!
//! Faithfully the loop starts at bound(D) + 1 — which essentially never
//! materializes, and the report says so honestly. With an override the
//! loop runs at desk scale and terminates on the first populated shell.
//!
//! ```bash
//! cargo run -p enform --example semi_algorithm
//! ```

use enform::explorer::{semi_algorithm, SearchDomain};
use enform::poly::parse_polynomial;

fn main() {
    // x1 = x2 has infinitely many solutions; the first shell at or after
    // the override start that contains one is found immediately.
    let d = parse_polynomial("x1 - x2").unwrap();
    let r = semi_algorithm(&d, SearchDomain::Integers, Some(3), 10).unwrap();
    println!("x1 = x2, start 3:       {:?}", r.outcome);

    // A solution-free equation scans every shell to the cutoff.
    let d = parse_polynomial("x1^2 + x2^2 + 1").unwrap();
    let r = semi_algorithm(&d, SearchDomain::Integers, Some(1), 25).unwrap();
    println!("x1² + x2² + 1 = 0:      {:?} ({} shells)", r.outcome, r.shells_scanned);

    // Without the override, the faithful start is reported symbolically.
    let d = parse_polynomial("x1 - 1").unwrap();
    let r = semi_algorithm(&d, SearchDomain::Integers, None, 0).unwrap();
    println!("x1 = 1, faithful start: {:?} at {:?}", r.outcome, r.start);

    // The non-negative variant scans non-negative shells only.
    let d = parse_polynomial("x1 + 2").unwrap();
    let r = semi_algorithm(&d, SearchDomain::NonNegative, Some(1), 5).unwrap();
    println!("x1 + 2 = 0 over ℕ:      {:?}", r.outcome);
}
