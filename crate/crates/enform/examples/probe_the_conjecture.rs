//! Probe the reformulated conjecture on concrete tuples.
//!
//! A tuple whose first coordinate exceeds 2^(2^(n-1)) must admit another
//! tuple satisfying all of its induced addition/multiplication relations
//! with a strictly larger coordinate — that is the reformulation. The
//! strict variant (growth in the first coordinate itself) is provably
//! false, but refuting it is non-constructive; probing shows both behave
//! identically on coordinate-symmetric relation sets.
//!
//! ```bash
//! cargo run -p enform --example probe_the_conjecture
//! ```

use enform::explorer::{probe, probe_escalating, Verdict};

fn main() {
    // |x1| = 1 is within the n = 2 bound (4): nothing to check.
    println!("probe (1, 2):    {:?}", probe(&[1, 2], 10, false).unwrap());

    // (5,) exceeds the n = 1 bound (2); its induced relation set is empty,
    // so the first larger value is a witness.
    println!("probe (5,):      {:?}", probe(&[5], 10, false).unwrap());

    // (5, 25) carries the relation x1·x1 = x2. The minimal-norm witness
    // satisfies it and grows in some coordinate.
    println!("probe (5, 25):   {:?}", probe(&[5, 25], 50, false).unwrap());
    println!("strict variant:  {:?}", probe(&[5, 25], 50, true).unwrap());

    // Escalating probes promote repeated exhaustion into a candidate.
    match probe_escalating(&[5, 25], &[30, 60, 120], false).unwrap() {
        Verdict::WitnessFound { witness, horizon } => {
            println!("escalation found {:?} at horizon {}", witness, horizon)
        }
        v => println!("escalation verdict: {:?}", v),
    }
}
