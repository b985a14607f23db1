//! Survey every two-variable system (up to symmetry) and classify it.
//!
//! ```bash
//! cargo run --release -p enform --example survey_small_systems
//! ```

use enform::explorer::{survey, SurveyOptions, SurveyStatus};

fn main() {
    // Classify inside the materialized bound (4) and a growth box.
    let out = survey(2, 4, 10_000, &SurveyOptions::default()).unwrap();
    let count = |status: SurveyStatus| out.iter().filter(|c| c.status == status).count();
    println!("canonical systems at n = 2: {}", out.len());
    println!("  finite within bound:  {}", count(SurveyStatus::FiniteWithinBound));
    println!("  growing families:     {}", count(SurveyStatus::GrowingFamily));
    println!("  beyond-bound:         {}", count(SurveyStatus::SolutionBeyondBound));

    // The tightness witness: the doubling pair with max norm exactly 4.
    let tight = out
        .iter()
        .filter(|c| c.max_norm_seen == Some(4))
        .min_by_key(|c| c.system.len())
        .unwrap();
    println!("\nsmallest system attaining the bound:");
    print!("{}", tight.system);
    println!(
        "status {:?}, {} solutions, max |coordinate| = {}",
        tight.status,
        tight.count_growth,
        tight.max_norm_seen.unwrap()
    );
}
