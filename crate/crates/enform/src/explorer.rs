//! Probes, surveys, and the bounded semi-algorithm.
//!
//! The conjectured cap on finite solution sets is equivalent to a purely
//! universal statement: whenever a tuple's first coordinate exceeds
//! `2^(2^(n-1))`, some tuple satisfying the same induced addition and
//! multiplication relations must exceed it in some coordinate (in the
//! false strengthened form: in the first coordinate). [`probe`] tests
//! exactly that on concrete tuples; [`survey`] classifies the whole space
//! of small systems by solving them at two horizons; and
//! [`semi_algorithm`] runs the shell-by-shell search that terminates
//! exactly on equations with infinitely many solutions — faithfully
//! starting at `bound(D) + 1`, which is almost never materializable, with
//! an explicit override for desk-scale demonstration.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{bound_d, bound_nonneg, conjecture_bound, within, BoundsError};
use crate::ensys::{
    all_equations, canonical_form, enumerate_box, induced_system_ints, solve_stats, EnEquation,
    EnSystem, SolveOptions,
};
use crate::poly::Polynomial;
use crate::rng::SplitMix64;
use crate::transforms::hat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExplorerError {
    #[error("horizon {horizon} must exceed max|x_i| = {max_abs}")]
    HorizonTooSmall { horizon: i64, max_abs: i64 },
    #[error("exhaustive survey is limited to n ≤ 3, got n = {0}")]
    SurveyTooLarge(usize),
    #[error("probe search hit the enumeration limit before deciding")]
    SearchTruncated,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Outcome of probing a tuple against the reformulated conjecture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// `|x₁|` does not exceed the conjectural bound; nothing to check.
    Vacuous,
    /// A tuple satisfying all induced relations and the growth condition.
    WitnessFound { witness: Vec<i64>, horizon: i64 },
    /// No witness up to the horizon — evidence against the statement that
    /// survived every horizon of an escalating probe.
    CandidateCounterexample { horizon: i64 },
    /// No witness up to this horizon; larger horizons may still succeed.
    Exhausted { horizon: i64 },
}

/// Probe the reformulation at `x`: if `|x₁|` exceeds `2^(2^(n-1))`,
/// search `[-horizon, horizon]^n` for a tuple `y` satisfying every
/// induced addition/multiplication relation of `x` with some
/// `|y_i| > |x₁|` (strict mode: `|y₁| > |x₁|`, the strengthened and
/// provably false variant).
///
/// The witness returned is the one with the smallest max-norm, breaking
/// ties toward non-negative coordinates.
pub fn probe(x: &[i64], horizon: i64, strict: bool) -> Result<Verdict, ExplorerError> {
    assert!(!x.is_empty());
    let n = x.len();
    let max_abs = x.iter().map(|v| v.abs()).max().unwrap();
    if horizon <= max_abs {
        return Err(ExplorerError::HorizonTooSmall { horizon, max_abs });
    }
    let x1_abs = x[0].abs();
    if within(&BigInt::from(x[0]), &conjecture_bound(n)) {
        return Ok(Verdict::Vacuous);
    }

    // The reformulation quantifies only the Add/Mul relations; the
    // one-equations were eliminated beforehand.
    let mut relations = EnSystem::new(n);
    for eq in induced_system_ints(x).equations() {
        if !matches!(eq, EnEquation::One(_)) {
            relations.insert(*eq).unwrap();
        }
    }

    let sols = enumerate_box(&relations, horizon, &SolveOptions::default());
    if sols.truncated {
        return Err(ExplorerError::SearchTruncated);
    }
    let mut candidates: Vec<&Vec<i64>> = sols.solutions.iter().collect();
    candidates.sort_by_key(|s| {
        let norm = s.iter().map(|v| v.abs()).max().unwrap_or(0);
        let keys: Vec<i64> = s.iter().map(|&v| value_scan_key(v)).collect();
        (norm, keys)
    });
    for y in candidates {
        let grows = if strict {
            y[0].abs() > x1_abs
        } else {
            y.iter().any(|v| v.abs() > x1_abs)
        };
        if grows {
            debug_assert!(relations.check_solution_ints(y).unwrap());
            return Ok(Verdict::WitnessFound {
                witness: y.clone(),
                horizon,
            });
        }
    }
    Ok(Verdict::Exhausted { horizon })
}

/// Probe at each horizon in turn; a tuple that defeats every horizon is
/// reported as a candidate counterexample.
pub fn probe_escalating(x: &[i64], horizons: &[i64], strict: bool) -> Result<Verdict, ExplorerError> {
    assert!(!horizons.is_empty());
    let mut last = 0;
    for &h in horizons {
        match probe(x, h, strict)? {
            Verdict::Exhausted { horizon } => last = horizon,
            found => return Ok(found),
        }
    }
    Ok(Verdict::CandidateCounterexample { horizon: last })
}

/// Scan order for witnesses within a shell: 0, 1, -1, 2, -2, ...
fn value_scan_key(v: i64) -> i64 {
    if v >= 0 {
        2 * v
    } else {
        -2 * v + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurveyStatus {
    /// Every solution in the growth box lies within the conjectural bound.
    FiniteWithinBound,
    /// The solution count strictly increases between the two horizons.
    GrowingFamily,
    /// A solution exceeds the bound without detected growth — flagged for
    /// manual study.
    SolutionBeyondBound,
    /// The evidence was inconclusive (not produced by the current
    /// two-horizon heuristic, kept for forward compatibility of reports).
    Unknown,
}

/// Evidence-backed classification of one canonical system.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub system: EnSystem,
    pub status: SurveyStatus,
    pub max_norm_seen: Option<i64>,
    /// Solution count within the classification box (conjectural bound).
    #[serde(serialize_with = "crate::explorer::ser_biguint")]
    pub count_classify: BigUint,
    /// Solution count within the growth box.
    #[serde(serialize_with = "crate::explorer::ser_biguint")]
    pub count_growth: BigUint,
}

pub(crate) fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone)]
pub struct SurveyOptions {
    /// Sample size for `n = 3` (exhaustive enumeration is out of reach).
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            samples: 200,
            seed: 0,
            threads: 1,
        }
    }
}

/// Classify small systems: exhaustive up to canonical equivalence for
/// `n ≤ 2`, seeded uniform subset sampling for `n = 3`. Each system is
/// solved within `b_classify` (normally the materialized conjectural
/// bound) and within `b_growth`, and classified from the two counts and
/// the largest solution coordinate seen.
pub fn survey(
    n: usize,
    b_classify: i64,
    b_growth: i64,
    opts: &SurveyOptions,
) -> Result<Vec<Classification>, ExplorerError> {
    if n == 0 || n > 3 {
        return Err(ExplorerError::SurveyTooLarge(n));
    }
    let systems: Vec<EnSystem> = if n <= 2 {
        canonical_subsets(n)
    } else {
        sampled_systems(n, opts.samples, opts.seed)
    };

    let classify_one = |sys: &EnSystem| -> Classification {
        let solve_opts = SolveOptions::default();
        let at_classify = solve_stats(sys, b_classify, &solve_opts);
        let at_growth = solve_stats(sys, b_growth, &solve_opts);
        debug_assert!(at_growth.count >= at_classify.count);
        let bound = conjecture_bound(n);
        let within_bound = match at_growth.max_norm {
            None => true, // no solutions at all
            Some(m) => within(&BigInt::from(m), &bound),
        };
        let status = if at_growth.count > at_classify.count {
            SurveyStatus::GrowingFamily
        } else if within_bound {
            SurveyStatus::FiniteWithinBound
        } else {
            SurveyStatus::SolutionBeyondBound
        };
        Classification {
            system: sys.clone(),
            status,
            max_norm_seen: at_growth.max_norm,
            count_classify: at_classify.count,
            count_growth: at_growth.count,
        }
    };

    let threads = opts.threads.max(1).min(systems.len().max(1));
    let out: Vec<Classification> = if threads <= 1 {
        systems.iter().map(classify_one).collect()
    } else {
        let chunk = systems.len().div_ceil(threads);
        let chunks: Vec<&[EnSystem]> = systems.chunks(chunk).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|&c| scope.spawn(move || c.iter().map(classify_one).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().unwrap())
                .collect()
        })
    };
    Ok(out)
}

/// All subsets of `E_n` up to canonical equivalence, in a stable order.
fn canonical_subsets(n: usize) -> Vec<EnSystem> {
    let eqs = all_equations(n);
    assert!(eqs.len() <= 20, "subset enumeration limited to tiny n");
    let mut seen: BTreeMap<Vec<EnEquation>, EnSystem> = BTreeMap::new();
    for mask in 0u32..(1 << eqs.len()) {
        let subset = eqs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, eq)| *eq);
        let sys = EnSystem::from_equations(n, subset).unwrap();
        let (canon, _) = canonical_form(&sys).expect("n is tiny");
        seen.entry(canon.sorted_equations()).or_insert(canon);
    }
    seen.into_values().collect()
}

/// Seeded uniform sampling over subsets of `E_n`, deduplicated by
/// canonical form and sorted for stable output.
pub fn sampled_systems(n: usize, samples: usize, seed: u64) -> Vec<EnSystem> {
    let eqs = all_equations(n);
    let mut rng = SplitMix64::new(seed);
    let mut seen: BTreeMap<Vec<EnEquation>, EnSystem> = BTreeMap::new();
    for _ in 0..samples {
        let subset: Vec<EnEquation> = eqs.iter().filter(|_| rng.chance(1, 2)).copied().collect();
        let sys = EnSystem::from_equations(n, subset).unwrap();
        let (canon, _) = canonical_form(&sys).expect("n ≤ 8");
        seen.entry(canon.sorted_equations()).or_insert(canon);
    }
    seen.into_values().collect()
}

/// Random systems for property suites (uniform subsets of `E_n`, not
/// deduplicated).
pub fn random_systems(n: usize, count: usize, seed: u64) -> Vec<EnSystem> {
    let eqs = all_equations(n);
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let subset: Vec<EnEquation> =
                eqs.iter().filter(|_| rng.chance(1, 2)).copied().collect();
            EnSystem::from_equations(n, subset).unwrap()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchDomain {
    Integers,
    NonNegative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StartPoint {
    /// The loop can actually start here.
    Materialized { alpha: i64 },
    /// `bound + 1` in canonical tower notation; enumeration refused.
    Symbolic { expression: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SemiOutcome {
    /// First shell containing a solution, with the first witness found.
    FoundAtShell { alpha: i64, witness: Vec<i64> },
    /// No solution in any shell up to the cutoff.
    ExhaustedAtCutoff { cutoff: i64 },
    /// The faithful start `bound(D) + 1` cannot be materialized.
    RefusedSymbolicStart,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemiReport {
    pub equation: String,
    pub domain: SearchDomain,
    pub start: StartPoint,
    pub outcome: SemiOutcome,
    pub shells_scanned: u64,
}

/// The shell-by-shell semi-algorithm: starting at `bound(D) + 1` (or
/// `bound(D̂) + 1` over non-negative integers), scan tuples of max-norm
/// exactly `α`, incrementing `α` until a solution appears. Terminates
/// exactly when the equation has infinitely many solutions — assuming the
/// conjecture. Without `override_start` the faithful start is reported in
/// canonical tower notation and enumeration is refused; with it, the loop
/// runs up to `cutoff`.
pub fn semi_algorithm(
    d: &Polynomial,
    domain: SearchDomain,
    override_start: Option<i64>,
    cutoff: i64,
) -> Result<SemiReport, ExplorerError> {
    let equation = format!("{} = 0", d);
    let start = match override_start {
        Some(alpha) => StartPoint::Materialized { alpha },
        None => {
            let bound = match domain {
                SearchDomain::Integers => bound_d(d)?,
                SearchDomain::NonNegative => bound_nonneg(d)?,
            };
            return Ok(SemiReport {
                equation,
                domain,
                start: StartPoint::Symbolic {
                    expression: format!("{}+1", bound),
                },
                outcome: SemiOutcome::RefusedSymbolicStart,
                shells_scanned: 0,
            });
        }
    };
    let alpha0 = match start {
        StartPoint::Materialized { alpha } => alpha,
        _ => unreachable!(),
    };
    assert!(cutoff >= alpha0, "cutoff must be at least the start");
    let p = d.num_vars();
    let mut shells = 0u64;
    for alpha in alpha0..=cutoff {
        shells += 1;
        if let Some(witness) = scan_shell(d, p, alpha, domain) {
            return Ok(SemiReport {
                equation,
                domain,
                start,
                outcome: SemiOutcome::FoundAtShell { alpha, witness },
                shells_scanned: shells,
            });
        }
    }
    Ok(SemiReport {
        equation,
        domain,
        start,
        outcome: SemiOutcome::ExhaustedAtCutoff { cutoff },
        shells_scanned: shells,
    })
}

/// First zero of `d` on the shell of max-norm exactly `alpha`, scanning
/// coordinates in the order 0, 1, -1, 2, -2, ... (non-negative tuples
/// only in the non-negative domain).
fn scan_shell(d: &Polynomial, p: usize, alpha: i64, domain: SearchDomain) -> Option<Vec<i64>> {
    let values: Vec<i64> = match domain {
        SearchDomain::Integers => {
            let mut v: Vec<i64> = (-alpha..=alpha).collect();
            v.sort_by_key(|&x| value_scan_key(x));
            v
        }
        SearchDomain::NonNegative => (0..=alpha).collect(),
    };
    let mut point = vec![0usize; p]; // indices into `values`
    let mut out: Option<Vec<i64>> = None;
    let mut visit = |tuple: &[i64]| -> ControlFlow<()> {
        if tuple.iter().map(|v| v.abs()).max() != Some(alpha) {
            return ControlFlow::Continue(());
        }
        let big: Vec<BigInt> = tuple.iter().map(|&v| BigInt::from(v)).collect();
        if d.evaluate(&big).expect("arity matches").is_zero() {
            out = Some(tuple.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    };
    // Odometer over `values^p` in scan order.
    'outer: loop {
        let tuple: Vec<i64> = point.iter().map(|&i| values[i]).collect();
        if visit(&tuple).is_break() {
            break;
        }
        let mut d_pos = p;
        loop {
            if d_pos == 0 {
                break 'outer;
            }
            d_pos -= 1;
            point[d_pos] += 1;
            if point[d_pos] < values.len() {
                break;
            }
            point[d_pos] = 0;
        }
    }
    out
}

/// Probe that the hat encoding preserves the semi-algorithm's domain
/// logic: the non-negative run of `D` matches the integer run of `D̂` on
/// projections (exposed for experimentation; not used by the pipelines).
pub fn hat_equivalent(d: &Polynomial) -> Polynomial {
    hat(d)
}
