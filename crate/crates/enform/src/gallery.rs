//! Explicit constructions: the doubling chain, the 1156-solution family,
//! the 21-variable Pell system, and the quintic worked example.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::bounds::conjecture_bound;
use crate::ensys::{EnEquation, EnSystem};
use crate::lower::lower_compact;
use crate::pell::{isqrt_u128, pell_fundamental, witness_modulus};
use crate::poly::parse_equation;
use crate::transforms::divisibility_witness;

/// The doubling chain over `n ≥ 2` variables:
///
/// ```text
/// x1 + x1 = x2,  x1 · x1 = x2,  x2 · x2 = x3,  ...,  x_{n-1} · x_{n-1} = x_n
/// ```
///
/// It has precisely two integer solutions, the zero tuple and
/// `(2, 4, 16, ..., 2^(2^(n-1)))` — the witness that the conjectural cap
/// cannot be lowered.
pub fn build_chain(n: usize) -> EnSystem {
    assert!(n >= 2);
    let mut sys = EnSystem::new(n);
    sys.insert(EnEquation::add(1, 1, 2)).unwrap();
    sys.insert(EnEquation::mul(1, 1, 2)).unwrap();
    for i in 2..n {
        sys.insert(EnEquation::mul(i, i, i + 1)).unwrap();
    }
    sys
}

/// The expected non-zero chain solution.
pub fn chain_solution(n: usize) -> Vec<BigInt> {
    assert!(n >= 2);
    let mut out = vec![BigInt::from(2)];
    for i in 1..n {
        // x_{i+1} = 2^(2^i)
        out.push(BigInt::one() << (1u64 << i));
    }
    debug_assert_eq!(out[1], BigInt::from(4));
    out
}

/// The `n ≥ 10`-variable family with exactly `1156 · 2^(n-10)` integer
/// solutions: a doubling chain pins `x6 = 2^16`, two free factorizations
/// of `x6` contribute `(17 + 17)² = 1156`, and each idempotent padding
/// variable `x_i · x_i = x_i` doubles the count.
pub fn build_family_1156(n: usize) -> EnSystem {
    assert!(n >= 10);
    let mut sys = EnSystem::new(n);
    sys.insert(EnEquation::one(1)).unwrap();
    sys.insert(EnEquation::add(1, 1, 2)).unwrap();
    for i in 2..=5 {
        sys.insert(EnEquation::mul(i, i, i + 1)).unwrap();
    }
    sys.insert(EnEquation::mul(7, 8, 6)).unwrap();
    sys.insert(EnEquation::mul(9, 10, 6)).unwrap();
    for i in 11..=n {
        sys.insert(EnEquation::mul(i, i, i)).unwrap();
    }
    sys
}

/// The 21-variable, 19-equation system whose integer solutions are all
/// enormous, parameterized by the depth of its squaring chain.
#[derive(Debug, Clone, Serialize)]
pub struct BeyondBoundSystem {
    pub system: EnSystem,
    /// Number of squarings between `x2 = 2` and the base variable `x6`.
    pub depth: u32,
    /// `2^(2^depth)`: 16 at depth 2, 65536 at depth 4 (the published
    /// construction).
    pub base: u64,
    /// The Pell modulus `base³ · (2 + base)`.
    #[serde(serialize_with = "ser_u128")]
    pub modulus: u128,
}

fn ser_u128<S: serde::Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Build the construction at squaring depth 2..=4. Depth 4 reproduces the
/// published base `2^16`; smaller depths give desk-scale analogs (base 16
/// at depth 2). A shorter chain is padded with idempotent equations so
/// the system always has 21 variables and 19 equations.
pub fn build_beyond_bound(depth: u32) -> BeyondBoundSystem {
    assert!((2..=4).contains(&depth));
    let base: u64 = 1 << (1u32 << depth);
    let modulus = witness_modulus(base);
    let mut sys = EnSystem::new(21);
    let mut eqs: Vec<EnEquation> = vec![EnEquation::one(1), EnEquation::add(1, 1, 2)];
    // Squaring chain from x2 toward the base variable x6, shortened at
    // small depth; skipped chain slots become idempotent padding.
    let chain_vars: &[usize] = match depth {
        2 => &[2, 3, 6],
        3 => &[2, 3, 4, 6],
        _ => &[2, 3, 4, 5, 6],
    };
    for w in chain_vars.windows(2) {
        eqs.push(EnEquation::mul(w[0], w[0], w[1]));
    }
    for pad in chain_vars[chain_vars.len() - 2] + 1..6 {
        eqs.push(EnEquation::mul(pad, pad, pad));
    }
    eqs.extend([
        EnEquation::mul(6, 6, 7),
        EnEquation::mul(6, 7, 8),
        EnEquation::add(2, 6, 9),
        EnEquation::mul(8, 9, 10),
        EnEquation::mul(11, 11, 12),
        EnEquation::mul(10, 12, 13),
        EnEquation::add(1, 13, 14),
        EnEquation::mul(15, 15, 14),
        // The closing block, equivalent to x21 · x11² = (2·x16 - 1)(3·x16 - 1).
        EnEquation::add(16, 16, 17),
        EnEquation::add(1, 18, 17),
        EnEquation::add(16, 18, 19),
        EnEquation::mul(18, 19, 20),
        EnEquation::mul(12, 21, 20),
    ]);
    for eq in eqs {
        sys.insert(eq).unwrap();
    }
    assert_eq!(sys.len(), 19);
    BeyondBoundSystem {
        system: sys,
        depth,
        base,
        modulus,
    }
}

/// Assemble an exact integer solution of the 21-variable system from the
/// fundamental Pell solution of its modulus and a divisibility witness:
/// `x11 = Y`, `x15 = X` with `X² = 1 + d·Y²`, then `x16, x21` from
/// `x21 · Y² = (2·x16 - 1)(3·x16 - 1)`. All arithmetic is exact; at full
/// depth the values run to about a million bits.
pub fn assemble_beyond_bound_witness(t: &BeyondBoundSystem) -> Vec<BigInt> {
    let b = BigInt::from(t.base);
    let (x, y) = pell_fundamental(t.modulus).expect("modulus is never square");
    let y_sq = &y * &y;
    let (a, bb) = divisibility_witness(&y_sq).expect("y is positive");

    let mut vals = vec![BigInt::one(); 21];
    let set = |vals: &mut Vec<BigInt>, i: usize, v: BigInt| vals[i - 1] = v;
    set(&mut vals, 1, BigInt::one());
    set(&mut vals, 2, BigInt::from(2));
    // Chain values; padding slots (idempotent) sit at 0.
    let chain_vars: &[usize] = match t.depth {
        2 => &[2, 3, 6],
        3 => &[2, 3, 4, 6],
        _ => &[2, 3, 4, 5, 6],
    };
    let mut v = BigInt::from(2);
    for &var in &chain_vars[1..] {
        v = &v * &v;
        set(&mut vals, var, v.clone());
    }
    for pad in chain_vars[chain_vars.len() - 2] + 1..6 {
        set(&mut vals, pad, BigInt::from(0));
    }
    debug_assert_eq!(vals[5], b);
    set(&mut vals, 7, &b * &b);
    set(&mut vals, 8, &b * &b * &b);
    set(&mut vals, 9, &b + 2);
    set(&mut vals, 10, BigInt::from(t.modulus));
    set(&mut vals, 11, y.clone());
    set(&mut vals, 12, y_sq.clone());
    set(&mut vals, 13, BigInt::from(t.modulus) * &y_sq);
    set(&mut vals, 14, BigInt::from(t.modulus) * &y_sq + 1);
    set(&mut vals, 15, x);
    set(&mut vals, 16, bb.clone());
    set(&mut vals, 17, &bb * 2);
    set(&mut vals, 18, &bb * 2 - 1);
    set(&mut vals, 19, &bb * 3 - 1);
    set(&mut vals, 20, (&bb * 2 - 1) * (&bb * 3 - 1));
    set(&mut vals, 21, a);
    vals
}

/// Report of the full quintic pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct WorkedExampleReport {
    pub equation: String,
    /// Variable count of the compact lowering.
    pub n: usize,
    /// The conjectural cap applied to the quintic's value variable.
    pub bound: String,
    pub bound_value: String,
    /// The scan covers the open interval (x1_greater_than, x1_less_than).
    pub x1_greater_than: i64,
    pub x1_less_than: i64,
    pub solutions: Vec<(i64, i64)>,
}

/// Solve `x1^5 - x1 = x2^2 - x2` end to end: compact-lower it (7
/// variables), apply the `n = 7` cap `2^64` to the value variable
/// `x5 = x1^5`, combine with the analytic lower bound, and scan the
/// resulting finite range testing `4·x1^5 - 4·x1 + 1` for squareness.
pub fn worked_example(threads: usize) -> WorkedExampleReport {
    let eq = parse_equation("x1^5 - x1 = x2^2 - x2").expect("fixed text parses");
    let map = lower_compact(&eq);
    let n = map.target.n();
    debug_assert_eq!(n, 7);
    let bound = conjecture_bound(n);
    let bound_value = bound
        .value_capped(1 << 10)
        .expect("2^64 materializes easily");

    // |x1^5| ≤ 2^64 caps x1 above by ⌊(2^64)^(1/5)⌋.
    let x1_max: i64 = bound_value
        .nth_root(5)
        .try_into()
        .expect("fifth root of 2^64 is tiny");
    // x2² - x2 ≥ -1/4 for every integer x2, so x1^5 - x1 ≥ -1/4, which
    // forces x1 > -2 (at x1 ≤ -2 the quintic side is at most -30).
    let x1_min: i64 = -1;

    let scan = |range: std::ops::RangeInclusive<i64>| -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for x1 in range {
            let x = x1 as i128;
            let v = 4 * x * x * x * x * x - 4 * x + 1;
            if v < 0 {
                continue;
            }
            let r = isqrt_u128(v as u128);
            if r * r == v as u128 {
                // 4·x1^5 - 4·x1 + 1 = (2·x2 - 1)² gives x2 = (1 ± r) / 2.
                let r = r as i64;
                out.push((x1, (1 - r) / 2));
                out.push((x1, (1 + r) / 2));
            }
        }
        out
    };

    let threads = threads.max(1);
    let total = (x1_max - x1_min + 1) as usize;
    let mut solutions: Vec<(i64, i64)> = if threads <= 1 || total < 2 {
        scan(x1_min..=x1_max)
    } else {
        let chunk = total.div_ceil(threads) as i64;
        let ranges: Vec<std::ops::RangeInclusive<i64>> = (0..threads as i64)
            .map(|w| {
                let lo = x1_min + w * chunk;
                let hi = (lo + chunk - 1).min(x1_max);
                lo..=hi
            })
            .filter(|r| r.start() <= r.end())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| scope.spawn(move || scan(r)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().unwrap())
                .collect()
        })
    };
    solutions.sort_unstable();
    solutions.dedup();

    WorkedExampleReport {
        equation: eq.to_string(),
        n,
        bound: bound.to_string(),
        bound_value: BigUint::to_string(&bound_value),
        x1_greater_than: -2,
        x1_less_than: x1_max + 1,
        solutions,
    }
}

/// The twelve known integer solutions of the quintic worked example.
pub fn worked_example_expected() -> Vec<(i64, i64)> {
    vec![
        (-1, 0),
        (-1, 1),
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
        (2, -5),
        (2, 6),
        (3, -15),
        (3, 16),
        (30, -4929),
        (30, 4930),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensys::{count_solutions, enumerate_box, SolveOptions};

    #[test]
    fn chain_has_exactly_two_solutions() {
        for n in 2..=5usize {
            let sys = build_chain(n);
            let radius = 1i64 << (1 << (n - 1)).min(40);
            let sols = enumerate_box(&sys, radius, &SolveOptions::default());
            let top: Vec<i64> = chain_solution(n)
                .iter()
                .map(|v| i64::try_from(v).unwrap())
                .collect();
            assert_eq!(sols.solutions, vec![vec![0; n], top], "n = {n}");
        }
    }

    #[test]
    fn chain_top_value_is_the_bound() {
        // Top coordinate 2^(2^(n-1)) meets the conjectural cap exactly.
        for n in 2..=6usize {
            let top = chain_solution(n).pop().unwrap();
            let bound = conjecture_bound(n);
            assert!(bound.admits(&top), "n = {n}");
            assert!(!bound.admits(&(top + 1)), "n = {n}");
        }
    }

    #[test]
    fn family_count_is_1156_at_n10() {
        let sys = build_family_1156(10);
        let count = count_solutions(&sys, 1 << 16, &SolveOptions::default());
        assert_eq!(count, BigUint::from(1156u32));
    }

    #[test]
    fn family_padding_doubles_the_count() {
        for n in 10..=14usize {
            let sys = build_family_1156(n);
            let count = count_solutions(&sys, 1 << 16, &SolveOptions::default());
            let expected = 1156u64 << (n - 10);
            assert_eq!(count, BigUint::from(expected), "n = {n}");
        }
    }

    #[test]
    fn family_pins_x6() {
        let sys = build_family_1156(10);
        let sols = enumerate_box(&sys, 1 << 16, &SolveOptions::default());
        assert_eq!(sols.solutions.len(), 1156);
        for s in &sols.solutions {
            assert_eq!(s[5], 65536, "x6 must be 2^16");
        }
    }

    #[test]
    fn beyond_bound_shapes() {
        for depth in 2..=4u32 {
            let t = build_beyond_bound(depth);
            assert_eq!(t.system.n(), 21);
            assert_eq!(t.system.len(), 19);
        }
        assert_eq!(build_beyond_bound(2).base, 16);
        assert_eq!(build_beyond_bound(2).modulus, 73_728);
        assert_eq!(build_beyond_bound(4).base, 65_536);
        assert_eq!(build_beyond_bound(4).modulus, 65_536u128.pow(3) * 65_538);
    }

    #[test]
    fn beyond_bound_witness_solves_depth2() {
        let t = build_beyond_bound(2);
        let witness = assemble_beyond_bound_witness(&t);
        assert!(t.system.check_solution(&witness).unwrap());
        // Witness floor: |x11| ≥ 16 + 16^14, exactly.
        let floor = BigInt::from(16) + BigInt::from(16).pow(14);
        assert!(witness[10] >= floor);
        // |x12| = x11² exceeds the squared floor.
        assert_eq!(witness[11], &witness[10] * &witness[10]);
        assert!(witness[11] >= &floor * &floor);
    }

    #[test]
    fn beyond_bound_witness_solves_depth3() {
        let t = build_beyond_bound(3);
        let witness = assemble_beyond_bound_witness(&t);
        assert!(t.system.check_solution(&witness).unwrap());
    }

    #[test]
    fn worked_example_matches_known_solutions() {
        let report = worked_example(1);
        assert_eq!(report.n, 7);
        assert_eq!(report.bound, "2^(2^6)");
        assert_eq!(report.bound_value, "18446744073709551616");
        assert_eq!(report.x1_greater_than, -2);
        assert_eq!(report.x1_less_than, 7132);
        assert_eq!(report.solutions, worked_example_expected());
    }

    #[test]
    fn worked_example_parallel_identical() {
        let a = worked_example(1);
        let b = worked_example(4);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn worked_example_square_root_at_thirty() {
        let v: i128 = 4 * 30i128.pow(5) - 4 * 30 + 1;
        let r = isqrt_u128(v as u128);
        assert_eq!(r, 9859);
        assert_eq!((1 - 9859) / 2, -4929);
        assert_eq!((1 + 9859) / 2, 4930);
    }
}
