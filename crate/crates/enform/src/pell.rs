//! Pell equations `X² - d·Y² = 1` by continued fractions, and the square
//! witness generators built on them.
//!
//! The fundamental solution comes from the continued-fraction expansion
//! of `√d` with exact integer convergents; every further solution comes
//! from the recurrence `(X, Y) → (X·X₀ + d·Y·Y₀, X·Y₀ + Y·X₀)`. The state
//! of the expansion stays machine-sized, but convergents grow without
//! bound — the moduli used by the 21-variable construction have
//! fundamental solutions with anywhere from hundreds of digits to around
//! a million bits, all handled exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PellError {
    #[error("d = {0} is a perfect square; X² - d·Y² = 1 degenerates")]
    PerfectSquare(u128),
    #[error("d = {0} is too small; need d ≥ 2")]
    TooSmall(u128),
    #[error("y = {y} is not a square witness for x = {x}: 1 + x³(2+x)y² is not a perfect square")]
    NotAWitness { x: u64, y: String },
}

pub fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|s| s > v) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= v) {
        r += 1;
    }
    r
}

/// The minimal solution `(X, Y)` with `X, Y > 0` of `X² - d·Y² = 1`.
///
/// Walks one period of the continued fraction of `√d`. The convergent
/// just before the period closes satisfies `h² - d·k² = (-1)^ℓ`; for odd
/// periods the `+1` solution is the square `(h² + d·k², 2hk)`. The loop
/// body costs one scalar-by-bigint multiply — the full-size identity is
/// evaluated only once at the end, which keeps moduli with million-bit
/// fundamental solutions tractable.
pub fn pell_fundamental(d: u128) -> Result<(BigInt, BigInt), PellError> {
    if d < 2 {
        return Err(PellError::TooSmall(d));
    }
    let a0 = isqrt_u128(d);
    if a0 * a0 == d {
        return Err(PellError::PerfectSquare(d));
    }

    // CF state: the k-th complete quotient is (√d + m) / den.
    let mut m: u128 = 0;
    let mut den: u128 = 1;
    let mut a: u128 = a0;
    let mut period_parity = false;

    // Convergents h/k, starting from a0/1.
    let mut h_prev = BigInt::one();
    let mut h = BigInt::from(a0);
    let mut k_prev = BigInt::zero();
    let mut k = BigInt::one();

    loop {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        if den == 1 {
            // `a` is the closing term 2·a0; (h, k) is the convergent
            // h_{ℓ-1}/k_{ℓ-1} with h² - d·k² = (-1)^ℓ.
            debug_assert_eq!(a, 2 * a0);
            break;
        }
        period_parity = !period_parity;
        let scalar = a as u64;
        let h_next = &h * scalar + &h_prev;
        let k_next = &k * scalar + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    let big_d = BigInt::from(d);
    // period length ℓ = (steps taken) + 1; parity flips per inner step.
    let odd_period = !period_parity;
    if odd_period {
        let x = &h * &h + &big_d * &k * &k;
        let y = BigInt::from(2) * &h * &k;
        debug_assert_eq!(&x * &x - &big_d * &y * &y, BigInt::one());
        Ok((x, y))
    } else {
        debug_assert_eq!(&h * &h - &big_d * &k * &k, BigInt::one());
        Ok((h, k))
    }
}

/// Iterator over all positive solutions of `X² - d·Y² = 1`, starting at
/// the fundamental one, via the standard recurrence
/// `(X, Y) → (X·X₀ + d·Y·Y₀, X·Y₀ + Y·X₀)`.
pub struct PellSolutions {
    d: BigInt,
    x0: BigInt,
    y0: BigInt,
    cur: Option<(BigInt, BigInt)>,
}

impl PellSolutions {
    pub fn new(d: u128) -> Result<Self, PellError> {
        let (x0, y0) = pell_fundamental(d)?;
        Ok(PellSolutions {
            d: BigInt::from(d),
            cur: Some((x0.clone(), y0.clone())),
            x0,
            y0,
        })
    }

    /// The `k`-th solution (1-based: `k = 1` is the fundamental one).
    pub fn nth_solution(d: u128, k: u64) -> Result<(BigInt, BigInt), PellError> {
        assert!(k >= 1);
        let mut it = Self::new(d)?;
        Ok(it.nth((k - 1) as usize).expect("infinite iterator"))
    }
}

impl Iterator for PellSolutions {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<(BigInt, BigInt)> {
        let (x, y) = self.cur.take()?;
        let next_x = &x * &self.x0 + &self.d * &y * &self.y0;
        let next_y = &x * &self.y0 + &y * &self.x0;
        self.cur = Some((next_x, next_y));
        Some((x, y))
    }
}

/// `x³(2+x)`, the Pell modulus of the square-witness family.
pub fn witness_modulus(x: u64) -> u128 {
    let x = x as u128;
    x * x * x * (2 + x)
}

/// The first `count` values `y ≥ 1` for which `1 + x³(2+x)·y²` is a
/// perfect square, strictly increasing. These are exactly the `Y`
/// coordinates of the Pell solutions for `d = x³(2+x)`.
pub fn square_witnesses(x: u64, count: usize) -> Result<Vec<BigInt>, PellError> {
    assert!(x >= 2);
    let d = witness_modulus(x);
    // x³(2+x) is never a perfect square for x ≥ 2; guard anyway.
    let r = isqrt_u128(d);
    assert_ne!(r * r, d, "witness modulus unexpectedly square");
    Ok(PellSolutions::new(d)?
        .take(count)
        .map(|(_, y)| y)
        .collect())
}

/// Is `1 + x³(2+x)·y²` a perfect square?
pub fn is_square_witness(x: u64, y: &BigInt) -> bool {
    if y.is_negative() {
        return false;
    }
    let d = BigInt::from(witness_modulus(x));
    let v = BigInt::one() + d * y * y;
    let r = v.sqrt();
    &r * &r == v
}

/// The witness floor check: every square witness satisfies
/// `y ≥ x + x^(x-2)`. Returns the exact comparison; a `false` return
/// would refute the floor and must be surfaced loudly by callers.
pub fn witness_floor_check(x: u64, y: &BigInt) -> Result<bool, PellError> {
    assert!(x >= 2);
    if !is_square_witness(x, y) {
        return Err(PellError::NotAWitness { x, y: y.to_string() });
    }
    let threshold = BigInt::from(x) + BigInt::from(x).pow(x as u32 - 2);
    Ok(*y >= threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_solutions_small() {
        assert_eq!(
            pell_fundamental(32).unwrap(),
            (BigInt::from(17), BigInt::from(3))
        );
        assert_eq!(
            pell_fundamental(3).unwrap(),
            (BigInt::from(2), BigInt::from(1))
        );
        assert_eq!(
            pell_fundamental(2).unwrap(),
            (BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(pell_fundamental(4).unwrap_err(), PellError::PerfectSquare(4));
        assert_eq!(pell_fundamental(1).unwrap_err(), PellError::TooSmall(1));
    }

    #[test]
    fn fundamental_is_minimal_for_small_d() {
        // Cross-check against a brute-force Y scan (capped: some d below
        // 200 have fundamental Y in the hundreds of millions).
        use num_traits::ToPrimitive;
        let cap: u128 = 1_000_000;
        for d in 2u128..=200 {
            let r = isqrt_u128(d);
            if r * r == d {
                continue;
            }
            let (x, y) = pell_fundamental(d).unwrap();
            assert_eq!(&x * &x - BigInt::from(d) * &y * &y, BigInt::one(), "d={d}");
            assert!(x.is_positive() && y.is_positive());
            let scan_to = y.to_u128().unwrap_or(u128::MAX).min(cap) - 1;
            for yy in 1..=scan_to {
                let v = 1 + d * yy * yy;
                let rr = isqrt_u128(v);
                assert_ne!(rr * rr, v, "smaller solution at d={d}, y={yy}");
            }
        }
    }

    #[test]
    fn recurrence_generates_successive_solutions() {
        let sols: Vec<_> = PellSolutions::new(32).unwrap().take(3).collect();
        assert_eq!(sols[0], (BigInt::from(17), BigInt::from(3)));
        assert_eq!(sols[1], (BigInt::from(577), BigInt::from(102)));
        for (x, y) in &sols {
            assert_eq!(x * x - BigInt::from(32) * y * y, BigInt::one());
        }
        assert_eq!(
            PellSolutions::nth_solution(32, 2).unwrap(),
            (BigInt::from(577), BigInt::from(102))
        );
    }

    #[test]
    fn first_square_witnesses_for_two() {
        assert_eq!(
            square_witnesses(2, 2).unwrap(),
            vec![BigInt::from(3), BigInt::from(102)]
        );
        assert_eq!(square_witnesses(2, 1).unwrap(), vec![BigInt::from(3)]);
        assert!(square_witnesses(5, 0).unwrap().is_empty());
    }

    #[test]
    fn witnesses_pass_square_predicate_and_increase() {
        for x in 2u64..=8 {
            let ws = square_witnesses(x, 3).unwrap();
            assert_eq!(ws.len(), 3);
            for w in &ws {
                assert!(is_square_witness(x, w), "x={x}, y={w}");
            }
            assert!(ws[0] < ws[1] && ws[1] < ws[2], "x={x}");
        }
    }

    #[test]
    fn witness_floor_equality_at_the_smallest_case() {
        // x = 2: threshold 2 + 2⁰ = 3, attained by y = 3.
        assert!(witness_floor_check(2, &BigInt::from(3)).unwrap());
        assert_eq!(
            BigInt::from(2) + BigInt::from(2).pow(0u32),
            BigInt::from(3)
        );
        assert!(witness_floor_check(2, &BigInt::from(102)).unwrap());
    }

    #[test]
    fn floor_holds_for_generated_witnesses() {
        for x in 2u64..=8 {
            for y in square_witnesses(x, 3).unwrap() {
                assert!(
                    witness_floor_check(x, &y).unwrap(),
                    "witness floor violated at x={x}, y={y} — refutation event"
                );
            }
        }
    }

    #[test]
    fn floor_check_rejects_non_witnesses() {
        assert_eq!(
            witness_floor_check(2, &BigInt::from(4)).unwrap_err(),
            PellError::NotAWitness {
                x: 2,
                y: "4".into()
            }
        );
    }

    #[test]
    fn witness_modulus_values() {
        assert_eq!(witness_modulus(2), 32);
        assert_eq!(witness_modulus(3), 135);
        assert_eq!(witness_modulus(16), 73_728);
        // The full-scale modulus exceeds u64 but fits u128 comfortably.
        assert_eq!(witness_modulus(65_536), (1u128 << 48) * 65_538);
    }

    #[test]
    fn depth_two_modulus_fundamental() {
        // d = 16³·18 = 73728; the fundamental Y must clear 16 + 16^14.
        let (x, y) = pell_fundamental(73_728).unwrap();
        assert_eq!(&x * &x - BigInt::from(73_728u32) * &y * &y, BigInt::one());
        let floor = BigInt::from(16) + BigInt::from(16).pow(14u32);
        assert!(y >= floor, "y = {y}");
    }
}
