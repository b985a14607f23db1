//! Solution-set transforms and small witness finders.
//!
//! - [`tilde`]: eliminate `x_i = 1` equations; the transformed system has
//!   the same integer solutions plus the all-zero tuple.
//! - [`hat`]: sum-of-squares encoding that converts non-negative-integer
//!   solvability of `D = 0` into integer solvability of `D̂ = 0`; each
//!   original variable is forced equal to a sum of four squares.
//! - [`rationalize`]: substitute `x_m = y_m / z_m` in an `E_n` system and
//!   append the equations forcing `z_m ≥ 1` and `gcd(y_m, z_m) = 1`, so
//!   rational solutions of the system correspond to integer solutions of
//!   the output.
//! - [`four_square`], [`bezout_bounded`], [`divisibility_witness`]: constructive
//!   witnesses for the identities the transforms rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ensys::{EnEquation, EnSystem};
use crate::poly::{PolyEquation, Polynomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("input must be non-negative, got {0}")]
    NegativeInput(i64),
    #[error("inputs are not coprime: gcd = {0}")]
    NotCoprime(BigInt),
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("input must be non-zero")]
    ZeroInput,
}

/// Replace every equation `x_i = 1` by the `n` equations
/// `x_i · x_j = x_j` (j = 1..n). The integer solution set of the result is
/// the solution set of `S` together with the all-zero tuple.
pub fn tilde(sys: &EnSystem) -> EnSystem {
    let n = sys.n();
    let mut out = EnSystem::new(n);
    for eq in sys.equations() {
        match *eq {
            EnEquation::One(i) => {
                for j in 1..=n {
                    out.insert(EnEquation::mul(i, j, j)).unwrap();
                }
            }
            other => out.insert(other).unwrap(),
        }
    }
    out
}

/// `D̂` over `5p` variables: `D(x..)² + Σ_i (x_i - a_i² - b_i² - c_i² - d_i²)²`.
///
/// Variable layout: original `x_i` sits at index `5(i-1)+1`, followed by
/// its four square witnesses `a_i, b_i, c_i, d_i`. Integer zeros of `D̂`
/// project (on the `x_i` positions) exactly onto the non-negative zeros
/// of `D`.
pub fn hat(d: &Polynomial) -> Polynomial {
    let p = d.num_vars();
    let total = 5 * p;
    let mapping: Vec<usize> = (1..=p).map(hat_var_index).collect();
    let d_mapped = d.remap_vars(&mapping, total);
    let mut out = d_mapped.square();
    for i in 1..=p {
        let xi = Polynomial::var(hat_var_index(i), total);
        let mut block = xi;
        for off in 1..=4 {
            let w = Polynomial::var(hat_var_index(i) + off, total);
            block = block.sub(&w.square());
        }
        out = out.add(&block.square());
    }
    out
}

/// Index of original variable `i` inside the [`hat`] layout.
pub fn hat_var_index(i: usize) -> usize {
    5 * (i - 1) + 1
}

/// Variable layout of [`rationalize`]: 12 integer variables per original
/// variable `x_m`, in the fixed order `y, z, s, t, u, v, p, q, a, b, c, d`.
/// `offset` selects within the block (0 for `y_m`, 1 for `z_m`, ...).
pub fn rational_var_index(m: usize, offset: usize) -> usize {
    debug_assert!(offset < 12);
    12 * (m - 1) + offset + 1
}

/// Substitute `x_m = y_m / z_m` through the system and append, per
/// variable, the three auxiliary equations
///
/// ```text
/// 1 + s² + t² + u² + v² = z      (z ≥ 1)
/// p·y + q·z = 1                  (y, z coprime …)
/// p² + a² + b² + c² + d² = z²    (… with |p| ≤ z)
/// ```
///
/// over the 12n-variable layout of [`rational_var_index`]. Rational
/// solutions of `sys` correspond exactly to integer solutions of the
/// output, reading `x_m = y_m / z_m` in lowest terms with `z_m > 0`.
pub fn rationalize(sys: &EnSystem) -> Vec<PolyEquation> {
    let n = sys.n();
    let total = 12 * n;
    let var = |m: usize, off: usize| Polynomial::var(rational_var_index(m, off), total);
    let y = |m: usize| var(m, 0);
    let z = |m: usize| var(m, 1);

    let mut out = Vec::new();
    for eq in sys.equations() {
        match *eq {
            EnEquation::One(i) => out.push(PolyEquation::new(y(i), z(i))),
            EnEquation::Add(i, j, k) => {
                // y_i z_j z_k + y_j z_i z_k = y_k z_i z_j
                let lhs = y(i).mul(&z(j)).mul(&z(k)).add(&y(j).mul(&z(i)).mul(&z(k)));
                let rhs = y(k).mul(&z(i)).mul(&z(j));
                out.push(PolyEquation::new(lhs, rhs));
            }
            EnEquation::Mul(i, j, k) => {
                // (y_i z_j z_k) · (y_j z_i z_k) = y_k z_i z_j, kept verbatim
                // with the extra z factors.
                let lhs = y(i)
                    .mul(&z(j))
                    .mul(&z(k))
                    .mul(&y(j).mul(&z(i)).mul(&z(k)));
                let rhs = y(k).mul(&z(i)).mul(&z(j));
                out.push(PolyEquation::new(lhs, rhs));
            }
        }
    }
    let one = Polynomial::constant(BigInt::one(), total);
    for m in 1..=n {
        let sq_sum = |offs: &[usize]| {
            offs.iter()
                .fold(Polynomial::zero(total), |acc, &o| acc.add(&var(m, o).square()))
        };
        // 1 + s² + t² + u² + v² = z_m
        out.push(PolyEquation::new(one.add(&sq_sum(&[2, 3, 4, 5])), z(m)));
        // p·y_m + q·z_m = 1
        out.push(PolyEquation::new(
            var(m, 6).mul(&y(m)).add(&var(m, 7).mul(&z(m))),
            one.clone(),
        ));
        // p² + a² + b² + c² + d² = z_m²
        out.push(PolyEquation::new(
            sq_sum(&[6, 8, 9, 10, 11]),
            z(m).square(),
        ));
    }
    out
}

/// Lexicographically smallest `(a, b, c, d)` with non-negative components
/// and `a² + b² + c² + d² = m`.
pub fn four_square(m: i64) -> Result<(i64, i64, i64, i64), TransformError> {
    if m < 0 {
        return Err(TransformError::NegativeInput(m));
    }
    let isqrt = |v: i64| -> i64 {
        let mut r = (v as f64).sqrt() as i64;
        while r * r > v {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= v {
            r += 1;
        }
        r
    };
    for a in 0..=isqrt(m) {
        let ra = m - a * a;
        for b in 0..=isqrt(ra) {
            let rb = ra - b * b;
            for c in 0..=isqrt(rb) {
                let rc = rb - c * c;
                let d = isqrt(rc);
                if d * d == rc {
                    return Ok((a, b, c, d));
                }
            }
        }
    }
    unreachable!("every non-negative integer is a sum of four squares")
}

/// Bézout pair `(X, Y)` with `A·X + B·Y = 1` and `|X| ≤ B`, for coprime
/// `A` and `B > 0`. `X` is the representative of minimal absolute value
/// (positive on ties) of the extended-Euclid coefficient modulo `B`.
pub fn bezout_bounded(a: i64, b: i64) -> Result<(i64, i64), TransformError> {
    if b <= 0 {
        return Err(TransformError::NonPositiveModulus(b));
    }
    let big_a = BigInt::from(a);
    let big_b = BigInt::from(b);
    let ext = big_a.extended_gcd(&big_b);
    if !ext.gcd.is_one() {
        return Err(TransformError::NotCoprime(ext.gcd));
    }
    if b == 1 {
        return Ok((1, 1 - a));
    }
    let r: i64 = ext
        .x
        .mod_floor(&big_b)
        .try_into()
        .expect("residue fits the modulus");
    debug_assert!(r != 0, "coprime inputs have invertible residues");
    let x = if r <= b - r { r } else { r - b };
    let y = ((1i128 - a as i128 * x as i128) / b as i128) as i64;
    debug_assert_eq!(a as i128 * x as i128 + b as i128 * y as i128, 1);
    Ok((x, y))
}

/// Integers `(a, b)` with `a·x = (2b - 1)(3b - 1)` for non-zero `x`.
///
/// Writes `|x| = 2^α · u` with `u` odd and picks the least positive `b`
/// with `2b ≡ 1 (mod u)` and `3b ≡ 1 (mod 2^α)`; then `u` divides
/// `2b - 1`, `2^α` divides `3b - 1`, so `x` divides the product exactly.
/// The witness satisfies `1 ≤ b ≤ |x|`.
pub fn divisibility_witness(x: &BigInt) -> Result<(BigInt, BigInt), TransformError> {
    if x.is_zero() {
        return Err(TransformError::ZeroInput);
    }
    let m = x.abs();
    let mut u = m.clone();
    let mut alpha = 0u64;
    let two = BigInt::from(2);
    while u.is_even() {
        u /= &two;
        alpha += 1;
    }
    let pow2 = BigInt::one() << alpha;
    // b ≡ 2⁻¹ (mod u), b ≡ 3⁻¹ (mod 2^α); CRT over the coprime pair.
    let r_u = mod_inverse(&two, &u);
    let r_2 = mod_inverse(&BigInt::from(3), &pow2);
    let b = crt(&r_u, &u, &r_2, &pow2);
    let b = if b.is_zero() { m.clone() } else { b };
    let product: BigInt = (&b * 2 - 1) * (&b * 3 - 1);
    let (a, rem) = product.div_rem(x);
    debug_assert!(rem.is_zero());
    Ok((a, b))
}

/// Inverse of `a` modulo `m ≥ 1` (result in `0..m`; 0 when `m = 1`).
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let ext = a.mod_floor(m).extended_gcd(m);
    debug_assert!(ext.gcd.is_one());
    ext.x.mod_floor(m)
}

/// Least non-negative solution of `b ≡ r1 (mod m1)`, `b ≡ r2 (mod m2)`
/// for coprime moduli.
fn crt(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    // b = r1 + m1 * t with t ≡ (r2 - r1) / m1 (mod m2)
    let inv = mod_inverse(m1, m2);
    let t = ((r2 - r1) * inv).mod_floor(m2);
    (r1 + m1 * t).mod_floor(&(m1 * m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensys::{enumerate_box, SolveOptions};
    use crate::poly::solve_box;

    fn sols(sys: &EnSystem, radius: i64) -> Vec<Vec<i64>> {
        enumerate_box(sys, radius, &SolveOptions::default()).solutions
    }

    #[test]
    fn tilde_adds_exactly_the_zero_tuple() {
        // S = {x1 = 1} over two variables.
        let s = EnSystem::from_equations(2, vec![EnEquation::one(1)]).unwrap();
        let t = tilde(&s);
        let expected = EnSystem::from_equations(
            2,
            vec![EnEquation::mul(1, 1, 1), EnEquation::mul(1, 2, 2)],
        )
        .unwrap();
        assert_eq!(t, expected);
        let mut with_zero = sols(&s, 3);
        with_zero.push(vec![0, 0]);
        with_zero.sort();
        with_zero.dedup();
        assert_eq!(sols(&t, 3), with_zero);
    }

    #[test]
    fn tilde_noop_without_one_equations() {
        let s = EnSystem::from_equations(2, vec![EnEquation::add(1, 1, 2)]).unwrap();
        assert_eq!(tilde(&s), s);
    }

    #[test]
    fn tilde_single_variable() {
        let s = EnSystem::from_equations(1, vec![EnEquation::one(1)]).unwrap();
        let t = tilde(&s);
        assert_eq!(sols(&t, 3), vec![vec![0], vec![1]]);
    }

    #[test]
    fn hat_projects_to_nonnegative_zeros() {
        // D = x1 - 2: integer zeros of D̂ project to x1 = 2.
        let d = crate::poly::parse_polynomial("x1 - 2").unwrap();
        let h = hat(&d);
        assert_eq!(h.num_vars(), 5);
        let found = solve_box(std::slice::from_ref(&h), 5, 2, 100_000);
        assert!(!found.truncated);
        assert!(!found.solutions.is_empty());
        for s in &found.solutions {
            assert_eq!(s[0], 2);
        }
        // witness (2, 1, 1, 0, 0)
        assert!(found.solutions.iter().any(|s| s == &vec![2, 1, 1, 0, 0]));
    }

    #[test]
    fn hat_of_positive_polynomial_has_no_zeros() {
        // D = x1 + 1 needs x1 = -1 < 0, so D̂ has no integer zeros.
        let d = crate::poly::parse_polynomial("x1 + 1").unwrap();
        let h = hat(&d);
        let found = solve_box(&[h], 5, 4, 1000);
        assert!(found.solutions.is_empty());
    }

    #[test]
    fn hat_of_identity_projects_to_zero() {
        let d = crate::poly::parse_polynomial("x1").unwrap();
        let h = hat(&d);
        let found = solve_box(&[h], 5, 2, 1000);
        assert!(!found.solutions.is_empty());
        for s in &found.solutions {
            assert_eq!(s[0], 0);
        }
    }

    #[test]
    fn rationalize_one_equation() {
        let s = EnSystem::from_equations(1, vec![EnEquation::one(1)]).unwrap();
        let eqs = rationalize(&s);
        assert_eq!(eqs.len(), 1 + 3);
        let polys: Vec<Polynomial> = eqs.iter().map(|e| e.normalized.clone()).collect();
        let found = solve_box(&polys, 12, 3, 100_000);
        assert!(!found.truncated);
        assert!(!found.solutions.is_empty());
        for s in &found.solutions {
            let (y, z) = (s[0], s[1]);
            assert!(z >= 1);
            assert_eq!(y, z, "projection must be the rational 1");
        }
    }

    #[test]
    fn rationalize_idempotent_recovers_zero_and_one() {
        let s = EnSystem::from_equations(1, vec![EnEquation::mul(1, 1, 1)]).unwrap();
        let eqs = rationalize(&s);
        let polys: Vec<Polynomial> = eqs.iter().map(|e| e.normalized.clone()).collect();
        let found = solve_box(&polys, 12, 3, 100_000);
        let mut rationals: Vec<(i64, i64)> = found
            .solutions
            .iter()
            .map(|s| {
                let g = num_integer::gcd(s[0], s[1]).max(1);
                (s[0] / g, s[1] / g)
            })
            .collect();
        rationals.sort();
        rationals.dedup();
        assert_eq!(rationals, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn rationalize_empty_system_leaves_only_auxiliaries() {
        let s = EnSystem::new(1);
        let eqs = rationalize(&s);
        assert_eq!(eqs.len(), 3);
        let polys: Vec<Polynomial> = eqs.iter().map(|e| e.normalized.clone()).collect();
        let found = solve_box(&polys, 12, 2, 100_000);
        let mut projections: Vec<(i64, i64)> =
            found.solutions.iter().map(|s| (s[0], s[1])).collect();
        projections.sort();
        projections.dedup();
        assert!(projections.contains(&(1, 1)));
        assert!(projections.contains(&(-1, 1)));
        for (y, z) in projections {
            assert!(z >= 1);
            assert_eq!(num_integer::gcd(y, z), 1, "y={y}, z={z} not reduced");
        }
    }

    #[test]
    fn rationalize_round_trip_constructive() {
        // Forward: every rational solution y/z (|y|, |z| ≤ 4, lowest terms,
        // z ≥ 1) of the system extends to an integer solution of the
        // rationalized equations via four squares and a bounded Bézout
        // pair; backward: integer solutions found by search project onto
        // rationals that solve the system over ℚ.
        let systems = [
            EnSystem::from_equations(1, vec![EnEquation::one(1)]).unwrap(),
            EnSystem::from_equations(1, vec![EnEquation::mul(1, 1, 1)]).unwrap(),
            EnSystem::from_equations(1, vec![EnEquation::add(1, 1, 1)]).unwrap(),
        ];
        for sys in &systems {
            let eqs = rationalize(sys);
            for y in -4i64..=4 {
                for z in 1i64..=4 {
                    if num_integer::gcd(y, z) != 1 {
                        continue;
                    }
                    // Does y/z solve the one-variable system over ℚ?
                    let solves = sys.equations().all(|eq| match *eq {
                        EnEquation::One(_) => y == z,
                        EnEquation::Add(_, _, _) => y * z * z + y * z * z == y * z * z,
                        EnEquation::Mul(_, _, _) => y * y == y * z,
                    });
                    if !solves {
                        continue;
                    }
                    // Assemble the integer witness per the construction.
                    let (s, t, u, v) = four_square(z - 1).unwrap();
                    let (p, q) = bezout_bounded(y, z).unwrap();
                    let (a, b, c, d) = four_square(z * z - p * p).unwrap();
                    let point: Vec<BigInt> = [y, z, s, t, u, v, p, q, a, b, c, d]
                        .iter()
                        .map(|&w| BigInt::from(w))
                        .collect();
                    for eq in &eqs {
                        assert!(
                            eq.holds_at(&point).unwrap(),
                            "witness for {y}/{z} fails {eq} in {sys}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_square(0).unwrap(), (0, 0, 0, 0));
        assert_eq!(four_square(7).unwrap(), (1, 1, 1, 2));
        assert_eq!(four_square(2).unwrap(), (0, 0, 1, 1));
        assert_eq!(four_square(-3).unwrap_err(), TransformError::NegativeInput(-3));
    }

    #[test]
    fn four_square_sums_correctly() {
        for m in 0..2000 {
            let (a, b, c, d) = four_square(m).unwrap();
            assert_eq!(a * a + b * b + c * c + d * d, m);
            assert!(a >= 0 && b >= 0 && c >= 0 && d >= 0);
        }
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_bounded(1, 1).unwrap(), (1, 0));
        assert_eq!(bezout_bounded(3, 2).unwrap(), (1, -1));
        assert_eq!(bezout_bounded(10, 7).unwrap(), (-2, 3));
    }

    #[test]
    fn bezout_contract_holds_broadly() {
        for a in -40i64..=40 {
            for b in 1i64..=40 {
                if num_integer::gcd(a, b) != 1 {
                    assert!(bezout_bounded(a, b).is_err());
                    continue;
                }
                let (x, y) = bezout_bounded(a, b).unwrap();
                assert_eq!(a * x + b * y, 1, "identity at a={a}, b={b}");
                assert!(x.abs() <= b, "|X| ≤ B at a={a}, b={b}");
            }
        }
    }

    #[test]
    fn bezout_rejects_non_coprime() {
        assert_eq!(
            bezout_bounded(6, 4).unwrap_err(),
            TransformError::NotCoprime(BigInt::from(2))
        );
        assert!(matches!(
            bezout_bounded(3, 0).unwrap_err(),
            TransformError::NonPositiveModulus(0)
        ));
    }

    #[test]
    fn divisibility_witness_examples() {
        let w = |x: i64| divisibility_witness(&BigInt::from(x)).unwrap();
        assert_eq!(w(1), (BigInt::from(2), BigInt::from(1)));
        assert_eq!(w(5), (BigInt::from(8), BigInt::from(3)));
        assert_eq!(w(-2), (BigInt::from(-1), BigInt::from(1)));
        assert_eq!(
            divisibility_witness(&BigInt::zero()).unwrap_err(),
            TransformError::ZeroInput
        );
    }

    #[test]
    fn divisibility_identity_holds_up_to_thousand() {
        for x in (-1000i64..=1000).filter(|&x| x != 0) {
            let bx = BigInt::from(x);
            let (a, b) = divisibility_witness(&bx).unwrap();
            assert_eq!(&a * &bx, (&b * 2 - 1) * (&b * 3 - 1), "x = {x}");
            assert!(b >= BigInt::one());
            assert!(b <= bx.abs() * 6 + 1, "witness bound at x = {x}");
        }
    }
}
