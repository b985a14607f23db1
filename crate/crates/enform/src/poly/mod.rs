//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Polynomials are stored as a map from exponent vectors to non-zero
//! coefficients. All arithmetic is exact. Variables are 1-based (`x1`,
//! `x2`, ...) to match the constraint-system notation used elsewhere in
//! the crate.

mod parse;
mod search;

pub use parse::{parse_equation, parse_polynomial};
pub use search::solve_box;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expected exactly one '=' in equation")]
    MissingEquals,
    #[error("exponent must be a non-negative integer (at byte {pos})")]
    BadExponent { pos: usize },
    #[error("arity mismatch: polynomial has {expected} variables, point has {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// A sparse multivariate polynomial with `BigInt` coefficients.
///
/// Invariants: no stored coefficient is zero, and every exponent vector
/// has length `num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, BigInt>,
    num_vars: usize,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            num_vars,
        }
    }

    pub fn constant(c: BigInt, num_vars: usize) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The monomial `x_index` (1-based index).
    pub fn var(index: usize, num_vars: usize) -> Self {
        assert!(index >= 1 && index <= num_vars, "variable index out of range");
        let mut exps = vec![0; num_vars];
        exps[index - 1] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(exps, BigInt::one());
        p
    }

    /// Build from raw `(exponents, coefficient)` pairs; zero coefficients
    /// and repeated exponent vectors are merged away.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), num_vars, "exponent vector length mismatch");
            p.add_term(exps, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Same polynomial viewed over `new_num_vars >= num_vars` variables.
    pub fn extend_vars(&self, new_num_vars: usize) -> Self {
        assert!(new_num_vars >= self.num_vars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = e.clone();
            e2.resize(new_num_vars, 0);
            (e2, c.clone())
        });
        Polynomial {
            terms: terms.collect(),
            num_vars: new_num_vars,
        }
    }

    /// Rename variables: old index `i` becomes `mapping[i-1]` (1-based) in a
    /// polynomial over `new_num_vars` variables. The mapping must be injective
    /// on the variables that actually occur.
    pub fn remap_vars(&self, mapping: &[usize], new_num_vars: usize) -> Self {
        assert_eq!(mapping.len(), self.num_vars);
        let mut out = Self::zero(new_num_vars);
        for (exps, c) in &self.terms {
            let mut e2 = vec![0u32; new_num_vars];
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    let target = mapping[i];
                    assert!(target >= 1 && target <= new_num_vars);
                    e2[target - 1] += e;
                }
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Exact value of the polynomial at an integer point.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.num_vars {
            return Err(PolyError::ArityMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= point[i].pow(e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// `(M, degrees)`: the maximum of the absolute values of the coefficients
    /// and the per-variable degrees. The zero polynomial has `M = 0` and all
    /// degrees 0; callers that need `M >= 1` must check explicitly.
    pub fn coeff_stats(&self) -> (BigUint, Vec<u32>) {
        let mut max_abs = BigUint::zero();
        let mut degrees = vec![0u32; self.num_vars];
        for (exps, c) in &self.terms {
            let abs = c.magnitude();
            if *abs > max_abs {
                max_abs = abs.clone();
            }
            for (i, &e) in exps.iter().enumerate() {
                degrees[i] = degrees[i].max(e);
            }
        }
        (max_abs, degrees)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            num_vars: self.num_vars,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.num_vars.max(other.num_vars);
        let mut out = self.extend_vars(n);
        for (e, c) in other.extend_vars(n).terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.num_vars.max(other.num_vars);
        let a = self.extend_vars(n);
        let b = other.extend_vars(n);
        let mut out = Self::zero(n);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigInt::one(), self.num_vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Terms in graded-lexicographic order, largest first. This is the
    /// order used by `Display` and therefore by every serialized form.
    pub fn sorted_terms(&self) -> Vec<(&[u32], &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| {
            let ga: u64 = a.0.iter().map(|&e| e as u64).sum();
            let gb: u64 = b.0.iter().map(|&e| e as u64).sum();
            gb.cmp(&ga).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, coeff)) in self.sorted_terms().into_iter().enumerate() {
            let neg = coeff.is_negative();
            let abs = coeff.magnitude();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = exps.iter().all(|&e| e == 0);
            let mut wrote_factor = false;
            if !abs.is_one() || is_const {
                write!(f, "{}", abs)?;
                wrote_factor = true;
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

/// A polynomial equation `lhs = rhs`, kept together with the normalized
/// difference `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEquation {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub normalized: Polynomial,
}

impl PolyEquation {
    pub fn new(lhs: Polynomial, rhs: Polynomial) -> Self {
        let n = lhs.num_vars().max(rhs.num_vars());
        let lhs = lhs.extend_vars(n);
        let rhs = rhs.extend_vars(n);
        let normalized = lhs.sub(&rhs);
        PolyEquation { lhs, rhs, normalized }
    }

    pub fn num_vars(&self) -> usize {
        self.normalized.num_vars()
    }

    /// True iff the point satisfies the equation.
    pub fn holds_at(&self, point: &[BigInt]) -> Result<bool, PolyError> {
        Ok(self.normalized.evaluate(point)?.is_zero())
    }
}

impl fmt::Display for PolyEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `Σ P_i²`. The zero set of the result equals the intersection of the
/// inputs' zero sets over the integers. An empty slice yields the zero
/// polynomial, a degenerate sum whose zero set is everything; callers
/// should treat that case explicitly.
pub fn sum_of_squares(ps: &[Polynomial]) -> Polynomial {
    let n = ps.iter().map(|p| p.num_vars()).max().unwrap_or(1);
    let mut acc = Polynomial::zero(n);
    for p in ps {
        acc = acc.add(&p.extend_vars(n).square());
    }
    acc
}

/// `Some(r)` with `r² = n` when `n` is a perfect square (so `n >= 0`),
/// `None` otherwise.
pub fn integer_sqrt_test(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn int(n: i64) -> BigInt {
        BigInt::from_i64(n).unwrap()
    }

    fn quintic() -> Polynomial {
        // x1^5 - x1 - x2^2 + x2
        Polynomial::from_terms(
            2,
            vec![
                (vec![5, 0], int(1)),
                (vec![1, 0], int(-1)),
                (vec![0, 2], int(-1)),
                (vec![0, 1], int(1)),
            ],
        )
    }

    #[test]
    fn evaluate_known_solutions() {
        let p = quintic();
        assert_eq!(p.evaluate(&[int(30), int(4930)]).unwrap(), int(0));
        assert_eq!(p.evaluate(&[int(2), int(6)]).unwrap(), int(0));
        assert_eq!(p.evaluate(&[int(1), int(7)]).unwrap(), int(-42));
    }

    #[test]
    fn evaluate_at_origin_gives_constant_term() {
        let p = Polynomial::from_terms(2, vec![(vec![1, 1], int(4)), (vec![0, 0], int(-7))]);
        assert_eq!(p.evaluate(&[int(0), int(0)]).unwrap(), int(-7));
    }

    #[test]
    fn evaluate_arity_mismatch() {
        let p = quintic();
        assert_eq!(
            p.evaluate(&[int(1)]).unwrap_err(),
            PolyError::ArityMismatch { expected: 2, got: 1 }
        );
    }

    #[test]
    fn coeff_stats_worked_example() {
        let (m, d) = quintic().coeff_stats();
        assert_eq!(m, BigUint::from(1u32));
        assert_eq!(d, vec![5, 2]);
    }

    #[test]
    fn coeff_stats_zero_polynomial() {
        let (m, d) = Polynomial::zero(3).coeff_stats();
        assert_eq!(m, BigUint::zero());
        assert_eq!(d, vec![0, 0, 0]);
    }

    #[test]
    fn coeff_stats_linear() {
        let p = Polynomial::from_terms(1, vec![(vec![1], int(2)), (vec![0], int(3))]);
        let (m, d) = p.coeff_stats();
        assert_eq!(m, BigUint::from(3u32));
        assert_eq!(d, vec![1]);
    }

    #[test]
    fn sum_of_squares_definition() {
        // [x1 - 1, x2] -> (x1 - 1)^2 + x2^2
        let a = Polynomial::from_terms(2, vec![(vec![1, 0], int(1)), (vec![0, 0], int(-1))]);
        let b = Polynomial::var(2, 2);
        let s = sum_of_squares(&[a.clone(), b.clone()]);
        let expected = a.square().add(&b.square());
        assert_eq!(s, expected);
        assert_eq!(s.to_string(), "x1^2 + x2^2 - 2*x1 + 1");
    }

    #[test]
    fn sum_of_squares_empty_is_zero() {
        assert!(sum_of_squares(&[]).is_zero());
    }

    #[test]
    fn sum_of_squares_zero_set_is_intersection() {
        // Brute force over [-5,5]^2.
        let a = Polynomial::from_terms(2, vec![(vec![1, 0], int(1)), (vec![0, 1], int(-1))]);
        let b = Polynomial::from_terms(2, vec![(vec![1, 0], int(1)), (vec![0, 0], int(-2))]);
        let s = sum_of_squares(&[a.clone(), b.clone()]);
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                let pt = [int(x), int(y)];
                let both = a.evaluate(&pt).unwrap().is_zero() && b.evaluate(&pt).unwrap().is_zero();
                let sq = s.evaluate(&pt).unwrap().is_zero();
                assert_eq!(both, sq, "mismatch at ({x},{y})");
            }
        }
    }

    #[test]
    fn integer_sqrt_test_worked_example() {
        // 4*30^5 - 4*30 + 1 = 97199881 = 9859^2, and 9859 = 2*4930 - 1.
        let n = int(4 * 30i64.pow(5) - 4 * 30 + 1);
        assert_eq!(n, int(97_199_881));
        assert_eq!(integer_sqrt_test(&n), Some(int(9859)));
    }

    #[test]
    fn integer_sqrt_test_edges() {
        assert_eq!(integer_sqrt_test(&int(0)), Some(int(0)));
        assert_eq!(integer_sqrt_test(&int(2)), None);
        assert_eq!(integer_sqrt_test(&int(-4)), None);
    }

    #[test]
    fn subtraction_is_pointwise() {
        let p = quintic();
        let q = Polynomial::from_terms(2, vec![(vec![2, 1], int(3)), (vec![0, 0], int(5))]);
        let d = p.sub(&q);
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                let pt = [int(x), int(y)];
                assert_eq!(
                    d.evaluate(&pt).unwrap(),
                    p.evaluate(&pt).unwrap() - q.evaluate(&pt).unwrap()
                );
            }
        }
    }

    #[test]
    fn display_orders_by_graded_lex() {
        assert_eq!(quintic().to_string(), "x1^5 - x2^2 - x1 + x2");
        assert_eq!(Polynomial::zero(1).to_string(), "0");
        let c = Polynomial::constant(int(-3), 1);
        assert_eq!(c.to_string(), "-3");
    }
}
