//! Exact arithmetic on double-exponential tower bounds.
//!
//! A [`TowerBound`] denotes the number `2^(2^k)` where `k` is itself an
//! exact expression tree ([`TowerExpr`]). Realistic bound computations
//! produce exponents with more digits than can ever be materialized, so
//! values are materialized lazily under explicit bit budgets, and
//! comparisons fall back from exact big-integer arithmetic to structural
//! rules and rigorous fixed-point logarithm intervals.
//!
//! The bound pipelines:
//!
//! - [`conjecture_bound`]: the cap `2^(2^(n-1))` for `n`-variable systems.
//! - [`bound_d`]: `2^(2^(card(T)-1))` for a polynomial equation `D = 0`.
//! - [`bound_nonneg`]: [`bound_d`] applied to the four-square encoding `D̂`.
//! - [`bound_rational`]: [`bound_d`] applied to the single equation built
//!   from the rational encoding of the compact lowering of `D = 0`.
//! - [`general_psi_bound`]: the same machinery for alternative computable
//!   bounds `ψ(n)` from a small registry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use thiserror::Error;

use crate::lower::{card_t, lower_compact, LowerError};
use crate::poly::{sum_of_squares, PolyEquation, Polynomial};
use crate::transforms::{hat, rationalize};

/// Bit budget for materializing values during comparisons; `2^20` bits
/// covers every tower with `k ≤ 20` exactly.
pub const CMP_MATERIALIZE_BITS: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error(transparent)]
    Lower(#[from] LowerError),
    #[error("unknown bound descriptor {0:?} (expected \"default\", \"2^(2^n)\", or \"table:n=v,...\")")]
    UnknownPsi(String),
    #[error("bound table has no entry for n = {0}")]
    PsiTableMissing(u64),
    #[error("cannot evaluate a table bound at a non-materializable point")]
    PsiPointTooLarge,
    #[error("tower syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Exact expression tree over non-negative integers.
///
/// `Sub` is restricted by construction to values that stay non-negative
/// (it exists so that exponents like `(2M+1)^E - 1` can be written down
/// when `(2M+1)^E` itself cannot be materialized).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerExpr {
    Lit(BigUint),
    Sum(Vec<TowerExpr>),
    Prod(Vec<TowerExpr>),
    Pow(Box<TowerExpr>, Box<TowerExpr>),
    Sub(Box<TowerExpr>, Box<TowerExpr>),
}

impl TowerExpr {
    pub fn lit(v: u64) -> Self {
        TowerExpr::Lit(BigUint::from(v))
    }

    pub fn pow(base: TowerExpr, exp: TowerExpr) -> Self {
        TowerExpr::Pow(Box::new(base), Box::new(exp))
    }

    #[allow(clippy::should_implement_trait)] // constructor, paired with `pow`
    pub fn sub(a: TowerExpr, b: TowerExpr) -> Self {
        TowerExpr::Sub(Box::new(a), Box::new(b))
    }

    /// Exact value when its bit length fits `max_bits`, `None` otherwise.
    ///
    /// `None` reliably means "more than `max_bits` bits" for the shapes
    /// this crate constructs: literals, sums and products of
    /// materializable parts, powers with materializable exponents, and
    /// subtraction of a small term from a larger one.
    pub fn value_capped(&self, max_bits: u64) -> Option<BigUint> {
        match self {
            TowerExpr::Lit(v) => (v.bits() <= max_bits).then(|| v.clone()),
            TowerExpr::Sum(children) => {
                let mut acc = BigUint::zero();
                for c in children {
                    acc += c.value_capped(max_bits)?;
                    if acc.bits() > max_bits + 1 {
                        return None;
                    }
                }
                (acc.bits() <= max_bits).then_some(acc)
            }
            TowerExpr::Prod(children) => {
                let mut acc = BigUint::one();
                for c in children {
                    let v = c.value_capped(max_bits)?;
                    if v.is_zero() {
                        return Some(BigUint::zero());
                    }
                    // bits(a·b) ≥ bits(a) + bits(b) - 1
                    if acc.bits() + v.bits() > max_bits + 1 {
                        return None;
                    }
                    acc *= v;
                }
                (acc.bits() <= max_bits).then_some(acc)
            }
            TowerExpr::Pow(base, exp) => {
                let e = exp.value_capped(64)?;
                let e: u64 = e.to_u64()?;
                let b = base.value_capped(max_bits)?;
                if e == 0 {
                    return Some(BigUint::one());
                }
                if b.is_zero() || b.is_one() {
                    return Some(b);
                }
                // bits(b^e) ≥ e·(bits(b) - 1) + 1
                if e.checked_mul(b.bits() - 1).is_none_or(|lb| lb >= max_bits) {
                    return None;
                }
                let v = Pow::pow(b, e);
                (v.bits() <= max_bits).then_some(v)
            }
            TowerExpr::Sub(a, b) => {
                let bv = b.value_capped(max_bits)?;
                match a.value_capped(max_bits + 64) {
                    Some(av) => {
                        debug_assert!(av >= bv, "tower subtraction must stay non-negative");
                        let v = av - bv;
                        (v.bits() <= max_bits).then_some(v)
                    }
                    // a has far more than max_bits bits and b is small:
                    // the difference still overflows the budget.
                    None => None,
                }
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            TowerExpr::Lit(_) => 4,
            TowerExpr::Pow(..) => 3,
            TowerExpr::Prod(_) => 2,
            TowerExpr::Sum(_) | TowerExpr::Sub(..) => 1,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, needs_parens: bool) -> fmt::Result {
        if needs_parens {
            write!(f, "(")?;
            fmt::Display::fmt(self, f)?;
            write!(f, ")")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl fmt::Display for TowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerExpr::Lit(v) => write!(f, "{}", v),
            TowerExpr::Sum(children) => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    c.fmt_child(f, i > 0 && c.prec() <= 1)?;
                }
                Ok(())
            }
            TowerExpr::Prod(children) => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    c.fmt_child(f, c.prec() <= 1)?;
                }
                Ok(())
            }
            TowerExpr::Pow(base, exp) => {
                base.fmt_child(f, base.prec() < 4)?;
                write!(f, "^")?;
                exp.fmt_child(f, exp.prec() < 4)
            }
            TowerExpr::Sub(a, b) => {
                a.fmt_child(f, false)?;
                write!(f, "-")?;
                b.fmt_child(f, b.prec() <= 1)
            }
        }
    }
}

// --- tower expression parser (round-trips canonical strings) ---

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, msg: &str) -> BoundsError {
        BoundsError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<TowerExpr, BoundsError> {
        let first = self.term()?;
        let mut acc = first;
        let mut sum_parts: Vec<TowerExpr> = Vec::new();
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    if sum_parts.is_empty() {
                        sum_parts.push(acc.clone());
                    }
                    sum_parts.push(t);
                    acc = TowerExpr::Sum(sum_parts.clone());
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = TowerExpr::sub(acc, t);
                    sum_parts.clear();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TowerExpr, BoundsError> {
        let first = self.power()?;
        let mut parts = vec![first];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            parts.push(self.power()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            TowerExpr::Prod(parts)
        })
    }

    fn power(&mut self) -> Result<TowerExpr, BoundsError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.power()?;
            return Ok(TowerExpr::pow(base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TowerExpr, BoundsError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Ok(TowerExpr::Lit(s.parse().unwrap()))
            }
            _ => Err(self.err("expected a number or '('")),
        }
    }
}

impl FromStr for TowerExpr {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ExprParser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

// --- rigorous scaled logarithms for non-materializable comparisons ---

/// `(lo, hi)` with `lo ≤ 2^f · log2(v) ≤ hi`, computed by truncated
/// mantissa squaring with enough guard bits that `hi - lo ≤ 3`.
fn log2_scaled_bounds(v: &BigUint, f: u32) -> (BigUint, BigUint) {
    assert!(*v >= BigUint::one());
    let int_part = BigUint::from(v.bits() - 1);
    let p: u64 = 2 * f as u64 + 64;
    // mantissa = v / 2^(bits-1) ∈ [1, 2), scaled by 2^p, truncated (lower).
    let mut m = (v.clone() << p) >> (v.bits() - 1);
    let mut frac = BigUint::zero();
    let two_scaled = BigUint::one() << (p + 1);
    for _ in 0..f {
        frac <<= 1;
        m = (&m * &m) >> p;
        if m >= two_scaled {
            frac += 1u32;
            m >>= 1;
        }
    }
    // Truncations only ever shrink the mantissa, so `frac` is a lower
    // bound; with p = 2f + 64 guard bits the total drift stays below one
    // output unit.
    let base = (int_part << f) + frac;
    let lo = if base.is_zero() { BigUint::zero() } else { &base - 1u32 };
    (lo, base + 2u32)
}

/// Largest perfect-power decomposition `v = base^exp` with `exp` maximal.
fn perfect_power(v: &BigUint) -> (BigUint, u64) {
    let mut base = v.clone();
    let mut exp = 1u64;
    if base <= BigUint::one() {
        return (base, exp);
    }
    'outer: loop {
        let max_e = base.bits();
        for e in (2..=max_e).rev() {
            let r = base.nth_root(e as u32);
            if r > BigUint::one() && Pow::pow(r.clone(), e) == base {
                base = r;
                exp *= e;
                continue 'outer;
            }
        }
        return (base, exp);
    }
}

/// Exact comparison of two tower expressions. Returns `None` only when
/// the values are too close to separate within the precision budget and
/// not provably equal — which does not occur for the expression shapes
/// the bound pipelines construct.
pub fn tower_expr_cmp(a: &TowerExpr, b: &TowerExpr) -> Option<Ordering> {
    if a == b {
        return Some(Ordering::Equal);
    }
    let va = a.value_capped(CMP_MATERIALIZE_BITS);
    let vb = b.value_capped(CMP_MATERIALIZE_BITS);
    match (va, vb) {
        (Some(x), Some(y)) => Some(x.cmp(&y)),
        (Some(_), None) => Some(Ordering::Less),
        (None, Some(_)) => Some(Ordering::Greater),
        (None, None) => tower_cmp_structural(a, b),
    }
}

fn tower_cmp_structural(a: &TowerExpr, b: &TowerExpr) -> Option<Ordering> {
    use TowerExpr::*;
    match (a, b) {
        (Sub(a1, d1), Sub(b1, d2)) if d1 == d2 => tower_expr_cmp(a1, b1),
        // x - d < x ≤ y
        (Sub(a1, _), other) => match tower_expr_cmp(a1, other)? {
            Ordering::Less | Ordering::Equal => Some(Ordering::Less),
            Ordering::Greater => None,
        },
        (other, Sub(b1, _)) => match tower_expr_cmp(other, b1)? {
            Ordering::Greater | Ordering::Equal => Some(Ordering::Greater),
            Ordering::Less => None,
        },
        (Pow(b1, e1), Pow(b2, e2)) => {
            if b1 == b2 {
                return tower_expr_cmp(e1, e2);
            }
            if e1 == e2 {
                return tower_expr_cmp(b1, b2);
            }
            let bb1 = b1.value_capped(CMP_MATERIALIZE_BITS)?;
            let bb2 = b2.value_capped(CMP_MATERIALIZE_BITS)?;
            let ee1 = e1.value_capped(CMP_MATERIALIZE_BITS)?;
            let ee2 = e2.value_capped(CMP_MATERIALIZE_BITS)?;
            if bb1 < BigUint::from(2u32) || bb2 < BigUint::from(2u32) {
                return None; // degenerate bases materialize earlier
            }
            // compare e1·log2(b1) with e2·log2(b2) at increasing precision
            for f in [64u32, 256, 1024, 4096] {
                let (lo1, hi1) = log2_scaled_bounds(&bb1, f);
                let (lo2, hi2) = log2_scaled_bounds(&bb2, f);
                if &ee1 * &lo1 > &ee2 * &hi2 {
                    return Some(Ordering::Greater);
                }
                if &ee1 * &hi1 < &ee2 * &lo2 {
                    return Some(Ordering::Less);
                }
            }
            // Within noise at max precision: exactly equal iff both are
            // powers of a common base with matching total exponents.
            let (m1, t1) = perfect_power(&bb1);
            let (m2, t2) = perfect_power(&bb2);
            if m1 == m2 && BigUint::from(t1) * &ee1 == BigUint::from(t2) * &ee2 {
                return Some(Ordering::Equal);
            }
            None
        }
        _ => None,
    }
}

/// The number `2^(2^k)`, with `k` kept as an exact expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerBound {
    /// The top of the tower: the bound is `2^(2^k)`.
    pub k: TowerExpr,
}

impl TowerBound {
    pub fn new(k: TowerExpr) -> Self {
        TowerBound { k }
    }

    /// Exact value when `2^k` fits the bit budget.
    pub fn value_capped(&self, max_bits: u64) -> Option<BigUint> {
        let k = self.k.value_capped(64)?.to_u64()?;
        if k >= 64 {
            return None;
        }
        let e = 1u64 << k;
        if e > max_bits {
            return None;
        }
        Some(BigUint::one() << e)
    }

    /// True iff `|x| ≤ 2^(2^k)`, decided by bit-length comparison with an
    /// exact check at the power-of-two boundary.
    pub fn admits(&self, x: &BigInt) -> bool {
        if x.is_zero() {
            return true;
        }
        let bits = x.magnitude().bits();
        let k = match self.k.value_capped(64).and_then(|v| v.to_u64()) {
            // k needs more than 64 bits: 2^(2^k) dwarfs any representable x.
            None => return true,
            Some(k) => k,
        };
        if k >= 64 {
            return true;
        }
        let e = 1u64 << k;
        if bits <= e {
            return true;
        }
        // |x| = 2^e exactly has e + 1 bits.
        bits == e + 1 && *x.magnitude() == BigUint::one() << e
    }

    pub fn cmp_exact(&self, other: &TowerBound) -> Option<Ordering> {
        tower_expr_cmp(&self.k, &other.k)
    }
}

impl fmt::Display for TowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expr = TowerExpr::pow(
            TowerExpr::lit(2),
            TowerExpr::pow(TowerExpr::lit(2), self.k.clone()),
        );
        write!(f, "{}", expr)
    }
}

impl FromStr for TowerBound {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let expr: TowerExpr = s.parse()?;
        if let TowerExpr::Pow(base, exp) = &expr {
            if **base == TowerExpr::lit(2) {
                if let TowerExpr::Pow(inner_base, k) = &**exp {
                    if **inner_base == TowerExpr::lit(2) {
                        return Ok(TowerBound::new((**k).clone()));
                    }
                }
            }
        }
        Err(BoundsError::Parse {
            pos: 0,
            msg: "expected the shape 2^(2^k)".into(),
        })
    }
}

/// The conjectural cap `2^(2^(n-1))` for systems over `n` variables.
pub fn conjecture_bound(n: usize) -> TowerBound {
    assert!(n >= 1);
    TowerBound::new(TowerExpr::lit(n as u64 - 1))
}

/// `|x| ≤ bound`?
pub fn within(x: &BigInt, bound: &TowerBound) -> bool {
    bound.admits(x)
}

/// `2^(2^(card(T) - 1))` for the equation `D = 0`.
pub fn bound_d(d: &Polynomial) -> Result<TowerBound, BoundsError> {
    let card = card_t(d)?;
    let k = match card {
        TowerExpr::Lit(v) => {
            debug_assert!(!v.is_zero());
            TowerExpr::Lit(v - 1u32)
        }
        other => TowerExpr::sub(other, TowerExpr::lit(1)),
    };
    Ok(TowerBound::new(k))
}

/// Bound for non-negative solutions: [`bound_d`] of the four-square
/// encoding `D̂`.
pub fn bound_nonneg(d: &Polynomial) -> Result<TowerBound, BoundsError> {
    if d.is_zero() {
        return Err(LowerError::ZeroPolynomial.into());
    }
    bound_d(&hat(d))
}

/// Bound for the heights of rational solutions of `D = 0`: compile the
/// equation to a system, rationalize it, collapse the equation list to a
/// single sum of squares, and bound that polynomial.
pub fn bound_rational(d: &Polynomial) -> Result<TowerBound, BoundsError> {
    if d.is_zero() {
        return Err(LowerError::ZeroPolynomial.into());
    }
    let eq = PolyEquation::new(d.clone(), Polynomial::zero(d.num_vars()));
    let map = lower_compact(&eq);
    let rational_eqs = rationalize(&map.target);
    let polys: Vec<Polynomial> = rational_eqs.into_iter().map(|e| e.normalized).collect();
    let single = sum_of_squares(&polys);
    bound_d(&single)
}

/// Height of a rational `y/z`: `max(|y|, z)` in lowest terms with `z > 0`.
pub fn rational_height(y: &BigInt, z: &BigInt) -> BigUint {
    assert!(!z.is_zero(), "height of a rational needs z != 0");
    let g = num_integer::Integer::gcd(y, z);
    let ry = (y / &g).magnitude().clone();
    let rz = (z / &g).magnitude().clone();
    ry.max(rz)
}

/// Registry of computable bounds `ψ(n)` for experiments with the general
/// form of the conjecture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Psi {
    /// `ψ(n) = 2^(2^(n-1))`, the default conjecture.
    DefaultTower,
    /// `ψ(n) = 2^(2^n)`.
    ShiftedTower,
    /// Explicit user table.
    Table(BTreeMap<u64, BigUint>),
}

impl FromStr for Psi {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "default" => Ok(Psi::DefaultTower),
            "2^(2^n)" => Ok(Psi::ShiftedTower),
            other if other.starts_with("table:") => {
                let mut table = BTreeMap::new();
                for part in other["table:".len()..].split(',') {
                    let (k, v) = part
                        .split_once('=')
                        .ok_or_else(|| BoundsError::UnknownPsi(other.to_string()))?;
                    let k: u64 = k
                        .trim()
                        .parse()
                        .map_err(|_| BoundsError::UnknownPsi(other.to_string()))?;
                    let v: BigUint = v
                        .trim()
                        .parse()
                        .map_err(|_| BoundsError::UnknownPsi(other.to_string()))?;
                    table.insert(k, v);
                }
                Ok(Psi::Table(table))
            }
            other => Err(BoundsError::UnknownPsi(other.to_string())),
        }
    }
}

/// A bound value: a tower or an explicit integer from a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiValue {
    Tower(TowerBound),
    Exact(BigUint),
}

impl PsiValue {
    pub fn admits(&self, x: &BigInt) -> bool {
        match self {
            PsiValue::Tower(t) => t.admits(x),
            PsiValue::Exact(v) => x.magnitude() <= v,
        }
    }
}

impl fmt::Display for PsiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiValue::Tower(t) => write!(f, "{}", t),
            PsiValue::Exact(v) => write!(f, "{}", v),
        }
    }
}

/// Evaluate `ψ` at a variable count `n`.
pub fn general_psi_bound(n: u64, psi: &Psi) -> Result<PsiValue, BoundsError> {
    assert!(n >= 1);
    match psi {
        Psi::DefaultTower => Ok(PsiValue::Tower(conjecture_bound(n as usize))),
        Psi::ShiftedTower => Ok(PsiValue::Tower(TowerBound::new(TowerExpr::Lit(
            BigUint::from(n),
        )))),
        Psi::Table(table) => table
            .get(&n)
            .cloned()
            .map(PsiValue::Exact)
            .ok_or(BoundsError::PsiTableMissing(n)),
    }
}

/// Evaluate `ψ` at `card(T)` of a polynomial — the analog of [`bound_d`]
/// for an arbitrary computable bound.
pub fn psi_bound_for_polynomial(d: &Polynomial, psi: &Psi) -> Result<PsiValue, BoundsError> {
    match psi {
        Psi::DefaultTower => Ok(PsiValue::Tower(bound_d(d)?)),
        Psi::ShiftedTower => {
            let card = card_t(d)?;
            Ok(PsiValue::Tower(TowerBound::new(card)))
        }
        Psi::Table(table) => {
            let card = card_t(d)?
                .value_capped(64)
                .and_then(|v| v.to_u64())
                .ok_or(BoundsError::PsiPointTooLarge)?;
            table
                .get(&card)
                .cloned()
                .map(PsiValue::Exact)
                .ok_or(BoundsError::PsiTableMissing(card))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_equation, parse_polynomial};

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn conjecture_bound_small_values() {
        assert_eq!(
            conjecture_bound(1).value_capped(1 << 10),
            Some(BigUint::from(2u32))
        );
        assert_eq!(
            conjecture_bound(2).value_capped(1 << 10),
            Some(BigUint::from(4u32))
        );
        assert_eq!(
            conjecture_bound(7).value_capped(1 << 10),
            Some(BigUint::from(2u128.pow(64)))
        );
    }

    #[test]
    fn within_boundary_is_exact() {
        let b2 = conjecture_bound(2); // 4
        assert!(within(&big(4), &b2));
        assert!(within(&BigInt::from(-4), &b2));
        assert!(!within(&big(5), &b2));

        // 2^256 against k = 8, equality case.
        let b = TowerBound::new(TowerExpr::lit(8));
        let v = BigInt::from(2u8).pow(256u32);
        assert!(within(&v, &b));
        assert!(!within(&(v + 1), &b));
    }

    #[test]
    fn within_monotone() {
        let b = conjecture_bound(3); // 16
        for x in -20i64..=20 {
            for y in -20i64..=20 {
                if x.abs() <= y.abs() && within(&BigInt::from(y), &b) {
                    assert!(within(&BigInt::from(x), &b));
                }
            }
        }
    }

    #[test]
    fn within_equality_attained_where_materializable() {
        for n in 1..=5usize {
            let b = conjecture_bound(n);
            let v = b.value_capped(1 << 10).unwrap();
            let v = BigInt::from(v);
            assert!(within(&v, &b), "n = {n}");
            assert!(!within(&(v + 1), &b), "n = {n}");
        }
    }

    #[test]
    fn bound_d_of_linear() {
        let d = parse_polynomial("x1 - 1").unwrap();
        let b = bound_d(&d).unwrap();
        assert_eq!(b.to_string(), "2^(2^8)");
        assert_eq!(b.value_capped(1 << 10), Some(BigUint::one() << 256));
    }

    #[test]
    fn bound_d_of_worked_example_is_symbolic() {
        let d = parse_equation("x1^5 - x1 = x2^2 - x2").unwrap().normalized;
        let b = bound_d(&d).unwrap();
        assert_eq!(b.to_string(), "2^(2^387420488)");
        assert_eq!(b.value_capped(u64::MAX >> 1), None);
    }

    #[test]
    fn bound_d_of_bare_variable() {
        // card(T) = 9 for M = 1, d1 = 1, so the bound is 2^(2^8).
        let d = parse_polynomial("x1").unwrap();
        assert_eq!(bound_d(&d).unwrap().to_string(), "2^(2^8)");
        assert!(matches!(
            bound_d(&Polynomial::zero(1)).unwrap_err(),
            BoundsError::Lower(LowerError::ZeroPolynomial)
        ));
    }

    #[test]
    fn bound_d_grows_with_coefficients() {
        let d1 = parse_polynomial("x1 - 1").unwrap();
        let d2 = parse_polynomial("2*x1 - 2").unwrap();
        let b1 = bound_d(&d1).unwrap();
        let b2 = bound_d(&d2).unwrap();
        assert_eq!(b1.cmp_exact(&b2), Some(Ordering::Less));
    }

    #[test]
    fn bound_nonneg_matches_hat_pipeline() {
        let d = parse_polynomial("x1 - 2").unwrap();
        let direct = bound_d(&hat(&d)).unwrap();
        let pipeline = bound_nonneg(&d).unwrap();
        assert_eq!(direct, pipeline);
        // D̂ has 5 variables; the exponent is symbolic but finite.
        assert!(pipeline.to_string().starts_with("2^(2^"));
    }

    #[test]
    fn bound_rational_returns_finite_towers() {
        for text in ["2*x1 - 1", "x1", "x1^2 - 2"] {
            let d = parse_polynomial(text).unwrap();
            let b = bound_rational(&d).unwrap();
            let s = b.to_string();
            assert!(s.starts_with("2^(2^"), "{text}: {s}");
            // Round-trips through the canonical string.
            let back: TowerBound = s.parse().unwrap();
            assert_eq!(back.to_string(), s, "{text}");
        }
    }

    #[test]
    fn rational_height_examples() {
        // 1/2 in lowest terms: height 2.
        assert_eq!(
            rational_height(&BigInt::from(1), &BigInt::from(2)),
            BigUint::from(2u32)
        );
        assert_eq!(
            rational_height(&BigInt::from(0), &BigInt::from(1)),
            BigUint::one()
        );
        assert_eq!(
            rational_height(&BigInt::from(6), &BigInt::from(4)),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn tower_cmp_agrees_with_materialized_values() {
        for ki in 0..=20u64 {
            for kj in 0..=20u64 {
                let a = TowerBound::new(TowerExpr::lit(ki));
                let b = TowerBound::new(TowerExpr::lit(kj));
                let va = a.value_capped(1 << 21).unwrap();
                let vb = b.value_capped(1 << 21).unwrap();
                assert_eq!(a.cmp_exact(&b), Some(va.cmp(&vb)), "k = {ki}, {kj}");
            }
        }
    }

    #[test]
    fn tower_cmp_separates_symbolic_powers() {
        // 3^100001 - 1 vs 5^100000 - 1: the second is much larger.
        let a = TowerExpr::sub(
            TowerExpr::pow(TowerExpr::lit(3), TowerExpr::lit(100_001)),
            TowerExpr::lit(1),
        );
        let b = TowerExpr::sub(
            TowerExpr::pow(TowerExpr::lit(5), TowerExpr::lit(100_000)),
            TowerExpr::lit(1),
        );
        assert_eq!(tower_expr_cmp(&a, &b), Some(Ordering::Less));
        assert_eq!(tower_expr_cmp(&b, &a), Some(Ordering::Greater));
    }

    #[test]
    fn tower_cmp_detects_equal_powers() {
        // 4^50000 = 2^100000 even though neither materializes.
        let a = TowerExpr::pow(TowerExpr::lit(4), TowerExpr::lit(500_000));
        let b = TowerExpr::pow(TowerExpr::lit(2), TowerExpr::lit(1_000_000));
        assert_eq!(tower_expr_cmp(&a, &b), Some(Ordering::Equal));
    }

    #[test]
    fn tower_strings_round_trip() {
        for s in ["2^(2^8)", "2^(2^387420488)", "2^(2^(3^100001-1))"] {
            let b: TowerBound = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        let e: TowerExpr = "3^18-1".parse().unwrap();
        assert_eq!(e.to_string(), "3^18-1");
        assert_eq!(
            e.value_capped(64),
            Some(BigUint::from(387_420_488u64))
        );
    }

    #[test]
    fn psi_registry() {
        let d = general_psi_bound(7, &Psi::DefaultTower).unwrap();
        assert_eq!(d.to_string(), "2^(2^6)");
        assert!(d.admits(&BigInt::from(2u8).pow(64u32)));
        assert!(!d.admits(&(BigInt::from(2u8).pow(64u32) + 1)));

        let s = general_psi_bound(3, &Psi::ShiftedTower).unwrap();
        assert_eq!(s.to_string(), "2^(2^3)");
        assert!(s.admits(&big(256)));
        assert!(!s.admits(&big(257)));

        let psi: Psi = "table:1=2,2=4".parse().unwrap();
        assert_eq!(
            general_psi_bound(2, &psi).unwrap(),
            PsiValue::Exact(BigUint::from(4u32))
        );
        assert_eq!(
            general_psi_bound(3, &psi).unwrap_err(),
            BoundsError::PsiTableMissing(3)
        );
        assert!(matches!(
            "nonsense".parse::<Psi>().unwrap_err(),
            BoundsError::UnknownPsi(_)
        ));
    }

    #[test]
    fn psi_at_polynomial_card() {
        let d = parse_polynomial("x1 - 1").unwrap(); // card(T) = 9
        let v = psi_bound_for_polynomial(&d, &Psi::DefaultTower).unwrap();
        assert_eq!(v.to_string(), "2^(2^8)");
        let v = psi_bound_for_polynomial(&d, &Psi::ShiftedTower).unwrap();
        assert_eq!(v.to_string(), "2^(2^9)");
        let table: Psi = "table:9=100".parse().unwrap();
        assert_eq!(
            psi_bound_for_polynomial(&d, &table).unwrap(),
            PsiValue::Exact(BigUint::from(100u32))
        );
    }

    #[test]
    fn value_capped_edge_cases() {
        assert_eq!(
            TowerExpr::lit(0).value_capped(64),
            Some(BigUint::zero())
        );
        let pow_one = TowerExpr::pow(TowerExpr::lit(1), TowerExpr::lit(1_000_000_000));
        assert_eq!(pow_one.value_capped(64), Some(BigUint::one()));
        let sum = TowerExpr::Sum(vec![TowerExpr::lit(3), TowerExpr::lit(4)]);
        assert_eq!(sum.value_capped(64), Some(BigUint::from(7u32)));
        let prod = TowerExpr::Prod(vec![TowerExpr::lit(6), TowerExpr::lit(7)]);
        assert_eq!(prod.value_capped(64), Some(BigUint::from(42u32)));
    }
}
