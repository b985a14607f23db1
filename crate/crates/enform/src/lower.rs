//! Compile polynomial equations into `E_n` systems.
//!
//! Two lowerings with different purposes:
//!
//! - [`lower_canonical`] materializes the full family `T` of polynomials
//!   with coefficients in `[-M, M]` and per-variable degrees bounded by
//!   those of `D`, assigns one system variable per family member, and
//!   emits every single-operation equation that is a polynomial identity,
//!   plus `x_q + x_q = x_q` for the variable `q` carrying `D` itself.
//!   Faithful but exponential (`card(T) = (2M+1)^((d₁+1)···(d_p+1))`), so
//!   it is gated behind a cap and used to validate the theory at toy
//!   scale.
//! - [`lower_compact`] is the workhorse: a three-address lowering over a
//!   shared expression DAG, with powers by repeated squaring, integer
//!   constants by binary addition chains from a designated 1-variable,
//!   and the two sides of the equation glued either through a shared
//!   difference variable or by targeting one side's final operation at
//!   the other side's value node.
//!
//! The gadget constructors ([`gadget_value_chain`], [`gadget_nonneg`],
//! [`chain_with_nonneg_blocks`]) build the unary value chain and the four-square
//! non-negativity block used by the finite-fold counting argument.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::bounds::TowerExpr;
use crate::ensys::{EnEquation, EnSystem};
use crate::poly::{PolyEquation, Polynomial};

/// Bit budget under which `card(T)` is materialized as an exact integer.
pub const CARD_MATERIALIZE_BITS: u64 = 4096;

/// Default cap on `card(T)` for the canonical lowering.
pub const CANONICAL_CARD_CAP: u64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LowerError {
    #[error("the zero polynomial has no lowering (its coefficient family is degenerate)")]
    ZeroPolynomial,
    #[error("canonical lowering infeasible: card(T) = {card} exceeds the cap {cap}")]
    CapExceeded { card: String, cap: u64 },
}

/// `card(T) = (2M+1)^((d₁+1)···(d_p+1))`, materialized as an exact integer
/// when it fits [`CARD_MATERIALIZE_BITS`], kept as a symbolic power
/// otherwise.
pub fn card_t(d: &Polynomial) -> Result<TowerExpr, LowerError> {
    if d.is_zero() {
        return Err(LowerError::ZeroPolynomial);
    }
    let (m, degrees) = d.coeff_stats();
    let base = BigUint::from(2u32) * m + BigUint::one();
    let mut exponent = BigUint::one();
    for &deg in &degrees {
        exponent *= BigUint::from(deg as u64 + 1);
    }
    let expr = TowerExpr::pow(TowerExpr::Lit(base), TowerExpr::Lit(exponent));
    Ok(match expr.value_capped(CARD_MATERIALIZE_BITS) {
        Some(v) => TowerExpr::Lit(v),
        None => expr,
    })
}

/// Correspondence between a source equation and its compiled system.
#[derive(Debug, Clone)]
pub struct LoweringMap {
    pub source: PolyEquation,
    pub target: EnSystem,
    /// Meaning of each system variable as a polynomial in the original
    /// variables. Indices `1..=original_vars` map to themselves.
    pub var_meaning: BTreeMap<usize, Polynomial>,
    pub original_vars: usize,
    /// The zero-forced value variable (`x_q + x_q = x_q` present), when the
    /// construction uses one. The compact lowering can close the equation
    /// by sharing a node instead, in which case this is `None`.
    pub result_var: Option<usize>,
    /// Equations that constrain (rather than define): everything else is a
    /// polynomial identity under `var_meaning`.
    pub constraints: Vec<EnEquation>,
}

impl LoweringMap {
    /// Equations that fail the polynomial-identity check under
    /// `var_meaning`. For a well-formed lowering this equals `constraints`.
    pub fn identity_violations(&self) -> Vec<EnEquation> {
        let meaning = |i: usize| {
            self.var_meaning
                .get(&i)
                .expect("every variable has a meaning")
        };
        self.target
            .equations()
            .filter(|eq| {
                let holds = match **eq {
                    EnEquation::One(i) => {
                        *meaning(i) == Polynomial::constant(BigInt::one(), self.original_vars)
                    }
                    EnEquation::Add(i, j, k) => meaning(i).add(meaning(j)) == *meaning(k),
                    EnEquation::Mul(i, j, k) => meaning(i).mul(meaning(j)) == *meaning(k),
                };
                !holds
            })
            .copied()
            .collect()
    }

    /// Extend a solution of the source equation to the full variable
    /// space by evaluating each variable's meaning.
    pub fn extend_point(&self, point: &[BigInt]) -> Vec<BigInt> {
        (1..=self.target.n())
            .map(|i| {
                self.var_meaning[&i]
                    .evaluate(point)
                    .expect("meanings share the source arity")
            })
            .collect()
    }

    /// Serialized sidecar `{"meaning": {index: polynomial-text}, "q": int}`.
    pub fn meaning_json(&self) -> serde_json::Value {
        let meaning: serde_json::Map<String, serde_json::Value> = self
            .var_meaning
            .iter()
            .map(|(i, p)| (i.to_string(), serde_json::Value::String(p.to_string())))
            .collect();
        serde_json::json!({
            "meaning": meaning,
            "q": self.result_var,
        })
    }
}

/// The exhaustive family construction. Enumerates all of `T`, assigns
/// variables, and keeps every single-operation polynomial identity plus
/// the zero-forcing equation on `D`'s variable.
pub fn lower_canonical(d: &Polynomial) -> Result<LoweringMap, LowerError> {
    lower_canonical_capped(d, CANONICAL_CARD_CAP)
}

pub fn lower_canonical_capped(d: &Polynomial, cap: u64) -> Result<LoweringMap, LowerError> {
    let card_expr = card_t(d)?;
    let card: u64 = match &card_expr {
        TowerExpr::Lit(v) if v.bits() <= 63 => v.to_u64().unwrap(),
        _ => u64::MAX,
    };
    if card > cap {
        let mut name = String::new();
        write!(name, "{}", card_expr).unwrap();
        return Err(LowerError::CapExceeded { card: name, cap });
    }
    let p = d.num_vars();
    let (m, degrees) = d.coeff_stats();
    let m = m.to_i64().expect("cap keeps M tiny");

    // Monomials of the family, in exponent-vector order.
    let mut monomials: Vec<Vec<u32>> = vec![vec![]];
    for &deg in &degrees {
        let mut next = Vec::with_capacity(monomials.len() * (deg as usize + 1));
        for exps in &monomials {
            for e in 0..=deg {
                let mut v = exps.clone();
                v.push(e);
                next.push(v);
            }
        }
        monomials = next;
    }
    monomials.sort();

    // Enumerate all coefficient vectors over [-M, M] in mixed-radix order
    // (last monomial runs fastest).
    let radix = (2 * m + 1) as u64;
    let mut family: Vec<Polynomial> = Vec::with_capacity(card as usize);
    let mut digits = vec![0u64; monomials.len()];
    'outer: loop {
        let terms = digits
            .iter()
            .zip(&monomials)
            .filter_map(|(&digit, exps)| {
                let c = digit as i64 - m;
                (c != 0).then(|| (exps.clone(), BigInt::from(c)))
            })
            .collect::<Vec<_>>();
        family.push(Polynomial::from_terms(p, terms));
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radix {
                break;
            }
            digits[pos] = 0;
        }
    }
    debug_assert_eq!(family.len() as u64, card);

    // Original variables take indices 1..=p; everything else gets fresh
    // indices in enumeration order.
    let var_polys: Vec<Polynomial> = (1..=p).map(|i| Polynomial::var(i, p)).collect();
    let mut index_of: HashMap<Polynomial, usize> = HashMap::with_capacity(family.len());
    let mut meaning: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for (i, vp) in var_polys.iter().enumerate() {
        index_of.insert(vp.clone(), i + 1);
        meaning.insert(i + 1, vp.clone());
    }
    let mut next = p + 1;
    for w in &family {
        if index_of.contains_key(w) {
            continue;
        }
        index_of.insert(w.clone(), next);
        meaning.insert(next, w.clone());
        next += 1;
    }
    let n = card as usize;
    debug_assert_eq!(next - 1, n);

    let q = index_of[d];
    let mut sys = EnSystem::new(n);
    let one_poly = Polynomial::constant(BigInt::one(), p);
    if let Some(&i) = index_of.get(&one_poly) {
        sys.insert(EnEquation::one(i)).unwrap();
    }
    // All identity equations x_i + x_j = x_k and x_i · x_j = x_k.
    let by_index: BTreeMap<usize, &Polynomial> = index_of.iter().map(|(w, &i)| (i, w)).collect();
    for i in 1..=n {
        for j in i..=n {
            let sum = by_index[&i].add(by_index[&j]);
            if let Some(&k) = index_of.get(&sum) {
                sys.insert(EnEquation::add(i, j, k)).unwrap();
            }
            let prod = by_index[&i].mul(by_index[&j]);
            if let Some(&k) = index_of.get(&prod) {
                sys.insert(EnEquation::mul(i, j, k)).unwrap();
            }
        }
    }
    let closing = EnEquation::add(q, q, q);
    sys.insert(closing).unwrap();

    Ok(LoweringMap {
        source: PolyEquation::new(d.clone(), Polynomial::zero(p)),
        target: sys,
        var_meaning: meaning,
        original_vars: p,
        result_var: Some(q),
        constraints: vec![closing],
    })
}

// ---------------------------------------------------------------------------
// Compact lowering
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum NodeKey {
    Const(BigInt),
    Add(usize, usize),
    Mul(usize, usize),
}

struct Compiler {
    p: usize,
    next: usize,
    cache: HashMap<NodeKey, usize>,
    equations: Vec<EnEquation>,
    meaning: BTreeMap<usize, Polynomial>,
    zero_var: Option<usize>,
}

impl Compiler {
    fn new(p: usize) -> Self {
        let mut meaning = BTreeMap::new();
        for i in 1..=p {
            meaning.insert(i, Polynomial::var(i, p));
        }
        Compiler {
            p,
            next: p + 1,
            cache: HashMap::new(),
            equations: Vec::new(),
            meaning,
            zero_var: None,
        }
    }

    fn fresh(&mut self, meaning: Polynomial) -> usize {
        let i = self.next;
        self.next += 1;
        self.meaning.insert(i, meaning);
        i
    }

    fn add_node(&mut self, a: usize, b: usize) -> usize {
        let key = NodeKey::Add(a.min(b), a.max(b));
        if let Some(&t) = self.cache.get(&key) {
            return t;
        }
        let meaning = self.meaning[&a].add(&self.meaning[&b]);
        let t = self.fresh(meaning);
        self.equations.push(EnEquation::add(a, b, t));
        self.cache.insert(key, t);
        t
    }

    fn mul_node(&mut self, a: usize, b: usize) -> usize {
        let key = NodeKey::Mul(a.min(b), a.max(b));
        if let Some(&t) = self.cache.get(&key) {
            return t;
        }
        let meaning = self.meaning[&a].mul(&self.meaning[&b]);
        let t = self.fresh(meaning);
        self.equations.push(EnEquation::mul(a, b, t));
        self.cache.insert(key, t);
        t
    }

    fn zero_node(&mut self) -> usize {
        let key = NodeKey::Const(BigInt::zero());
        if let Some(&t) = self.cache.get(&key) {
            return t;
        }
        let t = self.fresh(Polynomial::zero(self.p));
        self.equations.push(EnEquation::add(t, t, t));
        self.cache.insert(key, t);
        self.zero_var = Some(t);
        t
    }

    fn one_node(&mut self) -> usize {
        self.const_node(&BigInt::one())
    }

    /// Node whose value is the non-negative constant `c`, built by a
    /// binary addition chain from the 1-variable.
    fn const_node(&mut self, c: &BigInt) -> usize {
        assert!(!c.is_negative());
        if c.is_zero() {
            return self.zero_node();
        }
        let key = NodeKey::Const(c.clone());
        if let Some(&t) = self.cache.get(&key) {
            return t;
        }
        if c.is_one() {
            let t = self.fresh(Polynomial::constant(BigInt::one(), self.p));
            self.equations.push(EnEquation::one(t));
            self.cache.insert(key, t);
            return t;
        }
        // Powers of two by doubling, then sum the set bits low-to-high.
        let bits = c.bits();
        let mut power = self.one_node();
        let mut power_val = BigInt::one();
        let mut acc: Option<usize> = None;
        for bit in 0..bits {
            if bit > 0 {
                let doubled_val: BigInt = &power_val * 2;
                let doubled_key = NodeKey::Const(doubled_val.clone());
                power = match self.cache.get(&doubled_key) {
                    Some(&t) => t,
                    None => {
                        let t = self.add_node(power, power);
                        self.cache.insert(doubled_key, t);
                        t
                    }
                };
                power_val = doubled_val;
            }
            if c.bit(bit) {
                acc = Some(match acc {
                    None => power,
                    Some(a) => self.add_node(a, power),
                });
            }
        }
        let t = acc.expect("c > 0 has at least one set bit");
        self.cache.insert(key, t);
        t
    }

    /// `base^e` by repeated squaring (e ≥ 1).
    fn pow_node(&mut self, base: usize, e: u32) -> usize {
        assert!(e >= 1);
        let mut factors = Vec::new();
        let mut sq = base;
        let mut bit = 0u32;
        while (1u32 << bit) <= e {
            if bit > 0 {
                sq = self.mul_node(sq, sq);
            }
            if e & (1 << bit) != 0 {
                factors.push(sq);
            }
            bit += 1;
        }
        let mut acc = factors[0];
        for &f in &factors[1..] {
            acc = self.mul_node(acc, f);
        }
        acc
    }

    /// Node for a single monomial `c · Π x_i^{e_i}` with `c > 0`.
    fn monomial_node(&mut self, exps: &[u32], c: &BigInt) -> usize {
        let mut parts = Vec::new();
        let has_vars = exps.iter().any(|&e| e > 0);
        if !c.is_one() || !has_vars {
            parts.push(self.const_node(c));
        }
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                parts.push(self.pow_node(i + 1, e));
            }
        }
        let mut acc = parts[0];
        for &part in &parts[1..] {
            acc = self.mul_node(acc, part);
        }
        acc
    }

    /// Node for a sum of positive-coefficient monomials; zero yields the
    /// zero node.
    fn sum_node(&mut self, side: &Polynomial) -> usize {
        if side.is_zero() {
            return self.zero_node();
        }
        let terms = side.sorted_terms();
        let nodes: Vec<usize> = terms
            .iter()
            .map(|(exps, c)| self.monomial_node(exps, c))
            .collect();
        let mut acc = nodes[0];
        for &nd in &nodes[1..] {
            acc = self.add_node(acc, nd);
        }
        acc
    }

    /// Emit the final operation of `side` so that its result is `target`,
    /// closing the equation without a fresh variable. Returns the closing
    /// constraint equation. `side` must have at least one operation.
    fn emit_into(&mut self, side: &Polynomial, target: usize) -> EnEquation {
        debug_assert!(side_has_operation(side));
        if side.is_zero() {
            let eq = EnEquation::add(target, target, target);
            self.equations.push(eq);
            self.zero_var = Some(target);
            return eq;
        }
        let terms = side.sorted_terms();
        if terms.len() >= 2 {
            // Sum: build all but the last addition, then target it.
            let nodes: Vec<usize> = terms
                .iter()
                .map(|(exps, c)| self.monomial_node(exps, c))
                .collect();
            let mut acc = nodes[0];
            for &nd in &nodes[1..nodes.len() - 1] {
                acc = self.add_node(acc, nd);
            }
            let eq = EnEquation::add(acc, nodes[nodes.len() - 1], target);
            self.equations.push(eq);
            return eq;
        }
        let (exps, c) = (terms[0].0, terms[0].1);
        let has_vars = exps.iter().any(|&e| e > 0);
        if !has_vars {
            return self.const_into(c, target);
        }
        let mut parts = Vec::new();
        if !c.is_one() {
            parts.push(self.const_node(c));
        }
        let mut var_powers: Vec<(usize, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
            .collect();
        let last = var_powers.pop().expect("has_vars");
        for (v, e) in var_powers {
            parts.push(self.pow_node(v, e));
        }
        if parts.is_empty() {
            // Single pure power x_v^e with e ≥ 2: target the final step.
            return self.pow_into(last.0, last.1, target);
        }
        parts.push(self.pow_node(last.0, last.1));
        let mut acc = parts[0];
        for &part in &parts[1..parts.len() - 1] {
            acc = self.mul_node(acc, part);
        }
        let eq = EnEquation::mul(acc, parts[parts.len() - 1], target);
        self.equations.push(eq);
        eq
    }

    fn pow_into(&mut self, base: usize, e: u32, target: usize) -> EnEquation {
        debug_assert!(e >= 2);
        let eq = if e == 2 {
            EnEquation::mul(base, base, target)
        } else if e.is_power_of_two() {
            let half = self.pow_node(base, e / 2);
            EnEquation::mul(half, half, target)
        } else {
            // Split off the lowest set bit: e = rest + 2^j with both parts
            // already constructible, then target the combining product.
            let rest = e & (e - 1);
            let bit = e - rest;
            let rest_node = self.pow_node(base, rest);
            let bit_node = self.pow_node(base, bit);
            EnEquation::mul(rest_node, bit_node, target)
        };
        self.equations.push(eq);
        eq
    }

    fn const_into(&mut self, c: &BigInt, target: usize) -> EnEquation {
        assert!(!c.is_negative());
        if c.is_zero() {
            let eq = EnEquation::add(target, target, target);
            self.equations.push(eq);
            self.zero_var = Some(target);
            return eq;
        }
        if c.is_one() {
            let eq = EnEquation::one(target);
            self.equations.push(eq);
            return eq;
        }
        let half: BigInt = c / 2;
        let rem: BigInt = c - &half * 2;
        let eq = if rem.is_zero() {
            let h = self.const_node(&half);
            EnEquation::add(h, h, target)
        } else {
            let h = self.const_node(&(c - 1));
            let one = self.one_node();
            EnEquation::add(one, h, target)
        };
        self.equations.push(eq);
        eq
    }
}

/// `true` when compiling the side emits at least one equation (it is not
/// a bare variable).
fn side_has_operation(side: &Polynomial) -> bool {
    if side.is_zero() {
        return true; // needs the zero equation
    }
    let terms = side.sorted_terms();
    if terms.len() != 1 {
        return true;
    }
    let (exps, c) = (terms[0].0, terms[0].1);
    let var_degree: u32 = exps.iter().sum();
    !(c.is_one() && var_degree == 1)
}

/// Node index of a bare-variable side.
fn bare_variable(side: &Polynomial) -> usize {
    let terms = side.sorted_terms();
    let (exps, _) = terms[0];
    exps.iter().position(|&e| e == 1).unwrap() + 1
}

/// Split into positive and negative parts: `p = plus - minus`, both with
/// non-negative coefficients.
fn split_signs(p: &Polynomial) -> (Polynomial, Polynomial) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (exps, c) in p.terms() {
        if c.is_negative() {
            minus.push((exps.to_vec(), -c));
        } else {
            plus.push((exps.to_vec(), c.clone()));
        }
    }
    (
        Polynomial::from_terms(p.num_vars(), plus),
        Polynomial::from_terms(p.num_vars(), minus),
    )
}

/// Three-address lowering over an expression DAG. Projections of the
/// integer solutions of the output to `x1..xp` equal the solution set of
/// the source equation.
pub fn lower_compact(eq: &PolyEquation) -> LoweringMap {
    let p = eq.num_vars().max(1);
    let mut c = Compiler::new(p);

    if eq.normalized.is_zero() {
        // The two sides agree identically; no constraint at all.
        return LoweringMap {
            source: eq.clone(),
            target: EnSystem::new(p),
            var_meaning: c.meaning,
            original_vars: p,
            result_var: None,
            constraints: Vec::new(),
        };
    }

    let (l_plus, l_minus) = split_signs(&eq.lhs.extend_vars(p));
    let (r_plus, r_minus) = split_signs(&eq.rhs.extend_vars(p));

    let constraint = if !l_minus.is_zero() && !r_minus.is_zero() {
        // A - B = C - D: share one difference variable, as in
        // {x1 + x6 = x5, x2 + x6 = x7}.
        let la = c.sum_node(&l_plus);
        let lb = c.sum_node(&l_minus);
        let diff_meaning = c.meaning[&la].sub(&c.meaning[&lb]);
        let d = c.fresh(diff_meaning);
        c.equations.push(EnEquation::add(lb, d, la));
        let ra = c.sum_node(&r_plus);
        let rb = c.sum_node(&r_minus);
        let closing = EnEquation::add(rb, d, ra);
        c.equations.push(closing);
        closing
    } else if !l_minus.is_zero() {
        // A - B = R: close with B + r = A.
        let r = c.sum_node(&r_plus);
        let la = c.sum_node(&l_plus);
        let lb = c.sum_node(&l_minus);
        let closing = EnEquation::add(lb, r, la);
        c.equations.push(closing);
        closing
    } else if !r_minus.is_zero() {
        let l = c.sum_node(&l_plus);
        let ra = c.sum_node(&r_plus);
        let rb = c.sum_node(&r_minus);
        let closing = EnEquation::add(rb, l, ra);
        c.equations.push(closing);
        closing
    } else {
        // Both sides are non-negative sums. Target one side's final
        // operation at the other side's value node when possible.
        if side_has_operation(&l_plus) {
            let r = c.sum_node(&r_plus);
            c.emit_into(&l_plus, r)
        } else if side_has_operation(&r_plus) {
            let l = bare_variable(&l_plus);
            c.emit_into(&r_plus, l)
        } else {
            // Two bare variables: force equality through a zero variable.
            let l = bare_variable(&l_plus);
            let r = bare_variable(&r_plus);
            let z = c.zero_node();
            let closing = EnEquation::add(z, l, r);
            c.equations.push(closing);
            closing
        }
    };

    let n = c.next - 1;
    let target = EnSystem::from_equations(n, c.equations.iter().copied())
        .expect("compiler produces valid indices");
    LoweringMap {
        source: eq.clone(),
        target,
        var_meaning: c.meaning,
        original_vars: p,
        result_var: c.zero_var,
        constraints: vec![constraint],
    }
}

/// A system fragment with a designated output variable.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub system: EnSystem,
    pub output: usize,
}

/// The unary value chain `t₁ = 1, t₂ = t₁ + t₁, t₃ = t₂ + t₁, …`,
/// forcing the output variable to equal `value` exactly. Uses `value`
/// variables and `value` equations; the chain solution is unique over
/// the integers.
pub fn gadget_value_chain(value: usize) -> Gadget {
    assert!(value >= 1);
    let mut sys = EnSystem::new(value);
    sys.insert(EnEquation::one(1)).unwrap();
    if value >= 2 {
        sys.insert(EnEquation::add(1, 1, 2)).unwrap();
        for i in 3..=value {
            sys.insert(EnEquation::add(1, i - 1, i)).unwrap();
        }
    }
    Gadget {
        system: sys,
        output: value,
    }
}

/// The four-square non-negativity block on `target`:
///
/// ```text
/// x = u + v   u = a + b   v = c + d
/// a = α·α     b = β·β     c = γ·γ     d = δ·δ
/// ```
///
/// Returns the 7 equations over `target` and ten fresh variables starting
/// at `first_fresh` (the block totals 11 variables counting the target).
/// Integer solutions exist exactly when `target ≥ 0`.
pub fn gadget_nonneg(target: usize, first_fresh: usize) -> Vec<EnEquation> {
    let [u, v, a, b, c, d, al, be, ga, de]: [usize; 10] = std::array::from_fn(|i| first_fresh + i);
    vec![
        EnEquation::add(u, v, target),
        EnEquation::add(a, b, u),
        EnEquation::add(c, d, v),
        EnEquation::mul(al, al, a),
        EnEquation::mul(be, be, b),
        EnEquation::mul(ga, ga, c),
        EnEquation::mul(de, de, d),
    ]
}

/// Number of fresh variables [`gadget_nonneg`] introduces.
pub const NONNEG_FRESH_VARS: usize = 10;

/// The finite-fold counting assembly: a value chain pinning the first
/// variable to `n`, followed by `m - 1` four-square blocks on fresh
/// variables. Contains exactly `n + 11·(m - 1)` variables.
pub fn chain_with_nonneg_blocks(n: usize, m: usize) -> EnSystem {
    assert!(n >= 1 && m >= 1);
    let chain = gadget_value_chain(n);
    let total = n + 11 * (m - 1);
    let mut sys = EnSystem::new(total);
    for eq in chain.system.equations() {
        sys.insert(*eq).unwrap();
    }
    let mut next = n + 1;
    for _ in 2..=m {
        let target = next;
        for eq in gadget_nonneg(target, next + 1) {
            sys.insert(eq).unwrap();
        }
        next += 1 + NONNEG_FRESH_VARS;
    }
    debug_assert_eq!(next - 1, total);
    sys
}
