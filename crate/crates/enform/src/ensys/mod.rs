//! Systems of single-operation equations over integer variables.
//!
//! An `E_n` system is a duplicate-free set of equations of the three forms
//! `x_i = 1`, `x_i + x_j = x_k`, `x_i · x_j = x_k` with all indices in
//! `1..=n`. The solver ([`enumerate_box`], [`count_solutions`]) finds
//! integer solutions in the closed box `[-B, B]^n` using constraint
//! propagation.

mod solve;

pub use solve::{count_solutions, enumerate_box, solve_stats, SolveOptions, SolveStats};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnError {
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("arity mismatch: system has {expected} variables, tuple has {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("canonical form is only computed for n <= {max}, got n = {n}")]
    CanonicalTooLarge { n: usize, max: usize },
}

/// One equation of `E_n`. Commutative forms are stored with `i <= j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnEquation {
    /// `x_i = 1`
    One(usize),
    /// `x_i + x_j = x_k`
    Add(usize, usize, usize),
    /// `x_i · x_j = x_k`
    Mul(usize, usize, usize),
}

impl EnEquation {
    pub fn one(i: usize) -> Self {
        EnEquation::One(i)
    }

    pub fn add(i: usize, j: usize, k: usize) -> Self {
        EnEquation::Add(i.min(j), i.max(j), k)
    }

    pub fn mul(i: usize, j: usize, k: usize) -> Self {
        EnEquation::Mul(i.min(j), i.max(j), k)
    }

    /// Canonicalized copy (sorts the commutative operand pair).
    pub fn canonical(self) -> Self {
        match self {
            EnEquation::One(i) => EnEquation::One(i),
            EnEquation::Add(i, j, k) => EnEquation::add(i, j, k),
            EnEquation::Mul(i, j, k) => EnEquation::mul(i, j, k),
        }
    }

    pub fn max_index(&self) -> usize {
        match *self {
            EnEquation::One(i) => i,
            EnEquation::Add(i, j, k) | EnEquation::Mul(i, j, k) => i.max(j).max(k),
        }
    }

    pub fn variables(&self) -> Vec<usize> {
        match *self {
            EnEquation::One(i) => vec![i],
            EnEquation::Add(i, j, k) | EnEquation::Mul(i, j, k) => vec![i, j, k],
        }
    }

    /// True iff the equation holds at the (1-based) assignment.
    pub fn holds_at(&self, x: &[BigInt]) -> bool {
        match *self {
            EnEquation::One(i) => x[i - 1].is_one(),
            EnEquation::Add(i, j, k) => &x[i - 1] + &x[j - 1] == x[k - 1],
            EnEquation::Mul(i, j, k) => &x[i - 1] * &x[j - 1] == x[k - 1],
        }
    }

    /// Apply a variable relabeling: variable `v` becomes `perm[v-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        match *self {
            EnEquation::One(i) => EnEquation::One(perm[i - 1]),
            EnEquation::Add(i, j, k) => EnEquation::add(perm[i - 1], perm[j - 1], perm[k - 1]),
            EnEquation::Mul(i, j, k) => EnEquation::mul(perm[i - 1], perm[j - 1], perm[k - 1]),
        }
    }
}

impl fmt::Display for EnEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EnEquation::One(i) => write!(f, "x{} = 1", i),
            EnEquation::Add(i, j, k) => write!(f, "x{} + x{} = x{}", i, j, k),
            EnEquation::Mul(i, j, k) => write!(f, "x{} * x{} = x{}", i, j, k),
        }
    }
}

/// A system `S ⊆ E_n`: `n` variables and a duplicate-free canonical set
/// of equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnSystem {
    n: usize,
    equations: BTreeSet<EnEquation>,
}

impl EnSystem {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a system needs at least one variable");
        EnSystem {
            n,
            equations: BTreeSet::new(),
        }
    }

    pub fn from_equations(
        n: usize,
        eqs: impl IntoIterator<Item = EnEquation>,
    ) -> Result<Self, EnError> {
        let mut s = Self::new(n);
        for eq in eqs {
            s.insert(eq)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equations(&self) -> impl Iterator<Item = &EnEquation> {
        self.equations.iter()
    }

    pub fn contains(&self, eq: &EnEquation) -> bool {
        self.equations.contains(&eq.canonical())
    }

    /// Insert after canonicalization; duplicates are merged silently.
    pub fn insert(&mut self, eq: EnEquation) -> Result<(), EnError> {
        let eq = eq.canonical();
        for v in eq.variables() {
            if v == 0 || v > self.n {
                return Err(EnError::IndexOutOfRange { index: v, n: self.n });
            }
        }
        self.equations.insert(eq);
        Ok(())
    }

    /// True iff every equation of the system holds at `x`.
    pub fn check_solution(&self, x: &[BigInt]) -> Result<bool, EnError> {
        if x.len() != self.n {
            return Err(EnError::ArityMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.equations.iter().all(|eq| eq.holds_at(x)))
    }

    /// Convenience wrapper over machine integers.
    pub fn check_solution_ints(&self, x: &[i64]) -> Result<bool, EnError> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.check_solution(&big)
    }

    /// The same equations with every variable `v` renamed to `perm[v-1]`.
    /// `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        EnSystem {
            n: self.n,
            equations: self.equations.iter().map(|eq| eq.relabel(perm)).collect(),
        }
    }

    /// The union of both systems over `max(n)` variables.
    pub fn union(&self, other: &EnSystem) -> EnSystem {
        let n = self.n.max(other.n);
        let mut out = EnSystem::new(n);
        for eq in self.equations.iter().chain(other.equations.iter()) {
            out.insert(*eq).expect("indices valid in the larger space");
        }
        out
    }

    pub fn enumerate_box(&self, radius: i64, opts: &SolveOptions) -> SolutionSet {
        solve::enumerate_box(self, radius, opts)
    }

    pub fn count_solutions(&self, radius: i64, opts: &SolveOptions) -> BigUint {
        solve::count_solutions(self, radius, opts)
    }

    /// Sorted equation list, mostly for display and serialization.
    pub fn sorted_equations(&self) -> Vec<EnEquation> {
        self.equations.iter().copied().collect()
    }
}

impl fmt::Display for EnSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system over x1..x{} ({} equations):", self.n, self.len())?;
        for eq in &self.equations {
            writeln!(f, "  {}", eq)?;
        }
        Ok(())
    }
}

/// The set of ALL equations of `E_n` satisfied by the tuple `x` — the
/// maximal induced relation set. Every equation outside the result fails
/// at `x`.
pub fn induced_system(x: &[BigInt]) -> EnSystem {
    assert!(!x.is_empty(), "induced system of an empty tuple");
    let n = x.len();
    let mut sys = EnSystem::new(n);
    for i in 1..=n {
        if x[i - 1].is_one() {
            sys.insert(EnEquation::One(i)).unwrap();
        }
        for j in i..=n {
            let sum = &x[i - 1] + &x[j - 1];
            let prod = &x[i - 1] * &x[j - 1];
            for k in 1..=n {
                if x[k - 1] == sum {
                    sys.insert(EnEquation::add(i, j, k)).unwrap();
                }
                if x[k - 1] == prod {
                    sys.insert(EnEquation::mul(i, j, k)).unwrap();
                }
            }
        }
    }
    sys
}

/// Convenience wrapper of [`induced_system`] over machine integers.
pub fn induced_system_ints(x: &[i64]) -> EnSystem {
    let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    induced_system(&big)
}

/// Every canonical equation of `E_n`, sorted: `n` one-equations plus
/// `n²(n+1)/2` each of additions and multiplications (commutative pairs
/// counted once).
pub fn all_equations(n: usize) -> Vec<EnEquation> {
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(EnEquation::one(i));
    }
    for i in 1..=n {
        for j in i..=n {
            for k in 1..=n {
                out.push(EnEquation::add(i, j, k));
                out.push(EnEquation::mul(i, j, k));
            }
        }
    }
    out.sort();
    out
}

const CANONICAL_MAX_N: usize = 8;

/// A representative of the system's class under variable permutations,
/// minimal in the derived total order on sorted equation lists, together
/// with the relabeling that produces it (variable `v` of the input is
/// variable `perm[v-1]` of the output). Two systems differing only by a
/// renaming of variables map to equal canonical forms.
pub fn canonical_form(sys: &EnSystem) -> Result<(EnSystem, Vec<usize>), EnError> {
    let n = sys.n;
    if n > CANONICAL_MAX_N {
        return Err(EnError::CanonicalTooLarge {
            n,
            max: CANONICAL_MAX_N,
        });
    }
    let mut best: Option<(Vec<EnEquation>, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (1..=n).collect();
    permute(&mut perm, 0, &mut |p| {
        let relabeled: Vec<EnEquation> = {
            let mut v: Vec<EnEquation> = sys.equations.iter().map(|eq| eq.relabel(p)).collect();
            v.sort();
            v
        };
        match &best {
            Some((cur, cur_perm)) => {
                if relabeled < *cur || (relabeled == *cur && p < cur_perm.as_slice()) {
                    best = Some((relabeled, p.to_vec()));
                }
            }
            None => best = Some((relabeled, p.to_vec())),
        }
    });
    let (eqs, perm) = best.expect("at least the identity permutation");
    let canon = EnSystem::from_equations(n, eqs)?;
    Ok((canon, perm))
}

fn permute(vals: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == vals.len() {
        visit(vals);
        return;
    }
    for i in at..vals.len() {
        vals.swap(at, i);
        permute(vals, at + 1, visit);
        vals.swap(at, i);
    }
}

/// Solutions of a system in a box, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub n: usize,
    pub box_radius: i64,
    /// Lexicographically sorted, duplicate-free.
    pub solutions: Vec<Vec<i64>>,
    /// Set when the enumeration limit was hit; the stored solutions are the
    /// lexicographically smallest ones found.
    pub truncated: bool,
    /// Exact count, present only when not truncated.
    pub count: Option<BigUint>,
}

impl SolutionSet {
    /// Largest `|x_i|` over all stored solutions.
    pub fn max_norm(&self) -> Option<i64> {
        self.solutions
            .iter()
            .flat_map(|s| s.iter().map(|v| v.abs()))
            .max()
    }

    pub fn contains(&self, tuple: &[i64]) -> bool {
        self.solutions.iter().any(|s| s == tuple)
    }
}

// ---------------------------------------------------------------------------
// Serialization: {"n": int, "eqs": [["one", i] | ["add", i, j, k] | ...]}
// with 1-based indices. The equation list is emitted in canonical sorted
// order, so equal systems serialize to identical bytes.
// ---------------------------------------------------------------------------

impl Serialize for EnEquation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            EnEquation::One(i) => {
                let mut seq = serializer.serialize_seq(Some(2))?;
                seq.serialize_element("one")?;
                seq.serialize_element(&i)?;
                seq.end()
            }
            EnEquation::Add(i, j, k) => {
                let mut seq = serializer.serialize_seq(Some(4))?;
                seq.serialize_element("add")?;
                seq.serialize_element(&i)?;
                seq.serialize_element(&j)?;
                seq.serialize_element(&k)?;
                seq.end()
            }
            EnEquation::Mul(i, j, k) => {
                let mut seq = serializer.serialize_seq(Some(4))?;
                seq.serialize_element("mul")?;
                seq.serialize_element(&i)?;
                seq.serialize_element(&j)?;
                seq.serialize_element(&k)?;
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for EnEquation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EqVisitor;

        impl<'de> Visitor<'de> for EqVisitor {
            type Value = EnEquation;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("[\"one\", i] or [\"add\"|\"mul\", i, j, k]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<EnEquation, A::Error> {
                let tag: String = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let i: usize = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                match tag.as_str() {
                    "one" => Ok(EnEquation::One(i)),
                    "add" | "mul" => {
                        let j: usize = seq
                            .next_element()?
                            .ok_or_else(|| de::Error::invalid_length(2, &self))?;
                        let k: usize = seq
                            .next_element()?
                            .ok_or_else(|| de::Error::invalid_length(3, &self))?;
                        Ok(if tag == "add" {
                            EnEquation::add(i, j, k)
                        } else {
                            EnEquation::mul(i, j, k)
                        })
                    }
                    other => Err(de::Error::unknown_variant(other, &["one", "add", "mul"])),
                }
            }
        }

        deserializer.deserialize_seq(EqVisitor)
    }
}

impl Serialize for EnSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EnSystem", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("eqs", &self.sorted_equations())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for EnSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            eqs: Vec<EnEquation>,
        }
        let raw = Raw::deserialize(deserializer)?;
        EnSystem::from_equations(raw.n, raw.eqs).map_err(de::Error::custom)
    }
}
