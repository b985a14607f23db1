//! Boxed enumeration and counting with constraint propagation.
//!
//! The solver works over the closed box `[-B, B]^n`. Before any search the
//! per-variable domains are narrowed to a fixpoint with interval rules
//! (sums, products, and the square rule `x_i² = x_k  ⟹  |x_i| ≤ √hi_k`,
//! which is what makes doubling-chain systems tractable at large radii).
//! The search then branches on the most-constrained unassigned variable
//! (static equation-membership count, ties by index) and propagates pinned
//! values through every touched equation:
//!
//! - addition: any two known values determine the third;
//! - multiplication: known factors determine the product; a known product
//!   and one non-zero factor determine the other factor when divisibility
//!   holds, and prune otherwise; a known zero factor pins the product;
//! - a pinned non-zero product with both factors unknown turns the branch
//!   into an enumeration of signed divisor pairs instead of a domain scan.
//!
//! Counting decomposes the constraint graph into connected components and
//! multiplies component counts; variables in no equation contribute a
//! factor `2B + 1` directly. Enumeration runs a single search so that the
//! solution list comes out in one piece; it is sorted before it is
//! returned. Results are deterministic and independent of the worker
//! count: work is sharded over the root branch candidates in order and
//! merged in order.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{EnEquation, EnSystem, SolutionSet};

/// Largest supported box radius. Values stay in `i64` and all products of
/// two in-box values fit comfortably in `i128`.
pub const MAX_RADIUS: i64 = 1 << 46;

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Enumeration stops (with the `truncated` flag) after this many solutions.
    pub limit: usize,
    /// Worker count for the root-level shard. Results do not depend on it.
    pub threads: usize,
    /// Disable propagation and scan the raw box; the independent oracle the
    /// propagating path is tested against. Only sensible for tiny boxes.
    pub propagate: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            limit: 1_000_000,
            threads: 1,
            propagate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub count: BigUint,
    /// Largest `|x_i|` over all solutions; `None` when there are none.
    pub max_norm: Option<i64>,
}

// 0-based internal copy of an equation.
#[derive(Debug, Clone, Copy)]
enum Eq {
    One(usize),
    Add(usize, usize, usize),
    Mul(usize, usize, usize),
}

struct Model {
    n: usize,
    eqs: Vec<Eq>,
    adj: Vec<Vec<usize>>,
    /// Branch order: most-constrained-first, ties by variable index.
    order: Vec<usize>,
    dom: Vec<(i64, i64)>,
    radius: i64,
    feasible: bool,
}

fn isqrt_u64(v: u64) -> u64 {
    if v == 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as u64;
    while r.saturating_mul(r) > v {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= v) {
        r += 1;
    }
    r
}

type Iv = (i128, i128);

fn iv_add(a: Iv, b: Iv) -> Iv {
    (a.0 + b.0, a.1 + b.1)
}

fn iv_sub(a: Iv, b: Iv) -> Iv {
    (a.0 - b.1, a.1 - b.0)
}

fn iv_mul(a: Iv, b: Iv) -> Iv {
    let cands = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    (
        cands.iter().copied().min().unwrap(),
        cands.iter().copied().max().unwrap(),
    )
}

fn iv_square(a: Iv) -> Iv {
    let lo2 = a.0 * a.0;
    let hi2 = a.1 * a.1;
    let hi = lo2.max(hi2);
    let lo = if a.0 <= 0 && a.1 >= 0 { 0 } else { lo2.min(hi2) };
    (lo, hi)
}

impl Model {
    fn build(sys: &EnSystem, radius: i64, narrow: bool) -> Model {
        let n = sys.n();
        let eqs: Vec<Eq> = sys
            .equations()
            .map(|eq| match *eq {
                EnEquation::One(i) => Eq::One(i - 1),
                EnEquation::Add(i, j, k) => Eq::Add(i - 1, j - 1, k - 1),
                EnEquation::Mul(i, j, k) => Eq::Mul(i - 1, j - 1, k - 1),
            })
            .collect();
        Self::build_raw(n, eqs, radius, narrow)
    }

    fn build_raw(n: usize, eqs: Vec<Eq>, radius: i64, narrow: bool) -> Model {
        let mut adj = vec![Vec::new(); n];
        let mut membership = vec![0usize; n];
        for (ei, eq) in eqs.iter().enumerate() {
            let vars: Vec<usize> = match *eq {
                Eq::One(i) => vec![i],
                Eq::Add(i, j, k) | Eq::Mul(i, j, k) => {
                    let mut v = vec![i, j, k];
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            };
            for v in vars {
                adj[v].push(ei);
                membership[v] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(membership[v]), v));
        let mut dom = vec![(-radius, radius); n];
        let feasible = if narrow {
            narrow_domains(&mut dom, &eqs, radius)
        } else {
            true
        };
        Model {
            n,
            eqs,
            adj,
            order,
            dom,
            radius,
            feasible,
        }
    }
}

/// Shrink domains to an interval fixpoint. Returns false when some domain
/// empties (the system has no solution in the box).
fn narrow_domains(dom: &mut [(i64, i64)], eqs: &[Eq], radius: i64) -> bool {
    let clamp = |dom: &mut [(i64, i64)], v: usize, lo: i128, hi: i128| -> Option<bool> {
        let (clo, chi) = dom[v];
        let nlo = (clo as i128).max(lo).max(-(radius as i128)) as i64;
        let nhi = (chi as i128).min(hi).min(radius as i128) as i64;
        if nlo > nhi {
            return None;
        }
        let changed = nlo != clo || nhi != chi;
        dom[v] = (nlo, nhi);
        Some(changed)
    };
    let rounds = 16 * eqs.len().max(4) + 64;
    for _ in 0..rounds {
        let mut changed = false;
        for eq in eqs {
            match *eq {
                Eq::One(i) => match clamp(dom, i, 1, 1) {
                    None => return false,
                    Some(c) => changed |= c,
                },
                Eq::Add(i, j, k) => {
                    let di = (dom[i].0 as i128, dom[i].1 as i128);
                    let dj = (dom[j].0 as i128, dom[j].1 as i128);
                    let dk = (dom[k].0 as i128, dom[k].1 as i128);
                    let steps = [
                        (k, iv_add(di, dj)),
                        (i, iv_sub(dk, dj)),
                        (j, iv_sub(dk, di)),
                    ];
                    for (v, (lo, hi)) in steps {
                        match clamp(dom, v, lo, hi) {
                            None => return false,
                            Some(c) => changed |= c,
                        }
                    }
                }
                Eq::Mul(i, j, k) => {
                    let di = (dom[i].0 as i128, dom[i].1 as i128);
                    let dj = (dom[j].0 as i128, dom[j].1 as i128);
                    let dk = (dom[k].0 as i128, dom[k].1 as i128);
                    let fwd = if i == j { iv_square(di) } else { iv_mul(di, dj) };
                    match clamp(dom, k, fwd.0, fwd.1) {
                        None => return false,
                        Some(c) => changed |= c,
                    }
                    if i == j {
                        // |x_i| ≤ √hi_k
                        let hi_k = dom[k].1;
                        if hi_k < 0 {
                            return false;
                        }
                        let s = isqrt_u64(hi_k as u64) as i128;
                        match clamp(dom, i, -s, s) {
                            None => return false,
                            Some(c) => changed |= c,
                        }
                    } else {
                        // |x_i| ≤ max|x_k| / min|x_j| when 0 ∉ dom_j
                        for (a, b) in [(i, j), (j, i)] {
                            let db = dom[b];
                            if db.0 > 0 || db.1 < 0 {
                                let min_b = db.0.unsigned_abs().min(db.1.unsigned_abs()).max(1);
                                let max_k =
                                    dk.0.unsigned_abs().max(dk.1.unsigned_abs());
                                let q = (max_k / min_b as u128) as i128;
                                match clamp(dom, a, -q, q) {
                                    None => return false,
                                    Some(c) => changed |= c,
                                }
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
    true
}

struct Dfs<'m> {
    m: &'m Model,
    pins: Vec<Option<i64>>,
    trail: Vec<usize>,
}

enum Branch {
    /// Scan the variable's narrowed domain.
    Range(usize, i64, i64),
    /// Explicit candidate values (signed divisors, square roots).
    List(usize, Vec<i64>),
}

impl Branch {
    fn var(&self) -> usize {
        match *self {
            Branch::Range(v, _, _) | Branch::List(v, _) => v,
        }
    }

    fn values(&self) -> Vec<i64> {
        match self {
            Branch::Range(_, lo, hi) => (*lo..=*hi).collect(),
            Branch::List(_, vals) => vals.clone(),
        }
    }
}

struct Conflict;

impl<'m> Dfs<'m> {
    fn new(m: &'m Model) -> Self {
        Dfs {
            m,
            pins: vec![None; m.n],
            trail: Vec::new(),
        }
    }

    fn pin(&mut self, v: usize, val: i64, queue: &mut Vec<usize>) -> Result<(), Conflict> {
        if let Some(cur) = self.pins[v] {
            return if cur == val { Ok(()) } else { Err(Conflict) };
        }
        let (lo, hi) = self.m.dom[v];
        if val < lo || val > hi {
            return Err(Conflict);
        }
        self.pins[v] = Some(val);
        self.trail.push(v);
        queue.extend_from_slice(&self.m.adj[v]);
        Ok(())
    }

    fn pin_checked(&mut self, v: usize, val: i128, queue: &mut Vec<usize>) -> Result<(), Conflict> {
        if val.unsigned_abs() > self.m.radius as u128 {
            return Err(Conflict);
        }
        self.pin(v, val as i64, queue)
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.pins[v] = None;
        }
    }

    fn propagate(&mut self, queue: &mut Vec<usize>) -> Result<(), Conflict> {
        while let Some(ei) = queue.pop() {
            self.apply(self.m.eqs[ei], queue)?;
        }
        Ok(())
    }

    fn apply(&mut self, eq: Eq, queue: &mut Vec<usize>) -> Result<(), Conflict> {
        match eq {
            Eq::One(i) => self.pin(i, 1, queue),
            Eq::Add(i, j, k) => self.apply_add(i, j, k, queue),
            Eq::Mul(i, j, k) => self.apply_mul(i, j, k, queue),
        }
    }

    fn apply_add(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        queue: &mut Vec<usize>,
    ) -> Result<(), Conflict> {
        // Aliased shapes pin a variable outright.
        if i == j && j == k {
            return self.pin(i, 0, queue); // x + x = x
        }
        if k == i {
            return self.pin(j, 0, queue); // x_i + x_j = x_i
        }
        if k == j {
            return self.pin(i, 0, queue);
        }
        match (self.pins[i], self.pins[j], self.pins[k]) {
            (Some(a), Some(b), _) => self.pin_checked(k, a as i128 + b as i128, queue),
            (Some(a), None, Some(c)) => self.pin_checked(j, c as i128 - a as i128, queue),
            (None, Some(b), Some(c)) => self.pin_checked(i, c as i128 - b as i128, queue),
            (None, None, Some(c)) if i == j => {
                // 2·x_i = c
                if c % 2 == 0 {
                    self.pin(i, c / 2, queue)
                } else {
                    Err(Conflict)
                }
            }
            _ => Ok(()),
        }
    }

    fn apply_mul(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        queue: &mut Vec<usize>,
    ) -> Result<(), Conflict> {
        if i == j && j == k {
            // x² = x: two candidate values, resolved by branching.
            if let Some(a) = self.pins[i] {
                if a as i128 * a as i128 != a as i128 {
                    return Err(Conflict);
                }
            }
            return Ok(());
        }
        if i == j {
            // x_i² = x_k
            return match (self.pins[i], self.pins[k]) {
                (Some(a), _) => self.pin_checked(k, a as i128 * a as i128, queue),
                (None, Some(c)) => {
                    if c < 0 {
                        Err(Conflict)
                    } else if c == 0 {
                        self.pin(i, 0, queue)
                    } else {
                        let r = isqrt_u64(c as u64);
                        if (r as i128) * (r as i128) == c as i128 {
                            Ok(()) // ±r resolved by branching
                        } else {
                            Err(Conflict)
                        }
                    }
                }
                (None, None) => Ok(()),
            };
        }
        if k == i || k == j {
            // x_i · x_j = x_i (or symmetric): the repeated variable is free
            // when the other factor is 1, forced to 0 otherwise.
            let (rep, other) = if k == i { (i, j) } else { (j, i) };
            return match (self.pins[rep], self.pins[other]) {
                (Some(a), _) if a != 0 => self.pin(other, 1, queue),
                (Some(_), _) => Ok(()), // 0 · x = 0 holds for every x
                (None, Some(b)) if b != 1 => self.pin(rep, 0, queue),
                _ => Ok(()),
            };
        }
        match (self.pins[i], self.pins[j], self.pins[k]) {
            (Some(a), Some(b), _) => self.pin_checked(k, a as i128 * b as i128, queue),
            (Some(a), None, Some(c)) => self.solve_factor(a, j, c, queue),
            (None, Some(b), Some(c)) => self.solve_factor(b, i, c, queue),
            (Some(0), None, None) | (None, Some(0), None) => self.pin(k, 0, queue),
            _ => Ok(()),
        }
    }

    /// `known · x_other = c` with `x_other` unknown.
    fn solve_factor(
        &mut self,
        known: i64,
        other: usize,
        c: i64,
        queue: &mut Vec<usize>,
    ) -> Result<(), Conflict> {
        if known == 0 {
            if c == 0 {
                Ok(()) // other factor unconstrained
            } else {
                Err(Conflict)
            }
        } else if c % known == 0 {
            self.pin(other, c / known, queue)
        } else {
            Err(Conflict)
        }
    }

    /// Pick the branch for the most-constrained unassigned variable. A
    /// product equation with a pinned non-zero result turns the branch into
    /// divisor enumeration; otherwise the narrowed domain is scanned.
    fn select_branch(&self) -> Option<Branch> {
        let v = *self.m.order.iter().find(|&&v| self.pins[v].is_none())?;
        let mut best: Option<Vec<i64>> = None;
        for &ei in &self.m.adj[v] {
            if let Eq::Mul(i, j, k) = self.m.eqs[ei] {
                if let Some(c) = self.pins[k] {
                    if c != 0 && self.pins[i].is_none() && self.pins[j].is_none() && k != i && k != j
                    {
                        let cands = if i == j {
                            debug_assert_eq!(i, v);
                            let r = isqrt_u64(c.unsigned_abs()) as i64;
                            vec![-r, r] // propagation already verified squareness
                        } else {
                            debug_assert!(v == i || v == j);
                            signed_divisors(c)
                        };
                        let cands: Vec<i64> = cands
                            .into_iter()
                            .filter(|&d| d >= self.m.dom[v].0 && d <= self.m.dom[v].1)
                            .collect();
                        if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                            best = Some(cands);
                        }
                    }
                }
            }
        }
        Some(match best {
            Some(cands) => Branch::List(v, cands),
            None => Branch::Range(v, self.m.dom[v].0, self.m.dom[v].1),
        })
    }

    fn leaf_ok(&self) -> bool {
        self.m.eqs.iter().all(|eq| match *eq {
            Eq::One(i) => self.pins[i] == Some(1),
            Eq::Add(i, j, k) => {
                let (a, b, c) = (self.pins[i], self.pins[j], self.pins[k]);
                match (a, b, c) {
                    (Some(a), Some(b), Some(c)) => a as i128 + b as i128 == c as i128,
                    _ => false,
                }
            }
            Eq::Mul(i, j, k) => {
                let (a, b, c) = (self.pins[i], self.pins[j], self.pins[k]);
                match (a, b, c) {
                    (Some(a), Some(b), Some(c)) => a as i128 * b as i128 == c as i128,
                    _ => false,
                }
            }
        })
    }

    /// Depth-first search over the remaining variables; `visit` sees every
    /// solution exactly once. Returning `Break` stops the whole search.
    fn search(&mut self, visit: &mut impl FnMut(&[i64]) -> ControlFlow<()>) -> ControlFlow<()> {
        match self.select_branch() {
            None => {
                if self.leaf_ok() {
                    let assignment: Vec<i64> =
                        self.pins.iter().map(|p| p.expect("leaf is complete")).collect();
                    visit(&assignment)
                } else {
                    ControlFlow::Continue(())
                }
            }
            Some(branch) => {
                let v = branch.var();
                let mark = self.trail.len();
                match branch {
                    Branch::Range(_, lo, hi) => {
                        for val in lo..=hi {
                            self.try_value(v, val, mark, visit)?;
                        }
                    }
                    Branch::List(_, vals) => {
                        for val in vals {
                            self.try_value(v, val, mark, visit)?;
                        }
                    }
                }
                ControlFlow::Continue(())
            }
        }
    }

    fn try_value(
        &mut self,
        v: usize,
        val: i64,
        mark: usize,
        visit: &mut impl FnMut(&[i64]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut queue = Vec::new();
        let flow = if self.pin(v, val, &mut queue).is_ok() && self.propagate(&mut queue).is_ok() {
            self.search(visit)
        } else {
            ControlFlow::Continue(())
        };
        self.undo_to(mark);
        flow
    }
}

/// Sorted signed divisors of a non-zero value (candidates for one factor
/// of a product pinned to `c`).
fn signed_divisors(c: i64) -> Vec<i64> {
    let m = c.unsigned_abs();
    let mut pos: Vec<u64> = Vec::new();
    let mut d = 1u64;
    while d <= m / d {
        if m.is_multiple_of(d) {
            pos.push(d);
            if d != m / d {
                pos.push(m / d);
            }
        }
        d += 1;
    }
    let mut out: Vec<i64> = Vec::with_capacity(pos.len() * 2);
    for &p in &pos {
        out.push(-(p as i64));
        out.push(p as i64);
    }
    out.sort_unstable();
    out
}

/// Runs initial propagation, then shards the root branch over `threads`
/// workers. Each worker reports `(solutions ≤ cap, count, max_norm)` for its
/// chunk; chunks are merged in order, which makes the result independent of
/// the worker count.
struct RootRun {
    solutions: Vec<Vec<i64>>,
    found_more: bool,
    count: BigUint,
    max_norm: Option<i64>,
}

fn run_model(model: &Model, threads: usize, collect: bool, cap: usize) -> RootRun {
    let empty = RootRun {
        solutions: Vec::new(),
        found_more: false,
        count: BigUint::zero(),
        max_norm: None,
    };
    if !model.feasible {
        return empty;
    }
    let mut root = Dfs::new(model);
    let mut queue: Vec<usize> = (0..model.eqs.len()).collect();
    if root.propagate(&mut queue).is_err() {
        return empty;
    }
    let branch = match root.select_branch() {
        None => {
            // Fully pinned by propagation alone.
            if root.leaf_ok() {
                let sol: Vec<i64> = root.pins.iter().map(|p| p.unwrap()).collect();
                let norm = sol.iter().map(|v| v.abs()).max();
                return RootRun {
                    count: BigUint::one(),
                    max_norm: norm,
                    solutions: if collect { vec![sol] } else { Vec::new() },
                    found_more: false,
                };
            }
            return empty;
        }
        Some(b) => b,
    };
    let v = branch.var();
    let values = branch.values();
    let threads = threads.max(1).min(values.len().max(1));

    let worker = |vals: &[i64]| -> RootRun {
        let mut dfs = Dfs::new(model);
        dfs.pins = root.pins.clone();
        let mut out = RootRun {
            solutions: Vec::new(),
            found_more: false,
            count: BigUint::zero(),
            max_norm: None,
        };
        let mut leaves: u64 = 0;
        for &val in vals {
            let mark = dfs.trail.len();
            let mut queue = Vec::new();
            if dfs.pin(v, val, &mut queue).is_ok() && dfs.propagate(&mut queue).is_ok() {
                let flow = dfs.search(&mut |sol| {
                    leaves += 1;
                    if leaves == u64::MAX {
                        out.count += BigUint::from(leaves);
                        leaves = 0;
                    }
                    let norm = sol.iter().map(|v| v.abs()).max().unwrap_or(0);
                    out.max_norm = Some(out.max_norm.map_or(norm, |m: i64| m.max(norm)));
                    if collect {
                        if out.solutions.len() >= cap {
                            out.found_more = true;
                            return ControlFlow::Break(());
                        }
                        out.solutions.push(sol.to_vec());
                    }
                    ControlFlow::Continue(())
                });
                if flow.is_break() {
                    dfs.undo_to(mark);
                    break;
                }
            }
            dfs.undo_to(mark);
        }
        out.count += BigUint::from(leaves);
        out
    };

    let results: Vec<RootRun> = if threads <= 1 {
        vec![worker(&values)]
    } else {
        let chunk = values.len().div_ceil(threads);
        let chunks: Vec<&[i64]> = values.chunks(chunk).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|&c| scope.spawn(move || worker(c)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };

    let mut merged = empty;
    for r in results {
        merged.count += r.count;
        merged.max_norm = match (merged.max_norm, r.max_norm) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        merged.found_more |= r.found_more;
        if collect {
            for sol in r.solutions {
                if merged.solutions.len() >= cap {
                    merged.found_more = true;
                    break;
                }
                merged.solutions.push(sol);
            }
        }
    }
    merged
}

fn naive_scan(sys: &EnSystem, radius: i64, collect: bool, cap: usize) -> RootRun {
    let model = Model::build(sys, radius, false);
    let eqs = &model.eqs;
    let n = model.n;
    let mut out = RootRun {
        solutions: Vec::new(),
        found_more: false,
        count: BigUint::zero(),
        max_norm: None,
    };
    let mut point = vec![-radius; n];
    'outer: loop {
        let ok = eqs.iter().all(|eq| match *eq {
            Eq::One(i) => point[i] == 1,
            Eq::Add(i, j, k) => point[i] as i128 + point[j] as i128 == point[k] as i128,
            Eq::Mul(i, j, k) => point[i] as i128 * point[j] as i128 == point[k] as i128,
        });
        if ok {
            out.count += BigUint::one();
            let norm = point.iter().map(|v| v.abs()).max().unwrap_or(0);
            out.max_norm = Some(out.max_norm.map_or(norm, |m: i64| m.max(norm)));
            if collect {
                if out.solutions.len() >= cap {
                    out.found_more = true;
                    break 'outer;
                }
                out.solutions.push(point.clone());
            }
        }
        // lexicographic successor
        let mut d = n;
        loop {
            if d == 0 {
                break 'outer;
            }
            d -= 1;
            if point[d] < radius {
                point[d] += 1;
                for p in point.iter_mut().skip(d + 1) {
                    *p = -radius;
                }
                break;
            }
        }
    }
    out
}

/// All solutions of `sys` in `[-radius, radius]^n`, lexicographically
/// sorted. If more than `opts.limit` exist, the `limit` first found are
/// kept (a deterministic subset) and `truncated` is set.
pub fn enumerate_box(sys: &EnSystem, radius: i64, opts: &SolveOptions) -> SolutionSet {
    assert!(
        (0..=MAX_RADIUS).contains(&radius),
        "box radius out of supported range"
    );
    let run = if opts.propagate {
        let model = Model::build(sys, radius, true);
        run_model(&model, opts.threads, true, opts.limit)
    } else {
        naive_scan(sys, radius, true, opts.limit)
    };
    let mut solutions = run.solutions;
    solutions.sort_unstable();
    solutions.dedup();
    let truncated = run.found_more;
    let count = if truncated {
        None
    } else {
        Some(BigUint::from(solutions.len()))
    };
    SolutionSet {
        n: sys.n(),
        box_radius: radius,
        solutions,
        truncated,
        count,
    }
}

/// Exact number of solutions in the box. Uses the constraint-graph
/// component decomposition: component counts multiply, and variables
/// outside every equation contribute `2B + 1` each.
pub fn count_solutions(sys: &EnSystem, radius: i64, opts: &SolveOptions) -> BigUint {
    solve_stats(sys, radius, opts).count
}

/// Count plus the largest coordinate magnitude over all solutions.
pub fn solve_stats(sys: &EnSystem, radius: i64, opts: &SolveOptions) -> SolveStats {
    assert!(
        (0..=MAX_RADIUS).contains(&radius),
        "box radius out of supported range"
    );
    if !opts.propagate {
        let run = naive_scan(sys, radius, false, 0);
        return SolveStats {
            count: run.count,
            max_norm: run.max_norm,
        };
    }
    let model = Model::build(sys, radius, true);
    let components = connected_components(model.n, &model.eqs);

    let mut count = BigUint::one();
    let mut max_norm: Option<i64> = Some(0);
    let mut loose_vars = 0usize;
    for comp in &components {
        if comp.eqs.is_empty() {
            loose_vars += comp.vars.len();
            continue;
        }
        let sub_eqs: Vec<Eq> = comp
            .eqs
            .iter()
            .map(|&ei| remap_eq(model.eqs[ei], &comp.var_index))
            .collect();
        let sub = Model::build_raw(comp.vars.len(), sub_eqs, radius, true);
        let run = run_model(&sub, opts.threads, false, 0);
        if run.count.is_zero() {
            return SolveStats {
                count: BigUint::zero(),
                max_norm: None,
            };
        }
        count *= run.count;
        max_norm = match (max_norm, run.max_norm) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    if loose_vars > 0 {
        let per_var = BigUint::from(2u64 * radius as u64 + 1);
        for _ in 0..loose_vars {
            count *= per_var.clone();
        }
        max_norm = max_norm.map(|m| m.max(radius));
    }
    if count.is_zero() {
        max_norm = None;
    }
    SolveStats { count, max_norm }
}

struct Component {
    vars: Vec<usize>,
    eqs: Vec<usize>,
    /// old var -> position in `vars`
    var_index: Vec<usize>,
}

fn connected_components(n: usize, eqs: &[Eq]) -> Vec<Component> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let root = find(parent, parent[v]);
            parent[v] = root;
        }
        parent[v]
    }
    for eq in eqs {
        let vars: Vec<usize> = match *eq {
            Eq::One(i) => vec![i],
            Eq::Add(i, j, k) | Eq::Mul(i, j, k) => vec![i, j, k],
        };
        for w in vars.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut order: Vec<usize> = roots.clone();
    order.sort_unstable();
    order.dedup();
    let mut comps: Vec<Component> = order
        .iter()
        .map(|_| Component {
            vars: Vec::new(),
            eqs: Vec::new(),
            var_index: vec![usize::MAX; n],
        })
        .collect();
    let comp_of = |r: usize| order.binary_search(&r).unwrap();
    for (v, &root) in roots.iter().enumerate() {
        let c = comp_of(root);
        comps[c].var_index[v] = comps[c].vars.len();
        comps[c].vars.push(v);
    }
    for (ei, eq) in eqs.iter().enumerate() {
        let v0 = match *eq {
            Eq::One(i) => i,
            Eq::Add(i, _, _) | Eq::Mul(i, _, _) => i,
        };
        comps[comp_of(roots[v0])].eqs.push(ei);
    }
    comps
}

fn remap_eq(eq: Eq, var_index: &[usize]) -> Eq {
    match eq {
        Eq::One(i) => Eq::One(var_index[i]),
        Eq::Add(i, j, k) => Eq::Add(var_index[i], var_index[j], var_index[k]),
        Eq::Mul(i, j, k) => Eq::Mul(var_index[i], var_index[j], var_index[k]),
    }
}
