//! Bounded search for integer zeros of polynomial systems.
//!
//! `solve_box` enumerates the closed box `[-B, B]^n` in lexicographic
//! order, assigning one variable at a time and pruning with exact interval
//! arithmetic: after each partial assignment, every polynomial is bounded
//! below and above with the unassigned variables ranging over `[-B, B]`;
//! a polynomial whose interval excludes zero kills the branch. Intervals
//! are computed in `i128`; on overflow the bound is dropped (no pruning)
//! and leaf checks fall back to exact `BigInt` evaluation.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSolutions {
    pub solutions: Vec<Vec<i64>>,
    pub truncated: bool,
}

#[derive(Clone, Copy)]
struct Interval {
    lo: i128,
    hi: i128,
}

fn add(a: Option<Interval>, b: Option<Interval>) -> Option<Interval> {
    let (a, b) = (a?, b?);
    Some(Interval {
        lo: a.lo.checked_add(b.lo)?,
        hi: a.hi.checked_add(b.hi)?,
    })
}

fn mul(a: Option<Interval>, b: Option<Interval>) -> Option<Interval> {
    let (a, b) = (a?, b?);
    let mut lo = i128::MAX;
    let mut hi = i128::MIN;
    for x in [a.lo, a.hi] {
        for y in [b.lo, b.hi] {
            let v = x.checked_mul(y)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    Some(Interval { lo, hi })
}

/// `x^e` over `x ∈ [-B, B]`.
fn pow_range(radius: i64, e: u32) -> Option<Interval> {
    let b = radius as i128;
    let mut p: i128 = 1;
    for _ in 0..e {
        p = p.checked_mul(b)?;
    }
    if e.is_multiple_of(2) {
        Some(Interval { lo: 0, hi: p })
    } else {
        Some(Interval { lo: -p, hi: p })
    }
}

fn pow_exact(v: i64, e: u32) -> Option<i128> {
    let mut p: i128 = 1;
    for _ in 0..e {
        p = p.checked_mul(v as i128)?;
    }
    Some(p)
}

struct Term {
    coeff: Option<i128>,
    exps: Vec<u32>,
}

struct Searcher<'a> {
    polys: &'a [Polynomial],
    terms: Vec<Vec<Term>>,
    radius: i64,
    limit: usize,
    assignment: Vec<i64>,
    out: Vec<Vec<i64>>,
    truncated: bool,
}

impl<'a> Searcher<'a> {
    /// Interval of polynomial `pi` with variables `0..depth` fixed.
    fn bound(&self, pi: usize, depth: usize) -> Option<Interval> {
        let mut acc = Some(Interval { lo: 0, hi: 0 });
        for term in &self.terms[pi] {
            let mut t = term.coeff.map(|c| Interval { lo: c, hi: c });
            for (i, &e) in term.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = if i < depth {
                    pow_exact(self.assignment[i], e).map(|v| Interval { lo: v, hi: v })
                } else {
                    pow_range(self.radius, e)
                };
                t = mul(t, factor);
            }
            acc = add(acc, t);
        }
        acc
    }

    fn leaf_is_solution(&self) -> bool {
        let point: Vec<BigInt> = self.assignment.iter().map(|&v| BigInt::from(v)).collect();
        self.polys
            .iter()
            .all(|p| p.evaluate(&point).unwrap().is_zero())
    }

    fn search(&mut self, depth: usize) {
        if self.truncated {
            return;
        }
        for pi in 0..self.terms.len() {
            if let Some(iv) = self.bound(pi, depth) {
                if iv.lo > 0 || iv.hi < 0 {
                    return;
                }
            }
        }
        if depth == self.assignment.len() {
            if self.leaf_is_solution() {
                if self.out.len() >= self.limit {
                    self.truncated = true;
                } else {
                    self.out.push(self.assignment.clone());
                }
            }
            return;
        }
        for v in -self.radius..=self.radius {
            self.assignment[depth] = v;
            self.search(depth + 1);
            if self.truncated {
                return;
            }
        }
    }
}

/// All integer zeros common to `polys` in `[-radius, radius]^num_vars`,
/// lexicographically sorted. If more than `limit` exist, the result holds
/// the `limit` lexicographically smallest and `truncated` is set.
pub fn solve_box(
    polys: &[Polynomial],
    num_vars: usize,
    radius: i64,
    limit: usize,
) -> BoxSolutions {
    assert!(radius >= 0);
    for p in polys {
        assert!(
            p.num_vars() <= num_vars,
            "polynomial over {} vars searched over {}",
            p.num_vars(),
            num_vars
        );
    }
    let polys_ext: Vec<Polynomial> = polys.iter().map(|p| p.extend_vars(num_vars)).collect();
    let terms: Vec<Vec<Term>> = polys_ext
        .iter()
        .map(|p| {
            p.terms()
                .map(|(e, c)| Term {
                    coeff: c.to_i128(),
                    exps: e.to_vec(),
                })
                .collect()
        })
        .collect();
    let mut s = Searcher {
        polys: &polys_ext,
        terms,
        radius,
        limit,
        assignment: vec![0; num_vars],
        out: Vec::new(),
        truncated: false,
    };
    if num_vars == 0 {
        let ok = polys_ext.iter().all(|p| p.evaluate(&[]).unwrap().is_zero());
        return BoxSolutions {
            solutions: if ok { vec![vec![]] } else { vec![] },
            truncated: false,
        };
    }
    s.search(0);
    BoxSolutions {
        solutions: s.out,
        truncated: s.truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn circle_points() {
        // x1^2 + x2^2 = 25
        let p = parse_polynomial("x1^2 + x2^2 - 25").unwrap();
        let r = solve_box(&[p], 2, 6, 1000);
        assert!(!r.truncated);
        assert_eq!(
            r.solutions,
            vec![
                vec![-5, 0],
                vec![-4, -3],
                vec![-4, 3],
                vec![-3, -4],
                vec![-3, 4],
                vec![0, -5],
                vec![0, 5],
                vec![3, -4],
                vec![3, 4],
                vec![4, -3],
                vec![4, 3],
                vec![5, 0],
            ]
        );
    }

    #[test]
    fn system_intersection() {
        let a = parse_polynomial("x1 - x2").unwrap();
        let b = parse_polynomial("x1*x2 - 4").unwrap();
        let r = solve_box(&[a, b], 2, 10, 1000);
        assert_eq!(r.solutions, vec![vec![-2, -2], vec![2, 2]]);
    }

    #[test]
    fn agrees_with_naive_scan() {
        let p = parse_polynomial("x1^2 - x2^3 + x3 - 1").unwrap();
        let fast = solve_box(std::slice::from_ref(&p), 3, 4, 100000);
        let mut naive = Vec::new();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                for z in -4i64..=4 {
                    let pt = [BigInt::from(x), BigInt::from(y), BigInt::from(z)];
                    if p.evaluate(&pt).unwrap().is_zero() {
                        naive.push(vec![x, y, z]);
                    }
                }
            }
        }
        assert_eq!(fast.solutions, naive);
    }

    #[test]
    fn truncation_keeps_lex_least() {
        // x1 = x1 is satisfied everywhere; 5 solutions in [-3,3] wanted.
        let zero = Polynomial::zero(1);
        let r = solve_box(&[zero], 1, 3, 5);
        assert!(r.truncated);
        assert_eq!(r.solutions, vec![vec![-3], vec![-2], vec![-1], vec![0], vec![1]]);
    }

    #[test]
    fn unsatisfiable_is_empty() {
        let p = parse_polynomial("x1^2 + 1").unwrap();
        let r = solve_box(&[p], 1, 50, 10);
        assert!(r.solutions.is_empty());
        assert!(!r.truncated);
    }
}
