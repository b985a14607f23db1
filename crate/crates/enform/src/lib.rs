//! Compile Diophantine equations into single-operation constraint systems,
//! compute the associated double-exponential height bounds exactly, and
//! solve the systems over boxed integer domains.
//!
//! The library is organized around one canonical form: a system `S ⊆ E_n`
//! of equations drawn from
//!
//! ```text
//! E_n = { x_i = 1,  x_i + x_j = x_k,  x_i · x_j = x_k : i, j, k ∈ {1..n} }
//! ```
//!
//! together with the conjectural cap `2^(2^(n-1))` on the coordinates of
//! solutions of systems that have only finitely many of them.
//!
//! Module map:
//!
//! - [`poly`] — sparse multivariate polynomials over big integers, the
//!   equation parser, and a bounded search for integer zeros.
//! - [`ensys`] — the `E_n` system types and the boxed solver with
//!   constraint propagation.
//! - [`lower`] — compilers from polynomial equations to `E_n` systems:
//!   the exhaustive family construction, the compact three-address
//!   lowering, and the value-chain / non-negativity gadgets.
//! - [`transforms`] — solution-set transforms (tilde, hat, rational
//!   encoding) and small witness finders (four squares, bounded Bézout).
//! - [`bounds`] — exact arithmetic on `2^(2^k)` tower bounds and the
//!   computable bound pipelines for integer, non-negative and rational
//!   solutions.
//! - [`pell`] — continued-fraction Pell solving and the square witness
//!   generators behind the large-solution constructions.
//! - [`explorer`] — probes of the conjecture's reformulation, surveys of
//!   small system space, and the bounded semi-algorithm for "infinitely
//!   many solutions".
//! - [`gallery`] — the explicit constructions: the doubling chain, the
//!   1156-solution family, the 21-variable Pell system, and the quintic
//!   worked example.
//! - [`cli`] — the `enform` command-line front end.
//!
//! Every computation is exact; no floating point enters any result.
//! See the crate examples for runnable tours of each capability.

pub mod bounds;
pub mod cli;
pub mod ensys;
pub mod explorer;
pub mod gallery;
pub mod lower;
pub mod pell;
pub mod poly;
pub mod transforms;

pub(crate) mod rng;

pub use ensys::{EnEquation, EnSystem, SolutionSet};
pub use poly::{Polynomial, PolyEquation};
