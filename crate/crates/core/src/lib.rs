//! Exact-arithmetic laboratory for primes of bad semistable reduction in
//! families of hyperelliptic and plane curves.
//!
//! The crate classifies, prime by prime, how a curve specialized from a
//! parameterized family degenerates modulo p (good / minimally bad /
//! bad semistable nodal / unknown), and runs desk-scale statistics on the
//! counts of such primes: Erdős–Kac normalization, Kolmogorov–Smirnov
//! distance to the standard normal, moments, threshold proportions, and
//! residue-class density checks.
//!
//! Everything algebraic is exact: big-integer discriminants and resultants
//! (Sylvester and Macaulay), finite-field factorization for reduction-type
//! analysis, and p-adic valuations. Floating point appears only in the
//! statistics layer.

pub mod family;
pub mod intarith;
pub mod macaulay;
pub mod poly;
pub mod reduction;
pub mod stats;

pub use intarith::{factorize, is_prime, valuation, Factorization};
