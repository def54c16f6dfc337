//! Arbitrary-precision primality, factorization, and p-adic valuations.
//!
//! This is the exact substrate for every divisibility question downstream:
//! which primes divide a discriminant, and to which power. Factorization is
//! total — effort is bounded by a budget and anything that survives it is
//! returned as an explicit composite `residual`, never an error.

mod mont;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use mont::{brent_rho_u128, brent_rho_u64, miller_rabin_u128, miller_rabin_u64};

/// Trial division bound: every prime below this is pulled out before the
/// residual may be declared.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// Default Pollard-rho/Brent iteration cap per composite cofactor.
pub const RHO_ITERATIONS: u64 = 10_000_000;

/// First stage of trial division; cheap, the rest is left to rho, and the
/// full bound is only enforced on the rare rho-failure path so the residual
/// invariant still holds.
const STAGE1_BOUND: u64 = 8192;

/// Deterministic Miller-Rabin witness bound: first 13 primes suffice below
/// 3,317,044,064,679,887,385,961,981 (~3.3e24).
const MR13_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const MR13_BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic for all n < 2^64.
const MR64_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

fn sieve_primes() -> &'static Vec<u32> {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut is_comp = vec![false; n + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !is_comp[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    is_comp[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Effort budget for [`factorize_with`]. The defaults implement the
/// desk-scale policy: trial division to 10^6 and 10^7 rho iterations per
/// cofactor.
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self { trial_bound: TRIAL_BOUND, rho_iterations: RHO_ITERATIONS }
    }
}

/// Prime decomposition of a nonzero integer.
///
/// `sign * residual * prod(p^e)` reconstructs the input exactly. Primes are
/// strictly increasing and each passes [`is_prime`]; `residual` is 1 when
/// the factorization is complete, otherwise a composite cofactor above the
/// trial-division bound that the effort budget could not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigUint, u32)>,
    pub residual: BigUint,
}

impl Factorization {
    pub fn reconstruct(&self) -> BigInt {
        let mut acc = self.residual.clone();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        let acc = BigInt::from(acc);
        if self.sign < 0 {
            -acc
        } else {
            acc
        }
    }

    pub fn is_complete(&self) -> bool {
        self.residual.is_one()
    }

    /// Exponent of `p` among the listed factors (0 if absent).
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < (1 << 63) {
        miller_rabin_u64(n, &MR64_BASES)
    } else {
        // Montgomery contexts need the modulus below half the type range.
        miller_rabin_u128(n as u128, &MR13_BASES)
    }
}

fn is_prime_u128(n: u128) -> bool {
    if n <= u64::MAX as u128 {
        return is_prime_u64(n as u64);
    }
    for &p in MR13_BASES.iter() {
        if n % p == 0 {
            return false;
        }
    }
    if !miller_rabin_u128(n, &MR13_BASES) {
        return false;
    }
    if n < MR13_LIMIT {
        return true;
    }
    // Beyond the deterministic range: extra bases derived from n itself,
    // error < 4^-64. Stays a pure function of n.
    let extra = derived_bases(n as u64 ^ (n >> 64) as u64 ^ 0x9e37_79b9_7f4a_7c15);
    miller_rabin_u128(n, &extra)
}

fn derived_bases(seed: u64) -> [u128; 64] {
    // splitmix64 stream; bases only need to be "arbitrary", not uniform.
    let mut s = seed;
    let mut out = [0u128; 64];
    for slot in out.iter_mut() {
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        *slot = (z as u128) | 2;
    }
    out
}

/// Primality test: deterministic below ~3.3e24, otherwise Miller-Rabin with
/// error below 2^-128 (bases derived deterministically from n).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(m) = n.to_u128() {
        if m < (1 << 127) {
            return is_prime_u128(m);
        }
    }
    is_prime_big(n)
}

fn is_prime_big(n: &BigUint) -> bool {
    for &p in MR13_BASES.iter() {
        let p = BigUint::from(p);
        if (n % &p).is_zero() {
            return n == &p;
        }
    }
    let seed = n.iter_u64_digits().fold(0u64, |a, d| a.rotate_left(21) ^ d);
    let extra = derived_bases(seed);
    let bases = MR13_BASES.iter().copied().chain(extra.iter().copied());

    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let q = &nm1 >> s;
    'bases: for b in bases {
        let b = BigUint::from(b) % n;
        if b.is_zero() {
            continue;
        }
        let mut x = b.modpow(&q, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Factorize with the default budget.
pub fn factorize(n: &BigInt) -> Factorization {
    factorize_with(n, &FactorBudget::default())
}

/// Factorize a nonzero integer. Never fails: cofactors surviving the budget
/// are multiplied into `residual` after the full trial-division bound has
/// certified they carry no small prime.
pub fn factorize_with(n: &BigInt, budget: &FactorBudget) -> Factorization {
    assert!(!n.is_zero(), "factorize: input must be nonzero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    let mut residual = BigUint::one();

    if m.is_one() {
        return Factorization { sign, factors: found, residual };
    }

    // Stage 1: small trial division.
    let stage1 = STAGE1_BOUND.min(budget.trial_bound);
    if let Some(v) = m.to_u128() {
        let mut v = v;
        for &p in sieve_primes().iter().take_while(|&&p| (p as u64) <= stage1) {
            let p = p as u128;
            if p * p > v {
                break;
            }
            let mut e = 0u32;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                found.push((BigUint::from(p), e));
            }
        }
        m = BigUint::from(v);
    } else {
        for &p in sieve_primes().iter().take_while(|&&p| (p as u64) <= stage1) {
            let pb = BigUint::from(p);
            let mut e = 0u32;
            while (&m % &pb).is_zero() {
                m /= &pb;
                e += 1;
            }
            if e > 0 {
                found.push((pb, e));
            }
        }
    }

    // Stage 2: split the remaining cofactor(s).
    if !m.is_one() {
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if let Some(v) = c.to_u128() {
                if v < (1 << 127) {
                    factor_u128_into(v, budget, &mut found, &mut residual);
                    continue;
                }
            }
            if is_prime_big(&c) {
                push_factor(&mut found, c, 1);
                continue;
            }
            match rho_big(&c, budget.rho_iterations) {
                Some(d) => {
                    stack.push(&c / &d);
                    stack.push(d);
                }
                None => absorb_residual(&c, budget, &mut found, &mut residual),
            }
        }
    }

    found.sort_by(|a, b| a.0.cmp(&b.0));
    // Merge equal primes produced by independent splits.
    let mut factors: Vec<(BigUint, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        match factors.last_mut() {
            Some((q, acc)) if *q == p => *acc += e,
            _ => factors.push((p, e)),
        }
    }
    Factorization { sign, factors, residual }
}

fn push_factor(found: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    found.push((p, e));
}

fn factor_u128_into(
    n: u128,
    budget: &FactorBudget,
    found: &mut Vec<(BigUint, u32)>,
    residual: &mut BigUint,
) {
    let mut stack = vec![n];
    while let Some(c) = stack.pop() {
        if c == 1 {
            continue;
        }
        if c & 1 == 0 {
            let e = c.trailing_zeros();
            found.push((BigUint::from(2u32), e));
            stack.push(c >> e);
            continue;
        }
        // No factor below STAGE1_BOUND survives stage 1, so anything below
        // its square is prime.
        if c < (STAGE1_BOUND as u128) * (STAGE1_BOUND as u128) || is_prime_u128(c) {
            push_factor(found, BigUint::from(c), 1);
            continue;
        }
        let mut pool = budget.rho_iterations;
        let split = if c < (1 << 63) {
            brent_rho_u64(c as u64, &mut pool).map(|d| d as u128)
        } else {
            brent_rho_u128(c, &mut pool)
        };
        match split {
            Some(d) => {
                stack.push(c / d);
                stack.push(d);
            }
            None => absorb_residual(&BigUint::from(c), budget, found, residual),
        }
    }
}

/// Rho gave up on this composite: run the full trial division bound so the
/// residual invariant (no prime factor below `trial_bound`) holds, then fold
/// what remains into the residual.
fn absorb_residual(
    c: &BigUint,
    budget: &FactorBudget,
    found: &mut Vec<(BigUint, u32)>,
    residual: &mut BigUint,
) {
    let mut m = c.clone();
    for &p in sieve_primes().iter().take_while(|&&p| (p as u64) <= budget.trial_bound) {
        if (p as u64) <= STAGE1_BOUND.min(budget.trial_bound) {
            continue; // already removed in stage 1
        }
        let pb = BigUint::from(p);
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            push_factor(found, pb, e);
        }
    }
    if m.is_one() {
        return;
    }
    if is_prime(&m) {
        push_factor(found, m, 1);
    } else {
        *residual *= m;
    }
}

fn rho_big(n: &BigUint, iterations: u64) -> Option<BigUint> {
    // Plain Pollard rho with Brent cycle detection over BigUint; only
    // reached for inputs of 128 bits and more.
    let mut c = BigUint::from(1u32);
    let mut pool = iterations;
    while pool > 0 {
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = 128.min(r - k);
                if pool < steps {
                    return None;
                }
                pool -= steps;
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r = r.saturating_mul(2);
        }
        if &g == n {
            g = BigUint::one();
            while g.is_one() {
                if pool == 0 {
                    return None;
                }
                pool -= 1;
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
        c += 2u32;
    }
    None
}

/// Largest e with p^e dividing n.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    assert!(!n.is_zero(), "valuation: input must be nonzero");
    let p = BigInt::from(p.clone());
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}
