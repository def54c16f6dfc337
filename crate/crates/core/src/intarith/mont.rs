//! Montgomery arithmetic for u64 and u128 moduli, with deterministic
//! Miller–Rabin and Brent-cycle Pollard rho built on top.

/// Full 128x128 -> 256 bit product, returned as (hi, lo).
#[inline]
fn mul_wide_128(a: u128, b: u128) -> (u128, u128) {
    const M64: u128 = (1u128 << 64) - 1;
    let (a1, a0) = (a >> 64, a & M64);
    let (b1, b0) = (b >> 64, b & M64);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;
    let (mid, mid_c) = lh.overflowing_add(hl);
    let (lo, lo_c) = ll.overflowing_add(mid << 64);
    let hi = hh
        .wrapping_add(mid >> 64)
        .wrapping_add((mid_c as u128) << 64)
        .wrapping_add(lo_c as u128);
    (hi, lo)
}

macro_rules! mont_impl {
    ($name:ident, $t:ty, $bits:expr, $mul_wide:expr) => {
        /// Montgomery context for an odd modulus below half the type range.
        #[derive(Clone, Copy)]
        pub struct $name {
            pub n: $t,
            ninv_neg: $t, // -n^{-1} mod 2^bits
            pub one: $t,  // R mod n
            r2: $t,       // R^2 mod n
        }

        impl $name {
            /// `n` must be odd and below 2^(bits-1).
            pub fn new(n: $t) -> Self {
                debug_assert!(n & 1 == 1 && n > 1);
                // Newton iteration for n^{-1} mod 2^bits; n*n == 1 mod 8 seeds 3 bits.
                let mut inv: $t = n;
                for _ in 0..6 {
                    inv = inv.wrapping_mul((2 as $t).wrapping_sub(n.wrapping_mul(inv)));
                }
                let one = (<$t>::MAX % n) + 1;
                let one = if one == n { 0 } else { one };
                let mut r2 = one;
                for _ in 0..$bits {
                    r2 = Self::add_mod(r2, r2, n);
                }
                Self { n, ninv_neg: inv.wrapping_neg(), one, r2 }
            }

            #[inline]
            fn add_mod(a: $t, b: $t, n: $t) -> $t {
                // a, b < n < 2^(bits-1): no overflow.
                let s = a + b;
                if s >= n { s - n } else { s }
            }

            #[inline]
            pub fn add(&self, a: $t, b: $t) -> $t {
                Self::add_mod(a, b, self.n)
            }

            #[inline]
            pub fn sub(&self, a: $t, b: $t) -> $t {
                if a >= b { a - b } else { a + (self.n - b) }
            }

            #[inline]
            fn redc(&self, hi: $t, lo: $t) -> $t {
                let m = lo.wrapping_mul(self.ninv_neg);
                let (mn_hi, mn_lo) = $mul_wide(m, self.n);
                let (_, carry) = lo.overflowing_add(mn_lo);
                let t = hi + mn_hi + carry as $t;
                if t >= self.n { t - self.n } else { t }
            }

            #[inline]
            pub fn mul(&self, a: $t, b: $t) -> $t {
                let (hi, lo) = $mul_wide(a, b);
                self.redc(hi, lo)
            }

            #[inline]
            pub fn to_mont(&self, x: $t) -> $t {
                self.mul(x % self.n, self.r2)
            }

            #[inline]
            pub fn from_mont(&self, x: $t) -> $t {
                self.redc(0, x)
            }

            pub fn pow(&self, base_mont: $t, mut e: $t) -> $t {
                let mut acc = self.one;
                let mut b = base_mont;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul(acc, b);
                    }
                    b = self.mul(b, b);
                    e >>= 1;
                }
                acc
            }
        }
    };
}

#[inline]
fn mul_wide_64(a: u64, b: u64) -> (u64, u64) {
    let p = (a as u128) * (b as u128);
    ((p >> 64) as u64, p as u64)
}

mont_impl!(Mont64, u64, 64, mul_wide_64);
mont_impl!(Mont128, u128, 128, mul_wide_128);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

macro_rules! mr_brent_impl {
    ($mr:ident, $brent:ident, $mont:ident, $t:ty) => {
        /// Strong pseudoprime test for odd `n > 2` against the given bases.
        /// A base divisible by `n` is skipped (counts as a pass).
        pub fn $mr(n: $t, bases: &[$t]) -> bool {
            debug_assert!(n > 2 && n & 1 == 1);
            let m = $mont::new(n);
            let d = n - 1;
            let s = d.trailing_zeros();
            let q = d >> s;
            'bases: for &b in bases {
                let b = b % n;
                if b == 0 {
                    continue;
                }
                let mut x = m.pow(m.to_mont(b), q);
                if x == m.one || x == m.sub(0, m.one) {
                    continue;
                }
                for _ in 1..s {
                    x = m.mul(x, x);
                    if x == m.sub(0, m.one) {
                        continue 'bases;
                    }
                }
                return false;
            }
            true
        }

        /// Brent-cycle Pollard rho. Returns a nontrivial factor of the odd
        /// composite `n`, or None once the iteration pool is exhausted.
        /// Deterministic: fixed start value and polynomial-shift schedule.
        pub fn $brent(n: $t, pool: &mut u64) -> Option<$t> {
            debug_assert!(n > 3 && n & 1 == 1);
            let m = $mont::new(n);
            let mut c_plain: $t = 1;
            while *pool > 0 {
                let c = m.to_mont(c_plain);
                let mut y = m.to_mont(2);
                let mut r: u64 = 1;
                let mut q = m.one;
                let mut g: u128 = 1;
                let mut x = y;
                let mut ys = y;
                'outer: while g == 1 {
                    x = y;
                    for _ in 0..r {
                        y = m.add(m.mul(y, y), c);
                    }
                    let mut k: u64 = 0;
                    while k < r && g == 1 {
                        ys = y;
                        let steps = 128.min(r - k);
                        if *pool < steps {
                            *pool = 0;
                            return None;
                        }
                        *pool -= steps;
                        for _ in 0..steps {
                            y = m.add(m.mul(y, y), c);
                            q = m.mul(q, m.sub(x, y));
                        }
                        g = gcd_u128(q as u128, n as u128);
                        k += steps;
                    }
                    r = r.saturating_mul(2);
                    if r > (1 << 40) {
                        break 'outer;
                    }
                }
                if g == n as u128 {
                    // Backtrack one step at a time from the last checkpoint.
                    g = 1;
                    while g == 1 {
                        if *pool == 0 {
                            return None;
                        }
                        *pool -= 1;
                        ys = m.add(m.mul(ys, ys), c);
                        g = gcd_u128(m.sub(x, ys) as u128, n as u128);
                    }
                }
                if g != 1 && g != n as u128 {
                    return Some(g as $t);
                }
                // Degenerate cycle for this c; move to the next shift.
                c_plain += 2;
            }
            None
        }
    };
}

mr_brent_impl!(miller_rabin_u64, brent_rho_u64, Mont64, u64);
mr_brent_impl!(miller_rabin_u128, brent_rho_u128, Mont128, u128);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_wide_128_matches_schoolbook() {
        let a = 0x0123_4567_89ab_cdef_fedc_ba98_7654_3210u128;
        let b = 0xdead_beef_cafe_babe_0bad_f00d_1234_5678u128;
        let (hi, lo) = mul_wide_128(a, b);
        // cross-check low half against wrapping product
        assert_eq!(lo, a.wrapping_mul(b));
        assert_ne!(hi, 0);
    }

    #[test]
    fn montgomery_roundtrip() {
        let m = Mont128::new(1_000_000_000_000_000_003u128);
        let x = 123_456_789_012_345u128;
        assert_eq!(m.from_mont(m.to_mont(x)), x);
        let a = m.to_mont(10u128.pow(17));
        let b = m.to_mont(999_999_937);
        let prod = m.from_mont(m.mul(a, b));
        assert_eq!(prod, (10u128.pow(17) * 999_999_937u128) % m.n);
    }

    #[test]
    fn brent_splits_semiprime() {
        let p = 1_000_003u128;
        let q = 998_244_353u128;
        let mut pool = 10_000_000u64;
        let d = brent_rho_u128(p * q, &mut pool).unwrap();
        assert!(d == p || d == q);
    }
}
