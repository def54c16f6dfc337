use num_bigint::BigInt;
use num_traits::Zero;

use super::resultant::{discriminant_from_coeffs, sylvester_matrix};
use super::{IntPoly, PolyError, MAX_UNIVARIATE_DEGREE};

/// Homogeneous binary form of fixed formal degree: coeffs[i] is the
/// coefficient of x^i z^(degree-i). The formal degree matters — the curve
/// y^2 = f(x,z) keeps its points at infinity even when specialization
/// kills the leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    pub coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(degree: u32, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1);
        Self { degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree in x, i.e. the largest i with a nonzero coefficient.
    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|d| d as u32)
    }

    /// Multiplicity of the root at infinity (the power of z dividing the form).
    pub fn infinity_multiplicity(&self) -> Option<u32> {
        self.x_degree().map(|d| self.degree - d)
    }

    /// Coefficients of f(x, 1), ascending, trimmed to the x-degree.
    pub fn dehomogenized(&self) -> Vec<BigInt> {
        match self.x_degree() {
            Some(d) => self.coeffs[..=d as usize].to_vec(),
            None => vec![],
        }
    }

    pub fn evaluate(&self, x: &BigInt, z: &BigInt) -> BigInt {
        let n = self.degree;
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * x.pow(i as u32) * z.pow(n - i as u32);
        }
        acc
    }

    /// Coefficients reduced into [0, p), ascending.
    pub fn coeffs_mod_p(&self, p: u64) -> Vec<u64> {
        self.coeffs
            .iter()
            .map(|c| {
                use num_traits::ToPrimitive;
                (c % BigInt::from(p)).to_i64().unwrap().rem_euclid(p as i64) as u64
            })
            .collect()
    }

    /// Discriminant of the form in its formal degree N. Classical
    /// degeneration rules handle a vanishing leading block:
    /// z^2 | F gives 0, and disc_N(z*G) = lc(G)^2 * disc_(N-1)(G).
    /// The base case is the univariate (-1)^(N(N-1)/2) Res(f, f')/lc(f).
    pub fn discriminant(&self) -> Result<BigInt, PolyError> {
        let Some(d) = self.x_degree() else {
            return Err(PolyError::ZeroPolynomial);
        };
        if self.degree > MAX_UNIVARIATE_DEGREE {
            return Err(PolyError::DegreeTooLarge(self.degree));
        }
        let k = self.degree - d;
        if k >= 2 {
            return Ok(BigInt::zero());
        }
        let f = &self.coeffs[..=d as usize];
        if k == 1 {
            let lc = &f[d as usize];
            let inner = disc_formal(f, d)?;
            return Ok(lc * lc * inner);
        }
        disc_formal(f, d)
    }
}

/// Discriminant of an exact-degree-n coefficient vector, extended to the
/// degenerate conventions disc = 1 for n <= 1 (single or no root).
fn disc_formal(f: &[BigInt], n: u32) -> Result<BigInt, PolyError> {
    if n <= 1 {
        return Ok(BigInt::from(1));
    }
    discriminant_from_coeffs(f)
}

/// Homogenize a univariate polynomial to a binary form of the given formal
/// degree; evaluating at z = 1 recovers the input.
pub fn homogenize_binary(f: &IntPoly, target_degree: u32) -> Result<BinaryForm, PolyError> {
    let var = match f.sole_variable() {
        Some(v) => v.to_string(),
        None => {
            // constant polynomial: fine for any target degree
            if f.is_zero() {
                let coeffs = vec![BigInt::zero(); target_degree as usize + 1];
                return Ok(BinaryForm::new(target_degree, coeffs));
            }
            let c = f.evaluate(&vec![BigInt::zero(); f.vars().len()]);
            let mut coeffs = vec![BigInt::zero(); target_degree as usize + 1];
            coeffs[0] = c;
            return Ok(BinaryForm::new(target_degree, coeffs));
        }
    };
    let fc = f.univariate_coeffs(&var)?;
    let deg = fc.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as u32;
    if deg > target_degree {
        return Err(PolyError::TargetDegreeTooSmall { target: target_degree, actual: deg });
    }
    let mut coeffs = vec![BigInt::zero(); target_degree as usize + 1];
    for (i, c) in fc.into_iter().enumerate() {
        coeffs[i] = c;
    }
    Ok(BinaryForm::new(target_degree, coeffs))
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a not divisible by p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] % p != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(k, piv);
            det = (p - det) % p;
        }
        let inv = mod_inv(m[k][k], p);
        det = det * (m[k][k] % p) % p;
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let f = m[i][k] * inv % p;
            for j in k..n {
                let sub = f * m[k][j] % p;
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
    }
    det
}

/// Discriminant of a binary form over F_p from ascending coefficients of
/// formal degree = coeffs.len() - 1. Mirrors [`BinaryForm::discriminant`]
/// through the same universal-polynomial identities, so it equals the
/// integer discriminant reduced mod p. Requires p < 2^31.
pub fn binary_disc_mod_p(coeffs: &[u64], p: u64) -> Option<u64> {
    assert!(p >= 2 && p < (1 << 31));
    let n = (coeffs.len() - 1) as u32;
    let cs: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
    let d = cs.iter().rposition(|&c| c != 0)? as u32;
    let k = n - d;
    if k >= 2 {
        return Some(0);
    }
    let mut acc = 1u64;
    if k == 1 {
        let lc = cs[d as usize];
        acc = lc * lc % p;
    }
    Some(acc * disc_formal_mod_p(&cs[..=d as usize], d, p) % p)
}

fn disc_formal_mod_p(f: &[u64], n: u32, p: u64) -> u64 {
    if n <= 1 {
        return 1;
    }
    // Formal Sylvester matrix of (f, f') with degrees (n, n-1): the
    // derivative's leading slot n*lc may vanish mod p, which is exactly why
    // the formal layout is required here.
    let n = n as usize;
    let deriv: Vec<u64> = (1..=n).map(|i| (i as u64 % p) * (f[i] % p) % p).collect();
    let fb: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let db: Vec<BigInt> = deriv.iter().map(|&c| BigInt::from(c)).collect();
    let m = sylvester_matrix(&fb, &db, n, n - 1);
    let m: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    use num_traits::ToPrimitive;
                    c.to_u64().unwrap() % p
                })
                .collect()
        })
        .collect();
    let det = det_mod_p(m, p);
    let res = det * mod_inv(f[n], p) % p;
    if (n * (n - 1) / 2) % 2 == 1 {
        (p - res) % p
    } else {
        res
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn up(src: &str) -> IntPoly {
        parse_poly(src, &["x"]).unwrap()
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn homogenize_examples() {
        // x^2 + 1 at target 2 -> x^2 + z^2
        let f = homogenize_binary(&up("x^2 + 1"), 2).unwrap();
        assert_eq!(f.coeffs, vec![bi(1), bi(0), bi(1)]);
        // x^3 + x + 1 at target 4 -> x^3 z + x z^3 + z^4
        let f = homogenize_binary(&up("x^3 + x + 1"), 4).unwrap();
        assert_eq!(f.coeffs, vec![bi(1), bi(1), bi(0), bi(1), bi(0)]);
        assert_eq!(f.dehomogenized(), vec![bi(1), bi(1), bi(0), bi(1)]);
        // x^3 + 2 at target 8 -> x^3 z^5 + 2 z^8
        let f = homogenize_binary(&up("x^3 + 2"), 8).unwrap();
        assert_eq!(f.infinity_multiplicity(), Some(5));
        assert_eq!(f.evaluate(&bi(1), &bi(1)), bi(3));
        // rejection
        assert!(matches!(
            homogenize_binary(&up("x^3 + 2"), 2),
            Err(PolyError::TargetDegreeTooSmall { .. })
        ));
    }

    #[test]
    fn binary_disc_handles_degenerate_leading_block() {
        // formal quartic with a4 = 0: disc_4 = a3^2 * disc_3
        let f = homogenize_binary(&up("x^3 + x + 1"), 4).unwrap();
        assert_eq!(f.discriminant().unwrap(), bi(-31));
        let g = homogenize_binary(&up("2*x^3 + x + 1"), 4).unwrap();
        let inner = discriminant_from_coeffs(&[bi(1), bi(1), bi(0), bi(2)]).unwrap();
        assert_eq!(g.discriminant().unwrap(), bi(4) * inner);
        // z^2 divides: disc = 0
        let h = homogenize_binary(&up("x^2 + 1"), 4).unwrap();
        assert_eq!(h.discriminant().unwrap(), bi(0));
        // nondegenerate quartic agrees with the univariate discriminant
        let q = homogenize_binary(&up("x^4 + x + 1"), 4).unwrap();
        assert_eq!(q.discriminant().unwrap(), discriminant_from_coeffs(&q.coeffs).unwrap());
    }

    #[test]
    fn isotrivial_disc_through_binary_convention() {
        // y^2 = x^l + t at t0: disc of the formal degree-(l+1) form equals
        // +-l^l t0^(l-1)
        for (l, t0) in [(3u32, 2i64), (5, 3), (7, -2)] {
            let poly = parse_poly(&format!("x^{l} + {t0}"), &["x"]).unwrap();
            let form = homogenize_binary(&poly, l + 1).unwrap();
            let disc = form.discriminant().unwrap();
            let expect = BigInt::from(l as i64).pow(l) * bi(t0).pow(l - 1);
            assert_eq!(
                disc.magnitude(),
                expect.magnitude(),
                "l = {l}, t0 = {t0}: got {disc}, want +-{expect}"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        // The mod-p twin computes the reduction of the exact discriminant.
        #[test]
        fn mod_p_disc_matches_exact(coeffs in proptest::collection::vec(-30i64..=30, 3..=8), pidx in 0usize..4) {
            let p: u64 = [5, 7, 101, 65521][pidx];
            let cs: Vec<BigInt> = coeffs.iter().map(|&c| bi(c)).collect();
            let form = BinaryForm::new(cs.len() as u32 - 1, cs);
            let exact = match form.discriminant() {
                Ok(d) => d,
                Err(_) => return Ok(()), // zero form
            };
            let expect = {
                use num_traits::ToPrimitive;
                (exact % BigInt::from(p)).to_i64().unwrap().rem_euclid(p as i64) as u64
            };
            let modp = binary_disc_mod_p(&form.coeffs_mod_p(p), p);
            // the mod-p x-degree may drop below the exact one; both paths
            // still evaluate the same universal polynomial
            prop_assert_eq!(modp.unwrap_or(0), expect);
        }
    }
}
