use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, PolyError, MAX_UNIVARIATE_DEGREE};

/// Exact determinant by fraction-free Bareiss elimination. Consumes the
/// matrix; every division along the way is exact over the integers.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Build the Sylvester matrix for coefficient vectors given in ascending
/// order with *formal* degrees (the vectors may carry zero leading slots).
/// Ascending layout agrees with the classical descending one: reversing
/// both rows and columns leaves the determinant unchanged.
pub(crate) fn sylvester_matrix(f: &[BigInt], g: &[BigInt], deg_f: usize, deg_g: usize) -> Vec<Vec<BigInt>> {
    let size = deg_f + deg_g;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for i in 0..deg_g {
        for (j, c) in f.iter().enumerate().take(deg_f + 1) {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..deg_f {
        for (j, c) in g.iter().enumerate().take(deg_g + 1) {
            m[deg_g + i][i + j] = c.clone();
        }
    }
    m
}

fn trimmed_degree(c: &[BigInt]) -> Option<usize> {
    c.iter().rposition(|x| !x.is_zero())
}

/// Resultant of two univariate polynomials in the same variable, as the
/// determinant of their Sylvester matrix. Zero iff they share a root over
/// the algebraic closure. Constant inputs follow the lc-power convention
/// Res(f, c) = c^(deg f).
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let var = match (f.sole_variable(), g.sole_variable()) {
        (Some(a), Some(b)) if a == b => a.to_string(),
        (Some(a), None) => a.to_string(),
        (None, Some(b)) => b.to_string(),
        (None, None) => return Err(PolyError::BothConstant),
        _ => return Err(PolyError::NotUnivariate),
    };
    let fc = f.univariate_coeffs(&var)?;
    let gc = g.univariate_coeffs(&var)?;
    resultant_from_coeffs(&fc, &gc)
}

/// Resultant from ascending coefficient vectors with exact degrees.
pub(crate) fn resultant_from_coeffs(fc: &[BigInt], gc: &[BigInt]) -> Result<BigInt, PolyError> {
    let df = trimmed_degree(fc).ok_or(PolyError::ZeroPolynomial)?;
    let dg = trimmed_degree(gc).ok_or(PolyError::ZeroPolynomial)?;
    if df + dg == 0 {
        return Err(PolyError::BothConstant);
    }
    if df as u32 > MAX_UNIVARIATE_DEGREE || dg as u32 > MAX_UNIVARIATE_DEGREE {
        return Err(PolyError::DegreeTooLarge(df.max(dg) as u32));
    }
    if df == 0 {
        return Ok(fc[0].pow(dg as u32));
    }
    if dg == 0 {
        return Ok(gc[0].pow(df as u32));
    }
    Ok(bareiss_det(sylvester_matrix(&fc[..=df], &gc[..=dg], df, dg)))
}

/// Discriminant of a univariate polynomial of degree n >= 2:
/// (-1)^(n(n-1)/2) Res(f, f') / lc(f).
pub fn discriminant(f: &IntPoly) -> Result<BigInt, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let var = f
        .sole_variable()
        .ok_or(PolyError::NotUnivariate)?
        .to_string();
    let fc = f.univariate_coeffs(&var)?;
    discriminant_from_coeffs(&fc)
}

pub(crate) fn discriminant_from_coeffs(fc: &[BigInt]) -> Result<BigInt, PolyError> {
    let n = trimmed_degree(fc).ok_or(PolyError::ZeroPolynomial)?;
    if n < 2 {
        return Err(PolyError::DegreeBelowMinimum(n as u32));
    }
    let deriv: Vec<BigInt> = (1..=n).map(|i| &fc[i] * BigInt::from(i)).collect();
    let res = resultant_from_coeffs(&fc[..=n], &deriv)?;
    let lc = &fc[n];
    let (q, r) = num_integer::Integer::div_rem(&res, lc);
    debug_assert!(r.is_zero(), "lc divides Res(f, f')");
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

#[allow(dead_code)]
pub(crate) fn abs_bigint(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn up(src: &str) -> IntPoly {
        parse_poly(src, &["x"]).unwrap()
    }

    #[test]
    fn resultant_examples() {
        // product-formula oracle: Res(x^2-1, x-2) = g(1) * g(-1) = (-1)(-3)
        assert_eq!(sylvester_resultant(&up("x^2 - 1"), &up("x - 2")).unwrap(), BigInt::from(3));
        // lc-power convention for constants: Res(x - 5, 7) = 7^1
        assert_eq!(sylvester_resultant(&up("x - 5"), &up("7")).unwrap(), BigInt::from(7));
        // Res(f, f') for f = x^3 + x + 1
        let f = up("x^3 + x + 1");
        assert_eq!(sylvester_resultant(&f, &f.derivative("x")).unwrap(), BigInt::from(31));
        // rejections
        assert_eq!(sylvester_resultant(&up("0"), &up("x")), Err(PolyError::ZeroPolynomial));
        assert_eq!(sylvester_resultant(&up("3"), &up("5")), Err(PolyError::BothConstant));
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + bx + c -> b^2 - 4c at (1,1)
        assert_eq!(discriminant(&up("x^2 + x + 1")).unwrap(), BigInt::from(-3));
        // classical cubic: -4a^3 - 27b^2 at a = b = 1
        assert_eq!(discriminant(&up("x^3 + x + 1")).unwrap(), BigInt::from(-31));
        assert_eq!(discriminant(&up("x + 1")), Err(PolyError::DegreeBelowMinimum(1)));
    }

    #[test]
    fn discriminant_of_qm_sextic_at_t1() {
        // (x^2+2x-2)(x^4+4x^3-6x+3): specialization of the QM family at t = 1
        let f = up("(x^2 + 2*x - 2) * (x^4 + 4*x^3 - 6*x + 3)");
        assert_eq!(discriminant(&f).unwrap(), BigInt::from(-419_904));
    }

    // Independent oracle for gcd-nonconstant detection: monic Euclid over Q
    // realized with exact integer pseudo-remainders.
    fn gcd_nonconstant(f: &[BigInt], g: &[BigInt]) -> bool {
        fn deg(c: &[BigInt]) -> Option<usize> {
            c.iter().rposition(|x| !x.is_zero())
        }
        let (mut a, mut b) = (f.to_vec(), g.to_vec());
        loop {
            let (Some(da), Some(db)) = (deg(&a), deg(&b)) else {
                // one side vanished; gcd is the other
                return match (deg(&a), deg(&b)) {
                    (Some(d), None) | (None, Some(d)) => d >= 1,
                    _ => false,
                };
            };
            if da < db {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            if db == 0 {
                return false; // gcd divides a nonzero constant
            }
            // pseudo-remainder: lc(b)^(da-db+1) * a mod b
            let lb = b[db].clone();
            let mut r = a.clone();
            for c in r.iter_mut() {
                *c *= lb.pow((da - db + 1) as u32);
            }
            for k in (db..=da).rev() {
                if r[k].is_zero() {
                    continue;
                }
                let q = &r[k] / &b[db];
                for j in 0..=db {
                    let t = &q * &b[j];
                    r[k - db + j] -= t;
                }
            }
            a = b;
            b = r;
        }
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<BigInt>> {
        proptest::collection::vec(-6i64..=6, 1..=max_deg + 1)
            .prop_map(|v| v.into_iter().map(BigInt::from).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn resultant_is_multiplicative(f in poly_strategy(5), g in poly_strategy(5), h in poly_strategy(5)) {
            let nonzero = |c: &[BigInt]| c.iter().any(|x| !x.is_zero());
            prop_assume!(nonzero(&f) && nonzero(&g) && nonzero(&h));
            let mul = |a: &[BigInt], b: &[BigInt]| {
                let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                out
            };
            let gh = mul(&g, &h);
            let lhs = resultant_from_coeffs(&f, &gh);
            let rhs: Result<BigInt, PolyError> =
                match (resultant_from_coeffs(&f, &g), resultant_from_coeffs(&f, &h)) {
                    (Ok(a), Ok(b)) => Ok(a * b),
                    _ => return Ok(()), // a constant/constant pairing; skip
                };
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                prop_assert_eq!(l, r);
            }
        }

        #[test]
        fn resultant_vanishes_iff_common_root(f in poly_strategy(5), g in poly_strategy(5)) {
            let nonzero = |c: &[BigInt]| c.iter().any(|x| !x.is_zero());
            prop_assume!(nonzero(&f) && nonzero(&g));
            let df = f.iter().rposition(|x| !x.is_zero()).unwrap();
            let dg = g.iter().rposition(|x| !x.is_zero()).unwrap();
            prop_assume!(df + dg >= 1);
            let res = resultant_from_coeffs(&f, &g).unwrap();
            prop_assert_eq!(res.is_zero(), gcd_nonconstant(&f, &g));
        }

        #[test]
        fn discriminant_vanishes_iff_repeated_root(f in poly_strategy(8)) {
            let Some(n) = f.iter().rposition(|x| !x.is_zero()) else { return Ok(()); };
            prop_assume!(n >= 2);
            let disc = discriminant_from_coeffs(&f).unwrap();
            let deriv: Vec<BigInt> = (1..=n).map(|i| &f[i] * BigInt::from(i)).collect();
            prop_assert_eq!(disc.is_zero(), gcd_nonconstant(&f, &deriv));
        }
    }
}
