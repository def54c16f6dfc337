//! Macaulay resultant of three ternary forms, and the plane-curve
//! operators built from it: the Hessian 2x2 minor H_xy, the discriminant
//! proxy D(f) = Res(f_x, f_y, f_z), and the transversality resultant
//! R(f) = Res(H_xy, f_x, f_y).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::sync::OnceLock;
use thiserror::Error;

use crate::poly::{bareiss_det, IntPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MacaulayError {
    #[error("input form is identically zero")]
    ZeroForm,
    #[error("operation requires degree >= {min}, got {got}")]
    DegreeBelowMinimum { min: u32, got: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("extraneous minor stayed singular after {0} coordinate changes")]
    DegenerateMinor(u32),
    #[error("H_xy is identically zero; the transversality criterion degenerates")]
    HessianZero,
    #[error("critical degree {0} is beyond the supported matrix sizes")]
    Unsupported(u32),
}

/// Homogeneous ternary form of a fixed degree; keys are exponent triples
/// (i, j, k) with i + j + k = degree, values are nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

/// Monomials of the given total degree in the fixed display order
/// (descending in the x-exponent, then in the y-exponent). Config files
/// list plane-family coefficients in exactly this order.
pub fn monomials_of_degree(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push((a, b, d - a - b));
        }
    }
    out
}

impl TernaryForm {
    pub fn new(degree: u32, terms: impl IntoIterator<Item = ((u32, u32, u32), BigInt)>) -> Self {
        let mut map = BTreeMap::new();
        for ((i, j, k), c) in terms {
            assert_eq!(i + j + k, degree, "exponent triple must sum to the degree");
            if c.is_zero() {
                continue;
            }
            let e = map.entry((i, j, k)).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                map.remove(&(i, j, k));
            }
        }
        Self { degree, terms: map }
    }

    /// Build from a polynomial in the variables x, y, z; it must be
    /// homogeneous (the zero polynomial is accepted at any degree).
    pub fn from_poly(f: &IntPoly) -> Result<Self, MacaulayError> {
        assert_eq!(f.vars(), &["x", "y", "z"], "ternary forms live in x, y, z");
        let d = f.total_degree();
        let mut terms = Vec::new();
        for (exp, c) in f.terms() {
            if exp.iter().sum::<u32>() != d {
                return Err(MacaulayError::NotHomogeneous);
            }
            terms.push(((exp[0], exp[1], exp[2]), c.clone()));
        }
        Ok(Self::new(d, terms))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: (u32, u32, u32)) -> BigInt {
        self.terms.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Partial derivative along axis 0 (x), 1 (y) or 2 (z).
    pub fn partial(&self, axis: usize) -> TernaryForm {
        assert!(axis < 3);
        assert!(self.degree >= 1);
        let mut terms = Vec::new();
        for (&(i, j, k), c) in &self.terms {
            let e = [i, j, k][axis];
            if e == 0 {
                continue;
            }
            let mut t = [i, j, k];
            t[axis] -= 1;
            terms.push(((t[0], t[1], t[2]), c * BigInt::from(e)));
        }
        TernaryForm::new(self.degree - 1, terms)
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let mut terms = Vec::new();
        for (&(i1, j1, k1), c1) in &self.terms {
            for (&(i2, j2, k2), c2) in &other.terms {
                terms.push(((i1 + i2, j1 + j2, k1 + k2), c1 * c2));
            }
        }
        TernaryForm::new(self.degree + other.degree, terms)
    }

    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, other.degree);
        let mut terms: Vec<_> = self.terms.iter().map(|(&e, c)| (e, c.clone())).collect();
        terms.extend(other.terms.iter().map(|(&e, c)| (e, c.clone())));
        TernaryForm::new(self.degree, terms)
    }

    pub fn sub(&self, other: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, other.degree);
        let mut terms: Vec<_> = self.terms.iter().map(|(&e, c)| (e, c.clone())).collect();
        terms.extend(other.terms.iter().map(|(&e, c)| (e, -c)));
        TernaryForm::new(self.degree, terms)
    }

    pub fn scale(&self, c: &BigInt) -> TernaryForm {
        TernaryForm::new(self.degree, self.terms.iter().map(|(&e, v)| (e, v * c)))
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(i, j, k), c) in &self.terms {
            acc += c * x.pow(i) * y.pow(j) * z.pow(k);
        }
        acc
    }

    /// Substitute variables by the rows of the integer matrix m:
    /// x -> m[0][0] x + m[0][1] y + m[0][2] z, and so on.
    pub fn compose(&self, m: &[[i64; 3]; 3]) -> TernaryForm {
        let lin: Vec<TernaryForm> = (0..3)
            .map(|r| {
                TernaryForm::new(
                    1,
                    [
                        ((1, 0, 0), BigInt::from(m[r][0])),
                        ((0, 1, 0), BigInt::from(m[r][1])),
                        ((0, 0, 1), BigInt::from(m[r][2])),
                    ],
                )
            })
            .collect();
        let mut acc = TernaryForm::new(self.degree, []);
        for (&(i, j, k), c) in &self.terms {
            let mut term = TernaryForm::new(0, [((0, 0, 0), c.clone())]);
            for (axis, &e) in [i, j, k].iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&lin[axis]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Is every coefficient divisible by p?
    pub fn vanishes_mod_p(&self, p: &BigInt) -> bool {
        self.terms.values().all(|c| (c % p).is_zero())
    }
}

/// H_xy = f_xx f_yy - f_xy^2, the upper-left 2x2 minor of the Hessian
/// matrix; degree 2(d - 2).
pub fn hessian_minor_xy(f: &TernaryForm) -> Result<TernaryForm, MacaulayError> {
    if f.is_zero() {
        return Err(MacaulayError::ZeroForm);
    }
    if f.degree() < 2 {
        return Err(MacaulayError::DegreeBelowMinimum { min: 2, got: f.degree() });
    }
    let fx = f.partial(0);
    let fxx = fx.partial(0);
    let fxy = fx.partial(1);
    let fyy = f.partial(1).partial(1);
    Ok(fxx.mul(&fyy).sub(&fxy.mul(&fxy)))
}

/// Deterministic SL3(Z) matrices used to escape a singular extraneous
/// minor. Each is a product L*U of unit-triangular matrices with small
/// nonzero off-diagonal entries, so the determinant is exactly 1, every
/// row mixes all three variables, and the resultant value is unchanged
/// by the substitution.
fn shear_schedule(attempt: u32) -> [[i64; 3]; 3] {
    // splitmix64 stream on a fixed seed; attempt indexes the stream
    let mut s = 0x5ee5_ab1e_c0ff_ee00u64
        .wrapping_add(attempt as u64 + 1)
        .wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut next = move || -> i64 {
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let e = (z % 7) as i64 - 3; // -3..=3
        if e == 0 {
            1
        } else {
            e
        }
    };
    let (a, b, c) = (next(), next(), next());
    let (d, e, f) = (next(), next(), next());
    // [[1,0,0],[a,1,0],[b,c,1]] * [[1,d,e],[0,1,f],[0,0,1]]
    [
        [1, d, e],
        [a, a * d + 1, a * e + f],
        [b, b * d + c, b * e + c * f + 1],
    ]
}

struct MacaulayLayout {
    cols: Vec<(u32, u32, u32)>,
    assign: Vec<(usize, (u32, u32, u32))>, // (which form, quotient monomial)
    reduced: Vec<bool>,
}

fn layout(d1: u32, d2: u32, d3: u32) -> MacaulayLayout {
    let nu = d1 + d2 + d3 - 2;
    let cols = monomials_of_degree(nu);
    let ds = [d1, d2, d3];
    let mut assign = Vec::with_capacity(cols.len());
    let mut reduced = Vec::with_capacity(cols.len());
    for &(a, b, c) in &cols {
        let m = [a, b, c];
        let divs: Vec<usize> = (0..3).filter(|&i| m[i] >= ds[i]).collect();
        let i = divs[0]; // every degree-nu monomial has at least one divisor
        let mut q = m;
        q[i] -= ds[i];
        assign.push((i, (q[0], q[1], q[2])));
        reduced.push(divs.len() == 1);
    }
    MacaulayLayout { cols, assign, reduced }
}

fn macaulay_dets(forms: [&TernaryForm; 3], lay: &MacaulayLayout) -> (BigInt, BigInt) {
    let ncols = lay.cols.len();
    let colidx: BTreeMap<(u32, u32, u32), usize> =
        lay.cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut rows = vec![vec![BigInt::zero(); ncols]; ncols];
    for (r, &(which, q)) in lay.assign.iter().enumerate() {
        for (&(i, j, k), c) in forms[which].terms() {
            let t = (q.0 + i, q.1 + j, q.2 + k);
            rows[r][colidx[&t]] += c;
        }
    }
    let sub: Vec<usize> = (0..ncols).filter(|&i| !lay.reduced[i]).collect();
    let minor: Vec<Vec<BigInt>> = sub
        .iter()
        .map(|&i| sub.iter().map(|&j| rows[i][j].clone()).collect())
        .collect();
    let det_minor = bareiss_det(minor);
    let det_full = bareiss_det(rows);
    (det_full, det_minor)
}

/// Sign that makes Res(x^d1, y^d2, z^d3) = +1 under this layout; cached
/// per degree triple and asserted once against the reference system.
fn reference_sign(d1: u32, d2: u32, d3: u32) -> i8 {
    static CACHE: OnceLock<Mutex<BTreeMap<(u32, u32, u32), i8>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(&s) = cache.lock().unwrap().get(&(d1, d2, d3)) {
        return s;
    }
    let refs = [
        TernaryForm::new(d1, [((d1, 0, 0), BigInt::one())]),
        TernaryForm::new(d2, [((0, d2, 0), BigInt::one())]),
        TernaryForm::new(d3, [((0, 0, d3), BigInt::one())]),
    ];
    let lay = layout(d1, d2, d3);
    let (det, minor) = macaulay_dets([&refs[0], &refs[1], &refs[2]], &lay);
    assert!(!minor.is_zero(), "reference minor cannot vanish");
    let ratio = &det / &minor;
    assert!(
        (&ratio * &ratio).is_one(),
        "reference system must have resultant of magnitude 1"
    );
    let s = if ratio.is_negative() { -1 } else { 1 };
    cache.lock().unwrap().insert((d1, d2, d3), s);
    s
}

const MAX_COORDINATE_CHANGES: u32 = 8;
const MAX_CRITICAL_DEGREE: u32 = 20;

/// Macaulay resultant of three ternary forms: an integer vanishing exactly
/// when the forms share a projective zero over the algebraic closure.
/// Computed from the Macaulay matrix in critical degree d1 + d2 + d3 - 2
/// with the extraneous-minor division; a singular minor triggers up to
/// eight deterministic SL3(Z) coordinate changes (the value is invariant
/// under them).
pub fn macaulay_resultant(
    g1: &TernaryForm,
    g2: &TernaryForm,
    g3: &TernaryForm,
) -> Result<BigInt, MacaulayError> {
    for g in [g1, g2, g3] {
        if g.is_zero() {
            return Err(MacaulayError::ZeroForm);
        }
        if g.degree() < 1 {
            return Err(MacaulayError::DegreeBelowMinimum { min: 1, got: g.degree() });
        }
    }
    let (d1, d2, d3) = (g1.degree(), g2.degree(), g3.degree());
    let nu = d1 + d2 + d3 - 2;
    if nu > MAX_CRITICAL_DEGREE {
        return Err(MacaulayError::Unsupported(nu));
    }
    let lay = layout(d1, d2, d3);
    let sign = reference_sign(d1, d2, d3);

    let mut forms = [g1.clone(), g2.clone(), g3.clone()];
    for attempt in 0..=MAX_COORDINATE_CHANGES {
        let (det, minor) = macaulay_dets([&forms[0], &forms[1], &forms[2]], &lay);
        if !minor.is_zero() {
            let (q, r) = det.div_rem(&minor);
            assert!(r.is_zero(), "extraneous minor divides the Macaulay determinant");
            return Ok(if sign < 0 { -q } else { q });
        }
        if attempt == MAX_COORDINATE_CHANGES {
            break;
        }
        let m = shear_schedule(attempt);
        forms = [g1.compose(&m), g2.compose(&m), g3.compose(&m)];
    }
    Err(MacaulayError::DegenerateMinor(MAX_COORDINATE_CHANGES))
}

/// Discriminant proxy D(f) = Res(f_x, f_y, f_z): zero iff the plane curve
/// f = 0 is singular over the algebraic closure. Valuations at primes
/// p > A agree with the normalized discriminant.
pub fn plane_disc_proxy(f: &TernaryForm) -> Result<BigInt, MacaulayError> {
    if f.is_zero() {
        return Err(MacaulayError::ZeroForm);
    }
    if f.degree() < 2 {
        return Err(MacaulayError::DegreeBelowMinimum { min: 2, got: f.degree() });
    }
    let parts = [f.partial(0), f.partial(1), f.partial(2)];
    if parts.iter().any(|g| g.is_zero()) {
        // f ignores one variable, so the curve has a cone point; also any
        // two ternary forms already meet in P^2, hence the resultant is 0.
        return Ok(BigInt::zero());
    }
    macaulay_resultant(&parts[0], &parts[1], &parts[2])
}

/// Transversality resultant R(f) = Res(H_xy, f_x, f_y); nonvanishing mod p
/// certifies that every singularity of the reduction mod p is a node.
pub fn transversality_resultant(f: &TernaryForm) -> Result<BigInt, MacaulayError> {
    if f.is_zero() {
        return Err(MacaulayError::ZeroForm);
    }
    if f.degree() < 3 {
        return Err(MacaulayError::DegreeBelowMinimum { min: 3, got: f.degree() });
    }
    let h = hessian_minor_xy(f)?;
    if h.is_zero() {
        return Err(MacaulayError::HessianZero);
    }
    let fx = f.partial(0);
    let fy = f.partial(1);
    if fx.is_zero() || fy.is_zero() {
        return Ok(BigInt::zero());
    }
    macaulay_resultant(&h, &fx, &fy)
}
