use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::PolyError;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Exponent vectors are indexed by the fixed, ordered
/// variable list; stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The monomial `var^1`. Panics if `var` is not in the list.
    pub fn variable(vars: &[&str], var: &str) -> Self {
        let mut p = Self::zero(vars);
        let idx = p.var_index(var);
        let mut exp = vec![0; p.vars.len()];
        exp[idx] = 1;
        p.terms.insert(exp, BigInt::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(vars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(exp, c);
        }
        p
    }

    fn var_index(&self, var: &str) -> usize {
        self.vars
            .iter()
            .position(|v| v == var)
            .unwrap_or_else(|| panic!("variable {var} not among {:?}", self.vars))
    }

    fn add_term(&mut self, exp: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        let idx = self.var_index(var);
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists must match");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists must match");
        let mut out = Self::zero(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = Self::constant(&vars, BigInt::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact evaluation at an integer point (one value per variable).
    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars.len(), "point length must match variable count");
        let mut acc = BigInt::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exp) {
                if e > 0 {
                    term *= x.pow(e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluation in F_p with machine arithmetic; p must be below 2^32 so
    /// products fit in u64 without overflow checks.
    pub fn eval_mod_p(&self, point: &[u64], p: u64) -> u64 {
        assert!(p < (1 << 32));
        assert_eq!(point.len(), self.vars.len());
        let mut acc = 0u64;
        for (exp, c) in &self.terms {
            let mut term = reduce_bigint_mod(c, p);
            for (&x, &e) in point.iter().zip(exp) {
                let mut b = x % p;
                let mut k = e;
                while k > 0 {
                    if k & 1 == 1 {
                        term = term * b % p;
                    }
                    b = b * b % p;
                    k >>= 1;
                }
            }
            acc = (acc + term) % p;
        }
        acc
    }

    /// Formal partial derivative. Panics if `var` is not declared.
    pub fn derivative(&self, var: &str) -> Self {
        let idx = self.var_index(var);
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (exp, c) in &self.terms {
            if exp[idx] == 0 {
                continue;
            }
            let mut e = exp.clone();
            let k = e[idx];
            e[idx] = k - 1;
            out.add_term(e, c * BigInt::from(k));
        }
        out
    }

    /// Ascending coefficient vector, provided the polynomial involves at
    /// most the single variable `var`.
    pub fn univariate_coeffs(&self, var: &str) -> Result<Vec<BigInt>, PolyError> {
        let idx = self.var_index(var);
        for exp in self.terms.keys() {
            if exp.iter().enumerate().any(|(i, &e)| i != idx && e > 0) {
                return Err(PolyError::NotUnivariate);
            }
        }
        let deg = self.degree_in(var);
        let mut coeffs = vec![BigInt::zero(); deg as usize + 1];
        for (exp, c) in &self.terms {
            coeffs[exp[idx] as usize] = c.clone();
        }
        Ok(coeffs)
    }

    /// The single variable this polynomial effectively uses, if any.
    pub fn sole_variable(&self) -> Option<&str> {
        let mut used = None;
        for exp in self.terms.keys() {
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    match used {
                        None => used = Some(i),
                        Some(j) if j == i => {}
                        _ => return None,
                    }
                }
            }
        }
        used.map(|i| self.vars[i].as_str())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest-degree terms first
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (exp, c)) in entries.iter().enumerate() {
            let c: &BigInt = c;
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars[v].clone()
                    } else {
                        format!("{}^{}", self.vars[v], e)
                    }
                })
                .collect();
            let mono = mono.join("*");
            if i == 0 {
                if mono.is_empty() {
                    write!(f, "{c}")?;
                } else if c.is_one() {
                    write!(f, "{mono}")?;
                } else if (-c).is_one() {
                    write!(f, "-{mono}")?;
                } else {
                    write!(f, "{c}*{mono}")?;
                }
            } else {
                let (op, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
                if mono.is_empty() {
                    write!(f, " {op} {mag}")?;
                } else if mag.is_one() {
                    write!(f, " {op} {mono}")?;
                } else {
                    write!(f, " {op} {mag}*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

fn reduce_bigint_mod(c: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let r = (c % BigInt::from(p)).to_i64().unwrap();
    r.rem_euclid(p as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str, vars: &[&str]) -> IntPoly {
        super::super::parse_poly(src, vars).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = p("t1^2 - 4", &["t1"]);
        assert_eq!(f.evaluate(&[BigInt::from(2)]), BigInt::zero());
        // -l^l t^(l-1) with l = 3 at t = 2
        let f = p("-27*t1^2", &["t1"]);
        assert_eq!(f.evaluate(&[BigInt::from(2)]), BigInt::from(-108));
        let f = p("x^3 + x + 1", &["x"]);
        assert_eq!(f.evaluate(&[BigInt::zero()]), BigInt::one());
    }

    #[test]
    fn derivative_examples() {
        let f = p("x^3 + x + 1", &["x"]);
        assert_eq!(f.derivative("x"), p("3*x^2 + 1", &["x"]));
        let f = p("x^3 + t1", &["x", "t1"]);
        assert_eq!(f.derivative("x"), p("3*x^2", &["x", "t1"]));
        let c = p("5", &["x"]);
        assert!(c.derivative("x").is_zero());
    }

    #[test]
    fn degree_is_additive_under_product() {
        let f = p("x^2*t1 - 3*x + 1", &["x", "t1"]);
        let g = p("t1^4 + x", &["x", "t1"]);
        assert_eq!(f.mul(&g).total_degree(), f.total_degree() + g.total_degree());
    }

    #[test]
    fn eval_mod_p_matches_exact() {
        let f = p("x^3*t1 - 7*x + 2*t1^2 - 5", &["x", "t1"]);
        for (x, t) in [(3i64, 4i64), (-2, 9), (0, 0), (100, -55)] {
            let exact = f.evaluate(&[BigInt::from(x), BigInt::from(t)]);
            for q in [5u64, 97, 65521] {
                let want = reduce_bigint_mod(&exact, q);
                let got = f.eval_mod_p(&[(x).rem_euclid(q as i64) as u64, (t).rem_euclid(q as i64) as u64], q);
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn univariate_extraction() {
        let f = p("x^3 + x + 1", &["x", "t1"]);
        assert_eq!(
            f.univariate_coeffs("x").unwrap(),
            vec![BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()]
        );
        let g = p("x*t1", &["x", "t1"]);
        assert_eq!(g.univariate_coeffs("x"), Err(PolyError::NotUnivariate));
        assert_eq!(f.sole_variable(), Some("x"));
        assert_eq!(g.sole_variable(), None);
    }
}
