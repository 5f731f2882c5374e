//! Exact arithmetic in cyclotomic fields `Q(ζ_n) = Q[x]/Φ_n(x)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    pub n: usize,
    pub coeffs: Vec<i64>,
}

impl CycPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<CycPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n`, by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: usize) -> Arc<CycPoly> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        poly = divide_exact(&poly, &cyclotomic_poly(d).coeffs);
    }
    let p = Arc::new(CycPoly { n, coeffs: poly });
    cache().lock().unwrap().entry(n).or_insert(p).clone()
}

/// Exact division by a monic integer polynomial; panics if there is a remainder.
fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Q(ζ_n)` in the power basis `1, ζ, .., ζ^{φ(n)-1}`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    modulus: Arc<CycPoly>,
    coeffs: Vec<Rational>,
}

/// Field operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
}

/// `a + b`, `a * b`, or `a^-1` (`b` ignored) with conductor checks.
pub fn arith(a: &CyclotomicNumber, b: &CyclotomicNumber, op: ArithOp) -> Result<CyclotomicNumber> {
    if op != ArithOp::Inv && a.conductor() != b.conductor() {
        return Err(Error::ConductorMismatch(a.conductor(), b.conductor()));
    }
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Inv => a.inv(),
    }
}

impl CyclotomicNumber {
    pub fn zero(n: usize) -> CyclotomicNumber {
        let modulus = cyclotomic_poly(n);
        let coeffs = vec![Rational::zero(); modulus.degree()];
        CyclotomicNumber { modulus, coeffs }
    }

    pub fn one(n: usize) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: usize, r: Rational) -> CyclotomicNumber {
        let mut z = CyclotomicNumber::zero(n);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(n: usize, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(n, crate::rational::int(k))
    }

    /// Coefficients in the power basis; the vector is truncated or padded to `φ(n)`
    /// after reduction modulo `Φ_n`, so any length is accepted.
    pub fn from_coeffs(n: usize, coeffs: Vec<Rational>) -> CyclotomicNumber {
        let modulus = cyclotomic_poly(n);
        let coeffs = reduce(coeffs, &modulus);
        CyclotomicNumber { modulus, coeffs }
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: usize, k: i64) -> CyclotomicNumber {
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        CyclotomicNumber::from_coeffs(n, coeffs)
    }

    pub fn conductor(&self) -> usize {
        self.modulus.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> CyclotomicNumber {
        CyclotomicNumber { modulus: self.modulus.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn inv(&self) -> Result<CyclotomicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m: Vec<Rational> = self.modulus.coeffs.iter().map(|&c| crate::rational::int(c)).collect();
        let (g, s) = ext_gcd(m, self.coeffs.clone());
        // g is a nonzero constant because Φ_n is irreducible
        debug_assert_eq!(trimmed_len(&g), 1);
        let g0 = g[0].clone();
        let coeffs = s.into_iter().map(|c| c / &g0).collect();
        Ok(CyclotomicNumber::from_coeffs(self.conductor(), coeffs))
    }

    /// Image under `Q(ζ_d) → Q(ζ_n)`, `ζ_d ↦ ζ_n^{n/d}`.
    pub fn embed(&self, n: usize) -> Result<CyclotomicNumber> {
        let d = self.conductor();
        if n % d != 0 {
            return Err(Error::NotADivisor { divisor: d, n });
        }
        let step = n / d;
        let mut coeffs = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Ok(CyclotomicNumber::from_coeffs(n, coeffs))
    }

    /// The automorphism `ζ_n ↦ ζ_n^k`.
    pub fn galois(&self, k: i64) -> Result<CyclotomicNumber> {
        let n = self.conductor();
        if k.gcd(&(n as i64)) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i * k) % n] += c;
        }
        Ok(CyclotomicNumber::from_coeffs(n, coeffs))
    }

    pub fn to_text(&self) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        format!("{} (mod Phi_{})", terms.join(" + "), self.conductor())
    }
}

fn trimmed_len(p: &[Rational]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    p.truncate(trimmed_len(&p));
    p
}

/// Reduces modulo the monic `Φ_n` and pads to exactly `φ(n)` coefficients.
fn reduce(mut p: Vec<Rational>, modulus: &CycPoly) -> Vec<Rational> {
    let d = modulus.degree();
    for i in (d..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = p[i].clone();
        for (j, &m) in modulus.coeffs.iter().enumerate() {
            if m != 0 {
                p[i - d + j] -= &c * crate::rational::int(m);
            }
        }
    }
    p.resize(d, Rational::zero());
    p
}

fn poly_sub_mul(a: &[Rational], q: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(q.len() + b.len());
    let mut out = a.to_vec();
    out.resize(len, Rational::zero());
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = trim(r);
    }
    (q, r)
}

/// Returns `(g, s)` with `s·b ≡ g (mod m)` and `g = gcd(m, b)`.
fn ext_gcd(m: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trim(m), trim(b));
    let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn assert_same(a: &CyclotomicNumber, b: &CyclotomicNumber) {
    assert_eq!(a.conductor(), b.conductor(), "cyclotomic conductor mismatch");
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_same(self, rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNumber { modulus: self.modulus.clone(), coeffs }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_same(self, rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicNumber { modulus: self.modulus.clone(), coeffs }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { modulus: self.modulus.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_same(self, rhs);
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let mut prod = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber { modulus: self.modulus.clone(), coeffs: reduce(prod, &self.modulus) }
    }
}

impl std::ops::AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        assert_same(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

/// Dimension over `Q` of the subfield of `Q(ζ_n)` fixed by `{ζ ↦ ζ^k : k ∈ exponents}`.
pub fn fixed_subspace_dim(n: usize, exponents: &[i64]) -> Result<usize> {
    let ni = n as i64;
    let mut set: Vec<i64> = Vec::new();
    for &k in exponents {
        if k.gcd(&ni) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        let r = if n == 1 { 0 } else { k.rem_euclid(ni) };
        if !set.contains(&r) {
            set.push(r);
        }
    }
    if set.is_empty() {
        return Err(Error::NotAUnitSubgroup(n));
    }
    for &a in &set {
        for &b in &set {
            let ab = if n == 1 { 0 } else { (a * b).rem_euclid(ni) };
            if !set.contains(&ab) {
                return Err(Error::NotAUnitSubgroup(n));
            }
        }
    }
    Ok(euler_phi(n) / set.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn z(n: usize, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).coeffs, vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2).coeffs, vec![1, 1]);
        assert_eq!(cyclotomic_poly(12).coeffs, vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(6).coeffs, vec![1, -1, 1]);
    }

    #[test]
    fn product_over_divisors() {
        for n in 1..=60usize {
            let mut prod = vec![1i64];
            for d in (1..=n).filter(|d| n % d == 0) {
                let p = &cyclotomic_poly(d).coeffs;
                let mut next = vec![0i64; prod.len() + p.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in p.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expected = vec![0i64; n + 1];
            expected[0] = -1;
            expected[n] = 1;
            assert_eq!(prod, expected, "n = {n}");
            assert_eq!(cyclotomic_poly(n).degree(), euler_phi(n));
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&z(4, 1) * &z(4, 1), CyclotomicNumber::from_integer(4, -1));
        let a = &CyclotomicNumber::one(3) + &z(3, 1);
        assert_eq!(a.inv().unwrap(), -&z(3, 1));
        assert_eq!(arith(&a, &CyclotomicNumber::zero(3), ArithOp::Add).unwrap(), a);
        assert_eq!(CyclotomicNumber::zero(5).inv(), Err(Error::DivisionByZero));
        assert!(arith(&a, &z(4, 1), ArithOp::Mul).is_err());
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(CyclotomicNumber::one(1).embed(6).unwrap(), CyclotomicNumber::one(6));
        assert_eq!(z(2, 1).embed(6).unwrap(), CyclotomicNumber::from_integer(6, -1));
        assert_eq!(z(3, 1).embed(6).unwrap(), z(6, 2));
        assert!(z(4, 1).embed(6).is_err());
    }

    #[test]
    fn galois_examples() {
        let g = z(3, 1).galois(2).unwrap();
        assert_eq!(g, &CyclotomicNumber::from_integer(3, -1) - &z(3, 1));
        assert_eq!(z(3, 1).galois(1).unwrap(), z(3, 1));
        assert!(z(6, 1).galois(2).is_err());
        assert_eq!(z(6, 1).galois(-1).unwrap(), z(6, 5));
    }

    /// Dimension of the fixed space computed directly from the Galois action
    /// matrices: `φ(n) - rank` of the stacked `σ_k - id`.
    fn fixed_dim_by_rank(n: usize, exps: &[i64]) -> usize {
        let phi = euler_phi(n);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for &k in exps {
            // column j of σ_k - id is σ_k(ζ^j) - ζ^j; collect rows of the transpose
            let cols: Vec<Vec<Rational>> = (0..phi)
                .map(|j| {
                    let e = z(n, j as i64);
                    (&e.galois(k).unwrap() - &e).coeffs().to_vec()
                })
                .collect();
            for i in 0..phi {
                rows.push(cols.iter().map(|c| c[i].clone()).collect());
            }
        }
        phi - crate::rational::rank(&rows)
    }

    #[test]
    fn fixed_dims() {
        assert_eq!(fixed_subspace_dim(3, &[1]).unwrap(), 2);
        assert_eq!(fixed_subspace_dim(3, &[1, 2]).unwrap(), 1);
        assert_eq!(fixed_subspace_dim(1, &[1]).unwrap(), 1);
        assert_eq!(fixed_subspace_dim(12, &[1, 5]).unwrap(), 2);
        assert!(fixed_subspace_dim(12, &[1, 5, 7]).is_err());
        assert!(fixed_subspace_dim(12, &[2]).is_err());
        for (n, exps) in [(3usize, vec![1i64, 2]), (12, vec![1, 5]), (12, vec![1, 7]), (8, vec![1, 3, 5, 7]), (7, vec![1, 2, 4])] {
            assert_eq!(fixed_subspace_dim(n, &exps).unwrap(), fixed_dim_by_rank(n, &exps));
        }
    }

    #[test]
    fn text_form() {
        let a = &CyclotomicNumber::from_rational(5, rat(1, 2)) + &z(5, 2).scale(&int(-3));
        assert_eq!(a.to_text(), "1/2 + -3*z^2 (mod Phi_5)");
    }
}
