//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored low-to-high. The zero polynomial has no
//! coefficients; every other polynomial has a nonzero last entry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::modpoly::{IrreducibilityCertificate, ModPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected degree {expected}, found {found:?}")]
    WrongDegree { expected: usize, found: Option<usize> },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient symmetry fails at index {index}")]
    ShapeMismatch { index: usize },
    #[error("malformed polynomial text: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = -BigInt::one();
        coeffs[k] += BigInt::one();
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^j`; zero past the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, a)| a * BigInt::from(j))
                .collect(),
        )
    }

    /// `f(x)` by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `f(x^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Flips the sign if needed so the leading coefficient is positive.
    pub fn with_positive_leading(self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self,
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-division by zero polynomial");
        let Some(ds) = self.degree() else {
            return Self::zero();
        };
        if ds < dd {
            return self.clone();
        }
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &top * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps += 1;
        }
        let missing = (ds - dd + 1) as u32 - steps;
        let factor = num_traits::pow(lc, missing as usize);
        Self::new(r).scale(&factor)
    }

    /// Quotient and remainder by a divisor whose leading coefficient is a unit.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let lc = d.leading().expect("division by zero polynomial");
        assert!(lc.abs().is_one(), "divisor must have unit leading coefficient");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let t = r.last().unwrap() * lc;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &t * dc;
            }
            q[k] = t;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem_monic(&self, d: &IntPoly) -> IntPoly {
        self.div_rem_monic(d).1
    }

    /// `self / d` when the division is exact over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.is_empty() {
            return Some(Self::zero());
        }
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let (t, rem) = r.last().unwrap().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &t * dc;
            }
            q[k] = t;
            r.pop();
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor over the integers, primitive-PRS style,
    /// normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.clone().with_positive_leading();
        }
        if other.is_zero() {
            return self.clone().with_positive_leading();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().with_positive_leading().scale(&content)
    }

    /// Squarefree part: product of the distinct irreducible factors,
    /// primitive with positive leading coefficient.
    pub fn radical(&self) -> IntPoly {
        if self.is_constant() {
            return self.primitive_part().with_positive_leading();
        }
        let p = self.primitive_part();
        let g = p.gcd(&p.derivative()).primitive_part();
        p.div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
            .with_positive_leading()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's squarefree decomposition: `(factor, multiplicity)` pairs whose
    /// product recovers `self` up to a constant. Factors are primitive.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.primitive_part();
        let df = f.derivative();
        let b = f.gcd(&df).primitive_part();
        let mut c = f.div_exact(&b).unwrap();
        let mut d = &df.div_exact(&b).unwrap() - &c.derivative();
        let mut i = 1;
        while !c.is_constant() {
            let a = c.gcd(&d).primitive_part();
            if !a.is_constant() {
                out.push((a.clone().with_positive_leading(), i));
            }
            c = c.div_exact(&a).unwrap();
            d = &d.div_exact(&a).unwrap() - &c.derivative();
            i += 1;
        }
        out
    }

    pub fn reduce_mod(&self, r: u64) -> ModPoly {
        let m = BigInt::from(r);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let red = c.mod_floor(&m);
                red.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        ModPoly::new(r, coeffs)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{self}]")
    }
}

/// Canonical text form: comma-separated decimal coefficients, low to high.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        trimmed
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<BigInt>()
                    .map_err(|_| PolyError::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

fn mobius(n: u64) -> i8 {
    let mut mu = 1;
    for (_, e) in crate::numtheory::factorize(n) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// The `n`-th cyclotomic polynomial, from `prod_{d | n} (x^d - 1)^mu(n/d)`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(n / d) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPoly::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    let (q, r) = num.div_rem_monic(&den);
    debug_assert!(r.is_zero());
    q
}

/// A monic degree-`2g` polynomial with `coeff(j) = q^(g-j) * coeff(2g-j)`
/// for `0 <= j < g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    poly: IntPoly,
    g: usize,
    q: BigUint,
}

impl QPolynomial {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// The coefficient `a_j` of `t^(2g-j)`, for `0 <= j <= 2g`.
    pub fn a(&self, j: usize) -> BigInt {
        self.poly.coeff(2 * self.g - j)
    }

    /// `a_g`, the coefficient of `t^g`.
    pub fn middle(&self) -> BigInt {
        self.a(self.g)
    }

    pub fn into_poly(self) -> IntPoly {
        self.poly
    }
}

/// Checks the paired-coefficient shape and wraps `f` as a [`QPolynomial`].
pub fn check_q_symmetry(f: &IntPoly, g: usize, q: &BigUint) -> Result<QPolynomial, PolyError> {
    if g == 0 {
        return Err(PolyError::WrongDegree {
            expected: 0,
            found: f.degree(),
        });
    }
    if f.degree() != Some(2 * g) {
        return Err(PolyError::WrongDegree {
            expected: 2 * g,
            found: f.degree(),
        });
    }
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let q_int = BigInt::from(q.clone());
    for j in 0..g {
        let expected = num_traits::pow(q_int.clone(), g - j) * f.coeff(2 * g - j);
        if f.coeff(j) != expected {
            return Err(PolyError::ShapeMismatch { index: j });
        }
    }
    Ok(QPolynomial {
        poly: f.clone(),
        g,
        q: q.clone(),
    })
}

/// Resultant with the convention `Res(f, h) = lc(h)^deg(f) * prod f(beta)`
/// over the roots `beta` of `h`. With this convention
/// `Res(t - a, t - b) = b - a` and `Res(f, h) = (-1)^(deg f * deg h) Res(h, f)`.
pub fn resultant(f: &IntPoly, h: &IntPoly) -> Result<BigInt, PolyError> {
    if f.is_zero() || h.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(subresultant(h, f))
}

/// `lc(a)^deg(b) * prod b(alpha)` over roots `alpha` of `a`, by the
/// subresultant polynomial remainder sequence.
fn subresultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_neg = false;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign_neg = true;
        }
    }
    let ca = a.content();
    let cb = b.content();
    a = a.primitive_part();
    b = b.primitive_part();
    let t = num_traits::pow(ca, b.degree().unwrap()) * num_traits::pow(cb, a.degree().unwrap());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            break;
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = IntPoly::new(r.coeffs.iter().map(|c| c / &divisor).collect());
        g = a.leading().unwrap().clone();
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1);
        }
    }
    let da = a.degree().unwrap();
    let lb = b.leading().unwrap().clone();
    if da > 0 {
        h = num_traits::pow(lb, da) / num_traits::pow(h, da - 1);
    }
    let res = t * h;
    if sign_neg {
        -res
    } else {
        res
    }
}

/// `x^d mod f` for monic `f`, by repeated squaring.
fn x_pow_mod_monic(f: &IntPoly, d: u64) -> IntPoly {
    let mut result = IntPoly::one();
    let mut base = IntPoly::monomial(BigInt::one(), 1).rem_monic(f);
    let mut e = d;
    while e > 0 {
        if e & 1 == 1 {
            result = (&result * &base).rem_monic(f);
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).rem_monic(f);
        }
    }
    result
}

/// The monic polynomial `prod (x - theta^d)` over all roots `theta` of the
/// monic `f`, i.e. the resultant in `y` of `f(y)` and `x - y^d`.
///
/// Evaluated at `x = 0, 1, ..., deg f - 1` with integer resultants and
/// recovered by interpolation.
pub fn char_poly_of_power(f: &IntPoly, d: u64) -> IntPoly {
    assert!(f.is_monic() && f.degree().unwrap_or(0) >= 1, "f must be monic and nonconstant");
    assert!(d >= 1);
    if d == 1 {
        return f.clone();
    }
    let n = f.degree().unwrap();
    let y_d = x_pow_mod_monic(f, d);
    // c(x) - x^n has degree < n; interpolate it on n integer nodes.
    let values: Vec<BigRational> = (0..n)
        .map(|k| {
            let x0 = BigInt::from(k);
            let shifted = &IntPoly::constant(x0.clone()) - &y_d;
            let c_at = subresultant(f, &shifted);
            BigRational::from_integer(c_at - num_traits::pow(x0, n))
        })
        .collect();
    let lower = interpolate_integer_nodes(&values);
    let mut coeffs: Vec<BigInt> = lower
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated coefficient is not integral");
            c.to_integer()
        })
        .collect();
    coeffs.resize(n, BigInt::zero());
    coeffs.push(BigInt::one());
    IntPoly::new(coeffs)
}

/// Coefficients (low to high) of the polynomial of degree `< values.len()`
/// taking `values[k]` at `x = k`, by Newton divided differences.
fn interpolate_integer_nodes(values: &[BigRational]) -> Vec<BigRational> {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    // Horner on the Newton basis: p = dd0 + (x - 0)(dd1 + (x - 1)(dd2 + ...)).
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut len = 0usize;
    for k in (0..n).rev() {
        // poly <- poly * (x - k) + dd[k]
        let node = BigRational::from_integer(BigInt::from(k));
        let mut next = vec![BigRational::zero(); n];
        for j in 0..len {
            next[j + 1] += &poly[j];
            next[j] -= &poly[j] * &node;
        }
        next[0] += &dd[k];
        poly = next;
        len = (len + 1).min(n);
    }
    poly
}

/// The minimal polynomial of `theta^d` for a root `theta` of a certified
/// irreducible monic `f`: the radical of [`char_poly_of_power`].
pub fn minimal_poly_of_power(f: &IrreducibilityCertificate, d: u64) -> IntPoly {
    char_poly_of_power(f.poly(), d).radical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpoly::certify_irreducible;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Determinant of the Sylvester matrix by fraction-free elimination over
    /// the rationals; independent of the remainder-sequence route.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for row in 0..n {
            for j in 0..=m {
                mat[row][row + j] = BigRational::from_integer(a.coeff(m - j));
            }
        }
        for row in 0..m {
            for j in 0..=n {
                mat[n + row][row + j] = BigRational::from_integer(b.coeff(n - j));
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= &pv;
            for r in col + 1..size {
                let factor = &mat[r][col] / &pv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..size {
                    let delta = &factor * &mat[col][c];
                    mat[r][c] -= delta;
                }
            }
        }
        det.to_integer()
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 0, 1]).derivative(), p(&[0, 0, 0, 4]));
        let f = p(&[25, 5, 1, 1, 1]);
        assert_eq!(&IntPoly::zero() + &f, f);
        assert_eq!(&f - &f, IntPoly::zero());
        assert_eq!(f.scale(&BigInt::from(0)), IntPoly::zero());
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, 0, 1]).eval(&BigInt::from(2)), BigInt::from(5));
        assert_eq!(p(&[25, 5, 1, 1, 1]).eval(&BigInt::from(0)), BigInt::from(25));
        assert_eq!(cyclotomic(5).eval(&BigInt::from(1)), BigInt::from(5));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(5), p(&[1, 1, 1, 1, 1]));
        let mut c25 = vec![0i64; 21];
        for j in [0, 5, 10, 15, 20] {
            c25[j] = 1;
        }
        assert_eq!(cyclotomic(25), p(&c25));
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(125), cyclotomic(5).compose_power(25));
        assert_eq!(cyclotomic(49), cyclotomic(7).compose_power(7));
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for n in 1..=200u64 {
            assert_eq!(cyclotomic(n).degree(), Some(crate::numtheory::euler_phi(n) as usize));
        }
    }

    #[test]
    fn x_pow_minus_one_is_product_of_cyclotomics() {
        for n in 1..=40u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn symmetry_examples() {
        let f = p(&[25, 5, 1, 1, 1]);
        let qp = check_q_symmetry(&f, 2, &big(5)).unwrap();
        assert_eq!(qp.middle(), BigInt::from(1));
        assert_eq!(qp.a(1), BigInt::from(1));
        check_q_symmetry(&p(&[8, 4, 2, 5, 1, 1, 1]), 3, &big(2)).unwrap();
        assert_eq!(
            check_q_symmetry(&p(&[5, 3, 1]), 1, &big(2)),
            Err(PolyError::ShapeMismatch { index: 0 })
        );
        assert_eq!(
            check_q_symmetry(&p(&[8, 4, 3, 5, 1, 1, 1]), 3, &big(2)),
            Err(PolyError::ShapeMismatch { index: 2 })
        );
        assert!(matches!(
            check_q_symmetry(&p(&[25, 5, 1, 1, 2]), 2, &big(5)),
            Err(PolyError::NotMonic)
        ));
        assert!(matches!(
            check_q_symmetry(&p(&[25, 5, 1, 1, 1]), 3, &big(5)),
            Err(PolyError::WrongDegree { .. })
        ));
    }

    #[test]
    fn resultant_examples() {
        // Res(t^2 - 2, t^2 - 3) = prod over sqrt(+-2), sqrt(+-3) differences = 1
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), Ok(BigInt::from(1)));
        // Res(t - a, t - b) = b - a
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[-7, 1])), Ok(BigInt::from(4)));
        assert_eq!(resultant(&p(&[-7, 1]), &p(&[-3, 1])), Ok(BigInt::from(-4)));
        let f = p(&[25, 5, 1, 1, 1]);
        assert_eq!(resultant(&f, &IntPoly::one()), Ok(BigInt::from(1)));
        assert_eq!(resultant(&f, &IntPoly::zero()), Err(PolyError::ZeroPolynomial));
        // Res(f, c) = c^deg f under this convention
        assert_eq!(resultant(&f, &p(&[3])), Ok(BigInt::from(81)));
        // common root
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), Ok(BigInt::from(0)));
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases = [
            (vec![1, 2, 3], vec![4, 5]),
            (vec![-2, 0, 1], vec![-3, 0, 1]),
            (vec![25, 5, 1, 1, 1], vec![1, -1, 0, 2]),
            (vec![6, 0, 4], vec![3, 9, 0, 6]),
            (vec![1, 1, 1, 1, 1, 1, 1], vec![2, 0, 0, 3]),
            (vec![0, 0, 1], vec![0, 1]),
        ];
        for (a, b) in cases {
            let (a, b) = (p(&a), p(&b));
            assert_eq!(resultant(&b, &a).unwrap(), sylvester_resultant(&a, &b), "{a} / {b}");
        }
    }

    #[test]
    fn char_poly_of_power_examples() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(char_poly_of_power(&f, 1), f);
        assert_eq!(char_poly_of_power(&f, 2), p(&[-2, 1]).pow(2));
        let h = IntPoly::new(vec![
            BigInt::from(9_765_625),
            BigInt::from(3125),
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
        ]);
        let f20 = h.compose_power(5);
        assert_eq!(char_poly_of_power(&f20, 5), h.pow(5));
    }

    #[test]
    fn minimal_poly_examples() {
        let f = p(&[25, 5, 1, 1, 1]);
        let cert = certify_irreducible(&f, 2).unwrap();
        assert_eq!(minimal_poly_of_power(&cert, 1), f);
        let h = IntPoly::new(vec![
            BigInt::from(9_765_625),
            BigInt::from(3125),
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
        ]);
        let f20 = h.compose_power(5);
        let cert = certify_irreducible(&f20, 2).unwrap();
        let mp = minimal_poly_of_power(&cert, 5);
        assert_eq!(mp, h);
        assert_eq!(mp.degree(), Some(4));
        let cert = certify_irreducible(&p(&[-2, 0, 1]), 5).unwrap();
        assert_eq!(minimal_poly_of_power(&cert, 2), p(&[-2, 1]));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(p(&[25, 5, 1, 1, 1]).reduce_mod(2).coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(p(&[16, 4, 1, 1, 1]).reduce_mod(3).coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(p(&[2, 4, 6]).reduce_mod(2).coeffs(), &[] as &[u64]);
        assert_eq!(p(&[-1, 1]).reduce_mod(5).coeffs(), &[4, 1]);
    }

    #[test]
    fn text_form() {
        let f: IntPoly = "25,5,1,1,1".parse().unwrap();
        assert_eq!(f, p(&[25, 5, 1, 1, 1]));
        assert_eq!(f.to_string(), "25,5,1,1,1");
        assert_eq!(" -3 , 0,1 ".parse::<IntPoly>().unwrap().to_string(), "-3,0,1");
        assert_eq!("0".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert!("1,,2".parse::<IntPoly>().is_err());
        assert!("x+1".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
    }

    #[test]
    fn gcd_and_radical() {
        let a = p(&[-1, 1]);
        let b = p(&[2, 1]);
        let f = &(&a * &a) * &b;
        assert_eq!(f.gcd(&f.derivative()), a);
        assert_eq!(f.radical(), &a * &b);
        assert_eq!(f.scale(&BigInt::from(-6)).radical(), &a * &b);
        assert!(!f.is_squarefree());
        assert!((&a * &b).is_squarefree());
        let dec = (&f * &p(&[0, 1]).pow(3)).squarefree_decomposition();
        assert_eq!(dec, vec![(b.clone(), 1), (a.clone(), 2), (p(&[0, 1]), 3)]);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-9i64..=9, 1..6)
            .prop_map(|c| IntPoly::from_i64s(&c))
            .prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn resultant_is_multiplicative(f in small_poly(), h in small_poly(), k in small_poly()) {
            let lhs = resultant(&f, &(&h * &k)).unwrap();
            let rhs = resultant(&f, &h).unwrap() * resultant(&f, &k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_swap_sign(f in small_poly(), h in small_poly()) {
            let df = f.degree().unwrap();
            let dh = h.degree().unwrap();
            let swapped = resultant(&h, &f).unwrap();
            let expected = if (df * dh) % 2 == 1 { -swapped } else { swapped };
            prop_assert_eq!(resultant(&f, &h).unwrap(), expected);
            prop_assert_eq!(resultant(&f, &h).unwrap(), sylvester_resultant(&h, &f));
        }

        #[test]
        fn char_poly_of_power_matches_root_product(
            roots in proptest::collection::vec(-5i64..=5, 1..=6),
            d in 1u64..=5,
        ) {
            let f = roots.iter().fold(IntPoly::one(), |acc, &r| &acc * &p(&[-r, 1]));
            let direct = roots
                .iter()
                .fold(IntPoly::one(), |acc, &r| &acc * &p(&[-r.pow(d as u32), 1]));
            prop_assert_eq!(char_poly_of_power(&f, d), direct);
        }

        #[test]
        fn text_roundtrip(f in small_poly()) {
            prop_assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f);
        }
    }
}
