//! Exact arithmetic in `Z[sqrt(D)]`, the polynomial bound on `m`, and the
//! reciprocal-polynomial unit-circle criterion evaluated without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intpoly::QPolynomial;
use crate::numtheory::{ceil_sqrt, integer_sqrt, is_perfect_square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurdError {
    #[error("radicands differ: {0} vs {1}")]
    RadicandMismatch(BigUint, BigUint),
    #[error("coefficients are not reciprocal at index {index}")]
    NotReciprocal { index: usize },
    #[error("criterion hypothesis fails: {0}")]
    HypothesisViolated(&'static str),
    #[error("bound requires q >= 4, dpow >= 1 and r >= 2")]
    InvalidBoundInput,
}

/// `a + b*sqrt(d)`. When `d` is a perfect square the value is kept entirely
/// in `a` with `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    d: BigUint,
    a: BigInt,
    b: BigInt,
}

impl QuadSurd {
    pub fn new(d: BigUint, a: BigInt, b: BigInt) -> Self {
        if !b.is_zero() && is_perfect_square(&d) {
            let s = BigInt::from(integer_sqrt(&d));
            return QuadSurd {
                d,
                a: a + b * s,
                b: BigInt::zero(),
            };
        }
        QuadSurd { d, a, b }
    }

    pub fn from_int(d: &BigUint, a: BigInt) -> Self {
        QuadSurd {
            d: d.clone(),
            a,
            b: BigInt::zero(),
        }
    }

    /// `b * sqrt(d)`.
    pub fn sqrt_multiple(d: &BigUint, b: BigInt) -> Self {
        Self::new(d.clone(), BigInt::zero(), b)
    }

    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.a
    }

    pub fn surd_part(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn same_radicand(&self, other: &QuadSurd) -> Result<(), SurdError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(SurdError::RadicandMismatch(self.d.clone(), other.d.clone()))
        }
    }

    pub fn add(&self, other: &QuadSurd) -> Result<QuadSurd, SurdError> {
        self.same_radicand(other)?;
        Ok(QuadSurd::new(
            self.d.clone(),
            &self.a + &other.a,
            &self.b + &other.b,
        ))
    }

    pub fn sub(&self, other: &QuadSurd) -> Result<QuadSurd, SurdError> {
        self.add(&-other.clone())
    }

    pub fn mul(&self, other: &QuadSurd) -> Result<QuadSurd, SurdError> {
        self.same_radicand(other)?;
        let d = BigInt::from(self.d.clone());
        Ok(QuadSurd::new(
            self.d.clone(),
            &self.a * &other.a + &self.b * &other.b * d,
            &self.a * &other.b + &self.b * &other.a,
        ))
    }

    pub fn scale(&self, k: &BigInt) -> QuadSurd {
        QuadSurd::new(self.d.clone(), &self.a * k, &self.b * k)
    }

    /// Exact sign of `a + b*sqrt(d)`.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        use num_bigint::Sign::*;
        match (sa, sb) {
            (NoSign, NoSign) => Ordering::Equal,
            (_, NoSign) => self.a.cmp(&BigInt::zero()),
            (NoSign, _) => {
                if self.d.is_zero() {
                    Ordering::Equal
                } else {
                    self.b.cmp(&BigInt::zero())
                }
            }
            (Plus, Plus) => Ordering::Greater,
            (Minus, Minus) => Ordering::Less,
            (Plus, Minus) | (Minus, Plus) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigInt::from(self.d.clone());
                let by_magnitude = a2.cmp(&b2d);
                if sa == Plus {
                    by_magnitude
                } else {
                    by_magnitude.reverse()
                }
            }
        }
    }

    pub fn abs(&self) -> QuadSurd {
        if self.sign() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_value(&self, other: &QuadSurd) -> Result<Ordering, SurdError> {
        Ok(self.sub(other)?.sign())
    }

    pub fn to_f64(&self) -> f64 {
        let a: f64 = self.a.to_string().parse().unwrap_or(f64::NAN);
        let b: f64 = self.b.to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = self.d.to_string().parse().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            d: self.d,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", self.a, op, self.b.abs(), self.d)
    }
}

/// Whether `m` satisfies `m*r <= 2Q - 2*sqrt(Q) - 1` with `Q = q^dpow`,
/// decided as `X >= 0` and `4Q <= X^2` where `X = 2Q - 1 - m*r`.
pub fn m_qualifies(q: &BigUint, dpow: u32, r: u64, m: &BigUint) -> bool {
    let big_q = BigInt::from(num_traits::pow(q.clone(), dpow as usize));
    let x: BigInt = BigInt::from(2) * &big_q - 1 - BigInt::from(m.clone()) * BigInt::from(r);
    !x.is_negative() && BigInt::from(4) * big_q <= &x * &x
}

/// Largest `m` with `m*r <= 2*q^dpow - 2*q^(dpow/2) - 1`.
pub fn m_max(q: &BigUint, dpow: u32, r: u64) -> Result<BigUint, SurdError> {
    if *q < BigUint::from(4u32) || dpow == 0 || r < 2 {
        return Err(SurdError::InvalidBoundInput);
    }
    let big_q = num_traits::pow(q.clone(), dpow as usize);
    // X = 2Q - 1 - m r must satisfy X >= ceil(sqrt(4Q)).
    let threshold = ceil_sqrt(&(&big_q * 4u32));
    let room = big_q * 2u32 - 1u32;
    if room < threshold {
        return Err(SurdError::InvalidBoundInput);
    }
    Ok((room - threshold) / r)
}

/// Outcome of the reciprocal unit-circle criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LLReport {
    pub n: usize,
    pub delta: QuadSurd,
    pub s: QuadSurd,
    pub passed: bool,
}

/// For reciprocal `c_0..c_N` and a shift `delta` with `c_N*delta >= 0` and
/// `|c_N| >= |delta|`, computes
/// `S = |c_N + delta| - sum_{j=1}^{N-1} |c_j + delta - c_N|`.
/// `S >= 0` certifies that every zero lies on the unit circle; `S < 0`
/// decides nothing.
pub fn ll_unit_circle_check(coeffs: &[QuadSurd], delta: &QuadSurd) -> Result<LLReport, SurdError> {
    if coeffs.len() < 3 {
        return Err(SurdError::HypothesisViolated("degree N must be at least 2"));
    }
    let n = coeffs.len() - 1;
    for c in coeffs {
        c.same_radicand(delta)?;
    }
    let c_n = &coeffs[n];
    if c_n.is_zero() {
        return Err(SurdError::HypothesisViolated("leading coefficient is zero"));
    }
    if let Some(index) = (0..=n / 2).find(|&j| coeffs[j] != coeffs[n - j]) {
        return Err(SurdError::NotReciprocal { index });
    }
    if c_n.mul(delta)?.sign() == Ordering::Less {
        return Err(SurdError::HypothesisViolated("c_N * delta < 0"));
    }
    if c_n.abs().cmp_value(&delta.abs())? == Ordering::Less {
        return Err(SurdError::HypothesisViolated("|c_N| < |delta|"));
    }
    let shift = delta.sub(c_n)?;
    let mut s = c_n.add(delta)?.abs();
    for c in &coeffs[1..n] {
        s = s.sub(&c.add(&shift)?.abs())?;
    }
    Ok(LLReport {
        n,
        delta: delta.clone(),
        passed: s.sign() != Ordering::Less,
        s,
    })
}

/// Coefficients of `F(t) = f(sqrt(q) * t)` in `Z[sqrt(q)]`.
pub fn scaled_coefficients(f: &QPolynomial) -> Vec<QuadSurd> {
    let q = f.q();
    let qi = BigInt::from(q.clone());
    let mut even_pow = BigInt::one();
    f.poly()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            
            if j % 2 == 0 {
                QuadSurd::from_int(q, c * &even_pow)
            } else {
                let v = QuadSurd::sqrt_multiple(q, c * &even_pow);
                even_pow *= &qi;
                v
            }
        })
        .collect()
}

/// The criterion applied to `f(sqrt(q) t)`, with `delta` defaulting to the
/// leading coefficient `q^g`.
pub fn ll_check_qpoly(f: &QPolynomial, delta: Option<QuadSurd>) -> Result<LLReport, SurdError> {
    let coeffs = scaled_coefficients(f);
    let delta = delta.unwrap_or_else(|| coeffs.last().cloned().expect("nonempty"));
    ll_unit_circle_check(&coeffs, &delta)
}
