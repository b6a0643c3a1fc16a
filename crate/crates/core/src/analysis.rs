//! Deciding whether every root of a symmetric polynomial has modulus
//! `sqrt(q)`.
//!
//! The exact route substitutes `x = t + q/t`: `f(t) = t^g h(t + q/t)` and the
//! roots of `f` all sit on `|t| = sqrt(q)` exactly when `h` has only real
//! roots inside `[-2 sqrt(q), 2 sqrt(q)]`. That is settled by Sturm
//! sequences evaluated at the surd endpoints, so nothing is rounded.
//!
//! [`numeric_roots`] is an independent check: Aberth-Ehrlich iteration in
//! multiprecision floating point.

use std::cmp::Ordering;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intpoly::{check_q_symmetry, IntPoly, PolyError, QPolynomial};
use crate::surd::QuadSurd;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("polynomial does not have the symmetric shape: {0}")]
    NotSymmetric(PolyError),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial vanishes at the interval endpoint {0}")]
    EndpointRoot(String),
    #[error("interval endpoints are out of order")]
    EmptyInterval,
    #[error("root iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize, partial: Box<RootReport> },
    #[error("polynomial must be nonconstant")]
    Constant,
}

/// `h` of degree `g` with `f(t) = t^g h(t + q/t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealWeilPoly {
    pub h: IntPoly,
    pub q: BigUint,
}

impl RealWeilPoly {
    /// Recomputes `t^g h(t + q/t) = sum_k h_k (t^2 + q)^k t^(g-k)`.
    pub fn reconstruct(&self) -> IntPoly {
        let g = self.h.degree().unwrap_or(0);
        let base = IntPoly::new(vec![BigInt::from(self.q.clone()), BigInt::zero(), BigInt::one()]);
        let mut acc = IntPoly::zero();
        let mut power = IntPoly::one();
        for (k, c) in self.h.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let term = IntPoly::monomial(c.clone(), g - k);
                acc = &acc + &(&term * &power);
            }
            power = &power * &base;
        }
        acc
    }
}

/// Builds `h` from `f` through `p_0 = 2, p_1 = x, p_k = x p_{k-1} - q p_{k-2}`,
/// which satisfy `p_k(t + q/t) = t^k + q^k t^-k`.
pub fn real_weil_transform(f: &QPolynomial) -> RealWeilPoly {
    let g = f.g();
    let q = BigInt::from(f.q().clone());
    let x = IntPoly::monomial(BigInt::one(), 1);
    let mut p = Vec::with_capacity(g + 1);
    p.push(IntPoly::constant(BigInt::from(2)));
    p.push(x.clone());
    for k in 2..=g {
        let next = &(&x * &p[k - 1]) - &p[k - 2].scale(&q);
        p.push(next);
    }
    let mut h = p[g].clone();
    for j in 1..g {
        let a = f.a(j);
        if !a.is_zero() {
            h = &h + &p[g - j].scale(&a);
        }
    }
    h = &h + &IntPoly::constant(f.middle());
    RealWeilPoly {
        h,
        q: f.q().clone(),
    }
}

/// Variant of [`real_weil_transform`] taking an unchecked polynomial.
pub fn real_weil_transform_poly(f: &IntPoly, g: usize, q: &BigUint) -> Result<RealWeilPoly, AnalysisError> {
    check_q_symmetry(f, g, q)
        .map(|qp| real_weil_transform(&qp))
        .map_err(AnalysisError::NotSymmetric)
}

/// A point of the extended real line at which signs can be decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    NegInf,
    PosInf,
    Surd(QuadSurd),
    Rational(BigRational),
}

impl Point {
    pub fn integer(n: i64) -> Point {
        Point::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact sign of `p` at this point (at infinity: the limiting sign).
    pub fn sign_of(&self, p: &IntPoly) -> Ordering {
        let Some(deg) = p.degree() else {
            return Ordering::Equal;
        };
        let lc_sign = p.leading().unwrap().cmp(&BigInt::zero());
        match self {
            Point::PosInf => lc_sign,
            Point::NegInf => {
                if deg % 2 == 0 {
                    lc_sign
                } else {
                    lc_sign.reverse()
                }
            }
            Point::Surd(x) => eval_surd(p, x).sign(),
            Point::Rational(x) => p.eval_rational(x).cmp(&BigRational::zero()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Point::NegInf => f64::NEG_INFINITY,
            Point::PosInf => f64::INFINITY,
            Point::Surd(s) => s.to_f64(),
            Point::Rational(r) => {
                let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
                let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    /// Exact comparison of two points.
    pub fn cmp_point(&self, other: &Point) -> Ordering {
        use Point::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Rational(a), Rational(b)) => a.cmp(b),
            (Surd(a), Surd(b)) => a.cmp_value(b).expect("points share a radicand"),
            (Rational(a), Surd(s)) => compare_rational_surd(a, s),
            (Surd(s), Rational(a)) => compare_rational_surd(a, s).reverse(),
        }
    }

    fn negate(&self) -> Point {
        match self {
            Point::NegInf => Point::PosInf,
            Point::PosInf => Point::NegInf,
            Point::Surd(s) => Point::Surd(-s.clone()),
            Point::Rational(r) => Point::Rational(-r.clone()),
        }
    }
}

/// Sign of `num/den - s` as an ordering of `num/den` against `s`.
fn compare_rational_surd(a: &BigRational, s: &QuadSurd) -> Ordering {
    // num/den vs s  <=>  num vs den*s  (den > 0)
    let scaled = s.scale(a.denom());
    QuadSurd::from_int(s.radicand(), a.numer().clone())
        .cmp_value(&scaled)
        .expect("same radicand")
}

fn eval_surd(p: &IntPoly, x: &QuadSurd) -> QuadSurd {
    let d = x.radicand();
    p.coeffs()
        .iter()
        .rev()
        .fold(QuadSurd::from_int(d, BigInt::zero()), |acc, c| {
            acc.mul(x)
                .and_then(|v| v.add(&QuadSurd::from_int(d, c.clone())))
                .expect("same radicand")
        })
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(h: &IntPoly) -> Result<Self, AnalysisError> {
        if h.is_constant() {
            return Err(AnalysisError::Constant);
        }
        if !h.is_squarefree() {
            return Err(AnalysisError::NotSquarefree);
        }
        let mut seq = vec![h.clone(), h.derivative()];
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let prem = a.pseudo_rem(b);
            if prem.is_zero() {
                break;
            }
            // prem = lc(b)^k * rem with k = deg a - deg b + 1
            let k = a.degree().unwrap() - b.degree().unwrap() + 1;
            let lc_negative = b.leading().unwrap().is_negative() && k % 2 == 1;
            let next = if lc_negative { prem } else { -prem };
            seq.push(next.primitive_part());
        }
        Ok(SturmChain { seq })
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.seq[0]
    }

    /// Sign changes along the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Point) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.seq {
            let s = x.sign_of(p);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Point, hi: &Point) -> usize {
        if lo.cmp_point(hi) != Ordering::Less {
            return 0;
        }
        self.variations(lo) - self.variations(hi)
    }

    pub fn count_real(&self) -> usize {
        self.count_half_open(&Point::NegInf, &Point::PosInf)
    }

    fn vanishes_at(&self, x: &Point) -> bool {
        matches!(x, Point::Surd(_) | Point::Rational(_)) && x.sign_of(&self.seq[0]) == Ordering::Equal
    }
}

/// Number of real roots of the squarefree `h` in `(lo, hi]`. A root sitting
/// on either endpoint is reported as [`AnalysisError::EndpointRoot`].
pub fn sturm_count_in_interval(h: &IntPoly, lo: &QuadSurd, hi: &QuadSurd) -> Result<usize, AnalysisError> {
    let chain = SturmChain::new(h)?;
    if lo.cmp_value(hi).map_err(|_| AnalysisError::EmptyInterval)? != Ordering::Less {
        return Err(AnalysisError::EmptyInterval);
    }
    let (lo, hi) = (Point::Surd(lo.clone()), Point::Surd(hi.clone()));
    for end in [&lo, &hi] {
        if chain.vanishes_at(end) {
            let Point::Surd(s) = end else { unreachable!() };
            return Err(AnalysisError::EndpointRoot(s.to_string()));
        }
    }
    Ok(chain.count_half_open(&lo, &hi))
}

/// Why a polynomial fails the modulus condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OffCircleWitness {
    /// `(lo, hi]` isolates one real root of `h` outside the band; it
    /// corresponds to a pair of real roots of `f` off the circle.
    RealRootOutside { lo: BigRational, hi: BigRational },
    /// `h` has this many non-real roots, each giving roots of `f` off the
    /// circle.
    NonRealRoots { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusVerdict {
    pub holds: bool,
    pub transform: RealWeilPoly,
    /// Degree of the squarefree part of `h`.
    pub radical_degree: usize,
    pub real_roots: usize,
    pub roots_in_band: usize,
    /// Roots of the squarefree part at `+-2 sqrt(q)`; each is a double root
    /// `+-sqrt(q)` of `f`.
    pub endpoint_roots: usize,
    pub witness: Option<OffCircleWitness>,
}

impl ModulusVerdict {
    /// Distinct real roots of `f` lying off the circle.
    pub fn off_circle_real_roots(&self) -> usize {
        2 * (self.real_roots - self.roots_in_band)
    }
}

/// Decides whether every root of `f` has modulus exactly `sqrt(q)`.
pub fn exact_modulus_check(f: &QPolynomial) -> ModulusVerdict {
    let transform = real_weil_transform(f);
    let h0 = transform.h.radical();
    let q = f.q();
    let lo = Point::Surd(QuadSurd::sqrt_multiple(q, BigInt::from(-2)));
    let hi = Point::Surd(QuadSurd::sqrt_multiple(q, BigInt::from(2)));
    let chain = SturmChain::new(&h0).expect("radical is squarefree and nonconstant");
    let deg = h0.degree().unwrap();
    let real_roots = chain.count_real();
    let endpoint_roots = [&lo, &hi].iter().filter(|p| chain.vanishes_at(p)).count();
    let roots_in_band = chain.count_half_open(&lo, &hi) + usize::from(chain.vanishes_at(&lo));
    let holds = roots_in_band == deg;
    let witness = if holds {
        None
    } else if real_roots > roots_in_band {
        Some(isolate_outside_root(&h0, &lo, &hi))
    } else {
        Some(OffCircleWitness::NonRealRoots {
            count: deg - real_roots,
        })
    };
    ModulusVerdict {
        holds,
        transform,
        radical_degree: deg,
        real_roots,
        roots_in_band,
        endpoint_roots,
        witness,
    }
}

/// Every real root of `h` lies in `[-bound, bound]`.
fn cauchy_bound(h: &IntPoly) -> BigRational {
    let lc = h.leading().unwrap().abs();
    let max = h.coeffs().iter().map(|c| c.abs()).max().unwrap();
    BigRational::from_integer(max / &lc + BigInt::from(2))
}

fn isolate_outside_root(h0: &IntPoly, lo: &Point, hi: &Point) -> OffCircleWitness {
    let chain = SturmChain::new(h0).unwrap();
    if let Some((a, b)) = isolate_above(&chain, hi) {
        return OffCircleWitness::RealRootOutside { lo: a, hi: b };
    }
    // Reflect: roots of h below lo are roots of h(-x) above -lo.
    let reflected = IntPoly::new(
        h0.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    let rchain = SturmChain::new(&reflected).unwrap();
    let (a, b) = isolate_above(&rchain, &lo.negate()).expect("a real root lies outside the band");
    // root r of h with -b <= r < -a; widen to the half-open (-b - eps, -a]
    // by stepping the lower end down until it is not a root.
    let mut lower = -b;
    let upper = -a;
    let step = (&upper - &lower).abs() / BigRational::from_integer(BigInt::from(4));
    while Point::Rational(lower.clone()).sign_of(h0) == Ordering::Equal
        || chain.count_half_open(&Point::Rational(lower.clone()), &Point::Rational(upper.clone())) != 1
    {
        lower -= &step;
    }
    OffCircleWitness::RealRootOutside { lo: lower, hi: upper }
}

/// Rational `(a, b]` containing exactly one root of the chain's polynomial,
/// with that root strictly above `floor`.
fn isolate_above(chain: &SturmChain, floor: &Point) -> Option<(BigRational, BigRational)> {
    let h = chain.polynomial();
    let mut b = cauchy_bound(h);
    let above = |lo: &BigRational, hi: &BigRational| {
        let lo_pt = Point::Rational(lo.clone());
        let start = if lo_pt.cmp_point(floor) == Ordering::Less {
            floor.clone()
        } else {
            lo_pt
        };
        chain.count_half_open(&start, &Point::Rational(hi.clone()))
    };
    let mut a = -b.clone();
    if above(&a, &b) == 0 {
        return None;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    loop {
        let total = chain.count_half_open(&Point::Rational(a.clone()), &Point::Rational(b.clone()));
        if total == 1 && Point::Rational(a.clone()).cmp_point(floor) != Ordering::Less {
            return Some((a, b));
        }
        let mid = (&a + &b) / &two;
        if above(&mid, &b) >= 1 {
            a = mid;
        } else {
            b = mid;
        }
    }
}

type Float = FBig<HalfEven, 2>;

fn to_float(x: &BigInt, bits: usize) -> Float {
    let i = IBig::from_str_radix(&x.to_str_radix(16), 16).expect("hex digits");
    Float::from(i).with_precision(bits).value()
}

fn float_to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

#[derive(Clone, Debug)]
struct Cx {
    re: Float,
    im: Float,
}

impl Cx {
    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sqr(&self) -> Float {
        &self.re * &self.re + &self.im * &self.im
    }

    fn is_zero(&self) -> bool {
        self.re == Float::ZERO && self.im == Float::ZERO
    }

    fn div(&self, o: &Cx) -> Cx {
        let den = o.norm_sqr();
        Cx {
            re: (&self.re * &o.re + &self.im * &o.im) / &den,
            im: (&self.im * &o.re - &self.re * &o.im) / &den,
        }
    }

    fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }
}

/// One approximated root.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxRoot {
    pub re: f64,
    pub im: f64,
    /// Whether the imaginary part vanished to working precision.
    pub is_real: bool,
    /// `| |z| - sqrt(q) | / sqrt(q)`, or `NaN` without a reference `q`.
    pub modulus_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    /// All roots, repeated according to multiplicity.
    pub roots: Vec<ApproxRoot>,
    pub max_modulus_deviation: f64,
    pub precision_bits: usize,
    pub sweeps: usize,
}

impl RootReport {
    pub fn count_within(&self, tol: f64) -> usize {
        self.roots.iter().filter(|r| r.modulus_deviation < tol).count()
    }

    pub fn real_count(&self) -> usize {
        self.roots.iter().filter(|r| r.is_real).count()
    }
}

pub const MAX_SWEEPS: usize = 200;

/// Working precision used when the caller does not pick one:
/// `max(128, 2 * (bits of the largest coefficient) + 64)`.
pub fn default_precision(f: &IntPoly) -> usize {
    (2 * f.max_coeff_bits() as usize + 64).max(128)
}

/// Approximates every complex root of `f` by Aberth-Ehrlich iteration at
/// `precision_bits` bits, after splitting `f` into squarefree factors so
/// each run sees only simple roots.
pub fn numeric_roots(f: &IntPoly, precision_bits: usize, q: Option<&BigUint>) -> Result<RootReport, AnalysisError> {
    if f.is_constant() {
        return Err(AnalysisError::Constant);
    }
    let precision_bits = precision_bits.max(64);
    let work = precision_bits + 32;
    let sqrt_q = q.map(|q| to_float(&BigInt::from(q.clone()), work).sqrt());
    let mut roots = Vec::new();
    let mut sweeps = 0;
    let mut failed = false;
    for (factor, mult) in f.squarefree_decomposition() {
        let (found, used, ok) = aberth_simple(&factor, precision_bits, work);
        sweeps = sweeps.max(used);
        failed |= !ok;
        for z in found {
            let approx = summarize(&z, sqrt_q.as_ref(), precision_bits);
            for _ in 0..mult {
                roots.push(approx.clone());
            }
        }
    }
    let max_modulus_deviation = roots
        .iter()
        .map(|r| r.modulus_deviation)
        .fold(0.0f64, |acc, d| if d.is_nan() { acc } else { acc.max(d) });
    let report = RootReport {
        roots,
        max_modulus_deviation,
        precision_bits,
        sweeps,
    };
    if failed {
        return Err(AnalysisError::NoConvergence {
            sweeps,
            partial: Box::new(report),
        });
    }
    Ok(report)
}

fn summarize(z: &Cx, sqrt_q: Option<&Float>, precision_bits: usize) -> ApproxRoot {
    let modulus = z.abs();
    let modulus_deviation = match sqrt_q {
        Some(s) => {
            let dev = (&modulus - s) / s;
            float_to_f64(&dev).abs()
        }
        None => f64::NAN,
    };
    let scale = if modulus > Float::ONE { modulus } else { Float::ONE };
    let im_abs = if z.im < Float::ZERO { -z.im.clone() } else { z.im.clone() };
    let tiny = scale * pow2(-(precision_bits as isize) / 4);
    ApproxRoot {
        re: float_to_f64(&z.re),
        im: float_to_f64(&z.im),
        is_real: im_abs <= tiny,
        modulus_deviation,
    }
}

fn pow2(e: isize) -> Float {
    Float::from_parts(IBig::ONE, e)
}

/// Roots of a squarefree integer polynomial. Returns the roots, sweeps used
/// and whether the residual test passed.
fn aberth_simple(f: &IntPoly, precision_bits: usize, work: usize) -> (Vec<Cx>, usize, bool) {
    let zero_mult = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let zero = || Cx {
        re: Float::ZERO.with_precision(work).value(),
        im: Float::ZERO.with_precision(work).value(),
    };
    let mut out: Vec<Cx> = (0..zero_mult).map(|_| zero()).collect();
    let stripped = IntPoly::new(f.coeffs()[zero_mult..].to_vec());
    let n = stripped.degree().unwrap_or(0);
    if n == 0 {
        return (out, 0, true);
    }
    let coeffs: Vec<Float> = stripped.coeffs().iter().map(|c| to_float(c, work)).collect();
    let dcoeffs: Vec<Float> = stripped.derivative().coeffs().iter().map(|c| to_float(c, work)).collect();
    let abs_coeffs: Vec<Float> = coeffs
        .iter()
        .map(|c| if *c < Float::ZERO { -c.clone() } else { c.clone() })
        .collect();

    // Start on a circle whose radius is the geometric mean of the root moduli.
    let c0 = float_to_f64(&abs_coeffs[0]).max(f64::MIN_POSITIVE);
    let cn = float_to_f64(&abs_coeffs[n]).max(f64::MIN_POSITIVE);
    let radius = (c0.ln() - cn.ln()) / n as f64;
    let radius = radius.exp();
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Cx> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Cx {
                re: f64_to_float(radius * angle.cos(), work),
                im: f64_to_float(radius * angle.sin(), work),
            }
        })
        .collect();

    let tol_exp = -(precision_bits as isize) / 2;
    let tol = pow2(tol_exp);
    let mut done = vec![false; n];
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && done.iter().any(|d| !d) {
        sweeps += 1;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&coeffs, &dcoeffs, &z[k]);
            if p.is_zero() {
                done[k] = true;
                continue;
            }
            let mut repulsion = zero();
            for j in 0..n {
                if j != k {
                    let diff = z[k].sub(&z[j]);
                    if !diff.is_zero() {
                        repulsion = repulsion.add(&one(work).div(&diff));
                    }
                }
            }
            let newton = if dp.is_zero() { p.clone() } else { p.div(&dp) };
            let denom = one(work).sub(&newton.mul(&repulsion));
            let step = if denom.is_zero() { newton } else { newton.div(&denom) };
            z[k] = z[k].sub(&step);
            let mag = z[k].abs();
            let scale = if mag > Float::ONE { mag } else { Float::ONE };
            if step.abs() <= &tol * &scale {
                done[k] = true;
            }
        }
    }
    // one polishing sweep at full precision
    for k in 0..n {
        let (p, dp) = horner_with_derivative(&coeffs, &dcoeffs, &z[k]);
        if !p.is_zero() && !dp.is_zero() {
            let mut repulsion = zero();
            for j in 0..n {
                if j != k {
                    let diff = z[k].sub(&z[j]);
                    if !diff.is_zero() {
                        repulsion = repulsion.add(&one(work).div(&diff));
                    }
                }
            }
            let newton = p.div(&dp);
            let denom = one(work).sub(&newton.mul(&repulsion));
            if !denom.is_zero() {
                z[k] = z[k].sub(&newton.div(&denom));
            }
        }
    }
    let ok = done.iter().all(|&d| d)
        && z.iter().all(|zk| {
            let (p, _) = horner_with_derivative(&coeffs, &dcoeffs, zk);
            let m = zk.abs();
            let bound = abs_coeffs
                .iter()
                .rev()
                .fold(Float::ZERO.with_precision(work).value(), |acc, c| acc * &m + c);
            p.abs() <= bound * &tol
        });
    out.extend(z);
    (out, sweeps, ok)
}

fn one(work: usize) -> Cx {
    Cx {
        re: Float::ONE.with_precision(work).value(),
        im: Float::ZERO.with_precision(work).value(),
    }
}

fn f64_to_float(x: f64, work: usize) -> Float {
    Float::try_from(x).expect("finite start value").with_precision(work).value()
}

fn horner_with_derivative(coeffs: &[Float], dcoeffs: &[Float], z: &Cx) -> (Cx, Cx) {
    let eval = |cs: &[Float]| {
        let mut acc = Cx {
            re: Float::ZERO,
            im: Float::ZERO,
        };
        for c in cs.iter().rev() {
            acc = acc.mul(z);
            acc.re = &acc.re + c;
        }
        acc
    };
    (eval(coeffs), eval(dcoeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn qpoly(c: &[i64], g: usize, q: u64) -> QPolynomial {
        check_q_symmetry(&p(c), g, &BigUint::from(q)).unwrap()
    }

    fn surd(d: u64, a: i64, b: i64) -> QuadSurd {
        QuadSurd::new(BigUint::from(d), BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn transform_examples() {
        let f = qpoly(&[25, 5, 1, 1, 1], 2, 5);
        let t = real_weil_transform(&f);
        assert_eq!(t.h, p(&[-9, 1, 1]));
        assert_eq!(t.reconstruct(), *f.poly());

        let f = qpoly(&[2, 0, 1], 1, 2);
        assert_eq!(real_weil_transform(&f).h, p(&[0, 1]));

        let f = qpoly(&[4, 0, 3, 0, 1], 2, 2);
        assert_eq!(f.poly(), &(&p(&[2, -1, 1]) * &p(&[2, 1, 1])));
        assert_eq!(real_weil_transform(&f).h, p(&[-1, 0, 1]));

        assert!(matches!(
            real_weil_transform_poly(&p(&[5, 3, 1]), 1, &BigUint::from(2u32)),
            Err(AnalysisError::NotSymmetric(_))
        ));
    }

    #[test]
    fn sturm_examples() {
        let two = surd(1, 2, 0);
        let zero = surd(1, 0, 0);
        assert_eq!(sturm_count_in_interval(&p(&[-2, 0, 1]), &zero, &two), Ok(1));
        assert_eq!(
            sturm_count_in_interval(&p(&[-9, 1, 1]), &surd(5, 0, -2), &surd(5, 0, 2)),
            Ok(2)
        );
        assert_eq!(
            sturm_count_in_interval(&p(&[-9, 0, 1]), &surd(2, 0, -2), &surd(2, 0, 2)),
            Ok(0)
        );
        assert_eq!(
            sturm_count_in_interval(&p(&[-4, 0, 1]), &zero, &two),
            Err(AnalysisError::EndpointRoot("2".into()))
        );
        assert_eq!(
            sturm_count_in_interval(&p(&[1, 2, 1]), &zero, &two),
            Err(AnalysisError::NotSquarefree)
        );
        assert_eq!(
            sturm_count_in_interval(&p(&[-2, 0, 1]), &two, &zero),
            Err(AnalysisError::EmptyInterval)
        );
    }

    #[test]
    fn chain_counts_including_endpoint_roots() {
        // roots -2, 1, 3
        let h = &(&p(&[2, 1]) * &p(&[-1, 1])) * &p(&[-3, 1]);
        let chain = SturmChain::new(&h).unwrap();
        assert_eq!(chain.count_real(), 3);
        assert_eq!(chain.count_half_open(&Point::integer(-2), &Point::integer(3)), 2);
        assert_eq!(chain.count_half_open(&Point::integer(-3), &Point::integer(1)), 2);
        assert_eq!(chain.count_half_open(&Point::integer(1), &Point::integer(2)), 0);
    }

    #[test]
    fn modulus_examples() {
        let counter = qpoly(&[8, 4, 2, 5, 1, 1, 1], 3, 2);
        let v = exact_modulus_check(&counter);
        assert!(!v.holds);
        assert_eq!(v.off_circle_real_roots(), 2);
        match v.witness {
            Some(OffCircleWitness::RealRootOutside { lo, hi }) => {
                let h = &v.transform.h;
                let chain = SturmChain::new(h).unwrap();
                assert_eq!(
                    chain.count_half_open(&Point::Rational(lo.clone()), &Point::Rational(hi.clone())),
                    1
                );
                // the isolated root is outside [-2 sqrt2, 2 sqrt2]
                let band = 2.0 * 2f64.sqrt();
                let (lo, hi) = (Point::Rational(lo).to_f64(), Point::Rational(hi).to_f64());
                assert!(lo >= band || hi <= -band, "({lo}, {hi}]");
            }
            other => panic!("unexpected witness {other:?}"),
        }

        assert!(exact_modulus_check(&qpoly(&[64, 16, 2, 2, 1], 2, 8)).holds);
        assert!(exact_modulus_check(&qpoly(&[25, 5, 1, 1, 1], 2, 5)).holds);
    }

    #[test]
    fn modulus_endpoint_and_nonreal_cases() {
        // (t - 2)^2 (t + 2)^2 with q = 4: roots on the circle at +-sqrt(q)
        let f = &p(&[-2, 1]).pow(2) * &p(&[2, 1]).pow(2);
        let v = exact_modulus_check(&check_q_symmetry(&f, 2, &BigUint::from(4u32)).unwrap());
        assert!(v.holds);
        assert_eq!(v.endpoint_roots, 2);
        // (t^2 - 3)^2 with q = 3
        let f = p(&[-3, 0, 1]).pow(2);
        let v = exact_modulus_check(&check_q_symmetry(&f, 2, &BigUint::from(3u32)).unwrap());
        assert!(v.holds);
        assert_eq!(v.endpoint_roots, 2);
        // h = x^2 + 1 has no real roots
        let f = qpoly(&[4, 0, 5, 0, 1], 2, 2);
        assert_eq!(real_weil_transform(&f).h, p(&[1, 0, 1]));
        let v = exact_modulus_check(&f);
        assert!(!v.holds);
        assert_eq!(v.witness, Some(OffCircleWitness::NonRealRoots { count: 2 }));
        // a real root of h below the band: t^2 + 5t + 2, q = 2
        let f = qpoly(&[2, 5, 1], 1, 2);
        let v = exact_modulus_check(&f);
        assert!(!v.holds);
        match v.witness {
            Some(OffCircleWitness::RealRootOutside { lo, hi }) => {
                assert!(Point::Rational(hi.clone()).to_f64() <= -2.0 * 2f64.sqrt());
                assert!(Point::Rational(lo).to_f64() < -5.0 + 1e-9);
                assert!(Point::Rational(hi).to_f64() >= -5.0);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn numeric_examples() {
        let r = numeric_roots(&p(&[-2, 0, 1]), 128, Some(&BigUint::from(2u32))).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.max_modulus_deviation < 1e-30);
        let mut re: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 2f64.sqrt()).abs() < 1e-15);
        assert!((re[1] - 2f64.sqrt()).abs() < 1e-15);

        let f = p(&[25, 5, 1, 1, 1]);
        let r = numeric_roots(&f, 128, Some(&BigUint::from(5u32))).unwrap();
        assert!(r.max_modulus_deviation < 1e-12);

        let counter = p(&[8, 4, 2, 5, 1, 1, 1]);
        let r = numeric_roots(&counter, 128, Some(&BigUint::from(2u32))).unwrap();
        assert_eq!(r.roots.len(), 6);
        assert_eq!(r.count_within(1e-12), 4);
        let off: Vec<_> = r.roots.iter().filter(|z| z.modulus_deviation > 0.1).collect();
        assert_eq!(off.len(), 2);
        assert!(off.iter().all(|z| z.is_real));
    }

    #[test]
    fn numeric_handles_multiplicity_and_zero() {
        let f = &p(&[-3, 0, 1]).pow(3) * &p(&[0, 1]).pow(2);
        let r = numeric_roots(&f, 128, None).unwrap();
        assert_eq!(r.roots.len(), 8);
        assert_eq!(r.roots.iter().filter(|z| z.re == 0.0 && z.im == 0.0).count(), 2);
        assert_eq!(r.real_count(), 8);
    }

    #[test]
    fn default_precision_rule() {
        assert_eq!(default_precision(&p(&[1, 1])), 128);
        let big = IntPoly::new(vec![BigInt::one() << 100u32, BigInt::one()]);
        assert_eq!(default_precision(&big), 2 * 101 + 64);
    }

    fn random_symmetric(g: usize, a: &[i64], q: u64) -> QPolynomial {
        let mut c = vec![BigInt::zero(); 2 * g + 1];
        c[2 * g] = BigInt::one();
        c[g] = BigInt::from(a[g - 1]);
        let qb = BigInt::from(q);
        for j in 1..g {
            c[2 * g - j] = BigInt::from(a[j - 1]);
            c[j] = BigInt::from(a[j - 1]) * num_traits::pow(qb.clone(), g - j);
        }
        c[0] = num_traits::pow(qb, g);
        check_q_symmetry(&IntPoly::new(c), g, &BigUint::from(q)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn transform_roundtrip(
            g in 1usize..=8,
            a in proptest::collection::vec(-10i64..=10, 8),
            q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]),
        ) {
            let f = random_symmetric(g, &a, q);
            prop_assert_eq!(real_weil_transform(&f).reconstruct(), f.poly().clone());
        }

        #[test]
        fn sturm_real_count_matches_numeric(c in proptest::collection::vec(-6i64..=6, 2..=9)) {
            let h = p(&c);
            prop_assume!(!h.is_constant());
            let h0 = h.radical();
            let chain = SturmChain::new(&h0).unwrap();
            let r = numeric_roots(&h0, 128, None).unwrap();
            prop_assert_eq!(chain.count_real(), r.real_count());
        }
    }
}
