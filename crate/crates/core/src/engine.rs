//! Parameter tuples, the explicit construction of `f`, per-polynomial
//! classification reports and deterministic parameter sweeps.

use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{default_precision, exact_modulus_check, numeric_roots, AnalysisError, OffCircleWitness};
use crate::intpoly::{check_q_symmetry, cyclotomic, minimal_poly_of_power, IntPoly, QPolynomial};
use crate::modpoly::{certify_irreducible, find_irreducibility_certificate, IrreducibilityCertificate};
use crate::numtheory::{first_primes, is_prime_u64, is_primitive_root_mod, mod_inverse, prime_power_decompose};
use crate::surd::{ll_check_qpoly, m_max, m_qualifies};

/// Relative modulus deviation below which a numeric root counts as lying on
/// the circle.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

/// Primes tried for an irreducibility certificate on raw inputs.
pub const RAW_CERTIFICATE_PRIMES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid tuple: {}", failed_list(.0))]
    InvalidTuple(Vec<Check>),
    #[error("expected a polynomial of degree 4, found degree {0}")]
    WrongDimension(usize),
    #[error("search range would produce more than {limit} candidates")]
    RangeTooLarge { limit: usize },
    #[error("could not start worker pool: {0}")]
    WorkerPool(String),
}

fn failed_list(checks: &[Check]) -> String {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} fails", c.condition))
        .collect::<Vec<_>>()
        .join("; ")
}

/// `(rho, b, r, p, n, m)` with `g = rho^(b-1) (rho-1) / 2` and `q = p^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamTuple {
    pub rho: u64,
    pub b: u32,
    pub r: u64,
    pub p: u64,
    pub n: u32,
    pub m: BigUint,
}

impl ParamTuple {
    pub fn new(rho: u64, b: u32, r: u64, p: u64, n: u32, m: impl Into<BigUint>) -> Self {
        ParamTuple {
            rho,
            b,
            r,
            p,
            n,
            m: m.into(),
        }
    }

    /// `rho^(b-1)`, or `None` on overflow.
    pub fn step(&self) -> Option<u64> {
        self.rho.checked_pow(self.b.checked_sub(1)?)
    }

    /// `2g = rho^(b-1) (rho - 1)`, or `None` on overflow.
    pub fn two_g(&self) -> Option<u64> {
        self.step()?.checked_mul(self.rho.checked_sub(1)?)
    }

    pub fn g(&self) -> Option<usize> {
        self.two_g().and_then(|t| usize::try_from(t / 2).ok())
    }

    pub fn q(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.n as usize)
    }

    /// `q`, unless it certainly has more than `max_bits` bits.
    pub fn q_bounded(&self, max_bits: u64) -> Option<BigUint> {
        let p_bits = 64 - u64::from(self.p.leading_zeros());
        if self.p > 1 && u64::from(self.n).saturating_mul(p_bits.saturating_sub(1)) > max_bits {
            return None;
        }
        Some(self.q())
    }

    pub fn record(&self) -> TupleRecord {
        TupleRecord {
            rho: self.rho,
            b: self.b,
            r: self.r,
            p: self.p,
            n: self.n,
            m: self.m.to_string(),
        }
    }
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(rho={}, b={}, r={}, p={}, n={}, m={})",
            self.rho, self.b, self.r, self.p, self.n, self.m
        )
    }
}

/// Serialized form of a [`ParamTuple`]; `m` is a decimal string since it can
/// exceed 64 bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub rho: u64,
    pub b: u32,
    pub r: u64,
    pub p: u64,
    pub n: u32,
    pub m: String,
}

/// Computational caps on tuples and sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub max_two_g: u64,
    pub max_q: BigUint,
    pub max_candidates: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_two_g: 256,
            max_q: BigUint::one() << 32u32,
            max_candidates: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    RhoPrime,
    BPositive,
    RPrime,
    RPrimitiveRoot,
    PPrime,
    NPositive,
    QAtLeastFour,
    QOneModR,
    MInRange,
    MNotMinusInverse,
    WithinLimits,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::RhoPrime => "rho prime and rho >= 5",
            Condition::BPositive => "b >= 1",
            Condition::RPrime => "r prime",
            Condition::RPrimitiveRoot => "r primitive root mod rho^2",
            Condition::PPrime => "p prime",
            Condition::NPositive => "n >= 1",
            Condition::QAtLeastFour => "q >= 4",
            Condition::QOneModR => "q ≡ 1 (mod r)",
            Condition::MInRange => "0 <= m <= m_max",
            Condition::MNotMinusInverse => "m ≢ -1/r (mod p)",
            Condition::WithinLimits => "2g and q within limits",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub condition: Condition,
    pub passed: bool,
    pub detail: String,
}

fn check(condition: Condition, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        condition,
        passed,
        detail: detail.into(),
    }
}

/// Evaluates every hypothesis of the construction separately.
pub fn validate_tuple(t: &ParamTuple, limits: &Limits) -> Vec<Check> {
    let Some(q) = t.q_bounded(limits.max_q.bits() + 1) else {
        return validate_oversized(t);
    };
    let rho_ok = t.rho >= 5 && is_prime_u64(t.rho);
    let r_ok = is_prime_u64(t.r);
    let p_ok = is_prime_u64(t.p);
    let mut out = vec![
        check(Condition::RhoPrime, rho_ok, format!("rho = {}", t.rho)),
        check(Condition::BPositive, t.b >= 1, format!("b = {}", t.b)),
        check(Condition::RPrime, r_ok, format!("r = {}", t.r)),
    ];
    let rho_sq = t.rho.checked_mul(t.rho);
    let prim = match rho_sq {
        Some(n) if n > 1 && t.r < i64::MAX as u64 => is_primitive_root_mod(t.r as i64, n),
        _ => false,
    };
    out.push(check(Condition::RPrimitiveRoot, prim, format!("r = {} mod {}", t.r, t.rho.saturating_mul(t.rho))));
    out.push(check(Condition::PPrime, p_ok, format!("p = {}", t.p)));
    out.push(check(Condition::NPositive, t.n >= 1, format!("n = {}", t.n)));
    out.push(check(Condition::QAtLeastFour, q >= BigUint::from(4u32), format!("q = {q}")));
    let q_mod_r = if t.r == 0 { None } else { Some(&q % t.r) };
    out.push(check(
        Condition::QOneModR,
        t.r >= 2 && q_mod_r.as_ref().is_some_and(|v| v.is_one()),
        match &q_mod_r {
            Some(v) => format!("q mod r = {v}"),
            None => "r = 0".to_string(),
        },
    ));
    let two_g = t.two_g().filter(|_| t.b >= 1 && t.rho >= 2);
    let within = two_g.is_some_and(|v| v <= limits.max_two_g) && q <= limits.max_q;
    out.push(check(
        Condition::WithinLimits,
        within,
        match two_g {
            Some(v) => format!("2g = {v}, q = {q}"),
            None => "2g overflows".to_string(),
        },
    ));
    let m_check = match t.step() {
        _ if !within || t.r < 2 || q < BigUint::from(4u32) => {
            check(Condition::MInRange, false, "not evaluated")
        }
        Some(step) => {
            let step = step as u32;
            let ok = m_qualifies(&q, step, t.r, &t.m);
            let detail = match m_max(&q, step, t.r) {
                Ok(mm) => format!("m = {}, m_max = {mm}", t.m),
                Err(_) => format!("m = {}, no admissible m", t.m),
            };
            check(Condition::MInRange, ok, detail)
        }
        None => check(Condition::MInRange, false, "not evaluated"),
    };
    out.push(m_check);
    let inv = if p_ok && t.r < i64::MAX as u64 {
        mod_inverse(t.r as i64, t.p).ok()
    } else {
        None
    };
    out.push(match inv {
        Some(inv) => {
            let forbidden = (t.p - inv) % t.p;
            let m_mod_p = (&t.m % t.p).to_u64().unwrap();
            check(
                Condition::MNotMinusInverse,
                m_mod_p != forbidden,
                format!("m mod p = {m_mod_p}, -1/r mod p = {forbidden}"),
            )
        }
        None => check(Condition::MNotMinusInverse, false, "r not invertible mod p"),
    });
    out
}

/// Checks for a tuple whose `q` is far beyond the limits; `q` itself is
/// never formed.
fn validate_oversized(t: &ParamTuple) -> Vec<Check> {
    let rho_sq = t.rho.checked_mul(t.rho).unwrap_or(0);
    let prim = rho_sq > 1 && t.r < i64::MAX as u64 && is_primitive_root_mod(t.r as i64, rho_sq);
    let q_mod_r = (t.r >= 2).then(|| BigUint::from(t.p).modpow(&BigUint::from(t.n), &BigUint::from(t.r)));
    vec![
        check(Condition::RhoPrime, t.rho >= 5 && is_prime_u64(t.rho), format!("rho = {}", t.rho)),
        check(Condition::BPositive, t.b >= 1, format!("b = {}", t.b)),
        check(Condition::RPrime, is_prime_u64(t.r), format!("r = {}", t.r)),
        check(Condition::RPrimitiveRoot, prim, format!("r = {} mod rho^2", t.r)),
        check(Condition::PPrime, is_prime_u64(t.p), format!("p = {}", t.p)),
        check(Condition::NPositive, t.n >= 1, format!("n = {}", t.n)),
        check(Condition::QAtLeastFour, true, "q is huge"),
        check(
            Condition::QOneModR,
            q_mod_r.as_ref().is_some_and(|v| v.is_one()),
            "q mod r checked by modular exponentiation",
        ),
        check(Condition::WithinLimits, false, format!("q = {}^{} too large", t.p, t.n)),
        check(Condition::MInRange, false, "not evaluated"),
        check(Condition::MNotMinusInverse, false, "not evaluated"),
    ]
}

pub fn is_valid(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// `f = t^(2g) + (mr+1) t^g + q^g + sum_{j=1}^{g-1} a_j (t^(2g-j) + q^(g-j) t^j)`
/// with `a_j = 1` exactly when `rho^(b-1)` divides `j`.
pub fn construct(t: &ParamTuple, limits: &Limits) -> Result<QPolynomial, EngineError> {
    let checks = validate_tuple(t, limits);
    if !is_valid(&checks) {
        return Err(EngineError::InvalidTuple(checks));
    }
    let g = t.g().unwrap();
    let step = t.step().unwrap() as usize;
    let q = t.q();
    let qi = BigInt::from(q.clone());
    let mut coeffs = vec![BigInt::zero(); 2 * g + 1];
    coeffs[2 * g] = BigInt::one();
    coeffs[g] = BigInt::from(t.m.clone()) * t.r + 1;
    let mut q_pow = BigInt::one();
    // q_pow = q^(g-j) as j runs down from g-1 to 1
    for j in (1..g).rev() {
        q_pow *= &qi;
        if j % step == 0 {
            coeffs[2 * g - j] = BigInt::one();
            coeffs[j] = q_pow.clone();
        }
    }
    coeffs[0] = q_pow * &qi;
    let f = IntPoly::new(coeffs);
    Ok(check_q_symmetry(&f, g, &q).expect("construction is symmetric"))
}

/// `gcd(a_g, p) = 1`.
pub fn certify_ordinary(f: &QPolynomial, p: u64) -> bool {
    f.middle().gcd(&BigInt::from(p)).is_one()
}

/// `f mod r` equals `Phi_{rho^b} mod r` and is irreducible there.
pub fn certify_simple(f: &QPolynomial, r: u64, rho: u64, b: u32) -> bool {
    if !is_prime_u64(r) {
        return false;
    }
    let Some(n) = rho.checked_pow(b) else {
        return false;
    };
    f.poly().reduce_mod(r) == cyclotomic(n).reduce_mod(r) && certify_irreducible(f.poly(), r).is_some()
}

/// The dimension-two test `a_1^2 ∉ {0, q + a_2, 2 a_2, 3 a_2 - 3q}`.
pub fn absolutely_simple_g2(f: &QPolynomial) -> Result<bool, EngineError> {
    if f.g() != 2 {
        return Err(EngineError::WrongDimension(2 * f.g()));
    }
    let a1 = f.a(1);
    let a2 = f.a(2);
    let q = BigInt::from(f.q().clone());
    let sq = &a1 * &a1;
    let forbidden = [BigInt::zero(), &q + &a2, &a2 * 2, &a2 * 3 - &q * 3];
    Ok(!forbidden.contains(&sq))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerTestOutcome {
    /// `theta^d` has a minimal polynomial of degree `< deg f`.
    CertifiedNo { d: u64, degree: usize },
    /// Every `d` in `2..=bound` keeps full degree; not a proof.
    NoObstructionUpTo { bound: u64 },
}

pub fn absolute_simplicity_power_test(cert: &IrreducibilityCertificate, d_bound: u64) -> PowerTestOutcome {
    let n = cert.poly().degree().unwrap();
    for d in 2..=d_bound {
        let degree = minimal_poly_of_power(cert, d).degree().unwrap();
        if degree < n {
            return PowerTestOutcome::CertifiedNo { d, degree };
        }
    }
    PowerTestOutcome::NoObstructionUpTo { bound: d_bound }
}

/// Heuristic default bound `2 g^2` for the power test.
pub fn default_d_bound(g: usize) -> u64 {
    (2 * g * g).max(2) as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyInput {
    Tuple(ParamTuple),
    Poly { poly: IntPoly, q: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassifyConfig {
    pub d_bound: Option<u64>,
    pub precision_bits: Option<usize>,
    pub timings: bool,
    pub limits: Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Ll,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LlStatus {
    Passed,
    Inconclusive,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsSimple {
    CertifiedYes,
    CertifiedNo,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for AbsSimple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbsSimple::CertifiedYes => "certified_yes",
            AbsSimple::CertifiedNo => "certified_no",
            AbsSimple::Inconclusive => "inconclusive",
            AbsSimple::NotApplicable => "not_applicable",
        })
    }
}

/// Everything known about one input. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub tuple: Option<TupleRecord>,
    pub g: Option<usize>,
    pub q: String,
    pub poly: String,
    pub symmetric: bool,
    pub is_q_polynomial: bool,
    pub method: Method,
    pub off_circle_real_roots: Option<usize>,
    pub modulus_witness: Option<String>,
    pub ll_passed: Option<bool>,
    pub ll_status: LlStatus,
    pub ordinary: Option<bool>,
    /// `None` when no modular certificate was found.
    pub simple: Option<bool>,
    pub simple_prime: Option<u64>,
    pub absolutely_simple: AbsSimple,
    pub witness_d: Option<u64>,
    pub witness_degree: Option<usize>,
    pub d_bound: Option<u64>,
    pub numeric_on_circle: Option<usize>,
    pub numeric_real_off_circle: Option<usize>,
    pub max_modulus_deviation: Option<f64>,
    pub precision_bits: Option<usize>,
    pub error: Option<String>,
    pub timings_ms: Option<f64>,
}

impl ClassificationReport {
    fn blank(tuple: Option<&ParamTuple>, poly: &IntPoly, q: &BigUint) -> Self {
        ClassificationReport {
            tuple: tuple.map(ParamTuple::record),
            g: poly.degree().filter(|d| d % 2 == 0 && *d > 0).map(|d| d / 2),
            q: q.to_string(),
            poly: poly.to_string(),
            symmetric: false,
            is_q_polynomial: false,
            method: Method::Exact,
            off_circle_real_roots: None,
            modulus_witness: None,
            ll_passed: None,
            ll_status: LlStatus::NotApplicable,
            ordinary: None,
            simple: None,
            simple_prime: None,
            absolutely_simple: AbsSimple::NotApplicable,
            witness_d: None,
            witness_degree: None,
            d_bound: None,
            numeric_on_circle: None,
            numeric_real_off_circle: None,
            max_modulus_deviation: None,
            precision_bits: None,
            error: None,
            timings_ms: None,
        }
    }

    /// Column names of [`Self::flat_fields`], matching the CSV header.
    pub const COLUMNS: [&'static str; 29] = [
        "rho",
        "b",
        "r",
        "p",
        "n",
        "m",
        "g",
        "q",
        "poly",
        "symmetric",
        "is_q_polynomial",
        "method",
        "off_circle_real_roots",
        "modulus_witness",
        "ll_passed",
        "ll_status",
        "ordinary",
        "simple",
        "simple_prime",
        "absolutely_simple",
        "witness_d",
        "witness_degree",
        "d_bound",
        "numeric_on_circle",
        "numeric_real_off_circle",
        "max_modulus_deviation",
        "precision_bits",
        "error",
        "timings_ms",
    ];

    /// One text cell per column; absent values are empty strings.
    pub fn flat_fields(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        fn tag<T: Serialize>(v: &T) -> String {
            match serde_json::to_value(v).expect("serializable") {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            }
        }
        let t = self.tuple.as_ref();
        vec![
            opt(&t.map(|t| t.rho)),
            opt(&t.map(|t| t.b)),
            opt(&t.map(|t| t.r)),
            opt(&t.map(|t| t.p)),
            opt(&t.map(|t| t.n)),
            opt(&t.map(|t| t.m.clone())),
            opt(&self.g),
            self.q.clone(),
            self.poly.clone(),
            self.symmetric.to_string(),
            self.is_q_polynomial.to_string(),
            tag(&self.method),
            opt(&self.off_circle_real_roots),
            opt(&self.modulus_witness),
            opt(&self.ll_passed),
            tag(&self.ll_status),
            opt(&self.ordinary),
            opt(&self.simple),
            opt(&self.simple_prime),
            tag(&self.absolutely_simple),
            opt(&self.witness_d),
            opt(&self.witness_degree),
            opt(&self.d_bound),
            opt(&self.numeric_on_circle),
            opt(&self.numeric_real_off_circle),
            opt(&self.max_modulus_deviation.map(json_number)),
            opt(&self.precision_bits),
            opt(&self.error),
            opt(&self.timings_ms.map(json_number)),
        ]
    }
}

/// Text of `x` as serde_json writes it.
fn json_number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite")
}

/// Runs every check on one input. Problems with the input are recorded in
/// the report rather than returned.
pub fn classify(input: &ClassifyInput, config: &ClassifyConfig) -> ClassificationReport {
    let start = Instant::now();
    let mut report = match input {
        ClassifyInput::Tuple(t) => match construct(t, &config.limits) {
            Ok(f) => {
                let mut rep = ClassificationReport::blank(Some(t), f.poly(), f.q());
                classify_poly(&mut rep, f.poly(), f.q(), Some(t), config);
                rep
            }
            Err(e) => {
                let mut rep = ClassificationReport::blank(Some(t), &IntPoly::zero(), &BigUint::zero());
                rep.q = match t.q_bounded(config.limits.max_q.bits() + 1) {
                    Some(q) => q.to_string(),
                    None => format!("{}^{}", t.p, t.n),
                };
                rep.g = t.g();
                rep.error = Some(e.to_string());
                rep
            }
        },
        ClassifyInput::Poly { poly, q } => {
            let mut rep = ClassificationReport::blank(None, poly, q);
            classify_poly(&mut rep, poly, q, None, config);
            rep
        }
    };
    if config.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        report.timings_ms = Some((ms * 1e3).round() / 1e3);
    }
    report
}

fn classify_poly(
    rep: &mut ClassificationReport,
    f: &IntPoly,
    q: &BigUint,
    tuple: Option<&ParamTuple>,
    config: &ClassifyConfig,
) {
    if *q < BigUint::from(2u32) {
        rep.error = Some("q must be at least 2".into());
        return;
    }
    if f.is_constant() {
        rep.error = Some("polynomial must be nonconstant".into());
        return;
    }
    run_numeric(rep, f, q, config);
    let Some(g) = rep.g else {
        rep.error = Some("degree is not a positive even number".into());
        return;
    };
    let qf = match check_q_symmetry(f, g, q) {
        Ok(qf) => qf,
        Err(e) => {
            rep.error = Some(e.to_string());
            return;
        }
    };
    rep.symmetric = true;

    let verdict = exact_modulus_check(&qf);
    rep.is_q_polynomial = verdict.holds;
    rep.off_circle_real_roots = Some(verdict.off_circle_real_roots());
    rep.modulus_witness = verdict.witness.as_ref().map(|w| match w {
        OffCircleWitness::RealRootOutside { lo, hi } => {
            format!("h has a real root in ({lo}, {hi}] outside [-2 sqrt(q), 2 sqrt(q)]")
        }
        OffCircleWitness::NonRealRoots { count } => format!("h has {count} non-real roots"),
    });
    match ll_check_qpoly(&qf, None) {
        Ok(ll) => {
            rep.ll_passed = Some(ll.passed);
            rep.ll_status = if ll.passed { LlStatus::Passed } else { LlStatus::Inconclusive };
            if ll.passed {
                rep.method = Method::Ll;
            }
        }
        Err(_) => rep.ll_status = LlStatus::NotApplicable,
    }

    let p = tuple
        .map(|t| t.p)
        .or_else(|| prime_power_decompose(q).ok().and_then(|pp| pp.p().to_u64()));
    rep.ordinary = p.map(|p| certify_ordinary(&qf, p));

    let cert = match tuple {
        Some(t) if certify_simple(&qf, t.r, t.rho, t.b) => certify_irreducible(f, t.r),
        _ => find_irreducibility_certificate(f, &first_primes(RAW_CERTIFICATE_PRIMES)),
    };
    rep.simple = cert.as_ref().map(|_| true);
    rep.simple_prime = cert.as_ref().map(IrreducibilityCertificate::prime);

    let (Some(cert), true, Some(true)) = (cert, rep.is_q_polynomial, rep.ordinary) else {
        return;
    };
    let d_bound = config.d_bound.unwrap_or_else(|| default_d_bound(g));
    if let Some(t) = tuple.filter(|t| t.b > 1) {
        let d = t.step().unwrap();
        let degree = minimal_poly_of_power(&cert, d).degree().unwrap();
        if degree < 2 * g {
            rep.absolutely_simple = AbsSimple::CertifiedNo;
            rep.witness_d = Some(d);
            rep.witness_degree = Some(degree);
            return;
        }
    }
    if g == 2 {
        if absolutely_simple_g2(&qf).unwrap() {
            rep.absolutely_simple = AbsSimple::CertifiedYes;
        } else {
            rep.absolutely_simple = AbsSimple::CertifiedNo;
            // the four excluded values correspond to theta^d rational-free
            // for d in {2, 3, 4, 6}
            if let PowerTestOutcome::CertifiedNo { d, degree } = absolute_simplicity_power_test(&cert, 6) {
                rep.witness_d = Some(d);
                rep.witness_degree = Some(degree);
            }
        }
        return;
    }
    rep.d_bound = Some(d_bound);
    match absolute_simplicity_power_test(&cert, d_bound) {
        PowerTestOutcome::CertifiedNo { d, degree } => {
            rep.absolutely_simple = AbsSimple::CertifiedNo;
            rep.witness_d = Some(d);
            rep.witness_degree = Some(degree);
        }
        PowerTestOutcome::NoObstructionUpTo { .. } => rep.absolutely_simple = AbsSimple::Inconclusive,
    }
}

fn run_numeric(rep: &mut ClassificationReport, f: &IntPoly, q: &BigUint, config: &ClassifyConfig) {
    let bits = config.precision_bits.unwrap_or_else(|| default_precision(f));
    let roots = match numeric_roots(f, bits, Some(q)) {
        Ok(r) => r,
        Err(AnalysisError::NoConvergence { partial, .. }) => {
            rep.error = Some("numeric root iteration did not converge".into());
            *partial
        }
        Err(_) => return,
    };
    rep.precision_bits = Some(roots.precision_bits);
    rep.max_modulus_deviation = Some(roots.max_modulus_deviation);
    rep.numeric_on_circle = Some(roots.count_within(NUMERIC_TOLERANCE));
    rep.numeric_real_off_circle = Some(
        roots
            .roots
            .iter()
            .filter(|z| z.is_real && z.modulus_deviation >= NUMERIC_TOLERANCE)
            .count(),
    );
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RPolicy {
    /// The least prime that is a primitive root mod `rho^2`.
    LeastPrimitiveRoot,
    Explicit(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QRange {
    /// All prime powers `4 <= q <= max`.
    UpTo(u64),
    Explicit(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MPolicy {
    ZeroOneMax,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRange {
    pub rhos: Vec<u64>,
    pub bs: Vec<u32>,
    pub r: RPolicy,
    pub q: QRange,
    pub m: MPolicy,
}

/// Least prime primitive root mod `rho^2`.
pub fn least_prime_primitive_root(rho: u64) -> Option<u64> {
    let n = rho.checked_mul(rho)?;
    (2..n).find(|&r| is_prime_u64(r) && is_primitive_root_mod(r as i64, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    /// Valid tuples in lexicographic `(rho, b, r, q, m)` order.
    pub tuples: Vec<ParamTuple>,
    /// Candidates rejected by [`validate_tuple`].
    pub invalid: usize,
}

fn sorted_dedup<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v.dedup();
    v
}

pub fn enumerate(range: &SearchRange, limits: &Limits) -> Result<Enumeration, EngineError> {
    let mut out = Enumeration::default();
    let qs: Vec<u64> = match &range.q {
        QRange::UpTo(max) => (4..=*max)
            .filter(|&q| prime_power_decompose(&BigUint::from(q)).is_ok())
            .collect(),
        QRange::Explicit(v) => sorted_dedup(v),
    };
    let mut seen = 0usize;
    for &rho in &sorted_dedup(&range.rhos) {
        for &b in &sorted_dedup(&range.bs) {
            let rs = match &range.r {
                RPolicy::LeastPrimitiveRoot => least_prime_primitive_root(rho).into_iter().collect(),
                RPolicy::Explicit(v) => sorted_dedup(v),
            };
            for &r in &rs {
                for &q in &qs {
                    let Ok(pp) = prime_power_decompose(&BigUint::from(q)) else {
                        out.invalid += 1;
                        continue;
                    };
                    let p = pp.p().to_u64().unwrap();
                    let base = ParamTuple::new(rho, b, r, p, pp.n(), 0u32);
                    let ms: Vec<BigUint> = match candidate_ms(&base, range.m, limits) {
                        Some(ms) => ms,
                        None => {
                            out.invalid += 1;
                            continue;
                        }
                    };
                    for m in ms {
                        seen += 1;
                        if seen > limits.max_candidates {
                            return Err(EngineError::RangeTooLarge {
                                limit: limits.max_candidates,
                            });
                        }
                        let t = ParamTuple { m, ..base.clone() };
                        if is_valid(&validate_tuple(&t, limits)) {
                            out.tuples.push(t);
                        } else {
                            out.invalid += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `m_max` for the tuple, or `None` when the bound is undefined or the
/// tuple is outside the limits.
fn m_upper(t: &ParamTuple, limits: &Limits) -> Option<BigUint> {
    let step = t.step()?;
    if t.two_g()? > limits.max_two_g || t.q() > limits.max_q || t.r < 2 {
        return None;
    }
    m_max(&t.q(), step as u32, t.r).ok()
}

/// Candidate values of `m` in increasing order.
fn candidate_ms(t: &ParamTuple, policy: MPolicy, limits: &Limits) -> Option<Vec<BigUint>> {
    let top = m_upper(t, limits)?;
    Some(match policy {
        MPolicy::ZeroOneMax => sorted_dedup(&[BigUint::zero(), BigUint::one().min(top.clone()), top]),
        MPolicy::All => {
            let count = top.to_usize().filter(|c| *c < limits.max_candidates)?;
            (0..=count).map(BigUint::from).collect()
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub reports: Vec<ClassificationReport>,
    pub invalid: usize,
}

/// Classifies every valid tuple in the range on `workers` threads. The
/// report order is the enumeration order whatever the worker count.
pub fn search(range: &SearchRange, config: &ClassifyConfig, workers: usize) -> Result<SearchOutcome, EngineError> {
    let en = enumerate(range, &config.limits)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| EngineError::WorkerPool(e.to_string()))?;
    let reports = pool.install(|| {
        en.tuples
            .par_iter()
            .map(|t| classify(&ClassifyInput::Tuple(t.clone()), config))
            .collect()
    });
    Ok(SearchOutcome {
        reports,
        invalid: en.invalid,
    })
}
