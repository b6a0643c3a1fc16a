//! Polynomials over a prime field `F_r` and distinct-degree factorization
//! profiles.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::intpoly::{cyclotomic, IntPoly};
use crate::numtheory::{euler_phi, integer_sqrt, is_prime_u64, multiplicative_order, pow_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModPolyError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial must be monic and nonconstant")]
    NotMonicNonconstant,
    #[error("{r} divides {n}")]
    PrimeDividesIndex { n: u64, r: u64 },
}

/// A polynomial over `F_r`, coefficients low-to-high in `[0, r)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    r: u64,
    coeffs: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, r: u64) -> u64 {
    ((a as u128 * b as u128) % r as u128) as u64
}

impl ModPoly {
    pub fn new(r: u64, coeffs: Vec<u64>) -> Self {
        let mut p = ModPoly {
            r,
            coeffs: coeffs.into_iter().map(|c| c % r).collect(),
        };
        p.normalize();
        p
    }

    pub fn zero(r: u64) -> Self {
        ModPoly { r, coeffs: Vec::new() }
    }

    pub fn one(r: u64) -> Self {
        Self::new(r, vec![1])
    }

    /// The polynomial `x`.
    pub fn x(r: u64) -> Self {
        Self::new(r, vec![0, 1])
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.r
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.r - 2, self.r)
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|j| {
                let a = self.coeffs.get(j).copied().unwrap_or(0);
                let b = other.coeffs.get(j).copied().unwrap_or(0);
                (a + b) % self.r
            })
            .collect();
        ModPoly::new(self.r, c)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|j| {
                let a = self.coeffs.get(j).copied().unwrap_or(0);
                let b = other.coeffs.get(j).copied().unwrap_or(0);
                (a + self.r - b) % self.r
            })
            .collect();
        ModPoly::new(self.r, c)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.r);
        }
        let r = self.r;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let rr = r as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % rr;
            }
        }
        ModPoly::new(r, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        ModPoly::new(
            self.r,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.r)).collect(),
        )
    }

    pub fn monic(&self) -> ModPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(self.inv(lc)),
        }
    }

    pub fn derivative(&self) -> ModPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &a)| mul_mod(a, j as u64 % self.r, self.r))
            .collect();
        ModPoly::new(self.r, c)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let r = self.r;
        let inv_lc = self.inv(*d.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ModPoly::zero(r), self.clone());
        }
        let mut q = vec![0u64; rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let t = mul_mod(*rem.last().unwrap(), inv_lc, r);
            if t != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + r - mul_mod(t, dc, r)) % r;
                }
            }
            q[k] = t;
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (ModPoly::new(r, q), ModPoly::new(r, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    fn check_same(&self, other: &ModPoly) -> Result<(), ModPolyError> {
        if self.r == other.r {
            Ok(())
        } else {
            Err(ModPolyError::ModulusMismatch(self.r, other.r))
        }
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly[{:?} mod {}]", self.coeffs, self.r)
    }
}

/// Monic gcd over `F_r`. `gcd(0, 0) = 0`.
pub fn ff_gcd(a: &ModPoly, b: &ModPoly) -> Result<ModPoly, ModPolyError> {
    a.check_same(b)?;
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// `base^e mod modulus` by square-and-multiply.
pub fn powmod(base: &ModPoly, e: &BigUint, modulus: &ModPoly) -> Result<ModPoly, ModPolyError> {
    base.check_same(modulus)?;
    assert!(!modulus.is_constant(), "modulus polynomial must be nonconstant");
    let mut acc = ModPoly::one(base.r).rem(modulus);
    let mut b = base.rem(modulus);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b).rem(modulus);
        }
        if i + 1 < bits {
            b = b.mul(&b).rem(modulus);
        }
    }
    Ok(acc)
}

pub fn is_squarefree(f: &ModPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    ff_gcd(f, &f.derivative())
        .map(|g| g.is_constant())
        .unwrap_or(false)
}

/// Degrees of the irreducible factors of a squarefree polynomial, as
/// `(degree, count)` pairs in increasing degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeProfile(pub Vec<(usize, usize)>);

impl DegreeProfile {
    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|(d, c)| d * c).sum()
    }
}

impl fmt::Display for DegreeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(d, c)| format!("({d},{c})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Distinct-degree factorization: splits off `gcd(f, x^(r^d) - x)` for
/// `d = 1, 2, ...` without splitting within a degree.
pub fn distinct_degree_profile(f: &ModPoly) -> Result<DegreeProfile, ModPolyError> {
    let groups = distinct_degree_factors(f)?;
    Ok(DegreeProfile(
        groups
            .iter()
            .map(|(d, g)| (*d, g.degree().unwrap() / d))
            .collect(),
    ))
}

/// The DDF groups themselves: `(d, product of all degree-d factors)`.
pub fn distinct_degree_factors(f: &ModPoly) -> Result<Vec<(usize, ModPoly)>, ModPolyError> {
    if !f.is_monic() || f.is_constant() {
        return Err(ModPolyError::NotMonicNonconstant);
    }
    if !is_squarefree(f) {
        return Err(ModPolyError::NotSquarefree);
    }
    let r = f.r;
    let x = ModPoly::x(r);
    let r_big = BigUint::from(r);
    let mut rest = f.clone();
    let mut frob = x.rem(&rest);
    let mut groups = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        frob = powmod(&frob, &r_big, &rest)?;
        let g = ff_gcd(&rest, &frob.sub(&x))?;
        if !g.is_constant() {
            rest = rest.div_rem(&g).0;
            frob = frob.rem(&rest);
            groups.push((d, g));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        groups.push((deg, rest));
    }
    Ok(groups)
}

/// Splits a product of distinct monic irreducibles of degree `d` over
/// `F_r`, `r` odd, into its factors (Cantor-Zassenhaus with a fixed seed).
pub fn equal_degree_factors(g: &ModPoly, d: usize) -> Vec<ModPoly> {
    let r = g.r;
    assert!(r > 2, "equal-degree splitting needs an odd field");
    let n = g.degree().unwrap_or(0);
    if n <= d {
        return vec![g.monic()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xedf ^ r);
    let e = (num_traits::pow(BigUint::from(r), d) - 1u32) / 2u32;
    loop {
        let a = ModPoly::new(r, (0..n).map(|_| rng.gen_range(0..r)).collect());
        if a.is_constant() {
            continue;
        }
        let b = powmod(&a, &e, g).unwrap().sub(&ModPoly::one(r));
        let h = ff_gcd(g, &b).unwrap();
        let k = h.degree().unwrap_or(0);
        if k > 0 && k < n {
            let mut out = equal_degree_factors(&h, d);
            out.extend(equal_degree_factors(&g.div_rem(&h).0, d));
            return out;
        }
    }
}

/// All monic irreducible factors of a monic squarefree polynomial over
/// `F_r`, `r` odd, sorted by degree then coefficients.
pub fn factor_squarefree(f: &ModPoly) -> Result<Vec<ModPoly>, ModPolyError> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree_factors(f)? {
        out.extend(equal_degree_factors(&g, d));
    }
    out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
    Ok(out)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ff_ext_gcd(a: &ModPoly, b: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
    let r = a.r;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ModPoly::one(r), ModPoly::zero(r));
    let (mut t0, mut t1) = (ModPoly::zero(r), ModPoly::one(r));
    while !r1.is_zero() {
        let (q, rem) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, rem);
        let s2 = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t2);
    }
    let Some(&lc) = r0.coeffs.last() else {
        return (r0, s0, t0);
    };
    let inv = r0.inv(lc);
    (r0.scale(inv), s0.scale(inv), t0.scale(inv))
}

pub fn is_irreducible_mod(f: &ModPoly) -> bool {
    let Some(n) = f.degree().filter(|&k| k > 0) else {
        return false;
    };
    let f = f.monic();
    matches!(distinct_degree_profile(&f), Ok(p) if p.0 == [(n, 1)])
}

/// How irreducibility over the rationals was shown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// `f mod prime` is irreducible of the same degree.
    Prime,
    /// `f mod prime` splits into `factors` irreducibles; their lifts to
    /// `prime^exponent` combine to no integer factor of `f`.
    Recombination { factors: usize, exponent: u32 },
}

/// Proof that a monic integer polynomial is irreducible over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    prime: u64,
    poly: IntPoly,
    kind: CertificateKind,
}

impl IrreducibilityCertificate {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn kind(&self) -> CertificateKind {
        self.kind
    }
}

/// Certifies irreducibility of the monic `f` over `Q` via reduction mod `r`.
pub fn certify_irreducible(f: &IntPoly, r: u64) -> Option<IrreducibilityCertificate> {
    if !f.is_monic() || f.is_constant() {
        return None;
    }
    let reduced = f.reduce_mod(r);
    if reduced.degree() != f.degree() || !is_irreducible_mod(&reduced) {
        return None;
    }
    Some(IrreducibilityCertificate {
        prime: r,
        poly: f.clone(),
        kind: CertificateKind::Prime,
    })
}

/// Largest factor count for which subsets are searched.
pub const MAX_RECOMBINATION_FACTORS: usize = 16;

/// An irreducibility certificate from `primes`: a single prime keeping `f`
/// irreducible if there is one, otherwise a Hensel-lift-and-recombine proof
/// at the odd prime with the fewest modular factors. `None` when `f` is not
/// monic, has a factor, or needs too many factors.
pub fn find_irreducibility_certificate(
    f: &IntPoly,
    primes: &[u64],
) -> Option<IrreducibilityCertificate> {
    if let Some(c) = primes.iter().find_map(|&r| certify_irreducible(f, r)) {
        return Some(c);
    }
    if !f.is_monic() || f.is_constant() {
        return None;
    }
    let n = f.degree().unwrap();
    // factor degrees over Q must be subset sums at every usable prime
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(usize, u64)> = None;
    for &r in primes.iter().filter(|&&r| r > 2 && is_prime_u64(r)) {
        let Ok(profile) = distinct_degree_profile(&f.reduce_mod(r)) else {
            continue;
        };
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &(d, c) in &profile.0 {
            for _ in 0..c {
                for k in (d..=n).rev() {
                    sums[k] |= sums[k - d];
                }
            }
        }
        for k in 0..=n {
            allowed[k] &= sums[k];
        }
        let count: usize = profile.0.iter().map(|(_, c)| c).sum();
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, r));
        }
    }
    if (1..n).all(|k| !allowed[k]) {
        // no proper factor degree survives; any usable prime certifies
        let (count, r) = best?;
        return Some(IrreducibilityCertificate {
            prime: r,
            poly: f.clone(),
            kind: CertificateKind::Recombination {
                factors: count,
                exponent: 0,
            },
        });
    }
    let (count, r) = best?;
    if count > MAX_RECOMBINATION_FACTORS {
        return None;
    }
    let factors = factor_squarefree(&f.reduce_mod(r)).ok()?;
    let (lifted, exponent, modulus) = hensel_lift_all(f, &factors, r);
    if has_recombined_factor(f, &lifted, &modulus, &allowed) {
        return None;
    }
    Some(IrreducibilityCertificate {
        prime: r,
        poly: f.clone(),
        kind: CertificateKind::Recombination {
            factors: count,
            exponent,
        },
    })
}

fn to_int_poly(g: &ModPoly) -> IntPoly {
    IntPoly::new(g.coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_coeffs(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients moved into `(-m/2, m/2]`.
fn symmetric_coeffs(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let v = c.mod_floor(m);
                if v > half {
                    v - m
                } else {
                    v
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ prod factors (mod r)` to `mod r^k` with `r^k` above twice the
/// coefficient bound `2^n ||f||_2` for integer factors of `f`.
fn hensel_lift_all(f: &IntPoly, factors: &[ModPoly], r: u64) -> (Vec<IntPoly>, u32, BigInt) {
    let n = f.degree().unwrap();
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = BigInt::from(integer_sqrt(&norm_sq.to_biguint().unwrap())) + 1;
    let bound = (BigInt::one() << (n + 1)) * norm;
    let rb = BigInt::from(r);
    let mut modulus = rb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &rb;
        k += 1;
    }
    let mut out = Vec::with_capacity(factors.len());
    let mut rest = f.clone();
    for (i, g) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(reduce_coeffs(&rest, &modulus));
            break;
        }
        let h = rest.reduce_mod(r).div_rem(g).0;
        let (gl, hl) = hensel_lift_pair(&rest, g, &h, r, k);
        out.push(gl);
        rest = hl;
    }
    (out, k, modulus)
}

/// Lifts `f ≡ g h (mod r)` with `g, h` monic and coprime to monic
/// `G, H` with `f ≡ G H (mod r^k)`, one power of `r` at a time.
fn hensel_lift_pair(f: &IntPoly, g: &ModPoly, h: &ModPoly, r: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = ff_ext_gcd(g, h);
    debug_assert!(one.coeffs == [1]);
    let rb = BigInt::from(r);
    let mut gl = to_int_poly(g);
    let mut hl = to_int_poly(h);
    let mut pj = rb.clone();
    for _ in 1..k {
        let err = f - &(&gl * &hl);
        let e = IntPoly::new(err.coeffs().iter().map(|c| c / &pj).collect()).reduce_mod(r);
        let a = t.mul(&e).rem(g);
        let b = s.mul(&e).rem(h);
        gl = &gl + &to_int_poly(&a).scale(&pj);
        hl = &hl + &to_int_poly(&b).scale(&pj);
        pj *= &rb;
        gl = reduce_coeffs(&gl, &pj);
        hl = reduce_coeffs(&hl, &pj);
    }
    (gl, hl)
}

/// Whether a product of at most half of the lifted factors, reduced
/// symmetrically, divides `f` over the integers.
fn has_recombined_factor(f: &IntPoly, lifted: &[IntPoly], modulus: &BigInt, allowed: &[bool]) -> bool {
    let count = lifted.len();
    let degrees: Vec<usize> = lifted.iter().map(|g| g.degree().unwrap()).collect();
    for size in 1..=count / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| degrees[i]).sum();
            if allowed[deg] {
                let prod = idx
                    .iter()
                    .fold(IntPoly::one(), |acc, &i| reduce_coeffs(&(&acc * &lifted[i]), modulus));
                let cand = symmetric_coeffs(&prod, modulus);
                if f.div_rem_monic(&cand).1.is_zero() {
                    return true;
                }
            }
            // next combination
            let mut i = size;
            while i > 0 && idx[i - 1] == count - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuerrierOutcome {
    pub holds: bool,
    pub observed: DegreeProfile,
    pub expected: DegreeProfile,
}

/// Compares the factorization profile of `Phi_n mod r` with the predicted
/// `phi(n)/ord_n(r)` factors of degree `ord_n(r)`.
pub fn guerrier_check(n: u64, r: u64) -> Result<GuerrierOutcome, ModPolyError> {
    if n.is_multiple_of(r) {
        return Err(ModPolyError::PrimeDividesIndex { n, r });
    }
    let order = if n == 1 {
        1
    } else {
        multiplicative_order(r as i64, n).expect("r prime and r does not divide n")
    } as usize;
    let phi = euler_phi(n) as usize;
    let expected = DegreeProfile(vec![(order, phi / order)]);
    let observed = distinct_degree_profile(&cyclotomic(n).reduce_mod(r))?;
    Ok(GuerrierOutcome {
        holds: observed == expected,
        observed,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::first_primes;
    use num_traits::Zero;

    fn mp(r: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(r, c.to_vec())
    }

    fn phi(n: u64, r: u64) -> ModPoly {
        cyclotomic(n).reduce_mod(r)
    }

    #[test]
    fn gcd_examples() {
        // x^2 - 1 and x - 1 over F_5
        assert_eq!(ff_gcd(&mp(5, &[4, 0, 1]), &mp(5, &[4, 1])).unwrap(), mp(5, &[4, 1]));
        let f = mp(7, &[3, 0, 2]);
        assert_eq!(ff_gcd(&f, &ModPoly::zero(7)).unwrap(), f.monic());
        let g = mp(2, &[1, 0, 1]);
        assert_eq!(ff_gcd(&g, &g).unwrap(), g);
        assert_eq!(
            ff_gcd(&mp(2, &[1, 1]), &mp(3, &[1, 1])),
            Err(ModPolyError::ModulusMismatch(2, 3))
        );
    }

    #[test]
    fn powmod_examples() {
        let m = phi(5, 2);
        let x = ModPoly::x(2);
        assert_eq!(powmod(&x, &BigUint::from(2u32), &m).unwrap(), mp(2, &[0, 0, 1]));
        assert_eq!(powmod(&x, &BigUint::from(1u32), &m).unwrap(), x);
        assert_eq!(powmod(&x, &BigUint::from(16u32), &m).unwrap(), x);
        // x^16 by 16 plain multiplications
        let mut brute = ModPoly::one(2);
        for _ in 0..16 {
            brute = brute.mul(&x).rem(&m);
        }
        assert_eq!(brute, x);
        assert_eq!(powmod(&x, &BigUint::zero(), &m).unwrap(), ModPoly::one(2));
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&phi(25, 2)));
        assert!(!is_squarefree(&mp(3, &[1, 2, 1])));
        assert!(is_squarefree(&ModPoly::x(2)));
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(!is_squarefree(&mp(2, &[1, 0, 1])));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(distinct_degree_profile(&phi(25, 2)).unwrap().0, vec![(20, 1)]);
        assert_eq!(distinct_degree_profile(&phi(5, 11)).unwrap().0, vec![(1, 4)]);
        assert_eq!(distinct_degree_profile(&mp(5, &[4, 0, 1])).unwrap().0, vec![(1, 2)]);
        assert_eq!(
            distinct_degree_profile(&mp(3, &[1, 2, 1])),
            Err(ModPolyError::NotSquarefree)
        );
        // (x+1)(x^2+x+1)(x^3+x+1) over F_2
        let f = mp(2, &[1, 1]).mul(&mp(2, &[1, 1, 1])).mul(&mp(2, &[1, 1, 0, 1]));
        assert_eq!(distinct_degree_profile(&f).unwrap().0, vec![(1, 1), (2, 1), (3, 1)]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_mod(&mp(2, &[1, 1, 1, 1, 1])));
        assert!(is_irreducible_mod(&phi(25, 2)));
        assert!(!is_irreducible_mod(&mp(5, &[4, 0, 1])));
        assert!(!is_irreducible_mod(&mp(5, &[3])));
    }

    #[test]
    fn guerrier_examples() {
        let o = guerrier_check(25, 2).unwrap();
        assert!(o.holds);
        assert_eq!(o.observed.0, vec![(20, 1)]);
        assert_eq!(guerrier_check(5, 11).unwrap().observed.0, vec![(1, 4)]);
        let o = guerrier_check(49, 3).unwrap();
        assert!(o.holds);
        assert_eq!(o.observed.0, vec![(42, 1)]);
        assert_eq!(
            guerrier_check(25, 5),
            Err(ModPolyError::PrimeDividesIndex { n: 25, r: 5 })
        );
    }

    #[test]
    fn guerrier_small_sweep() {
        for n in 2..=60u64 {
            for r in first_primes(8) {
                if n % r != 0 {
                    assert!(guerrier_check(n, r).unwrap().holds, "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_x_modulo_irreducible() {
        for (r, n) in [(2u64, 5u64), (3, 7), (2, 25), (3, 49), (2, 11)] {
            let m = phi(n, r);
            if !is_irreducible_mod(&m) {
                continue;
            }
            let e = num_traits::pow(BigUint::from(r), m.degree().unwrap());
            assert_eq!(powmod(&ModPoly::x(r), &e, &m).unwrap(), ModPoly::x(r).rem(&m));
        }
    }

    #[test]
    fn profile_total_degree_matches() {
        for r in first_primes(6) {
            for n in [7u64, 9, 15, 21, 35] {
                if n % r == 0 {
                    continue;
                }
                let f = phi(n, r);
                let profile = distinct_degree_profile(&f).unwrap();
                assert_eq!(profile.total_degree(), f.degree().unwrap());
            }
        }
    }

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn full_factorization_multiplies_back() {
        for r in [3u64, 5, 7, 11, 13] {
            for n in [8u64, 15, 21, 24] {
                if n % r == 0 {
                    continue;
                }
                let f = phi(n, r);
                let factors = factor_squarefree(&f).unwrap();
                let prod = factors.iter().fold(ModPoly::one(r), |acc, g| acc.mul(g));
                assert_eq!(prod, f);
                assert!(factors.iter().all(is_irreducible_mod));
            }
        }
    }

    #[test]
    fn ext_gcd_identity() {
        let a = mp(7, &[1, 2, 3, 1]);
        let b = mp(7, &[5, 0, 1]);
        let (g, s, t) = ff_ext_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn recombination_certificates() {
        let primes = first_primes(25);
        // irreducible over Q yet reducible modulo every prime
        for f in [ip(&[64, 16, 2, 2, 1]), ip(&[1, 0, 0, 0, 1]), ip(&[9, 0, -10, 0, 1]).pow(1)] {
            assert!(primes.iter().all(|&r| certify_irreducible(&f, r).is_none()));
            let cert = find_irreducibility_certificate(&f, &primes);
            if f == ip(&[9, 0, -10, 0, 1]) {
                // (x^2 - 2x - 3)(x^2 + 2x - 3) = x^4 - 10x^2 + 9
                assert!(cert.is_none());
            } else {
                let cert = cert.unwrap();
                assert!(matches!(cert.kind(), CertificateKind::Recombination { .. }));
            }
        }
        // x^4 - 10x^2 + 1 = minimal polynomial of sqrt2 + sqrt3
        let f = ip(&[1, 0, -10, 0, 1]);
        assert!(find_irreducibility_certificate(&f, &primes).is_some());
        // products of two irreducible quadratics are rejected
        let f = &ip(&[2, 0, 1]) * &ip(&[3, 0, 1]);
        assert!(find_irreducibility_certificate(&f, &primes).is_none());
        let f = &ip(&[-2, 0, 1]) * &ip(&[1, 1, 1]);
        assert!(find_irreducibility_certificate(&f, &primes).is_none());
    }

    #[test]
    fn hensel_lift_reproduces_f() {
        let f = ip(&[64, 16, 2, 2, 1]);
        let r = 11;
        let factors = factor_squarefree(&f.reduce_mod(r)).unwrap();
        let (lifted, _, modulus) = hensel_lift_all(&f, &factors, r);
        let prod = lifted.iter().fold(IntPoly::one(), |acc, g| reduce_coeffs(&(&acc * g), &modulus));
        assert_eq!(prod, reduce_coeffs(&f, &modulus));
    }
}
