//! Truncated p-adic numbers with tracked precision, Hensel lifting and n-th roots.
//!
//! A nonzero value is `p^v * u` where `u` is a unit known modulo `p^N`; `N`
//! is the relative precision, `v + N` the absolute one. Zero is an exact
//! marker. Valuations are integer exponents, so `|x|_p = p^{-v}`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith;

pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1 digit")]
    ZeroPrecision,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("precision exhausted: no correct digit remains")]
    PrecisionExhausted,
    #[error("operands belong to different primes")]
    PrimeMismatch,
    #[error("coefficient is not a p-adic integer")]
    NotIntegral,
    #[error("not a simple root mod p: f({residue}) is not 0 mod p")]
    NotARoot { residue: u64 },
    #[error("not a simple root mod p: f'({residue}) is 0 mod p")]
    SingularRoot { residue: u64 },
    #[error("n-th roots with p | n are not supported (n = {n}, p = {p})")]
    UnsupportedExponent { n: u64, p: u64 },
    #[error("inputs carry only {available} digits, {requested} requested")]
    InsufficientPrecision { available: i64, requested: u32 },
}

/// `ν_p`, with `Infinity` for zero; orders as the extended integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Valuation {
    Finite(i64),
    #[serde(serialize_with = "ser_infinity")]
    Infinity,
}

fn ser_infinity<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("inf")
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Zero,
    Approx { valuation: i64, unit: BigUint, precision: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    repr: Repr,
}

fn check_prime(p: u64) -> Result<(), PadicError> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(PadicError::NotPrime(p))
    }
}

fn modulus(p: u64, n: u32) -> BigUint {
    BigUint::from(p).pow(n)
}

/// Splits off the exact power of `p` from a nonzero integer.
fn split_big(n: &BigUint, p: u64) -> (u32, BigUint) {
    let pb = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (e, n);
        }
        n = q;
        e += 1;
    }
}

fn inv_mod(a: &BigUint, m: &BigUint) -> BigUint {
    let (a, m) = (BigInt::from(a.clone()), BigInt::from(m.clone()));
    let e = a.extended_gcd(&m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(&m).to_biguint().expect("nonnegative")
}

impl PadicNumber {
    pub fn zero(p: u64) -> Result<Self, PadicError> {
        check_prime(p)?;
        Ok(PadicNumber { p, repr: Repr::Zero })
    }

    /// `p^valuation * unit`, with `unit` reduced mod `p^precision`.
    fn approx(p: u64, valuation: i64, unit: BigUint, precision: u32) -> Self {
        debug_assert!(precision >= 1 && !(&unit % p).is_zero());
        let unit = unit % modulus(p, precision);
        PadicNumber { p, repr: Repr::Approx { valuation, unit, precision } }
    }

    /// `m / n` to `precision` digits; zero is returned exactly.
    pub fn from_rational(m: i64, n: i64, p: u64, precision: u32) -> Result<Self, PadicError> {
        Self::from_big_rational(&BigInt::from(m), &BigInt::from(n), p, precision)
    }

    pub fn from_integer(m: i64, p: u64, precision: u32) -> Result<Self, PadicError> {
        Self::from_rational(m, 1, p, precision)
    }

    pub fn from_big_rational(m: &BigInt, n: &BigInt, p: u64, precision: u32) -> Result<Self, PadicError> {
        check_prime(p)?;
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        if n.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        if m.is_zero() {
            return Ok(PadicNumber { p, repr: Repr::Zero });
        }
        let (em, um) = split_big(m.magnitude(), p);
        let (en, un) = split_big(n.magnitude(), p);
        let md = modulus(p, precision);
        let mut unit = (um % &md) * inv_mod(&(un % &md), &md) % &md;
        if m.is_negative() != n.is_negative() {
            unit = (&md - unit) % &md;
        }
        Ok(Self::approx(p, em as i64 - en as i64, unit, precision))
    }

    /// Builds `p^shift * r` where `r` is known modulo `p^abs_digits`.
    fn from_residue(p: u64, r: &BigUint, abs_digits: u32) -> Result<Self, PadicError> {
        let r = r % modulus(p, abs_digits);
        if r.is_zero() {
            return Err(PadicError::PrecisionExhausted);
        }
        let (e, u) = split_big(&r, p);
        Ok(Self::approx(p, e as i64, u, abs_digits - e))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero => Valuation::Infinity,
            Repr::Approx { valuation, .. } => Valuation::Finite(*valuation),
        }
    }

    /// Relative precision `N`; `None` for the exact zero.
    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { precision, .. } => Some(*precision),
        }
    }

    /// `v + N`: the value is known modulo `p^(v+N)`.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Approx { valuation, precision, .. } => Some(valuation + *precision as i64),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    pub fn is_integral(&self) -> bool {
        self.valuation() >= Valuation::Finite(0)
    }

    /// Digits `a_v, a_{v+1}, ..., a_{v+N-1}`, little-endian in `p`; empty for zero.
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Zero => Vec::new(),
            Repr::Approx { unit, precision, .. } => {
                let pb = BigUint::from(self.p);
                let mut u = unit.clone();
                (0..*precision)
                    .map(|_| {
                        let (q, r) = u.div_rem(&pb);
                        u = q;
                        r.to_u64().expect("digit < p")
                    })
                    .collect()
            }
        }
    }

    /// `valuation:d0,d1,...` (little-endian digits), or `inf` for zero.
    pub fn digit_string(&self) -> String {
        match self.valuation() {
            Valuation::Infinity => "inf".into(),
            v => {
                let d: Vec<String> = self.digits().iter().map(|d| d.to_string()).collect();
                format!("{v}:{}", d.join(","))
            }
        }
    }

    /// The value modulo `p^k` for a p-adic integer known to at least `k` digits.
    pub fn residue(&self, k: u32) -> Result<BigUint, PadicError> {
        match &self.repr {
            Repr::Zero => Ok(BigUint::zero()),
            Repr::Approx { valuation, unit, precision } => {
                if *valuation < 0 {
                    return Err(PadicError::NotIntegral);
                }
                let abs = valuation + *precision as i64;
                if abs < k as i64 {
                    return Err(PadicError::InsufficientPrecision { available: abs, requested: k });
                }
                if *valuation >= k as i64 {
                    return Ok(BigUint::zero());
                }
                Ok(unit * modulus(self.p, *valuation as u32) % modulus(self.p, k))
            }
        }
    }

    /// Truncates to at most `precision` relative digits.
    pub fn with_precision(&self, precision: u32) -> Result<Self, PadicError> {
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        Ok(match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx { valuation, unit, precision: n } => {
                Self::approx(self.p, *valuation, unit.clone(), precision.min(*n))
            }
        })
    }

    fn same_prime(&self, other: &Self) -> Result<(), PadicError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(PadicError::PrimeMismatch)
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx { valuation, unit, precision } => {
                let m = modulus(self.p, *precision);
                Self::approx(self.p, *valuation, (&m - unit) % &m, *precision)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_prime(other)?;
        let (Repr::Approx { valuation: v1, unit: u1, precision: n1 }, Repr::Approx { valuation: v2, unit: u2, precision: n2 }) =
            (&self.repr, &other.repr)
        else {
            return Ok(if self.is_zero() { other.clone() } else { self.clone() });
        };
        let v = (*v1).min(*v2);
        let abs = (v1 + *n1 as i64).min(v2 + *n2 as i64);
        let digits = (abs - v) as u32;
        let shift = |u: &BigUint, vi: i64| u * modulus(self.p, (vi - v) as u32);
        let sum = shift(u1, *v1) + shift(u2, *v2);
        let r = Self::from_residue(self.p, &sum, digits)?;
        Ok(r.shifted(v))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_prime(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Approx { valuation: v1, unit: u1, precision: n1 }, Repr::Approx { valuation: v2, unit: u2, precision: n2 }) => {
                let n = (*n1).min(*n2);
                Ok(Self::approx(self.p, v1 + v2, u1 * u2, n))
            }
            _ => Ok(PadicNumber { p: self.p, repr: Repr::Zero }),
        }
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        match &self.repr {
            Repr::Zero => Err(PadicError::ZeroInverse),
            Repr::Approx { valuation, unit, precision } => {
                let u = inv_mod(unit, &modulus(self.p, *precision));
                Ok(Self::approx(self.p, -valuation, u, *precision))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        match &self.repr {
            Repr::Zero if e > 0 => self.clone(),
            Repr::Zero => PadicNumber::from_integer(1, self.p, DEFAULT_PRECISION).expect("valid prime"),
            Repr::Approx { valuation, unit, precision } => {
                let u = unit.modpow(&BigUint::from(e), &modulus(self.p, *precision));
                Self::approx(self.p, valuation * e as i64, u, *precision)
            }
        }
    }

    /// Multiplies by `p^k`.
    pub fn shifted(&self, k: i64) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::Approx { valuation, unit, precision } => {
                Self::approx(self.p, valuation + k, unit.clone(), *precision)
            }
        }
    }

    /// `|x|_p = p^{-v}` as a float (0 for zero).
    pub fn norm(&self) -> f64 {
        match self.valuation() {
            Valuation::Infinity => 0.0,
            Valuation::Finite(v) => (self.p as f64).powi(-(v as i32)),
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digit_string())
    }
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            p: u64,
            valuation: Valuation,
            precision: Option<u32>,
            digits: Vec<u64>,
        }
        Wire { p: self.p, valuation: self.valuation(), precision: self.precision(), digits: self.digits() }.serialize(s)
    }
}

/// Polynomial with p-adic integer coefficients, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpPoly {
    p: u64,
    coeffs: Vec<PadicNumber>,
}

impl ZpPoly {
    pub fn new(p: u64, coeffs: Vec<PadicNumber>) -> Result<Self, PadicError> {
        check_prime(p)?;
        for c in &coeffs {
            if c.p != p {
                return Err(PadicError::PrimeMismatch);
            }
            if !c.is_integral() {
                return Err(PadicError::NotIntegral);
            }
        }
        Ok(ZpPoly { p, coeffs })
    }

    /// Integer coefficients, which are exact (zeros exact, others to `precision` digits).
    pub fn from_ints(p: u64, coeffs: &[i64], precision: u32) -> Result<Self, PadicError> {
        let c = coeffs.iter().map(|&a| PadicNumber::from_integer(a, p, precision)).collect::<Result<_, _>>()?;
        ZpPoly::new(p, c)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    pub fn eval(&self, x: &PadicNumber) -> Result<PadicNumber, PadicError> {
        let mut acc = PadicNumber::zero(self.p)?;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> ZpPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let n = c.precision().unwrap_or(1);
                c.mul(&PadicNumber::from_integer(i as i64, self.p, n).expect("prime")).expect("same prime")
            })
            .collect();
        ZpPoly { p: self.p, coeffs }
    }

    /// Coefficients modulo `p^k`.
    fn residues(&self, k: u32) -> Result<Vec<BigUint>, PadicError> {
        self.coeffs.iter().map(|c| c.residue(k)).collect()
    }
}

fn eval_mod(coeffs: &[BigUint], x: &BigUint, m: &BigUint) -> BigUint {
    coeffs.iter().rev().fold(BigUint::zero(), |acc, c| (acc * x + c) % m)
}

fn derivative_residues(coeffs: &[BigUint]) -> Vec<BigUint> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigUint::from(i)).collect()
}

/// The root of `f` congruent to `x0` mod `p`, to `precision` digits, by Newton
/// iteration with doubling precision.
pub fn hensel_lift(f: &ZpPoly, x0: u64, precision: u32) -> Result<PadicNumber, PadicError> {
    let p = f.p;
    if precision == 0 {
        return Err(PadicError::ZeroPrecision);
    }
    let coeffs = f.residues(precision)?;
    let deriv = derivative_residues(&coeffs);
    let pm = BigUint::from(p);
    let x0 = x0 % p;
    let xb = BigUint::from(x0);
    if !eval_mod(&coeffs, &xb, &pm).is_zero() {
        return Err(PadicError::NotARoot { residue: x0 });
    }
    if eval_mod(&deriv, &xb, &pm).is_zero() {
        return Err(PadicError::SingularRoot { residue: x0 });
    }
    let mut x = xb;
    let mut k = 1u32;
    while k < precision {
        k = (2 * k).min(precision);
        let m = modulus(p, k);
        let fx = eval_mod(&coeffs, &x, &m);
        let dfx = eval_mod(&deriv, &x, &m);
        let step = fx * inv_mod(&dfx, &m) % &m;
        x = (&x + &m - step) % &m;
    }
    if x.is_zero() {
        if f.coeffs.first().is_none_or(|c| c.is_zero()) {
            return PadicNumber::zero(p);
        }
        return Err(PadicError::PrecisionExhausted);
    }
    PadicNumber::from_residue(p, &x, precision)
}

/// An `n`-th root of `u` to `precision` relative digits, or `None` if none exists.
pub fn nth_root(u: &PadicNumber, n: u64, precision: u32) -> Result<Option<PadicNumber>, PadicError> {
    let p = u.p;
    if n == 0 {
        return Err(PadicError::UnsupportedExponent { n, p });
    }
    if n.is_multiple_of(p) {
        return Err(PadicError::UnsupportedExponent { n, p });
    }
    let Repr::Approx { valuation, unit, precision: have } = &u.repr else {
        return Ok(Some(u.clone()));
    };
    if valuation.rem_euclid(n as i64) != 0 {
        return Ok(None);
    }
    let prec = precision.min(*have);
    let a0 = (unit % p).to_u64().expect("digit");
    let Some(r) = (1..p).find(|&r| arith::pow_mod(r, n, p) == a0) else {
        return Ok(None);
    };
    let unit_part = PadicNumber::approx(p, 0, unit.clone(), *have);
    let mut coeffs = vec![unit_part.neg()];
    coeffs.extend((1..n).map(|_| PadicNumber { p, repr: Repr::Zero }));
    coeffs.push(PadicNumber::from_integer(1, p, prec)?);
    let poly = ZpPoly::new(p, coeffs)?;
    let root = hensel_lift(&poly, r, prec)?;
    Ok(Some(root.shifted(valuation / n as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitCheck {
    pub is_unit: bool,
    /// `(n_k, root found)` for each tested exponent.
    pub observations: Vec<(u64, bool)>,
    /// Whether the observations match "roots for infinitely many n iff unit".
    pub consistent: bool,
}

/// Tests `n_k = 1 + k p (p-1)`, `k = 1..=count`: a unit must have every such
/// root, a non-unit none with `n_k > |v|`.
pub fn unit_characterization_check(u: &PadicNumber, count: u32) -> Result<UnitCheck, PadicError> {
    let Valuation::Finite(v) = u.valuation() else {
        return Err(PadicError::ZeroInverse);
    };
    let p = u.p;
    let is_unit = v == 0;
    let prec = u.precision().unwrap_or(DEFAULT_PRECISION);
    let mut observations = Vec::new();
    for k in 1..=count as u64 {
        let n = 1 + k * p * (p - 1);
        if !is_unit && n <= v.unsigned_abs() {
            continue;
        }
        let root = nth_root(u, n, prec)?;
        let found = match &root {
            Some(r) => r.pow(n).sub(u).map_or(true, |d| d.valuation() >= Valuation::Finite(v + prec as i64)),
            None => false,
        };
        observations.push((n, found));
    }
    let consistent = observations.iter().all(|&(_, found)| found == is_unit);
    Ok(UnitCheck { is_unit, observations, consistent })
}
