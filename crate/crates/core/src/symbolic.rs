//! Exact univariate polynomials and rational functions over `Q` or `F_p`,
//! and the identities behind the SD recurrence and the exponent case analysis.
//!
//! Two unrelated families share a classical name: [`p_k_poly`] is the
//! polynomial in `u = f(2)` with `f(2k+1) = p_k(u)/(u-1)^k`, while
//! [`eratio_defect_poly`] is the cleared power-map identity in `w`.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient domains differ")]
    DomainMismatch,
    #[error("characteristic 2 is not supported here")]
    EvenCharacteristic,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// A coefficient ring. Elements carry no context, so the domain value is
/// passed to every operation.
pub trait Domain: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Text form plus whether it is negative (for `a - b` rendering).
    fn render(&self, a: &Self::Elem) -> (String, bool);

    /// Cheap proof that two nonzero polynomials are coprime, if one exists.
    fn coprime_hint(_a: &Poly<Self>, _b: &Poly<Self>) -> bool {
        false
    }
}

/// Exact rationals with arbitrary-precision numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

/// `Z/pZ` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, SymbolicError> {
        if arith::is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(SymbolicError::NotPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Domain for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn render(&self, a: &BigRational) -> (String, bool) {
        (a.abs().to_string(), a.is_negative())
    }

    fn coprime_hint(a: &Poly<Self>, b: &Poly<Self>) -> bool {
        // A gcd mod a prime not dividing the leading coefficients has degree at
        // least that of the gcd over Q; a constant there proves coprimality.
        const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
        let (Some(am), Some(bm)) = (a.reduce_mod_prime(PRIME), b.reduce_mod_prime(PRIME)) else {
            return false;
        };
        if am.degree() != a.degree() || bm.degree() != b.degree() {
            return false;
        }
        am.gcd(&bm).degree() == Some(0)
    }
}

impl Domain for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn embed(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        arith::mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| arith::inv_mod_prime(*a, self.p))
    }
    fn render(&self, a: &u64) -> (String, bool) {
        (a.to_string(), false)
    }
}

/// Dense polynomial, coefficients low degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<D: Domain> {
    domain: D,
    coeffs: Vec<D::Elem>,
}

pub type QPoly = Poly<Rationals>;
pub type FpPoly = Poly<PrimeField>;

impl<D: Domain> Poly<D> {
    pub fn new(domain: D, mut coeffs: Vec<D::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| domain.is_zero(c)) {
            coeffs.pop();
        }
        Poly { domain, coeffs }
    }

    pub fn from_ints(domain: D, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| domain.embed(n)).collect();
        Poly::new(domain, c)
    }

    pub fn zero(domain: D) -> Self {
        Poly { domain, coeffs: Vec::new() }
    }

    pub fn constant(domain: D, c: D::Elem) -> Self {
        Poly::new(domain, vec![c])
    }

    pub fn one(domain: D) -> Self {
        let one = domain.one();
        Poly::constant(domain, one)
    }

    /// `c * x^n`.
    pub fn monomial(domain: D, c: D::Elem, n: usize) -> Self {
        let mut coeffs = vec![domain.zero(); n];
        coeffs.push(c);
        Poly::new(domain, coeffs)
    }

    /// The variable `x`.
    pub fn x(domain: D) -> Self {
        let one = domain.one();
        Poly::monomial(domain, one, 1)
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> D::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.domain.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&D::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = &self.domain;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| d.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(d.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|a| self.domain.neg(a)).collect();
        Poly::new(self.domain.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &D::Elem) -> Self {
        let v = self.coeffs.iter().map(|a| self.domain.mul(a, c)).collect();
        Poly::new(self.domain.clone(), v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.domain.clone());
        }
        let d = &self.domain;
        let mut out = vec![d.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if d.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = d.add(&out[i + j], &d.mul(a, b));
            }
        }
        Poly::new(d.clone(), out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Poly::one(self.domain.clone());
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

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), SymbolicError> {
        let d = &self.domain;
        let lead_inv = divisor.leading().and_then(|l| d.inv(l)).ok_or(SymbolicError::DivisionByZero)?;
        let dn = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return Ok((Poly::zero(d.clone()), self.clone()));
        }
        let mut quot = vec![d.zero(); rem.len() - dn + 1];
        for i in (0..quot.len()).rev() {
            let c = d.mul(&rem[i + dn - 1], &lead_inv);
            if d.is_zero(&c) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = d.sub(&rem[i + j], &d.mul(&c, b));
            }
            quot[i] = c;
        }
        rem.truncate(dn - 1);
        Ok((Poly::new(d.clone(), quot), Poly::new(d.clone(), rem)))
    }

    /// Divides exactly, or reports a nonzero remainder as `None`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>, SymbolicError> {
        let (q, r) = self.divmod(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading().and_then(|l| self.domain.inv(l)) {
            Some(li) => self.scale(&li),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) || D::coprime_hint(self, other) {
            return Poly::one(self.domain.clone());
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1.monic();
            a = std::mem::replace(&mut b, r);
        }
        a
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &D::Elem) -> D::Elem {
        let d = &self.domain;
        self.coeffs.iter().rev().fold(d.zero(), |acc, c| d.add(&d.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let d = &self.domain;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| d.mul(a, &d.embed(i as i64)))
            .collect();
        Poly::new(d.clone(), c)
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let d = &self.domain;
        let one = d.one();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if d.is_zero(c) {
                continue;
            }
            let (text, negative) = d.render(c);
            let unit = *c == one || d.neg(c) == one && negative;
            let body = match (i, unit) {
                (0, _) => text,
                (1, true) => var.to_string(),
                (1, false) => format!("{text}*{var}"),
                (_, true) => format!("{var}^{i}"),
                (_, false) => format!("{text}*{var}^{i}"),
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl<D: Domain> fmt::Display for Poly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl QPoly {
    /// Reduces coefficients mod `p`; `None` if some denominator is divisible by `p`.
    pub fn reduce_mod_prime(&self, p: u64) -> Option<FpPoly> {
        let field = PrimeField { p };
        let pb = BigInt::from(p);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let den = (c.denom() % &pb).to_u64()?;
                if den == 0 {
                    return None;
                }
                let num = mod_big(c.numer(), &pb);
                Some(arith::mul_mod(num, arith::inv_mod_prime(den, p), p))
            })
            .collect::<Option<Vec<u64>>>()?;
        Some(Poly::new(field, coeffs))
    }

    /// Coefficients as reduced fraction strings, low degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

fn mod_big(n: &BigInt, m: &BigInt) -> u64 {
    let r = ((n % m) + m) % m;
    r.to_u64().expect("residue fits")
}

/// `num / den` in lowest terms with monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<D: Domain> {
    num: Poly<D>,
    den: Poly<D>,
}

pub type QFunction = RationalFunction<Rationals>;

impl<D: Domain> RationalFunction<D> {
    pub fn new(num: Poly<D>, den: Poly<D>) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_exact(&g)?.expect("gcd divides"), den.div_exact(&g)?.expect("gcd divides"))
        } else {
            (num, den)
        };
        if num.is_zero() {
            den = Poly::one(den.domain.clone());
        }
        let li = den.domain.inv(den.leading().expect("nonzero")).expect("field");
        num = num.scale(&li);
        den = den.scale(&li);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly<D>) -> Self {
        let den = Poly::one(p.domain.clone());
        RationalFunction { num: p, den }
    }

    pub fn num(&self) -> &Poly<D> {
        &self.num
    }

    pub fn den(&self) -> &Poly<D> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFunction::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cancels across the two fractions before multiplying.
    pub fn mul(&self, other: &Self) -> Self {
        let cancel = |a: &Poly<D>, b: &Poly<D>| {
            let g = a.gcd(b);
            if g.degree().unwrap_or(0) == 0 {
                (a.clone(), b.clone())
            } else {
                (a.div_exact(&g).unwrap().unwrap(), b.div_exact(&g).unwrap().unwrap())
            }
        };
        let (a1, b2) = cancel(&self.num, &other.den);
        let (a2, b1) = cancel(&other.num, &self.den);
        RationalFunction::new(a1.mul(&a2), b1.mul(&b2)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self, SymbolicError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, SymbolicError> {
        Ok(self.mul(&other.inv()?))
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &D::Elem) -> Option<D::Elem> {
        let d = &self.num.domain;
        let den = d.inv(&self.den.eval(x))?;
        Some(d.mul(&self.num.eval(x), &den))
    }

    pub fn display_with(&self, var: &str) -> String {
        let wrap = |p: &Poly<D>| {
            let s = p.display_with(var);
            if p.coeffs.iter().filter(|c| !p.domain.is_zero(c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.is_polynomial() {
            self.num.display_with(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl QFunction {
    /// Value at `u` in `F_p`, `None` at a pole or when a coefficient is not `p`-integral.
    pub fn eval_mod(&self, u: u64, p: u64) -> Option<u64> {
        let field = PrimeField { p };
        let num = self.num.reduce_mod_prime(p)?;
        let den = self.den.reduce_mod_prime(p)?;
        let dv = den.eval(&(u % p));
        field.inv(&dv).map(|di| field.mul(&num.eval(&(u % p)), &di))
    }
}

impl<D: Domain> fmt::Display for RationalFunction<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("u"))
    }
}

fn u_minus_1() -> QPoly {
    QPoly::from_ints(Rationals, &[-1, 1])
}

static SD_VALUES: OnceLock<Mutex<Vec<QFunction>>> = OnceLock::new();

/// `f(n)` as a function of `u = f(2)`, from `f(0) = 0`, `f(1) = 1`, `f(2) = u`
/// and `f(n+1) = f(n-1) (f(n)+1)/(f(n)-1)`. Results are cached.
pub fn sd_value(n: usize) -> QFunction {
    let cache = SD_VALUES.get_or_init(|| {
        let base = [QPoly::zero(Rationals), QPoly::one(Rationals), QPoly::x(Rationals)];
        Mutex::new(base.into_iter().map(QFunction::from_poly).collect())
    });
    let mut values = cache.lock().unwrap_or_else(|e| e.into_inner());
    let one = QFunction::from_poly(QPoly::one(Rationals));
    while values.len() <= n {
        let m = values.len() - 1;
        let ratio = values[m].add(&one).div(&values[m].sub(&one)).expect("f(n) != 1 for n >= 2");
        let next = values[m - 1].mul(&ratio);
        values.push(next);
    }
    values[n].clone()
}

/// `p_0 = 1`, `p_{k+1} = 2 + (u-1) p_k`.
pub fn p_k_poly(k: usize) -> QPoly {
    let two = QPoly::from_ints(Rationals, &[2]);
    (0..k).fold(QPoly::one(Rationals), |p, _| two.add(&u_minus_1().mul(&p)))
}

/// `2 + 2(u-1) + ... + 2(u-1)^{k-1} + (u-1)^k`.
pub fn p_k_geometric(k: usize) -> QPoly {
    geometric_forms(k).pop().expect("k + 1 entries")
}

/// The geometric closed forms for `0..=k_max`, sharing powers of `u - 1`.
fn geometric_forms(k_max: usize) -> Vec<QPoly> {
    let t = u_minus_1();
    let two = Rationals.embed(2);
    let (mut power, mut partial) = (QPoly::one(Rationals), QPoly::zero(Rationals));
    let mut out = Vec::with_capacity(k_max + 1);
    for _ in 0..=k_max {
        out.push(partial.scale(&two).add(&power));
        partial = partial.add(&power);
        power = power.mul(&t);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormCheck {
    Geometric,
    OddValue,
    EvenValue,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClosedFormReport {
    pub k_max: usize,
    pub ok: bool,
    pub first_failure: Option<(usize, ClosedFormCheck)>,
}

/// Checks, for `k <= k_max`, the geometric form of `p_k`,
/// `f(2k+1) = p_k/(u-1)^k` and `f(2k+2) = 1 + (u-1) p_k`.
pub fn verify_closed_forms(k_max: usize) -> ClosedFormReport {
    let t = u_minus_1();
    let geometric = geometric_forms(k_max);
    let (mut pk, mut t_k) = (QPoly::one(Rationals), QPoly::one(Rationals));
    let mut failure = None;
    for (k, geo) in geometric.iter().enumerate() {
        let odd = QFunction::new(pk.clone(), t_k.clone()).expect("nonzero");
        let even = QFunction::from_poly(QPoly::one(Rationals).add(&t.mul(&pk)));
        failure = if &pk != geo {
            Some((k, ClosedFormCheck::Geometric))
        } else if sd_value(2 * k + 1) != odd {
            Some((k, ClosedFormCheck::OddValue))
        } else if sd_value(2 * k + 2) != even {
            Some((k, ClosedFormCheck::EvenValue))
        } else {
            None
        };
        if failure.is_some() {
            break;
        }
        pk = QPoly::from_ints(Rationals, &[2]).add(&t.mul(&pk));
        t_k = t_k.mul(&t);
    }
    ClosedFormReport { k_max, ok: failure.is_none(), first_failure: failure }
}

/// Monic numerator of `f(2) f(3) - f(6)`, namely `u (u-2) (u^2+1)`.
pub fn tchar_constraint() -> QPoly {
    let rf = sd_value(2).mul(&sd_value(3)).sub(&sd_value(6));
    debug_assert_eq!(rf.den(), &u_minus_1());
    rf.num().monic()
}

/// `(x+1)^3 (x^3-1) - (x-1)^3 (x^3+1)`, which equals `6x^5 - 6x`.
pub fn tiff5_identity() -> QPoly {
    let xp1 = QPoly::from_ints(Rationals, &[1, 1]);
    let xm1 = QPoly::from_ints(Rationals, &[-1, 1]);
    let x3m1 = QPoly::from_ints(Rationals, &[-1, 0, 0, 1]);
    let x3p1 = QPoly::from_ints(Rationals, &[1, 0, 0, 1]);
    xp1.pow(3).mul(&x3m1).sub(&xm1.pow(3).mul(&x3p1))
}

fn odd_prime_field(p: u64) -> Result<PrimeField, SymbolicError> {
    if p == 2 {
        return Err(SymbolicError::EvenCharacteristic);
    }
    PrimeField::new(p)
}

/// `(1+w)^k` and `(1-w)^k` over `F_p`.
fn binomial_pair(f: PrimeField, k: u32) -> (FpPoly, FpPoly) {
    (FpPoly::from_ints(f, &[1, 1]).pow(k), FpPoly::from_ints(f, &[1, -1]).pow(k))
}

/// `(w^k ((1+w)^k + (1-w)^k) - ((1+w)^k - (1-w)^k)) / 2` over `F_p`.
///
/// For odd `k` the `w^k` terms cancel and what remains is
/// `sum_{0<j<k} ±C(k,j) w^{..}` at distinct exponents, so the result is zero
/// exactly when `k` is a power of `p`.
pub fn eratio_defect_poly(k: u32, p: u64) -> Result<FpPoly, SymbolicError> {
    let f = odd_prime_field(p)?;
    if k == 0 {
        return Err(SymbolicError::OutOfRange("k must be at least 1".into()));
    }
    let (a, b) = binomial_pair(f, k);
    let wk = FpPoly::monomial(f, 1, k as usize);
    let defect = wk.mul(&a.add(&b)).sub(&a.sub(&b));
    Ok(defect.scale(&f.inv(&2).expect("p odd")))
}

/// `w^l ((1+w)^l - (1-w)^l) + (1+w)^l + (1-w)^l` over `F_p`, `l = q-1-k`,
/// for `(q+1)/2 < k < q-1` with `l` odd. Degree `2l`, leading coefficient 2.
pub fn q_k_defect_poly(k: u64, q: u64) -> Result<FpPoly, SymbolicError> {
    let (p, _) = arith::prime_power(q).ok_or_else(|| SymbolicError::OutOfRange(format!("{q} is not a prime power")))?;
    let f = odd_prime_field(p)?;
    if !(2 * k > q + 1 && k < q - 1) {
        return Err(SymbolicError::OutOfRange(format!("need (q+1)/2 < k < q-1, got k = {k}, q = {q}")));
    }
    let l = q - 1 - k;
    if l.is_multiple_of(2) {
        return Err(SymbolicError::OutOfRange(format!("l = q-1-k = {l} must be odd")));
    }
    let (a, b) = binomial_pair(f, l as u32);
    let wl = FpPoly::monomial(f, 1, l as usize);
    let out = wl.mul(&a.sub(&b)).add(&a).add(&b);
    debug_assert_eq!(out.degree(), Some(2 * l as usize));
    debug_assert_eq!(out.leading(), Some(&2));
    Ok(out)
}
