//! Finite fields `F_{p^ell}` in a dense polynomial basis.
//!
//! A field is `F_p[x] / (m(x))` where `m` is the lexicographically smallest
//! monic irreducible of degree `ell` (coefficient vectors compared with the
//! constant term most significant). Elements are coefficient vectors of
//! length `ell`, low degree first.
//!
//! Elements are also numbered by their *canonical index*: the coefficient
//! vector read as a base-`p` numeral with `a_0` as the leading digit. The
//! canonical ordering drives primitive-element selection, map tables and
//! every "first witness" reported by the SD checks.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Largest admissible characteristic (exclusive); products of residues fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{p} is not prime (divisible by {factor})")]
    Composite { p: u64, factor: u64 },
    #[error("characteristic {0} out of range (need 2 <= p < 2^31)")]
    PrimeOutOfRange(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{ell} does not fit in 64 bits")]
    TooLarge { p: u64, ell: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("internal error: no irreducible of degree {ell} over F_{p}")]
    NoIrreducible { p: u64, ell: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
struct SpecData {
    p: u64,
    ell: u32,
    modulus: Vec<u64>,
}

/// A finite field `F_q`, `q = p^ell`. Cheap to clone.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "SpecData", try_from = "SpecData")]
pub struct FieldSpec {
    inner: Arc<SpecData>,
    q: u64,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)?;
        if self.inner.ell > 1 {
            write!(f, "[mod {}]", poly_string(&self.inner.modulus))?;
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<FieldSpec> for SpecData {
    fn from(spec: FieldSpec) -> Self {
        (*spec.inner).clone()
    }
}

impl TryFrom<SpecData> for FieldSpec {
    type Error = FieldError;

    fn try_from(data: SpecData) -> Result<Self, Self::Error> {
        FieldSpec::with_modulus(data.p, &data.modulus)
            .and_then(|f| if f.ell() == data.ell { Ok(f) } else {
                Err(FieldError::InvalidModulus(format!(
                    "modulus has degree {} but ell = {}",
                    f.ell(),
                    data.ell
                )))
            })
    }
}

fn check_prime(p: u64) -> Result<(), FieldError> {
    if !(2..MAX_PRIME).contains(&p) {
        return Err(FieldError::PrimeOutOfRange(p));
    }
    match arith::smallest_factor(p) {
        Some(f) if f != p => Err(FieldError::Composite { p, factor: f }),
        _ => Ok(()),
    }
}

/// Builds the canonical model of `F_{p^ell}`.
pub fn make_field(p: u64, ell: u32) -> Result<FieldSpec, FieldError> {
    check_prime(p)?;
    if ell == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = arith::checked_pow(p, ell).ok_or(FieldError::TooLarge { p, ell })?;
    let modulus = if ell == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, ell as usize).ok_or(FieldError::NoIrreducible { p, ell })?
    };
    Ok(FieldSpec {
        inner: Arc::new(SpecData { p, ell, modulus }),
        q,
    })
}

/// Builds the canonical field of order `q`, if `q` is a prime power.
pub fn field_of_order(q: u64) -> Result<FieldSpec, FieldError> {
    match arith::prime_power(q) {
        Some((p, ell)) => make_field(p, ell),
        None => match arith::smallest_factor(q) {
            Some(f) => Err(FieldError::Composite { p: q, factor: f }),
            None => Err(FieldError::PrimeOutOfRange(q)),
        },
    }
}

impl FieldSpec {
    /// A field with a caller-chosen modulus (monic, irreducible, low-to-high).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldSpec, FieldError> {
        check_prime(p)?;
        if modulus.len() < 2 {
            return Err(FieldError::InvalidModulus("degree must be at least 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(FieldError::InvalidModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidModulus(format!("coefficients must lie in [0, {p})")));
        }
        let ell = (modulus.len() - 1) as u32;
        let q = arith::checked_pow(p, ell).ok_or(FieldError::TooLarge { p, ell })?;
        if ell == 1 {
            if modulus[0] != 0 {
                return Err(FieldError::InvalidModulus(
                    "prime fields use the modulus x (coefficients [0, 1])".into(),
                ));
            }
        } else if !gfp::is_irreducible(modulus, p) {
            return Err(FieldError::InvalidModulus(format!(
                "{} is reducible over F_{p}",
                poly_string(modulus)
            )));
        }
        Ok(FieldSpec {
            inner: Arc::new(SpecData { p, ell, modulus: modulus.to_vec() }),
            q,
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn ell(&self) -> u32 {
        self.inner.ell
    }

    /// Field order `p^ell`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, low-to-high, length `ell + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.ell() as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p() as i64) as u64;
        e
    }

    /// Element from a coefficient vector (low degree first).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.ell() as usize {
            return Err(FieldError::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.ell(),
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(FieldError::InvalidElement(format!("coefficient {c} not reduced mod {}", self.p())));
        }
        Ok(FieldElement { field: self.clone(), coeffs: coeffs.to_vec() })
    }

    /// The element with the given canonical index (`0 <= index < q`).
    pub fn element_at(&self, index: u64) -> FieldElement {
        assert!(index < self.q, "index {index} out of range for {self}");
        let ell = self.ell() as usize;
        let p = self.p();
        let mut coeffs = vec![0; ell];
        let mut rest = index;
        for slot in coeffs.iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        FieldElement { field: self.clone(), coeffs }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element_at(i))
    }

    fn check(&self, e: &FieldElement) -> Result<(), FieldError> {
        if &e.field == self {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    /// Smallest element (canonical order) generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.q - 1;
        let divisors = arith::prime_divisors(n);
        (1..self.q)
            .map(|i| self.element_at(i))
            .find(|a| divisors.iter().all(|&r| !a.pow(n / r).is_one()))
            .expect("finite fields have cyclic unit groups")
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p();
        let ell = a.len();
        if ell == 1 {
            return vec![arith::mul_mod(a[0], b[0], p)];
        }
        let mut prod = vec![0u64; 2 * ell - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + arith::mul_mod(x, y, p)) % p;
            }
        }
        let m = self.modulus();
        for top in (ell..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &mj) in m[..ell].iter().enumerate() {
                let idx = top - ell + j;
                prod[idx] = (prod[idx] + p - arith::mul_mod(c, mj, p)) % p;
            }
        }
        prod.truncate(ell);
        prod
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            let mut c = self.coeffs.clone();
            c.push(0);
            f.write_str(&poly_string(&c))
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(other)?;
        let p = self.field.p();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.field.mul_coeffs(&self.coeffs, &other.coeffs);
        FieldElement { field: self.field.clone(), coeffs }
    }

    /// Square-and-multiply exponentiation; `a^0 = 1` including `a = 0`.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDivision);
        }
        Ok(self.pow(self.field.q() - 2))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// The Frobenius image `a^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p())
    }

    /// Least `n >= 1` with `a^n = 1`.
    pub fn order(&self) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDivision);
        }
        let mut n = self.field.q() - 1;
        for r in arith::prime_divisors(n) {
            while n.is_multiple_of(r) && self.pow(n / r).is_one() {
                n /= r;
            }
        }
        Ok(n)
    }
}

/// Free-function form of [`FieldSpec::primitive_element`].
pub fn primitive_element(field: &FieldSpec) -> FieldElement {
    field.primitive_element()
}

/// Free-function form of [`FieldElement::order`].
pub fn element_order(a: &FieldElement) -> Result<u64, FieldError> {
    a.order()
}

fn poly_string(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn smallest_irreducible(p: u64, ell: usize) -> Option<Vec<u64>> {
    let count = arith::checked_pow(p, ell as u32)?;
    // Lexicographic order with a_0 most significant: decode the counter big-endian.
    (0..count).find_map(|t| {
        let mut coeffs = vec![0u64; ell + 1];
        coeffs[ell] = 1;
        let mut rest = t;
        for slot in coeffs[..ell].iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        (coeffs[0] != 0 && gfp::is_irreducible(&coeffs, p)).then_some(coeffs)
    })
}

/// Dense polynomials over `F_p`, used only for the irreducibility test.
mod gfp {
    use crate::arith::{inv_mod_prime, mul_mod, prime_divisors};

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod_prime(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = mul_mod(r[top], lead_inv, p);
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - mul_mod(c, mj, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub_x(a: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        if r.len() < 2 {
            r.resize(2, 0);
        }
        r[1] = (r[1] + p - 1) % p;
        trim(r)
    }

    /// Rabin's test for a monic `f` of degree `n >= 1`.
    pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        // x^{p^i} mod f for i = 0..=n
        let mut frob = vec![rem(&x, f, p)];
        for i in 0..n {
            let next = powmod(&frob[i], p, f, p);
            frob.push(next);
        }
        if trim(sub_x(&frob[n], p)) != Vec::<u64>::new() {
            return false;
        }
        prime_divisors(n as u64).into_iter().all(|r| {
            let g = gcd(f, &sub_x(&frob[n / r as usize], p), p);
            g.len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.elements().map(|e| e.coeffs()[0]).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        // The monic quadratics over F_3 with a_0 = 0 have the root 0; the next
        // candidate in order is 1 + 0x + x^2, which has no root mod 3.
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        for a0 in 0..3u64 {
            assert_ne!((a0 * a0 + 1) % 3, 0);
        }
    }

    #[test]
    fn composite_rejected_with_factor() {
        assert_eq!(make_field(4, 1), Err(FieldError::Composite { p: 4, factor: 2 }));
        assert_eq!(make_field(91, 2), Err(FieldError::Composite { p: 91, factor: 7 }));
        assert_eq!(make_field(1, 1), Err(FieldError::PrimeOutOfRange(1)));
        assert_eq!(make_field(3, 0), Err(FieldError::ZeroDegree));
        assert!(matches!(make_field(MAX_PRIME + 11, 1), Err(FieldError::PrimeOutOfRange(_))));
    }

    #[test]
    fn spec_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.from_int(2).inv().unwrap(), f5.from_int(3));
        let f9 = make_field(3, 2).unwrap();
        let x = f9.element(&[0, 1]).unwrap();
        assert_eq!(x.mul(&x).unwrap(), f9.from_int(2));
        let f7 = make_field(7, 1).unwrap();
        assert!(f7.from_int(3).pow(6).is_one());
        assert!(f5.zero().inv().is_err());
        assert_eq!(f5.one().div(&f5.zero()), Err(FieldError::ZeroDivision));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = make_field(5, 1).unwrap();
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f5.one().add(&f7.one()), Err(FieldError::SpecMismatch));
        assert_eq!(f5.one().mul(&f7.one()), Err(FieldError::SpecMismatch));
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(make_field(5, 1).unwrap().primitive_element().coeffs(), &[2]);
        assert_eq!(make_field(7, 1).unwrap().primitive_element().coeffs(), &[3]);
        assert_eq!(make_field(2, 1).unwrap().primitive_element().coeffs(), &[1]);
        // In F_9 = F_3[x]/(x^2+1): x and 2x have order 4, 1 has order 1, 1+x has order 8.
        assert_eq!(make_field(3, 2).unwrap().primitive_element().coeffs(), &[1, 1]);
    }

    #[test]
    fn frobenius_examples() {
        let f9 = make_field(3, 2).unwrap();
        let x = f9.element(&[0, 1]).unwrap();
        assert_eq!(x.frobenius(), x.neg());
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.from_int(3).frobenius(), f5.from_int(3));
        let f4 = make_field(2, 2).unwrap();
        let t = f4.element(&[0, 1]).unwrap();
        assert_eq!(t.frobenius(), t.mul(&t).unwrap());
    }

    #[test]
    fn orders() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.from_int(2).order().unwrap(), 4);
        let f13 = make_field(13, 1).unwrap();
        assert_eq!(f13.from_int(5).order().unwrap(), 4);
        assert_eq!(f13.one().order().unwrap(), 1);
        assert!(f13.zero().order().is_err());
    }

    #[test]
    fn index_round_trip() {
        let f27 = make_field(3, 3).unwrap();
        for i in 0..27 {
            assert_eq!(f27.element_at(i).index(), i);
        }
        assert_eq!(f27.one().index(), 9);
    }

    #[test]
    fn custom_modulus_validation() {
        assert!(FieldSpec::with_modulus(3, &[2, 0, 1]).is_err()); // x^2 - 1
        assert!(FieldSpec::with_modulus(3, &[2, 1, 1]).is_ok());
        assert!(FieldSpec::with_modulus(3, &[1, 0, 2]).is_err()); // not monic
        let f = FieldSpec::with_modulus(3, &[2, 1, 1]).unwrap();
        assert_ne!(f, make_field(3, 2).unwrap());
    }

    #[test]
    fn serde_shape() {
        let f9 = make_field(3, 2).unwrap();
        let json = serde_json::to_string(&f9).unwrap();
        assert_eq!(json, r#"{"p":3,"ell":2,"modulus":[1,0,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f9);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":3,"ell":2,"modulus":[2,0,1]}"#).is_err());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":3,"ell":3,"modulus":[1,0,1]}"#).is_err());
    }
}
