//! SD-groups of finite fields via the exponent scan, classification of power
//! maps `w -> w^m`, Lucas's theorem and the root-of-unity criteria.
//!
//! In odd characteristic an SD self-map of `F_q` is multiplicative, fixes 0
//! and 1 and is injective, so it is `w -> w^k` for some `k` coprime to
//! `q - 1`; it is an SD-map iff
//! `w^k ((1+w)^k + (1-w)^k) = (1+w)^k - (1-w)^k` on all of `F_q`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::field::FieldSpec;
use crate::sd_maps::{sd_holds, MapTable};
use crate::tables::GfTables;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("operation requires odd characteristic, got characteristic 2")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2, got characteristic {0}")]
    NotCharacteristicTwo(u64),
    #[error("exponent {k} outside [1, {limit})")]
    ExponentOutOfRange { k: u64, limit: u64 },
    #[error("exponent must be at least {min}, got {got}")]
    ExponentTooSmall { min: u64, got: u64 },
    #[error("a root-of-unity oracle is required to decide w^{m} on an infinite field of characteristic 2")]
    OracleRequired { m: u64 },
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
}

/// Whether the power map `w -> w^k` satisfies the cleared SD identity at every
/// point of `F_q` (odd characteristic, `1 <= k < q - 1`, or `k = 1` for `q = 3`).
pub fn eratio_holds(k: u64, field: &FieldSpec) -> Result<bool, ClassifyError> {
    if field.p() == 2 {
        return Err(ClassifyError::EvenCharacteristic);
    }
    let limit = (field.q() - 1).max(2);
    if k == 0 || k >= limit {
        return Err(ClassifyError::ExponentOutOfRange { k, limit });
    }
    Ok(eratio_holds_with(k, &GfTables::new(field)))
}

fn eratio_holds_with(k: u64, t: &GfTables) -> bool {
    let one = t.one();
    (0..t.order()).all(|w| {
        let a = t.pow(t.add(one, w), k);
        let b = t.pow(t.sub(one, w), k);
        t.mul(t.pow(w, k), t.add(a, b)) == t.sub(a, b)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdRegime {
    /// Odd characteristic: SD(F_q) consists of power maps.
    PowerMaps,
    /// Characteristic 2: every bijection fixing 1 is an SD-map.
    Char2Census,
}

/// The SD-group of `F_q` as computed by the exponent scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdClassification {
    pub q: u64,
    pub p: u64,
    pub ell: u32,
    pub regime: SdRegime,
    /// Exponents `k in [1, q-1)` with `w -> w^k` in SD(F_q); empty in characteristic 2.
    pub exponents: Vec<u64>,
    /// `p^j` for `j = 0..ell`: the Frobenius powers.
    pub aut_exponents: Vec<u64>,
    pub is_exceptional: bool,
    /// `(q-1)!` in decimal, characteristic 2 only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub census_count: Option<String>,
}

fn frobenius_exponents(field: &FieldSpec) -> Vec<u64> {
    let mut out: Vec<u64> = (0..field.ell()).map(|j| field.p().pow(j)).collect();
    out.sort();
    out
}

/// SD(F_q) for a finite field.
pub fn compute_sd_group(field: &FieldSpec) -> SdClassification {
    let (q, p, ell) = (field.q(), field.p(), field.ell());
    let aut_exponents = frobenius_exponents(field);
    if p == 2 {
        let census: BigUint = (1..q).map(BigUint::from).product();
        return SdClassification {
            q,
            p,
            ell,
            regime: SdRegime::Char2Census,
            exponents: Vec::new(),
            aut_exponents,
            is_exceptional: false,
            census_count: Some(census.to_string()),
        };
    }
    let t = GfTables::new(field);
    let n = q - 1;
    let exponents: Vec<u64> = (1..n.max(2))
        .filter(|&k| arith::gcd(k, n) == 1 && eratio_holds_with(k, &t))
        .collect();
    let is_exceptional = exponents != aut_exponents;
    SdClassification {
        q,
        p,
        ell,
        regime: SdRegime::PowerMaps,
        exponents,
        aut_exponents,
        is_exceptional,
        census_count: None,
    }
}

/// Binomial coefficient `C(n, k) mod p` via base-`p` digits (Lucas's theorem).
pub fn lucas_binomial(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = arith::mul_mod(acc, small_binomial(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    acc
}

/// `C(n, k) mod p` for `k <= n < p`, by the multiplicative formula.
fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = arith::mul_mod(num, n - i, p);
        den = arith::mul_mod(den, i + 1, p);
    }
    arith::mul_mod(num, arith::inv_mod_prime(den, p), p)
}

/// `k` is a power of `p` iff `C(k, j) = 0 mod p` for all `0 < j < k`.
pub fn is_p_power_by_binomials(k: u64, p: u64) -> bool {
    k >= 1 && (1..k).all(|j| lucas_binomial(k, j, p) == 0)
}

/// Answers "does the field contain a root of unity of order dividing `n`,
/// other than 1?".
#[derive(Clone)]
pub enum RootOfUnityOracle {
    /// The algebraic closure of `F_p`: nontrivial `n`-th roots exist iff `n` has a prime factor other than `p`.
    AlgebraicClosure,
    /// Only the roots of unity of `F_p` itself, as in `F_p(t)`.
    PrimeFieldOnly,
    /// Caller-supplied predicate.
    Custom(Arc<dyn Fn(u64) -> bool + Send + Sync>),
}

impl fmt::Debug for RootOfUnityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootOfUnityOracle::AlgebraicClosure => f.write_str("AlgebraicClosure"),
            RootOfUnityOracle::PrimeFieldOnly => f.write_str("PrimeFieldOnly"),
            RootOfUnityOracle::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl RootOfUnityOracle {
    fn has_nontrivial_root(&self, n: u64, p: u64) -> bool {
        match self {
            RootOfUnityOracle::AlgebraicClosure => arith::split_p_part(n, p).1 > 1,
            RootOfUnityOracle::PrimeFieldOnly => arith::gcd(n, p - 1) > 1,
            RootOfUnityOracle::Custom(f) => f(n),
        }
    }
}

/// What `classify_power` needs to know about a field.
#[derive(Debug, Clone)]
pub enum FieldDescriptor {
    Finite { p: u64, ell: u32 },
    Infinite {
        /// 0 or a prime.
        characteristic: u64,
        roots_of_unity: Option<RootOfUnityOracle>,
    },
}

impl FieldDescriptor {
    pub fn finite(field: &FieldSpec) -> Self {
        FieldDescriptor::Finite { p: field.p(), ell: field.ell() }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Finite { p, .. } => *p,
            FieldDescriptor::Infinite { characteristic, .. } => *characteristic,
        }
    }

    fn validate(&self) -> Result<(), ClassifyError> {
        let c = self.characteristic();
        if c != 0 && !arith::is_prime(c) {
            return Err(ClassifyError::InvalidDescriptor(format!("characteristic {c} is neither 0 nor prime")));
        }
        if let FieldDescriptor::Finite { p, ell } = self {
            if *p == 0 || *ell == 0 || p.checked_pow(*ell).is_none() {
                return Err(ClassifyError::InvalidDescriptor("finite fields need p prime and 1 <= ell".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerClassification {
    pub is_sd: bool,
    /// Which of the six mutually exclusive cases applies, if any.
    pub case: Option<u8>,
}

/// Decides whether `w -> w^m` is an SD self-map of the described field.
///
/// Cases: (1) `m = 1`; (2) finite odd `q` with `m ≡ p^k mod (q-1)`;
/// (3) finite characteristic 2 with `gcd(m, q-1) = 1`; (4) infinite
/// characteristic 2, `m = 2^a m'`, `m' >= 3` odd, no nontrivial `m'`-th root
/// of unity; (5) infinite, `m = p^k`, `k >= 1`; (6) `m ≡ 3 mod 4` on `F_5`
/// (`m = 3` after reduction, as in case 2).
pub fn classify_power(m: u64, desc: &FieldDescriptor) -> Result<PowerClassification, ClassifyError> {
    if m == 0 {
        return Err(ClassifyError::ExponentTooSmall { min: 1, got: 0 });
    }
    desc.validate()?;
    let yes = |case| Ok(PowerClassification { is_sd: true, case: Some(case) });
    let no = Ok(PowerClassification { is_sd: false, case: None });
    if m == 1 {
        return yes(1);
    }
    match desc {
        FieldDescriptor::Finite { p, ell } => {
            let q = p.pow(*ell);
            let n = q - 1;
            if *p == 2 {
                return if arith::gcd(m, n) == 1 { yes(3) } else { no };
            }
            let r = m % n;
            if (0..*ell).any(|k| p.pow(k) % n == r) {
                yes(2)
            } else if q == 5 && r == 3 {
                yes(6)
            } else {
                no
            }
        }
        FieldDescriptor::Infinite { characteristic, roots_of_unity } => {
            let c = *characteristic;
            if c == 0 {
                return no;
            }
            let (a, rest) = arith::split_p_part(m, c);
            if rest == 1 && a >= 1 {
                return yes(5);
            }
            if c != 2 {
                return no;
            }
            let oracle = roots_of_unity.as_ref().ok_or(ClassifyError::OracleRequired { m })?;
            if oracle.has_nontrivial_root(rest, c) {
                no
            } else {
                yes(4)
            }
        }
    }
}

/// `w -> w^3` is an SD-map of `F_{2^ell}` iff `ell` is odd.
pub fn cube_map_char2(field: &FieldSpec) -> Result<bool, ClassifyError> {
    if field.p() != 2 {
        return Err(ClassifyError::NotCharacteristicTwo(field.p()));
    }
    Ok(field.ell() % 2 == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct F5Characterizations {
    /// Aut(F) is a proper subgroup of SD(F).
    pub aut_strictly_smaller: bool,
    /// Fixing squares and negating non-squares is an SD-map.
    pub squares_map_is_sd: bool,
    /// Some square root of -1 generates the unit group.
    pub sqrt_minus1_generates: bool,
}

impl F5Characterizations {
    pub fn all_agree_with(&self, is_f5: bool) -> bool {
        self.aut_strictly_smaller == is_f5 && self.squares_map_is_sd == is_f5 && self.sqrt_minus1_generates == is_f5
    }
}

/// Three conditions that each hold exactly for `F_5`, computed independently.
pub fn f5_characterizations(field: &FieldSpec) -> Result<F5Characterizations, ClassifyError> {
    if field.p() == 2 {
        return Err(ClassifyError::EvenCharacteristic);
    }
    let aut_strictly_smaller = compute_sd_group(field).is_exceptional;

    let t = GfTables::new(field);
    let q = t.order();
    let n = (q - 1) as u64;
    let squares: Vec<bool> = {
        let mut s = vec![false; q as usize];
        for w in 0..q {
            s[t.mul(w, w) as usize] = true;
        }
        s
    };
    let img: Vec<u32> = (0..q).map(|w| if squares[w as usize] { w } else { t.neg(w) }).collect();
    let squares_map_is_sd = sd_holds(&t, &t, &img);

    let minus_one = t.neg(t.one());
    let sqrt_minus1_generates = (1..q).any(|w| t.mul(w, w) == minus_one && t.element_order(w) == Some(n));

    Ok(F5Characterizations { aut_strictly_smaller, squares_map_is_sd, sqrt_minus1_generates })
}

/// The four predicates on `w -> w^m` over a finite field, for `m = p^a m'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootOfUnityEquivalences {
    pub p_exponent: u32,
    pub m_prime: u64,
    /// `w -> w^m` is not injective (by exhaustion).
    pub non_injective: bool,
    /// Some `w != 1` has `w^m = 1` (by exhaustion).
    pub has_mth_root: bool,
    /// Some `w != 1` has `w^{m'} = 1` (by `gcd(m', q-1) > 1`).
    pub has_m_prime_th_root: bool,
    /// `F_{p^o}` is a subfield, `o` the order of `p` mod `m'`; only when `m'` is prime.
    pub contains_fpo: Option<bool>,
    pub consistent: bool,
}

pub fn root_of_unity_equivalences(m: u64, field: &FieldSpec) -> Result<RootOfUnityEquivalences, ClassifyError> {
    if m < 2 {
        return Err(ClassifyError::ExponentTooSmall { min: 2, got: m });
    }
    let p = field.p();
    let (a, m_prime) = arith::split_p_part(m, p);
    let t = GfTables::new(field);
    let q = t.order();

    let mut seen = vec![false; q as usize];
    let non_injective = (0..q).any(|w| std::mem::replace(&mut seen[t.pow(w, m) as usize], true));
    let one = t.one();
    let has_mth_root = (1..q).any(|w| w != one && t.pow(w, m) == one);
    let has_m_prime_th_root = arith::gcd(m_prime, (q - 1) as u64) > 1;
    let contains_fpo = (m_prime > 1 && arith::is_prime(m_prime)).then(|| {
        let o = arith::multiplicative_order(p % m_prime, m_prime) as u32;
        field.ell().is_multiple_of(o)
    });

    let consistent = non_injective == has_mth_root
        && has_mth_root == has_m_prime_th_root
        && contains_fpo.is_none_or(|c| c == has_m_prime_th_root);
    Ok(RootOfUnityEquivalences {
        p_exponent: a,
        m_prime,
        non_injective,
        has_mth_root,
        has_m_prime_th_root,
        contains_fpo,
        consistent,
    })
}

/// `w -> w^m` as a table, checked directly against the SD equation.
pub fn power_map_is_sd(m: u64, field: &FieldSpec) -> bool {
    crate::sd_maps::is_sd_map(&MapTable::power_map(field, m)).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_of_order, make_field};

    fn fq(q: u64) -> FieldSpec {
        field_of_order(q).unwrap()
    }

    #[test]
    fn eratio_examples() {
        assert!(eratio_holds(3, &fq(5)).unwrap());
        assert!(!eratio_holds(3, &fq(7)).unwrap());
        for q in [3, 9, 27, 25, 49] {
            let f = fq(q);
            if f.p() < q - 1 {
                assert!(eratio_holds(f.p(), &f).unwrap(), "q = {q}");
            }
        }
        assert_eq!(eratio_holds(1, &fq(4)), Err(ClassifyError::EvenCharacteristic));
        assert!(matches!(eratio_holds(4, &fq(5)), Err(ClassifyError::ExponentOutOfRange { .. })));
        assert!(eratio_holds(1, &fq(3)).unwrap());
    }

    #[test]
    fn eratio_fails_at_two_in_f7() {
        // w = 2 over F_7 with k = 3: 8 * (27 + (-1)) = 8 * 26 vs 27 - (-1) = 28.
        let (w, k) = (2i64, 3u32);
        let lhs = (w.pow(k) * ((1 + w).pow(k) + (1 - w).pow(k))).rem_euclid(7);
        let rhs = ((1 + w).pow(k) - (1 - w).pow(k)).rem_euclid(7);
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn sd_groups() {
        let g5 = compute_sd_group(&fq(5));
        assert_eq!((g5.exponents.clone(), g5.aut_exponents.clone(), g5.is_exceptional), (vec![1, 3], vec![1], true));
        let g7 = compute_sd_group(&fq(7));
        assert_eq!((g7.exponents.clone(), g7.is_exceptional), (vec![1], false));
        let g9 = compute_sd_group(&fq(9));
        assert_eq!((g9.exponents.clone(), g9.aut_exponents.clone(), g9.is_exceptional), (vec![1, 3], vec![1, 3], false));
        let g4 = compute_sd_group(&fq(4));
        assert_eq!(g4.regime, SdRegime::Char2Census);
        assert_eq!(g4.census_count.as_deref(), Some("6"));
        let g3 = compute_sd_group(&fq(3));
        assert_eq!(g3.exponents, vec![1]);
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial(5, 2, 5), 0);
        assert_eq!(lucas_binomial(6, 3, 5), 0);
        assert_eq!(lucas_binomial(123, 0, 7), 1);
        assert_eq!(lucas_binomial(3, 5, 7), 0);
        assert_eq!(lucas_binomial(6, 3, 3), 20 % 3);
        assert!(is_p_power_by_binomials(27, 3));
        assert!(!is_p_power_by_binomials(6, 3));
        assert!(is_p_power_by_binomials(1, 11));
    }

    #[test]
    fn classify_examples() {
        let f5 = FieldDescriptor::finite(&fq(5));
        assert_eq!(classify_power(3, &f5).unwrap(), PowerClassification { is_sd: true, case: Some(6) });
        let f8 = FieldDescriptor::finite(&fq(8));
        assert_eq!(classify_power(3, &f8).unwrap(), PowerClassification { is_sd: true, case: Some(3) });
        let f11 = FieldDescriptor::finite(&fq(11));
        assert!(!classify_power(5, &f11).unwrap().is_sd);
        let closure3 = FieldDescriptor::Infinite {
            characteristic: 3,
            roots_of_unity: Some(RootOfUnityOracle::AlgebraicClosure),
        };
        assert_eq!(classify_power(9, &closure3).unwrap(), PowerClassification { is_sd: true, case: Some(5) });
        assert_eq!(classify_power(1, &closure3).unwrap().case, Some(1));
        assert_eq!(classify_power(11, &f11).unwrap().case, Some(2));
        assert!(!classify_power(13, &f11).unwrap().is_sd);
        assert_eq!(classify_power(7, &f5).unwrap().case, Some(6));
    }

    #[test]
    fn classify_infinite_char2() {
        let no_oracle = FieldDescriptor::Infinite { characteristic: 2, roots_of_unity: None };
        assert_eq!(classify_power(3, &no_oracle), Err(ClassifyError::OracleRequired { m: 3 }));
        assert_eq!(classify_power(8, &no_oracle).unwrap().case, Some(5));
        // F_2(t): the only root of unity is 1, so every odd part is harmless.
        let rational = FieldDescriptor::Infinite {
            characteristic: 2,
            roots_of_unity: Some(RootOfUnityOracle::PrimeFieldOnly),
        };
        assert_eq!(classify_power(12, &rational).unwrap().case, Some(4));
        let closure = FieldDescriptor::Infinite {
            characteristic: 2,
            roots_of_unity: Some(RootOfUnityOracle::AlgebraicClosure),
        };
        assert!(!classify_power(12, &closure).unwrap().is_sd);
        // Union of F_{2^(odd)}: contains a nontrivial m'-th root iff ord_m'(2) is odd for some divisor.
        let odd_tower = FieldDescriptor::Infinite {
            characteristic: 2,
            roots_of_unity: Some(RootOfUnityOracle::Custom(Arc::new(|n| n % 7 == 0))),
        };
        assert!(!classify_power(7, &odd_tower).unwrap().is_sd);
        assert!(classify_power(3, &odd_tower).unwrap().is_sd);
        let q_bar = FieldDescriptor::Infinite { characteristic: 0, roots_of_unity: None };
        assert!(!classify_power(2, &q_bar).unwrap().is_sd);
        assert_eq!(classify_power(0, &q_bar), Err(ClassifyError::ExponentTooSmall { min: 1, got: 0 }));
        let bad = FieldDescriptor::Infinite { characteristic: 6, roots_of_unity: None };
        assert!(matches!(classify_power(2, &bad), Err(ClassifyError::InvalidDescriptor(_))));
    }

    #[test]
    fn cube_map_examples() {
        assert!(cube_map_char2(&fq(2)).unwrap());
        assert!(!cube_map_char2(&fq(4)).unwrap());
        assert!(cube_map_char2(&fq(8)).unwrap());
        assert!(power_map_is_sd(3, &fq(8)));
        assert!(!power_map_is_sd(3, &fq(4)));
        assert_eq!(cube_map_char2(&fq(9)), Err(ClassifyError::NotCharacteristicTwo(3)));
    }

    #[test]
    fn f5_characterization_examples() {
        let c5 = f5_characterizations(&fq(5)).unwrap();
        assert!(c5.aut_strictly_smaller && c5.squares_map_is_sd && c5.sqrt_minus1_generates);
        for q in [9, 13] {
            let c = f5_characterizations(&fq(q)).unwrap();
            assert!(c.all_agree_with(false), "q = {q}: {c:?}");
        }
        assert!(f5_characterizations(&fq(8)).is_err());
    }

    #[test]
    fn root_of_unity_examples() {
        let r = root_of_unity_equivalences(3, &fq(4)).unwrap();
        assert!(r.non_injective && r.has_mth_root && r.has_m_prime_th_root && r.contains_fpo == Some(true));
        let r = root_of_unity_equivalences(3, &fq(8)).unwrap();
        assert!(!r.non_injective && !r.has_mth_root && !r.has_m_prime_th_root && r.contains_fpo == Some(false));
        let r = root_of_unity_equivalences(5, &make_field(3, 4).unwrap()).unwrap();
        assert!(r.non_injective && r.contains_fpo == Some(true) && r.consistent);
        // m = p^a: Frobenius powers are injective, the degenerate record.
        let r = root_of_unity_equivalences(9, &fq(27)).unwrap();
        assert_eq!((r.m_prime, r.non_injective, r.contains_fpo, r.consistent), (1, false, None, true));
        assert!(root_of_unity_equivalences(1, &fq(27)).is_err());
    }
}
