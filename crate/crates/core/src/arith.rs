//! Small machine-integer number theory shared by the field and classification code.

/// Deterministic trial-division primality test. Intended for `n < 2^31`.
pub fn is_prime(n: u64) -> bool {
    smallest_factor(n) == Some(n)
}

/// Smallest prime factor of `n`, or `None` for `n < 2`.
pub fn smallest_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 2;
    }
    Some(n)
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while let Some(f) = smallest_factor(n) {
        out.push(f);
        while n.is_multiple_of(f) {
            n /= f;
        }
    }
    out
}

/// Writes `q = p^ell` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = smallest_factor(q)?;
    let mut rest = q;
    let mut ell = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        ell += 1;
    }
    (rest == 1).then_some((p, ell))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`, `m >= 1`).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut n = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        n += 1;
    }
    n
}

/// `p^k` with overflow checking.
pub fn checked_pow(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// Splits `m = p^a * m'` with `p` not dividing `m'`.
pub fn split_p_part(mut m: u64, p: u64) -> (u32, u64) {
    let mut a = 0;
    while m.is_multiple_of(p) {
        m /= p;
        a += 1;
    }
    (a, m)
}

/// Whether `k` is `p^j` for some `j >= 0`.
pub fn is_power_of(k: u64, p: u64) -> bool {
    k >= 1 && split_p_part(k, p).1 == 1
}

/// All prime powers `q` with `lo <= q <= hi`, ascending.
pub fn prime_powers_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| prime_power(q).is_some()).collect()
}
