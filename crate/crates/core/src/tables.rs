//! Log / antilog / Zech-logarithm tables for fast arithmetic on canonical indices.
//!
//! Elements are `u32` canonical indices (see [`crate::field`]). With a
//! primitive element `θ`, a nonzero element is `θ^i`; multiplication adds
//! logs and addition uses `θ^i + θ^j = θ^i (1 + θ^{j-i})` with the Zech
//! table `zech[d] = log(1 + θ^d)`.

use crate::field::{FieldElement, FieldSpec};

const NONE: u32 = u32::MAX;

/// Largest field order the tables are built for.
pub const MAX_TABLE_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct GfTables {
    field: FieldSpec,
    order: u32,
    /// `exp[i]` = index of `θ^i`, `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[idx]` for nonzero indices; `log[0]` is unused.
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
    one: u32,
}

impl GfTables {
    pub fn new(field: &FieldSpec) -> GfTables {
        let q = field.q();
        assert!(q <= MAX_TABLE_ORDER, "{field} is too large for log tables");
        let n = (q - 1) as usize;
        let theta = field.primitive_element();
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![NONE; q as usize];
        let mut cur = field.one();
        for i in 0..n {
            let idx = cur.index() as u32;
            exp.push(idx);
            log[idx as usize] = i as u32;
            cur = cur.mul(&theta).expect("same field");
        }
        let one_elem = field.one();
        let zech = exp
            .iter()
            .map(|&idx| {
                let s = field.element_at(idx as u64).add(&one_elem).expect("same field");
                if s.is_zero() {
                    NONE
                } else {
                    log[s.index() as usize]
                }
            })
            .collect();
        let neg_one_log = log[field.from_int(-1).index() as usize];
        GfTables {
            field: field.clone(),
            order: q as u32,
            exp,
            log,
            zech,
            neg_one_log,
            one: one_elem.index() as u32,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    fn n(&self) -> u32 {
        self.order - 1
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        self.one
    }

    /// Index of the primitive element used by the tables.
    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    /// `θ^i` as an index.
    #[inline]
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % self.n() as u64) as usize]
    }

    /// Discrete log of a nonzero index.
    #[inline]
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    #[inline]
    fn add_logs(&self, i: u32, j: u32) -> u32 {
        let s = i + j;
        if s >= self.n() {
            s - self.n()
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.add_logs(self.log[a as usize], self.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.n() - l) % self.n()) as usize])
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return self.one;
        }
        if a == 0 {
            return 0;
        }
        let n = self.n() as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        self.exp[self.add_logs(self.log[a as usize], self.neg_one_log) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (i, j) = (self.log[a as usize], self.log[b as usize]);
        let d = if j >= i { j - i } else { j + self.n() - i };
        match self.zech[d as usize] {
            NONE => 0,
            z => self.exp[self.add_logs(i, z) as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn element(&self, a: u32) -> FieldElement {
        self.field.element_at(a as u64)
    }

    /// Canonical index of the integer `n` (image of `Z` in the prime subfield).
    pub fn int(&self, n: i64) -> u32 {
        self.field.from_int(n).index() as u32
    }

    /// Multiplicative order of a nonzero index.
    pub fn element_order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.n() as u64;
        Some(n / crate::arith::gcd(l, n))
    }
}
