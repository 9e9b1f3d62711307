//! Finite fields `F_{p^f}` with exact element arithmetic.
//!
//! Elements are dense coefficient vectors modulo a monic irreducible
//! polynomial. Every field also carries full addition/multiplication tables
//! over the integer encoding `sum c_i p^i`, which is what the counting
//! kernels use; the encoding doubles as the canonical enumeration order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest cardinality for which tables are built.
pub const MAX_TABLE_Q: u32 = 256;

/// Default cap on `p^f` accepted by [`FieldSpec::new`].
pub const DEFAULT_CARDINALITY_CAP: u32 = MAX_TABLE_Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field cardinality {p}^{f} exceeds the cap {cap}")]
    CapExceeded { p: u64, f: u32, cap: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("malformed field name `{0}` (expected GF(p) or GF(p^f))")]
    BadName(String),
    #[error("coefficient vector {0:?} is not a reduced element")]
    BadElement(Vec<u32>),
}

/// An element of `F_{p^f}`: `f` coefficients in `[0, p)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    p: u32,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "({})", format_in_t(&self.coeffs))
    }
}

/// Formats a coefficient vector as a polynomial in `t`, highest power first.
pub(crate) fn format_in_t(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

#[derive(Clone)]
struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// The finite field with `q = p^f` elements.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Tables,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.f)
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Parses `GF(p)` or `GF(p^f)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadName(s.to_string());
        let inner = s
            .trim()
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (p, f) = match inner.split_once('^') {
            Some((p, f)) => (p.trim(), f.trim()),
            None => (inner.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let f: u32 = f.parse().map_err(|_| bad())?;
        FieldSpec::new(p, f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sum of the base-`p` digits of `n`.
pub fn p_weight(mut n: u64, p: u64) -> u64 {
    assert!(p >= 2, "p_weight needs a base of at least 2");
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

// Dense polynomials over F_p, constant term first, no trailing zeros.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &mi) in m.iter().enumerate() {
            let sub = c * mi as u64 % p as u64;
            r[k + i] = ((r[k + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m` by repeated `p`-th powering.
fn frobenius_power(k: u32, m: &[u32], p: u32) -> Vec<u32> {
    let mut cur = poly_rem(&[0, 1], m, p);
    for _ in 0..k {
        let mut acc = vec![1u32];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `m` (monic, degree `f`) is irreducible over `F_p` iff
/// `x^(p^f) = x mod m` and `gcd(x^(p^(f/r)) - x, m) = 1` for every prime `r | f`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let f = m.len() as u32 - 1;
    if f == 0 {
        return false;
    }
    if f == 1 {
        return true;
    }
    let x = poly_rem(&[0, 1], m, p);
    if poly_sub(&frobenius_power(f, m, p), &x, p) != Vec::<u32>::new() {
        return false;
    }
    prime_factors(f).into_iter().all(|r| {
        let h = poly_sub(&frobenius_power(f / r, m, p), &x, p);
        poly_gcd(&h, m, p).len() == 1
    })
}

/// Lexicographically least monic irreducible of degree `f`, comparing the
/// constant-term-first coefficient lists.
fn least_irreducible(p: u32, f: u32) -> Vec<u32> {
    let f = f as usize;
    // odometer over the f low coefficients; index 0 is the most significant digit
    let mut low = vec![0u32; f];
    loop {
        let mut m = low.clone();
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
        let mut i = f;
        loop {
            // a monic irreducible of every degree exists, so this never runs off the front
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}

impl FieldSpec {
    /// Builds `F_{p^f}` with the lexicographically least modulus.
    pub fn new(p: u64, f: u32) -> Result<Self, FieldError> {
        Self::with_cap(p, f, DEFAULT_CARDINALITY_CAP)
    }

    pub fn with_cap(p: u64, f: u32, cap: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::CompositeP(p));
        }
        if f == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let cap = cap.min(MAX_TABLE_Q);
        let q = (p as u128).checked_pow(f).filter(|&q| q <= cap as u128);
        let Some(q) = q else {
            return Err(FieldError::CapExceeded { p, f, cap });
        };
        let p = p as u32;
        let modulus = if f == 1 { vec![0, 1] } else { least_irreducible(p, f) };
        let mut spec = FieldSpec {
            p,
            f,
            q: q as u32,
            modulus,
            tables: Tables {
                add: Vec::new(),
                mul: Vec::new(),
                neg: Vec::new(),
                inv: Vec::new(),
            },
        };
        spec.tables = spec.build_tables();
        Ok(spec)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let elems = self.enumerate();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = self.index_of(&self.neg_elem(&elems[a])) as u8;
            for b in 0..q {
                add[a * q + b] = self.index_of(&self.add_elem(&elems[a], &elems[b])) as u8;
                mul[a * q + b] = self.index_of(&self.mul_elem(&elems[a], &elems[b])) as u8;
            }
        }
        for a in 1..q {
            let b = (1..q).find(|&b| mul[a * q + b] == 1).expect("field has inverses");
            inv[a] = b as u8;
        }
        Tables { add, mul, neg, inv }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, length `f + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The generator `t` (equal to `0` in a prime field, where `t` is the modulus root).
    pub fn generator(&self) -> FieldElement {
        let mut c = vec![0u32; self.f as usize];
        if self.f > 1 {
            c[1] = 1;
        }
        FieldElement { p: self.p, coeffs: c }
    }

    /// The element with integer encoding `idx = sum c_i p^i`.
    pub fn element(&self, mut idx: u32) -> FieldElement {
        assert!(idx < self.q, "element index {idx} out of range for {self}");
        let coeffs = (0..self.f)
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect();
        FieldElement { p: self.p, coeffs }
    }

    pub fn from_coeffs(&self, coeffs: Vec<u32>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadElement(coeffs));
        }
        Ok(FieldElement { p: self.p, coeffs })
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.element(r)
    }

    pub fn index_of(&self, e: &FieldElement) -> u32 {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        e.p == self.p && e.coeffs.len() == self.f as usize
    }

    fn check(&self, e: &FieldElement) -> Result<(), FieldError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    /// All `q` elements, in increasing integer encoding (0 first).
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.q).map(|i| self.element(i)).collect()
    }

    fn add_elem(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { p: self.p, coeffs }
    }

    fn neg_elem(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { p: self.p, coeffs }
    }

    fn mul_elem(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let r = poly_mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p);
        let mut coeffs = r;
        coeffs.resize(self.f as usize, 0);
        FieldElement { p: self.p, coeffs }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_elem(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_elem(a, &self.neg_elem(b)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.neg_elem(a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_elem(a, b))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // a^(q-2)
        self.pow(a, self.q as u64 - 2)
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: &FieldElement, mut e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_elem(&acc, &base);
            }
            base = self.mul_elem(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    // Table-driven arithmetic on encodings.

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        self.tables.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.tables.mul[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        self.tables.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    /// Inverse of a nonzero encoding.
    pub fn inv_idx(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.tables.inv[a as usize] as u32)
        }
    }

    pub fn pow_idx(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield, as an encoding.
    pub fn int_idx(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// `sum_{x in F_q} x^alpha` by direct summation.
    pub fn power_sum(&self, alpha: u64) -> FieldElement {
        let s = (0..self.q).fold(0, |acc, x| self.add_idx(acc, self.pow_idx(x, alpha)));
        self.element(s)
    }
}
