//! Arithmetic in GF(p^m), built as F_p[x]/(modulus) with ζ the class of x.
//!
//! Elements are canonical little-endian digit vectors in the basis
//! 1, ζ, ..., ζ^(m-1). The context owns the modulus and performs all
//! arithmetic; elements carry no reference back to it.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Full enumeration of a field is refused above this many elements.
pub const DEFAULT_FIELD_GUARD: u64 = 1 << 24;

pub type Digits = SmallVec<[u64; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    digits: Digits,
}

impl FieldElement {
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.digits.as_slice())
    }
}

struct Inner {
    p: u64,
    m: usize,
    /// Monic, little-endian, length m + 1.
    modulus: Vec<u64>,
    q: BigUint,
    q_u64: Option<u64>,
}

/// Immutable description of GF(p^m). Cloning is cheap.
#[derive(Clone)]
pub struct FieldContext {
    inner: Arc<Inner>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Builds GF(p^m) with the first irreducible monic modulus in counter order
/// (lower coefficients read as a base-p number, constant term least
/// significant). For m = 1 the modulus is x.
pub fn make_field(p: u64, m: usize) -> Result<FieldContext> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidParams("extension degree must be at least 1".into()));
    }
    let mut lower = vec![0u64; m];
    loop {
        let mut candidate = lower.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return FieldContext::from_parts(p, candidate);
        }
        if !increment_counter(&mut lower, p) {
            return Err(Error::Internal(format!(
                "no irreducible polynomial of degree {m} over Z_{p}"
            )));
        }
    }
}

/// All q elements in counter order.
pub fn enumerate_field(ctx: &FieldContext) -> Result<Vec<FieldElement>> {
    ctx.enumerate(DEFAULT_FIELD_GUARD)
}

impl FieldContext {
    /// Accepts an explicit modulus (little-endian, monic) after checking
    /// that it is irreducible.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<FieldContext> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidParams("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParams(format!("modulus coefficient not reduced mod {p}")));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidParams(format!("modulus {modulus:?} is reducible over Z_{p}")));
        }
        Self::from_parts(p, modulus.to_vec())
    }

    fn from_parts(p: u64, modulus: Vec<u64>) -> Result<FieldContext> {
        let m = modulus.len() - 1;
        let q = BigUint::from(p).pow(m as u32);
        let q_u64 = q.to_u64();
        Ok(FieldContext {
            inner: Arc::new(Inner { p, m, modulus, q, q_u64 }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.q
    }

    /// q, when it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.inner.q_u64
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { digits: SmallVec::from_elem(0, self.inner.m) }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// The generator ζ of the extension (equals the integer 0 when m = 1).
    pub fn zeta(&self) -> FieldElement {
        let mut e = self.zero();
        if self.inner.m > 1 {
            e.digits[1] = 1;
        }
        e
    }

    /// The prime-field element c mod p.
    pub fn constant(&self, c: u64) -> FieldElement {
        let mut e = self.zero();
        e.digits[0] = c % self.inner.p;
        e
    }

    /// Validates a digit vector. Shorter vectors are zero-padded.
    pub fn element(&self, digits: &[u64]) -> Result<FieldElement> {
        if digits.len() > self.inner.m {
            return Err(Error::InvalidElement(format!(
                "{} digits for a degree-{} field",
                digits.len(),
                self.inner.m
            )));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.inner.p) {
            return Err(Error::InvalidElement(format!("digit {d} not below p = {}", self.inner.p)));
        }
        let mut e = self.zero();
        e.digits[..digits.len()].copy_from_slice(digits);
        Ok(e)
    }

    /// Element whose digit vector is `index` written in base p.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = self.inner.p;
        let mut e = self.zero();
        for d in e.digits.iter_mut() {
            *d = index % p;
            index /= p;
        }
        e
    }

    /// Position of `a` in counter order. Panics if q does not fit in u64.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let _ = self.order_u64().expect("field too large to index");
        let p = self.inner.p;
        a.digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    pub fn enumerate(&self, guard: u64) -> Result<Vec<FieldElement>> {
        match self.order_u64() {
            Some(q) if q <= guard => Ok((0..q).map(|i| self.from_index(i)).collect()),
            _ => Err(Error::TooLarge { q: self.inner.q.to_string(), guard }),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        let digits = a
            .digits
            .iter()
            .zip(&b.digits)
            .map(|(&x, &y)| add_mod(x, y, p))
            .collect();
        FieldElement { digits }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.inner.p;
        let digits = a
            .digits
            .iter()
            .zip(&b.digits)
            .map(|(&x, &y)| add_mod(x, p - y % p, p))
            .collect();
        FieldElement { digits }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn add_assign(&self, acc: &mut FieldElement, b: &FieldElement) {
        let p = self.inner.p;
        for (x, &y) in acc.digits.iter_mut().zip(&b.digits) {
            *x = add_mod(*x, y, p);
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.inner.m;
        let p = self.inner.p;
        if m == 1 {
            return FieldElement { digits: SmallVec::from_elem(mul_mod(a.digits[0], b.digits[0], p), 1) };
        }
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * m - 1);
        for (i, &x) in a.digits.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.digits.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        let modulus = &self.inner.modulus;
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // x^m = -(modulus[0] + ... + modulus[m-1] x^(m-1))
            for j in 0..m {
                let t = mul_mod(c, modulus[j], p);
                let slot = top - m + j;
                prod[slot] = add_mod(prod[slot], p - t % p, p);
            }
            prod[top] = 0;
        }
        FieldElement { digits: prod[..m].iter().copied().collect() }
    }

    /// a^e by square-and-multiply; 0^0 = 1.
    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn pow_big(&self, a: &FieldElement, e: &BigUint) -> FieldElement {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let exp = &self.inner.q - BigUint::from(2u32);
        Some(self.pow_big(a, &exp))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.digits.len() == self.inner.m && a.digits.iter().all(|&d| d < self.inner.p)
    }
}

/// a^e in GF(p^m); free-function form of [`FieldContext::pow`].
pub fn fe_pow(ctx: &FieldContext, a: &FieldElement, e: u64) -> FieldElement {
    ctx.pow(a, e)
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Increments a base-p counter (index 0 least significant). Returns false on wrap.
pub(crate) fn increment_counter(digits: &mut [u64], base: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &s in &SMALL {
        if n % s == 0 {
            return n == s;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Dense polynomials over Z_p, little-endian, trailing zeros trimmed.
mod poly {
    use super::{add_mod, mul_mod, pow_mod};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = pow_mod(f[df], p - 2, p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = mul_mod(r[top], lead_inv, p);
            for j in 0..=df {
                let slot = top - df + j;
                r[slot] = add_mod(r[slot], p - mul_mod(c, f[j], p), p);
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        rem(&prod, f, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = rem(&[1], f, p);
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                add_mod(x, (p - y % p) % p, p)
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Rabin's test: f of degree m is irreducible over Z_p iff x^(p^m) = x mod f
/// and gcd(x^(p^(m/l)) - x, f) = 1 for every prime l dividing m.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![poly::rem(&x, f, p)];
    for i in 1..=m {
        let next = poly::powmod(&frob[i - 1], p, f, p);
        frob.push(next);
    }
    if poly::sub(&frob[m], &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for l in prime_divisors(m) {
        let h = poly::sub(&frob[m / l], &x, p);
        let g = poly::gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
