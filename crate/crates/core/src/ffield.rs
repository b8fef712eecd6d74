//! Exact arithmetic in `F_{p^f}`.
//!
//! Elements are coefficient vectors over `Z_p` with respect to the power basis
//! `1, x, ..., x^{f-1}` of `Z_p[x]/(m(x))`. A vector is packed into a `u32` as
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`; the integer order of that packing is the
//! fixed element order used everywhere else (canonical forms, tie-breaking).
//!
//! The modulus is the least monic irreducible polynomial of degree `f` in that same
//! packed order, and the cached generator is the least element of full
//! multiplicative order. Both choices are deterministic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on `p^f`.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// An element of a finite field, packed as its base-`p` coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field `F_{p^f}` with log/antilog tables.
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus, low degree first, length `f + 1`.
    modulus: Vec<u32>,
    generator: FieldElem,
    /// `exp[i] = g^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    /// Addition table for small odd characteristic, `q * q` entries.
    add_table: Option<Vec<u32>>,
}

/// Shared handle; fields are immutable once built.
pub type FieldHandle = Arc<Field>;

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

// --- dense polynomial helpers over Z_p (low degree first, trailing zeros trimmed) ---

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - (c as u64 * mi as u64 % p as u64) as u32) % p;
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
    let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small; Fermat.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn unpack(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = unpack(low as u32, p, d);
            div.push(1);
            if poly_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn poly_pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut base = poly_rem(base, m, p);
    let mut acc = vec![1u32];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), m, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

/// Least monic polynomial of degree `r` over `Z_p` (packed order) whose root `x`
/// generates the multiplicative group of `Z_p[x]/(m)`. Low degree first.
pub fn least_primitive_polynomial(p: u32, r: u32) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if r == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let count = (p as u64)
        .checked_pow(r)
        .filter(|&c| c <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidParameter("degree too large".into()))?;
    let order = count - 1;
    let mut primes = factorize(order);
    primes.dedup();
    for low in 0..count as u32 {
        let mut m = unpack(low, p, r as usize);
        m.push(1);
        if m[0] == 0 || !is_irreducible(&m, p) {
            continue;
        }
        let x = [0u32, 1];
        let is_one = |v: Vec<u32>| v == [1];
        if is_one(poly_pow_mod(&x, order, &m, p))
            && primes
                .iter()
                .all(|&d| !is_one(poly_pow_mod(&x, order / d, &m, p)))
        {
            return Ok(m);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Coefficients of `x^k mod m`, padded to `deg m`.
pub fn power_of_x_mod(k: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut v = poly_pow_mod(&[0, 1], k, m, p);
    v.resize(m.len() - 1, 0);
    v
}

impl Field {
    /// Builds `F_{p^f}` under the default size cap.
    pub fn new(p: u32, f: u32) -> Result<FieldHandle> {
        Self::with_cap(p, f, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, f: u32, cap: u64) -> Result<FieldHandle> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if f == 0 {
            return Err(Error::InvalidParameter(
                "field degree must be positive".into(),
            ));
        }
        let q = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
        if q > cap || q > u32::MAX as u64 {
            return Err(Error::FieldTooLarge { p, f, cap });
        }
        let q = q as u32;
        let fu = f as usize;

        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for low in 0..q {
                let mut m = unpack(low, p, fu);
                m.push(1);
                if m[0] != 0 && is_irreducible(&m, p) {
                    found = Some(m);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        // Generator search uses slow polynomial arithmetic; the tables come after.
        let order = q - 1;
        let prime_divs: Vec<u64> = {
            let mut v = factorize(order as u64);
            v.dedup();
            v
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut base = unpack(a, p, fu);
            trim(&mut base);
            let mut acc = vec![1u32];
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_rem(&poly_mul(&acc, &base, p), &modulus, p);
                }
                base = poly_rem(&poly_mul(&base, &base, p), &modulus, p);
                e >>= 1;
            }
            acc.resize(fu, 0);
            pack(&acc, p)
        };
        let generator = if q == 2 {
            1
        } else {
            (1..q)
                .find(|&a| {
                    slow_pow(a, order as u64) == 1
                        && prime_divs
                            .iter()
                            .all(|&r| slow_pow(a, order as u64 / r) != 1)
                })
                .expect("multiplicative group is cyclic")
        };

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let g_poly = {
            let mut v = unpack(generator, p, fu);
            trim(&mut v);
            v
        };
        let mut cur = vec![1u32];
        for i in 0..order {
            let mut c = cur.clone();
            c.resize(fu, 0);
            let packed = pack(&c, p);
            exp.push(packed);
            log[packed as usize] = i;
            cur = poly_rem(&poly_mul(&cur, &g_poly, p), &modulus, p);
        }

        let add_table = if p != 2 && q <= 256 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let ca = unpack(a, p, fu);
                for b in 0..q {
                    let cb = unpack(b, p, fu);
                    let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = pack(&s, p);
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(Arc::new(Field {
            p,
            f,
            q,
            modulus,
            generator: FieldElem(generator),
            exp,
            log,
            add_table,
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Field order `p^f`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        unpack(a.0, self.p, self.f as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElem> {
        if c.len() != self.f as usize || c.iter().any(|&d| d >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector {c:?} is not over F_{}^{}",
                self.p, self.f
            )));
        }
        Ok(FieldElem(pack(c, self.p)))
    }

    pub fn elem(&self, raw: u32) -> Result<FieldElem> {
        if raw >= self.q {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElem(raw))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return FieldElem(t[(a.0 * self.q + b.0) as usize]);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.f {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.f {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nonzero(a))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElem) -> FieldElem {
        debug_assert!(a.0 != 0);
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        FieldElem(self.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a possibly negative exponent (negative requires `a != 0`).
    pub fn pow(&self, a: FieldElem, e: i64) -> Result<FieldElem> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::ZeroInverse),
                std::cmp::Ordering::Equal => Ok(FieldElem::ONE),
                std::cmp::Ordering::Greater => Ok(FieldElem::ZERO),
            };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let idx = ((l as i128 * e as i128).rem_euclid(n as i128)) as usize;
        Ok(FieldElem(self.exp[idx]))
    }

    /// Discrete log base the cached generator.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `g^k` for the cached generator `g`.
    pub fn gen_pow(&self, k: u64) -> FieldElem {
        FieldElem(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// `a^{p^r}`.
    #[inline]
    pub fn frobenius(&self, a: FieldElem, r: u32) -> FieldElem {
        if a.0 == 0 || self.f == 1 {
            return a;
        }
        let r = r % self.f;
        if r == 0 {
            return a;
        }
        let n = (self.q - 1) as u64;
        let pr = (self.p as u64).pow(r) % n;
        let l = self.log[a.0 as usize] as u64;
        FieldElem(self.exp[(l * pr % n) as usize])
    }

    pub fn mult_order(&self, a: FieldElem) -> Result<u64> {
        let l = self.log(a).ok_or(Error::ZeroInverse)? as u64;
        let n = self.q as u64 - 1;
        Ok(n / num_integer::gcd(l, n))
    }

    /// A generator of the multiplicative group of the subfield of order `p^m`.
    pub fn subfield_primitive(&self, m: u32) -> Result<FieldElem> {
        if m == 0 || !self.f.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, f: self.f });
        }
        let sub = (self.p as u64).pow(m) - 1;
        Ok(self.gen_pow((self.q as u64 - 1) / sub))
    }

    /// Least `m | f` with `a^{p^m} = a`; the degree of the smallest subfield containing `a`.
    pub fn element_degree(&self, a: FieldElem) -> u32 {
        divisors(self.f)
            .into_iter()
            .find(|&m| self.frobenius(a, m) == a)
            .unwrap_or(self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_of_order_two() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.generator(), FieldElem::ONE);
    }

    #[test]
    fn f4_modulus_and_frobenius() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = f.generator();
        assert_eq!(f.frobenius(g, 1), f.mul(g, g));
        assert_eq!(f.frobenius(g, 1), f.add(g, FieldElem::ONE));
    }

    #[test]
    fn f16_generator_has_order_15() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.q(), 16);
        // exhaustive powering
        let g = f.generator();
        let mut acc = FieldElem::ONE;
        let mut order = 0;
        for k in 1..=15 {
            acc = f.mul(acc, g);
            if acc == FieldElem::ONE {
                order = k;
                break;
            }
        }
        assert_eq!(order, 15);
    }

    #[test]
    fn arithmetic_edge_cases() {
        let f = Field::new(2, 4).unwrap();
        for a in f.elements() {
            assert!(f.add(a, a).is_zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            }
        }
        assert!(matches!(f.inv(FieldElem::ZERO), Err(Error::ZeroInverse)));
        let g5 = f.pow(f.generator(), 5).unwrap();
        assert_eq!(f.mult_order(g5).unwrap(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(
            Field::new(2, 21),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(Field::with_cap(3, 3, 26).is_err());
        let f = Field::new(2, 4).unwrap();
        assert!(matches!(
            f.subfield_primitive(3),
            Err(Error::NotADivisor { .. })
        ));
        assert!(f.elem(16).is_err());
    }

    #[test]
    fn frobenius_identities() {
        let f = Field::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, f.f()), a);
        }
    }

    #[test]
    fn subfield_primitive_in_f16() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.subfield_primitive(4).unwrap(), f.generator());
        let z = f.subfield_primitive(2).unwrap();
        assert_eq!(z, f.pow(f.generator(), 5).unwrap());
        assert_eq!(f.mult_order(z).unwrap(), 3);
        assert_eq!(f.frobenius(z, 2), z);
        assert_ne!(f.frobenius(z, 1), z);
        assert_eq!(f.subfield_primitive(1).unwrap(), FieldElem::ONE);
    }

    #[test]
    fn element_degrees() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(f.element_degree(FieldElem::ONE), 1);
        assert_eq!(f.element_degree(f.generator()), 4);
        assert_eq!(f.element_degree(f.pow(f.generator(), 5).unwrap()), 2);
    }

    #[test]
    fn f9_uses_least_irreducible() {
        let f = Field::new(3, 2).unwrap();
        // x^2 + 1 is the least monic irreducible quadratic over F_3
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.mult_order(f.generator()).unwrap(), 8);
        // least element of order 8 is x + 1
        assert_eq!(f.coeffs(f.generator()), vec![1, 1]);
    }

    #[test]
    fn factorization_helpers() {
        assert_eq!(factorize(12), vec![2, 2, 3]);
        assert_eq!(factorize(1), Vec::<u64>::new());
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
    }
}
