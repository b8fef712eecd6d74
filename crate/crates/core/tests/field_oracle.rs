//! Field arithmetic against a slow, independent polynomial implementation.
//!
//! The oracle finds irreducible polynomials with Rabin's test (gcd-based) rather than
//! trial division, and multiplies by schoolbook polynomial products.

use irred_core::ffield::{Field, FieldElem};
use proptest::prelude::*;

const SMALL_FIELDS: [(u32, u32); 14] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (5, 1),
    (5, 2),
    (7, 1),
    (7, 2),
    (13, 1),
];

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("unit")
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let mut a = trim(a.to_vec());
    let lead_inv = inv_mod_p(*m.last().unwrap(), p);
    while a.len() >= m.len() {
        let shift = a.len() - m.len();
        let c = a.last().unwrap() * lead_inv % p;
        for (i, &x) in m.iter().enumerate() {
            a[i + shift] = (a[i + shift] + p * p - c * x % p) % p;
        }
        a = trim(a);
    }
    a
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
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

/// Rabin: `m` of degree `f` is irreducible iff `x^(p^f) = x mod m` and
/// `gcd(x^(p^(f/r)) - x, m) = 1` for each prime `r | f`.
fn rabin_irreducible(m: &[u32], p: u32) -> bool {
    let f = m.len() as u32 - 1;
    let x = rem(&[0, 1], m, p);
    let frob = |k: u32| pow_mod(&x, (p as u64).pow(k), m, p);
    if sub(&frob(f), &x, p) != Vec::<u32>::new() {
        return false;
    }
    prime_divisors(f)
        .into_iter()
        .all(|r| gcd(&sub(&frob(f / r), &x, p), m, p).len() == 1)
}

fn unpack(v: u32, p: u32, f: u32) -> Vec<u32> {
    let mut v = v;
    (0..f)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

struct Oracle {
    p: u32,
    f: u32,
    m: Vec<u32>,
}

impl Oracle {
    fn new(p: u32, f: u32) -> Self {
        let q = p.pow(f);
        let m = (0..q)
            .map(|low| {
                let mut m = unpack(low, p, f);
                m.push(1);
                m
            })
            .find(|m| rabin_irreducible(m, p))
            .expect("irreducible exists");
        Oracle { p, f, m }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let c = rem(
            &mul(
                &trim(unpack(a, self.p, self.f)),
                &trim(unpack(b, self.p, self.f)),
                self.p,
            ),
            &self.m,
            self.p,
        );
        pack(&c, self.p)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (unpack(a, self.p, self.f), unpack(b, self.p, self.f));
        pack(
            &x.iter()
                .zip(&y)
                .map(|(s, t)| (s + t) % self.p)
                .collect::<Vec<_>>(),
            self.p,
        )
    }

    fn order(&self, a: u32) -> u32 {
        let mut k = 1;
        let mut y = a;
        while y != 1 {
            y = self.mul(y, a);
            k += 1;
        }
        k
    }
}

#[test]
fn modulus_and_generator_match_oracle() {
    for (p, f) in SMALL_FIELDS {
        let field = Field::new(p, f).unwrap();
        let o = Oracle::new(p, f);
        let q = p.pow(f);
        if f > 1 {
            assert_eq!(field.modulus(), &o.m[..], "modulus of F_{q}");
        }
        let gen = (1..q).find(|&a| o.order(a) == q - 1).unwrap();
        assert_eq!(field.generator().0, gen, "generator of F_{q}");
    }
}

#[test]
fn full_multiplication_tables_small() {
    for (p, f) in [(2, 3), (3, 2), (2, 4), (5, 2)] {
        let field = Field::new(p, f).unwrap();
        let o = Oracle::new(p, f);
        let q = p.pow(f);
        for a in 0..q {
            for b in 0..q {
                assert_eq!(
                    field.mul(FieldElem(a), FieldElem(b)).0,
                    o.mul(a, b),
                    "{a}*{b} in F_{q}"
                );
                assert_eq!(
                    field.add(FieldElem(a), FieldElem(b)).0,
                    o.add(a, b),
                    "{a}+{b} in F_{q}"
                );
            }
        }
    }
}

fn field_and_pair() -> impl Strategy<Value = (u32, u32, u32, u32)> {
    prop::sample::select(SMALL_FIELDS.to_vec()).prop_flat_map(|(p, f)| {
        let q = p.pow(f);
        (Just(p), Just(f), 0..q, 0..q)
    })
}

proptest! {
    #[test]
    fn arithmetic_matches_oracle((p, f, a, b) in field_and_pair()) {
        let field = Field::new(p, f).unwrap();
        let o = Oracle::new(p, f);
        let (x, y) = (FieldElem(a), FieldElem(b));
        prop_assert_eq!(field.mul(x, y).0, o.mul(a, b));
        prop_assert_eq!(field.add(x, y).0, o.add(a, b));
        prop_assert_eq!(field.add(field.sub(x, y), y), x);
        if b != 0 {
            let inv = field.inv(y).unwrap();
            prop_assert_eq!(o.mul(b, inv.0), 1);
            prop_assert_eq!(field.mul(field.div(x, y).unwrap(), y), x);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism((p, f, a, b) in field_and_pair(), r in 0u32..8) {
        let field = Field::new(p, f).unwrap();
        let (x, y) = (FieldElem(a), FieldElem(b));
        let fr = |z| field.frobenius(z, r);
        prop_assert_eq!(fr(field.mul(x, y)), field.mul(fr(x), fr(y)));
        prop_assert_eq!(fr(field.add(x, y)), field.add(fr(x), fr(y)));
        prop_assert_eq!(field.frobenius(x, f), x);
        // x^(p^r) computed by repeated multiplication
        let mut slow = x;
        for _ in 0..r % f {
            slow = field.pow(slow, p as i64).unwrap();
        }
        prop_assert_eq!(fr(x), slow);
    }

    #[test]
    fn pow_respects_exponent_laws((p, f, a, _b) in field_and_pair(), e1 in -40i64..40, e2 in -40i64..40) {
        prop_assume!(a != 0);
        let field = Field::new(p, f).unwrap();
        let x = FieldElem(a);
        let lhs = field.pow(x, e1 + e2).unwrap();
        let rhs = field.mul(field.pow(x, e1).unwrap(), field.pow(x, e2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn subfield_lattice() {
    for (p, f) in [(2, 6), (3, 4), (2, 4), (5, 2)] {
        let field = Field::new(p, f).unwrap();
        let q = p.pow(f);
        for m in 1..=f {
            if f % m != 0 {
                assert!(field.subfield_primitive(m).is_err());
                continue;
            }
            let z = field.subfield_primitive(m).unwrap();
            assert_eq!(field.element_degree(z), m);
            assert_eq!(field.mult_order(z).unwrap(), (p as u64).pow(m) - 1);
            // elements of degree dividing m are exactly the fixed points of x -> x^(p^m)
            let fixed = (0..q)
                .filter(|&a| field.frobenius(FieldElem(a), m) == FieldElem(a))
                .count();
            assert_eq!(fixed as u32, p.pow(m));
            let by_degree = (0..q)
                .filter(|&a| m % field.element_degree(FieldElem(a)) == 0)
                .count();
            assert_eq!(by_degree, fixed);
        }
    }
}
