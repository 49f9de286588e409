//! Exact arithmetic in GF(p^k).
//!
//! Elements are stored as their index in the canonical enumeration order: the
//! coefficient vector `(c_0, ..., c_{k-1})` of the element (as a polynomial in
//! the root of the modulus) read as the base-`p` integer `c_0 + c_1 p + ...`.
//! Index 0 is zero and index 1 is one, so `Elem` doubles as the serialized form.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order we are willing to tabulate.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get full addition and multiplication tables.
const TABLE_ORDER: u32 = 256;

/// A field element, identified by its enumeration index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length k+1. Empty for prime fields.
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..q-1, g the primitive element.
    exp: Vec<u32>,
    /// log[a] for nonzero a; log[0] unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    primitive: u32,
}

/// The finite field GF(p^k). Cheap to clone.
#[derive(Clone)]
pub struct GaloisField {
    inner: Arc<Inner>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.inner.p)?;
        if self.inner.k > 1 {
            write!(f, "^{}", self.inner.k)?;
        }
        write!(f, ")")
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for GaloisField {}

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

fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Dense polynomials over GF(p), low degree first. Only used while building a field.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let sub = (lead as u64 * c as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
    pub fn monic_from_code(code: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut c = code;
        let mut out = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            out.push((c % p as u64) as u32);
            c /= p as u64;
        }
        out.push(1);
        out
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        for fd in 1..=deg / 2 {
            let count = (p as u64).pow(fd);
            for code in 0..count {
                let g = monic_from_code(code, fd, p);
                if trim(rem(f, &g, p)).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl GaloisField {
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(
            Error::FieldTooLarge { p, k, max: MAX_FIELD_ORDER },
        )?;
        let q = q as u32;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            // Candidates ordered by (c_0, c_1, ..., c_{k-1}) with c_0 most significant.
            let count = (p as u64).pow(k);
            (0..count)
                .map(|code| {
                    let mut digits = Vec::with_capacity(k as usize + 1);
                    let mut c = code;
                    for _ in 0..k {
                        digits.push((c % p as u64) as u32);
                        c /= p as u64;
                    }
                    digits.reverse();
                    digits.push(1);
                    digits
                })
                .find(|f| prime_poly::is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        Ok(Self::with_modulus(p, k, q, modulus))
    }

    /// Parses `"7"`, `"2^3"` or `"GF(9)"`-style strings (`p^k` or a prime power).
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim().trim_start_matches("GF(").trim_end_matches(')');
        let bad = || Error::InvalidParameter(format!("cannot parse field spec {spec:?}"));
        if let Some((p, k)) = s.split_once('^') {
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            return Self::new(p, k);
        }
        let q: u64 = s.parse().map_err(|_| bad())?;
        if q < 2 {
            return Err(bad());
        }
        let p = prime_factors(q)[0];
        let mut k = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrime(q));
        }
        Self::new(p as u32, k)
    }

    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let slow_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let pa = digits(a, p, k);
            let pb = digits(b, p, k);
            let prod = prime_poly::rem(&prime_poly::mul(&pa, &pb, p), &modulus, p);
            undigits(&prod, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut base = a;
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&a| factors.iter().all(|&r| slow_pow(a, order / r) != 1))
            .unwrap_or(1);

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, primitive);
        }
        let neg = (0..q)
            .map(|a| {
                let d = digits(a, p, k);
                undigits(&d.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)
            })
            .collect::<Vec<_>>();

        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            neg,
            add_table: None,
            mul_table: None,
            primitive,
        };
        if q <= TABLE_ORDER {
            let n = q as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = slow_add(&inner, a, b);
                    mul[a as usize * n + b as usize] = fast_mul(&inner, a, b);
                }
            }
            inner.add_table = Some(add);
            inner.mul_table = Some(mul);
        }
        GaloisField { inner: Arc::new(inner) }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    /// Monic modulus coefficients, low degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.inner.k == 1 {
            None
        } else {
            Some(&self.inner.modulus)
        }
    }

    /// Coefficient vector of `a` over GF(p), little-endian in the modulus root.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.inner.p, self.inner.k)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.inner.k as usize || coeffs.iter().any(|&c| c >= self.inner.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector {coeffs:?} is not an element of {self:?}"
            )));
        }
        Ok(Elem(undigits(coeffs, self.inner.p)))
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.inner.q {
            Ok(Elem(index))
        } else {
            Err(Error::InvalidParameter(format!("element index {index} out of range for {self:?}")))
        }
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.inner.q).map(Elem)
    }

    /// The first element in enumeration order generating the multiplicative group.
    /// For GF(2) this is 1.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.inner.primitive)
    }

    /// The image of an integer under Z -> GF(p^k).
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if let Some(t) = &inner.add_table {
            return Elem(t[a.0 as usize * inner.q as usize + b.0 as usize]);
        }
        Elem(slow_add(inner, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if let Some(t) = &inner.mul_table {
            return Elem(t[a.0 as usize * inner.q as usize + b.0 as usize]);
        }
        Elem(fast_mul(inner, a.0, b.0))
    }

    /// `a + b * c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Ok(Elem(inner.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = (self.inner.q - 1) as u64;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == Elem::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.mul_add(acc, x, y))
    }

    /// Human-readable form: an integer for prime fields, a polynomial in `x` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.inner.k == 1 {
            return a.0.to_string();
        }
        let c = self.coefficients(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                match i {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(a % p);
        a /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_add(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p;
    if inner.k == 1 {
        let s = a + b;
        return if s >= p { s - p } else { s };
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..inner.k {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn fast_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        return 0;
    }
    if inner.k == 1 {
        return (a as u64 * b as u64 % inner.p as u64) as u32;
    }
    let order = inner.q - 1;
    let s = inner.log[a as usize] + inner.log[b as usize];
    inner.exp[(s % order) as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<GaloisField> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)]
            .iter()
            .map(|&(p, k)| GaloisField::new(p, k).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_gf7() {
        let f = GaloisField::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert!(f.modulus().is_none());
        assert_eq!(f.elements().map(|e| e.0).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(f.inv(Elem(3)).unwrap(), Elem(5));
    }

    #[test]
    fn gf4_modulus_and_root_square() {
        let f = GaloisField::new(2, 2).unwrap();
        // x^2 + x + 1, low degree first.
        assert_eq!(f.modulus().unwrap(), &[1, 1, 1]);
        let x = f.from_coefficients(&[0, 1]).unwrap();
        let x_plus_1 = f.from_coefficients(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x_plus_1);
        assert_eq!(f.elements().map(|e| f.format(e)).collect::<Vec<_>>(), ["0", "1", "x", "x+1"]);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(matches!(GaloisField::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(GaloisField::new(2, 40), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // Over GF(3), x^2 + 1 (c0 = 1, c1 = 0) is irreducible and no candidate with c0 = 0 is.
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus().unwrap(), &[1, 0, 1]);
        // Over GF(2), degree 3: x^3 + x^2 + 1 precedes x^3 + x + 1 when c1 is compared before c2.
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus().unwrap(), &[1, 0, 1, 1]);
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(GaloisField::new(7, 1).unwrap().primitive_element(), Elem(3));
        assert_eq!(GaloisField::new(5, 1).unwrap().primitive_element(), Elem(2));
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.format(f4.primitive_element()), "x");
        assert_eq!(GaloisField::new(2, 1).unwrap().primitive_element(), Elem::ONE);
    }

    #[test]
    fn primitive_generates_group() {
        for f in fields() {
            let g = f.primitive_element();
            let mut seen: Vec<Elem> = (0..f.order() - 1).map(|i| f.pow(g, i as u64)).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len() as u32, f.order() - 1, "{f:?}");
        }
    }

    #[test]
    fn int_embedding() {
        assert_eq!(GaloisField::new(3, 1).unwrap().from_int(3), Elem::ZERO);
        assert_eq!(GaloisField::new(7, 1).unwrap().from_int(-1), Elem(6));
        let f9 = GaloisField::new(3, 2).unwrap();
        assert_eq!(f9.from_int(5), Elem(2));
        for d in 1..20 {
            assert_eq!(GaloisField::new(5, 1).unwrap().from_int(d).is_zero(), d % 5 == 0);
        }
    }

    #[test]
    fn division_by_zero() {
        let f = GaloisField::new(5, 1).unwrap();
        assert!(matches!(f.inv(Elem::ZERO), Err(Error::DivisionByZero)));
        assert!(f.div(Elem(1), Elem::ZERO).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields().into_iter().filter(|f| f.order() <= 16) {
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(f.inv(a).unwrap(), a), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn untabulated_field_agrees_with_axioms() {
        // 3^6 = 729 exceeds the table threshold, exercising the log/digit paths.
        let f = GaloisField::new(3, 6).unwrap();
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(g).unwrap(), 728);
        for a in (1..729).step_by(37).map(Elem) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            let b = Elem((a.0 * 7 + 3) % 729);
            assert_eq!(f.sub(f.add(a, b), b), a);
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!(GaloisField::parse("7").unwrap().order(), 7);
        assert_eq!(GaloisField::parse("2^3").unwrap().order(), 8);
        assert_eq!(GaloisField::parse("9").unwrap().degree(), 2);
        assert!(GaloisField::parse("6").is_err());
        assert!(GaloisField::parse("abc").is_err());
    }
}
