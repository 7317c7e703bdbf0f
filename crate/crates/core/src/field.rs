//! GF(p^n) in a polynomial basis.
//!
//! An element `Σ_{i<n} c_i λ^i`, where λ is the class of `X` modulo the
//! defining polynomial, is encoded as the integer `Σ c_i p^i`. Multiplication,
//! inversion and discrete logarithms go through log/exp tables built from a
//! fixed primitive element ζ.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported field order. Tables are `O(q)`, but most measures are
/// `O(q^2)` or worse, so anything near this bound is only useful for
/// arithmetic.
pub const MAX_ORDER: u64 = 1 << 20;

/// Orders up to this size get a full `q × q` addition table.
const ADD_TABLE_MAX: u32 = 256;

/// Integer encoding of a field element, in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl core::fmt::Display for Elem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Immutable field context shared by every computation.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    zeta: Elem,
    lambda: Elem,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[i] = ζ^i` for `i < 2(q-1)`, doubled so a sum of two logs needs no reduction.
    exp: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    /// `p^i` for `i <= n`.
    radix: Vec<u32>,
}

impl Field {
    /// Builds GF(p^n). Without an explicit modulus the smallest monic
    /// irreducible polynomial (coefficients low-to-high read as a base-p
    /// integer) is used. ζ is the smallest encoding of multiplicative order
    /// `q - 1`.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, n })? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::BadModulus("degree does not match n"));
                }
                if m[n as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic"));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus("coefficient not reduced mod p"));
                }
                if !fp::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, n),
        };

        let mut radix = Vec::with_capacity(n as usize + 1);
        let mut r = 1u32;
        for _ in 0..=n {
            radix.push(r);
            r = r.wrapping_mul(p);
        }

        let mut field = Field {
            p,
            n,
            q,
            modulus,
            zeta: Elem::ONE,
            lambda: Elem::ZERO,
            log: Vec::new(),
            exp: Vec::new(),
            neg: Vec::new(),
            add: None,
            radix,
        };
        field.neg = (0..q).map(|x| field.neg_slow(x)).collect();
        if p != 2 && q <= ADD_TABLE_MAX {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add_slow(a, b);
                }
            }
            field.add = Some(add);
        }
        field.lambda = Elem(if n == 1 {
            // X mod X
            (p - field.modulus[0]) % p
        } else {
            p
        });
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let factors = prime_factors(order);
        let zeta = (1..q)
            .find(|&g| {
                self.pow_slow(g, order as u64) == 1
                    && factors
                        .iter()
                        .all(|&r| self.pow_slow(g, (order / r) as u64) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        self.zeta = Elem(zeta);

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            log[x as usize] = i;
            x = self.mul_slow(x, zeta);
        }
        for i in 0..order as usize {
            exp[order as usize + i] = exp[i];
        }
        self.exp = exp;
        self.log = log;
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic defining polynomial, coefficients low-to-high (length `n + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for logarithms.
    pub fn zeta(&self) -> Elem {
        self.zeta
    }

    /// Class of `X` modulo the defining polynomial.
    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn elem(&self, value: u32) -> Result<Elem> {
        if value < self.q {
            Ok(Elem(value))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    /// Base-p digit `i` of an encoding, i.e. the coefficient of `λ^i`.
    #[inline]
    pub fn digit(&self, a: Elem, i: u32) -> u32 {
        (a.0 / self.radix[i as usize]) % self.p
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        (0..self.n).map(|i| self.digit(a, i)).collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        Elem(
            digits
                .iter()
                .zip(&self.radix)
                .map(|(&d, &r)| (d % self.p) * r)
                .sum(),
        )
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if let Some(t) = &self.add {
            Elem(t[(a.0 * self.q + b.0) as usize])
        } else {
            Elem(self.add_slow(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.index()] + self.log[b.index()]) as usize])
    }

    /// Multiplies by an integer, i.e. by its residue in the prime field.
    pub fn scale_int(&self, k: u32, a: Elem) -> Elem {
        let k = k % self.p;
        let digits: Vec<u32> = (0..self.n).map(|i| self.digit(a, i) * k).collect();
        self.from_digits(&digits)
    }

    /// `x^{q-2}`: the inverse of a nonzero element, and 0 at 0.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = self.q - 1;
        Elem(self.exp[((order - self.log[a.index()]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        if b.is_zero() {
            None
        } else {
            Some(self.mul(a, self.inv(b)))
        }
    }

    /// Square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return a;
        }
        let order = self.q - 1;
        let l = (self.log[a.index()] as u64 * self.p as u64) % order as u64;
        Elem(self.exp[l as usize])
    }

    /// The unique `x` in `[0, q-1)` with `ζ^x = a`.
    pub fn dlog(&self, a: Elem) -> Result<u32> {
        if a.is_zero() {
            Err(Error::DlogOfZero)
        } else {
            Ok(self.log[a.index()])
        }
    }

    /// Logarithm without the zero check; callers guarantee `a != 0`.
    #[inline]
    pub(crate) fn log_unchecked(&self, a: Elem) -> u32 {
        self.log[a.index()]
    }

    /// `ζ^e` for any exponent.
    #[inline]
    pub fn exp(&self, e: u64) -> Elem {
        Elem(self.exp[(e % (self.q as u64 - 1)) as usize])
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.n as usize {
            let r = self.radix[i];
            let d = ((a / r) % self.p + (b / r) % self.p) % self.p;
            out += d * r;
        }
        out
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.n as usize {
            let r = self.radix[i];
            let d = (self.p - (a / r) % self.p) % self.p;
            out += d * r;
        }
        out
    }

    /// Polynomial multiplication modulo the defining polynomial; used only
    /// while the log tables are being built.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let da: Vec<u32> = (0..self.n).map(|i| self.digit(Elem(a), i)).collect();
        let db: Vec<u32> = (0..self.n).map(|i| self.digit(Elem(b), i)).collect();
        let prod = fp::mul_mod(&da, &db, &self.modulus, self.p);
        self.from_digits(&prod).0
    }

    fn pow_slow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    (0..count)
        .map(|m| {
            let mut coeffs = Vec::with_capacity(n as usize + 1);
            let mut m = m;
            for _ in 0..n {
                coeffs.push((m % p as u64) as u32);
                m /= p as u64;
            }
            coeffs.push(1);
            coeffs
        })
        .find(|c| fp::is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= m as u64 {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// All positive divisors in ascending order.
pub fn divisors(m: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= m as u64 {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Dense polynomials over the prime field, coefficients low-to-high.
mod fp {
    use alloc::vec;
    use alloc::vec::Vec;

    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // Fermat
        let mut base = a as u64 % p as u64;
        let mut k = p as u64 - 2;
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            k >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo the nonzero polynomial `m`.
    pub(super) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] as u64 * lead_inv % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = ((r[idx] as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, m, p)
    }

    fn pow_mod(a: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u32];
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            k >>= 1;
        }
        acc
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
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

    /// Irreducibility of a monic polynomial of degree `n >= 1`: no roots in
    /// F_p, and `gcd(f, X^{p^i} - X) = 1` for `1 <= i <= n/2`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        for x in 0..p as u64 {
            let v = f
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x + c as u64) % p as u64);
            if v == 0 {
                return false;
            }
        }
        let x = [0u32, 1];
        let mut h = rem(&x, f, p);
        for _ in 1..=n / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_default_modulus() {
        let f = Field::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.q(), 4);
        assert_eq!(f.lambda(), Elem(2));
        // λ·λ = λ + 1
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(3));
    }

    #[test]
    fn prime_field_primitive_root() {
        let f = Field::new(5, 1, None).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.zeta(), Elem(2));
        assert_eq!(f.mul(Elem(2), Elem(3)), Elem(1));
        assert_eq!(f.inv(Elem(2)), Elem(3));
    }

    #[test]
    fn f9_explicit_modulus() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let zeta = f.zeta();
        let mut x = zeta;
        let mut order = 1;
        while x != Elem::ONE {
            x = f.mul(x, zeta);
            order += 1;
        }
        assert_eq!(order, 8);
        // λ + 2λ = 0
        assert_eq!(f.add(Elem(3), Elem(6)), Elem::ZERO);
        // default modulus coincides
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0, None).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            Field::new(2, 40, None),
            Err(Error::FieldTooLarge { .. })
        ));
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(2)
        );
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::BadModulus(_))
        ));
    }

    #[test]
    fn inversion_convention_and_dlog() {
        for (p, n) in [(2, 1), (2, 2), (3, 2), (5, 1), (2, 3), (7, 1)] {
            let f = Field::new(p, n, None).unwrap();
            assert_eq!(f.inv(Elem::ZERO), Elem::ZERO);
            assert_eq!(f.dlog(Elem::ZERO), Err(Error::DlogOfZero));
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
                assert_eq!(f.pow(a, f.q() as u64 - 1), Elem::ONE);
                assert_eq!(f.inv(a), f.pow(a, f.q() as u64 - 2));
                assert_eq!(f.pow(f.zeta(), f.dlog(a).unwrap() as u64), a);
            }
        }
        let f4 = Field::new(2, 2, None).unwrap();
        let d = f4.dlog(f4.lambda()).unwrap();
        assert_eq!(f4.pow(f4.zeta(), d as u64), f4.lambda());
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(prime_factors(80), [2, 5]);
        assert_eq!(prime_factors(1), [] as [u32; 0]);
    }
}
