//! Exact real numbers of the form `a + b·√d` with rational `a`, `b`.
//!
//! Every right-hand side in the bound checks is either rational or has a
//! single square root (`(2p)^{n/2}`, `√q`), and comparisons against them are
//! decided exactly by sign analysis and squaring.

use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quantity {
    rational: Rational,
    surd: Rational,
    radicand: u64,
}

fn isqrt(d: u64) -> u64 {
    if d < 2 {
        return d;
    }
    let mut x = d;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + d / x) / 2;
    }
    x
}

/// Sign of `a + b√d` for `d >= 0`.
fn sign(a: &Rational, b: &Rational, d: u64) -> Ordering {
    let zero = Rational::zero();
    if b.is_zero() || d == 0 {
        return a.cmp(&zero);
    }
    let sa = a.cmp(&zero);
    let sb = b.cmp(&zero);
    if sa != Ordering::Less && sb != Ordering::Less {
        return Ordering::Greater;
    }
    if sa != Ordering::Greater && sb != Ordering::Greater {
        return Ordering::Less;
    }
    // opposite signs: compare a^2 with b^2 d
    let lhs = a * a;
    let rhs = b * b * Rational::from_integer(d as i128);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Quantity {
    pub fn int(v: i128) -> Quantity {
        Quantity::rational(Rational::from_integer(v))
    }

    pub fn ratio(num: i128, den: i128) -> Quantity {
        Quantity::rational(Rational::new(num, den))
    }

    pub fn rational(r: Rational) -> Quantity {
        Quantity {
            rational: r,
            surd: Rational::zero(),
            radicand: 0,
        }
    }

    /// `a + b√d`, with perfect squares folded into the rational part.
    pub fn with_surd(a: Rational, b: Rational, d: u64) -> Quantity {
        let s = isqrt(d);
        if s * s == d {
            return Quantity::rational(a + b * Rational::from_integer(s as i128));
        }
        if b.is_zero() {
            return Quantity::rational(a);
        }
        Quantity {
            rational: a,
            surd: b,
            radicand: d,
        }
    }

    /// `√d`
    pub fn sqrt(d: u64) -> Quantity {
        Quantity::with_surd(Rational::zero(), Rational::from_integer(1), d)
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then_some(self.rational)
    }

    /// `self - other`, defined when both share the radicand or one is rational.
    pub fn checked_sub(&self, other: &Quantity) -> Option<Quantity> {
        let d = match (self.is_rational(), other.is_rational()) {
            (true, _) => other.radicand,
            (_, true) => self.radicand,
            _ if self.radicand == other.radicand => self.radicand,
            _ => return None,
        };
        Some(Quantity::with_surd(
            self.rational - other.rational,
            self.surd - other.surd,
            d,
        ))
    }

    /// Exact comparison, defined when both share the radicand or one is rational.
    pub fn cmp_exact(&self, other: &Quantity) -> Option<Ordering> {
        let diff = self.checked_sub(other)?;
        Some(sign(&diff.rational, &diff.surd, diff.radicand))
    }

    pub fn signum(&self) -> Ordering {
        sign(&self.rational, &self.surd, self.radicand)
    }

    /// Floating-point approximation for display only.
    pub fn approx(&self) -> f64 {
        let r = *self.rational.numer() as f64 / *self.rational.denom() as f64;
        if self.is_rational() {
            return r;
        }
        let b = *self.surd.numer() as f64 / *self.surd.denom() as f64;
        r + b * sqrt_f64(self.radicand as f64)
    }
}

/// Newton iteration; `core` has no float square root.
fn sqrt_f64(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut y = x;
    for _ in 0..100 {
        let next = 0.5 * (y + x / y);
        if next == y {
            break;
        }
        y = next;
    }
    y
}

impl From<i128> for Quantity {
    fn from(v: i128) -> Quantity {
        Quantity::int(v)
    }
}

impl From<Rational> for Quantity {
    fn from(r: Rational) -> Quantity {
        Quantity::rational(r)
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write_ratio(f, &self.rational);
        }
        if !self.rational.is_zero() {
            write_ratio(f, &self.rational)?;
            f.write_str(if self.surd.is_negative() {
                " - "
            } else {
                " + "
            })?;
        } else if self.surd.is_negative() {
            f.write_str("-")?;
        }
        let b = self.surd.abs();
        if b != Rational::from_integer(1) {
            write_ratio(f, &b)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn dlog_rank_rhs_signs() {
        // 9 - 3 * 6 = -9
        let q9 = Quantity::with_surd(r(9), r(-3), 36);
        assert_eq!(q9, Quantity::int(-9));
        // 27 - 3 * 6^{3/2} = 27 - 3 sqrt(216) < 0
        let q27 = Quantity::with_surd(r(27), r(-3), 216);
        assert_eq!(q27.signum(), Ordering::Less);
        assert_eq!(q27.to_string(), "27 - 3*sqrt(216)");
        // 49 - 3 * 14 = 7
        assert_eq!(Quantity::with_surd(r(49), r(-3), 196), Quantity::int(7));
    }

    #[test]
    fn exact_comparisons() {
        let s2 = Quantity::sqrt(2);
        assert_eq!(
            Quantity::ratio(141, 100).cmp_exact(&s2),
            Some(Ordering::Less)
        );
        assert_eq!(
            Quantity::ratio(142, 100).cmp_exact(&s2),
            Some(Ordering::Greater)
        );
        assert_eq!(s2.cmp_exact(&s2), Some(Ordering::Equal));
        assert_eq!(s2.cmp_exact(&Quantity::sqrt(3)), None);
        assert_eq!(Quantity::ratio(7, 2).to_string(), "7/2");
        assert!((Quantity::sqrt(2).approx() - core::f64::consts::SQRT_2).abs() < 1e-12);
    }
}
