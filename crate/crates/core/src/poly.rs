//! Value tables and their reduced interpolation polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Degree of a polynomial; the zero polynomial has degree `-∞`.
///
/// `NegInfinity` orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl core::fmt::Display for Degree {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A self-map of GF(q) as its table of values: `table[x] = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Func {
    table: Vec<Elem>,
}

impl Func {
    pub fn from_table(field: &Field, table: Vec<Elem>) -> Result<Func> {
        if table.len() != field.q() as usize {
            return Err(Error::TableLength {
                got: table.len(),
                expected: field.q() as usize,
            });
        }
        if let Some(bad) = table.iter().find(|e| e.0 >= field.q()) {
            return Err(Error::ElementOutOfRange {
                value: bad.0,
                q: field.q(),
            });
        }
        Ok(Func { table })
    }

    pub fn from_fn(field: &Field, f: impl FnMut(Elem) -> Elem) -> Func {
        Func {
            table: field.elements().map(f).collect(),
        }
    }

    /// Table from raw encodings that are already known to be in range.
    pub(crate) fn from_raw(table: Vec<Elem>) -> Func {
        Func { table }
    }

    pub fn identity(field: &Field) -> Func {
        Func::from_fn(field, |x| x)
    }

    #[inline]
    pub fn at(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Elem> {
        self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for v in &self.table {
            if core::mem::replace(&mut seen[v.index()], true) {
                return false;
            }
        }
        true
    }

    /// `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &Func) -> Func {
        Func {
            table: inner.table.iter().map(|&y| self.at(y)).collect(),
        }
    }

    /// Inverse permutation, or `None` when `self` is not a bijection.
    pub fn inverse(&self) -> Option<Func> {
        if !self.is_permutation() {
            return None;
        }
        let mut table = vec![Elem::ZERO; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y.index()] = Elem(x as u32);
        }
        Some(Func { table })
    }

    /// `x ↦ f(x) - f(0)`.
    pub fn shifted(&self, field: &Field) -> Func {
        let c = self.table[0];
        Func {
            table: self.table.iter().map(|&y| field.sub(y, c)).collect(),
        }
    }
}

/// Polynomial over GF(q), coefficients low-to-high with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c·X^k`
    pub fn monomial(c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(l as u32 - 1),
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() as u32
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn to_func(&self, field: &Field) -> Func {
        Func::from_fn(field, |x| self.eval(field, x))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Schoolbook product, not reduced.
    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }
}

/// Degree and weight of a reduced polynomial.
pub fn measure_poly(poly: &Poly) -> (Degree, u32) {
    (poly.degree(), poly.weight())
}

/// Reduces modulo `X^q - X`: an exponent `i >= q` folds to `((i-1) mod (q-1)) + 1`.
pub fn reduce(field: &Field, poly: &Poly) -> Poly {
    let q = field.q() as usize;
    if poly.coeffs.len() <= q {
        return poly.clone();
    }
    let mut out = vec![Elem::ZERO; q];
    for (i, &c) in poly.coeffs.iter().enumerate() {
        let j = if i < q { i } else { (i - 1) % (q - 1) + 1 };
        out[j] = field.add(out[j], c);
    }
    Poly::from_coeffs(out)
}

/// The unique polynomial of degree at most `q - 1` agreeing with `f`.
///
/// With `(X - c)^{q-1} = Σ_j c^{q-1-j} X^j` in characteristic p, the
/// coefficients are `a_0 = f(0)`, `a_j = -Σ_{c≠0} f(c) c^{q-1-j}` for
/// `1 <= j <= q-2`, and `a_{q-1} = -Σ_c f(c)`.
pub fn interpolate(field: &Field, f: &Func) -> Poly {
    let q = field.q() as usize;
    let order = q as u64 - 1;
    let mut coeffs = vec![Elem::ZERO; q];
    coeffs[0] = f.at(Elem::ZERO);

    // (log f(ζ^t), t) for the nonzero values on F_q^*
    let terms: Vec<(u64, u64)> = (0..order)
        .filter_map(|t| {
            let y = f.at(field.exp(t));
            (!y.is_zero()).then(|| (field.log_unchecked(y) as u64, t))
        })
        .collect();
    for (j, coeff) in coeffs.iter_mut().enumerate().take(q - 1).skip(1) {
        let e = order - j as u64;
        let s = terms.iter().fold(Elem::ZERO, |acc, &(ly, t)| {
            field.add(acc, field.exp(ly + t * e))
        });
        *coeff = field.neg(s);
    }
    if q > 1 {
        let total = f
            .table()
            .iter()
            .fold(Elem::ZERO, |acc, &y| field.add(acc, y));
        coeffs[q - 1] = field.add(coeffs[q - 1], field.neg(total));
    }
    Poly::from_coeffs(coeffs)
}

/// Lagrange interpolation through distinct points; degree `< points.len()`.
pub fn interpolate_points(field: &Field, points: &[(Elem, Elem)]) -> Poly {
    if points.is_empty() {
        return Poly::zero();
    }
    // master = Π (X - x_i)
    let mut master = vec![Elem::ONE];
    for &(x, _) in points {
        let mut next = vec![Elem::ZERO; master.len() + 1];
        for (i, &c) in master.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, x));
        }
        master = next;
    }
    let m = points.len();
    let mut acc = vec![Elem::ZERO; m];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // master / (X - xi) by synthetic division
        let mut quot = vec![Elem::ZERO; m];
        let mut carry = Elem::ZERO;
        for k in (0..m).rev() {
            carry = field.add(master[k + 1], field.mul(carry, xi));
            quot[k] = carry;
        }
        let denom = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Elem::ONE, |d, (_, &(xj, _))| {
                field.mul(d, field.sub(xi, xj))
            });
        let w = field.mul(yi, field.inv(denom));
        for k in 0..m {
            acc[k] = field.add(acc[k], field.mul(quot[k], w));
        }
    }
    Poly::from_coeffs(acc)
}

/// `reduce(outer ∘ inner)`, computed through value tables.
pub fn compose_reduce(field: &Field, outer: &Poly, inner: &Poly) -> Poly {
    let table = Func::from_fn(field, |x| outer.eval(field, inner.eval(field, x)));
    interpolate(field, &table)
}

/// `|{c ∈ F_q^* : P(c) != 0}|` for a nonzero polynomial of degree at most `q - 2`.
pub fn nonzero_value_count(field: &Field, poly: &Poly) -> Result<u32> {
    match poly.degree() {
        Degree::NegInfinity => Err(Error::PolyHypothesis("zero polynomial")),
        Degree::Finite(d) if d + 2 > field.q() => {
            Err(Error::PolyHypothesis("degree exceeds q - 2"))
        }
        Degree::Finite(_) => Ok(field
            .elements()
            .skip(1)
            .filter(|&c| !poly.eval(field, c).is_zero())
            .count() as u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    fn e(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn interpolate_known_tables() {
        let f5 = field(5, 1);
        let c = Func::from_fn(&f5, |_| Elem(3));
        assert_eq!(interpolate(&f5, &c), Poly::constant(Elem(3)));

        let f3 = field(3, 1);
        let sq = Func::from_fn(&f3, |x| f3.mul(x, x));
        assert_eq!(interpolate(&f3, &sq), Poly::monomial(Elem(1), 2));

        let inv = Func::from_fn(&f5, |x| f5.inv(x));
        assert_eq!(interpolate(&f5, &inv), Poly::monomial(Elem(1), 3));
    }

    #[test]
    fn evaluate_examples() {
        let f5 = field(5, 1);
        assert_eq!(Poly::monomial(Elem(1), 3).eval(&f5, Elem(2)), Elem(3));
        assert_eq!(Poly::zero().eval(&f5, Elem(4)), Elem::ZERO);
        let f4 = field(2, 2);
        let m = Poly::from_coeffs(e(&[1, 1, 1]));
        assert_eq!(m.eval(&f4, f4.lambda()), Elem::ZERO);
    }

    #[test]
    fn reduce_examples() {
        let f4 = field(2, 2);
        assert_eq!(
            reduce(&f4, &Poly::monomial(Elem(1), 4)),
            Poly::monomial(Elem(1), 1)
        );
        let p = Poly::from_coeffs(e(&[0, 0, 1, 0, 1]));
        let r = reduce(&f4, &p);
        assert_eq!(r, Poly::from_coeffs(e(&[0, 1, 1])));
        for x in f4.elements() {
            assert_eq!(p.eval(&f4, x), r.eval(&f4, x));
        }
        let small = Poly::from_coeffs(e(&[1, 2, 3]));
        assert_eq!(reduce(&f4, &small), small);
    }

    #[test]
    fn measure_examples() {
        assert_eq!(
            measure_poly(&Poly::monomial(Elem(1), 3)),
            (Degree::Finite(3), 1)
        );
        assert_eq!(measure_poly(&Poly::zero()), (Degree::NegInfinity, 0));
        let f9 = field(3, 2);
        // 1 - x^8
        let p = Poly::from_coeffs({
            let mut c = vec![Elem::ZERO; 9];
            c[0] = Elem(1);
            c[8] = f9.neg(Elem(1));
            c
        });
        assert_eq!(measure_poly(&p), (Degree::Finite(8), 2));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn compose_examples() {
        let f3 = field(3, 1);
        let outer = Poly::monomial(Elem(1), 2);
        let inner = Poly::from_coeffs(e(&[1, 1]));
        assert_eq!(
            compose_reduce(&f3, &outer, &inner),
            Poly::from_coeffs(e(&[1, 2, 1]))
        );
        let x = Poly::monomial(Elem(1), 1);
        let p = Poly::from_coeffs(e(&[2, 0, 1]));
        assert_eq!(compose_reduce(&f3, &x, &p), reduce(&f3, &p));
        let f5 = field(5, 1);
        let cube = Poly::monomial(Elem(1), 3);
        assert_eq!(compose_reduce(&f5, &cube, &cube), x);
    }

    #[test]
    fn nonzero_value_examples() {
        let f5 = field(5, 1);
        assert_eq!(
            nonzero_value_count(&f5, &Poly::monomial(Elem(1), 1)).unwrap(),
            4
        );
        // X^2 - 1
        let p = Poly::from_coeffs(e(&[4, 0, 1]));
        assert_eq!(nonzero_value_count(&f5, &p).unwrap(), 2);
        let f4 = field(2, 2);
        assert_eq!(
            nonzero_value_count(&f4, &Poly::monomial(Elem(1), 3)),
            Err(Error::PolyHypothesis("degree exceeds q - 2"))
        );
        assert!(nonzero_value_count(&f4, &Poly::zero()).is_err());
        assert_eq!(
            nonzero_value_count(&f4, &Poly::monomial(Elem(1), 2)).unwrap(),
            3
        );
    }

    #[test]
    fn lagrange_through_points() {
        let f7 = field(7, 1);
        let pts = [(Elem(1), Elem(3)), (Elem(2), Elem(5)), (Elem(6), Elem(0))];
        let p = interpolate_points(&f7, &pts);
        assert!(p.degree() <= Degree::Finite(2));
        for (x, y) in pts {
            assert_eq!(p.eval(&f7, x), y);
        }
    }

    #[test]
    fn table_validation() {
        let f4 = field(2, 2);
        assert!(Func::from_table(&f4, e(&[0, 1, 2])).is_err());
        assert!(Func::from_table(&f4, e(&[0, 1, 2, 4])).is_err());
        let f = Func::from_table(&f4, e(&[1, 0, 3, 2])).unwrap();
        assert!(f.is_permutation());
        assert_eq!(f.inverse().unwrap().compose(&f), Func::identity(&f4));
    }
}
