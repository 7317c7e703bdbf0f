//! F_p-linear structure of GF(q): subspaces in canonical echelon form,
//! linearised polynomials, kernels and subspace polynomials.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::{Degree, Func, Poly};

/// An F_p-subspace of GF(q), held as a reduced row-echelon basis of digit
/// vectors.
///
/// Each basis vector has leading (highest nonzero) digit 1, no other basis
/// vector has a nonzero digit at that position, and vectors are sorted by
/// leading position, highest first. Equal subspaces therefore have equal
/// bases.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    basis: Vec<Elem>,
}

fn leading_position(field: &Field, v: Elem) -> Option<u32> {
    (0..field.n()).rev().find(|&i| field.digit(v, i) != 0)
}

impl Subspace {
    pub fn zero() -> Subspace {
        Subspace { basis: Vec::new() }
    }

    pub fn full(field: &Field) -> Subspace {
        let basis = (0..field.n())
            .rev()
            .map(|i| field.pow(field.lambda(), i as u64))
            .collect::<Vec<_>>();
        Subspace::span(field, &basis)
    }

    /// Canonical basis of the F_p-span of `vectors`.
    pub fn span(field: &Field, vectors: &[Elem]) -> Subspace {
        let mut s = Subspace::zero();
        for &v in vectors {
            s.insert(field, v);
        }
        s
    }

    fn reduce_against(&self, field: &Field, mut v: Elem) -> Elem {
        for &b in &self.basis {
            let pos = leading_position(field, b).expect("basis vectors are nonzero");
            let c = field.digit(v, pos);
            if c != 0 {
                v = field.sub(v, field.scale_int(c, b));
            }
        }
        v
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, field: &Field, v: Elem) -> bool {
        let v = self.reduce_against(field, v);
        let Some(pos) = leading_position(field, v) else {
            return false;
        };
        let lead = field.digit(v, pos);
        // scale so the leading digit is 1; lead^{p-2} is its inverse mod p
        let v = field.scale_int(pow_mod(lead, field.p() - 2, field.p()), v);
        for b in self.basis.iter_mut() {
            let c = field.digit(*b, pos);
            if c != 0 {
                *b = field.sub(*b, field.scale_int(c, v));
            }
        }
        self.basis.push(v);
        self.basis
            .sort_by_key(|&b| core::cmp::Reverse(leading_position(field, b)));
        true
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn codim(&self, field: &Field) -> u32 {
        field.n() - self.dim()
    }

    pub fn contains(&self, field: &Field, v: Elem) -> bool {
        self.reduce_against(field, v).is_zero()
    }

    /// All `p^dim` elements, ascending.
    pub fn enumerate(&self, field: &Field) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO];
        for &b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * field.p() as usize);
            for &x in &out {
                let mut y = x;
                for _ in 0..field.p() {
                    next.push(y);
                    y = field.add(y, b);
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    /// Smallest encoding in the coset `x + U`.
    pub fn coset_representative(&self, field: &Field, x: Elem) -> Elem {
        // The reduced vector has zero digits at every pivot; adding any
        // nonzero element of U makes some pivot digit nonzero, and the
        // highest such pivot dominates the encoding. So it is the minimum.
        self.reduce_against(field, x)
    }
}

fn pow_mod(a: u32, mut k: u32, p: u32) -> u32 {
    let mut base = a as u64 % p as u64;
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

/// Every subspace of the given dimension, in a deterministic order.
///
/// Walks the reduced echelon patterns: a choice of pivot positions plus a
/// free digit for every non-pivot position below each pivot.
pub fn all_subspaces(field: &Field, dim: u32) -> Vec<Subspace> {
    let n = field.n();
    let p = field.p();
    let mut out = Vec::new();
    if dim > n {
        return out;
    }
    for pivots in combinations(n, dim) {
        // free slots: (row, position) with position < pivot[row] and not a pivot
        let free: Vec<(usize, u32)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pv)| {
                (0..pv)
                    .filter(|pos| !pivots.contains(pos))
                    .map(move |pos| (row, pos))
            })
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows: Vec<Vec<u32>> = pivots
                .iter()
                .map(|&pv| {
                    let mut d = vec![0u32; n as usize];
                    d[pv as usize] = 1;
                    d
                })
                .collect();
            for &(row, pos) in &free {
                rows[row][pos as usize] = (code % p as u64) as u32;
                code /= p as u64;
            }
            let vecs: Vec<Elem> = rows.iter().map(|d| field.from_digits(d)).collect();
            out.push(Subspace::span(field, &vecs));
        }
    }
    out
}

/// k-subsets of `0..n` as ascending vectors.
fn combinations(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `M(X) = Σ_j a_j X^{p^j}`.
///
/// Up to `n + 1` coefficients are kept so that `X^q - X`, the subspace
/// polynomial of the whole field, has a faithful formal representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearisedPoly {
    coeffs: Vec<Elem>,
}

impl LinearisedPoly {
    pub fn zero() -> LinearisedPoly {
        LinearisedPoly { coeffs: Vec::new() }
    }

    /// `X`
    pub fn identity() -> LinearisedPoly {
        LinearisedPoly {
            coeffs: vec![Elem::ONE],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> LinearisedPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinearisedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Formal degree `p^j` of the top term.
    pub fn degree(&self, field: &Field) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(field.p().pow(l as u32 - 1)),
        }
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for &a in &self.coeffs {
            acc = field.add(acc, field.mul(a, y));
            y = field.frobenius(y);
        }
        acc
    }

    pub fn to_func(&self, field: &Field) -> Func {
        Func::from_fn(field, |x| self.eval(field, x))
    }

    /// Ordinary polynomial, reduced modulo `X^q - X`.
    pub fn to_poly(&self, field: &Field) -> Poly {
        let q = field.q() as usize;
        let mut c = vec![Elem::ZERO; q.max(2)];
        let mut e = 1usize;
        for &a in &self.coeffs {
            let slot = if e < q { e } else { (e - 1) % (q - 1) + 1 };
            c[slot] = field.add(c[slot], a);
            e *= field.p() as usize;
        }
        Poly::from_coeffs(c)
    }
}

/// `h_U(X) = Π_{u∈U} (X - u)` as a linearised polynomial of degree `p^dim`.
///
/// Built incrementally: `h_{U+<v>} = h_U^p - h_U(v)^{p-1} h_U`.
pub fn subspace_poly(field: &Field, u: &Subspace) -> LinearisedPoly {
    let mut h = LinearisedPoly::identity();
    for &v in u.basis() {
        let c = field.pow(h.eval(field, v), field.p() as u64 - 1);
        let mut next = vec![Elem::ZERO; h.coeffs.len() + 1];
        for (j, &a) in h.coeffs.iter().enumerate() {
            next[j + 1] = field.add(next[j + 1], field.frobenius(a));
            next[j] = field.sub(next[j], field.mul(c, a));
        }
        h = LinearisedPoly::from_coeffs(next);
    }
    h
}

/// `{x : M(x) = 0}`.
pub fn kernel(field: &Field, m: &LinearisedPoly) -> Subspace {
    let mut s = Subspace::zero();
    for x in field.elements() {
        if m.eval(field, x).is_zero() && !s.contains(field, x) {
            s.insert(field, x);
        }
    }
    s
}

/// The linearised polynomial of degree at most `p^{dim-1}` taking the given
/// values on the basis of `u` (the zero map when `dim = 0`).
///
/// Solves the Moore system `Σ_j a_j b_i^{p^j} = v_i`, which is nonsingular
/// because the basis is F_p-independent.
pub fn linear_extension(field: &Field, u: &Subspace, values: &[Elem]) -> Result<LinearisedPoly> {
    let d = u.dim() as usize;
    if values.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: values.len(),
        });
    }
    if d == 0 {
        return Ok(LinearisedPoly::zero());
    }
    // augmented rows [b_i, b_i^p, ..., b_i^{p^{d-1}} | v_i]
    let mut rows: Vec<Vec<Elem>> = u
        .basis()
        .iter()
        .zip(values)
        .map(|(&b, &v)| {
            let mut row = Vec::with_capacity(d + 1);
            let mut y = b;
            for _ in 0..d {
                row.push(y);
                y = field.frobenius(y);
            }
            row.push(v);
            row
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::Internal("singular Moore matrix"))?;
        rows.swap(col, pivot);
        let inv = field.inv(rows[col][col]);
        for x in rows[col].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(c, pv));
            }
        }
    }
    Ok(LinearisedPoly::from_coeffs(
        rows.into_iter().map(|r| r[d]).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    #[test]
    fn span_examples() {
        let f9 = field(3, 2);
        assert_eq!(Subspace::span(&f9, &[]).dim(), 0);
        assert_eq!(Subspace::span(&f9, &[Elem(1), f9.lambda()]).dim(), 2);
        let l = f9.lambda();
        let two_l = f9.add(l, l);
        let s = Subspace::span(&f9, &[l, two_l]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[l]);
        assert_eq!(
            Subspace::span(&f9, &[Elem(7), Elem(5)]),
            Subspace::span(&f9, &[Elem(5), Elem(7)])
        );
    }

    #[test]
    fn enumerate_examples() {
        let f4 = field(2, 2);
        assert_eq!(Subspace::zero().enumerate(&f4), [Elem(0)]);
        assert_eq!(
            Subspace::full(&f4).enumerate(&f4),
            f4.elements().collect::<Vec<_>>()
        );
        assert_eq!(
            Subspace::span(&f4, &[Elem(1)]).enumerate(&f4),
            [Elem(0), Elem(1)]
        );
    }

    #[test]
    fn subspace_poly_examples() {
        let f4 = field(2, 2);
        let u = Subspace::span(&f4, &[Elem(1)]);
        // X^2 + X
        assert_eq!(subspace_poly(&f4, &u).coeffs(), &[Elem(1), Elem(1)]);
        assert_eq!(
            subspace_poly(&f4, &Subspace::zero()),
            LinearisedPoly::identity()
        );
        for (p, n) in [(2, 2), (3, 2), (2, 3)] {
            let f = field(p, n);
            let h = subspace_poly(&f, &Subspace::full(&f));
            assert_eq!(h.degree(&f), Degree::Finite(f.q()));
            assert!(f.elements().all(|x| h.eval(&f, x).is_zero()));
            assert!(h.to_poly(&f).is_zero());
        }
    }

    #[test]
    fn kernel_examples() {
        let f8 = field(2, 3);
        assert_eq!(kernel(&f8, &LinearisedPoly::identity()), Subspace::zero());
        let f4 = field(2, 2);
        let m = LinearisedPoly::from_coeffs(vec![Elem(1), Elem(1)]);
        assert_eq!(kernel(&f4, &m), Subspace::span(&f4, &[Elem(1)]));
        // X^p - X has kernel F_p
        let f9 = field(3, 2);
        let m = LinearisedPoly::from_coeffs(vec![f9.neg(Elem(1)), Elem(1)]);
        assert_eq!(kernel(&f9, &m), Subspace::span(&f9, &[Elem(1)]));
    }

    #[test]
    fn linear_extension_examples() {
        let f4 = field(2, 2);
        assert_eq!(
            linear_extension(&f4, &Subspace::zero(), &[]).unwrap(),
            LinearisedPoly::zero()
        );
        let full = Subspace::full(&f4);
        let m = linear_extension(&f4, &full, full.basis()).unwrap();
        assert_eq!(m, LinearisedPoly::identity());
        let u = Subspace::span(&f4, &[Elem(1)]);
        let m = linear_extension(&f4, &u, &[f4.lambda()]).unwrap();
        assert_eq!(m.coeffs(), &[f4.lambda()]);
        assert!(matches!(
            linear_extension(&f4, &u, &[]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: F_8 has 1, 7, 7, 1; F_9 has 1, 4, 1
        let f8 = field(2, 3);
        let counts: Vec<usize> = (0..=3).map(|d| all_subspaces(&f8, d).len()).collect();
        assert_eq!(counts, [1, 7, 7, 1]);
        let f9 = field(3, 2);
        let counts: Vec<usize> = (0..=2).map(|d| all_subspaces(&f9, d).len()).collect();
        assert_eq!(counts, [1, 4, 1]);
        let f16 = field(2, 4);
        assert_eq!(all_subspaces(&f16, 2).len(), 35);
    }

    #[test]
    fn coset_representative_is_minimum() {
        let f9 = field(3, 2);
        for u in all_subspaces(&f9, 1) {
            let elems = u.enumerate(&f9);
            for x in f9.elements() {
                let min = elems.iter().map(|&e| f9.add(x, e)).min().unwrap();
                assert_eq!(u.coset_representative(&f9, x), min);
            }
        }
    }
}
