//! Codimension and additive index.
//!
//! `f` has codimension at most `k` when some subspace `U` of codimension `k`
//! and some F_p-linear `M` make `f - M` constant on every coset of `U`.
//! `f - M` is constant on cosets of `U` exactly when
//! `f(x + u) - f(x) = M(u)` for all `x` and `u ∈ U`, so the largest usable
//! `U` is the period subspace `V_f = {u : x ↦ f(x + u) - f(x) is constant}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, LinearisedPoly, Subspace};
use crate::poly::{self, Func, Poly};

/// Codimension `k` together with the additive index `p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Codim {
    pub codim: u32,
    pub add_index: u64,
}

impl Codim {
    fn new(field: &Field, codim: u32) -> Codim {
        Codim {
            codim,
            add_index: (field.p() as u64).pow(codim),
        }
    }
}

/// `V_f`, checked to be closed under addition.
pub fn period_subspace(field: &Field, f: &Func) -> Result<Subspace> {
    let f0 = f.at(Elem::ZERO);
    let mut periods = Vec::new();
    'outer: for u in field.elements() {
        let d = field.sub(f.at(u), f0);
        for x in field.elements().skip(1) {
            if field.sub(f.at(field.add(x, u)), f.at(x)) != d {
                continue 'outer;
            }
        }
        periods.push(u);
    }
    let span = Subspace::span(field, &periods);
    // a subspace of dimension d has exactly p^d elements
    if (field.p() as u64).pow(span.dim()) != periods.len() as u64 {
        return Err(Error::Internal("period set is not a subspace"));
    }
    Ok(span)
}

pub fn codimension(field: &Field, f: &Func) -> Result<Codim> {
    let v = period_subspace(field, f)?;
    Ok(Codim::new(field, v.codim(field)))
}

/// Cross-check for [`codimension`] that searches the definition directly:
/// every subspace by increasing codimension, with `M` prescribed on its basis.
pub fn codimension_oracle(field: &Field, f: &Func) -> Result<u32> {
    if field.n() > 4 {
        return Err(Error::Unsupported("subspace enumeration needs n <= 4"));
    }
    let n = field.n();
    let f0 = f.at(Elem::ZERO);
    for k in 0..=n {
        for u in linalg::all_subspaces(field, n - k) {
            let values: Vec<Elem> = u.basis().iter().map(|&b| field.sub(f.at(b), f0)).collect();
            let m = linalg::linear_extension(field, &u, &values)?;
            let residual: Vec<Elem> = field
                .elements()
                .map(|x| field.sub(f.at(x), m.eval(field, x)))
                .collect();
            let constant_on_cosets = u.basis().iter().all(|&b| {
                field
                    .elements()
                    .all(|x| residual[field.add(x, b).index()] == residual[x.index()])
            });
            if constant_on_cosets {
                return Ok(k);
            }
        }
    }
    Err(Error::Internal("codimension n always qualifies"))
}

/// `f(x) = g(M(x)) + L(x)` with `ker M` the period subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveDecomposition {
    pub codim: u32,
    pub period_subspace: Subspace,
    /// `M`, splitting completely with kernel `period_subspace`, degree `p^{n-k}`.
    pub kernel_poly: LinearisedPoly,
    /// `L`, degree at most `p^{n-k-1}`.
    pub linear_part: LinearisedPoly,
    /// `g`, degree at most `p^k - 1`.
    pub outer: Poly,
    /// `(coset representative, f - L on that coset)`, ascending by representative.
    pub coset_constants: Vec<(Elem, Elem)>,
}

impl AdditiveDecomposition {
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        let m = self.kernel_poly.eval(field, x);
        field.add(self.outer.eval(field, m), self.linear_part.eval(field, x))
    }
}

pub fn additive_decompose(field: &Field, f: &Func) -> Result<AdditiveDecomposition> {
    let v = period_subspace(field, f)?;
    let f0 = f.at(Elem::ZERO);
    let values: Vec<Elem> = v.basis().iter().map(|&b| field.sub(f.at(b), f0)).collect();
    let linear_part = linalg::linear_extension(field, &v, &values)?;
    let kernel_poly = linalg::subspace_poly(field, &v);

    let mut coset_constants: Vec<(Elem, Elem)> = Vec::new();
    for x in field.elements() {
        let rep = v.coset_representative(field, x);
        if rep == x {
            coset_constants.push((x, field.sub(f.at(x), linear_part.eval(field, x))));
        }
    }
    // M separates cosets, so these nodes are distinct
    let points: Vec<(Elem, Elem)> = coset_constants
        .iter()
        .map(|&(rep, c)| (kernel_poly.eval(field, rep), c))
        .collect();
    let outer = poly::interpolate_points(field, &points);

    let dec = AdditiveDecomposition {
        codim: v.codim(field),
        period_subspace: v,
        kernel_poly,
        linear_part,
        outer,
        coset_constants,
    };
    if field.elements().any(|x| dec.eval(field, x) != f.at(x)) {
        return Err(Error::Internal("decomposition does not recompose"));
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Degree;

    fn field(p: u32, n: u32) -> Field {
        Field::new(p, n, None).unwrap()
    }

    fn inversion(f: &Field) -> Func {
        Func::from_fn(f, |x| f.inv(x))
    }

    fn indicator(f: &Field, u: &Subspace) -> Func {
        Func::from_fn(f, |x| {
            if u.contains(f, x) {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        })
    }

    #[test]
    fn affine_maps_have_full_period_space() {
        let f9 = field(3, 2);
        // x ↦ x^3 + λ x + 2 is F_3-affine
        let g = Func::from_fn(&f9, |x| {
            let a = f9.add(f9.frobenius(x), f9.mul(f9.lambda(), x));
            f9.add(a, Elem(2))
        });
        assert_eq!(period_subspace(&f9, &g).unwrap(), Subspace::full(&f9));
    }

    #[test]
    fn inversion_codimension() {
        let f7 = field(7, 1);
        assert_eq!(
            period_subspace(&f7, &inversion(&f7)).unwrap(),
            Subspace::zero()
        );
        let f4 = field(2, 2);
        assert_eq!(
            codimension(&f4, &inversion(&f4)).unwrap(),
            Codim {
                codim: 0,
                add_index: 1
            }
        );
        let f5 = field(5, 1);
        assert_eq!(
            codimension(&f5, &inversion(&f5)).unwrap(),
            Codim {
                codim: 1,
                add_index: 5
            }
        );
        let f8 = field(2, 3);
        assert_eq!(codimension_oracle(&f8, &inversion(&f8)).unwrap(), 3);
    }

    #[test]
    fn indicator_codimension() {
        let f4 = field(2, 2);
        let u = Subspace::span(&f4, &[Elem(1)]);
        assert_eq!(
            period_subspace(&f4, &indicator(&f4, &u)).unwrap(),
            Subspace::full(&f4)
        );
        let f9 = field(3, 2);
        let u = Subspace::span(&f9, &[Elem(1)]);
        assert_eq!(
            codimension(&f9, &indicator(&f9, &u)).unwrap(),
            Codim {
                codim: 1,
                add_index: 3
            }
        );
    }

    #[test]
    fn oracle_on_identity() {
        let f9 = field(3, 2);
        assert_eq!(codimension_oracle(&f9, &Func::identity(&f9)).unwrap(), 0);
        let f32 = field(2, 5);
        assert!(codimension_oracle(&f32, &Func::identity(&f32)).is_err());
    }

    #[test]
    fn decompositions() {
        let f9 = field(3, 2);
        let affine = Func::from_fn(&f9, |x| f9.add(f9.mul(Elem(5), x), Elem(4)));
        let d = additive_decompose(&f9, &affine).unwrap();
        assert_eq!(d.codim, 0);
        assert!(d.outer.degree() <= Degree::Finite(0));

        let u = Subspace::span(&f9, &[f9.lambda()]);
        let f2 = indicator(&f9, &u);
        let d = additive_decompose(&f9, &f2).unwrap();
        assert_eq!(d.codim, 1);
        assert!(d.outer.degree() <= Degree::Finite(2));
        assert_eq!(d.kernel_poly.degree(&f9), Degree::Finite(3));
        assert!(d.linear_part.degree(&f9) <= Degree::Finite(1));

        let f7 = field(7, 1);
        let inv = inversion(&f7);
        let d = additive_decompose(&f7, &inv).unwrap();
        assert_eq!(d.codim, 1);
        assert_eq!(d.kernel_poly, LinearisedPoly::identity());
        assert_eq!(d.linear_part, LinearisedPoly::zero());
        assert_eq!(d.outer, poly::interpolate(&f7, &inv));
    }
}
