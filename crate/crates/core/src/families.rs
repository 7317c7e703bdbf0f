//! Constructors for the named function families.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Subspace};
use crate::measures::{carlitz_form_eval, CyclotomicForm};
use crate::poly::Func;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Identity,
    /// `a x + b`
    Affine {
        a: Elem,
        b: Elem,
    },
    /// `a x^r`
    Monomial {
        a: Elem,
        r: u64,
    },
    Inversion,
    /// Nested form with parameters `a_0..a_{r+1}`.
    Carlitz(Vec<Elem>),
    /// `Π_{u∈U} (x - u)`
    SubspacePoly(Subspace),
    /// 1 on `U`, 0 elsewhere.
    Indicator(Subspace),
    /// `ζ^x ↦ Σ x_i λ^i` with `0 ↦ -Σ λ^i`.
    Dlog,
    Cyclotomic {
        ell: u32,
        r: u32,
        constants: Vec<Elem>,
    },
    RandomFunc {
        seed: u64,
    },
    RandomPerm {
        seed: u64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Affine { .. } => "affine",
            Family::Monomial { .. } => "monomial",
            Family::Inversion => "inversion",
            Family::Carlitz(_) => "carlitz",
            Family::SubspacePoly(_) => "subspace_poly",
            Family::Indicator(_) => "indicator",
            Family::Dlog => "dlog",
            Family::Cyclotomic { .. } => "cyclotomic",
            Family::RandomFunc { .. } => "random_func",
            Family::RandomPerm { .. } => "random_perm",
        }
    }
}

fn check_elems(field: &Field, elems: &[Elem]) -> Result<()> {
    match elems.iter().find(|e| e.0 >= field.q()) {
        Some(e) => Err(Error::ElementOutOfRange {
            value: e.0,
            q: field.q(),
        }),
        None => Ok(()),
    }
}

pub fn build(field: &Field, family: &Family) -> Result<Func> {
    match family {
        Family::Identity => Ok(Func::identity(field)),
        Family::Affine { a, b } => {
            check_elems(field, &[*a, *b])?;
            Ok(Func::from_fn(field, |x| field.add(field.mul(*a, x), *b)))
        }
        Family::Monomial { a, r } => {
            check_elems(field, &[*a])?;
            Ok(Func::from_fn(field, |x| field.mul(*a, field.pow(x, *r))))
        }
        Family::Inversion => Ok(Func::from_fn(field, |x| field.inv(x))),
        Family::Carlitz(params) => {
            check_elems(field, params)?;
            if params.len() < 2 {
                return Err(Error::FamilyParams("carlitz needs a_0 and a_1".into()));
            }
            let r = params.len() - 2;
            if let Some(i) = core::iter::once(0)
                .chain(2..=r)
                .find(|&i| params[i].is_zero())
            {
                return Err(Error::FamilyParams(format!(
                    "carlitz parameter a_{i} must be nonzero"
                )));
            }
            Ok(Func::from_fn(field, |x| {
                carlitz_form_eval(field, params, x)
            }))
        }
        Family::SubspacePoly(u) => Ok(linalg::subspace_poly(field, u).to_func(field)),
        Family::Indicator(u) => Ok(Func::from_fn(field, |x| {
            if u.contains(field, x) {
                Elem::ONE
            } else {
                Elem::ZERO
            }
        })),
        Family::Dlog => dlog(field),
        Family::Cyclotomic { ell, r, constants } => {
            check_elems(field, constants)?;
            let order = field.q() - 1;
            if *ell == 0 || !order.is_multiple_of(*ell) {
                return Err(Error::FamilyParams(format!(
                    "{ell} does not divide q - 1 = {order}"
                )));
            }
            if *r == 0 {
                return Err(Error::FamilyParams(
                    "cyclotomic order r must be >= 1".into(),
                ));
            }
            if constants.len() != *ell as usize {
                return Err(Error::FamilyParams(format!(
                    "cyclotomic needs {ell} branch constants, got {}",
                    constants.len()
                )));
            }
            if constants.iter().any(|c| c.is_zero()) {
                return Err(Error::FamilyParams(
                    "branch constants must be nonzero".into(),
                ));
            }
            let form = CyclotomicForm {
                ell: *ell,
                r: *r,
                branch_constants: constants.clone(),
            };
            Ok(form.to_func(field))
        }
        Family::RandomFunc { seed } => Ok(random_function(field, *seed)),
        Family::RandomPerm { seed } => Ok(random_permutation(field, *seed)),
    }
}

/// The discrete-log permutation, built from the pinned ζ and λ.
fn dlog(field: &Field) -> Result<Func> {
    let p = field.p() as u64;
    let lambda_powers: Vec<Elem> = (0..field.n())
        .map(|i| field.pow(field.lambda(), i as u64))
        .collect();
    let mut table = alloc::vec![None; field.q() as usize];
    for x in 0..field.q() as u64 - 1 {
        // Σ x_i λ^i over the base-p digits of x, least significant first
        let mut rest = x;
        let mut value = Elem::ZERO;
        for &lp in &lambda_powers {
            value = field.add(value, field.scale_int((rest % p) as u32, lp));
            rest /= p;
        }
        let slot = &mut table[field.exp(x).index()];
        if slot.is_some() {
            return Err(Error::Internal("dlog table collision"));
        }
        *slot = Some(value);
    }
    let minus_sum = lambda_powers
        .iter()
        .fold(Elem::ZERO, |acc, &lp| field.sub(acc, lp));
    table[0] = Some(minus_sum);
    let f = Func::from_raw(
        table
            .into_iter()
            .map(|v| v.expect("every slot filled"))
            .collect(),
    );
    if !f.is_permutation() {
        return Err(Error::Internal("dlog family is not a permutation"));
    }
    Ok(f)
}

/// Uniform over all `q^q` maps; `stream` selects an independent sequence.
pub fn random_function_stream(field: &Field, seed: u64, stream: u64) -> Func {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    random_function_with(field, &mut rng)
}

/// Uniform over all `q!` permutations; `stream` selects an independent sequence.
pub fn random_permutation_stream(field: &Field, seed: u64, stream: u64) -> Func {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    random_permutation_with(field, &mut rng)
}

pub fn random_function(field: &Field, seed: u64) -> Func {
    random_function_stream(field, seed, 0)
}

pub fn random_permutation(field: &Field, seed: u64) -> Func {
    random_permutation_stream(field, seed, 0)
}

pub fn random_function_with<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Func {
    let q = field.q();
    Func::from_raw((0..q).map(|_| Elem(rng.gen_range(0..q))).collect())
}

pub fn random_permutation_with<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Func {
    let mut table: Vec<Elem> = field.elements().collect();
    table.shuffle(rng);
    Func::from_raw(table)
}

/// A uniformly random bijective F_p-affine map `x ↦ A(x) + c`.
pub fn random_fp_affine<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Func {
    let q = field.q();
    // images of the basis λ^0..λ^{n-1}, resampled until independent
    let images: Vec<Elem> = loop {
        let cand: Vec<Elem> = (0..field.n()).map(|_| Elem(rng.gen_range(0..q))).collect();
        if Subspace::span(field, &cand).dim() == field.n() {
            break cand;
        }
    };
    let c = Elem(rng.gen_range(0..q));
    Func::from_fn(field, |x| {
        (0..field.n()).fold(c, |acc, i| {
            field.add(acc, field.scale_int(field.digit(x, i), images[i as usize]))
        })
    })
}
