//! The five complexity measures and their certificates.

mod additive;
mod carlitz;
mod cyclotomic;
mod mobius;

pub use additive::{
    additive_decompose, codimension, codimension_oracle, period_subspace, AdditiveDecomposition,
    Codim,
};
pub use carlitz::{
    carlitz_form_eval, carlitz_rank, perm_rank, perm_unrank, CarlitzCertificate, CarlitzOutcome,
    CarlitzRank, CarlitzTable, MAX_EXACT_ORDER,
};
pub use cyclotomic::{mult_index, CyclotomicForm};
pub use mobius::{canonical_maps, mobius_agreement, MobiusFit, MobiusMap};

use core::cell::OnceCell;

use crate::error::Result;
use crate::field::Field;
use crate::poly::{self, Degree, Func, Poly};

pub fn deg_weight(field: &Field, f: &Func) -> (Degree, u32) {
    poly::measure_poly(&poly::interpolate(field, f))
}

#[derive(Clone, Copy, Debug)]
pub struct MeasureOptions<'a> {
    /// Exact Carlitz rank is computed for permutations when `q` is at most this.
    pub exact_crk_max: u32,
    /// A prebuilt closure to reuse across many functions of the same field.
    pub carlitz_table: Option<&'a CarlitzTable>,
}

impl Default for MeasureOptions<'_> {
    fn default() -> Self {
        MeasureOptions {
            exact_crk_max: MAX_EXACT_ORDER,
            carlitz_table: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub degree: Degree,
    pub weight: u32,
    pub codim: u32,
    pub add_index: u64,
    pub is_permutation: bool,
    /// `None` for non-permutations.
    pub carlitz_rank: Option<CarlitzRank>,
    /// `q - (best Möbius agreement)`, reported for permutations.
    pub mobius_lower_bound: Option<u32>,
    /// `None` when the index is undefined.
    pub mult_index: Option<u32>,
}

/// Lazily computed measures of one function.
///
/// Sweeps only pay for what their bound checks touch; every value is
/// computed at most once.
pub struct Measured<'a> {
    field: &'a Field,
    func: &'a Func,
    options: MeasureOptions<'a>,
    poly: OnceCell<Poly>,
    codim: OnceCell<Codim>,
    perm: OnceCell<bool>,
    mobius: OnceCell<MobiusFit>,
    crk: OnceCell<Option<CarlitzRank>>,
    mult: OnceCell<Option<CyclotomicForm>>,
}

impl<'a> Measured<'a> {
    pub fn new(field: &'a Field, func: &'a Func, options: MeasureOptions<'a>) -> Measured<'a> {
        Measured {
            field,
            func,
            options,
            poly: OnceCell::new(),
            codim: OnceCell::new(),
            perm: OnceCell::new(),
            mobius: OnceCell::new(),
            crk: OnceCell::new(),
            mult: OnceCell::new(),
        }
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn func(&self) -> &'a Func {
        self.func
    }

    pub fn poly(&self) -> &Poly {
        self.poly
            .get_or_init(|| poly::interpolate(self.field, self.func))
    }

    pub fn degree(&self) -> Degree {
        self.poly().degree()
    }

    pub fn weight(&self) -> u32 {
        self.poly().weight()
    }

    pub fn codim(&self) -> Result<Codim> {
        if let Some(c) = self.codim.get() {
            return Ok(*c);
        }
        let c = codimension(self.field, self.func)?;
        Ok(*self.codim.get_or_init(|| c))
    }

    pub fn is_permutation(&self) -> bool {
        *self.perm.get_or_init(|| self.func.is_permutation())
    }

    pub fn mobius(&self) -> &MobiusFit {
        self.mobius
            .get_or_init(|| mobius_agreement(self.field, self.func))
    }

    /// Exact rank when the field is small enough, otherwise the Möbius
    /// lower bound. `None` for non-permutations.
    pub fn carlitz(&self) -> Result<Option<CarlitzRank>> {
        if let Some(c) = self.crk.get() {
            return Ok(*c);
        }
        let value = if !self.is_permutation() {
            None
        } else if self.field.q() <= self.options.exact_crk_max.min(MAX_EXACT_ORDER) {
            let rank = match self.options.carlitz_table {
                Some(t) => t.rank(self.func)?,
                None => CarlitzTable::build(self.field, None)?.rank(self.func)?,
            };
            Some(rank)
        } else {
            Some(CarlitzRank::LowerBound(self.mobius().crk_lower_bound))
        };
        Ok(*self.crk.get_or_init(|| value))
    }

    pub fn cyclotomic(&self) -> Option<&CyclotomicForm> {
        self.mult
            .get_or_init(|| mult_index(self.field, self.func))
            .as_ref()
    }

    pub fn mult_index(&self) -> Option<u32> {
        self.cyclotomic().map(|c| c.ell)
    }

    pub fn report(&self) -> Result<MeasureReport> {
        let codim = self.codim()?;
        Ok(MeasureReport {
            degree: self.degree(),
            weight: self.weight(),
            codim: codim.codim,
            add_index: codim.add_index,
            is_permutation: self.is_permutation(),
            carlitz_rank: self.carlitz()?,
            mobius_lower_bound: self.is_permutation().then(|| self.mobius().crk_lower_bound),
            mult_index: self.mult_index(),
        })
    }
}

pub fn measure_all(field: &Field, f: &Func, options: MeasureOptions<'_>) -> Result<MeasureReport> {
    Measured::new(field, f, options).report()
}
