//! Sweeps of the per-function checks over enumerated or sampled spaces.
//!
//! Every space is indexed by `0..len`, and each index maps to one function
//! independently of the others. Partial results over disjoint index ranges
//! merge commutatively, so any partition yields the same totals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use super::{check, BoundId, BoundVerdict, Outcome};
use crate::error::{Error, Result};
use crate::families;
use crate::field::{Elem, Field};
use crate::measures::{perm_unrank, CarlitzTable, MeasureOptions, Measured, MAX_EXACT_ORDER};
use crate::poly::Func;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    AllFunctions,
    AllPermutations,
    /// Maps with `f(0) = 0`.
    ZeroFixing,
    /// Maps with `f(0) = 0` and no other zero.
    ZeroFixingNonvanishing,
    ZeroFixingPermutations,
    Sample {
        count: u64,
        seed: u64,
    },
    SamplePermutations {
        count: u64,
        seed: u64,
    },
}

fn checked_factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// Big-endian base-`base` digits of `index`, `len` of them.
fn digits_be(mut index: u64, base: u64, len: usize) -> Vec<u32> {
    let mut out = alloc::vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % base) as u32;
        index /= base;
    }
    out
}

impl Space {
    pub fn name(&self) -> &'static str {
        match self {
            Space::AllFunctions => "all_functions",
            Space::AllPermutations => "all_permutations",
            Space::ZeroFixing => "zero_fixing_functions",
            Space::ZeroFixingNonvanishing => "zero_fixing_nonvanishing",
            Space::ZeroFixingPermutations => "zero_fixing_permutations",
            Space::Sample { .. } => "sample",
            Space::SamplePermutations { .. } => "sample_permutations",
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        !matches!(
            self,
            Space::Sample { .. } | Space::SamplePermutations { .. }
        )
    }

    /// Number of functions; `SpaceTooLarge` when it exceeds `u64`.
    pub fn len(&self, field: &Field) -> Result<u64> {
        let q = field.q() as u64;
        let e = field.q() - 1;
        let n = match self {
            Space::AllFunctions => q.checked_pow(field.q()),
            Space::AllPermutations => checked_factorial(q).filter(|_| q <= 256),
            Space::ZeroFixing => q.checked_pow(e),
            Space::ZeroFixingNonvanishing => (q - 1).checked_pow(e),
            Space::ZeroFixingPermutations => checked_factorial(q - 1).filter(|_| q <= 256),
            Space::Sample { count, .. } | Space::SamplePermutations { count, .. } => Some(*count),
        };
        n.ok_or(Error::SpaceTooLarge)
    }

    /// The `index`-th function. Exhaustive spaces are in lexicographic order
    /// of value tables.
    pub fn function_at(&self, field: &Field, index: u64) -> Result<Func> {
        let q = field.q() as u64;
        let qs = field.q() as usize;
        let table: Vec<Elem> = match self {
            Space::AllFunctions => digits_be(index, q, qs).into_iter().map(Elem).collect(),
            Space::AllPermutations => perm_unrank(qs, index)
                .into_iter()
                .map(|v| Elem(v as u32))
                .collect(),
            Space::ZeroFixing => core::iter::once(Elem::ZERO)
                .chain(digits_be(index, q, qs - 1).into_iter().map(Elem))
                .collect(),
            Space::ZeroFixingNonvanishing => core::iter::once(Elem::ZERO)
                .chain(
                    digits_be(index, q - 1, qs - 1)
                        .into_iter()
                        .map(|d| Elem(d + 1)),
                )
                .collect(),
            Space::ZeroFixingPermutations => core::iter::once(Elem::ZERO)
                .chain(
                    perm_unrank(qs - 1, index)
                        .into_iter()
                        .map(|v| Elem(v as u32 + 1)),
                )
                .collect(),
            Space::Sample { seed, .. } => {
                return Ok(families::random_function_stream(field, *seed, index))
            }
            Space::SamplePermutations { seed, .. } => {
                return Ok(families::random_permutation_stream(field, *seed, index))
            }
        };
        Func::from_table(field, table)
    }
}

/// Shared read-only state for one sweep.
pub struct SweepContext<'a> {
    pub field: &'a Field,
    pub space: Space,
    pub bounds: Vec<BoundId>,
    pub exact_crk_max: u32,
    carlitz: Option<CarlitzTable>,
}

impl<'a> SweepContext<'a> {
    /// Builds the Carlitz closure once when a requested bound needs it.
    pub fn new(
        field: &'a Field,
        space: Space,
        bounds: Vec<BoundId>,
        exact_crk_max: u32,
    ) -> Result<SweepContext<'a>> {
        if bounds.iter().any(|b| !b.is_per_function()) {
            return Err(Error::Unsupported("field-level bound in a function sweep"));
        }
        let cap = exact_crk_max.min(MAX_EXACT_ORDER);
        let carlitz = if field.q() <= cap && bounds.iter().any(|b| b.needs_carlitz()) {
            Some(CarlitzTable::build(field, None)?)
        } else {
            None
        };
        Ok(SweepContext {
            field,
            space,
            bounds,
            exact_crk_max: cap,
            carlitz,
        })
    }

    pub fn options(&self) -> MeasureOptions<'_> {
        MeasureOptions {
            exact_crk_max: self.exact_crk_max,
            carlitz_table: self.carlitz.as_ref(),
        }
    }

    pub fn len(&self) -> Result<u64> {
        self.space.len(self.field)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.len()? == 0)
    }

    pub fn accumulator(&self) -> SweepAccumulator {
        SweepAccumulator::new(&self.bounds)
    }

    /// Runs every bound on the functions with indices in `range`.
    pub fn sweep_range(&self, range: Range<u64>) -> Result<SweepAccumulator> {
        let mut acc = self.accumulator();
        for index in range {
            let f = self.space.function_at(self.field, index)?;
            acc.observe(self, &f)?;
        }
        Ok(acc)
    }
}

/// Violation witness: the smallest offending table wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub table: Vec<Elem>,
    pub verdict: BoundVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTally {
    pub id: BoundId,
    pub evaluated: u64,
    pub applicable: u64,
    pub holds: u64,
    pub vacuous: u64,
    pub violations: u64,
    pub undecided: u64,
    pub witness: Option<Witness>,
}

impl BoundTally {
    pub fn new(id: BoundId) -> BoundTally {
        BoundTally {
            id,
            evaluated: 0,
            applicable: 0,
            holds: 0,
            vacuous: 0,
            violations: 0,
            undecided: 0,
            witness: None,
        }
    }

    pub fn record(&mut self, table: &[Elem], verdict: BoundVerdict) {
        self.evaluated += 1;
        match verdict.outcome {
            Outcome::NotApplicable => return,
            Outcome::Holds => self.holds += 1,
            Outcome::HoldsVacuously => {
                self.holds += 1;
                self.vacuous += 1;
            }
            Outcome::Undecided => self.undecided += 1,
            Outcome::Violated => {
                self.violations += 1;
                if self
                    .witness
                    .as_ref()
                    .is_none_or(|w| table < w.table.as_slice())
                {
                    self.witness = Some(Witness {
                        table: table.to_vec(),
                        verdict: verdict.clone(),
                    });
                }
            }
        }
        self.applicable += 1;
    }

    pub fn merge(&mut self, other: BoundTally) {
        debug_assert_eq!(self.id, other.id);
        self.evaluated += other.evaluated;
        self.applicable += other.applicable;
        self.holds += other.holds;
        self.vacuous += other.vacuous;
        self.violations += other.violations;
        self.undecided += other.undecided;
        if let Some(w) = other.witness {
            if self
                .witness
                .as_ref()
                .is_none_or(|mine| w.table < mine.table)
            {
                self.witness = Some(w);
            }
        }
    }
}

/// Minimum of `deg · AddInd` among maps with `AddInd > 1` in one codimension class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub codim: u32,
    pub min_product: u64,
    pub count_at_min: u64,
    pub witness: Vec<Elem>,
}

impl Extremal {
    fn offer(&mut self, product: u64, table: &[Elem]) {
        if product < self.min_product {
            self.min_product = product;
            self.count_at_min = 1;
            self.witness = table.to_vec();
        } else if product == self.min_product {
            self.count_at_min += 1;
            if table < self.witness.as_slice() {
                self.witness = table.to_vec();
            }
        }
    }

    fn merge(&mut self, other: Extremal) {
        if other.min_product < self.min_product {
            *self = other;
        } else if other.min_product == self.min_product {
            self.count_at_min += other.count_at_min;
            if other.witness < self.witness {
                self.witness = other.witness;
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub functions: u64,
    pub permutations: u64,
    pub weight_sum: u128,
    /// Number of functions per codimension.
    pub codim_histogram: BTreeMap<u32, u64>,
}

impl SweepStats {
    fn merge(&mut self, other: SweepStats) {
        self.functions += other.functions;
        self.permutations += other.permutations;
        self.weight_sum += other.weight_sum;
        for (k, v) in other.codim_histogram {
            *self.codim_histogram.entry(k).or_insert(0) += v;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepAccumulator {
    pub tallies: Vec<BoundTally>,
    pub extremal: BTreeMap<u32, Extremal>,
    pub stats: SweepStats,
}

impl SweepAccumulator {
    pub fn new(bounds: &[BoundId]) -> SweepAccumulator {
        SweepAccumulator {
            tallies: bounds.iter().map(|&b| BoundTally::new(b)).collect(),
            extremal: BTreeMap::new(),
            stats: SweepStats::default(),
        }
    }

    pub fn observe(&mut self, ctx: &SweepContext<'_>, f: &Func) -> Result<()> {
        let m = Measured::new(ctx.field, f, ctx.options());
        let table = f.table();
        for tally in &mut self.tallies {
            let v = check(&m, tally.id)?;
            tally.record(table, v);
        }
        let codim = m.codim()?;
        self.stats.functions += 1;
        self.stats.permutations += u64::from(m.is_permutation());
        self.stats.weight_sum += m.weight() as u128;
        *self.stats.codim_histogram.entry(codim.codim).or_insert(0) += 1;
        if codim.add_index > 1 {
            let product = m.degree().finite().unwrap_or(0) as u64 * codim.add_index;
            self.extremal
                .entry(codim.codim)
                .or_insert_with(|| Extremal {
                    codim: codim.codim,
                    min_product: u64::MAX,
                    count_at_min: 0,
                    witness: Vec::new(),
                })
                .offer(product, table);
        }
        Ok(())
    }

    pub fn merge(&mut self, other: SweepAccumulator) {
        for (mine, theirs) in self.tallies.iter_mut().zip(other.tallies) {
            mine.merge(theirs);
        }
        for (k, e) in other.extremal {
            match self.extremal.get_mut(&k) {
                Some(mine) => mine.merge(e),
                None => {
                    self.extremal.insert(k, e);
                }
            }
        }
        self.stats.merge(other.stats);
    }

    /// Smallest `deg · AddInd` over all classes.
    pub fn overall_min_product(&self) -> Option<u64> {
        self.extremal.values().map(|e| e.min_product).min()
    }
}
