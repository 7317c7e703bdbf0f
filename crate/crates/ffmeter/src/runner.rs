//! Parallel sweep driver and the field-level checks.
//!
//! The index range of a space is cut into a fixed number of chunks that
//! does not depend on the worker count; chunk results merge commutatively,
//! so the totals are identical for every pool size.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ffmeter_core::bounds::{
    check_compo_affine, check_compo_subadditive, check_dlog, check_intpol_form, check_inversion,
    check_mean_weight, check_rank_one_forms, cyclotomic_grid, BoundId, BoundTally, BoundVerdict,
    Outcome, Space, SweepAccumulator, SweepContext,
};
use ffmeter_core::families::{random_fp_affine, random_function_with};
use ffmeter_core::measures::{CarlitzTable, MAX_EXACT_ORDER};
use ffmeter_core::{Field, MeasureOptions};

const CHUNKS: u64 = 1024;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] ffmeter_core::Error),
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub space: Space,
    pub bounds: Vec<BoundId>,
    pub exact_crk_max: u32,
    /// `None` uses the pool default.
    pub workers: Option<usize>,
    /// Seed for the field-level random checks.
    pub seed: u64,
    /// Random pairs or maps per composition check.
    pub pairs: u32,
}

impl VerifyConfig {
    pub fn new(space: Space, bounds: Vec<BoundId>) -> VerifyConfig {
        VerifyConfig {
            space,
            bounds,
            exact_crk_max: MAX_EXACT_ORDER,
            workers: None,
            seed: 0,
            pairs: 1000,
        }
    }
}

/// A field-level statement: aggregated counts and, for the small ones,
/// every verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCheck {
    pub tally: BoundTally,
    pub verdicts: Vec<BoundVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub space_len: u64,
    pub sweep: SweepAccumulator,
    pub field_checks: Vec<FieldCheck>,
}

impl VerifyOutcome {
    pub fn tallies(&self) -> impl Iterator<Item = &BoundTally> {
        self.sweep
            .tallies
            .iter()
            .chain(self.field_checks.iter().map(|c| &c.tally))
    }

    /// 1 on any violation of a non-provisional bound, 3 when no check was
    /// applicable, else 0.
    pub fn exit_code(&self) -> i32 {
        let tallies: Vec<&BoundTally> = self.tallies().collect();
        if tallies
            .iter()
            .any(|t| t.violations > 0 && !t.id.is_provisional())
        {
            1
        } else if !tallies.is_empty() && tallies.iter().all(|t| t.applicable == 0) {
            3
        } else {
            0
        }
    }
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, RunError> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()?)
}

/// Sweeps the whole space of `ctx` across a pool of `workers` threads.
pub fn par_sweep(
    ctx: &SweepContext<'_>,
    workers: Option<usize>,
) -> Result<SweepAccumulator, RunError> {
    let len = ctx.len()?;
    let chunk = len.div_ceil(CHUNKS).max(1);
    let chunks = len.div_ceil(chunk);
    let acc = pool(workers)?.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| ctx.sweep_range(c * chunk..((c + 1) * chunk).min(len)))
            .try_reduce(
                || ctx.accumulator(),
                |mut a, b| {
                    a.merge(b);
                    Ok(a)
                },
            )
    })?;
    Ok(acc)
}

fn single(verdict: BoundVerdict) -> FieldCheck {
    let mut tally = BoundTally::new(verdict.id);
    tally.record(&[], verdict.clone());
    FieldCheck {
        tally,
        verdicts: vec![verdict],
    }
}

fn many(
    id: BoundId,
    verdicts: impl IntoIterator<Item = (Vec<ffmeter_core::Elem>, BoundVerdict)>,
) -> FieldCheck {
    let mut tally = BoundTally::new(id);
    for (table, v) in verdicts {
        tally.record(&table, v);
    }
    FieldCheck {
        tally,
        verdicts: Vec::new(),
    }
}

/// Random pairs `(g, h)` of maps and the subadditivity verdicts.
pub fn compo_subadditive(field: &Field, pairs: u32, seed: u64) -> Result<FieldCheck, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(pairs as usize);
    for _ in 0..pairs {
        let g = random_function_with(field, &mut rng);
        let h = random_function_with(field, &mut rng);
        let v = check_compo_subadditive(field, &g, &h)?;
        let mut key = g.into_table();
        key.extend(h.into_table());
        out.push((key, v));
    }
    Ok(many(BoundId::CompoSubadditive, out))
}

/// Random maps under random bijective F_p-affine pre- and post-composition.
pub fn compo_affine(field: &Field, count: u32, seed: u64) -> Result<FieldCheck, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let f = random_function_with(field, &mut rng);
        let pre = random_fp_affine(field, &mut rng);
        let post = random_fp_affine(field, &mut rng);
        let v = check_compo_affine(field, &f, &pre, &post)?;
        out.push((f.into_table(), v));
    }
    Ok(many(BoundId::CompoAffine, out))
}

fn field_check(
    field: &Field,
    id: BoundId,
    cfg: &VerifyConfig,
    sweep: &SweepAccumulator,
    dlog: &mut Option<Vec<BoundVerdict>>,
) -> Result<FieldCheck, RunError> {
    Ok(match id {
        BoundId::Inversion => single(check_inversion(field)?),
        BoundId::InversionRankOne => single(check_rank_one_forms(field, cfg.pairs, cfg.seed)?),
        BoundId::CompoSubadditive => compo_subadditive(field, cfg.pairs, cfg.seed)?,
        BoundId::CompoAffine => compo_affine(field, cfg.pairs, cfg.seed)?,
        BoundId::DlogDeg
        | BoundId::DlogWeight
        | BoundId::DlogAddInd
        | BoundId::DlogCrk
        | BoundId::DlogInd => {
            if dlog.is_none() {
                let cap = cfg.exact_crk_max.min(MAX_EXACT_ORDER);
                let table = if field.q() <= cap && field.p() > 2 {
                    Some(CarlitzTable::build(field, None)?)
                } else {
                    None
                };
                let options = MeasureOptions {
                    exact_crk_max: cap,
                    carlitz_table: table.as_ref(),
                };
                *dlog = Some(check_dlog(field, options)?);
            }
            let v = dlog
                .as_ref()
                .and_then(|vs| vs.iter().find(|v| v.id == id))
                .cloned()
                .ok_or(ffmeter_core::Error::Internal("missing dlog verdict"))?;
            single(v)
        }
        BoundId::IntpolForm => {
            let verdicts: Vec<_> = cyclotomic_grid(field, cfg.seed)
                .iter()
                .map(|form| (Vec::new(), check_intpol_form(field, form)))
                .collect();
            many(id, verdicts)
        }
        BoundId::MeanWeight => match cfg.space {
            Space::AllFunctions | Space::Sample { .. } => single(check_mean_weight(
                field,
                sweep.stats.weight_sum,
                sweep.stats.functions,
                cfg.space.is_exhaustive(),
            )),
            _ => single(BoundVerdict::not_applicable(
                id,
                "space is not uniform over all maps",
            )),
        },
        _ => {
            return Err(ffmeter_core::Error::Internal("per-function bound in field checks").into())
        }
    })
}

/// Runs the per-function bounds over the space and then each requested
/// field-level statement.
pub fn verify(field: &Field, cfg: &VerifyConfig) -> Result<VerifyOutcome, RunError> {
    let per_function: Vec<BoundId> = cfg
        .bounds
        .iter()
        .copied()
        .filter(|b| b.is_per_function())
        .collect();
    let ctx = SweepContext::new(field, cfg.space, per_function, cfg.exact_crk_max)?;
    let space_len = ctx.len()?;
    let sweep = par_sweep(&ctx, cfg.workers)?;
    let mut dlog = None;
    let field_checks = cfg
        .bounds
        .iter()
        .filter(|b| !b.is_per_function())
        .map(|&id| field_check(field, id, cfg, &sweep, &mut dlog))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyOutcome {
        space_len,
        sweep,
        field_checks,
    })
}

/// True when the verdict settles the statement positively.
pub fn is_pass(outcome: Outcome) -> bool {
    matches!(outcome, Outcome::Holds | Outcome::HoldsVacuously)
}
